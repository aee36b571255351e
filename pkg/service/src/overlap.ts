/**
 * Stub-weight sentence-pair model: p(no relation) = 1 - jaccard overlap of
 * the two sentences' token sets.
 *
 * Tokenization mirrors the pipeline's builtin rule exactly: letter/digit
 * runs are one token (lowercase-folded), each Han character is its own
 * token, other non-whitespace characters are single tokens, whitespace is
 * discarded.
 */

const CJK_RANGES: Array<[number, number]> = [
  [0x3400, 0x4dbf],
  [0x4e00, 0x9fff],
  [0xf900, 0xfaff],
  [0x20000, 0x2ebef],
];

const ALNUM = /[\p{L}\p{N}]/u;
const SPACE = /\s/u;

function isCjk(cp: number): boolean {
  return CJK_RANGES.some(([lo, hi]) => cp >= lo && cp <= hi);
}

export function splitSurfaces(text: string): string[] {
  const surfaces: string[] = [];
  let run = '';
  const flush = () => {
    if (run) {
      surfaces.push(run.toLowerCase());
      run = '';
    }
  };
  for (const ch of text) {
    if (SPACE.test(ch)) {
      flush();
    } else if (isCjk(ch.codePointAt(0)!)) {
      flush();
      surfaces.push(ch);
    } else if (ALNUM.test(ch)) {
      run += ch;
    } else {
      flush();
      surfaces.push(ch);
    }
  }
  flush();
  return surfaces;
}

export function scorePair(a: string, b: string): number {
  if (!a || !b) {
    throw new Error('sentences must be nonempty');
  }
  const setA = new Set(splitSurfaces(a));
  const setB = new Set(splitSurfaces(b));
  if (setA.size === 0 && setB.size === 0) return 0;
  let intersection = 0;
  for (const t of setA) if (setB.has(t)) intersection += 1;
  const union = setA.size + setB.size - intersection;
  return 1 - intersection / union;
}

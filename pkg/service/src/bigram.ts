/**
 * Deterministic stub-weight causal LM.
 *
 * The "weights" are a bigram count table built from the request context:
 * p(t | prev) = (count(prev, t) + 1) / (count(prev, *) + |V|) with V the
 * ids seen in context or target, argmax ties broken toward the smallest
 * id. Token ids are opaque integers, so any tokenizer pairs with it.
 */

export interface ScoreResult {
  acc: number;
  nll: number;
}

export function scoreBigram(context: number[], target: number[]): ScoreResult {
  if (context.length === 0 || target.length === 0) {
    throw new Error('context and target must be nonempty');
  }
  const counts = new Map<number, Map<number, number>>();
  for (let i = 0; i + 1 < context.length; i++) {
    const prev = context[i];
    let row = counts.get(prev);
    if (!row) {
      row = new Map();
      counts.set(prev, row);
    }
    row.set(context[i + 1], (row.get(context[i + 1]) ?? 0) + 1);
  }
  const vocab = new Set([...context, ...target]);
  const v = vocab.size;
  let smallest = Infinity;
  for (const t of vocab) if (t < smallest) smallest = t;

  // Unseen continuations all share count 0, so the argmax is the best row
  // entry (ties toward the smallest id) or, for an empty row, the smallest
  // vocabulary id; no per-step scan over the whole vocabulary is needed.
  const totals = new Map<number, number>();
  const argmax = new Map<number, number>();
  for (const [prev, row] of counts) {
    let total = 0;
    let best = Infinity;
    let bestCount = 0;
    for (const [t, c] of row) {
      total += c;
      if (c > bestCount || (c === bestCount && t < best)) {
        best = t;
        bestCount = c;
      }
    }
    totals.set(prev, total);
    argmax.set(prev, best);
  }

  let hits = 0;
  let nllSum = 0;
  let prev = context[context.length - 1];
  for (const trueToken of target) {
    if ((argmax.get(prev) ?? smallest) === trueToken) hits += 1;
    nllSum += -Math.log(((counts.get(prev)?.get(trueToken) ?? 0) + 1) / ((totals.get(prev) ?? 0) + v));
    prev = trueToken;
  }
  return { acc: hits / target.length, nll: nllSum / target.length };
}

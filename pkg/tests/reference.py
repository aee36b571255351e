"""Independent brute-force references the tests check the library against.

Everything here is written as straight-line scans with no reuse of the
library's counting or aggregation code paths, so a bug cannot hide on both
sides of a comparison.
"""

from __future__ import annotations


def substring_count(text: str, phrase: str) -> int:
    """Non-overlapping left-to-right occurrences of one phrase."""
    assert phrase
    count = 0
    i = 0
    while i + len(phrase) <= len(text):
        if text[i : i + len(phrase)] == phrase:
            count += 1
            i += len(phrase)
        else:
            i += 1
    return count


def connective_count(text: str, entries) -> int:
    folded = text.lower()
    total = 0
    for entry in entries:
        total += substring_count(folded, entry.lower())
    return total


def pronoun_count_en(surfaces, entries) -> int:
    wanted = set()
    for e in entries:
        wanted.add(e.lower())
    count = 0
    for s in surfaces:
        if s.lower() in wanted:
            count += 1
    return count


def pronoun_count_zh(text: str, entries) -> int:
    folded = text.lower()
    folded_entries = [e.lower() for e in entries]
    count = 0
    i = 0
    while i < len(folded):
        best = 0
        for e in folded_entries:
            if len(e) > best and folded[i : i + len(e)] == e:
                best = len(e)
        if best:
            count += 1
            i += best
        else:
            i += 1
    return count


def unique_count(surfaces) -> int:
    seen = set()
    for s in surfaces:
        seen.add(s.lower())
    return len(seen)


def paragraph_count(text: str) -> int:
    count = 0
    has_content = False
    for ch in text + "\n":
        if ch == "\n":
            if has_content:
                count += 1
            has_content = False
        elif not ch.isspace():
            has_content = True
    return count


def window_slices(ids, w):
    """Window boundaries computed directly from the slice formulas."""
    out = []
    i = 1
    while i * w <= len(ids):
        x_l = ids[(i - 1) * w : i * w - w // 4]
        x_s = ids[i * w - w // 2 : i * w - w // 4]
        y = ids[i * w - w // 4 : i * w]
        out.append((x_l, x_s, y))
        i += 1
    return out


def mean(values) -> float:
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def coherence_diff(nll_pairs, improvement=False) -> float:
    terms = []
    for nll_l, nll_s in nll_pairs:
        numerator = nll_s - nll_l if improvement else nll_l - nll_s
        terms.append(numerator / nll_l)
    return mean(terms)


def dmr_value(probabilities) -> float:
    total = 0.0
    for p in probabilities:
        total += p
    return 1.0 - total / len(probabilities)

"""
Quantales, spaces and distances
===============================

Four small quantales, a metric-like space over the Lawvere chain, and the
weighted (co)limits that live in it.
"""

from qcanext import (
    Bool2, LanguageTrunc, LawvereChain, SimilarityChain, check_quantale_laws,
    generated_space, self_enrichment,
)
from qcanext.limits import colimit, tensor, power

# every law is checked exhaustively over the carrier
for q in (Bool2(), LawvereChain(10), SimilarityChain(5), LanguageTrunc("ab", 2)):
    report = check_quantale_laws(q)
    print(f"{q!r:28} |carrier|={len(q.carrier()):4}  laws ok: {report.ok}")

# residuals in the Lawvere chain are truncated subtraction
L = LawvereChain(10)
print("3 ▷ 7 =", L.rres(3, 7), "  7 ▷ 3 =", L.rres(7, 3))

# a space generated from a few one-step distances (shortest paths, capped at 10)
X = generated_space(L, ["a", "b", "c"], [[0, 2, 10], [10, 0, 3], [4, 10, 0]])
for p in X.points:
    print(p, [X(p, r) for r in X.points])

# tensoring in the self-enriched chain adds distances
S = self_enrichment(L, 1)
print("2 ⋆ 3 =", S.points[tensor(S, "2", 3)[0]], "  5 ↑ 3 =", S.points[power(S, "5", 3)[0]])

# a conical join exists only where the space has one
print("join of a and c in X:", [X.points[w] for w in colimit(X, ["a", "c"], (0, 0))])

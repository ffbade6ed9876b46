"""
Canonical extensions
====================

Filters (finite-limit preserving copresheaves) and ideals (finite-colimit
preserving presheaves) of a space are paired by ``f • i``; the completion of
that pairing is the canonical extension.
"""

from qcanext import Bool2, FinSpace
from qcanext.canext import (
    canonical_extension, check_compactness, check_density, check_embedding_preservation,
    iso_to_base,
)

T, F = True, False
diamond = FinSpace(Bool2(), ("bot", "a", "b", "top"),
                   [[T, T, T, T], [F, T, F, T], [F, F, T, T], [F, F, F, T]])

E = canonical_extension(diamond)
print(E)
print("compact:", check_compactness(E).ok, " dense:", check_density(E).ok)
print("finite lattices come back unchanged:", iso_to_base(E).ok)

# with every up-set as a filter the extension grows, and the embedding
# stops preserving the meets and joins that non-principal filters break
E_all = canonical_extension(diamond, "all", "all")
print(E_all)
print("lost:", ", ".join(check_embedding_preservation(E_all).failures))

"""
Extending monotone maps
=======================

A map between spaces pulls filters and ideals back and pushes them forward.
When the pulled-back members stay in their classes, the lifted maps between
canonical extensions form adjunctions.
"""

from qcanext import Bool2, FinSpace, SpaceMap
from qcanext.canext import canonical_extension
from qcanext.errors import ClassNotClosed
from qcanext.funext import ExtensionBundle, check_adjunction, check_virtual_adjoint

T, F = True, False
B = Bool2()
diamond = FinSpace(B, ("bot", "a", "b", "top"),
                   [[T, T, T, T], [F, T, F, T], [F, F, T, T], [F, F, F, T]])
chain2 = FinSpace(B, ("0", "1"), [[T, T], [F, T]])
chain3 = FinSpace(B, ("0", "1", "2"), [[T, T, T], [F, T, T], [F, F, T]])

project = SpaceMap.from_names(diamond, chain2, {"bot": "0", "a": "0", "b": "1", "top": "1"})
bundle = ExtensionBundle(project, canonical_extension(diamond), canonical_extension(chain2))
print("closure hypotheses:", bundle.preconditions())
print("G^l ⊣ G^π:", check_adjunction(bundle, "l-pi").ok,
      "  G^σ ⊣ G^r:", check_adjunction(bundle, "sigma-r").ok)
print("virtual adjoint:", check_virtual_adjoint(bundle, "l").ok)
print("G^l on concepts:", bundle.lift_l)

# sending both atoms to the middle of a 3-chain breaks a meet, so the
# pulled-back filter is no longer a filter and the lift is refused
collapse = SpaceMap.from_names(diamond, chain3, {"bot": "0", "a": "1", "b": "1", "top": "2"})
bundle = ExtensionBundle(collapse, canonical_extension(diamond), canonical_extension(chain3))
try:
    bundle.lift_l
except ClassNotClosed as exc:
    print("refused:", exc)

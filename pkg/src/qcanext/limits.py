"""Weighted limits and colimits in finite spaces.

A diagram is a map ``G: D → B`` given by the B-indices of its values; a
colimit weight is a presheaf ``φ`` on D and a limit weight a copresheaf
``ψ`` on D.  Witnesses are the points satisfying::

    B(colim_φ G, b) = ⊓_d φ(d) ▷ B(Gd, b)
    B(b, lim_ψ G)   = ⊓_d B(b, Gd) ◁ ψ(d)

for every ``b``.  Since the right-hand side is a full hom row (column), the
search is a dictionary lookup rather than a sweep over candidates.

The *battery* is the family of finite (co)limits used to decide which
copresheaves are filters and which presheaves are ideals: the empty and all
binary conical meets (joins), and powers (tensors) by every carrier element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInput, ShapeMismatch
from .quantale import Quantale
from .space import FinSpace, SpaceMap

__all__ = [
    "colimit",
    "limit",
    "tensor",
    "power",
    "colimit_profile",
    "limit_profile",
    "pointwise_colim",
    "pointwise_lim",
    "BatteryItem",
    "Verdict",
    "battery",
    "limit_instances",
    "colimit_instances",
    "preserves_limits",
    "preserves_colimits",
    "observability",
    "reachability",
]


def _values(B: FinSpace, G) -> tuple:
    if isinstance(G, SpaceMap):
        if G.target != B:
            raise ShapeMismatch("diagram does not land in the given space")
        return G.assignment
    return tuple(B.idx(g) for g in G)


def colimit_profile(B: FinSpace, G, phi) -> tuple:
    """The hom row a colimit must have: ``b ↦ ⊓_d φ(d) ▷ B(Gd, b)``."""
    q = B.quantale
    gs = _values(B, G)
    if len(gs) != len(phi):
        raise ShapeMismatch("weight and diagram have different shapes")
    out = []
    for b in range(len(B)):
        acc = q.top
        for g, w in zip(gs, phi):
            acc = q._meet2(acc, q._rres(w, B.hom[g][b]))
        out.append(acc)
    return tuple(out)


def limit_profile(B: FinSpace, G, psi) -> tuple:
    """The hom column a limit must have: ``b ↦ ⊓_d B(b, Gd) ◁ ψ(d)``."""
    q = B.quantale
    gs = _values(B, G)
    if len(gs) != len(psi):
        raise ShapeMismatch("weight and diagram have different shapes")
    out = []
    for row in B.hom:
        acc = q.top
        for g, w in zip(gs, psi):
            acc = q._meet2(acc, q._lres(row[g], w))
        out.append(acc)
    return tuple(out)


def colimit(B: FinSpace, G, phi) -> list:
    """Indices of all colimit witnesses (empty when the colimit does not exist)."""
    return list(B.rows_lookup.get(colimit_profile(B, G, phi), ()))


def limit(B: FinSpace, G, psi) -> list:
    """Indices of all limit witnesses."""
    return list(B.columns_lookup.get(limit_profile(B, G, psi), ()))


def tensor(B: FinSpace, g, r) -> list:
    """Witnesses of ``g ⋆ r``: ``B(g ⋆ r, b) = r ▷ B(g, b)``."""
    B.quantale.check(r)
    return colimit(B, (g,), (r,))


def power(B: FinSpace, g, r) -> list:
    """Witnesses of ``g ↑ r``: ``B(b, g ↑ r) = B(b, g) ◁ r``."""
    B.quantale.check(r)
    return limit(B, (g,), (r,))


# ---------------------------------------------------------------------------
# pointwise formulas


def pointwise_colim(q: Quantale, kind: str, G, phi):
    """Colimit of the vectors (or values) ``G[d]`` weighted by ``φ``.

    ``kind`` selects the ambient space: ``"presheaf"`` (𝒟X, result
    ``x ↦ ⊔_d G(d)(x) · φ(d)``), ``"copresheaf"`` (𝒰A, result
    ``a ↦ ⊓_d φ(d) ▷ G(d)(a)``) or ``"omega"`` (Ω with hom ``▷``, result
    ``⊔_d G(d) · φ(d)``).
    """
    if len(G) != len(phi):
        raise ShapeMismatch("weight and diagram have different shapes")
    if kind == "omega":
        acc = q.bottom
        for g, w in zip(G, phi):
            acc = q._join2(acc, q._mul(g, w))
        return acc
    n = _width(G, phi)
    if kind == "presheaf":
        return tuple(
            q._join([q._mul(g[x], w) for g, w in zip(G, phi)]) for x in range(n)
        )
    if kind == "copresheaf":
        return tuple(
            q._meet([q._rres(w, g[a]) for g, w in zip(G, phi)]) for a in range(n)
        )
    raise InvalidInput(f"unknown ambient kind {kind!r}")


def pointwise_lim(q: Quantale, kind: str, G, psi):
    """Limit of ``G`` weighted by ``ψ``; kinds as in :func:`pointwise_colim`.

    Results: 𝒟X ``x ↦ ⊓_d G(d)(x) ◁ ψ(d)``; 𝒰A ``a ↦ ⊔_d ψ(d) · G(d)(a)``;
    Ω ``⊓_d G(d) ◁ ψ(d)``.
    """
    if len(G) != len(psi):
        raise ShapeMismatch("weight and diagram have different shapes")
    if kind == "omega":
        acc = q.top
        for g, w in zip(G, psi):
            acc = q._meet2(acc, q._lres(g, w))
        return acc
    n = _width(G, psi)
    if kind == "presheaf":
        return tuple(
            q._meet([q._lres(g[x], w) for g, w in zip(G, psi)]) for x in range(n)
        )
    if kind == "copresheaf":
        return tuple(
            q._join([q._mul(w, g[a]) for g, w in zip(G, psi)]) for a in range(n)
        )
    raise InvalidInput(f"unknown ambient kind {kind!r}")


def _width(G, weight):
    if not G:
        raise InvalidInput("empty diagram: vector length is unknown, pass one explicitly")
    n = len(G[0])
    if any(len(g) != n for g in G):
        raise ShapeMismatch("diagram vectors differ in length")
    return n


# ---------------------------------------------------------------------------
# the finite (co)limit battery


@dataclass(frozen=True)
class BatteryItem:
    """One finite (co)limit over a discrete shape.

    ``points`` are the diagram values (indices into C), ``weight`` the weight
    on the discrete shape, ``witnesses`` the (co)limit points in C.
    """

    kind: str  # "meet", "power", "join" or "tensor"
    points: tuple
    weight: tuple
    witnesses: tuple

    @property
    def exists(self) -> bool:
        return bool(self.witnesses)

    def label(self, C: FinSpace) -> str:
        names = ",".join(C.points[p] for p in self.points)
        if self.kind in ("power", "tensor"):
            return f"{self.kind}({names}; {C.quantale.format(self.weight[0])})"
        return f"{self.kind}({names})"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=64)
def battery(C: FinSpace) -> tuple:
    """All battery items of C, limits first, in a fixed order."""
    q = C.quantale
    e = q.unit
    n = len(C)
    carrier = q.carrier()
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    items = []
    items.append(BatteryItem("meet", (), (), tuple(limit(C, (), ()))))
    for p in pairs:
        items.append(BatteryItem("meet", p, (e, e), tuple(limit(C, p, (e, e)))))
    for c in range(n):
        for r in carrier:
            items.append(BatteryItem("power", (c,), (r,), tuple(limit(C, (c,), (r,)))))
    items.append(BatteryItem("join", (), (), tuple(colimit(C, (), ()))))
    for p in pairs:
        items.append(BatteryItem("join", p, (e, e), tuple(colimit(C, p, (e, e)))))
    for c in range(n):
        for r in carrier:
            items.append(BatteryItem("tensor", (c,), (r,), tuple(colimit(C, (c,), (r,)))))
    return tuple(items)


def limit_instances(C: FinSpace) -> list:
    return [b for b in battery(C) if b.kind in ("meet", "power")]


def colimit_instances(C: FinSpace) -> list:
    return [b for b in battery(C) if b.kind in ("join", "tensor")]


def preserves_limits(C: FinSpace, f, items=None) -> Verdict:
    """Does the copresheaf ``f`` send every existing battery limit to a limit in Ω?

    The check is ``f(w) = ⊓_d f(Gd) ◁ ψ(d)`` at the first witness ``w``.
    """
    q = C.quantale
    for item in limit_instances(C) if items is None else items:
        if not item.witnesses or item.kind not in ("meet", "power"):
            continue
        want = pointwise_lim(q, "omega", [f[p] for p in item.points], item.weight)
        if f[item.witnesses[0]] != want:
            return Verdict(False, item)
    return Verdict(True)


def preserves_colimits(C: FinSpace, i, items=None) -> Verdict:
    """Does the presheaf ``i`` send every existing battery colimit to a limit in Ω?

    The check is ``i(w) = ⊓_d j(d) ▷ i(Gd)`` at the first witness ``w``.
    """
    q = C.quantale
    for item in colimit_instances(C) if items is None else items:
        if not item.witnesses or item.kind not in ("join", "tensor"):
            continue
        want = q.top
        for p, w in zip(item.points, item.weight):
            want = q._meet2(want, q._rres(w, i[p]))
        if i[item.witnesses[0]] != want:
            return Verdict(False, item)
    return Verdict(True)


# ---------------------------------------------------------------------------
# automata


def _check_flags(A: FinSpace, flags, what):
    q = A.quantale
    if len(flags) != len(A):
        raise ShapeMismatch(f"{what} vector must have one entry per state")
    allowed = (q.bottom, q.unit)
    for v in flags:
        if q.check(v) not in allowed:
            raise InvalidInput(f"{what} entries must be ⊥ or e, got {q.format(v)}")


def observability(A: FinSpace, final) -> tuple:
    """The language accepted from each state.

    The colimit in 𝒟A of the Yoneda diagram ``q ↦ A(-, q)`` weighted by
    ``final``: ``q' ↦ ⊔_q A(q', q) · final(q)``.
    """
    final = tuple(final)
    _check_flags(A, final, "final")
    G = [A.column(j) for j in range(len(A))]
    return pointwise_colim(A.quantale, "presheaf", G, final)


def reachability(A: FinSpace, initial) -> tuple:
    """The language leading to each state from an initial one.

    The weighted limit in 𝒰A (ordered by reverse inclusion) of ``q ↦ A(q, -)``
    weighted by ``initial``: ``q ↦ ⊔_{q0} initial(q0) · A(q0, q)``.
    """
    initial = tuple(initial)
    _check_flags(A, initial, "initial")
    G = [A.row(j) for j in range(len(A))]
    return pointwise_lim(A.quantale, "copresheaf", G, initial)

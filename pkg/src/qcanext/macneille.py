"""Contexts, concepts and the MacNeille completion.

A context ``I: X ⇸ A`` induces the adjunction::

    up(φ)   = φ ▸ I      a ↦ ⊓_x φ(x) ▷ I(x, a)
    down(ψ) = I ◂ ψ      x ↦ ⊓_a I(x, a) ◁ ψ(a)

Concepts are the pairs ``(φ, ψ)`` with ``up(φ) = ψ`` and ``down(ψ) = φ``;
with ``M(I)(κ, κ') = ⟦κ⟧ ▸ ⟦κ'⟧`` they form the completion space M(I).

Enumeration uses the fact that every extent is a meet of *shifted attribute
columns* ``x ↦ I(x, a) ◁ r``, so the extents are the meet-closure of
``|A|·|Ω|`` generators together with the top vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .errors import BudgetExceeded, InvalidInput, ShapeMismatch
from .limits import colimit, limit
from .relation import (
    QRel,
    copresheaves,
    lres_vec,
    presheaves,
    rres_val,
    rres_vec,
)
from .space import FinSpace, SpaceMap, discrete_space, underlying_order

__all__ = [
    "Context",
    "Concept",
    "CompletionSpace",
    "DEFAULT_CONCEPT_BUDGET",
    "up",
    "down",
    "closure",
    "coclosure",
    "is_concept",
    "enumerate_concepts",
    "mc_hom",
    "mc_embed_x",
    "mc_embed_a",
    "mc_colimit",
    "mc_limit",
    "concept_colimit",
    "concept_limit",
    "restrict_discrete",
    "is_completion_of",
    "CompletionReport",
    "IsoResult",
    "completion_iso",
    "covering_edges",
    "to_dot",
]

#: maximal number of distinct extents kept during meet-closure
DEFAULT_CONCEPT_BUDGET = 200_000


class Context(QRel):
    """An incidence relation ``I: X ⇸ A`` between objects and attributes."""

    @classmethod
    def discrete(cls, q, objects, attributes, matrix) -> "Context":
        """A context over discrete spaces; any matrix is admissible."""
        return cls(discrete_space(q, objects), discrete_space(q, attributes), matrix)

    @property
    def X(self) -> FinSpace:
        return self.source

    @property
    def A(self) -> FinSpace:
        return self.target

    @property
    def I(self) -> tuple:  # noqa: E743
        return self.matrix

    def __repr__(self):
        return f"Context({list(self.X.points)} ⇸ {list(self.A.points)})"


def up(I: Context, phi) -> tuple:
    if len(phi) != len(I.X):
        raise ShapeMismatch("presheaf length differs from |X|")
    return rres_vec(I.quantale, phi, I.matrix)


def down(I: Context, psi) -> tuple:
    if len(psi) != len(I.A):
        raise ShapeMismatch("copresheaf length differs from |A|")
    return lres_vec(I.quantale, I.matrix, psi)


def closure(I: Context, phi) -> tuple:
    """``down(up(φ))``, the least extent containing φ."""
    return down(I, up(I, phi))


def coclosure(I: Context, psi) -> tuple:
    """``up(down(ψ))``, the intent generated by ψ."""
    return up(I, down(I, psi))


@dataclass(frozen=True)
class Concept:
    extent: tuple
    intent: tuple

    def to_json(self, q) -> dict:
        return {
            "extent": [q.value_to_json(v) for v in self.extent],
            "intent": [q.value_to_json(v) for v in self.intent],
        }


def is_concept(I: Context, kappa: Concept) -> bool:
    return up(I, kappa.extent) == kappa.intent and down(I, kappa.intent) == kappa.extent


def _concept_of_extent(I, extent):
    return Concept(tuple(extent), up(I, extent))


def _concept_of_intent(I, intent):
    return Concept(down(I, intent), tuple(intent))


@dataclass(frozen=True, repr=False)
class CompletionSpace(FinSpace):
    """The space of all concepts of ``context``; point ``k<i>`` is ``concepts[i]``."""

    concepts: tuple = ()
    context: Context | None = field(default=None, compare=False)

    @cached_property
    def by_extent(self) -> dict:
        return {k.extent: i for i, k in enumerate(self.concepts)}

    @cached_property
    def by_intent(self) -> dict:
        return {k.intent: i for i, k in enumerate(self.concepts)}

    def find(self, kappa: Concept) -> int:
        try:
            return self.by_extent[kappa.extent]
        except KeyError:
            raise InvalidInput("not a concept of this completion") from None

    def concept(self, point) -> Concept:
        return self.concepts[self.idx(point)]

    def __repr__(self):
        return f"CompletionSpace({len(self.concepts)} concepts)"


def _vector_key(q):
    def key(vec):
        return tuple(q.sort_key(v) for v in vec)

    return key


def _extent_closure(I: Context, budget: int):
    q = I.quantale
    nx_, na = len(I.X), len(I.A)
    carrier = q.carrier()
    gens = []
    seen = set()
    for a in range(na):
        col = [I.matrix[x][a] for x in range(nx_)]
        for r in carrier:
            g = tuple(q._lres(c, r) for c in col)
            if g not in seen:
                seen.add(g)
                gens.append(g)
    top = tuple(q.top for _ in range(nx_))
    extents = {top}
    for g in gens:
        if g in extents:
            continue
        new = set()
        for s in extents:
            m = tuple(q._meet2(u, v) for u, v in zip(g, s))
            if m not in extents:
                new.add(m)
        extents |= new
        if len(extents) > budget:
            raise BudgetExceeded(
                f"more than {budget} extents while closing {len(gens)} generators "
                f"(|A|={na}, |carrier|={len(carrier)})",
                required=len(extents),
                budget=budget,
            )
    return extents, len(gens)


def enumerate_concepts(I: Context, budget: int = DEFAULT_CONCEPT_BUDGET) -> CompletionSpace:
    """All concepts of I, ordered by extent, as a :class:`CompletionSpace`."""
    q = I.quantale
    extents, _ = _extent_closure(I, budget)
    ordered = sorted(extents, key=_vector_key(q))
    concepts = tuple(_concept_of_extent(I, e) for e in ordered)
    hom = tuple(
        tuple(rres_val(q, k.extent, k2.extent) for k2 in concepts) for k in concepts
    )
    names = tuple(f"k{i}" for i in range(len(concepts)))
    return CompletionSpace(q, names, hom, concepts=concepts, context=I)


def mc_hom(M: CompletionSpace, k1: Concept, k2: Concept):
    """``⟦κ⟧ ▸ ⟦κ'⟧``."""
    return rres_val(M.quantale, k1.extent, k2.extent)


def mc_embed_x(I: Context, x) -> Concept:
    """``x̄``, the concept with intent ``I(x, -)``."""
    return _concept_of_intent(I, I.row(x))


def mc_embed_a(I: Context, a) -> Concept:
    """``ā``, the concept with extent ``I(-, a)``."""
    return _concept_of_extent(I, I.column(a))


def mc_colimit(I: Context, phi) -> Concept:
    """Colimit of ``x ↦ x̄`` weighted by φ: the concept with intent ``φ ▸ I``."""
    return _concept_of_intent(I, up(I, phi))


def mc_limit(I: Context, psi) -> Concept:
    """Limit of ``a ↦ ā`` weighted by ψ: the concept with extent ``I ◂ ψ``."""
    return _concept_of_extent(I, down(I, psi))


def concept_colimit(I: Context, concepts, phi) -> Concept:
    """Colimit in M(I) of the concepts ``κ_d`` weighted by ``φ``.

    Its extent is the closure of ``x ↦ ⊔_d ⟦κ_d⟧(x) · φ(d)``.
    """
    q = I.quantale
    if len(concepts) != len(phi):
        raise ShapeMismatch("weight and diagram have different shapes")
    raw = tuple(
        q._join([q._mul(k.extent[x], w) for k, w in zip(concepts, phi)])
        for x in range(len(I.X))
    )
    return _concept_of_extent(I, closure(I, raw))


def concept_limit(I: Context, concepts, psi) -> Concept:
    """Limit in M(I) of the concepts ``κ_d`` weighted by ``ψ``.

    Its intent is the coclosure of ``a ↦ ⊔_d ψ(d) · ⦃κ_d⦄(a)``.
    """
    q = I.quantale
    if len(concepts) != len(psi):
        raise ShapeMismatch("weight and diagram have different shapes")
    raw = tuple(
        q._join([q._mul(w, k.intent[a]) for k, w in zip(concepts, psi)])
        for a in range(len(I.A))
    )
    return _concept_of_intent(I, coclosure(I, raw))


def restrict_discrete(I: Context) -> Context:
    """The same matrix between the discrete spaces on the same points."""
    q = I.quantale
    return Context(discrete_space(q, I.X.points), discrete_space(q, I.A.points), I.matrix)


# ---------------------------------------------------------------------------
# algebraic characterisation


@dataclass(frozen=True)
class CompletionReport:
    ok: bool
    condition: str | None = None
    witness: object = None

    def __bool__(self):
        return self.ok


def is_completion_of(C: FinSpace, I: Context, l: SpaceMap, r: SpaceMap,
                     budget: int = 2_000_000) -> CompletionReport:
    """Decide whether ``(C, l, r)`` is a MacNeille completion of I.

    Checks completeness for every weight on X and A (all presheaves along
    ``l``, all copresheaves along ``r``), then ``C(lx, ra) = I(x, a)`` and
    that every point is both a colimit of ``l`` and a limit of ``r``,
    weighted by the extent and intent of one concept.
    """
    if l.source != I.X or r.source != I.A or l.target != C or r.target != C:
        raise ShapeMismatch("l: X → C and r: A → C are required")
    for phi in presheaves(I.X, budget):
        if not colimit(C, l, phi):
            return CompletionReport(False, "cocomplete", phi)
    for psi in copresheaves(I.A, budget):
        if not limit(C, r, psi):
            return CompletionReport(False, "complete", psi)
    for x in range(len(I.X)):
        for a in range(len(I.A)):
            if C.hom[l.assignment[x]][r.assignment[a]] != I.matrix[x][a]:
                return CompletionReport(False, "distance", (I.X.points[x], I.A.points[a]))
    M = enumerate_concepts(I)
    covered = set()
    for k in M.concepts:
        both = set(colimit(C, l, k.extent)) & set(limit(C, r, k.intent))
        covered |= both
    for c in range(len(C)):
        if c not in covered:
            return CompletionReport(False, "density", C.points[c])
    return CompletionReport(True)


@dataclass(frozen=True)
class IsoResult:
    ok: bool
    forward: SpaceMap | None = None
    backward: SpaceMap | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _representing_concepts(C, l, concepts):
    # for each c, the first concept whose extent-weighted colimit of l is c
    rep = [None] * len(C)
    for k in concepts:
        for c in colimit(C, l, k.extent):
            if rep[c] is None:
                rep[c] = k
    return rep


def completion_iso(C: FinSpace, D: FinSpace, I: Context, lC: SpaceMap, lD: SpaceMap) -> IsoResult:
    """Identify two completions of I by ``f(c) = colim_{⟦κ_c⟧} l_D``.

    ``κ_c`` is a concept whose extent-weighted colimit of ``l_C`` is ``c``;
    ``g`` is built symmetrically.  Success requires both maps to preserve
    distances exactly and to be mutually inverse up to isomorphism.
    """
    M = enumerate_concepts(I)
    maps = []
    for src, dst, ls, ld in ((C, D, lC, lD), (D, C, lD, lC)):
        rep = _representing_concepts(src, ls, M.concepts)
        assignment = []
        for c, k in enumerate(rep):
            if k is None:
                return IsoResult(False, reason=f"{src.points[c]} is not a weighted colimit of l")
            w = colimit(dst, ld, k.extent)
            if not w:
                return IsoResult(False, reason=f"no colimit in the other space for {src.points[c]}")
            assignment.append(w[0])
        maps.append(SpaceMap(src, dst, tuple(assignment)))
    f, g = maps
    for m in (f, g):
        X, Y, a = m.source, m.target, m.assignment
        for i in range(len(X)):
            for j in range(len(X)):
                if X.hom[i][j] != Y.hom[a[i]][a[j]]:
                    return IsoResult(False, f, g, f"distance {X.points[i]}→{X.points[j]} not preserved")
    le_C, le_D = underlying_order(C), underlying_order(D)
    for c in range(len(C)):
        b = g.assignment[f.assignment[c]]
        if not (le_C[b][c] and le_C[c][b]):
            return IsoResult(False, f, g, f"g∘f moves {C.points[c]}")
    for d in range(len(D)):
        b = f.assignment[g.assignment[d]]
        if not (le_D[b][d] and le_D[d][b]):
            return IsoResult(False, f, g, f"f∘g moves {D.points[d]}")
    return IsoResult(True, f, g)


# ---------------------------------------------------------------------------
# diagrams


def covering_edges(X: FinSpace) -> list:
    """Covering pairs ``(lower, upper)`` of the underlying order.

    Isomorphic points are merged before the transitive reduction; each
    class is represented by its first point.
    """
    le = underlying_order(X)
    n = len(X)
    rep = []
    for i in range(n):
        rep.append(next(j for j in range(i + 1) if le[i][j] and le[j][i]))
    classes = sorted(set(rep))
    g = nx.DiGraph()
    g.add_nodes_from(classes)
    g.add_edges_from((i, j) for i in classes for j in classes if i != j and le[i][j])
    red = nx.transitive_reduction(g)
    return sorted(red.edges())


def to_dot(M: CompletionSpace, name: str = "concepts") -> str:
    q = M.quantale

    def vec(v):
        return "[" + ",".join(q.format(x) for x in v) + "]"

    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for p, k in zip(M.points, M.concepts):
        label = f"{vec(k.extent)} | {vec(k.intent)}".replace('"', '\\"')
        lines.append(f'  {p} [label="{label}"];')
    for i, j in covering_edges(M):
        lines.append(f"  {M.points[i]} -> {M.points[j]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


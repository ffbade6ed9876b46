"""Canonical extensions of finite spaces.

Given a space C, a class F of copresheaves ("filters") and a class I of
presheaves ("ideals"), the intermediate context relates them by::

    I(f, i) = ⊔_c f(c) · i(c)

and the canonical extension C^δ is its MacNeille completion.  Each point
``c`` embeds as the concept ``[c]`` with extent ``f ↦ f(c)`` and intent
``i ↦ i(c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetExceeded, InvalidInput
from .limits import (
    Verdict,
    colimit,
    colimit_instances,
    limit,
    limit_instances,
    preserves_colimits,
    preserves_limits,
)
from .macneille import (
    CompletionSpace,
    Concept,
    Context,
    completion_iso,
    concept_colimit,
    concept_limit,
    enumerate_concepts,
    is_concept,
    mc_embed_a,
    mc_embed_x,
)
from .relation import copresheaves, dot, lres_val, presheaves, rres_val
from .space import FinSpace, SpaceMap, discrete_space

__all__ = [
    "FILTER_CLASSES",
    "DEFAULT_CLASS_BUDGET",
    "enumerate_filters",
    "enumerate_ideals",
    "intermediate_context",
    "CanExt",
    "canonical_extension",
    "closed_element",
    "open_element",
    "check_routes",
    "check_compactness",
    "check_density",
    "check_embedding_preservation",
    "PreservationReport",
    "iso_to_base",
    "hom_context",
]

FILTER_CLASSES = ("all", "representables", "finlim")

#: largest |carrier|^|C| for which whole classes are enumerated
DEFAULT_CLASS_BUDGET = 1_000_000


def _check_spec(spec):
    if spec not in FILTER_CLASSES:
        raise InvalidInput(f"class must be one of {FILTER_CLASSES}, got {spec!r}")


def _dedupe(vectors):
    seen = set()
    out = []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _class_budget_error(C, exc):
    return BudgetExceeded(
        f"{exc}; use the 'representables' class for a space of {len(C)} points",
        required=exc.required,
        budget=exc.budget,
    )


def enumerate_filters(C: FinSpace, spec: str = "finlim", budget: int = DEFAULT_CLASS_BUDGET) -> list:
    """The copresheaves on C in class ``spec``, in a fixed order.

    ``representables`` lists ``C(c, -)`` in point order; the other classes
    list copresheaves lexicographically.
    """
    _check_spec(spec)
    if spec == "representables":
        return _dedupe(C.row(c) for c in range(len(C)))
    try:
        every = copresheaves(C, budget)
    except BudgetExceeded as exc:
        raise _class_budget_error(C, exc) from None
    if spec == "all":
        return every
    items = limit_instances(C)
    return [f for f in every if preserves_limits(C, f, items)]


def enumerate_ideals(C: FinSpace, spec: str = "finlim", budget: int = DEFAULT_CLASS_BUDGET) -> list:
    """The presheaves on C in class ``spec``; ``representables`` lists ``C(-, c)``."""
    _check_spec(spec)
    if spec == "representables":
        return _dedupe(C.column(c) for c in range(len(C)))
    try:
        every = presheaves(C, budget)
    except BudgetExceeded as exc:
        raise _class_budget_error(C, exc) from None
    if spec == "all":
        return every
    items = colimit_instances(C)
    return [i for i in every if preserves_colimits(C, i, items)]


def intermediate_context(C: FinSpace, filters, ideals) -> Context:
    """The context ``I(f, i) = f ● i`` between discrete filter and ideal sets."""
    q = C.quantale
    if not filters or not ideals:
        raise InvalidInput("filter and ideal classes must be nonempty")
    matrix = [[dot(q, f, i) for i in ideals] for f in filters]
    X = discrete_space(q, [f"f{k}" for k in range(len(filters))])
    A = discrete_space(q, [f"i{k}" for k in range(len(ideals))])
    return Context(X, A, matrix)


def hom_context(C: FinSpace) -> Context:
    """The hom of C as a context ``C ⇸ C``."""
    return Context(C, C, C.hom)


@dataclass(frozen=True)
class CanExt:
    base: FinSpace
    filter_spec: str
    ideal_spec: str
    filters: tuple
    ideals: tuple
    context: Context
    delta: CompletionSpace
    embedding: tuple  # delta index of [c] for every point c

    @property
    def quantale(self):
        return self.base.quantale

    @cached_property
    def filter_index(self) -> dict:
        return {f: k for k, f in enumerate(self.filters)}

    @cached_property
    def ideal_index(self) -> dict:
        return {i: k for k, i in enumerate(self.ideals)}

    def embed(self, c) -> Concept:
        return self.delta.concepts[self.embedding[self.base.idx(c)]]

    @cached_property
    def embedding_map(self) -> SpaceMap:
        return SpaceMap(self.base, self.delta, self.embedding)

    @cached_property
    def closed_indices(self) -> tuple:
        return tuple(self.delta.find(mc_embed_x(self.context, k)) for k in range(len(self.filters)))

    @cached_property
    def open_indices(self) -> tuple:
        return tuple(self.delta.find(mc_embed_a(self.context, k)) for k in range(len(self.ideals)))

    def __repr__(self):
        return (
            f"CanExt({len(self.base)} points, {len(self.filters)} filters, "
            f"{len(self.ideals)} ideals, {len(self.delta)} concepts)"
        )


def canonical_extension(C: FinSpace, filters: str = "finlim", ideals: str = "finlim",
                        budget: int = DEFAULT_CLASS_BUDGET) -> CanExt:
    F = tuple(enumerate_filters(C, filters, budget))
    Id = tuple(enumerate_ideals(C, ideals, budget))
    ctx = intermediate_context(C, F, Id)
    delta = enumerate_concepts(ctx)
    emb = []
    for c in range(len(C)):
        k = Concept(tuple(f[c] for f in F), tuple(i[c] for i in Id))
        if not is_concept(ctx, k):
            raise InvalidInput(
                f"[{C.points[c]}] is not a concept; the classes must contain the representables"
            )
        emb.append(delta.find(k))
    return CanExt(C, filters, ideals, F, Id, ctx, delta, tuple(emb))


def _filter_pos(E: CanExt, f) -> int:
    if isinstance(f, int) and not isinstance(f, bool):
        if 0 <= f < len(E.filters):
            return f
        raise InvalidInput(f"filter index {f} out of range")
    try:
        return E.filter_index[tuple(f)]
    except KeyError:
        raise InvalidInput("not a member of the filter class") from None


def _ideal_pos(E: CanExt, i) -> int:
    if isinstance(i, int) and not isinstance(i, bool):
        if 0 <= i < len(E.ideals):
            return i
        raise InvalidInput(f"ideal index {i} out of range")
    try:
        return E.ideal_index[tuple(i)]
    except KeyError:
        raise InvalidInput("not a member of the ideal class") from None


def closed_element(E: CanExt, f) -> Concept:
    """``lim_f [-]``: the concept with intent ``I(f, -)``."""
    return mc_embed_x(E.context, _filter_pos(E, f))


def open_element(E: CanExt, i) -> Concept:
    """``colim_i [-]``: the concept with extent ``I(-, i)``."""
    return mc_embed_a(E.context, _ideal_pos(E, i))


# ---------------------------------------------------------------------------
# theorem checks


def check_routes(E: CanExt) -> Verdict:
    """The two ways of pairing a representable with the other class agree.

    ``I(C(c,-), i) = 𝒟C(C(-,c), i)`` for every ideal and
    ``I(f, C(-,c)) = 𝒰C(f, C(c,-))`` for every filter.
    """
    q, C = E.quantale, E.base
    for c in range(len(C)):
        up_c, down_c = C.row(c), C.column(c)
        for i in E.ideals:
            if dot(q, up_c, i) != rres_val(q, down_c, i):
                return Verdict(False, ("ideal", C.points[c], i))
        for f in E.filters:
            if dot(q, f, down_c) != lres_val(q, f, up_c):
                return Verdict(False, ("filter", C.points[c], f))
    return Verdict(True)


def check_compactness(E: CanExt) -> Verdict:
    """``C^δ(lim_f [-], colim_i [-]) = I(f, i)`` for every pair."""
    H = E.delta.hom
    for a, ka in enumerate(E.closed_indices):
        for b, kb in enumerate(E.open_indices):
            if H[ka][kb] != E.context.matrix[a][b]:
                return Verdict(False, (a, b))
    return Verdict(True)


def check_density(E: CanExt) -> Verdict:
    """Every concept is a colimit of closed and a limit of open elements.

    The weights are the concept's own extent (over filters) and intent (over
    ideals).
    """
    ctx = E.context
    closed = [E.delta.concepts[k] for k in E.closed_indices]
    opened = [E.delta.concepts[k] for k in E.open_indices]
    for n, k in enumerate(E.delta.concepts):
        if concept_colimit(ctx, closed, k.extent) != k:
            return Verdict(False, ("colimit", E.delta.points[n]))
        if concept_limit(ctx, opened, k.intent) != k:
            return Verdict(False, ("limit", E.delta.points[n]))
    return Verdict(True)


@dataclass(frozen=True)
class PreservationReport:
    ok: bool
    checked: tuple  # (label, preserved) for every battery item existing in C

    @property
    def failures(self) -> list:
        return [label for label, kept in self.checked if not kept]

    def __bool__(self):
        return self.ok


def check_embedding_preservation(E: CanExt) -> PreservationReport:
    """Which existing battery (co)limits of C does ``[-]`` carry to C^δ?"""
    C, M, emb = E.base, E.delta, E.embedding
    results = []
    for item in limit_instances(C) + colimit_instances(C):
        if not item.witnesses:
            continue
        image = tuple(emb[p] for p in item.points)
        if item.kind in ("meet", "power"):
            found = limit(M, image, item.weight)
        else:
            found = colimit(M, image, item.weight)
        results.append((item.label(C), emb[item.witnesses[0]] in found))
    return PreservationReport(all(kept for _, kept in results), tuple(results))


def iso_to_base(E: CanExt):
    """Try to identify C^δ with C as completions of the hom of C."""
    C = E.base
    return completion_iso(C, E.delta, hom_context(C), SpaceMap.identity(C), E.embedding_map)

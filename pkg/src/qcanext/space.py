"""Finite quantale spaces (categories enriched over a finite quantale).

A space is a list of named points with a hom matrix satisfying::

    e ⊑ X(x, x)                      (reflexivity)
    X(x, y) · X(y, z) ⊑ X(x, z)      (transitivity)

Construction validates eagerly, so every :class:`FinSpace` in circulation
satisfies both axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AxiomViolation,
    InvalidInput,
    ReflexivityViolation,
    ShapeMismatch,
    TransitivityViolation,
)
from .quantale import Quantale, opposite

__all__ = [
    "FinSpace",
    "SpaceMap",
    "FunctorReport",
    "validate_space",
    "space_violation",
    "underlying_order",
    "is_skeletal",
    "check_functor",
    "order_on_maps",
    "opposite_space",
    "discrete_space",
    "one_point",
    "self_enrichment",
    "generated_space",
]


def _as_matrix(rows):
    return tuple(tuple(r) for r in rows)


def space_violation(q: Quantale, points, hom) -> AxiomViolation | None:
    """First violated axiom of ``hom``, or None.

    Reflexivity is checked for every point before transitivity; transitivity
    witnesses are reported in lexicographic ``(x, y, z)`` order.
    """
    n = len(points)
    for i in range(n):
        if not q._leq(q.unit, hom[i][i]):
            return ReflexivityViolation(points[i])
    if q.tabulated and n > 8:
        return _transitivity_tables(q, points, hom)
    for i in range(n):
        row_i = hom[i]
        for j in range(n):
            hij = row_i[j]
            row_j = hom[j]
            for k in range(n):
                if not q._leq(q._mul(hij, row_j[k]), row_i[k]):
                    return TransitivityViolation(points[i], points[j], points[k])
    return None


def _transitivity_tables(q, points, hom):
    t = q.tables()
    h = t.encode(hom)
    for i in range(len(points)):
        prod = t.mul[h[i][:, None], h]  # prod[j, k] = X(i,j)·X(j,k)
        ok = t.leq[prod, h[i][None, :]]
        if not ok.all():
            j, k = np.unravel_index(np.argmin(ok), ok.shape)
            return TransitivityViolation(points[i], points[int(j)], points[int(k)])
    return None


@dataclass(frozen=True)
class FinSpace:
    """A finite space over ``quantale`` with named ``points``.

    ``hom[i][j]`` is the distance from ``points[i]`` to ``points[j]``.
    """

    quantale: Quantale
    points: tuple
    hom: tuple

    def __post_init__(self):
        points = tuple(self.points)
        hom = _as_matrix(self.hom)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "hom", hom)
        if not all(isinstance(p, str) for p in points):
            raise InvalidInput("point names must be strings")
        if len(set(points)) != len(points):
            raise InvalidInput(f"duplicate point names in {points!r}")
        n = len(points)
        if len(hom) != n or any(len(row) != n for row in hom):
            raise ShapeMismatch(f"hom must be {n}x{n}")
        q = self.quantale
        for row in hom:
            for v in row:
                q.check(v)
        violation = space_violation(q, points, hom)
        if violation is not None:
            raise violation

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FinSpace({self.quantale!r}, {list(self.points)!r})"

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def idx(self, point) -> int:
        """Index of a point given by name or position."""
        if isinstance(point, int) and not isinstance(point, bool):
            if 0 <= point < len(self.points):
                return point
            raise InvalidInput(f"point index {point} out of range")
        try:
            return self.index[point]
        except KeyError:
            raise InvalidInput(f"unknown point {point!r}") from None

    def __call__(self, x, y):
        return self.hom[self.idx(x)][self.idx(y)]

    def column(self, j) -> tuple:
        j = self.idx(j)
        return tuple(row[j] for row in self.hom)

    def row(self, i) -> tuple:
        return self.hom[self.idx(i)]

    @cached_property
    def rows_lookup(self) -> dict:
        """Map each distinct hom row to the indices of the points having it."""
        out: dict = {}
        for i, row in enumerate(self.hom):
            out.setdefault(row, []).append(i)
        return out

    @cached_property
    def columns_lookup(self) -> dict:
        out: dict = {}
        for j in range(len(self.points)):
            out.setdefault(self.column(j), []).append(j)
        return out


def validate_space(q: Quantale, points, hom) -> FinSpace:
    """Build a space, raising :class:`AxiomViolation` with witnesses on failure."""
    return FinSpace(q, tuple(points), _as_matrix(hom))


def underlying_order(X: FinSpace) -> tuple:
    """Boolean matrix of ``x ≤ y  <=>  e ⊑ X(x, y)``."""
    q = X.quantale
    return tuple(tuple(q._leq(q.unit, v) for v in row) for row in X.hom)


def is_skeletal(X: FinSpace) -> bool:
    le = underlying_order(X)
    n = len(X)
    return not any(le[i][j] and le[j][i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class SpaceMap:
    """A function between the point sets of two spaces (not necessarily a functor)."""

    source: FinSpace
    target: FinSpace
    assignment: tuple  # target index for every source index

    def __post_init__(self):
        a = tuple(self.assignment)
        object.__setattr__(self, "assignment", a)
        if len(a) != len(self.source):
            raise ShapeMismatch("assignment must cover every source point")
        if any(not 0 <= j < len(self.target) for j in a):
            raise InvalidInput("assignment points outside the target")

    @classmethod
    def from_names(cls, source, target, mapping) -> "SpaceMap":
        return cls(source, target, tuple(target.idx(mapping[p]) for p in source.points))

    @classmethod
    def identity(cls, X) -> "SpaceMap":
        return cls(X, X, tuple(range(len(X))))

    def __call__(self, x):
        return self.assignment[self.source.idx(x)]

    def names(self) -> dict:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.assignment)}


@dataclass(frozen=True)
class FunctorReport:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def check_functor(f: SpaceMap) -> FunctorReport:
    """Check ``X(x, x') ⊑ Y(f x, f x')`` for all pairs; report the first failure."""
    X, Y = f.source, f.target
    if X.quantale != Y.quantale:
        raise ShapeMismatch("functor between spaces over different quantales")
    q = X.quantale
    a = f.assignment
    for i, row in enumerate(X.hom):
        for j, v in enumerate(row):
            if not q._leq(v, Y.hom[a[i]][a[j]]):
                return FunctorReport(False, (X.points[i], X.points[j]))
    return FunctorReport(True)


def order_on_maps(f: SpaceMap, g: SpaceMap) -> bool:
    """``f ≤ g`` iff ``f x ≤ g x`` in the underlying order for every ``x``."""
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("maps must share source and target")
    Y = f.target
    q = Y.quantale
    return all(q._leq(q.unit, Y.hom[i][j]) for i, j in zip(f.assignment, g.assignment))


def opposite_space(X: FinSpace) -> FinSpace:
    """Transposed hom over the opposite quantale."""
    n = len(X)
    hom = tuple(tuple(X.hom[j][i] for j in range(n)) for i in range(n))
    return FinSpace(opposite(X.quantale), X.points, hom)


def discrete_space(q: Quantale, points) -> FinSpace:
    points = tuple(points)
    n = len(points)
    hom = tuple(tuple(q.unit if i == j else q.bottom for j in range(n)) for i in range(n))
    return FinSpace(q, points, hom)


def one_point(q: Quantale) -> FinSpace:
    """The one-point space ``{*}`` used as the unit for (co)presheaves."""
    return discrete_space(q, ("*",))


def self_enrichment(q: Quantale, case: int) -> FinSpace:
    """The quantale as a space on its own carrier.

    ======  ==================  ============
    case    hom ``A(a, b)``      enriched over
    ======  ==================  ============
    1       ``a ▷ b``           ``q``
    2       ``a ◁ b``           ``q``
    3       ``b ▷ a``           ``opposite(q)``
    4       ``b ◁ a``           ``opposite(q)``
    ======  ==================  ============
    """
    ops = {
        1: lambda a, b: q._rres(a, b),
        2: lambda a, b: q._lres(a, b),
        3: lambda a, b: q._rres(b, a),
        4: lambda a, b: q._lres(b, a),
    }
    if case not in ops:
        raise InvalidInput(f"self-enrichment case must be 1..4, got {case!r}")
    carrier = q.carrier()
    hom = tuple(tuple(ops[case](a, b) for b in carrier) for a in carrier)
    over = q if case <= 2 else opposite(q)
    return FinSpace(over, tuple(q.format(v) for v in carrier), hom)


def generated_space(q: Quantale, points, matrix) -> FinSpace:
    """The smallest space whose hom lies above ``matrix``.

    Adds ``e`` on the diagonal and closes under composition (a Kleene star
    in the matrix quantale); useful for building automata and random spaces.
    """
    points = tuple(points)
    n = len(points)
    h = [list(r) for r in matrix]
    if len(h) != n or any(len(r) != n for r in h):
        raise ShapeMismatch(f"matrix must be {n}x{n}")
    for i in range(n):
        h[i][i] = q._join2(q.check(h[i][i]), q.unit)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                acc = h[i][j]
                for k in range(n):
                    acc = q._join2(acc, q._mul(h[i][k], h[k][j]))
                if acc != h[i][j]:
                    h[i][j] = acc
                    changed = True
    return FinSpace(q, points, _as_matrix(h))

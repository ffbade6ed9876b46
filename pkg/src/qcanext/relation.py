"""Weighted relations (distributors) and the blacktriangle calculus.

A relation ``R: X ⇸ Y`` is a matrix compatible with both homs::

    X(x', x) · R(x, y) ⊑ R(x', y)        R(x, y) · Y(y, y') ⊑ R(x, y')

Composition is ``(R ● S)(x, z) = ⊔_y R(x, y) · S(y, z)`` and its two right
adjoints are::

    (R ▸ T)(y, z) = ⊓_x R(x, y) ▷ T(x, z)
    (T ◂ S)(x, y) = ⊓_z T(x, z) ◁ S(y, z)

Presheaves (relations ``X ⇸ 1``) and copresheaves (``1 ⇸ A``) are handled
as plain tuples indexed by the points of the space; the ``*_vec`` and
``*_val`` helpers are the blacktriangle operations specialised to them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomViolation, BudgetExceeded, ShapeMismatch
from .quantale import Quantale
from .space import FinSpace

__all__ = [
    "QRel",
    "VectorSpace",
    "DEFAULT_ENUM_BUDGET",
    "compose",
    "rres_rel",
    "lres_rel",
    "rel_order",
    "identity",
    "compose_matrix",
    "rres_matrix",
    "lres_matrix",
    "rres_vec",
    "lres_vec",
    "rres_val",
    "lres_val",
    "dot",
    "is_presheaf",
    "is_copresheaf",
    "presheaves",
    "copresheaves",
    "presheaf_space",
    "copresheaf_space",
    "yoneda_down",
    "yoneda_up",
    "curry_down",
    "curry_up",
    "bimodule_violation",
]

#: default bound on candidate vectors when enumerating (co)presheaf spaces
DEFAULT_ENUM_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# raw matrix and vector operations


def compose_matrix(q: Quantale, R, S):
    ny = len(S)
    nz = len(S[0]) if ny else 0
    mul, join2 = q._mul, q._join2
    out = []
    for row in R:
        new = []
        for z in range(nz):
            acc = q.bottom
            for y in range(ny):
                acc = join2(acc, mul(row[y], S[y][z]))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def rres_matrix(q: Quantale, R, T):
    """``(R ▸ T)(y, z) = ⊓_x R(x, y) ▷ T(x, z)`` for ``R: X×Y``, ``T: X×Z``."""
    nx = len(R)
    ny = len(R[0]) if nx else 0
    nz = len(T[0]) if nx else 0
    rres, meet2 = q._rres, q._meet2
    out = []
    for y in range(ny):
        new = []
        for z in range(nz):
            acc = q.top
            for x in range(nx):
                acc = meet2(acc, rres(R[x][y], T[x][z]))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def lres_matrix(q: Quantale, T, S):
    """``(T ◂ S)(x, y) = ⊓_z T(x, z) ◁ S(y, z)`` for ``T: X×Z``, ``S: Y×Z``."""
    lres, meet2 = q._lres, q._meet2
    out = []
    for trow in T:
        new = []
        for srow in S:
            acc = q.top
            for t, s in zip(trow, srow):
                acc = meet2(acc, lres(t, s))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def rres_vec(q: Quantale, phi, T) -> tuple:
    """``(φ ▸ T)(z) = ⊓_x φ(x) ▷ T(x, z)``: presheaf on X against ``T: X ⇸ Z``."""
    nz = len(T[0]) if T else 0
    rres, meet2 = q._rres, q._meet2
    out = []
    for z in range(nz):
        acc = q.top
        for x, p in enumerate(phi):
            acc = meet2(acc, rres(p, T[x][z]))
        out.append(acc)
    return tuple(out)


def lres_vec(q: Quantale, T, psi) -> tuple:
    """``(T ◂ ψ)(x) = ⊓_z T(x, z) ◁ ψ(z)``: ``T: X ⇸ Z`` against a copresheaf on Z."""
    lres, meet2 = q._lres, q._meet2
    out = []
    for row in T:
        acc = q.top
        for t, s in zip(row, psi):
            acc = meet2(acc, lres(t, s))
        out.append(acc)
    return tuple(out)


def rres_val(q: Quantale, phi, phi2):
    """``φ ▸ φ' = ⊓_x φ(x) ▷ φ'(x)``, the hom of the presheaf space."""
    acc = q.top
    for a, b in zip(phi, phi2):
        acc = q._meet2(acc, q._rres(a, b))
    return acc


def lres_val(q: Quantale, psi, psi2):
    """``ψ ◂ ψ' = ⊓_a ψ(a) ◁ ψ'(a)``, the hom of the copresheaf space."""
    acc = q.top
    for a, b in zip(psi, psi2):
        acc = q._meet2(acc, q._lres(a, b))
    return acc


def dot(q: Quantale, psi, phi):
    """``ψ ● φ = ⊔_x ψ(x) · φ(x)`` for a copresheaf ψ and a presheaf φ."""
    acc = q.bottom
    for a, b in zip(psi, phi):
        acc = q._join2(acc, q._mul(a, b))
    return acc


# ---------------------------------------------------------------------------
# validated relations


def bimodule_violation(X: FinSpace, Y: FinSpace, R) -> AxiomViolation | None:
    q = X.quantale
    for x2, xrow in enumerate(X.hom):
        for x, hxx in enumerate(xrow):
            for y in range(len(Y)):
                if not q._leq(q._mul(hxx, R[x][y]), R[x2][y]):
                    return AxiomViolation(
                        "left action", (X.points[x2], X.points[x], Y.points[y])
                    )
    for x, rrow in enumerate(R):
        for y, r in enumerate(rrow):
            for y2 in range(len(Y)):
                if not q._leq(q._mul(r, Y.hom[y][y2]), rrow[y2]):
                    return AxiomViolation(
                        "right action", (X.points[x], Y.points[y], Y.points[y2])
                    )
    return None


@dataclass(frozen=True)
class QRel:
    """A validated weighted relation ``source ⇸ target``."""

    source: FinSpace
    target: FinSpace
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        X, Y = self.source, self.target
        if X.quantale != Y.quantale:
            raise ShapeMismatch("relation between spaces over different quantales")
        if len(m) != len(X) or any(len(r) != len(Y) for r in m):
            raise ShapeMismatch(f"matrix must be {len(X)}x{len(Y)}")
        q = X.quantale
        for r in m:
            for v in r:
                q.check(v)
        bad = bimodule_violation(X, Y, m)
        if bad is not None:
            raise bad

    @property
    def quantale(self) -> Quantale:
        return self.source.quantale

    def __call__(self, x, y):
        return self.matrix[self.source.idx(x)][self.target.idx(y)]

    def column(self, y) -> tuple:
        j = self.target.idx(y)
        return tuple(r[j] for r in self.matrix)

    def row(self, x) -> tuple:
        return self.matrix[self.source.idx(x)]

    def __repr__(self):
        return f"QRel({list(self.source.points)} ⇸ {list(self.target.points)})"


def identity(X: FinSpace) -> QRel:
    """The hom of ``X`` as the identity relation ``X ⇸ X``."""
    return QRel(X, X, X.hom)


def compose(R: QRel, S: QRel) -> QRel:
    """``R ● S``."""
    if R.target != S.source:
        raise ShapeMismatch("compose: R.target must equal S.source")
    return QRel(R.source, S.target, compose_matrix(R.quantale, R.matrix, S.matrix))


def rres_rel(R: QRel, T: QRel) -> QRel:
    """``R ▸ T: Y ⇸ Z`` for ``R: X ⇸ Y`` and ``T: X ⇸ Z``."""
    if R.source != T.source:
        raise ShapeMismatch("rres_rel: R and T must share their source")
    return QRel(R.target, T.target, rres_matrix(R.quantale, R.matrix, T.matrix))


def lres_rel(T: QRel, S: QRel) -> QRel:
    """``T ◂ S: X ⇸ Y`` for ``T: X ⇸ Z`` and ``S: Y ⇸ Z``."""
    if T.target != S.target:
        raise ShapeMismatch("lres_rel: T and S must share their target")
    return QRel(T.source, S.source, lres_matrix(T.quantale, T.matrix, S.matrix))


def rel_order(R: QRel, S: QRel) -> bool:
    """Pointwise order ``R ⊑ S``."""
    if R.source != S.source or R.target != S.target:
        raise ShapeMismatch("rel_order: relations must have the same type")
    q = R.quantale
    return all(
        q._leq(a, b) for ra, rb in zip(R.matrix, S.matrix) for a, b in zip(ra, rb)
    )


# ---------------------------------------------------------------------------
# presheaves and copresheaves


def is_presheaf(X: FinSpace, phi) -> bool:
    """``X(x', x) · φ(x) ⊑ φ(x')`` for all ``x, x'``."""
    q = X.quantale
    if len(phi) != len(X) or not all(q._contains(v) for v in phi):
        return False
    return all(
        q._leq(q._mul(h, phi[x]), phi[x2])
        for x2, row in enumerate(X.hom)
        for x, h in enumerate(row)
    )


def is_copresheaf(A: FinSpace, psi) -> bool:
    """``ψ(a) · A(a, a') ⊑ ψ(a')`` for all ``a, a'``."""
    q = A.quantale
    if len(psi) != len(A) or not all(q._contains(v) for v in psi):
        return False
    return all(
        q._leq(q._mul(psi[a], h), psi[a2])
        for a, row in enumerate(A.hom)
        for a2, h in enumerate(row)
    )


def _enumerate_vectors(X: FinSpace, compatible, budget):
    # backtracking in lexicographic carrier order; compatible(vec, i, k) checks
    # the new coordinate k against an earlier (or equal) coordinate i
    q = X.quantale
    n = len(X)
    required = q.carrier_size**n
    if required > budget:
        raise BudgetExceeded(
            f"{q.carrier_size}^{n} = {required} candidate vectors exceed budget {budget}",
            required=required,
            budget=budget,
        )
    carrier = q.carrier()
    out = []
    vec = [None] * n

    def extend(k):
        if k == n:
            out.append(tuple(vec))
            return
        for v in carrier:
            vec[k] = v
            if all(compatible(vec, i, k) for i in range(k + 1)):
                extend(k + 1)

    extend(0)
    return out


def presheaves(X: FinSpace, budget: int = DEFAULT_ENUM_BUDGET) -> list:
    """All presheaves on X in lexicographic carrier order."""
    q = X.quantale
    H = X.hom

    def compatible(v, i, k):
        return q._leq(q._mul(H[i][k], v[k]), v[i]) and q._leq(q._mul(H[k][i], v[i]), v[k])

    return _enumerate_vectors(X, compatible, budget)


def copresheaves(A: FinSpace, budget: int = DEFAULT_ENUM_BUDGET) -> list:
    """All copresheaves on A in lexicographic carrier order."""
    q = A.quantale
    H = A.hom

    def compatible(v, i, k):
        return q._leq(q._mul(v[i], H[i][k]), v[k]) and q._leq(q._mul(v[k], H[k][i]), v[i])

    return _enumerate_vectors(A, compatible, budget)


@dataclass(frozen=True, repr=False)
class VectorSpace(FinSpace):
    """A space whose points are (co)presheaves; ``vectors[i]`` backs point ``i``."""

    vectors: tuple = ()
    base: FinSpace | None = None

    def vector(self, point) -> tuple:
        return self.vectors[self.idx(point)]

    def find(self, vector) -> int:
        return self.vectors.index(tuple(vector))


def _vector_name(q, vec):
    return "[" + ",".join(q.format(v) for v in vec) + "]"


def presheaf_space(X: FinSpace, budget: int = DEFAULT_ENUM_BUDGET) -> VectorSpace:
    """``𝒟X`` with hom ``𝒟X(φ, φ') = φ ▸ φ'``."""
    q = X.quantale
    vecs = tuple(presheaves(X, budget))
    hom = tuple(tuple(rres_val(q, a, b) for b in vecs) for a in vecs)
    names = tuple(_vector_name(q, v) for v in vecs)
    return VectorSpace(q, names, hom, vectors=vecs, base=X)


def copresheaf_space(A: FinSpace, budget: int = DEFAULT_ENUM_BUDGET) -> VectorSpace:
    """``𝒰A`` with hom ``𝒰A(ψ, ψ') = ψ ◂ ψ'``."""
    q = A.quantale
    vecs = tuple(copresheaves(A, budget))
    hom = tuple(tuple(lres_val(q, a, b) for b in vecs) for a in vecs)
    names = tuple(_vector_name(q, v) for v in vecs)
    return VectorSpace(q, names, hom, vectors=vecs, base=A)


def yoneda_down(X: FinSpace, x) -> tuple:
    """The representable presheaf ``X(-, x)``."""
    return X.column(x)


def yoneda_up(A: FinSpace, a) -> tuple:
    """The representable copresheaf ``A(a, -)``."""
    return A.row(a)


def curry_down(R: QRel) -> list:
    """``a ↦ R(-, a)``: the relation as a map ``Y → 𝒟X``."""
    return [R.column(j) for j in range(len(R.target))]


def curry_up(R: QRel) -> list:
    """``x ↦ R(x, -)``: the relation as a map ``X → 𝒰Y``."""
    return [R.matrix[i] for i in range(len(R.source))]


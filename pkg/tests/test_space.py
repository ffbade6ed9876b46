import itertools
import random

import pytest

from qcanext import (
    Bool2,
    FinSpace,
    LanguageTrunc,
    LawvereChain,
    SimilarityChain,
    SpaceMap,
    check_functor,
    discrete_space,
    is_skeletal,
    opposite,
    opposite_space,
    order_on_maps,
    self_enrichment,
    underlying_order,
    validate_space,
)
from qcanext.errors import InvalidInput, ReflexivityViolation, ShapeMismatch, TransitivityViolation
from qcanext.oracle import oracle_space_ok

from instances import B, F, T, chain, random_matrix, random_space


def test_two_chain_and_indiscrete():
    X = validate_space(B, ["0", "1"], [[T, T], [F, T]])
    assert underlying_order(X) == ((T, T), (F, T))
    assert is_skeletal(X)
    Y = validate_space(B, ["0", "1"], [[T, T], [T, T]])
    assert not is_skeletal(Y)


def test_lawvere_space_from_the_examples():
    X = validate_space(LawvereChain(10), ["x", "y"], [[0, 3], [9, 0]])
    assert X("x", "y") == 3
    Y = validate_space(LawvereChain(10), ["x", "y"], [[0, 0], [4, 0]])
    assert underlying_order(Y) == ((T, T), (F, T))


def test_violations_name_witnesses():
    with pytest.raises(ReflexivityViolation) as exc:
        validate_space(B, ["x", "y"], [[T, F], [F, F]])
    assert exc.value.witness == ("y",)
    with pytest.raises(TransitivityViolation) as exc:
        validate_space(B, ["x", "y", "z"], [[T, T, F], [F, T, T], [F, F, T]])
    assert exc.value.witness == ("x", "y", "z")


def test_shape_and_name_errors():
    with pytest.raises(ShapeMismatch):
        validate_space(B, ["x"], [[T, T]])
    with pytest.raises(InvalidInput):
        validate_space(B, ["x", "x"], [[T, T], [T, T]])
    with pytest.raises(InvalidInput):
        chain(2)("nope", "0")


@pytest.mark.parametrize("q", [Bool2(), LawvereChain(3), SimilarityChain(2)], ids=repr)
def test_validator_agrees_with_oracle(q):
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 3)
        m = random_matrix(q, n, n, rng, bias=0.3)
        for i in range(n):
            if rng.random() < 0.9:
                m[i][i] = q.top
        try:
            validate_space(q, [str(i) for i in range(n)], m)
            ok = True
        except (ReflexivityViolation, TransitivityViolation):
            ok = False
        assert ok == oracle_space_ok(q, m)


def test_fast_transitivity_path_matches_loops():
    # spaces with more than eight points take the table route
    q = LawvereChain(4)
    rng = random.Random(11)
    for _ in range(10):
        X = random_space(q, 10, rng)
        m = [list(r) for r in X.hom]
        i, j = rng.randrange(10), rng.randrange(10)
        if i != j and m[i][j] != q.bottom:
            m[i][j] = q.bottom
        assert oracle_space_ok(q, m) == _accepts(q, m)


def _accepts(q, m):
    try:
        FinSpace(q, [str(i) for i in range(len(m))], m)
        return True
    except TransitivityViolation:
        return False


def test_underlying_order_is_a_preorder():
    rng = random.Random(5)
    for q in (LawvereChain(5), SimilarityChain(3), LanguageTrunc("ab", 1)):
        X = random_space(q, 4, rng)
        le = underlying_order(X)
        n = len(X)
        assert all(le[i][i] for i in range(n))
        for i, j, k in itertools.product(range(n), repeat=3):
            if le[i][j] and le[j][k]:
                assert le[i][k]


def test_functors():
    X = chain(2)
    assert check_functor(SpaceMap.identity(X))
    assert order_on_maps(SpaceMap.identity(X), SpaceMap.identity(X))
    swap = check_functor(SpaceMap(X, X, (1, 0)))
    assert not swap and swap.witness == ("0", "1")
    const = SpaceMap(X, X, (1, 1))
    assert check_functor(const)
    assert order_on_maps(SpaceMap.identity(X), const)
    assert not order_on_maps(const, SpaceMap.identity(X))


def test_opposite_and_discrete():
    X = chain(2)
    O = opposite_space(X)
    assert O.hom == ((T, F), (T, T))
    assert opposite_space(O).hom == X.hom
    D = discrete_space(B, ["p", "q"])
    assert D.hom == ((T, F), (F, T))
    L = LanguageTrunc("ab", 1)
    Y = random_space(L, 3, random.Random(2))
    assert opposite_space(Y).quantale == opposite(L)


def test_self_enrichment_lawvere():
    q = LawvereChain(10)
    A = self_enrichment(q, 1)
    for r, s in itertools.product(range(11), repeat=2):
        assert A(str(r), str(s)) == max(s - r, 0)


def test_self_enrichment_bool2():
    names = ["0", "1"]
    homs = {case: self_enrichment(B, case) for case in (1, 2, 3, 4)}
    implication = ((T, T), (F, T))
    converse = ((T, F), (T, T))
    assert homs[1].hom == homs[4].hom == implication
    assert homs[2].hom == homs[3].hom == converse
    assert homs[1].points == tuple(names)


@pytest.mark.parametrize("q", [LawvereChain(4), SimilarityChain(3), LanguageTrunc("ab", 1)], ids=repr)
def test_self_enrichment_transposes(q):
    h = {c: self_enrichment(q, c).hom for c in (1, 2, 3, 4)}
    assert h[1] == tuple(zip(*h[3]))
    assert h[2] == tuple(zip(*h[4]))
    if q.commutative:
        assert h[1] == h[4] and h[2] == h[3]
    le1 = underlying_order(self_enrichment(q, 1))
    le2 = underlying_order(self_enrichment(q, 2))
    carrier = q.carrier()
    for i, a in enumerate(carrier):
        for j, b in enumerate(carrier):
            assert le1[i][j] == q.leq(a, b)
            assert le2[i][j] == q.leq(b, a)


def test_history_and_prophecy_homs_differ():
    q = LanguageTrunc("ab", 2)
    h, p = self_enrichment(q, 1), self_enrichment(q, 2)
    a, ab = q.format(q.lang("a")), q.format(q.lang("ab"))
    assert h(a, ab) == q.rres(q.lang("a"), q.lang("ab"))
    assert p(ab, q.format(q.lang("b"))) == q.lres(q.lang("ab"), q.lang("b"))
    assert h.hom != p.hom


def test_bad_case():
    with pytest.raises(InvalidInput):
        self_enrichment(B, 5)

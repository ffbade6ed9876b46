import random

import pytest

from qcanext import FinSpace, LawvereChain, SimilarityChain, SpaceMap
from qcanext.errors import BudgetExceeded, ShapeMismatch
from qcanext.macneille import (
    Context,
    closure,
    coclosure,
    completion_iso,
    concept_colimit,
    concept_limit,
    covering_edges,
    down,
    enumerate_concepts,
    is_completion_of,
    is_concept,
    mc_colimit,
    mc_embed_a,
    mc_embed_x,
    mc_hom,
    mc_limit,
    restrict_discrete,
    to_dot,
    up,
)
from qcanext.oracle import oracle_concepts
from qcanext.relation import lres_val, rres_val
from qcanext.space import space_violation, underlying_order

from instances import B, F, T, chain, random_context, random_presheaf, random_copresheaf

ANTICHAIN = Context.discrete(B, ["x0", "x1"], ["a0", "a1"], [[T, F], [F, T]])


def hom_context(C):
    return Context(C, C, C.hom)


def embeddings(I, M):
    l = SpaceMap(I.X, M, tuple(M.find(mc_embed_x(I, x)) for x in range(len(I.X))))
    r = SpaceMap(I.A, M, tuple(M.find(mc_embed_a(I, a)) for a in range(len(I.A))))
    return l, r


def permuted(M, perm, prefix="p"):
    """A relabelled copy of ``M``: new point k is old point ``perm[k]``."""
    hom = [[M.hom[i][j] for j in perm] for i in perm]
    return FinSpace(M.quantale, tuple(f"{prefix}{k}" for k in range(len(perm))), hom)


def transport(m, target, perm):
    inv = {old: new for new, old in enumerate(perm)}
    return SpaceMap(m.source, target, tuple(inv[a] for a in m.assignment))


def test_up_and_down_examples():
    assert up(ANTICHAIN, (T, F)) == (T, F)
    assert up(ANTICHAIN, (F, F)) == (T, T)
    assert down(ANTICHAIN, (T, T)) == (F, F)
    assert closure(ANTICHAIN, (F, F)) == (F, F)
    C = chain(3)
    for x in C.points:
        assert up(hom_context(C), C.column(x)) == C.row(x)
    with pytest.raises(ShapeMismatch):
        up(ANTICHAIN, (T,))


def test_antichain_and_chain_counts():
    M = enumerate_concepts(ANTICHAIN)
    assert len(M) == 4
    assert [k.extent for k in M.concepts] == [(F, F), (F, T), (T, F), (T, T)]
    assert M.points == ("k0", "k1", "k2", "k3")
    assert len(enumerate_concepts(hom_context(chain(2)))) == 2


def test_similarity_one_by_one():
    q = SimilarityChain(1)
    M = enumerate_concepts(Context.discrete(q, ["x"], ["a"], [[1]]))
    assert [k.extent for k in M.concepts] == [(1,), (q.top,)]
    assert [(k.extent, k.intent) for k in M.concepts] == oracle_concepts(q, [[1]])


@pytest.mark.parametrize("q", [B, LawvereChain(3), SimilarityChain(2)], ids=repr)
def test_closure_laws(q):
    rng = random.Random(17)
    for _ in range(8):
        I = random_context(q, 3, 2, rng)
        for _ in range(5):
            phi = random_presheaf(I.X, rng)
            psi = random_copresheaf(I.A, rng)
            c = closure(I, phi)
            assert closure(I, c) == c
            assert rres_val(q, phi, c) == q.top or q.leq(q.unit, rres_val(q, phi, c))
            assert up(I, down(I, up(I, phi))) == up(I, phi)
            assert down(I, up(I, down(I, psi))) == down(I, psi)
            assert coclosure(I, coclosure(I, psi)) == coclosure(I, psi)
            # the Galois adjunction
            assert lres_val(q, up(I, phi), psi) == rres_val(q, phi, down(I, psi))


@pytest.mark.parametrize("q", [B, LawvereChain(3), SimilarityChain(2)], ids=repr)
def test_enumeration_matches_oracle(q):
    rng = random.Random(40)
    for _ in range(6):
        I = random_context(q, 3, 3, rng)
        M = enumerate_concepts(I)
        assert [(k.extent, k.intent) for k in M.concepts] == oracle_concepts(q, I.matrix)
        assert all(is_concept(I, k) for k in M.concepts)
        assert space_violation(q, M.points, M.hom) is None


def test_completion_hom_is_well_defined():
    rng = random.Random(2)
    q = LawvereChain(3)
    I = random_context(q, 3, 3, rng)
    M = enumerate_concepts(I)
    for i, k in enumerate(M.concepts):
        for j, k2 in enumerate(M.concepts):
            assert M.hom[i][j] == lres_val(q, k.intent, k2.intent) == mc_hom(M, k, k2)


def test_distances_and_yoneda():
    rng = random.Random(5)
    q = SimilarityChain(2)
    I = random_context(q, 3, 2, rng)
    M = enumerate_concepts(I)
    xs = [mc_embed_x(I, x) for x in range(3)]
    as_ = [mc_embed_a(I, a) for a in range(2)]
    for x, xb in enumerate(xs):
        for a, ab in enumerate(as_):
            assert mc_hom(M, xb, ab) == I.matrix[x][a]
            assert mc_hom(M, ab, xb) == rres_val(q, I.column(a), down(I, I.row(x)))
        for x2, xb2 in enumerate(xs):
            assert mc_hom(M, xb, xb2) == lres_val(q, I.row(x), I.row(x2))
        for k in M.concepts:
            assert mc_hom(M, xb, k) == k.extent[x]
    for a, ab in enumerate(as_):
        for a2, ab2 in enumerate(as_):
            assert mc_hom(M, ab, ab2) == rres_val(q, I.column(a), I.column(a2))
        for k in M.concepts:
            assert mc_hom(M, k, ab) == k.intent[a]


def test_colimits_and_limits_in_the_completion():
    M = enumerate_concepts(ANTICHAIN)
    assert mc_colimit(ANTICHAIN, (F, F)) == M.concepts[0]
    assert mc_colimit(ANTICHAIN, (T, F)) == mc_embed_x(ANTICHAIN, 0)
    assert mc_limit(ANTICHAIN, (F, F)) == M.concepts[-1]
    xs = [mc_embed_x(ANTICHAIN, x) for x in range(2)]
    as_ = [mc_embed_a(ANTICHAIN, a) for a in range(2)]
    for k in M.concepts:
        assert mc_colimit(ANTICHAIN, k.extent) == k
        assert mc_limit(ANTICHAIN, k.intent) == k
        assert concept_colimit(ANTICHAIN, xs, k.extent) == k
        assert concept_limit(ANTICHAIN, as_, k.intent) == k


def test_discrete_restriction():
    I = hom_context(chain(2))
    assert enumerate_concepts(restrict_discrete(I)).concepts == enumerate_concepts(I).concepts
    assert restrict_discrete(ANTICHAIN) == ANTICHAIN


def test_budget_reports_generators():
    q = LawvereChain(10)
    I = Context.discrete(q, ["x0", "x1", "x2"], ["a0", "a1", "a2"],
                         [[1, 4, 7], [5, 2, 9], [8, 6, 3]])
    with pytest.raises(BudgetExceeded, match="generators"):
        enumerate_concepts(I, budget=10)


def test_completion_recognises_itself():
    for I in (ANTICHAIN, hom_context(chain(3))):
        M = enumerate_concepts(I)
        l, r = embeddings(I, M)
        assert is_completion_of(M, I, l, r)


def test_permuted_copies_are_isomorphic():
    I = ANTICHAIN
    M = enumerate_concepts(I)
    l, _ = embeddings(I, M)
    perm = (2, 0, 3, 1)
    P = permuted(M, perm)
    result = completion_iso(M, P, I, l, transport(l, P, perm))
    assert result and result.forward.assignment == (1, 3, 0, 2)


def test_mutilated_copy_is_rejected():
    I = ANTICHAIN
    M = enumerate_concepts(I)
    l, r = embeddings(I, M)
    keep = (0, 1, 2)  # drop the top concept
    C = permuted(M, keep)
    report = is_completion_of(C, I, transport(l, C, keep), transport(r, C, keep))
    assert not report and report.condition == "cocomplete"


def test_wrong_distances_are_rejected():
    I = ANTICHAIN
    M = enumerate_concepts(I)
    l, r = embeddings(I, M)
    swapped = SpaceMap(I.A, M, tuple(reversed(r.assignment)))
    report = is_completion_of(M, I, l, swapped)
    assert not report and report.condition == "distance"


def test_covering_edges_and_dot():
    M = enumerate_concepts(ANTICHAIN)
    assert covering_edges(M) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    dot = to_dot(M)
    assert dot.startswith("digraph concepts {") and dot.count("->") == 4
    le = underlying_order(enumerate_concepts(hom_context(chain(3))))
    assert all(le[i][j] == (i <= j) for i in range(3) for j in range(3))

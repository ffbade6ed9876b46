import itertools
import random
from pathlib import Path

import pytest

from qcanext import LanguageTrunc, self_enrichment
from qcanext.errors import BudgetExceeded
from qcanext.io import automaton_from_json, load_json
from qcanext.limits import observability, reachability, tensor
from qcanext.macneille import Context, enumerate_concepts
from qcanext.oracle import (
    accepted_words,
    automaton_hom,
    fca_concepts,
    oracle_concepts,
    oracle_residual,
    oracle_space_ok,
    oracle_witness,
    reaching_words,
)

from instances import B, QUANTALES, DIAMOND, random_matrix

DATA = str(Path(__file__).parent / "data") + "/"


@pytest.mark.parametrize("name", sorted(QUANTALES))
def test_residuals_match_oracle(name):
    q = QUANTALES[name]
    rng = random.Random(0)
    carrier = q.carrier()
    pairs = (itertools.product(carrier, carrier) if len(carrier) < 20
             else [(rng.choice(carrier), rng.choice(carrier)) for _ in range(200)])
    for a, c in pairs:
        assert q.rres(a, c) == oracle_residual(q, a, c, "right")
        assert q.lres(c, a) == oracle_residual(q, a, c, "left")


def test_oracle_space_check():
    assert oracle_space_ok(B, DIAMOND.hom)
    assert not oracle_space_ok(B, [[True, True, False], [False, True, True], [False, False, True]])


def test_fca_on_the_antichain():
    assert fca_concepts([[True, False], [False, True]]) == {
        (frozenset(), frozenset({0, 1})), (frozenset({0}), frozenset({0})),
        (frozenset({1}), frozenset({1})), (frozenset({0, 1}), frozenset()),
    }


def test_enumeration_matches_fca():
    rng = random.Random(11)
    for _ in range(10):
        m = random_matrix(B, 4, 4, rng, 0.5)
        M = enumerate_concepts(Context.discrete(B, "wxyz", "abcd", m))
        ours = {
            (frozenset(i for i, v in enumerate(k.extent) if v),
             frozenset(j for j, v in enumerate(k.intent) if v))
            for k in M.concepts
        }
        assert ours == fca_concepts(m)


def test_concept_oracle_budget():
    q = QUANTALES["lawvere10"]
    with pytest.raises(BudgetExceeded):
        oracle_concepts(q, [[0] * 6], budget=1000)


def test_witness_oracle_finds_lattice_joins():
    assert oracle_witness(B, DIAMOND.hom, "colimit", [1, 2], [True, True]) == [3]
    assert oracle_witness(B, DIAMOND.hom, "limit", [], []) == [3]


def _automaton():
    A, trans, initial, final = automaton_from_json(load_json(DATA + "automaton.json"))
    return A, trans, initial, final


def test_automaton_hom_matches_graph_search():
    A, trans, _, _ = _automaton()
    words = automaton_hom(A.points, trans, A.quantale.max_len)
    for i, p in enumerate(A.points):
        for j, r in enumerate(A.points):
            assert A.hom[i][j] == frozenset(words[(p, r)])


def test_observability_and_reachability_match_graph_search():
    A, trans, initial, final = _automaton()
    q = A.quantale
    fin = [p for p, v in zip(A.points, final) if v == q.unit]
    ini = [p for p, v in zip(A.points, initial) if v == q.unit]
    acc = accepted_words(A.points, trans, fin, q.max_len)
    reach = reaching_words(A.points, trans, ini, q.max_len)
    assert observability(A, final) == tuple(frozenset(acc[p]) for p in A.points)
    assert reachability(A, initial) == tuple(frozenset(reach[p]) for p in A.points)
    assert q.format(observability(A, final)[0]) == "{ab,aba}"


def test_derivative_matches_full_candidate_sweep():
    q = LanguageTrunc("ab", 2)
    S = self_enrichment(q, 2)
    M, w = q.lang("ab"), q.lang("a")
    found = oracle_witness(q, S.hom, "colimit", [S.idx(q.format(M))], [w])
    assert found == tensor(S, q.format(M), w)
    assert S.points[found[0]] == "{b,aa,ab,ba,bb}"

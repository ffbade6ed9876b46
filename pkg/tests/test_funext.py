import itertools

import pytest

from qcanext import SpaceMap
from qcanext.canext import canonical_extension
from qcanext.errors import ClassNotClosed, ShapeMismatch
from qcanext.funext import (
    ExtensionBundle,
    check_adjunction,
    check_exchange,
    check_functoriality,
    check_virtual_adjoint,
    commutation_report,
    gext,
    glift,
    gpi,
    gsigma,
    precompose,
)
from qcanext.limits import colimit, limit
from qcanext.relation import copresheaf_space, presheaf_space, rres_val

from instances import B, DIAMOND, F, T, antichain, chain

CHAIN2 = chain(2)
CHAIN3 = chain(3)


def dmap(target, **assignment):
    return SpaceMap.from_names(DIAMOND, target, assignment)


IDENTITY = dmap(DIAMOND, bot="bot", a="a", b="b", top="top")
SWAP = dmap(DIAMOND, bot="bot", a="b", b="a", top="top")
PROJECT = dmap(CHAIN2, bot="0", a="0", b="1", top="1")
COLLAPSE = dmap(CHAIN3, bot="0", a="1", b="1", top="2")


def bundle(G, cls="finlim"):
    return ExtensionBundle(G, canonical_extension(G.source, cls, cls),
                           canonical_extension(G.target, cls, cls))


def test_precompose():
    f = (F, T, F, T)
    assert precompose(IDENTITY, f) == f
    assert precompose(SWAP, f) == (F, F, T, T)
    const = dmap(DIAMOND, bot="a", a="a", b="a", top="a")
    assert precompose(const, f) == (T, T, T, T)
    assert precompose(PROJECT, (F, T)) == (F, F, T, T)
    with pytest.raises(ShapeMismatch):
        precompose(PROJECT, f)


def test_gpi_and_gsigma_basic():
    for c in range(4):
        assert gpi(IDENTITY, DIAMOND.column(c)) == DIAMOND.column(c)
        assert gpi(PROJECT, DIAMOND.column(c)) == CHAIN2.column(PROJECT.assignment[c])
        assert gsigma(PROJECT, DIAMOND.row(c)) == CHAIN2.row(PROJECT.assignment[c])


@pytest.mark.parametrize("G", [PROJECT, COLLAPSE, SWAP], ids=["project", "collapse", "swap"])
def test_gpi_gsigma_match_witness_search(G):
    C, D = G.source, G.target
    PD, UD = presheaf_space(D), copresheaf_space(D)
    # D(-, G) as a diagram C → 𝒟D and D(G, -) as a diagram C → 𝒰D
    down_pts = [PD.points[PD.vectors.index(D.column(g))] for g in G.assignment]
    up_pts = [UD.points[UD.vectors.index(D.row(g))] for g in G.assignment]
    for i in presheaf_space(C).vectors:
        assert PD.vectors[colimit(PD, down_pts, i)[0]] == gpi(G, i)
        for j in PD.vectors:
            assert rres_val(B, gpi(G, i), j) == rres_val(B, i, precompose(G, j))
    for f in copresheaf_space(C).vectors:
        assert UD.vectors[limit(UD, up_pts, f)[0]] == gsigma(G, f)


@pytest.mark.parametrize("G", [IDENTITY, SWAP, PROJECT, COLLAPSE],
                         ids=["identity", "swap", "project", "collapse"])
def test_exchange_over_all_vectors(G):
    C, D = G.source, G.target
    for f, i in itertools.product(copresheaf_space(D).vectors, presheaf_space(C).vectors):
        assert check_exchange(G, f, i, "l/pi")
    for f, i in itertools.product(copresheaf_space(C).vectors, presheaf_space(D).vectors):
        assert check_exchange(G, f, i, "sigma/r")


@pytest.mark.parametrize("G", [IDENTITY, SWAP, PROJECT], ids=["identity", "swap", "project"])
def test_adjunctions_under_closure(G):
    b = bundle(G)
    assert all(b.preconditions().values())
    assert b.exchange_sweep()
    assert check_adjunction(b, "l-pi") and check_adjunction(b, "sigma-r")
    assert check_virtual_adjoint(b, "l") and check_virtual_adjoint(b, "r")
    for which in ("l", "r", "pi", "sigma"):
        assert check_functoriality(b, which)
    assert commutation_report(b, "pi") == commutation_report(b, "sigma") == []


def test_identity_extensions_are_identities():
    b = bundle(IDENTITY)
    n = len(b.EC.delta)
    for table in (b.lift_l, b.lift_r, b.ext_pi, b.ext_sigma):
        assert table == tuple(range(n))


def test_swap_permutes_the_atoms():
    b = bundle(SWAP)
    a, bb = b.EC.embedding[1], b.EC.embedding[2]
    assert b.lift_l[a] == bb and b.ext_pi[bb] == a
    k = b.ED.delta.concepts[a]
    assert glift(b, k, "l") == b.EC.delta.concepts[bb]
    assert gext(b, b.EC.delta.concepts[a], "sigma") == b.ED.delta.concepts[bb]


def test_collapse_is_refused():
    b = bundle(COLLAPSE)
    assert b.preconditions() == {"l": False, "r": False, "pi": True, "sigma": True}
    with pytest.raises(ClassNotClosed) as exc:
        b.lift_l
    assert exc.value.side == "l" and exc.value.name == "f1"
    assert exc.value.violator == (F, T, T)
    with pytest.raises(ClassNotClosed) as exc:
        b.lift_r
    assert exc.value.name == "i1"
    # the extensions on the other side stay definable
    assert len(b.ext_pi) == len(b.ext_sigma) == len(b.EC.delta)


def test_commutation_diagnostic_tracks_class_closure():
    G = SpaceMap.from_names(antichain(2), DIAMOND, {"p0": "a", "p1": "b"})
    b = ExtensionBundle(G, canonical_extension(G.source, "all", "all"),
                        canonical_extension(DIAMOND))
    assert b.preconditions()["pi"] is False
    failing = sorted({k for k, _ in commutation_report(b, "pi")})
    outside = [k for k, j in enumerate(b.gpi_table) if j not in b.ED.ideal_index]
    assert failing == outside == [0, 3]
    assert (3, "join(a,b)") in commutation_report(b, "pi")
    # without the closure hypothesis the adjunction breaks
    assert not check_adjunction(b, "l-pi")
    with pytest.raises(ValueError):
        commutation_report(b, "tau")


def test_bundle_validation():
    with pytest.raises(ShapeMismatch):
        ExtensionBundle(PROJECT, canonical_extension(CHAIN2), canonical_extension(DIAMOND))
    bad = SpaceMap(DIAMOND, CHAIN2, (1, 0, 0, 0))
    with pytest.raises(ShapeMismatch, match="not a functor"):
        ExtensionBundle(bad, canonical_extension(DIAMOND), canonical_extension(CHAIN2))

import itertools

import pytest

from tauexc.perpcat import (bar_tau, bar_tau_inv, e_inv, e_inv_brute, e_map, e_map_factored,
                            e_map_perp, is_tau_rigid_by_ext, j_of, jd_of, rel_nu, rel_projectives,
                            rel_simples, rel_simples_by_top, rel_tau, rel_tau_inv)
from tauexc.torsion import (ContextError, Obj, is_support_tau_rigid, is_tau_rigid, perp_right,
                            tau_rigid_members)

from conftest import context
from oracles import module_hom_dim

FINITE = ["a2", "a3", "ex-9.3", "ex-9.4"]


def _objects(W):
    return [Obj(x) for x in tau_rigid_members(W)] + [Obj(q, 1) for q in W.rel_projectives()]


def _compatible_pairs(W):
    """(U, V) with U ⊔ V support τ-rigid and |U| < rank."""
    objs = _objects(W)
    for k in range(1, W.rank):
        for U in itertools.combinations(objs, k):
            if not is_support_tau_rigid(W, U):
                continue
            for V in objs:
                if V not in U and is_support_tau_rigid(W, U + (V,)):
                    yield U, V


def test_empty_object_gives_whole_context():
    W = context("ex-9.3")
    assert j_of(W, []) is W


def test_shifted_projective_gives_right_perp():
    W = context("ex-9.3")
    J = j_of(W, [Obj("P3", 1)])
    assert set(J.members) == set(perp_right(W, ["P3"]))
    assert set(J.members) == {"S2", "S1", "P1"}


def test_ex92_perp_of_quotient_module():
    W = context("ex-9.2")
    J = j_of(W, ["P1/P3"])
    assert set(J.members) == {"S2", "I3", "P1"}
    assert J.rank == 2
    assert set(rel_simples(J)) == {"S2", "I3"}
    assert list(j_of(J, ["S2"]).members) == ["I3"]


def test_non_rigid_object_rejected():
    W = context("ex-9.2")
    with pytest.raises(ContextError):
        j_of(W, ["S1", "S2"])


def test_ex94_relative_projectives_differ_from_ambient():
    W = context("ex-9.4")
    J = j_of(W, ["S3"])
    assert set(J.members) == {"S1", "P3/S1", "I2", "P3"}
    assert set(rel_projectives(J)) == {"I2", "P3"}
    assert "P3/S1" not in rel_projectives(J)


@pytest.mark.parametrize("name", FINITE)
def test_functor_route_matches_direct_ext_route(name):
    W = context(name)
    for x in tau_rigid_members(W):
        J = j_of(W, [x])
        assert J.rel_projectives() == J.rel_projectives_direct()
        assert len(J.rel_projectives()) == J.rank == W.rank - 1


@pytest.mark.parametrize("name", FINITE)
def test_rank_equals_number_of_simples(name):
    W = context(name)
    for U, _ in _compatible_pairs(W):
        J = j_of(W, U)
        assert len(rel_simples(J)) == J.rank
        assert sorted(rel_simples_by_top(J)) == sorted(rel_simples(J))


@pytest.mark.parametrize("name", FINITE)
def test_nakayama_on_whole_category(name):
    W = context(name)
    inv = W.engine.inv
    alg = inv.alg
    for k, q in enumerate(W.rel_projectives()):
        v = alg.vertices[k]
        assert inv[rel_nu(W, q)].dims == tuple(
            inv[p].dim_at(v) for p in W.rel_projectives())


@pytest.mark.parametrize("name", FINITE)
def test_relative_tau_agrees_with_tau_on_whole(name):
    W = context(name)
    for x in W.members:
        assert rel_tau(W, x) == W.tau(x)
        assert rel_tau_inv(W, x) == W.tau_inv(x)


@pytest.mark.parametrize("name", ["ex-9.3", "ex-9.4"])
def test_relative_tau_inverse_pairs(name):
    W = context(name)
    for x in tau_rigid_members(W):
        J = j_of(W, [x])
        for y in J.members:
            for z in J.tau(y):
                assert J.tau_inv(z) == [y]
            assert is_tau_rigid_by_ext(J, y) == is_tau_rigid(J, [y])


def test_bar_tau_values_ex93():
    W = context("ex-9.3")
    assert bar_tau(W, ["S1"]) == (Obj("S2"),)
    assert bar_tau(W, ["P1"]) == (Obj("S1", -1),)
    assert bar_tau(W, [Obj("P2", 1)]) == (Obj("P1"),)


@pytest.mark.parametrize("name", ["ex-9.3", "ex-9.4"])
def test_bar_tau_round_trip(name):
    W = context(name)
    for o in _objects(W):
        assert bar_tau_inv(W, bar_tau(W, [o])) == (o,)


def test_map_examples():
    A = context("a2")
    assert e_map(A, ["S1"], Obj("P2", 1)) == Obj("P1", 1)
    W = context("ex-9.2")
    assert e_map(W, ["S2"], "P1/P3") == Obj("S1")
    W3 = context("ex-9.3")
    for V in j_of(W3, [Obj("P3", 1)]).members:
        assert e_map(W3, [Obj("P3", 1)], V) == Obj(V)


def test_map_rejects_incompatible():
    W = context("ex-9.3")
    with pytest.raises(ContextError):
        e_map(W, ["S1"], "P2")


@pytest.mark.parametrize("name", FINITE)
def test_map_properties_exhaustive(name):
    W = context(name)
    eng = W.engine
    n = 0
    for U, V in _compatible_pairs(W):
        n += 1
        E = e_map(W, U, V)
        J = j_of(W, U)
        assert E.name in J
        assert e_map_factored(W, U, V) == E
        assert e_inv(W, U, E) == V
        assert set(j_of(J, (E,)).members) == set(j_of(W, U + (V,)).members)
        mods = [o.name for o in U if o.shift == 0]
        if V.shift == 0 and not eng.gen(mods, V.name):
            assert E.shift == 0 and e_map_perp(W, U, V) == [E.name]
    assert n > 0


@pytest.mark.parametrize("name", ["a2", "ex-9.3"])
def test_inverse_matches_brute_force(name):
    W = context(name)
    for U, V in _compatible_pairs(W):
        E = e_map(W, U, V)
        assert e_inv_brute(W, U, E) == e_inv(W, U, E)


def test_dual_perp_members():
    W = context("ex-9.3")
    inv = W.engine.inv
    J = jd_of(W, ["S2"])
    tim = [inv[y] for y in W.tau_inv("S2")]
    want = {x for x in W.members
            if module_hom_dim(inv[x], inv["S2"]) == 0 and all(module_hom_dim(t, inv[x]) == 0 for t in tim)}
    assert set(J.members) == want

import itertools

import pytest

from tauexc import modules as mr
from tauexc.torsion import (ContextError, FFKind, Obj, bongartz, cobongartz, cogen_members,
                            ext_projectives, ff_status, filt_cogen, filt_gen, gen_contains,
                            gen_members, is_support_tau_rigid, is_tau_rigid, nonsplit_ext_projectives,
                            obj_label, perp_left, serre_generator, split_ext_projectives,
                            sttilt_hasse, support_tau_tilting, torsion_class)
from tauexc.perpcat import j_of

from conftest import EXTRA_RANK_TWO, context
from oracles import brute_force_sttilt, module_hom_dim

FINITE = ["a2", "a3", "ex-9.3", "ex-9.4"]
RANK_TWO = ["a2", *EXTRA_RANK_TWO]


def test_projectives_are_tau_rigid():
    for name in FINITE + ["ex-9.2"]:
        W = context(name)
        assert all(is_tau_rigid(W, [q]) for q in W.engine.projectives())


@pytest.mark.parametrize("name", ["ex-9.3", "ex-9.4"])
def test_all_members_tau_rigid(name):
    W = context(name)
    assert all(is_tau_rigid(W, [x]) for x in W.members)


def test_tau_rigidity_of_sums_matches_raw_hom():
    W = context("ex-9.4")
    inv = W.engine.inv
    for x, y in itertools.combinations(W.members, 2):
        want = all(module_hom_dim(inv[a], inv.tau_module(b)) == 0 for a in (x, y) for b in (x, y))
        assert is_tau_rigid(W, [x, y]) == want


def test_not_in_context():
    W = context("ex-9.3")
    J = j_of(W, ["P3"])
    with pytest.raises(ContextError):
        is_tau_rigid(J, ["P3"])


def test_gen_membership_ex93():
    W = context("ex-9.3")
    assert gen_contains(W, ["P2"], "S2")
    assert not gen_contains(W, ["P2"], "S1")
    assert gen_contains(W, ["P1"], "S1")


def test_filt_gen_basics():
    W = context("ex-9.3")
    assert set(filt_gen(W, W.engine.projectives()).members) == set(W.members)
    assert filt_gen(W, []).members == ()


def test_filt_gen_serre_ex92():
    W = context("ex-9.2")
    inv = W.engine.inv
    T = filt_gen(W, ["S1", "S2"])
    assert set(T.members) == {x for x in W.members if inv[x].dims[2] == 0}


@pytest.mark.parametrize("name", ["ex-9.3", "ex-9.4"])
def test_filt_classes_closed_under_quotients_and_subs(name):
    W = context(name)
    for x, y in itertools.combinations(W.members, 2):
        T = filt_gen(W, [x, y])
        F = filt_cogen(W, [x, y])
        for a in T.members:
            for b in W.members:
                if W.engine.gen([a], b):
                    assert b in T
        for a in F.members:
            for b in W.members:
                if W.engine.cogen([a], b):
                    assert b in F
        assert {x, y} <= set(T.members) and {x, y} <= set(F.members)


def test_ext_projectives_whole_and_a2():
    W = context("ex-9.4")
    assert sorted(ext_projectives(torsion_class(W, W.members))) == sorted(W.engine.projectives())
    assert split_ext_projectives(torsion_class(W, W.members)) == ext_projectives(torsion_class(W, W.members))
    A = context("a2")
    T = gen_members(A, ["P1"])
    assert set(T.members) == {"P1", "S1"}
    assert set(ext_projectives(T)) == {"P1", "S1"}
    assert split_ext_projectives(T) == ["P1"]
    assert nonsplit_ext_projectives(T) == ["S1"]


@pytest.mark.parametrize("name", FINITE)
def test_ext_projectives_match_tau_criterion(name):
    # X in P(T) iff Hom(T, τX) = 0, checked with the raw Hom oracle
    W = context(name)
    inv = W.engine.inv
    for x in W.members:
        T = gen_members(W, [x])
        want = [y for y in T.members
                if all(module_hom_dim(inv[z], inv.tau_module(y)) == 0 for z in T.members)]
        assert ext_projectives(T) == want


def test_ex92_split_projectives_of_serre_class():
    W = context("ex-9.2")
    assert set(split_ext_projectives(filt_gen(W, ["S1", "S2"]))) == {"S2", "P1/P3"}
    T = torsion_class(W, W.perp_tau(["P1/P3"]))
    assert "S2" in ext_projectives(T)
    assert "S2" in bongartz(W, ["P1/P3"])


@pytest.mark.parametrize("name", FINITE)
def test_bongartz_facts(name):
    W = context(name)
    projs = W.engine.projectives()
    for q in projs:
        assert sorted(bongartz(W, [q])) == sorted(p for p in projs if p != q)
    for x in W.members:
        if not is_tau_rigid(W, [x]):
            continue
        B, C = bongartz(W, [x]), cobongartz(W, [x])
        assert not set(B) & set(C)
        assert set(gen_members(W, [x]).members) <= set(W.perp_tau([x]))
        assert x in ext_projectives(gen_members(W, [x]))
        # the co-Bongartz side may be completed by shifted projectives instead
        assert len(B) == W.rank - 1 and len(C) <= W.rank - 1


def test_bongartz_requires_rigidity():
    W = context("kronecker", 8)
    bad = next(x for x in W.members if not is_tau_rigid(W, [x]))
    with pytest.raises(ContextError):
        bongartz(W, [bad])


@pytest.mark.parametrize("name", FINITE)
def test_gen_minimal_equals_left_perp_of_j(name):
    W = context(name)
    for k in (1, 2):
        for M in itertools.combinations(W.members, k):
            if k == 2 and not is_tau_rigid(W, list(M)):
                continue
            if sorted(split_ext_projectives(gen_members(W, list(M)))) != sorted(M):
                continue
            J = j_of(W, list(M))
            assert set(gen_members(W, list(M)).members) == set(perp_left(W, J.members))


@pytest.mark.parametrize("name", FINITE + ["ex-9.1"])
def test_sttilt_against_brute_force(name):
    W = context(name)
    inv = W.engine.inv
    alg = inv.alg
    projs = {v: W.engine.projectives()[k] for k, v in enumerate(alg.vertices)}
    rigid = [x for x in W.members if module_hom_dim(inv[x], inv.tau_module(x)) == 0]

    def hom_tau_zero(x, y):
        return module_hom_dim(inv[x], inv.tau_module(y)) == 0

    want = brute_force_sttilt(rigid, hom_tau_zero, projs, {x: inv[x].dims for x in rigid}, W.rank)
    got = {frozenset(str(o) for o in u) for u in support_tau_tilting(W)}
    assert got == want


def test_a2_sttilt():
    W = context("a2")
    labels = {obj_label(u) for u in support_tau_tilting(W)}
    assert labels == {"P2+P1", "S1+P1", "S1+P2[1]", "P2+P1[1]", "P2[1]+P1[1]"}


def test_support_tau_rigid_checks():
    W = context("a2")
    assert is_support_tau_rigid(W, [Obj("S1"), Obj("P2", 1)])
    assert not is_support_tau_rigid(W, [Obj("P1"), Obj("P1", 1)])
    assert not is_support_tau_rigid(W, [Obj("S1"), Obj("P2")])


@pytest.mark.parametrize("name", RANK_TWO)
def test_rank_two_hasse_shape(name):
    W = context(name)
    H = sttilt_hasse(W)
    sources = [v for v in H if H.in_degree(v) == 0]
    sinks = [v for v in H if H.out_degree(v) == 0]
    assert len(sources) == 1 and set(sources[0]) == {Obj(q) for q in W.engine.projectives()}
    assert len(sinks) == 1 and all(o.shift == 1 for o in sinks[0])
    assert all(H.in_degree(v) + H.out_degree(v) == 2 for v in H)


def test_hasse_edges_have_brick_labels():
    W = context("ex-9.4")
    H = sttilt_hasse(W)
    assert H.number_of_edges() > 0
    for u, v in H.edges:
        lab = H.edges[u, v]["brick"]
        assert lab in W.members and mr.is_brick(W.engine.module(lab))


def test_beta_injective_on_ex94():
    W = context("ex-9.4")
    inv = W.engine.inv
    images = [mr.beta(inv[x]) for x in W.members]
    for a, b in itertools.combinations(images, 2):
        assert not mr.is_iso(a, b)


def test_ff_status():
    W = context("ex-9.3")
    for x in W.members:
        assert ff_status(gen_members(W, [x])).kind == FFKind.FF
    st = ff_status(gen_members(W, []))
    assert st.kind == FFKind.FF and st.witness == ()
    E = context("ex-9.2")
    st = ff_status(filt_gen(E, ["I3"]))
    assert st.kind == FFKind.NOT_FF and st.bound == 8
    assert "evidence at bound 8" in str(st)


def test_ff_verdicts_move_with_the_bound():
    # a band-type class: undecided at bound 2, evidence against at bound 8
    x = "M(1,1,0)#1"
    assert ff_status(filt_gen(context("ex-9.2", 2), [x])).kind == FFKind.UNKNOWN
    assert ff_status(filt_gen(context("ex-9.2", 8), [x])).kind == FFKind.NOT_FF
    # a finite class on a truncated inventory: FF, with a witness that grows with the bound
    small = ff_status(filt_gen(context("kronecker", 4), ["P1"]))
    big = ff_status(filt_gen(context("kronecker", 8), ["P1"]))
    assert small.kind == big.kind == FFKind.FF
    assert small.witness == ("P1",) and big.witness == ("P1", "M(2,3)#1")
    assert (small.bound, big.bound) == (4, 8)


def test_serre_generators():
    A = context("a2")
    assert serre_generator(A, 1) == "S1"
    K = context("ex-9.1")
    assert serre_generator(K, 1) == "S1" and serre_generator(K, 2) == "S2"
    with pytest.raises(ContextError):
        serre_generator(context("a3"), 1)


def test_cogen_members_dual():
    W = context("ex-9.3")
    F = cogen_members(W, ["P2"])
    assert "P3" in F and "S2" not in F

"""τ-exceptional sequences, their left/right mutation, and the graphs they form.

Sequences are tuples of member names ``(M_1, ..., M_n)``.  Position ``k``
(0-based) lives in the nested context J(M_{k+2}, ..., M_n) built by peeling
entries off the right.  Mutation indices ``i`` are 1-based, as in the usual
notation φ_i, ψ_i acting on the pair (M_i, M_{i+1}).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .inventory import InventoryError
from .perpcat import e_inv, e_map, j_of
from .torsion import (Context, ContextError, FFKind, Obj, cogen_members, ext_projectives,
                      ff_status, filt_cogen, filt_gen, gen_members, is_tau_rigid,
                      nonsplit_ext_projectives, perp_left, serre_generator, split_ext_injectives,
                      split_ext_projectives, sttilt_hasse, support_tau_tilting, tau_of_set,
                      torsion_class, module_part, beta_name)


class MutationError(ValueError):
    """A mutation was requested that is undefined or cannot be decided at the bound."""


class UnknownAtBound(MutationError):
    """Mutability could not be decided inside a truncated inventory."""


class Regularity(str, Enum):
    REGULAR = "Regular"
    IRREGULAR = "Irregular"


class Mutability(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "UnknownAtBound"


@dataclass(frozen=True)
class PairClassification:
    left: Regularity
    right: Regularity
    left_mutable: Mutability
    right_mutable: Mutability
    note: str = ""

    def as_dict(self) -> dict:
        return {"left": self.left.value, "right": self.right.value,
                "left_mutable": self.left_mutable.value, "right_mutable": self.right_mutable.value}


# -- validation ----------------------------------------------------------------------

def nested_contexts(W: Context, seq) -> list[Context]:
    """ctx[k] is the context in which entry k must be τ-rigid."""
    seq = list(seq)
    ctxs: list[Context] = [W] * len(seq)
    cur = W
    for k in range(len(seq) - 1, -1, -1):
        ctxs[k] = cur
        if k:
            cur = j_of(cur, [seq[k]])
    return ctxs


def is_tau_exceptional(W: Context, seq) -> bool:
    seq = list(seq)
    cur = W
    for k in range(len(seq) - 1, -1, -1):
        x = seq[k]
        if x not in cur or not is_tau_rigid(cur, [x]):
            return False
        if k:
            cur = j_of(cur, [x])
    return True


def is_complete(W: Context, seq) -> bool:
    return len(seq) == W.rank and is_tau_exceptional(W, seq)


def perp_of_sequence(W: Context, seq) -> Context:
    """J(M_1, ..., M_n) as a nested context."""
    cur = W
    for x in reversed(list(seq)):
        cur = j_of(cur, [x])
    return cur


# -- TF-orderings and ω ----------------------------------------------------------------

def is_tf_ordered(W: Context, N) -> bool:
    N = list(N)
    if len(set(N)) != len(N) or not all(x in W for x in N) or not is_tau_rigid(W, N):
        return False
    eng = W.engine
    return all(not eng.gen(N[k + 1:], N[k]) for k in range(len(N) - 1))


def omega(W: Context, N) -> tuple[str, ...]:
    """TF-ordered τ-rigid module ↦ τ-exceptional sequence."""
    N = list(N)
    if not is_tf_ordered(W, N):
        raise MutationError(f"({', '.join(N)}) is not a TF-ordered τ-rigid module")
    out = []
    for k, x in enumerate(N):
        parts = W.engine.f(N[k + 1:], x)
        if len(parts) != 1:
            raise ContextError(f"f({x}) is not indecomposable")
        out.append(parts[0])
    return tuple(out)


def omega_inv(W: Context, seq) -> tuple[str, ...]:
    """τ-exceptional sequence ↦ TF-ordered τ-rigid module, by iterating E⁻¹ against suffix sums."""
    seq = list(seq)
    N: list[str] = []
    for x in reversed(seq):
        y = e_inv(W, tuple(Obj(n) for n in N), Obj(x))
        if y.shift != 0:
            raise ContextError(f"E⁻¹ of {x} is shifted")
        N.insert(0, y.name)
    return tuple(N)


def tf_orderings(W: Context, module) -> list[tuple[str, ...]]:
    return [p for p in itertools.permutations(module) if is_tf_ordered(W, p)]


def enumerate_complete(W: Context) -> list[tuple[str, ...]]:
    """All complete τ-exceptional sequences, via TF-orderings of τ-tilting modules."""
    def build():
        out = set()
        for U in support_tau_tilting(W):
            mods = module_part(U)
            if len(mods) != W.rank:
                continue
            for order in tf_orderings(W, mods):
                out.add(omega(W, order))
        return sorted(out, key=lambda s: [W.engine.inv.index(x) for x in s])
    return W.memo("complete_sequences", build)


def enumerate_recursive(W: Context) -> list[tuple[str, ...]]:
    """Complete sequences by choosing the last entry and recursing into its perpendicular."""
    if W.rank == 0:
        return [()]
    out = []
    for x in W.members:
        if not is_tau_rigid(W, [x]):
            continue
        for rest in enumerate_recursive(j_of(W, [x])):
            out.append(rest + (x,))
    return sorted(out, key=lambda s: [W.engine.inv.index(y) for y in s])


# -- pairs -----------------------------------------------------------------------------

def _ext_projectives_perp_tau(W: Context, x: str) -> list[str]:
    """P(⊥τ_W x)."""
    return ext_projectives(torsion_class(W, W.perp_tau([x])))


def e_inv_module(W: Context, Y: str, X: str) -> str:
    v = e_inv(W, (Obj(Y),), Obj(X))
    if v.shift:
        raise ContextError(f"E⁻¹_{Y}({X}) is shifted")
    return v.name


def is_left_regular(W: Context, B: str, C: str) -> bool:
    if W.is_rel_projective(C):
        return True
    return C not in _ext_projectives_perp_tau(W, e_inv_module(W, C, B))


def is_right_regular(W: Context, X: str, Y: str) -> bool:
    Xe = e_inv_module(W, Y, X)
    return Xe in _ext_projectives_perp_tau(W, Y) or not W.engine.gen([Xe], Y)


def pair_perp(W: Context, A: str, B: str) -> Context:
    return j_of(j_of(W, [B]), [A])


def _verdict(status) -> Mutability:
    return {FFKind.FF: Mutability.YES, FFKind.NOT_FF: Mutability.NO,
            FFKind.UNKNOWN: Mutability.UNKNOWN}[status.kind]


def classify_pair(W: Context, A: str, B: str) -> PairClassification:
    """Regularity and mutability of the pair (A, B) in W."""
    if not is_tau_exceptional(W, [A, B]):
        raise MutationError(f"({A}, {B}) is not a τ-exceptional pair in {W.label}")
    left = Regularity.REGULAR if is_left_regular(W, A, B) else Regularity.IRREGULAR
    right = Regularity.REGULAR if is_right_regular(W, A, B) else Regularity.IRREGULAR
    J = pair_perp(W, A, B)
    notes = []
    lm = rm = Mutability.YES
    if left == Regularity.IRREGULAR:
        st = ff_status(filt_gen(W, J.members))
        lm = _verdict(st)
        notes.append(f"FiltGen(J): {st}")
    if right == Regularity.IRREGULAR:
        st = ff_status(filt_cogen(W, J.members))
        rm = _verdict(st)
        notes.append(f"FiltCogen(J): {st}")
    return PairClassification(left, right, lm, rm, "; ".join(notes))


def _single(names, what: str) -> str:
    names = list(names)
    if len(names) != 1:
        raise ContextError(f"{what}: expected one indecomposable, found {names or 'none'}")
    return names[0]


def phi_pair(W: Context, B: str, C: str) -> tuple[str, str]:
    """Left mutation of a τ-exceptional pair (B, C) in W."""
    cls = classify_pair(W, B, C)
    if cls.left == Regularity.REGULAR:
        Cp = Obj(C, 1) if W.is_rel_projective(C) else Obj(C)
        Bup = e_inv(W, (Cp,), Obj(B))
        if Bup.shift:
            raise ContextError("lifted entry is shifted")
        E = e_map(W, (Bup,), Cp)
        return E.name, Bup.name
    if cls.left_mutable == Mutability.NO:
        raise MutationError(f"({B}, {C}) is left immutable ({cls.note})")
    if cls.left_mutable == Mutability.UNKNOWN:
        raise UnknownAtBound(f"left mutability of ({B}, {C}) is unknown at the bound ({cls.note})")
    JL = j_of(W, [e_inv_module(W, C, B), C])
    Pns = nonsplit_ext_projectives(filt_gen(W, JL.members))
    Xp = _single(split_ext_projectives(gen_members(W, Pns)), "P_s(Gen P_ns)")
    Y = _single([x for x in Pns if x != Xp], "P_ns complement")
    E = e_map(W, (Obj(Y),), Obj(Xp))
    if E.shift:
        raise ContextError("irregular left mutation produced a shifted entry")
    return E.name, Y


def psi_pair(W: Context, X: str, Y: str) -> tuple[str, str]:
    """Right mutation of a τ-exceptional pair (X, Y) in W."""
    cls = classify_pair(W, X, Y)
    if cls.right == Regularity.REGULAR:
        Xp = Obj(X, 1) if j_of(W, [Y]).is_rel_projective(X) else Obj(X)
        Xup = e_inv(W, (Obj(Y),), Xp)
        E = e_map(W, (Xup,), Obj(Y))
        if E.shift:
            raise ContextError("right mutation produced a shifted entry")
        return E.name, Xup.name
    if cls.right_mutable == Mutability.NO:
        raise MutationError(f"({X}, {Y}) is right immutable ({cls.note})")
    if cls.right_mutable == Mutability.UNKNOWN:
        raise UnknownAtBound(f"right mutability of ({X}, {Y}) is unknown at the bound ({cls.note})")
    JL = j_of(W, [e_inv_module(W, Y, X), Y])
    Ps = split_ext_projectives(torsion_class(W, perp_left(W, JL.members)))
    Z = _single(split_ext_injectives(cogen_members(W, tau_of_set(W, Ps))), "I_s(Cogen τP_s)")
    Bp = _single(W.tau_inv(Z), "τ⁻¹ of the split injective")
    C = _single([x for x in Ps if x != Bp], "P_s complement")
    E = e_map(W, (Obj(C),), Obj(Bp))
    if E.shift:
        raise ContextError("irregular right mutation produced a shifted entry")
    return E.name, C


# -- sequences -------------------------------------------------------------------------

def _check_index(seq, i: int) -> None:
    if not 1 <= i < len(seq):
        raise MutationError(f"index {i} out of range for a sequence of length {len(seq)}")


def pair_context(W: Context, seq, i: int) -> Context:
    _check_index(seq, i)
    return nested_contexts(W, seq)[i]


def classify(W: Context, seq, i: int) -> PairClassification:
    ctx = pair_context(W, seq, i)
    return classify_pair(ctx, seq[i - 1], seq[i])


def phi_i(W: Context, seq, i: int) -> tuple[str, ...]:
    seq = tuple(seq)
    ctx = pair_context(W, seq, i)
    a, b = phi_pair(ctx, seq[i - 1], seq[i])
    return seq[:i - 1] + (a, b) + seq[i + 1:]


def psi_i(W: Context, seq, i: int) -> tuple[str, ...]:
    seq = tuple(seq)
    ctx = pair_context(W, seq, i)
    a, b = psi_pair(ctx, seq[i - 1], seq[i])
    return seq[:i - 1] + (a, b) + seq[i + 1:]


def mutate(W: Context, seq, i: int, direction: str) -> tuple[str, ...]:
    if direction == "left":
        return phi_i(W, seq, i)
    if direction == "right":
        return psi_i(W, seq, i)
    raise MutationError(f"unknown direction {direction!r}")


# -- graphs ----------------------------------------------------------------------------

_SOFT_ERRORS = (MutationError, ContextError, InventoryError)


def hasse_tex(W: Context) -> nx.MultiDiGraph:
    """Mutation graph of complete sequences: X → Y at index i when X = φ_i(Y)."""
    def build():
        G = nx.MultiDiGraph()
        seqs = enumerate_complete(W)
        G.add_nodes_from(seqs)
        for Y in seqs:
            for i in range(1, len(Y)):
                try:
                    X = phi_i(W, Y, i)
                except _SOFT_ERRORS:
                    continue
                G.add_edge(X, Y, index=i, dir="left")
        return G
    return W.memo("hasse_tex", build)


@dataclass
class Orbit:
    graph: nx.MultiDiGraph
    frontier: dict  # sequence -> reason exploration stopped there


def orbit(W: Context, seq, depth: int, indices=None) -> Orbit:
    """Breadth-first closure under φ_i and ψ_i up to ``depth`` steps."""
    seq = tuple(seq)
    G = nx.MultiDiGraph()
    G.add_node(seq)
    frontier: dict = {}
    seen = {seq: 0}
    queue = deque([seq])
    while queue:
        Y = queue.popleft()
        d = seen[Y]
        if d >= depth:
            frontier.setdefault(Y, "depth")
            continue
        for i in (indices or range(1, len(Y))):
            for direction in ("left", "right"):
                try:
                    Z = mutate(W, Y, i, direction)
                except _SOFT_ERRORS as err:
                    frontier.setdefault(Y, f"{direction} {i}: {err}")
                    continue
                src, tgt = (Z, Y) if direction == "left" else (Y, Z)
                if not G.has_edge(src, tgt, key=(i, "left")):
                    G.add_edge(src, tgt, key=(i, "left"), index=i, dir="left")
                if Z not in seen:
                    seen[Z] = d + 1
                    queue.append(Z)
    return Orbit(G, frontier)


def discovered_pairs(W: Context) -> list[tuple[str, str]]:
    """Complete τ-exceptional pairs reachable within the inventory of a rank-two context."""
    if W.rank != 2:
        raise MutationError("pair discovery is for rank-two contexts")
    out = []
    for C in W.members:
        if not is_tau_rigid(W, [C]):
            continue
        try:
            J = j_of(W, [C])
            for B in J.members:
                if is_tau_rigid(J, [B]):
                    out.append((B, C))
        except _SOFT_ERRORS:
            continue
    return out


def pair_graph(W: Context) -> nx.DiGraph:
    """φ-edges among the discovered complete pairs (partial when the inventory is truncated)."""
    G = nx.DiGraph()
    pairs = discovered_pairs(W)
    G.add_nodes_from(pairs)
    known = set(pairs)
    for Y in pairs:
        try:
            X = phi_i(W, Y, 1)
        except _SOFT_ERRORS:
            continue
        if X in known:
            G.add_edge(X, Y, index=1, dir="left")
    return G


def component_count(G) -> int:
    return nx.number_weakly_connected_components(G) if G.number_of_nodes() else 0


# -- hereditary comparison -------------------------------------------------------------

def classical_braid(W: Context, seq, i: int) -> tuple[str, ...]:
    """σ_i by exhaustive search for the unique M' completing (…, M', M_i, …)."""
    if not W.engine.alg.is_hereditary():
        raise MutationError("the classical braid action needs a hereditary algebra")
    seq = tuple(seq)
    _check_index(seq, i)
    hits = []
    for x in W.members:
        cand = seq[:i - 1] + (x, seq[i - 1]) + seq[i + 1:]
        try:
            if is_tau_exceptional(W, cand):
                hits.append(cand)
        except _SOFT_ERRORS:
            continue
    if len(hits) != 1:
        raise MutationError(f"σ_{i}: found {len(hits)} candidates")
    return hits[0]


# -- rank two ----------------------------------------------------------------------------

def _vertex_by_modules(W: Context, mods) -> tuple:
    target = set(mods)
    for u in support_tau_tilting(W):
        if set(module_part(u)) == target:
            return u
    raise ContextError(f"no support τ-tilting object with module part {sorted(target)}")


def rank2_data(W: Context) -> dict:
    if W.rank != 2 or W.parent is not None:
        raise MutationError("rank-two statements need a rank-two module category")
    alg = W.engine.alg
    v1, v2 = alg.vertices
    P = {v: W.engine.projectives()[k] for k, v in enumerate(alg.vertices)}
    Se = {v: serre_generator(W, v) for v in alg.vertices}
    R = {v: tuple(cobongartz_names(W, P[v])) for v in alg.vertices}
    other = {v1: v2, v2: v1}
    return {"P": P, "Se": Se, "R": R, "other": other}


def cobongartz_names(W: Context, x: str) -> list[str]:
    return [y for y in ext_projectives(gen_members(W, [x])) if y != x]


def rank2_q(W: Context) -> nx.DiGraph:
    """Hasse(sτ-tilt) without P(Λ) and 0, plus S_i^e → P_{i+1} ⊕ R_{i+1}."""
    d = rank2_data(W)
    H = sttilt_hasse(W)
    top = _vertex_by_modules(W, d["P"].values())
    bottom = _vertex_by_modules(W, [])
    Q = nx.DiGraph()
    Q.add_nodes_from(v for v in H.nodes if v not in (top, bottom))
    Q.add_edges_from((a, b) for a, b in H.edges if top not in (a, b) and bottom not in (a, b))
    for v, w in d["other"].items():
        src = _vertex_by_modules(W, [d["Se"][v]])
        tgt = _vertex_by_modules(W, (d["P"][w],) + d["R"][w])
        Q.add_edge(src, tgt)
    return Q


def rank2_rho(W: Context) -> dict:
    """ρ from complete pairs to vertices of the modified exchange quiver."""
    d = rank2_data(W)
    serre = set(d["Se"].values())
    out = {}
    for seq in enumerate_complete(W):
        B, C = seq
        if C in serre:
            out[seq] = _vertex_by_modules(W, [C])
        else:
            out[seq] = _vertex_by_modules(W, omega_inv(W, psi_i(W, seq, 1)))
    return out


def rank2_rho_is_isomorphism(W: Context) -> bool:
    rho = rank2_rho(W)
    Q = rank2_q(W)
    T = hasse_tex(W)
    if len(set(rho.values())) != len(rho) or set(rho.values()) != set(Q.nodes):
        return False
    tex_edges = {(a, b) for a, b in T.edges()}
    q_edges = set(Q.edges)
    return {(rho[a], rho[b]) for a, b in tex_edges} == q_edges


def rank2_components(W: Context) -> tuple[int, int]:
    return component_count(sttilt_hasse(W)), component_count(hasse_tex(W))


def brick_pair_check(W: Context) -> list[dict]:
    """For each vertex M of Q: β of ρ⁻¹(M) against the labels of the arrows into and out of M."""
    H = sttilt_hasse(W)
    eng = W.engine
    rows = []
    for seq, M in rank2_rho(W).items():
        ins = [H.edges[e]["brick"] for e in H.in_edges(M)]
        outs = [H.edges[e]["brick"] for e in H.out_edges(M)]
        got = tuple(beta_name(eng, x) for x in seq)
        want = (ins[0] if len(ins) == 1 else None, outs[0] if len(outs) == 1 else None)
        rows.append({"vertex": M, "sequence": seq, "beta": got, "labels": want, "ok": got == want})
    return rows

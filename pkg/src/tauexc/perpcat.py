"""τ-perpendicular categories, relative τ by endomorphism transport, and E_U.

A perpendicular category is a ``Context`` whose members are computed from its
parent.  Hom and Ext inside a wide subcategory agree with the ambient ones, so
most relative questions reduce to member-set computations.  Only the relative
AR translate needs a genuinely new computation: modules of the subcategory are
transported to modules over ``End(⊕ relative projectives)``.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from . import modules as mr
from .inventory import InventoryTooSmall
from .modules import Module, ModuleMap
from .torsion import (Context, ContextError, Obj, as_objs, filt_cogen, filt_gen, obj_label,
                      perp_left, split_ext_injectives, split_ext_projectives,
                      torsion_class, ext_projectives, is_support_tau_rigid)


class PerpCategory(Context):
    """J(U) = M^⊥ ∩ ⊥τM ∩ P^⊥ inside a parent context, for U = M ⊔ P[1].

    With ``dual=True`` the defining object is N ⊔ I[-1] and the members are
    ⊥N ∩ (τ⁻¹N)^⊥ ∩ ⊥I.
    """

    def __init__(self, parent: Context, U: tuple[Obj, ...], dual: bool = False):
        eng = parent.engine
        mods = [o.name for o in U if o.shift == 0]
        shifted = [o.name for o in U if o.shift != 0]
        if not dual:
            members = [x for x in parent.members
                       if eng.hom_zero(mods, [x]) and parent.hom_tau_zero([x], mods)
                       and eng.hom_zero(shifted, [x])]
            label = f"J({obj_label(U)})"
        else:
            tim: list[str] = []
            for m in mods:
                tim.extend(parent.tau_inv(m))
            members = [x for x in parent.members
                       if eng.hom_zero([x], mods) and eng.hom_zero(tim, [x]) and eng.hom_zero([x], shifted)]
            label = f"Jd({obj_label(U)})"
        if parent.parent is not None:
            label = f"{label} in {parent.label}"
        super().__init__(eng, members, label, parent, U)
        self.dual = dual
        self.mods = mods
        self.shifted = shifted

    # relative projectives via the torsion-free functor f_M
    def rel_projectives(self) -> list[str]:
        def build():
            parent, eng = self.parent, self.engine
            if self.dual:
                return self.rel_projectives_direct()
            T = torsion_class(parent, [x for x in parent.members
                                        if eng.hom_zero(self.shifted, [x])
                                        and parent.hom_tau_zero([x], self.mods)])
            out = []
            for x in ext_projectives(T):
                if x in self.mods:
                    continue
                parts = eng.f(self.mods, x)
                if len(parts) != 1 or parts[0] not in self.member_set:
                    if not self.exact:
                        raise InventoryTooSmall(f"relative projectives of {self.label} leave the "
                                                f"inventory ({eng.inv.bound_marker()})")
                    raise ContextError(f"f_M({x}) is not a single member of {self.label}")
                out.append(parts[0])
            return eng.order(out)
        return self.memo("projectives", build)

    def rel_projectives_direct(self) -> list[str]:
        eng = self.engine
        return [x for x in self.members if all(eng.ext(x, y) == 0 for y in self.members)]

    def rel_injectives(self) -> list[str]:
        def build():
            eng = self.engine
            return [x for x in self.members if all(eng.ext(y, x) == 0 for y in self.members)]
        return self.memo("injectives", build)

    def tau(self, x: str) -> list[str]:
        self.require([x])
        return self.memo(("tau", x), lambda: rel_tau(self, x))

    def tau_inv(self, x: str) -> list[str]:
        self.require([x])
        return self.memo(("tau_inv", x), lambda: rel_tau_inv(self, x))


def _key_of(U) -> tuple:
    return tuple(sorted(as_objs(U)))


def j_of(ctx: Context, U) -> Context:
    """J(U) inside ``ctx``; memoised per (context, defining object)."""
    U = _key_of(U)
    if not U:
        return ctx
    if not is_support_tau_rigid(ctx, U):
        raise ContextError(f"{obj_label(U)} is not support τ-rigid in {ctx.label}")
    key = (id(ctx), U, False)
    eng = ctx.engine
    if key not in eng.contexts:
        eng.contexts[key] = PerpCategory(ctx, U)
    return eng.contexts[key]


def jd_of(ctx: Context, V) -> Context:
    """The dual J^d(N ⊔ I[-1]) inside ``ctx``."""
    V = _key_of(V)
    if not V:
        return ctx
    key = (id(ctx), V, True)
    eng = ctx.engine
    if key not in eng.contexts:
        eng.contexts[key] = PerpCategory(ctx, V, dual=True)
    return eng.contexts[key]


def rel_projectives(W: Context) -> list[str]:
    return W.rel_projectives()


def rel_injectives(W: Context) -> list[str]:
    return W.rel_injectives()


def rel_simples(W: Context) -> list[str]:
    return W.rel_simples()


def rel_nu(W: Context, p: str) -> str:
    return W.rel_nu(p)


def rel_simples_by_top(W: Context) -> list[str]:
    """Relative simples as quotients of relative projectives by their relative radicals."""
    eng = W.engine
    projs = [eng.module(q) for q in W.rel_projectives()]
    out = []
    for i, P in enumerate(projs):
        images = []
        for j, Q in enumerate(projs):
            maps = mr.hom_basis(Q, P) if i != j else mr.endo_radical(P)
            images.extend(f.image_bases() for f in maps)
        if images:
            S, _ = mr.quotient(P, mr.sum_of_bases(P, images))
        else:
            S = P
        parts = eng.inv.identify(S)
        if len(parts) != 1:
            raise ContextError("relative top is not indecomposable")
        out.append(parts[0])
    return eng.order(out)


# -- transport to End(⊕ relative projectives) ------------------------------------------

def _flat(f: ModuleMap) -> np.ndarray:
    return np.concatenate([f.mats[v].reshape(-1) for v in f.src.alg.vertices])


def _coords(basis: list[ModuleMap], p: int):
    """Matrix B of flattened basis maps and a left inverse for coordinates."""
    if not basis:
        return None, None
    B = np.stack([_flat(f) for f in basis], axis=1)
    return B, la.left_inverse(B, p)


def _rad_maps(projs: list[Module], i: int, j: int) -> list[ModuleMap]:
    """Basis of the radical part of Hom(projs[j], projs[i])."""
    if i == j:
        return mr.endo_radical(projs[i])
    return mr.hom_basis(projs[j], projs[i])


def _relative_cover(projs: list[Module], X: Module) -> tuple[Module, ModuleMap, list[int]]:
    """Minimal right add(projs)-approximation of X, assumed surjective."""
    p = X.alg.p
    chosen: list[tuple[int, ModuleMap]] = []
    for i, P in enumerate(projs):
        hom = mr.hom_basis(P, X)
        if not hom:
            continue
        B, _ = _coords(hom, p)
        radvecs = []
        for j, Q in enumerate(projs):
            rads = _rad_maps(projs, j, i)
            if not rads:
                continue
            for g in mr.hom_basis(Q, X):
                for r in rads:
                    radvecs.append(_flat(g.compose(r)))
        rad_space = la.colspace(np.stack(radvecs, axis=1), p) if radvecs else la.zeros(B.shape[0], 0)
        comp = la.colspace(np.hstack([rad_space, B]), p)[:, rad_space.shape[1]:]
        # comp columns come from B, so each is one of the hom basis vectors
        for k in range(comp.shape[1]):
            col = comp[:, k]
            idx = next(t for t in range(B.shape[1]) if np.array_equal(B[:, t], col))
            chosen.append((i, hom[idx]))
    if not chosen:
        return mr.zero_module(X.alg), ModuleMap(mr.zero_module(X.alg), X, {v: la.zeros(X.dim_at(v), 0) for v in X.alg.vertices}), []
    P0 = mr.direct_sum([projs[i] for i, _ in chosen])
    mats = {v: np.hstack([g.mats[v] for _, g in chosen]) for v in X.alg.vertices}
    return P0, ModuleMap(P0, X, mats), [i for i, _ in chosen]


class _ActionModule:
    """A vector space with one matrix per algebra basis element."""

    def __init__(self, dim: int, mats: list[np.ndarray]):
        self.dim = dim
        self.mats = mats


def _action_hom_dim(U: _ActionModule, V: _ActionModule, p: int) -> int:
    return _action_hom(U, V, p).shape[1]


def _action_hom(U: _ActionModule, V: _ActionModule, p: int) -> np.ndarray:
    n, m = V.dim, U.dim
    if n * m == 0:
        return la.zeros(0, 0)
    rows = []
    for a, b in zip(U.mats, V.mats):
        # phi @ a - b @ phi = 0, row-major vec
        rows.append(np.kron(la.eye(n), a.T) - np.kron(b, la.eye(m)))
    return la.nullspace(np.mod(np.vstack(rows), p), p)


def _action_iso(U: _ActionModule, V: _ActionModule, p: int, seed: int = 0) -> bool:
    if U.dim != V.dim:
        return False
    if U.dim == 0:
        return True
    h = _action_hom(U, V, p)
    if h.shape[1] == 0 or h.shape[1] != _action_hom_dim(V, U, p):
        return False
    rng = np.random.default_rng((seed, mr.BASE_SEED))
    for _ in range(mr.ISO_SAMPLES):
        c = rng.integers(0, p, size=h.shape[1])
        phi = np.mod(h @ c, p).reshape(V.dim, U.dim)
        if la.is_invertible(phi, p):
            return True
    return False


def _transport(PW: Module, basisA: list[ModuleMap], Y: Module, p: int) -> _ActionModule:
    """F(Y) = Hom(PW, Y) with right action g·a = g∘a."""
    hom = mr.hom_basis(PW, Y)
    if not hom:
        return _ActionModule(0, [la.zeros(0, 0) for _ in basisA])
    _, L = _coords(hom, p)
    mats = []
    for a in basisA:
        cols = [la.matmul(L, _flat(g.compose(a)).reshape(-1, 1), p)[:, 0] for g in hom]
        mats.append(np.stack(cols, axis=1))
    return _ActionModule(len(hom), mats)


def transport_tau(projs: list[Module], X: Module, candidates: list[Module]) -> int | None:
    """Index of the candidate whose transport is τ_A of the transport of X.

    ``projs`` are the indecomposable relative projectives of a wide subcategory
    containing X and the candidates.
    """
    p = X.alg.p
    PW = mr.direct_sum(projs)
    basisA = mr.hom_basis(PW, PW)
    P0, pi, _ = _relative_cover(projs, X)
    if not pi.is_surjective():
        raise ContextError("relative projectives do not cover the module")
    K, kin = mr.submodule(P0, pi.kernel_bases())
    if K.is_zero():
        return None
    P1, pk, _ = _relative_cover(projs, K)
    f = kin.compose(pk)  # P1 → P0
    h1 = mr.hom_basis(P1, PW)
    if not h1:
        return None
    B1, L1 = _coords(h1, p)
    pulled = [_flat(g.compose(f)) for g in mr.hom_basis(P0, PW)]
    im = la.colspace(la.matmul(L1, np.stack(pulled, axis=1), p), p) if pulled else la.zeros(len(h1), 0)
    comp = la.complement(im, p)
    proj = la.inverse(np.hstack([im, comp]), p)[im.shape[1]:]
    dimC = comp.shape[1]
    if dimC == 0:
        return None
    # left action on C: a·h = a∘h, written in quotient coordinates, then transposed
    mats = []
    for a in basisA:
        cols = []
        for k in range(dimC):
            h = la.matmul(B1, comp[:, k:k + 1], p)[:, 0]
            hmap = _unflat(h, P1, PW)
            img = la.matmul(L1, _flat(a.compose(hmap)).reshape(-1, 1), p)
            cols.append(la.matmul(proj, img, p)[:, 0])
        mats.append(np.stack(cols, axis=1).T.copy())
    target = _ActionModule(dimC, mats)
    for idx, Y in enumerate(candidates):
        if sum(mr.hom_dim(Q, Y) for Q in projs) != dimC:
            continue
        if _action_iso(_transport(PW, basisA, Y, p), target, p, seed=idx + 1):
            return idx
    raise InventoryTooSmall("no member matches the relative AR translate")


def _unflat(vec: np.ndarray, src: Module, tgt: Module) -> ModuleMap:
    mats, o = {}, 0
    for v in src.alg.vertices:
        r, c = tgt.dim_at(v), src.dim_at(v)
        mats[v] = vec[o:o + r * c].reshape(r, c)
        o += r * c
    return ModuleMap(src, tgt, mats)


def rel_tau(W: Context, x: str) -> list[str]:
    if W.parent is None:
        return W.tau(x)
    if W.is_rel_projective(x):
        return []
    eng = W.engine
    projs = [eng.module(q) for q in W.rel_projectives()]
    cands = list(W.members)
    idx = transport_tau(projs, eng.module(x), [eng.module(y) for y in cands])
    return [] if idx is None else [cands[idx]]


def rel_tau_inv(W: Context, x: str) -> list[str]:
    """τ⁻¹ inside W, computed as D τ D over the opposite algebra."""
    if W.parent is None:
        return W.tau_inv(x)
    if W.is_rel_injective(x):
        return []
    eng = W.engine
    op = mr.opposite(eng.alg)
    injs = [mr.dual(eng.module(i), op) for i in W.rel_injectives()]
    cands = list(W.members)
    idx = transport_tau(injs, mr.dual(eng.module(x), op), [mr.dual(eng.module(y), op) for y in cands])
    return [] if idx is None else [cands[idx]]


def is_tau_rigid_by_ext(W: Context, x: str) -> bool:
    """Ext¹(x, Gen x ∩ W) = 0: an independent τ_W-rigidity test."""
    eng = W.engine
    return all(eng.ext(x, y) == 0 for y in W.members if eng.gen([x], y))


# -- shifts ----------------------------------------------------------------------------

def bar_tau(W: Context, U) -> tuple[Obj, ...]:
    out = []
    for o in as_objs(U):
        if o.shift == 0:
            if W.is_rel_projective(o.name):
                out.append(Obj(W.rel_nu(o.name), -1))
            else:
                out.extend(Obj(y) for y in W.tau(o.name))
        elif o.shift == 1:
            out.append(Obj(W.rel_nu(o.name)))
        else:
            raise ContextError("bar_tau expects a support τ-rigid object")
    return tuple(out)


def bar_tau_inv(W: Context, U) -> tuple[Obj, ...]:
    out = []
    for o in as_objs(U):
        if o.shift == 0:
            if W.is_rel_injective(o.name):
                out.append(Obj(W.rel_nu_inv(o.name), 1))
            else:
                out.extend(Obj(y) for y in W.tau_inv(o.name))
        elif o.shift == -1:
            out.append(Obj(W.rel_nu_inv(o.name)))
        else:
            raise ContextError("bar_tau_inv expects a support τ⁻¹-rigid object")
    return tuple(out)


# -- the reduction bijection E_U ----------------------------------------------------------

def _split(U) -> tuple[list[str], list[str]]:
    U = as_objs(U)
    return [o.name for o in U if o.shift == 0], [o.name for o in U if o.shift == 1]


def _single(names, what: str) -> str:
    names = list(names)
    if len(names) != 1:
        raise ContextError(f"{what}: expected one indecomposable, found {names or 'none'}")
    return names[0]


def e_map_perp(W: Context, U, V: Obj) -> list[str]:
    """P_s(J(U) ∩ ⊥J(U ⊔ V)), computed inside J(U)."""
    U = as_objs(U)
    J = j_of(W, U)
    JV = j_of(W, U + (V,))
    T = torsion_class(J, perp_left(J, JV.members))
    return split_ext_projectives(T)


def e_map(W: Context, U, V) -> Obj:
    """E_U(V) for an indecomposable V with U ⊔ V support τ-rigid in W."""
    U = as_objs(U)
    V = as_objs([V])[0]
    if not is_support_tau_rigid(W, U + (V,)) or V in U:
        raise ContextError(f"{obj_label(U + (V,))} is not support τ-rigid in {W.label}")
    M, _ = _split(U)
    eng = W.engine
    if V.shift == 0 and not eng.gen(M, V.name):
        return Obj(_single(eng.f(M, V.name), f"f_M({V})"))
    return Obj(_single(e_map_perp(W, U, V), f"E_{obj_label(U)}({V})"), 1)


def e_map_factored(W: Context, U, V) -> Obj:
    """E_U(V) one summand at a time: shifted projectives first, then modules in order."""
    U = list(as_objs(U))
    V = as_objs([V])[0]
    idx = {n: i for i, n in enumerate(W.engine.inv.names)}
    U.sort(key=lambda o: (o.shift == 0, idx[o.name]))
    ctx, rest, cur = W, U, V
    while rest:
        head, tail = rest[0], rest[1:]
        new_rest = [e_map(ctx, (head,), x) for x in tail]
        cur = e_map(ctx, (head,), cur)
        ctx = j_of(ctx, (head,))
        rest = sorted(new_rest, key=lambda o: (o.shift == 0, idx[o.name]))
    return cur


def e_inv(W: Context, U, V) -> Obj:
    """E⁻¹_U(V) for an indecomposable support τ-rigid object V of J(U)."""
    U = as_objs(U)
    V = as_objs([V])[0]
    M, P = _split(U)
    J = j_of(W, U)
    if V.name not in J:
        raise ContextError(f"{V.name} is not in {J.label}")
    if V.shift == 0:
        T = filt_gen(W, M + [V.name])
        cands = [x for x in split_ext_projectives(T) if x not in M]
        return Obj(_single(cands, f"E^-1_{obj_label(U)}({V})"))
    if V.shift != 1 or not J.is_rel_projective(V.name):
        raise ContextError(f"{V} is not a shifted relative projective of {J.label}")
    known = [y for m in M if not W.is_rel_projective(m) for y in W.tau(m)]
    known += [W.rel_nu(q) for q in P]
    F = filt_cogen(W, known + [J.rel_nu(V.name)])
    cands = [x for x in split_ext_injectives(F) if x not in known]
    Z = _single(cands, f"E^-1_{obj_label(U)}({V})")
    return _single(bar_tau_inv(W, [Obj(Z)]), "τ̄⁻¹")


def e_inv_brute(W: Context, U, V) -> Obj:
    """E⁻¹ by searching all complements of U for the one mapped to V."""
    U = as_objs(U)
    V = as_objs([V])[0]
    cands = [Obj(x) for x in W.members] + [Obj(q, 1) for q in W.rel_projectives()]
    hits = []
    for c in cands:
        if c in U or not is_support_tau_rigid(W, U + (c,)):
            continue
        try:
            if e_map(W, U, c) == V:
                hits.append(c)
        except (ContextError, InventoryTooSmall):
            continue
    return _single([str(h) for h in hits], "brute-force inverse") and hits[0]

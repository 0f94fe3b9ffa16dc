"""Representations of bound quivers and the linear algebra built on them.

Convention: a module assigns a column space ``F_p^{d_v}`` to each vertex and an
arrow ``a: s -> t`` acts by a ``d_t x d_s`` matrix.  A path ``a.b`` acts by
``M_b @ M_a``.
"""

from __future__ import annotations

import hashlib

import numpy as np

from . import linalg as la
from .algebra import Algebra

FITTING_SAMPLES = 32
ISO_SAMPLES = 32
# mixed into every sampling seed; the CLI sets it from --seed
BASE_SEED = 0


class Module:
    __slots__ = ("alg", "dims", "maps", "name", "_key")

    def __init__(self, alg: Algebra, dims, maps: dict | None = None, name: str = ""):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        p = alg.p
        out = {}
        for a in alg.arrows:
            ds, dt = self.dim_at(a.src), self.dim_at(a.tgt)
            m = None if maps is None else maps.get(a.name)
            if m is None:
                m = la.zeros(dt, ds)
            m = la.reduce(m, p).reshape(dt, ds)
            out[a.name] = m
        self.maps = out
        self.name = name
        self._key = None

    def dim_at(self, v: int) -> int:
        return self.dims[self.alg.vindex[v]]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total == 0

    def key(self) -> bytes:
        """Fingerprint of the concrete matrices (not an iso invariant)."""
        if self._key is None:
            h = hashlib.sha256(repr(self.dims).encode())
            for a in self.alg.arrows:
                h.update(self.maps[a.name].tobytes())
            self._key = h.digest()
        return self._key

    def path_matrix(self, arrows) -> np.ndarray:
        p = self.alg.p
        if not arrows:
            raise ValueError("use identity for trivial paths")
        m = self.maps[arrows[0]]
        for x in arrows[1:]:
            m = la.matmul(self.maps[x], m, p)
        return m

    def satisfies_relations(self) -> bool:
        return all(not self.path_matrix(r).any() for r in self.alg.relations)

    def __repr__(self):
        return f"Module({self.name or '?'}, dims={self.dims})"


class ModuleMap:
    __slots__ = ("src", "tgt", "mats")

    def __init__(self, src: Module, tgt: Module, mats: dict):
        self.src = src
        self.tgt = tgt
        p = src.alg.p
        self.mats = {v: la.reduce(mats[v], p).reshape(tgt.dim_at(v), src.dim_at(v)) for v in src.alg.vertices}

    def is_module_map(self) -> bool:
        p = self.src.alg.p
        for a in self.src.alg.arrows:
            lhs = la.matmul(self.mats[a.tgt], self.src.maps[a.name], p)
            rhs = la.matmul(self.tgt.maps[a.name], self.mats[a.src], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.mats.values())

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self ∘ first."""
        p = self.src.alg.p
        return ModuleMap(first.src, self.tgt, {v: la.matmul(self.mats[v], first.mats[v], p) for v in self.mats})

    def is_iso(self) -> bool:
        p = self.src.alg.p
        return all(la.is_invertible(m, p) for m in self.mats.values())

    def is_surjective(self) -> bool:
        p = self.src.alg.p
        return all(la.rank(m, p) == m.shape[0] for m in self.mats.values())

    def is_injective(self) -> bool:
        p = self.src.alg.p
        return all(la.rank(m, p) == m.shape[1] for m in self.mats.values())

    def image_bases(self) -> dict:
        p = self.src.alg.p
        return {v: la.colspace(m, p) for v, m in self.mats.items()}

    def kernel_bases(self) -> dict:
        p = self.src.alg.p
        return {v: la.nullspace(m, p) if m.shape[1] else la.zeros(0, 0) for v, m in self.mats.items()}


# -- constructions ---------------------------------------------------------

def zero_module(alg: Algebra) -> Module:
    return Module(alg, [0] * alg.n, name="0")


def identity(M: Module) -> ModuleMap:
    return ModuleMap(M, M, {v: la.eye(M.dim_at(v)) for v in M.alg.vertices})


def direct_sum(mods: list[Module]) -> Module:
    alg = mods[0].alg if mods else None
    if alg is None:
        raise ValueError("direct_sum of nothing needs an algebra")
    dims = [sum(m.dims[i] for m in mods) for i in range(alg.n)]
    maps = {a.name: la.block_diag([m.maps[a.name] for m in mods]) for a in alg.arrows}
    return Module(alg, dims, maps)


def _normalise_bases(M: Module, bases: dict) -> dict:
    out = {}
    for v in M.alg.vertices:
        b = bases.get(v)
        d = M.dim_at(v)
        if b is None or b.size == 0:
            out[v] = la.zeros(d, 0)
        else:
            out[v] = la.colspace(b.reshape(d, -1), M.alg.p)
    return out


def submodule(M: Module, bases: dict) -> tuple[Module, ModuleMap]:
    """The submodule with the given per-vertex bases (assumed arrow-stable)."""
    p = M.alg.p
    bases = _normalise_bases(M, bases)
    linv = {v: la.left_inverse(b, p) for v, b in bases.items()}
    maps = {}
    for a in M.alg.arrows:
        maps[a.name] = la.matmul(linv[a.tgt], la.matmul(M.maps[a.name], bases[a.src], p), p)
    K = Module(M.alg, [bases[v].shape[1] for v in M.alg.vertices], maps)
    return K, ModuleMap(K, M, bases)


def quotient(M: Module, bases: dict) -> tuple[Module, ModuleMap]:
    """M modulo the arrow-stable subspaces with the given per-vertex bases."""
    p = M.alg.p
    bases = _normalise_bases(M, bases)
    comp, proj = {}, {}
    for v, b in bases.items():
        c = la.complement(b, p)
        full = np.hstack([b, c])
        finv = la.inverse(full, p)
        comp[v] = c
        proj[v] = finv[b.shape[1]:]
    maps = {a.name: la.matmul(proj[a.tgt], la.matmul(M.maps[a.name], comp[a.src], p), p) for a in M.alg.arrows}
    Q = Module(M.alg, [comp[v].shape[1] for v in M.alg.vertices], maps)
    return Q, ModuleMap(M, Q, proj)


def generated_submodule(M: Module, gens: dict) -> dict:
    """Per-vertex bases of the smallest submodule containing the given vectors."""
    p = M.alg.p
    spaces = _normalise_bases(M, gens)
    changed = True
    while changed:
        changed = False
        for a in M.alg.arrows:
            s = spaces[a.src]
            if s.shape[1] == 0:
                continue
            img = la.matmul(M.maps[a.name], s, p)
            cur = spaces[a.tgt]
            new = la.colspace(np.hstack([cur, img]), p)
            if new.shape[1] > cur.shape[1]:
                spaces[a.tgt] = new
                changed = True
    return spaces


def sum_of_bases(M: Module, many: list[dict]) -> dict:
    p = M.alg.p
    out = {}
    for v in M.alg.vertices:
        cols = [b[v] for b in many if b[v].size]
        out[v] = la.colspace(np.hstack(cols), p) if cols else la.zeros(M.dim_at(v), 0)
    return out


def intersect_bases(M: Module, many: list[dict]) -> dict:
    p = M.alg.p
    out = {}
    for v in M.alg.vertices:
        cur = la.eye(M.dim_at(v))
        for b in many:
            cur = la.intersect(cur, b[v], p) if cur.shape[1] else cur
        out[v] = cur
    return out


def dual(M: Module, op: Algebra) -> Module:
    """The vector-space dual, a module over the opposite algebra."""
    return Module(op, M.dims, {a: m.T.copy() for a, m in M.maps.items()})


def dual_map(f: ModuleMap, op: Algebra) -> ModuleMap:
    return ModuleMap(dual(f.tgt, op), dual(f.src, op), {v: m.T.copy() for v, m in f.mats.items()})


def opposite(alg: Algebra) -> Algebra:
    op = getattr(alg, "_opposite", None)
    if op is None:
        op = alg.opposite()
        alg._opposite = op
        op._opposite = alg
    return op


# -- standard modules ------------------------------------------------------

def projective(alg: Algebra, i: int) -> Module:
    idx = {j: {pth.arrows: k for k, pth in enumerate(alg.paths(i, j))} for j in alg.vertices}
    dims = [len(alg.paths(i, j)) for j in alg.vertices]
    maps = {}
    for a in alg.arrows:
        m = la.zeros(dims[alg.vindex[a.tgt]], dims[alg.vindex[a.src]])
        for q, k in idx[a.src].items():
            t = idx[a.tgt].get(q + (a.name,))
            if t is not None:
                m[t, k] = 1
        maps[a.name] = m
    return Module(alg, dims, maps, name=f"P{i}")


def injective(alg: Algebra, i: int) -> Module:
    idx = {j: {pth.arrows: k for k, pth in enumerate(alg.paths(j, i))} for j in alg.vertices}
    dims = [len(alg.paths(j, i)) for j in alg.vertices]
    maps = {}
    for a in alg.arrows:
        m = la.zeros(dims[alg.vindex[a.tgt]], dims[alg.vindex[a.src]])
        for q, k in idx[a.src].items():
            if q and q[0] == a.name:
                t = idx[a.tgt].get(q[1:])
                if t is not None:
                    m[t, k] = 1
        maps[a.name] = m
    return Module(alg, dims, maps, name=f"I{i}")


def simple(alg: Algebra, i: int) -> Module:
    return Module(alg, [1 if v == i else 0 for v in alg.vertices], name=f"S{i}")


def standard_module(alg: Algebra, kind: str, vertex: int) -> Module:
    kind = kind.lower()
    if vertex not in alg.vertices:
        raise ValueError(f"vertex {vertex} is not declared")
    if kind.startswith("p"):
        return projective(alg, vertex)
    if kind.startswith("i"):
        return injective(alg, vertex)
    if kind.startswith("s"):
        return simple(alg, vertex)
    raise ValueError(f"unknown standard module kind {kind!r}")


# -- Hom and friends -------------------------------------------------------

def _hom_system(M: Module, N: Module):
    alg = M.alg
    offs, total = {}, 0
    for v in alg.vertices:
        offs[v] = total
        total += N.dim_at(v) * M.dim_at(v)
    blocks = []
    for a in alg.arrows:
        ms, mt = M.dim_at(a.src), M.dim_at(a.tgt)
        ns, nt = N.dim_at(a.src), N.dim_at(a.tgt)
        if nt * ms == 0:
            continue
        row = la.zeros(nt * ms, total)
        if nt * mt:
            # phi_t @ M_a, row-major vec
            row[:, offs[a.tgt]:offs[a.tgt] + nt * mt] += np.kron(la.eye(nt), M.maps[a.name].T)
        if ns * ms:
            row[:, offs[a.src]:offs[a.src] + ns * ms] -= np.kron(N.maps[a.name], la.eye(ms))
        blocks.append(row)
    sysm = np.vstack(blocks) if blocks else la.zeros(0, total)
    return offs, total, np.mod(sysm, alg.p)


def _hom_cache(alg: Algebra) -> dict:
    c = getattr(alg, "_hom_cache", None)
    if c is None:
        c = {}
        alg._hom_cache = c
    return c


def hom_basis(M: Module, N: Module) -> list[ModuleMap]:
    alg = M.alg
    cache = _hom_cache(alg)
    k = (M.key(), N.key())
    ns = cache.get(k)
    offs, total, sysm = None, None, None
    if ns is None:
        offs, total, sysm = _hom_system(M, N)
        ns = la.nullspace(sysm, alg.p) if total else la.zeros(0, 0)
        cache[k] = ns
    if ns.shape[1] == 0:
        return []
    if offs is None:
        offs, t = {}, 0
        for v in alg.vertices:
            offs[v] = t
            t += N.dim_at(v) * M.dim_at(v)
    out = []
    for j in range(ns.shape[1]):
        col = ns[:, j]
        mats = {v: col[offs[v]:offs[v] + N.dim_at(v) * M.dim_at(v)].reshape(N.dim_at(v), M.dim_at(v)) for v in alg.vertices}
        out.append(ModuleMap(M, N, mats))
    return out


def hom_dim(M: Module, N: Module) -> int:
    if M.is_zero() or N.is_zero():
        return 0
    alg = M.alg
    cache = _hom_cache(alg)
    ns = cache.get((M.key(), N.key()))
    if ns is None:
        offs, total, sysm = _hom_system(M, N)
        ns = la.nullspace(sysm, alg.p) if total else la.zeros(0, 0)
        cache[(M.key(), N.key())] = ns
    return ns.shape[1]


def top_bases(M: Module) -> dict:
    """Per-vertex bases of a complement of rad M (top generators)."""
    p = M.alg.p
    out = {}
    rad = radical_bases(M)
    for v in M.alg.vertices:
        out[v] = la.complement(rad[v], p) if M.dim_at(v) else la.zeros(0, 0)
    return out


def radical_bases(M: Module) -> dict:
    p = M.alg.p
    rad = {}
    for v in M.alg.vertices:
        cols = [M.maps[a.name] for a in M.alg.in_arrows[v] if M.maps[a.name].size]
        rad[v] = la.colspace(np.hstack(cols), p) if cols else la.zeros(M.dim_at(v), 0)
    return rad


def socle_bases(M: Module) -> dict:
    p = M.alg.p
    out = {}
    for v in M.alg.vertices:
        rows = [M.maps[a.name] for a in M.alg.out_arrows[v] if M.maps[a.name].size]
        d = M.dim_at(v)
        out[v] = la.nullspace(np.vstack(rows), p) if rows and d else la.eye(d)
    return out


def top_dims(M: Module) -> tuple[int, ...]:
    tb = top_bases(M)
    return tuple(tb[v].shape[1] for v in M.alg.vertices)


# -- projective presentations ----------------------------------------------

class ProjSum:
    """A direct sum of indecomposable projectives P_{v_1} ⊕ ... ⊕ P_{v_k}."""

    def __init__(self, alg: Algebra, verts: list[int], injective_kind: bool = False):
        self.alg = alg
        self.verts = list(verts)
        self.injective_kind = injective_kind
        build = injective if injective_kind else projective
        parts = [build(alg, v) for v in self.verts]
        self.module = direct_sum(parts) if parts else zero_module(alg)
        # offsets[k][x]: start of summand k inside the vertex-x space
        self.offsets = []
        run = {x: 0 for x in alg.vertices}
        for P in parts:
            self.offsets.append(dict(run))
            for x in alg.vertices:
                run[x] += P.dim_at(x)

    def block(self, k: int, x: int) -> slice:
        v = self.verts[k]
        n = len(self.alg.paths(x, v)) if self.injective_kind else len(self.alg.paths(v, x))
        o = self.offsets[k][x]
        return slice(o, o + n)


def proj_sum_map(src: ProjSum, tgt: ProjSum, coeffs: dict) -> ModuleMap:
    """Map ⊕P_{src} → ⊕P_{tgt}; coeffs[(k, l)] is a vector over paths tgt[k] → src[l]."""
    alg = src.alg
    mats = {x: la.zeros(tgt.module.dim_at(x), src.module.dim_at(x)) for x in alg.vertices}
    for (k, l), c in coeffs.items():
        i, j = tgt.verts[k], src.verts[l]
        qs = alg.paths(i, j)
        for qi, q in enumerate(qs):
            if c[qi] == 0:
                continue
            for x in alg.vertices:
                tgt_idx = {pth.arrows: n for n, pth in enumerate(alg.paths(i, x))}
                sb, tb = src.block(l, x), tgt.block(k, x)
                for n, pth in enumerate(alg.paths(j, x)):
                    t = tgt_idx.get(q.arrows + pth.arrows)
                    if t is not None:
                        mats[x][tb.start + t, sb.start + n] += c[qi]
    return ModuleMap(src.module, tgt.module, mats)


def nakayama_map(src: ProjSum, tgt: ProjSum, coeffs: dict) -> tuple[ProjSum, ProjSum, ModuleMap]:
    """ν applied to the map described by ``coeffs`` (see proj_sum_map)."""
    alg = src.alg
    isrc, itgt = ProjSum(alg, src.verts, True), ProjSum(alg, tgt.verts, True)
    mats = {x: la.zeros(itgt.module.dim_at(x), isrc.module.dim_at(x)) for x in alg.vertices}
    for (k, l), c in coeffs.items():
        i, j = tgt.verts[k], src.verts[l]
        for qi, q in enumerate(alg.paths(i, j)):
            if c[qi] == 0:
                continue
            nq = len(q.arrows)
            for x in alg.vertices:
                s_idx = {pth.arrows: n for n, pth in enumerate(alg.paths(x, i))}
                sb, tb = isrc.block(l, x), itgt.block(k, x)
                for n, r in enumerate(alg.paths(x, j)):
                    # r* ↦ s* whenever s.q = r
                    if nq and r.arrows[len(r.arrows) - nq:] != q.arrows:
                        continue
                    if len(r.arrows) < nq:
                        continue
                    s = r.arrows[:len(r.arrows) - nq]
                    t = s_idx.get(s)
                    if t is not None:
                        mats[x][tb.start + t, sb.start + n] += c[qi]
    return isrc, itgt, ModuleMap(isrc.module, itgt.module, mats)


def _cover(M: Module) -> tuple[ProjSum, ModuleMap, list]:
    """Projective cover of M: (P0, π, generators as (vertex, vector))."""
    alg, p = M.alg, M.alg.p
    tb = top_bases(M)
    gens = [(v, tb[v][:, j]) for v in alg.vertices for j in range(tb[v].shape[1])]
    P0 = ProjSum(alg, [v for v, _ in gens])
    mats = {x: la.zeros(M.dim_at(x), P0.module.dim_at(x)) for x in alg.vertices}
    for k, (v, vec) in enumerate(gens):
        for x in alg.vertices:
            blk = P0.block(k, x)
            for n, pth in enumerate(alg.paths(v, x)):
                img = vec if not pth.arrows else la.matmul(M.path_matrix(pth.arrows), vec.reshape(-1, 1), p)[:, 0]
                mats[x][:, blk.start + n] = img
    return P0, ModuleMap(P0.module, M, mats), gens


class Presentation:
    def __init__(self, P1: ProjSum, P0: ProjSum, coeffs: dict, f: ModuleMap, pi: ModuleMap,
                 kernel: ModuleMap):
        self.P1, self.P0, self.coeffs, self.f, self.pi = P1, P0, coeffs, f, pi
        self.kernel = kernel  # inclusion ΩM → P0


def min_presentation(M: Module) -> Presentation:
    alg = M.alg
    P0, pi, _ = _cover(M)
    K, kin = submodule(P0.module, pi.kernel_bases())
    _, _, kgens = _cover(K) if not K.is_zero() else (None, None, [])
    P1 = ProjSum(alg, [w for w, _ in kgens])
    coeffs = {}
    for l, (w, vec) in enumerate(kgens):
        y = la.matmul(kin.mats[w], vec.reshape(-1, 1), alg.p)[:, 0]
        for k in range(len(P0.verts)):
            blk = P0.block(k, w)
            c = y[blk]
            if c.any():
                coeffs[(k, l)] = c.copy()
    f = proj_sum_map(P1, P0, coeffs)
    return Presentation(P1, P0, coeffs, f, pi, kin)


# -- Ext --------------------------------------------------------------------

def ext1_dim(M: Module, N: Module) -> int:
    """dim Ext^1(M, N) = dim Hom(ΩM, N) - dim Hom(P0, N) + dim Hom(M, N)."""
    if M.is_zero() or N.is_zero():
        return 0
    pres = min_presentation(M)
    omega = pres.kernel.src
    if omega.is_zero():
        return 0
    return hom_dim(omega, N) - hom_dim(pres.P0.module, N) + hom_dim(M, N)


# -- decomposition and isomorphism ----------------------------------------

def set_seed(seed: int) -> None:
    global BASE_SEED
    BASE_SEED = int(seed)


def _seed(M: Module, salt: int = 0) -> int:
    h = hashlib.sha256(M.key() + salt.to_bytes(4, "little") + BASE_SEED.to_bytes(8, "little", signed=True))
    return int.from_bytes(h.digest()[:8], "little")


def _charpoly(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial coefficients (highest first), for n < p."""
    n = a.shape[0]
    coeffs = [1]
    mk = la.zeros(n, n)
    for k in range(1, n + 1):
        mk = np.mod(la.matmul(a, mk, p) + coeffs[-1] * la.eye(n), p)
        ck = (-int(np.trace(la.matmul(a, mk, p))) * la.inv_scalar(k, p)) % p
        coeffs.append(ck)
    return coeffs


def _eigenvalues(a: np.ndarray, p: int) -> set[int]:
    n = a.shape[0]
    if n == 0:
        return set()
    if n < p:
        cs = _charpoly(a, p)
        xs = np.arange(p, dtype=la.DTYPE)
        val = np.zeros(p, dtype=la.DTYPE)
        for c in cs:
            val = np.mod(val * xs + c, p)
        return {int(x) for x in np.nonzero(val == 0)[0]}
    return {lam for lam in range(p) if la.rank(np.mod(a - lam * la.eye(n), p), p) < n}


def _power(e: dict, n: int, p: int) -> dict:
    out = {}
    for v, m in e.items():
        r = la.eye(m.shape[0])
        b = m
        k = n
        while k:
            if k & 1:
                r = la.matmul(r, b, p)
            b = la.matmul(b, b, p)
            k >>= 1
        out[v] = r
    return out


def _fitting_split(M: Module) -> tuple[dict, dict] | None:
    alg, p = M.alg, M.alg.p
    basis = hom_basis(M, M)
    if len(basis) <= 1:
        return None
    rng = np.random.default_rng(_seed(M))
    n = M.total
    for _ in range(FITTING_SAMPLES):
        c = rng.integers(0, p, size=len(basis))
        e = {v: np.mod(sum(int(ci) * b.mats[v] for ci, b in zip(c, basis)), p) for v in alg.vertices}
        eig = set()
        for v, m in e.items():
            eig |= _eigenvalues(m, p)
        for lam in sorted(eig):
            shifted = {v: np.mod(m - lam * la.eye(m.shape[0]), p) for v, m in e.items()}
            f = _power(shifted, n, p)
            if not any(m.any() for m in f.values()):
                continue
            ker = {v: la.nullspace(m, p) if m.shape[1] else la.zeros(0, 0) for v, m in f.items()}
            if all(k.shape[1] == 0 for k in ker.values()):
                continue
            img = {v: la.colspace(m, p) for v, m in f.items()}
            return ker, img
    return None


def decompose(M: Module) -> list[Module]:
    """Indecomposable summands of M, with repetition."""
    if M.is_zero():
        return []
    split = _fitting_split(M)
    if split is None:
        return [M]
    out = []
    for bases in split:
        S, _ = submodule(M, bases)
        out.extend(decompose(S))
    return out


def decompose_counted(M: Module) -> list[tuple[Module, int]]:
    """Krull-Schmidt decomposition as (summand, multiplicity), one entry per iso class."""
    groups: list[list] = []
    for S in decompose(M):
        for g in groups:
            if is_iso(g[0], S):
                g[1] += 1
                break
        else:
            groups.append([S, 1])
    return [(S, k) for S, k in groups]


def is_indecomposable(M: Module) -> bool:
    return not M.is_zero() and _fitting_split(M) is None


def is_iso(M: Module, N: Module) -> bool:
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    if M.key() == N.key():
        return True
    h = hom_dim(M, N)
    if h == 0 or h != hom_dim(N, M) or h != hom_dim(M, M):
        return False
    basis = hom_basis(M, N)
    p = M.alg.p
    rng = np.random.default_rng(_seed(M) ^ _seed(N, 1))
    for _ in range(ISO_SAMPLES):
        c = rng.integers(0, p, size=len(basis))
        ok = True
        for v in M.alg.vertices:
            m = np.mod(sum(int(ci) * b.mats[v] for ci, b in zip(c, basis)), p)
            if m.size and not la.is_invertible(m, p):
                ok = False
                break
        if ok:
            return True
    return False


# -- trace, reject, torsion-free parts -------------------------------------

def trace_bases(M: Module, X: Module) -> dict:
    maps = hom_basis(M, X) if not (M.is_zero() or X.is_zero()) else []
    if not maps:
        return {v: la.zeros(X.dim_at(v), 0) for v in X.alg.vertices}
    return sum_of_bases(X, [f.image_bases() for f in maps])


def trace(M: Module, X: Module) -> tuple[Module, ModuleMap]:
    return submodule(X, trace_bases(M, X))


def tf_part(M: Module, X: Module) -> Module:
    """f_M(X) = X / trace(M, X)."""
    return quotient(X, trace_bases(M, X))[0]


def in_gen(M: Module, X: Module) -> bool:
    tb = trace_bases(M, X)
    return all(tb[v].shape[1] == X.dim_at(v) for v in X.alg.vertices)


def reject_bases(N: Module, X: Module) -> dict:
    maps = hom_basis(X, N) if not (N.is_zero() or X.is_zero()) else []
    if not maps:
        return {v: la.eye(X.dim_at(v)) for v in X.alg.vertices}
    p = X.alg.p
    out = {}
    for v in X.alg.vertices:
        d = X.dim_at(v)
        if d == 0:
            out[v] = la.zeros(0, 0)
            continue
        stacked = np.vstack([f.mats[v] for f in maps])
        out[v] = la.nullspace(stacked, p) if stacked.shape[0] else la.eye(d)
    return out


def reject(N: Module, X: Module) -> tuple[Module, ModuleMap]:
    """t_N(X): the intersection of kernels of all maps X → N."""
    return submodule(X, reject_bases(N, X))


def in_cogen(N: Module, X: Module) -> bool:
    rb = reject_bases(N, X)
    return all(rb[v].shape[1] == 0 for v in X.alg.vertices)


def endo_radical(M: Module) -> list[ModuleMap]:
    """A spanning set of rad End(M) for indecomposable M with End(M)/rad = F_p."""
    p = M.alg.p
    d = M.total
    out = []
    for b in hom_basis(M, M):
        tr = sum(int(np.trace(m)) for m in b.mats.values()) % p
        lam = tr * la.inv_scalar(d, p) % p
        n = ModuleMap(M, M, {v: np.mod(m - lam * la.eye(m.shape[0]), p) for v, m in b.mats.items()})
        if any(x.any() for x in _power(n.mats, d, p).values()):
            raise ValueError("endomorphism ring is not local with residue field F_p")
        if not n.is_zero():
            out.append(n)
    return out


def beta(M: Module) -> Module:
    """M modulo the images of all non-invertible endomorphisms."""
    rad = endo_radical(M)
    if not rad:
        return M
    return quotient(M, sum_of_bases(M, [f.image_bases() for f in rad]))[0]


def is_brick(M: Module) -> bool:
    return hom_dim(M, M) == 1


# -- AR translate -------------------------------------------------------------

def _is_projective_indec(M: Module) -> bool:
    td = top_dims(M)
    if sum(td) != 1:
        return False
    v = M.alg.vertices[td.index(1)]
    return M.dims == tuple(len(M.alg.paths(v, x)) for x in M.alg.vertices)


def tau(M: Module) -> Module:
    """τM as a (possibly decomposable) module; projective summands contribute 0."""
    alg = M.alg
    parts = [X for X in decompose(M) if not _is_projective_indec(X)]
    if not parts:
        return zero_module(alg)
    N = direct_sum(parts)
    pres = min_presentation(N)
    _, _, nf = nakayama_map(pres.P1, pres.P0, pres.coeffs)
    T, _ = submodule(nf.src, nf.kernel_bases())
    return T


def tau_inv(N: Module) -> Module:
    op = opposite(N.alg)
    T = tau(dual(N, op))
    return dual(T, N.alg)


def nakayama_of_projective_sum(alg: Algebra, verts: list[int]) -> Module:
    return ProjSum(alg, verts, True).module

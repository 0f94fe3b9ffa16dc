"""Torsion pairs over an inventory of indecomposables.

Everything here is a computation on sets of member names.  An ``Engine`` owns
the inventory and caches Hom/Ext dimensions and Gen/Cogen tests between
members; a ``Context`` is a subset of members closed under the structure of a
wide subcategory (the whole module category, or a perpendicular category built
in ``perpcat``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from . import modules as mr
from .inventory import Inventory, InventoryError
from .modules import Module


class ContextError(ValueError):
    pass


# -- objects of the stable category -----------------------------------------

@dataclass(frozen=True, order=True)
class Obj:
    """An indecomposable module (shift 0), P[1] (shift 1) or I[-1] (shift -1)."""

    name: str
    shift: int = 0

    def __str__(self) -> str:
        if self.shift == 0:
            return self.name
        return f"{self.name}[{self.shift}]"

    @property
    def is_module(self) -> bool:
        return self.shift == 0

    def stripped(self) -> "Obj":
        return Obj(self.name, 0)


def parse_obj(token: str) -> Obj:
    token = token.strip()
    for suffix, shift in (("[1]", 1), ("[-1]", -1)):
        if token.endswith(suffix):
            return Obj(token[: -len(suffix)], shift)
    return Obj(token, 0)


def as_objs(items) -> tuple[Obj, ...]:
    out = []
    for x in items:
        out.append(x if isinstance(x, Obj) else parse_obj(x))
    return tuple(out)


def obj_label(objs) -> str:
    objs = list(objs)
    if not objs:
        return "0"
    return "+".join(str(o) for o in objs)


# -- cached member arithmetic ---------------------------------------------------

class Engine:
    def __init__(self, inv: Inventory):
        self.inv = inv
        self.alg = inv.alg
        self._hom: dict = {}
        self._ext: dict = {}
        self._gen: dict = {}
        self._cogen: dict = {}
        self._f: dict = {}
        self._t: dict = {}
        self._sum: dict = {}
        self._hom_tau: dict = {}
        self._proj = None
        self._inj = None
        self.contexts: dict = {}
        self.whole = WholeContext(self)

    @property
    def exact(self) -> bool:
        return self.inv.complete

    def module(self, name: str) -> Module:
        return self.inv[name]

    def sum_module(self, names) -> Module:
        key = tuple(sorted(set(names)))
        if key not in self._sum:
            mods = [self.inv[n] for n in key]
            self._sum[key] = mr.direct_sum(mods) if mods else mr.zero_module(self.alg)
        return self._sum[key]

    def order(self, names) -> list[str]:
        idx = {n: i for i, n in enumerate(self.inv.names)}
        return sorted(set(names), key=idx.__getitem__)

    def hom(self, x: str, y: str) -> int:
        k = (x, y)
        if k not in self._hom:
            self._hom[k] = mr.hom_dim(self.inv[x], self.inv[y])
        return self._hom[k]

    def ext(self, x: str, y: str) -> int:
        k = (x, y)
        if k not in self._ext:
            self._ext[k] = mr.ext1_dim(self.inv[x], self.inv[y])
        return self._ext[k]

    def hom_tau(self, x: str, y: str) -> int:
        """dim Hom(x, τy) over the whole category, without naming τy."""
        k = (x, y)
        if k not in self._hom_tau:
            T = self.inv.tau_module(y)
            self._hom_tau[k] = 0 if T.is_zero() else mr.hom_dim(self.inv[x], T)
        return self._hom_tau[k]

    def hom_zero(self, xs, ys) -> bool:
        return all(self.hom(x, y) == 0 for x in xs for y in ys)

    def ext_zero(self, xs, ys) -> bool:
        return all(self.ext(x, y) == 0 for x in xs for y in ys)

    def gen(self, S, x: str) -> bool:
        """x ∈ Gen(⊕S)."""
        S = frozenset(S)
        if x in S:
            return True
        k = (S, x)
        if k not in self._gen:
            if not S or all(self.hom(s, x) == 0 for s in S):
                self._gen[k] = False
            else:
                self._gen[k] = mr.in_gen(self.sum_module(S), self.inv[x])
        return self._gen[k]

    def cogen(self, S, x: str) -> bool:
        """x ∈ Cogen(⊕S)."""
        S = frozenset(S)
        if x in S:
            return True
        k = (S, x)
        if k not in self._cogen:
            if not S or all(self.hom(x, s) == 0 for s in S):
                self._cogen[k] = False
            else:
                self._cogen[k] = mr.in_cogen(self.sum_module(S), self.inv[x])
        return self._cogen[k]

    def f(self, S, x: str) -> list[str]:
        """Summands of f_S(x) = x / trace(⊕S, x)."""
        S = frozenset(S)
        k = (S, x)
        if k not in self._f:
            if not S or all(self.hom(s, x) == 0 for s in S):
                self._f[k] = [x]
            else:
                self._f[k] = self.inv.identify(mr.tf_part(self.sum_module(S), self.inv[x]))
        return self._f[k]

    def t(self, S, x: str) -> list[str]:
        """Summands of t_S(x), the intersection of kernels of maps x → ⊕S."""
        S = frozenset(S)
        k = (S, x)
        if k not in self._t:
            if not S or all(self.hom(x, s) == 0 for s in S):
                self._t[k] = [x]
            else:
                self._t[k] = self.inv.identify(mr.reject(self.sum_module(S), self.inv[x])[0])
        return self._t[k]

    def projectives(self) -> list[str]:
        if self._proj is None:
            out = []
            for v in self.alg.vertices:
                name = self.inv.lookup(mr.projective(self.alg, v))
                if name is None:
                    raise InventoryError(f"projective P{v} is missing from the inventory")
                out.append(name)
            self._proj = out
        return self._proj

    def injectives(self) -> list[str]:
        if self._inj is None:
            out = []
            for v in self.alg.vertices:
                name = self.inv.lookup(mr.injective(self.alg, v))
                if name is None:
                    raise InventoryError(f"injective I{v} is missing from the inventory")
                out.append(name)
            self._inj = out
        return self._inj


# -- contexts -----------------------------------------------------------------

class Context:
    """A wide subcategory, given by its indecomposable members."""

    def __init__(self, engine: Engine, members, label: str, parent: "Context | None" = None,
                 defining: tuple = ()):
        self.engine = engine
        self.members = tuple(engine.order(members))
        self.member_set = frozenset(self.members)
        self.label = label
        self.parent = parent
        self.defining = defining
        self._cache: dict = {}

    def __repr__(self):
        return f"Context({self.label}, {len(self.members)} members)"

    def __contains__(self, name) -> bool:
        return name in self.member_set

    @property
    def exact(self) -> bool:
        return self.engine.exact

    @property
    def completeness(self) -> str:
        return "exact" if self.exact else "bound-relative"

    def require(self, names) -> None:
        for n in names:
            if n not in self.member_set:
                raise ContextError(f"{n} is not a member of {self.label}")

    def memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # overridden by perpendicular categories
    def rel_projectives(self) -> list[str]:
        raise NotImplementedError

    def rel_injectives(self) -> list[str]:
        raise NotImplementedError

    def tau(self, x: str) -> list[str]:
        raise NotImplementedError

    def tau_inv(self, x: str) -> list[str]:
        raise NotImplementedError

    def hom_tau_zero(self, xs, ys) -> bool:
        """Hom(x, τ_ctx y) = 0 for all x in xs, y in ys."""
        eng = self.engine
        return all(eng.hom_zero(xs, self.tau(y)) for y in ys)

    def perp_tau(self, names) -> list[str]:
        """Members of ⊥τ_ctx(names)."""
        names = list(names)
        return [x for x in self.members if self.hom_tau_zero([x], names)]

    @property
    def rank(self) -> int:
        return len(self.rel_projectives())

    def is_rel_projective(self, x: str) -> bool:
        return x in self.rel_projectives()

    def is_rel_injective(self, x: str) -> bool:
        return x in self.rel_injectives()

    def rel_simples(self) -> list[str]:
        """Members of length one: exactly one relative projective maps to them, once."""
        def build():
            eng = self.engine
            projs = self.rel_projectives()
            return [x for x in self.members if sum(eng.hom(pj, x) for pj in projs) == 1]
        return self.memo("simples", build)

    def rel_nu(self, pname: str) -> str:
        """The relative injective whose socle matches the top of a relative projective."""
        eng = self.engine
        if pname not in self.rel_projectives():
            raise ContextError(f"{pname} is not relative projective in {self.label}")
        simples = [s for s in self.rel_simples() if eng.hom(pname, s)]
        cands = [i for i in self.rel_injectives() if simples and eng.hom(simples[0], i)]
        if len(simples) != 1 or len(cands) != 1:
            raise ContextError(f"cannot match {pname} with a relative injective in {self.label}")
        return cands[0]

    def rel_nu_inv(self, iname: str) -> str:
        eng = self.engine
        if iname not in self.rel_injectives():
            raise ContextError(f"{iname} is not relative injective in {self.label}")
        simples = [s for s in self.rel_simples() if eng.hom(s, iname)]
        cands = [q for q in self.rel_projectives() if simples and eng.hom(q, simples[0])]
        if len(simples) != 1 or len(cands) != 1:
            raise ContextError(f"cannot match {iname} with a relative projective in {self.label}")
        return cands[0]

    def is_sincere(self) -> bool:
        alg = self.engine.alg
        return all(any(self.engine.module(x).dim_at(v) for x in self.members) for v in alg.vertices)


class WholeContext(Context):
    def __init__(self, engine: Engine):
        super().__init__(engine, engine.inv.names, "mod", None, ())

    def rel_projectives(self) -> list[str]:
        return self.engine.projectives()

    def rel_injectives(self) -> list[str]:
        return self.engine.injectives()

    def tau(self, x: str) -> list[str]:
        return self.engine.inv.tau(x)

    def tau_inv(self, x: str) -> list[str]:
        return self.engine.inv.tau_inv(x)

    def hom_tau_zero(self, xs, ys) -> bool:
        eng = self.engine
        return all(eng.hom_tau(x, y) == 0 for x in xs for y in ys)


def whole_context(inv: Inventory) -> Context:
    return Engine(inv).whole


# -- torsion classes ---------------------------------------------------------

@dataclass
class TorsionData:
    context: Context
    members: tuple[str, ...]
    kind: str  # "torsion" or "torsion-free"
    generators: tuple[str, ...] = ()
    note: str = field(default="")

    def __contains__(self, name) -> bool:
        return name in self.members

    def __len__(self):
        return len(self.members)


def _names(items) -> list[str]:
    return [x.name if isinstance(x, Obj) else x for x in items]


def perp_right(ctx: Context, S) -> list[str]:
    """S^⊥ within the context."""
    S = _names(S)
    return [y for y in ctx.members if ctx.engine.hom_zero(S, [y])]


def perp_left(ctx: Context, S) -> list[str]:
    """⊥S within the context."""
    S = _names(S)
    return [x for x in ctx.members if ctx.engine.hom_zero([x], S)]


def gen_members(ctx: Context, S) -> TorsionData:
    S = _names(S)
    return TorsionData(ctx, tuple(x for x in ctx.members if ctx.engine.gen(S, x)), "torsion", tuple(S))


def cogen_members(ctx: Context, S) -> TorsionData:
    S = _names(S)
    return TorsionData(ctx, tuple(x for x in ctx.members if ctx.engine.cogen(S, x)), "torsion-free", tuple(S))


def gen_contains(ctx: Context, S, x: str) -> bool:
    return x in ctx and ctx.engine.gen(_names(S), x)


def cogen_contains(ctx: Context, S, x: str) -> bool:
    return x in ctx and ctx.engine.cogen(_names(S), x)


def filt_gen(ctx: Context, S) -> TorsionData:
    """Smallest torsion class containing S, as ⊥(S^⊥) over the members."""
    S = _names(S)
    right = perp_right(ctx, S)
    return TorsionData(ctx, tuple(perp_left(ctx, right)), "torsion", tuple(S))


def filt_cogen(ctx: Context, S) -> TorsionData:
    S = _names(S)
    left = perp_left(ctx, S)
    return TorsionData(ctx, tuple(perp_right(ctx, left)), "torsion-free", tuple(S))


def torsion_class(ctx: Context, members, generators=()) -> TorsionData:
    return TorsionData(ctx, tuple(ctx.engine.order(members)), "torsion", tuple(generators))


def ext_projectives(T: TorsionData) -> list[str]:
    eng = T.context.engine
    return [x for x in T.members if all(eng.ext(x, z) == 0 for z in T.members)]


def ext_injectives(F: TorsionData) -> list[str]:
    eng = F.context.engine
    return [x for x in F.members if all(eng.ext(z, x) == 0 for z in F.members)]


def split_ext_projectives(T: TorsionData) -> list[str]:
    eng = T.context.engine
    P = ext_projectives(T)
    return [x for x in P if not eng.gen([y for y in P if y != x], x)]


def nonsplit_ext_projectives(T: TorsionData) -> list[str]:
    s = set(split_ext_projectives(T))
    return [x for x in ext_projectives(T) if x not in s]


def split_ext_injectives(F: TorsionData) -> list[str]:
    eng = F.context.engine
    injs = ext_injectives(F)
    return [x for x in injs if not eng.cogen([y for y in injs if y != x], x)]


def nonsplit_ext_injectives(F: TorsionData) -> list[str]:
    s = set(split_ext_injectives(F))
    return [x for x in ext_injectives(F) if x not in s]


# -- τ-rigidity ------------------------------------------------------------------

def tau_of_set(ctx: Context, names) -> list[str]:
    out: list[str] = []
    for x in _names(names):
        out.extend(ctx.tau(x))
    return ctx.engine.order(out)


def is_tau_rigid(ctx: Context, M) -> bool:
    M = _names(M)
    ctx.require(M)
    return ctx.hom_tau_zero(M, M)


def is_support_tau_rigid(ctx: Context, U) -> bool:
    U = as_objs(U)
    mods = [o.name for o in U if o.shift == 0]
    shifted = [o.name for o in U if o.shift == 1]
    if any(o.shift not in (0, 1) for o in U):
        return False
    if len(set(U)) != len(U):
        return False
    if any(q not in ctx.rel_projectives() for q in shifted):
        return False
    return is_tau_rigid(ctx, mods) and ctx.engine.hom_zero(shifted, mods)


def bongartz(ctx: Context, M) -> list[str]:
    M = _names(M)
    if not is_tau_rigid(ctx, M):
        raise ContextError("Bongartz complement needs a τ-rigid module")
    T = torsion_class(ctx, ctx.perp_tau(M))
    return [x for x in ext_projectives(T) if x not in M]


def cobongartz(ctx: Context, M) -> list[str]:
    M = _names(M)
    if not is_tau_rigid(ctx, M):
        raise ContextError("co-Bongartz complement needs a τ-rigid module")
    return [x for x in ext_projectives(gen_members(ctx, M)) if x not in M]


# -- support τ-tilting objects ------------------------------------------------------

def tau_rigid_members(ctx: Context) -> list[str]:
    return ctx.memo("tau_rigid", lambda: [x for x in ctx.members if is_tau_rigid(ctx, [x])])


def compatibility_graph(ctx: Context) -> nx.Graph:
    eng = ctx.engine
    rig = tau_rigid_members(ctx)
    nodes = [Obj(x) for x in rig] + [Obj(q, 1) for q in ctx.rel_projectives()]
    G = nx.Graph()
    G.add_nodes_from(nodes)
    for a, b in itertools.combinations(nodes, 2):
        if a.shift == 0 and b.shift == 0:
            ok = ctx.hom_tau_zero([a.name], [b.name]) and ctx.hom_tau_zero([b.name], [a.name])
        elif a.shift == 1 and b.shift == 1:
            ok = a.name != b.name
        else:
            q, m = (a, b) if a.shift == 1 else (b, a)
            ok = eng.hom(q.name, m.name) == 0
        if ok:
            G.add_edge(a, b)
    return G


def _canon(ctx: Context, objs) -> tuple[Obj, ...]:
    idx = {n: i for i, n in enumerate(ctx.engine.inv.names)}
    return tuple(sorted(objs, key=lambda o: (o.shift != 0, idx[o.name])))


def support_tau_tilting(ctx: Context) -> list[tuple[Obj, ...]]:
    def build():
        G = compatibility_graph(ctx)
        n = ctx.rank
        found = {_canon(ctx, c) for c in nx.find_cliques(G) if len(c) == n}
        return sorted(found, key=lambda u: [(o.shift != 0, ctx.engine.inv.index(o.name)) for o in u])
    return ctx.memo("sttilt", build)


def tau_tilting_modules(ctx: Context) -> list[tuple[str, ...]]:
    return [tuple(o.name for o in u) for u in support_tau_tilting(ctx) if all(o.shift == 0 for o in u)]


def module_part(U) -> list[str]:
    return [o.name for o in as_objs(U) if o.shift == 0]


def sttilt_hasse(ctx: Context) -> nx.DiGraph:
    """Oriented exchange graph: N → M when Gen M ⊊ Gen N; edges carry brick labels."""
    def build():
        eng = ctx.engine
        verts = support_tau_tilting(ctx)
        H = nx.DiGraph()
        for u in verts:
            H.add_node(u, label=obj_label(u))
        by_rest: dict = {}
        for u in verts:
            for o in u:
                rest = tuple(x for x in u if x != o)
                by_rest.setdefault(rest, []).append((u, o))
        for rest, group in by_rest.items():
            for (u, ou), (w, ow) in itertools.combinations(group, 2):
                mu, mw = module_part(u), module_part(w)
                if all(eng.gen(mu, x) for x in mw):
                    src, tgt, x = u, w, ou
                elif all(eng.gen(mw, x) for x in mu):
                    src, tgt, x = w, u, ow
                else:
                    continue
                try:
                    label = brick_label(ctx, module_part(tgt), x.name) if x.shift == 0 else ""
                except InventoryError:
                    label = "?"
                H.add_edge(src, tgt, brick=label)
        return H
    return ctx.memo("hasse", build)


def brick_label(ctx: Context, M, x: str) -> str:
    eng = ctx.engine
    parts = eng.f(M, x)
    if len(parts) != 1:
        raise ContextError(f"f_M({x}) is not indecomposable")
    return beta_name(eng, parts[0])


def beta_name(eng: Engine, x: str) -> str:
    B = mr.beta(eng.module(x))
    parts = eng.inv.identify(B)
    if len(parts) != 1:
        raise ContextError(f"β({x}) is not indecomposable")
    return parts[0]


def beta(M: Module) -> Module:
    return mr.beta(M)


# -- functorial finiteness --------------------------------------------------------

class FFKind(str, Enum):
    FF = "FunctoriallyFinite"
    NOT_FF = "NotFFEvidence"
    UNKNOWN = "Unknown"


@dataclass
class FFStatus:
    kind: FFKind
    witness: tuple[str, ...] = ()
    bound: int | None = None

    def __str__(self) -> str:
        if self.kind == FFKind.FF:
            return f"FunctoriallyFinite(witness {obj_label(self.witness)})"
        if self.kind == FFKind.NOT_FF:
            return f"NotFFEvidence(evidence at bound {self.bound})"
        return f"Unknown(bound {self.bound})"


def ff_status(T: TorsionData) -> FFStatus:
    """Three-valued functorial finiteness verdict for a torsion (or torsion-free) class."""
    ctx = T.context
    eng = ctx.engine
    torsion = T.kind == "torsion"
    ends = ext_projectives(T) if torsion else ext_injectives(T)
    covers = (lambda x: eng.gen(ends, x)) if torsion else (lambda x: eng.cogen(ends, x))
    if ctx.exact:
        return FFStatus(FFKind.FF, tuple(ends))
    bound = eng.inv.max_dim
    uncovered = [x for x in T.members if not covers(x)]
    if not uncovered and (not torsion or is_tau_rigid(ctx, ends)):
        return FFStatus(FFKind.FF, tuple(ends), bound)
    smaller = TorsionData(ctx, tuple(x for x in T.members if eng.module(x).total < bound), T.kind)
    ends_small = ext_projectives(smaller) if torsion else ext_injectives(smaller)
    if set(ends_small) == set(ends) and uncovered:
        return FFStatus(FFKind.NOT_FF, tuple(ends), bound)
    return FFStatus(FFKind.UNKNOWN, tuple(ends), bound)


# -- rank two helpers ------------------------------------------------------------------

def serre_generator(ctx: Context, j: int) -> str:
    """The largest quotient of P_j whose composition factors are all S_j."""
    alg = ctx.engine.alg
    if ctx.parent is not None or ctx.rank != 2:
        raise ContextError("Serre generators are defined here for rank-two module categories")
    P = mr.projective(alg, j)
    gens = {v: (mr.la.eye(P.dim_at(v)) if v != j else mr.la.zeros(P.dim_at(v), 0)) for v in alg.vertices}
    Q, _ = mr.quotient(P, mr.generated_submodule(P, gens))
    parts = ctx.engine.inv.identify(Q)
    if len(parts) != 1:
        raise ContextError("Serre generator is not indecomposable")
    return parts[0]

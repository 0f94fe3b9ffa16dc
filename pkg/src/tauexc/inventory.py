"""String combinatorics and the inventory of indecomposable modules."""

from __future__ import annotations

from dataclasses import dataclass

from . import modules as mr
from .algebra import Algebra, BiserialKind, classify_biserial
from .modules import Module

DIRECT, INVERSE = 1, -1


class InventoryError(ValueError):
    pass


class InventoryTooSmall(InventoryError):
    """A computed module has no isomorphic member in a truncated inventory."""


@dataclass(frozen=True)
class StringWord:
    start: int
    letters: tuple[tuple[str, int], ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def label(self) -> str:
        if not self.letters:
            return f"e{self.start}"
        return " ".join(a if d == DIRECT else a + "^-1" for a, d in self.letters)


def letter_start(alg: Algebra, letter) -> int:
    a = alg.arrow_by_name[letter[0]]
    return a.src if letter[1] == DIRECT else a.tgt


def letter_end(alg: Algebra, letter) -> int:
    a = alg.arrow_by_name[letter[0]]
    return a.tgt if letter[1] == DIRECT else a.src


def vertex_walk(alg: Algebra, w: StringWord) -> list[int]:
    walk = [w.start]
    for x in w.letters:
        walk.append(letter_end(alg, x))
    return walk


def end_vertex(alg: Algebra, w: StringWord) -> int:
    return letter_end(alg, w.letters[-1]) if w.letters else w.start


def inverse_word(alg: Algebra, w: StringWord) -> StringWord:
    return StringWord(end_vertex(alg, w), tuple((a, -d) for a, d in reversed(w.letters)))


def _letter_key(alg: Algebra, letter) -> tuple[int, int]:
    idx = [a.name for a in alg.arrows].index(letter[0])
    return (idx, 0 if letter[1] == DIRECT else 1)


def word_key(alg: Algebra, w: StringWord) -> tuple:
    return tuple(_letter_key(alg, x) for x in w.letters)


def is_canonical(alg: Algebra, w: StringWord) -> bool:
    return not w.letters or word_key(alg, w) <= word_key(alg, inverse_word(alg, w))


def can_append(alg: Algebra, letters: tuple, y) -> bool:
    """Whether the walk ``letters`` may be extended by the letter ``y``."""
    if letters:
        x = letters[-1]
        if letter_end(alg, x) != letter_start(alg, y):
            return False
        if x[0] == y[0] and x[1] == -y[1]:
            return False
    run = []
    for x in reversed(letters):
        if x[1] != y[1]:
            break
        run.append(x[0])
    run.reverse()
    if y[1] == DIRECT:
        path = tuple(run) + (y[0],)
        return not any(len(path) >= len(r) and path[-len(r):] == r for r in alg.relations)
    # a run of inverse letters c_1^-1 ... c_m^-1 y^-1 reads the path y.c_m...c_1
    path = (y[0],) + tuple(reversed(run))
    return not any(len(path) >= len(r) and path[:len(r)] == r for r in alg.relations)


def _all_letters(alg: Algebra):
    return [(a.name, d) for a in alg.arrows for d in (DIRECT, INVERSE)]


def all_words(alg: Algebra, max_len: int) -> list[StringWord]:
    """Every valid walk (both orientations) of length ≤ max_len."""
    letters = _all_letters(alg)
    out = [StringWord(v) for v in alg.vertices]
    frontier = []
    for y in letters:
        frontier.append(StringWord(letter_start(alg, y), (y,)))
    length = 1
    while frontier and length <= max_len:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            for y in letters:
                if can_append(alg, w.letters, y):
                    nxt.append(StringWord(w.start, w.letters + (y,)))
        frontier = nxt
        length += 1
    return out


def _require_biserial(alg: Algebra) -> None:
    if classify_biserial(alg) == BiserialKind.OTHER:
        raise InventoryError("algebra is not special biserial; supply modules explicitly")


def enumerate_strings(alg: Algebra, max_len: int) -> list[StringWord]:
    _require_biserial(alg)
    return [w for w in all_words(alg, max_len) if is_canonical(alg, w)]


def string_to_module(alg: Algebra, w: StringWord) -> Module:
    walk = vertex_walk(alg, w)
    pos, count = [], {v: 0 for v in alg.vertices}
    for v in walk:
        pos.append(count[v])
        count[v] += 1
    dims = [count[v] for v in alg.vertices]
    maps = {a.name: mr.la.zeros(count[a.tgt], count[a.src]) for a in alg.arrows}
    for k, (a, d) in enumerate(w.letters):
        if d == DIRECT:
            maps[a][pos[k + 1], pos[k]] = 1
        else:
            maps[a][pos[k], pos[k + 1]] = 1
    return Module(alg, dims, maps)


def _is_proper_power(letters: tuple) -> bool:
    n = len(letters)
    for k in range(1, n):
        if n % k == 0 and letters == letters[:k] * (n // k):
            return True
    return False


def _band_key(alg: Algebra, w: StringWord) -> tuple:
    cands = []
    for word in (w, inverse_word(alg, w)):
        ls = word.letters
        for r in range(len(ls)):
            rot = ls[r:] + ls[:r]
            cands.append(tuple(_letter_key(alg, x) for x in rot))
    return min(cands)


def detect_bands(alg: Algebra, max_len: int = 8) -> list[StringWord]:
    """Primitive closed words all of whose powers are strings, up to rotation and inversion."""
    _require_biserial(alg)
    reps = max((len(r) for r in alg.relations), default=1) + 2
    seen, out = set(), []
    for w in all_words(alg, max_len):
        if not w.letters or end_vertex(alg, w) != w.start or _is_proper_power(w.letters):
            continue
        key = _band_key(alg, w)
        if key in seen:
            continue
        word = w.letters
        ok = True
        acc: tuple = ()
        for y in word * reps:
            if not can_append(alg, acc, y):
                ok = False
                break
            acc = acc + (y,)
        if ok:
            seen.add(key)
            out.append(w)
    return out


# -- combinatorial Hom count --------------------------------------------------

def _segments(alg: Algebra, w: StringWord, factor: bool):
    """Substrings spanning a quotient (factor=True) or a submodule of M(w)."""
    n = len(w.letters)
    walk = vertex_walk(alg, w)
    out = []
    for i in range(n + 1):
        if i > 0:
            d = w.letters[i - 1][1]
            if (factor and d == DIRECT) or (not factor and d == INVERSE):
                continue
        for j in range(i, n + 1):
            if j < n:
                d = w.letters[j][1]
                if (factor and d == INVERSE) or (not factor and d == DIRECT):
                    continue
            out.append((walk[i], w.letters[i:j]))
    return out


def string_hom_dim(alg: Algebra, c: StringWord, d: StringWord) -> int:
    """dim Hom(M(c), M(d)) counted by matching factor and image substrings."""
    facs = _segments(alg, c, True)
    subs = _segments(alg, d, False)
    count = 0
    for v, e in facs:
        einv = tuple((a, -k) for a, k in reversed(e))
        for v2, e2 in subs:
            if not e:
                count += int(not e2 and v == v2)
                continue
            if e2 == e and v2 == v:
                count += 1
            elif e2 == einv and len(e) and v2 == end_vertex(alg, StringWord(v, e)):
                count += 1
    return count


# -- inventory -------------------------------------------------------------------

class Inventory:
    """Pairwise non-isomorphic indecomposables, sorted and canonically named."""

    def __init__(self, alg: Algebra, members: list[Module], complete: bool, max_dim: int,
                 bands_present: bool, words: dict | None = None):
        self.alg = alg
        self.members = members
        self.complete = complete
        self.max_dim = max_dim
        self.bands_present = bands_present
        self.by_name = {m.name: m for m in members}
        self.words = words or {}
        self._lookup_cache: dict = {}
        self._tau: dict = {}
        self._tau_inv: dict = {}
        self._tau_mod: dict = {}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def names(self) -> list[str]:
        return [m.name for m in self.members]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __getitem__(self, name: str) -> Module:
        try:
            return self.by_name[name]
        except KeyError:
            raise InventoryError(f"unknown module name {name!r}") from None

    def bound_marker(self) -> str:
        return "exact" if self.complete else f"relative to bound {self.max_dim}"

    def lookup(self, X: Module) -> str | None:
        """Name of the member isomorphic to the indecomposable X, if any."""
        k = X.key()
        if k in self._lookup_cache:
            return self._lookup_cache[k]
        found = None
        for m in self.members:
            if m.dims == X.dims and mr.is_iso(m, X):
                found = m.name
                break
        self._lookup_cache[k] = found
        return found

    def identify(self, X: Module) -> list[str]:
        """Member names of the indecomposable summands of X (with repetition)."""
        out = []
        for Y in mr.decompose(X):
            name = self.lookup(Y)
            if name is None:
                raise InventoryTooSmall(
                    f"summand with dimension vector {Y.dims} is not in the inventory "
                    f"({self.bound_marker()})")
            out.append(name)
        return sorted(out, key=self.index)

    def tau(self, name: str) -> list[str]:
        if name not in self._tau:
            self._tau[name] = self.identify(self.tau_module(name))
        return self._tau[name]

    def tau_module(self, name: str) -> Module:
        """τ of a member as a raw module; usable even when it leaves the inventory."""
        if name not in self._tau_mod:
            self._tau_mod[name] = mr.tau(self[name])
        return self._tau_mod[name]

    def tau_inv(self, name: str) -> list[str]:
        if name not in self._tau_inv:
            self._tau_inv[name] = self.identify(mr.tau_inv(self[name]))
        return self._tau_inv[name]


def _standard_names(alg: Algebra, members: list[Module], lookup) -> None:
    for kind, build in (("P", mr.projective), ("S", mr.simple), ("I", mr.injective)):
        for v in alg.vertices:
            idx = lookup(build(alg, v))
            if idx is not None and not members[idx].name:
                members[idx].name = f"{kind}{v}"


def _quotient_names(alg: Algebra, members: list[Module], lookup) -> None:
    std = {m.name: m for m in members if m.name}
    numerators = [f"{k}{v}" for k in ("P", "I") for v in alg.vertices if f"{k}{v}" in std]
    denominators = [f"{k}{v}" for k in ("P", "S", "I") for v in alg.vertices if f"{k}{v}" in std]
    for num in numerators:
        X = std[num]
        for den in denominators:
            Y = std[den]
            if Y.total >= X.total:
                continue
            maps = mr.hom_basis(Y, X)
            if len(maps) != 1 or not maps[0].is_injective():
                continue
            Q, _ = mr.quotient(X, maps[0].image_bases())
            if not mr.is_indecomposable(Q):
                continue
            idx = lookup(Q)
            if idx is not None and not members[idx].name:
                members[idx].name = f"{num}/{den}"


def build_inventory(alg: Algebra, max_dim: int = 12, extra: list[Module] | None = None) -> Inventory:
    biserial = classify_biserial(alg) != BiserialKind.OTHER
    if not biserial and not extra:
        raise InventoryError("algebra is not special biserial and no module list was supplied")
    found: list[tuple[tuple, Module, StringWord | None]] = []
    bands: list[StringWord] = []
    exhausted = False
    if biserial:
        words = all_words(alg, max_dim)
        exhausted = not any(len(w) == max_dim for w in words)
        for w in words:
            if len(w) < max_dim and is_canonical(alg, w):
                found.append((word_key(alg, w), string_to_module(alg, w), w))
        bands = detect_bands(alg, max_dim)
    members: list[Module] = []
    wordmap: dict = {}
    for _, M, w in sorted(found, key=lambda t: (t[1].total, t[1].dims, len(t[0]), t[0])):
        if any(m.dims == M.dims and mr.is_iso(m, M) for m in members):
            continue
        members.append(M)
        wordmap[id(M)] = w
    for M in extra or []:
        for Y in mr.decompose(M):
            if not any(m.dims == Y.dims and mr.is_iso(m, Y) for m in members):
                Y = Module(alg, Y.dims, Y.maps)
                members.append(Y)
    members.sort(key=lambda m: (m.total, m.dims))
    for m in members:
        m.name = ""

    def lookup(X: Module):
        for k, m in enumerate(members):
            if m.dims == X.dims and mr.is_iso(m, X):
                return k
        return None

    _standard_names(alg, members, lookup)
    _quotient_names(alg, members, lookup)
    counters: dict = {}
    for m in members:
        if not m.name:
            k = counters.get(m.dims, 0) + 1
            counters[m.dims] = k
            m.name = "M(" + ",".join(map(str, m.dims)) + f")#{k}"
    members.sort(key=lambda m: (m.total, m.dims, m.name))
    complete = biserial and not bands and exhausted
    words = {m.name: wordmap.get(id(m)) for m in members}
    return Inventory(alg, members, complete, max_dim, bool(bands), words)

"""Finite-dimensional monomial quiver algebras over a prime field.

A path is a tuple of arrow names traversed left to right; the trivial path at
vertex ``v`` is represented by the empty tuple together with its vertex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

DEFAULT_CHAR = 101
DEFAULT_PATH_BUDGET = 100_000


class AlgebraError(ValueError):
    pass


class BiserialKind(str, Enum):
    GENTLE = "Gentle"
    SPECIAL_BISERIAL = "SpecialBiserial"
    OTHER = "Other"


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Path:
    start: int
    end: int
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e{self.start}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass
class Algebra:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...]
    p: int = DEFAULT_CHAR
    name: str = ""
    path_budget: int = DEFAULT_PATH_BUDGET
    _paths: dict = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow name")
        for a in self.arrows:
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise AlgebraError(f"arrow {a.name} uses an undeclared vertex")
        if not is_prime(self.p):
            raise AlgebraError(f"field characteristic {self.p} is not prime")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        for rel in self.relations:
            if len(rel) < 2:
                raise AlgebraError(f"relation {'.'.join(rel)} has length < 2")
            for x in rel:
                if x not in self.arrow_by_name:
                    raise AlgebraError(f"unknown arrow {x!r} in relation {'.'.join(rel)}")
            for x, y in zip(rel, rel[1:]):
                if self.arrow_by_name[x].tgt != self.arrow_by_name[y].src:
                    raise AlgebraError(f"relation {'.'.join(rel)} is not composable at {x}.{y}")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.out_arrows = {v: [a for a in self.arrows if a.src == v] for v in self.vertices}
        self.in_arrows = {v: [a for a in self.arrows if a.tgt == v] for v in self.vertices}
        self._relset = set(self.relations)
        self._maxrel = max((len(r) for r in self.relations), default=0)

    # -- paths -------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def contains_relation(self, arrows: tuple[str, ...]) -> bool:
        """True when some relation is a contiguous subpath of ``arrows``."""
        for r in self.relations:
            k = len(r)
            for i in range(len(arrows) - k + 1):
                if arrows[i:i + k] == r:
                    return True
        return False

    def _ends_with_relation(self, arrows: tuple[str, ...]) -> bool:
        for r in self.relations:
            if len(arrows) >= len(r) and arrows[-len(r):] == r:
                return True
        return False

    def _enumerate_paths(self) -> dict:
        paths: dict[tuple[int, int], list[Path]] = {(i, j): [] for i in self.vertices for j in self.vertices}
        total = 0
        for v in self.vertices:
            frontier = [Path(v, v, ())]
            while frontier:
                nxt = []
                for pth in frontier:
                    paths[(pth.start, pth.end)].append(pth)
                    total += 1
                    if total > self.path_budget:
                        raise AlgebraError("infinite-dimensional or budget exceeded")
                    for a in self.out_arrows[pth.end]:
                        arr = pth.arrows + (a.name,)
                        if not self._ends_with_relation(arr):
                            nxt.append(Path(pth.start, a.tgt, arr))
                frontier = nxt
        return paths

    @property
    def path_basis(self) -> dict[tuple[int, int], list[Path]]:
        if self._paths is None:
            self._paths = self._enumerate_paths()
        return self._paths

    def paths(self, i: int, j: int) -> list[Path]:
        return self.path_basis[(i, j)]

    def dimension(self) -> int:
        return sum(len(v) for v in self.path_basis.values())

    def is_hereditary(self) -> bool:
        return not self.relations

    def opposite(self) -> "Algebra":
        """The opposite algebra: arrows reversed, relations read backwards."""
        arrows = tuple(Arrow(a.name, a.tgt, a.src) for a in self.arrows)
        rels = tuple(tuple(reversed(r)) for r in self.relations)
        return Algebra(self.vertices, arrows, rels, self.p, name=self.name + "^op", path_budget=self.path_budget)

    def with_char(self, p: int) -> "Algebra":
        return Algebra(self.vertices, self.arrows, self.relations, p, name=self.name, path_budget=self.path_budget)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


def validate_finite(alg: Algebra, path_budget: int = DEFAULT_PATH_BUDGET) -> dict:
    """Enumerate relation-free paths; raise if the count exceeds the budget."""
    probe = Algebra(alg.vertices, alg.arrows, alg.relations, alg.p, path_budget=path_budget)
    basis = probe.path_basis
    return {
        "finite": True,
        "dimension": sum(len(v) for v in basis.values()),
        "projective_dims": {i: sum(len(basis[(i, j)]) for j in alg.vertices) for i in alg.vertices},
    }


_TOKEN = r"[A-Za-z_][A-Za-z0-9_']*"
_LINE_PATTERNS = [
    ("p", re.compile(r"^p\s*=\s*(\S+)$")),
    ("vertices", re.compile(r"^vertices\s*=\s*(.+)$")),
    ("vertex", re.compile(r"^vertex\s+(\S+)$")),
    ("arrow", re.compile(rf"^arrow\s+({_TOKEN})\s+(\S+)\s+(\S+)$")),
    ("rel", re.compile(r"^rel\s+(\S+)$")),
]


def _syntax(lineno: int, col: int, msg: str) -> AlgebraError:
    return AlgebraError(f"syntax error at line {lineno}, column {col}: {msg}")


def _vertex_id(tok: str, lineno: int, col: int) -> int:
    if not tok.isdigit() or int(tok) <= 0:
        raise _syntax(lineno, col, f"vertex id must be a positive integer, got {tok!r}")
    return int(tok)


def parse_algebra(text: str, name: str = "", p: int | None = None) -> Algebra:
    """Parse the line-oriented algebra format.

    ``p`` overrides any characteristic given in the file.
    """
    char = DEFAULT_CHAR
    vertices: list[int] = []
    arrows: list[Arrow] = []
    rels: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        for kind, pat in _LINE_PATTERNS:
            m = pat.match(line)
            if m:
                break
        else:
            raise _syntax(lineno, col, f"unrecognised declaration {line!r}")
        if kind == "p":
            if not m.group(1).isdigit():
                raise _syntax(lineno, col + line.index("=") + 1, f"expected an integer, got {m.group(1)!r}")
            char = int(m.group(1))
            if not is_prime(char):
                raise AlgebraError(f"line {lineno}: field characteristic {char} is not prime")
        elif kind == "vertices":
            for tok in re.split(r"[\s,]+", m.group(1).strip()):
                if tok:
                    vertices.append(_vertex_id(tok, lineno, col + line.index(tok)))
        elif kind == "vertex":
            vertices.append(_vertex_id(m.group(1), lineno, col + 7))
        elif kind == "arrow":
            src = _vertex_id(m.group(2), lineno, col + line.index(m.group(2), 6 + len(m.group(1))))
            tgt = _vertex_id(m.group(3), lineno, col + line.rindex(m.group(3)))
            arrows.append(Arrow(m.group(1), src, tgt))
        else:
            parts = tuple(m.group(1).split("."))
            if any(not re.fullmatch(_TOKEN, x) for x in parts):
                raise _syntax(lineno, col + 4, f"malformed relation {m.group(1)!r}")
            rels.append(parts)
    if p is not None:
        char = p
    return Algebra(tuple(vertices), tuple(arrows), tuple(rels), char, name=name)


def serialize(alg: Algebra) -> str:
    lines = [f"p = {alg.p}"]
    lines += [f"vertex {v}" for v in alg.vertices]
    lines += [f"arrow {a.name} {a.src} {a.tgt}" for a in alg.arrows]
    lines += ["rel " + ".".join(r) for r in alg.relations]
    return "\n".join(lines) + "\n"


def classify_biserial(alg: Algebra) -> BiserialKind:
    """Special biserial / gentle test for monomial relations."""
    for v in alg.vertices:
        if len(alg.out_arrows[v]) > 2 or len(alg.in_arrows[v]) > 2:
            return BiserialKind.OTHER
    rel2 = {r for r in alg.relations if len(r) == 2}
    for a in alg.arrows:
        succ = [b for b in alg.out_arrows[a.tgt] if (a.name, b.name) not in rel2]
        pred = [c for c in alg.in_arrows[a.src] if (c.name, a.name) not in rel2]
        if len(succ) > 1 or len(pred) > 1:
            return BiserialKind.OTHER
    gentle = all(len(r) == 2 for r in alg.relations)
    if gentle:
        for a in alg.arrows:
            dead_succ = [b for b in alg.out_arrows[a.tgt] if (a.name, b.name) in rel2]
            dead_pred = [c for c in alg.in_arrows[a.src] if (c.name, a.name) in rel2]
            if len(dead_succ) > 1 or len(dead_pred) > 1:
                gentle = False
                break
    return BiserialKind.GENTLE if gentle else BiserialKind.SPECIAL_BISERIAL

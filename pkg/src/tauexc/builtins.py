"""Built-in algebras, addressable by name from the command line."""

from __future__ import annotations

from pathlib import Path

from .algebra import Algebra, parse_algebra

BUILTIN_TEXT = {
    "ex-9.1": """\
# two vertices, a doubled arrow each way, every length-two path killed
vertex 1
vertex 2
arrow a 1 2
arrow b 1 2
arrow c 2 1
arrow d 2 1
rel a.c
rel a.d
rel b.c
rel b.d
rel c.a
rel c.b
rel d.a
rel d.b
""",
    "ex-9.2": """\
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 1 2
arrow c 2 3
rel a.c
""",
    "ex-9.3": """\
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
rel a.b
""",
    "ex-9.4": """\
# 1 <-> 2 <-> 3 with all 2-cycles killed
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
arrow c 2 1
arrow d 3 2
rel a.c
rel c.a
rel b.d
rel d.b
""",
    "a2": """\
vertex 1
vertex 2
arrow a 1 2
""",
    "a3": """\
vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 2 3
""",
    "kronecker": """\
vertex 1
vertex 2
arrow a 1 2
arrow b 1 2
""",
}

BUILTIN_NAMES = tuple(BUILTIN_TEXT)


def builtin(name: str, p: int | None = None) -> Algebra:
    if name not in BUILTIN_TEXT:
        raise KeyError(f"unknown built-in algebra {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return parse_algebra(BUILTIN_TEXT[name], name=name, p=p)


def load_algebra(source: str, p: int | None = None) -> Algebra:
    """A built-in name or a path to an algebra file."""
    if source in BUILTIN_TEXT:
        return builtin(source, p)
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"no built-in algebra or file named {source!r}")
    return parse_algebra(path.read_text(encoding="utf-8"), name=path.stem, p=p)

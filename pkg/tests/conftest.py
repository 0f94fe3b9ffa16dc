from __future__ import annotations

import functools

import pytest

from tauexc.algebra import parse_algebra
from tauexc.builtins import builtin
from tauexc.inventory import build_inventory
from tauexc.torsion import whole_context

# rank-two Nakayama algebras on a 2-cycle; used only by the rank-two tests
_CYCLE = "vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n"
EXTRA_RANK_TWO = {
    "cyc-ab": _CYCLE + "rel a.b\n",
    "cyc-ab-ba": _CYCLE + "rel a.b\nrel b.a\n",
    "cyc-aba-bab": _CYCLE + "rel a.b.a\nrel b.a.b\n",
}

BOUNDS = {"ex-9.1": 10, "ex-9.2": 8}


@functools.lru_cache(maxsize=None)
def algebra(name: str):
    if name in EXTRA_RANK_TWO:
        return parse_algebra(EXTRA_RANK_TWO[name], name=name)
    return builtin(name)


@functools.lru_cache(maxsize=None)
def context(name: str, max_dim: int | None = None):
    """Whole-category context, shared across tests (results are memoised inside)."""
    inv = build_inventory(algebra(name), max_dim=max_dim or BOUNDS.get(name, 12))
    return whole_context(inv)


@pytest.fixture
def ctx():
    return context


# Acceptance verdicts collected while the acceptance tests run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}")

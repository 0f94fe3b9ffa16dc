"""Named checks, the built-in example registry, and run reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import modules as mr
from .builtins import builtin
from .inventory import Inventory, InventoryError, InventoryTooSmall, build_inventory
from .perpcat import e_inv, j_of
from .tauseq import (MutationError, Mutability, Regularity, UnknownAtBound, brick_pair_check,
                     classical_braid, classify, component_count, enumerate_complete, pair_graph,
                     phi_i, psi_i, rank2_components, rank2_rho_is_isomorphism)
from .torsion import Context, ContextError, Obj, is_tau_rigid, sttilt_hasse, whole_context

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"

Check = Callable[[], tuple[bool, str]]


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    seconds: float = 0.0


@dataclass
class RunReport:
    command: str
    algebra: str
    bound: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return 1
        if UNKNOWN in statuses:
            return 3
        return 0

    def as_dict(self, timings: bool = False) -> dict:
        rows = []
        for c in self.checks:
            row = {"name": c.name, "status": c.status, "detail": c.detail}
            if timings:
                row["seconds"] = round(c.seconds, 3)
            rows.append(row)
        return {"command": self.command, "algebra": self.algebra, "bound": self.bound,
                "checks": rows}

    def as_table(self, timings: bool = False) -> str:
        lines = [f"# {self.command}", f"# algebra {self.algebra} ({self.bound})"]
        for c in self.checks:
            t = f"  [{c.seconds:.2f}s]" if timings else ""
            lines.append(f"{c.status.upper():7} {c.name}: {c.detail}{t}")
        return "\n".join(lines)


def run_checks(report: RunReport, checks: Iterable[tuple[str, Check]]) -> RunReport:
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
            status = PASS if ok else FAIL
        except (InventoryTooSmall, UnknownAtBound) as err:
            status, detail = UNKNOWN, str(err)
        except (MutationError, ContextError, InventoryError) as err:
            status, detail = FAIL, f"{type(err).__name__}: {err}"
        report.checks.append(CheckResult(name, status, detail, time.perf_counter() - t0))
    return report


def seq_label(seq) -> str:
    return "(" + ",".join(seq) + ")"


# -- generic checks over a whole context ------------------------------------------------

def _exactness(W: Context) -> tuple[str, Check]:
    inv = W.engine.inv
    return ("inventory complete",
            lambda: _require_exact(inv))


def _require_exact(inv: Inventory) -> tuple[bool, str]:
    if not inv.complete:
        raise InventoryTooSmall(f"inventory is {inv.bound_marker()}; this check needs all indecomposables")
    return True, f"{len(inv.names)} indecomposables"


def braid_checks(W: Context) -> list[tuple[str, Check]]:
    def run():
        seqs = enumerate_complete(W)
        n = W.rank
        fails = []
        total = 0
        for s in seqs:
            for i in range(1, n - 1):
                a = phi_i(W, phi_i(W, phi_i(W, s, i), i + 1), i)
                b = phi_i(W, phi_i(W, phi_i(W, s, i + 1), i), i + 1)
                total += 1
                if a != b:
                    fails.append(f"{seq_label(s)} at {i}: {seq_label(a)} vs {seq_label(b)}")
        head = f"{total - len(fails)}/{total} instances hold"
        return not fails, head + (f"; first failure {fails[0]}" if fails else "")
    return [_exactness(W), ("braid relation φ_iφ_{i+1}φ_i = φ_{i+1}φ_iφ_{i+1}", run)]


def inverse_checks(W: Context) -> list[tuple[str, Check]]:
    def run():
        seqs = enumerate_complete(W)
        bad = []
        count = 0
        for s in seqs:
            for i in range(1, len(s)):
                for fwd, back in ((phi_i, psi_i), (psi_i, phi_i)):
                    try:
                        t = fwd(W, s, i)
                    except MutationError:
                        continue
                    count += 1
                    if back(W, t, i) != s:
                        bad.append(f"{seq_label(s)} at {i}")
        return not bad, f"{count - len(bad)}/{count} round trips return to the start" + (
            f"; first failure {bad[0]}" if bad else "")
    return [_exactness(W), ("ψ_i∘φ_i = id and φ_i∘ψ_i = id", run)]


def rank2_checks(W: Context) -> list[tuple[str, Check]]:
    def comps():
        a, b = rank2_components(W)
        return a == b, f"Hasse(sτ-tilt) has {a}, Hasse(τ-exc) has {b}"

    def rho():
        return rank2_rho_is_isomorphism(W), "ρ onto the modified exchange graph"

    def bricks():
        rows = brick_pair_check(W)
        bad = [r for r in rows if not r["ok"]]
        return not bad, f"{len(rows) - len(bad)}/{len(rows)} brick pairs match arrow labels"

    if W.rank != 2:
        return [("rank two", lambda: (False, f"rank is {W.rank}"))]
    return [_exactness(W), ("component counts agree", comps), ("ρ is a quiver isomorphism", rho),
            ("brick pairs equal arrow labels", bricks)]


def hereditary_checks(W: Context) -> list[tuple[str, Check]]:
    def run():
        if not W.engine.alg.is_hereditary():
            return False, "algebra has relations"
        seqs = enumerate_complete(W)
        bad = []
        for s in seqs:
            for i in range(1, len(s)):
                if phi_i(W, s, i) != classical_braid(W, s, i):
                    bad.append(f"{seq_label(s)} at {i}")
        return not bad, f"{len(seqs)} sequences, {len(bad)} disagreements"
    return [_exactness(W), ("φ_i equals the classical σ_i", run)]


CHECKS = {"braid": braid_checks, "inverse": inverse_checks, "rank2": rank2_checks,
          "hereditary": hereditary_checks}


# -- examples ---------------------------------------------------------------------------

def _all_rigid_bricks(W: Context, expected: int) -> Check:
    def run():
        inv = W.engine.inv
        bad = [x for x in inv.names if not (is_tau_rigid(W, [x]) and mr.is_brick(inv[x]))]
        ok = len(inv.names) == expected and not bad and inv.complete
        return ok, f"{len(inv.names)} indecomposables ({inv.bound_marker()}), non-rigid-or-non-brick: {bad or 'none'}"
    return run


def _equals(got_fn: Callable, want) -> Check:
    def run():
        got = got_fn()
        return got == want, f"got {got}, expected {want}"
    return run


def _ex_9_1(W: Context) -> list[tuple[str, Check]]:
    inv = W.engine.inv

    def comps(kind):
        def run():
            G = sttilt_hasse(W) if kind == "sttilt" else pair_graph(W)
            k = component_count(G)
            return k == 2, f"{k} components on {G.number_of_nodes()} discovered vertices ({inv.bound_marker()})"
        return run

    def chain():
        # pair through (S1, P2), walked back one step and then forward with φ
        start = psi_i(W, ("S1", "P2"), 1)
        seqs = [start]
        for _ in range(4):
            seqs.append(phi_i(W, seqs[-1], 1))
        dims = [[inv[x].dims for x in s] for s in seqs]
        want = [[(2, 1), (3, 2)], [(1, 0), (2, 1)], [(2, 1), (1, 0)], [(3, 2), (2, 1)],
                [(4, 3), (3, 2)]]
        ok = dims == [[tuple(v) for v in d] for d in want] and seqs[1] == ("S1", "P2") \
            and seqs[2] == ("I2", "S1")
        return ok, " -> ".join(seq_label(s) for s in seqs)

    return [("Hasse(sτ-tilt) has 2 weakly connected components", comps("sttilt")),
            ("pair mutation graph has 2 weakly connected components", comps("pairs")),
            ("φ-chain through (S1,P2) for 4 steps", chain)]


def _ex_9_2(W: Context) -> list[tuple[str, Check]]:
    inv = W.engine.inv

    def perp():
        return list(j_of(j_of(W, ["S2"]), ["S1"]).members)

    def lift():
        return e_inv(W, (Obj("S2"),), Obj("S1")).name

    def cls():
        c = classify(W, ("S1", "S2"), 1)
        ok = (c.left == Regularity.IRREGULAR and c.left_mutable == Mutability.NO
              and "NotFFEvidence" in c.note)
        return ok, f"left {c.left.value}, left mutable {c.left_mutable.value}; {c.note}"

    def orbit_prefix():
        seqs = [("S1", "S2")]
        for _ in range(2):
            seqs.append(psi_i(W, seqs[-1], 1))
        m1, m2 = seqs[1][1], seqs[2][1]
        ok = (seqs[1][0] == "S2" and seqs[2][0] == m1
              and tuple(inv[m1].dims) == (1, 2, 0) and tuple(inv[m2].dims) == (2, 3, 0))
        return ok, " -> ".join(seq_label(s) for s in seqs) + \
            f"; dims {tuple(inv[m1].dims)}, {tuple(inv[m2].dims)}"

    return [("J(S1,S2) = add I3", _equals(perp, ["I3"])),
            ("E⁻¹ of S1 over S2 is P1/P3", _equals(lift, "P1/P3")),
            ("(S1,S2) is left irregular and not left mutable", cls),
            ("ψ-orbit prefix through Kronecker preprojectives", orbit_prefix)]


def _ex_9_3(W: Context) -> list[tuple[str, Check]]:
    start = ("S1", "S2", "P3")

    def count():
        seqs = enumerate_complete(W)
        return len(seqs) == 12, f"{len(seqs)} complete sequences"

    def word(order):
        s = start
        for i in order:
            s = phi_i(W, s, i)
        return s

    def braid_fails():
        a, b = word((1, 2, 1)), word((2, 1, 2))
        return a != b, f"φ1φ2φ1 gives {seq_label(a)}, φ2φ1φ2 gives {seq_label(b)}"

    def regular():
        seqs = enumerate_complete(W)
        bad = [(s, i) for s in seqs for i in (1, 2)
               if (c := classify(W, s, i)).left != Regularity.REGULAR or c.right != Regularity.REGULAR]
        return not bad, f"{2 * len(seqs) - len(bad)}/{2 * len(seqs)} pairs left and right regular"

    return [("five indecomposables, all τ-rigid bricks", _all_rigid_bricks(W, 5)),
            ("twelve complete τ-exceptional sequences", count),
            ("φ1φ2φ1(S1,S2,P3) = (P3,P1,S1)", _equals(lambda: word((1, 2, 1)), ("P3", "P1", "S1"))),
            ("φ2φ1φ2(S1,S2,P3) = (P2,S2,P1)", _equals(lambda: word((2, 1, 2)), ("P2", "S2", "P1"))),
            ("braid relation fails (expected)", braid_fails),
            ("every pair regular on both sides", regular)]


def _ex_9_4(W: Context) -> list[tuple[str, Check]]:
    target = ("P3", "P3/S1", "S3")

    def cycle():
        seqs = [s for s in enumerate_complete(W) if s[0] == "P3"]
        images = {s: psi_i(W, s, 2) for s in seqs}
        s = seqs[0] if seqs else None
        orbit = []
        while s is not None and s not in orbit:
            orbit.append(s)
            s = images.get(s)
        ok = len(seqs) == 3 and len(orbit) == 3 and s == orbit[0]
        return ok, f"{len(seqs)} sequences starting with P3; ψ2 orbit " + \
            " -> ".join(seq_label(x) for x in orbit)

    def cls():
        c = classify(W, target, 2)
        return c.right == Regularity.IRREGULAR, f"right {c.right.value}, right mutable {c.right_mutable.value}"

    return [("eleven indecomposables, all τ-rigid bricks", _all_rigid_bricks(W, 11)),
            ("sequences starting with P3 form a 3-cycle under ψ2", cycle),
            ("(P3,P3/S1,S3) is right 2-irregular", cls),
            ("ψ2(P3,P3/S1,S3) = (P3,S3,P2/S1)", _equals(lambda: psi_i(W, target, 2), ("P3", "S3", "P2/S1")))]


def _ex_a2(W: Context) -> list[tuple[str, Check]]:
    return hereditary_checks(W) + inverse_checks(W)[1:]


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    algebra: str
    max_dim: int
    checks: Callable[[Context], list[tuple[str, Check]]]


EXAMPLES = {
    "ex-9.1": ExampleSpec("ex-9.1", "ex-9.1", 10, _ex_9_1),
    "ex-9.2": ExampleSpec("ex-9.2", "ex-9.2", 8, _ex_9_2),
    "ex-9.3": ExampleSpec("ex-9.3", "ex-9.3", 12, _ex_9_3),
    "ex-9.4": ExampleSpec("ex-9.4", "ex-9.4", 12, _ex_9_4),
    "ex-a2-hereditary": ExampleSpec("ex-a2-hereditary", "a2", 12, _ex_a2),
}


def reproduce_example(name: str, max_dim: int | None = None, p: int | None = None) -> RunReport:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    ex = EXAMPLES[name]
    inv = build_inventory(builtin(ex.algebra, p), max_dim=max_dim or ex.max_dim)
    W = whole_context(inv)
    report = RunReport(f"example {name}", ex.algebra, inv.bound_marker())
    return run_checks(report, ex.checks(W))

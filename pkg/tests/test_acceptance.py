"""Acceptance gate: one check per criterion, at the stated tolerance.

Each ``criterion_N`` returns ``(ok, detail)``; the tests assert on it and a
terminal-summary hook (see conftest) prints one PASS/FAIL line per criterion.
Run directly with ``python tests/test_acceptance.py`` for the same lines.
"""

from __future__ import annotations

import random
import re
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kgrundy.constructions import (  # noqa: E402
    cube_formula,
    degree_upper_bound,
    gadget_L2_witness,
    hypercube_L_witness,
)
from kgrundy.forcing import k_forcing_number, z_sequence_from_forcing  # noqa: E402
from kgrundy.graph import (  # noqa: E402
    complete,
    complete_bipartite,
    cycle,
    er_random,
    grid,
    hypercube,
    tree_cycle_gadget,
)
from kgrundy.graphio import from_graph6, read_graph6_file  # noqa: E402
from kgrundy.lab import (  # noqa: E402
    Status,
    audit_bounds,
    check_cube_conjecture,
    forcing_conjecture_campaign,
    replay,
)
from kgrundy.sequences import Variant, verify  # noqa: E402
from kgrundy.solver import SolverConfig, grundy_bounds, grundy_number  # noqa: E402
from oracles import adjacency, naive_grundy  # noqa: E402

CATALOG = Path(__file__).parent / "data" / "connected_le7.g6"
RESULTS: dict[str, tuple[bool, str]] = {}
ALLOW_Z = SolverConfig(allow_Z_below_delta=True)
P, L, Z, T = Variant.PLAIN, Variant.L, Variant.Z, Variant.TOTAL


def _catalog(n_max: int):
    return [(d, g) for d, g in read_graph6_file(CATALOG) if g.n <= n_max]


def _timed(limit: float, body) -> tuple[bool, str]:
    t0 = time.perf_counter()
    problems = body()
    dt = time.perf_counter() - t0
    ok = not problems and dt < limit
    msg = f"{dt:.2f}s (limit {limit:g}s)"
    if problems:
        msg += f"; {len(problems)} mismatch(es), first: {problems[0]}"
    return ok, msg


def _record(key: str, title: str, result: tuple[bool, str]) -> tuple[bool, str]:
    RESULTS[key] = (result[0], f"{title}: {result[1]}")
    return result


# ---------------------------------------------------------------------------

def criterion_1():
    def body():
        bad = []
        for n in range(3, 13):
            for var, want in ((P, n - 1), (L, n), (Z, n - 1), (T, n)):
                got = grundy_number(cycle(n), var, 2).value
                if got != want:
                    bad.append(f"C{n} {var.value}: {got} != {want}")
        return bad
    return _record("1", "cycles, k=2", _timed(1.0, body))


def criterion_2():
    def body():
        bad = []
        for n in range(2, 10):
            for k in range(1, n):
                for var, want in ((P, k), (L, k + 1), (Z, k), (T, k + 1)):
                    got = grundy_number(complete(n), var, k).value
                    if got != want:
                        bad.append(f"K{n} {var.value} k={k}: {got} != {want}")
        return bad
    return _record("2", "complete graphs", _timed(1.0, body))


def criterion_3():
    def body():
        bad = []
        for m in range(1, 10):
            for n in range(1, m + 1):
                g = complete_bipartite(m, n)
                for k in range(1, n + 1):
                    expect = {P: m + k - 1, L: m + k, T: 2 * k, Z: 2 * k if m > k else 2 * k - 1}
                    for var, want in expect.items():
                        got = grundy_number(g, var, k).value
                        if got != want:
                            bad.append(f"K{m},{n} {var.value} k={k}: {got} != {want}")
        return bad
    return _record("3", "complete bipartite, 9 >= m >= n >= k", _timed(30.0, body))


def criterion_4():
    def body():
        bad = []
        for m, n in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5)]:
            g = grid(m, n)
            got = grundy_number(g, P, 2).value
            if got != m * n - 1:
                bad.append(f"P{m}xP{n} plain: {got} != {m * n - 1}")
            got = grundy_number(g, L, 2).value
            if got != m * n:
                bad.append(f"P{m}xP{n} L: {got} != {m * n}")
        return bad
    return _record("4", "grids, k=2 (L exact everywhere)", _timed(600.0, body))


def criterion_5():
    def body():
        bad = []
        for d in (2, 3, 4):
            g = hypercube(d)
            for k in range(1, d + 1):
                seq = hypercube_L_witness(d, k)
                if len(seq) != cube_formula(d, k) or not verify(g, seq).valid:
                    bad.append(f"Q{d} k={k}: witness length {len(seq)}")
            for k, want in ((d - 2, 2**d - 2), (d - 1, 2**d - 1), (d, 2**d)):
                if k < 1:
                    continue
                got = grundy_number(g, L, k, SolverConfig(max_vertices=16)).value
                if got != want:
                    bad.append(f"Q{d} k={k}: exact {got} != {want}")
        for k in (4, 5):
            b = grundy_bounds(hypercube(5), L, k)
            c = check_cube_conjecture(5, k)
            if not (b.exact and b.lower == 2**5 - 5 + k and c.status.value == "CONFIRMED-BOUND-PINCH"):
                bad.append(f"Q5 k={k}: [{b.lower}, {b.upper}] {c.status.value}")
        return bad
    return _record("5", "hypercubes", _timed(300.0, body))


def criterion_6():
    def body():
        bad = []
        for h in (3, 4):
            g = tree_cycle_gadget(h)
            seq = gadget_L2_witness(h)
            if not (len(seq) == g.n == degree_upper_bound(g, L, 2) and verify(g, seq).valid):
                bad.append(f"h={h}: length {len(seq)}, n={g.n}")
        return bad
    return _record("6", "gadget tightness", _timed(1.0, body))


def criterion_7():
    def body():
        bad = []
        for desc, g in _catalog(7):
            for k in (1, 2):
                fr = k_forcing_number(g, k)
                seq = z_sequence_from_forcing(g, k, fr.trace)
                if not verify(g, seq).valid or len(seq) != g.n - fr.F_k:
                    bad.append(f"{desc} k={k}: forcing sequence")
                z = grundy_number(g, Z, k, ALLOW_Z).value
                if z < g.n - fr.F_k or (k == 1 and z != g.n - fr.F_k):
                    bad.append(f"{desc} k={k}: Z={z}, n-F={g.n - fr.F_k}")
        return bad
    return _record("7", "forcing lower bound on the n<=7 catalog", _timed(1200.0, body))


def _audit_failures(report):
    return [f"{r.instance} ({r.graph6}) {c.name}: {c.detail}" for r, c in report.failures()]


def criterion_8():
    def body():
        return _audit_failures(audit_bounds(_catalog(6), [1, 2, 3]))
    return _record("8", "inequality audit, n<=6, k=1..3", _timed(600.0, body))


def criterion_8_within_min_degree():
    """Companion to 8: the same audit, keeping only checks with k <= delta."""
    def body():
        out = []
        for r, c in audit_bounds(_catalog(6), [1, 2, 3]).failures():
            ks = [int(x) for x in re.findall(r"k=(\d+)", c.name)]
            if max(ks) <= from_graph6(r.graph6).min_degree():
                out.append(f"{r.instance} {c.name}: {c.detail}")
        return out
    return _record("8b", "inequality audit restricted to k <= delta", _timed(600.0, body))


def criterion_9():
    def body():
        rnd = random.Random(2024)
        bad = []
        for i in range(200):
            n = rnd.randint(1, 8)
            g = er_random(n, rnd.uniform(0.15, 0.85), i)
            adj = adjacency(g.n, g.edges)
            for var in Variant:
                for k in (1, 2):
                    got = grundy_number(g, var, k, ALLOW_Z).value
                    want = naive_grundy(adj, var.value, k)
                    if got != want:
                        bad.append(f"graph {i} {var.value} k={k}: {got} != {want}")
        return bad
    return _record("9", "memoized solver vs naive oracle, 200 graphs", _timed(300.0, body))


def criterion_10():
    state = {}

    def body():
        report = forcing_conjecture_campaign(_catalog(7), 2)
        state["report"] = report
        bad = []
        for r in report.records:
            names = {c.name: c.status for c in r.checks}
            if names.get("theorem:zk>=n-Fk", Status.PASS) is not Status.PASS:
                bad.append(f"{r.instance}: lower bound failed")
            if names.get("conjecture") is Status.FAIL:
                try:
                    replay(r)
                except AssertionError as exc:
                    bad.append(f"{r.instance}: certificate does not replay ({exc})")
        return bad

    ok, msg = _timed(1200.0, body)
    rep = state.get("report")
    if rep is not None:
        t = rep.totals()
        cex = sum(1 for r in rep.records for c in r.checks if c.name == "conjecture" and c.status is Status.FAIL)
        msg += f"; {len(rep.records)} graphs, {cex} replayed counterexample(s), {t['SKIPPED']} skipped (delta < 2)"
    return _record("10", "forcing conjecture campaign, n<=7, k=2", (ok, msg))


# ---------------------------------------------------------------------------

@pytest.mark.parametrize("fn", [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_8_within_min_degree, criterion_9, criterion_10,
], ids=lambda f: f.__name__)
def test_criterion(fn):
    ok, msg = fn()
    assert ok, msg


if __name__ == "__main__":
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
               criterion_7, criterion_8, criterion_8_within_min_degree, criterion_9, criterion_10):
        fn()
    for key, (ok, msg) in RESULTS.items():
        print(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {msg}")

"""Audit campaigns over graph streams and the conjecture checks.

Every record of a campaign is plain JSON (no timings), so a campaign run
twice on the same stream produces byte-identical output.  FAIL entries carry
a certificate that :func:`replay` can re-check.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .constructions import cube_formula, degree_upper_bound, hypercube_L_witness
from .forcing import k_forcing_number, z_sequence_from_forcing
from .graph import FamilySpec, Graph, cartesian_product, er_random, generate, hypercube
from .graphio import from_graph6, read_graph6_file, to_graph6
from .sequences import GrundySequence, Variant, verify
from .solver import (
    CapacityError,
    PreconditionError,
    SolverConfig,
    grundy_bounds,
    grundy_number,
)

VARIANTS = (Variant.PLAIN, Variant.TOTAL, Variant.Z, Variant.L)


class InvariantViolation(RuntimeError):
    """A proven inequality failed; this points at a bug, not a discovery."""


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass
class Check:
    name: str
    status: Status
    detail: str = ""
    certificate: dict | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status.value, "detail": self.detail}
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d


@dataclass
class InstanceRecord:
    campaign: str
    instance: str
    graph6: str
    n: int
    checks: list[Check] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "instance": self.instance,
            "graph6": self.graph6,
            "n": self.n,
            "values": self.values,
            "checks": [c.to_dict() for c in self.checks],
            "flags": self.flags,
        }

    def count(self, status: Status) -> int:
        return sum(c.status is status for c in self.checks)


@dataclass
class AuditReport:
    campaign: str
    records: list[InstanceRecord] = field(default_factory=list)

    def failures(self) -> list[tuple[InstanceRecord, Check]]:
        return [(r, c) for r in self.records for c in r.checks if c.status is Status.FAIL]

    def totals(self) -> dict[str, int]:
        return {s.value: sum(r.count(s) for r in self.records) for s in Status}

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in self.records)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["campaign", "instance", "n", "pass", "fail", "skipped", "flags"])
        for r in self.records:
            w.writerow([
                r.campaign, r.instance, r.n, r.count(Status.PASS), r.count(Status.FAIL),
                r.count(Status.SKIPPED), ";".join(r.flags),
            ])
        return buf.getvalue()

    def write(self, jsonl: str | Path | None = None, csv_path: str | Path | None = None) -> None:
        if jsonl is not None:
            Path(jsonl).write_text(self.to_jsonl())
        if csv_path is not None:
            Path(csv_path).write_text(self.to_csv())


# ---------------------------------------------------------------------------
# streams
# ---------------------------------------------------------------------------

GraphStream = Iterable[tuple[str, Graph]]


def graph6_stream(path: str | Path) -> Iterator[tuple[str, Graph]]:
    return read_graph6_file(path)


def family_stream(specs: Iterable[FamilySpec | str]) -> Iterator[tuple[str, Graph]]:
    for spec in specs:
        if isinstance(spec, str):
            spec = FamilySpec.parse(spec)
        yield str(spec), generate(spec)


def random_stream(count: int, n_min: int, n_max: int, p: float = 0.5,
                  seed: int = 0) -> Iterator[tuple[str, Graph]]:
    """``count`` Erdos-Renyi graphs; each descriptor carries its own seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    sizes = rng.integers(n_min, n_max + 1, size=count)
    for i, n in enumerate(sizes):
        sub = seed * 1_000_003 + i
        yield f"er:{int(n)},{p},{sub}", er_random(int(n), p, sub)


# ---------------------------------------------------------------------------
# inequality audit
# ---------------------------------------------------------------------------

def _seq_cert(seq: GrundySequence) -> dict:
    return seq.to_dict()


def _audit_one(args) -> InstanceRecord:
    campaign, desc, g, ks, cfg, flag_full_L = args
    rec = InstanceRecord(campaign, desc, to_graph6(g), g.n)
    if g.n == 0:
        rec.checks.append(Check("instance", Status.SKIPPED, "empty graph"))
        return rec
    if g.n > cfg.max_vertices:
        rec.checks.append(Check("instance", Status.SKIPPED, f"capacity: n={g.n} > {cfg.max_vertices}"))
        return rec
    delta = g.min_degree()
    n = g.n
    solved: dict[int, dict[Variant, GrundySequence]] = {}
    for k in ks:
        res: dict[Variant, GrundySequence] = {}
        for var in VARIANTS:
            if var is Variant.Z and k > delta:
                continue
            res[var] = grundy_number(g, var, k, cfg).witness
        solved[k] = res
        rec.values[f"k={k}"] = {v.value: len(s) for v, s in res.items()}

        def upper(name: str, var: Variant, bound: int) -> None:
            seq = res[var]
            ok = len(seq) <= bound
            rec.checks.append(Check(
                f"k={k}:{name}", Status.PASS if ok else Status.FAIL,
                f"{var.value}={len(seq)} vs bound {bound}",
                None if ok else {"sequence": _seq_cert(seq)},
            ))

        def chain(name: str, lo: Variant, hi: Variant, slack: int = 0) -> None:
            if lo not in res or hi not in res:
                rec.checks.append(Check(f"k={k}:{name}", Status.SKIPPED, f"Z undefined: k={k} > delta={delta}"))
                return
            a, b = len(res[lo]), len(res[hi])
            ok = a <= b - slack
            cert = None if ok else {"longer": _seq_cert(res[lo]), "optimum": _seq_cert(res[hi])}
            note = "" if k <= delta else f"; outside k <= delta (delta={delta})"
            rec.checks.append(Check(
                f"k={k}:{name}", Status.PASS if ok else Status.FAIL,
                f"{lo.value}={a}, {hi.value}={b}{note}", cert,
            ))

        upper("L<=n-delta+k", Variant.L, degree_upper_bound(g, Variant.L, k))
        upper("total<=n-delta+k", Variant.TOTAL, degree_upper_bound(g, Variant.TOTAL, k))
        upper("plain<=n-delta+k-1", Variant.PLAIN, degree_upper_bound(g, Variant.PLAIN, k))
        chain("Z<=plain", Variant.Z, Variant.PLAIN)
        chain("plain<=L-1", Variant.PLAIN, Variant.L, slack=1)
        chain("Z<=total", Variant.Z, Variant.TOTAL)
        chain("total<=L", Variant.TOTAL, Variant.L)
        if flag_full_L and len(res[Variant.L]) == n:
            rec.flags.append(f"L-equals-n:k={k}")
    ordered = sorted(ks)
    for k1, k2 in zip(ordered, ordered[1:]):
        for var in VARIANTS:
            name = f"monotone:{var.value}:k={k1}->{k2}"
            if var not in solved[k1] or var not in solved[k2]:
                rec.checks.append(Check(name, Status.SKIPPED, f"Z undefined: k > delta={delta}"))
                continue
            s1, s2 = solved[k1][var], solved[k2][var]
            ok = len(s1) <= len(s2)
            rec.checks.append(Check(
                name, Status.PASS if ok else Status.FAIL, f"{len(s1)} <= {len(s2)}",
                None if ok else {"longer": _seq_cert(s1), "optimum": _seq_cert(s2)},
            ))
    return rec


def _map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _audit_config(cfg: SolverConfig | None) -> SolverConfig:
    # the audited inequalities must not be assumed by the search
    return replace(cfg or SolverConfig(), use_degree_bound_pruning=False)


def audit_bounds(stream: GraphStream, ks: Iterable[int], campaign: str = "bounds",
                 cfg: SolverConfig | None = None, jobs: int = 1,
                 flag_full_L: bool = False) -> AuditReport:
    """Solve all four variants per graph and k and check every inequality.

    Checked: the L and TOTAL degree bounds, the PLAIN degree bound, the
    chain ``Z <= plain <= L-1`` and ``Z <= total <= L``, and monotonicity in
    ``k``.  Checks involving Z are skipped when ``k > delta``.  With
    ``flag_full_L`` instances whose L value equals ``n`` are flagged.
    """
    cfg = _audit_config(cfg)
    ks = list(ks)
    items = [(campaign, d, g, ks, cfg, flag_full_L) for d, g in stream]
    return AuditReport(campaign, _map(_audit_one, items, jobs))


# ---------------------------------------------------------------------------
# forcing conjecture
# ---------------------------------------------------------------------------

@dataclass
class ForcingCheck:
    n: int
    k: int
    zk: int
    n_minus_fk: int
    z_witness: GrundySequence
    forcing_set: tuple[int, ...]
    forcing_sequence: GrundySequence

    @property
    def equal(self) -> bool:
        return self.zk == self.n_minus_fk


def check_forcing_conjecture(g: Graph, k: int, cfg: SolverConfig | None = None) -> ForcingCheck:
    """Compare the exact Z-value with ``n - F_k`` (each side with a certificate).

    Raises :class:`InvariantViolation` if the Z-value falls below ``n - F_k``
    or the sequence built from the forcing trace does not verify.
    """
    cfg = _audit_config(cfg)
    if g.n and k > g.min_degree() and not cfg.allow_Z_below_delta:
        raise PreconditionError(f"conjecture check needs k <= delta (k={k}, delta={g.min_degree()})")
    z = grundy_number(g, Variant.Z, k, cfg)
    fr = k_forcing_number(g, k, max_vertices=cfg.max_vertices)
    zseq = z_sequence_from_forcing(g, k, fr.trace)
    vr = verify(g, zseq)
    if not vr.valid:
        raise InvariantViolation(f"forcing-trace sequence invalid: {vr.reason}")
    if len(zseq) != g.n - fr.F_k:
        raise InvariantViolation(f"forcing-trace sequence has length {len(zseq)}, expected {g.n - fr.F_k}")
    if z.value < g.n - fr.F_k:
        raise InvariantViolation(
            f"Z-value {z.value} below n - F_k = {g.n - fr.F_k} on {to_graph6(g)}; the solver is wrong"
        )
    return ForcingCheck(g.n, k, z.value, g.n - fr.F_k, z.witness, tuple(sorted(fr.witness_set)), zseq)


def _forcing_one(args) -> InstanceRecord:
    campaign, desc, g, k, cfg = args
    rec = InstanceRecord(campaign, desc, to_graph6(g), g.n)
    if g.n == 0 or k > g.min_degree():
        rec.checks.append(Check("conjecture", Status.SKIPPED, f"hypothesis k <= delta fails (k={k})"))
        return rec
    if g.n > cfg.max_vertices:
        rec.checks.append(Check("conjecture", Status.SKIPPED, f"capacity: n={g.n} > {cfg.max_vertices}"))
        return rec
    fc = check_forcing_conjecture(g, k, cfg)
    rec.values = {"k": k, "zk": fc.zk, "n_minus_fk": fc.n_minus_fk}
    rec.checks.append(Check("theorem:zk>=n-Fk", Status.PASS, f"{fc.zk} >= {fc.n_minus_fk}"))
    if fc.equal:
        rec.checks.append(Check("conjecture", Status.PASS, f"zk = n - F_k = {fc.zk}"))
    else:
        rec.checks.append(Check(
            "conjecture", Status.FAIL, f"zk={fc.zk} > n - F_k={fc.n_minus_fk}",
            {"z_sequence": fc.z_witness.to_dict(), "forcing_set": list(fc.forcing_set), "k": k},
        ))
    return rec


def forcing_conjecture_campaign(stream: GraphStream, k: int, campaign: str = "forcing-conjecture",
                                cfg: SolverConfig | None = None, jobs: int = 1) -> AuditReport:
    cfg = _audit_config(cfg)
    items = [(campaign, d, g, k, cfg) for d, g in stream]
    return AuditReport(campaign, _map(_forcing_one, items, jobs))


def replay(record: InstanceRecord | dict) -> list[str]:
    """Re-check every FAIL certificate of a record; returns confirmations.

    Raises ``AssertionError`` when a certificate does not reproduce.
    """
    d = record.to_dict() if isinstance(record, InstanceRecord) else record
    g = from_graph6(d["graph6"])
    out = []
    for c in d["checks"]:
        if c["status"] != Status.FAIL.value:
            continue
        cert = c["certificate"]
        name = c["name"]
        if "sequence" in cert:
            seq = GrundySequence.from_dict(cert["sequence"])
            assert verify(g, seq).valid, f"{name}: certificate sequence does not verify"
            bound = degree_upper_bound(g, seq.variant, seq.k)
            assert len(seq) > bound, f"{name}: sequence does not exceed {bound}"
            out.append(f"{name}: valid {seq.variant.value} sequence of length {len(seq)} > {bound}")
        elif "longer" in cert:
            lo = GrundySequence.from_dict(cert["longer"])
            hi = GrundySequence.from_dict(cert["optimum"])
            assert verify(g, lo).valid, f"{name}: certificate sequence does not verify"
            cfg = SolverConfig(use_degree_bound_pruning=False, allow_Z_below_delta=True)
            opt = grundy_number(g, hi.variant, hi.k, cfg).value
            slack = 1 if name.endswith("plain<=L-1") else 0
            assert len(lo) > opt - slack, f"{name}: violation does not reproduce"
            out.append(f"{name}: {lo.variant.value} length {len(lo)} vs exact {hi.variant.value} {opt}")
        elif "z_sequence" in cert:
            k = cert["k"]
            seq = GrundySequence.from_dict(cert["z_sequence"])
            assert verify(g, seq).valid, f"{name}: Z-sequence does not verify"
            fr = k_forcing_number(g, k)
            assert fr.F_k == len(cert["forcing_set"]), f"{name}: forcing number differs"
            assert len(seq) > g.n - fr.F_k, f"{name}: counterexample does not reproduce"
            out.append(f"{name}: Z-sequence of length {len(seq)} > n - F_{k} = {g.n - fr.F_k}")
        else:
            raise AssertionError(f"{name}: unknown certificate kind")
    return out


# ---------------------------------------------------------------------------
# hypercube conjecture and the product question
# ---------------------------------------------------------------------------

class CubeStatus(str, enum.Enum):
    CONFIRMED_EXACT = "CONFIRMED-EXACT"
    REFUTED_EXACT = "REFUTED-EXACT"
    CONFIRMED_PINCH = "CONFIRMED-BOUND-PINCH"
    UNDECIDED = "UNDECIDED-INTERVAL"


@dataclass
class CubeCheck:
    d: int
    k: int
    formula: int
    lower: int
    upper: int
    exact: int | None
    status: CubeStatus

    def to_dict(self) -> dict:
        return {**self.__dict__, "status": self.status.value}


def check_cube_conjecture(d: int, k: int, cfg: SolverConfig | None = None,
                          exact_max_d: int = 4) -> CubeCheck:
    """Compare the L-value of ``Q_d`` with ``ceil(2^d - 2^(d-k-1))``.

    Up to ``exact_max_d`` the value is solved exactly; beyond it only the
    construction and the degree bound are compared, and the conjecture is
    never reported refuted on bound evidence.
    """
    if d < 2 or not 1 <= k <= d:
        raise ValueError(f"need d >= 2 and 1 <= k <= d, got d={d}, k={k}")
    formula = cube_formula(d, k)
    lower = len(hypercube_L_witness(d, k))
    upper = min(2**d, 2**d - d + k)
    if d <= exact_max_d:
        base = cfg or SolverConfig()
        cfg = replace(base, max_vertices=max(base.max_vertices, 2**d))
        value = grundy_number(hypercube(d), Variant.L, k, cfg).value
        status = CubeStatus.CONFIRMED_EXACT if value == formula else CubeStatus.REFUTED_EXACT
        return CubeCheck(d, k, formula, value, value, value, status)
    status = CubeStatus.CONFIRMED_PINCH if lower == upper else CubeStatus.UNDECIDED
    return CubeCheck(d, k, formula, lower, upper, lower if lower == upper else None, status)


class Relation(str, enum.Enum):
    EQUAL = "EQUAL"
    LESS = "LHS<RHS"
    GREATER = "LHS>RHS"
    UNDECIDED = "UNDECIDED"


@dataclass
class ProductCheck:
    k: int
    lhs: tuple[int, int]
    left: tuple[int, int]
    right: tuple[int, int]
    relation: Relation
    hypothesis: str

    @property
    def rhs(self) -> tuple[int, int]:
        return (self.left[0] * self.right[0], self.left[1] * self.right[1])

    def to_dict(self) -> dict:
        return {
            "k": self.k, "lhs": list(self.lhs), "rhs": list(self.rhs), "left": list(self.left),
            "right": list(self.right), "relation": self.relation.value, "hypothesis": self.hypothesis,
        }


def _L_interval(g: Graph, k: int, cfg: SolverConfig) -> tuple[int, int]:
    try:
        v = grundy_number(g, Variant.L, k, cfg).value
        return v, v
    except CapacityError:
        b = grundy_bounds(g, Variant.L, k)
        return b.lower, b.upper


def check_product_question(g: Graph, h: Graph, k: int, cfg: SolverConfig | None = None) -> ProductCheck:
    """Compare the L-value of ``g x h`` with the product of the factors' values."""
    cfg = cfg or SolverConfig()
    lhs = _L_interval(cartesian_product(g, h), k, cfg)
    left, right = _L_interval(g, k, cfg), _L_interval(h, k, cfg)
    rhs = (left[0] * right[0], left[1] * right[1])
    if lhs[0] == lhs[1] == rhs[0] == rhs[1]:
        rel = Relation.EQUAL
    elif lhs[1] < rhs[0]:
        rel = Relation.LESS
    elif lhs[0] > rhs[1]:
        rel = Relation.GREATER
    else:
        rel = Relation.UNDECIDED
    ok = g.min_degree() >= k and h.min_degree() >= k
    return ProductCheck(k, lhs, left, right, rel, "IN-HYPOTHESIS" if ok else "SKIPPED-HYPOTHESIS")

"""Explicit sequences for the graph families with known k-Grundy values,
closed-form value tables and the minimum-degree upper bounds."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

from .graph import Family, FamilySpec, Graph, gadget_levels, generate, hypercube, min_degree
from .sequences import (
    GrundySequence,
    SequenceError,
    Variant,
    append,
    certify,
    legal_witnesses,
    state_of,
)


class InapplicableError(ValueError):
    """Parameters fall outside a theorem's hypotheses."""

    def __init__(self, constraint: str, detail: str = ""):
        super().__init__(f"closed form inapplicable: requires {constraint}" + (f" ({detail})" if detail else ""))
        self.constraint = constraint


class ConstructionError(RuntimeError):
    """A constructive step did not behave as the construction promises."""


# ---------------------------------------------------------------------------
# degree bounds
# ---------------------------------------------------------------------------

def degree_upper_bound(g: Graph, variant: Variant, k: int) -> int:
    """``n - delta + k`` for L and TOTAL, one less for PLAIN and Z."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    bound = g.n - min_degree(g) + k
    return bound if variant in (Variant.L, Variant.TOTAL) else bound - 1


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    family: FamilySpec
    variant: Variant
    k: int
    value: int | None
    lower: int
    upper: int
    source: str

    @property
    def exact(self) -> bool:
        return self.value is not None


def cube_formula(d: int, k: int) -> int:
    """``ceil(2^d - 2^(d-k-1))`` evaluated in exact integer arithmetic."""
    e = d - k - 1
    return 2**d - 2**e if e >= 0 else 2**d - math.floor(2.0**e)


def closed_form_value(family: FamilySpec, variant: Variant, k: int) -> ClosedForm:
    fam, p = family.family, family.params
    variant = Variant.parse(variant)

    def exact(value: int, source: str) -> ClosedForm:
        return ClosedForm(family, variant, k, value, value, value, source)

    if k < 1:
        raise InapplicableError("k >= 1")

    if fam is Family.CYCLE:
        (n,) = p
        if k != 2:
            raise InapplicableError("k = 2", f"cycles are covered only for k=2, got k={k}")
        value = n - 1 if variant in (Variant.PLAIN, Variant.Z) else n
        return exact(value, "cycle theorem")

    if fam is Family.COMPLETE:
        (n,) = p
        if k > n - 1:
            raise InapplicableError("k <= n - 1", f"k={k}, n={n}")
        value = k if variant in (Variant.PLAIN, Variant.Z) else k + 1
        return exact(value, "complete graph theorem")

    if fam is Family.COMPLETE_BIPARTITE:
        m, n = p
        if m < n:
            raise InapplicableError("m >= n", f"got m={m}, n={n}")
        if n < k:
            raise InapplicableError("m, n >= k", f"got m={m}, n={n}, k={k}")
        if variant is Variant.PLAIN:
            value = m + k - 1
        elif variant is Variant.L:
            value = m + k
        elif variant is Variant.TOTAL:
            value = 2 * k
        else:
            value = 2 * k if m > k else 2 * k - 1
        return exact(value, "complete bipartite theorem")

    if fam is Family.GRID:
        m, n = p
        if k != 2:
            raise InapplicableError("k = 2", f"grids are covered only for k=2, got k={k}")
        if variant is Variant.PLAIN:
            if m < 2:
                raise InapplicableError("m >= 2", f"got m={m}")
            return exact(m * n - 1, "grid theorem")
        if variant is Variant.L:
            if m > n:
                raise InapplicableError("m <= n", f"got m={m}, n={n}")
            if n < 2:
                raise InapplicableError("n >= 2", f"got n={n}")
            return exact(m * n, "grid corollary")
        raise InapplicableError("variant in {plain, l}", f"got {variant.value}")

    if fam is Family.HYPERCUBE:
        (d,) = p
        if variant is not Variant.L:
            raise InapplicableError("variant = l", f"got {variant.value}")
        if d < 2 or not 1 <= k <= d:
            raise InapplicableError("d >= 2 and 1 <= k <= d", f"got d={d}, k={k}")
        lower = cube_formula(d, k)
        upper = min(2**d, 2**d - d + k)
        if lower == upper:
            return ClosedForm(family, variant, k, lower, lower, upper, "hypercube lower bound meets degree bound")
        return ClosedForm(family, variant, k, None, lower, upper, "hypercube bounds")

    raise InapplicableError(
        "family in {cycle, complete, kbipartite, grid, hypercube}", f"got {fam.value}"
    )


def closed_form_table(entries: Iterable[tuple[FamilySpec, Variant, int]]) -> str:
    """CSV rows ``family,params,variant,k,value,lower,upper,source``; inapplicable rows are skipped."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "params", "variant", "k", "value", "lower", "upper", "source"])
    for spec, variant, k in entries:
        try:
            cf = closed_form_value(spec, variant, k)
        except InapplicableError:
            continue
        w.writerow([
            spec.family.value, " ".join(map(str, spec.params)), cf.variant.value, k,
            "" if cf.value is None else cf.value, cf.lower, cf.upper, cf.source,
        ])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def cycle_witness(n: int, variant: Variant) -> GrundySequence:
    """2-sequence on ``C_n`` labelled ``0..n-1`` around the cycle."""
    if n < 3:
        raise ValueError(f"cycle witness requires n >= 3, got {n}")
    variant = Variant.parse(variant)
    length = n - 1 if variant in (Variant.PLAIN, Variant.Z) else n
    return certify(generate(FamilySpec(Family.CYCLE, (n,))), variant, 2, range(length))


def grid_witness(m: int, n: int, variant: Variant = Variant.PLAIN) -> GrundySequence:
    """Column sweep on the ``m x n`` grid, leaving out the bottom-right corner.

    Columns ``0..n-2`` go in one at a time (rows ascending), then the last
    column top-down without its final vertex.  Vertex ``(r, c)`` has id
    ``r * n + c``.
    """
    if m < 2 or n < 1:
        raise ValueError(f"grid witness requires m >= 2 and n >= 1, got m={m}, n={n}")
    if Variant.parse(variant) is not Variant.PLAIN:
        raise ValueError("grid witness is a PLAIN 2-sequence")
    order = [r * n + c for c in range(n - 1) for r in range(m)]
    order += [r * n + n - 1 for r in range(m - 1)]
    return certify(generate(FamilySpec(Family.GRID, (m, n))), Variant.PLAIN, 2, order)


def gadget_L2_witness(h: int) -> GrundySequence:
    """2-L-sequence through every vertex of the tree-cycle gadget.

    Levels ``h, h-1, ..., 3`` first, then both roots, then the roots'
    children.  Within a level, ascending id.
    """
    if h < 3:
        raise ValueError(f"gadget requires h >= 3, got {h}")
    levels = gadget_levels(h)
    order = [v for lvl in range(h - 1, 1, -1) for v in levels[lvl]]
    order += levels[0] + levels[1]
    return certify(generate(FamilySpec(Family.TREE_CYCLE_GADGET, (h,))), Variant.L, 2, order)


@dataclass(frozen=True)
class HypercubePattern:
    """Pattern A/B suffixes on the last three coordinates of ``Q_d``.

    Coordinate 1 of a vertex is bit ``d-1`` of its id, so the last three
    coordinates are bits 2..0 and the 3-cube prefix is ``v >> 3``.
    """

    d: int
    pattern_a: frozenset[int] = frozenset({0b000, 0b011, 0b101, 0b110})
    pattern_b: frozenset[int] = frozenset({0b001, 0b010, 0b100, 0b111})

    @staticmethod
    def cube_distance(v: int, w: int) -> int:
        return ((v >> 3) ^ (w >> 3)).bit_count()

    def vertices(self) -> list[int]:
        out = []
        for v in range(2**self.d):
            pattern = self.pattern_a if self.cube_distance(v, 0) % 2 == 0 else self.pattern_b
            if v & 0b111 in pattern:
                out.append(v)
        return out


def standard_pattern(d: int) -> list[int]:
    """The 2^(d-1)-vertex independent set on ``Q_d``, ascending."""
    if d < 3:
        raise ValueError(f"standard pattern requires d >= 3, got {d}")
    return HypercubePattern(d).vertices()


def hypercube_L_phases(d: int, k: int) -> list[tuple[str, list[int]]]:
    """Phases of the hypercube k-L construction as ``(name, vertices)``.

    The pattern phase is the standard pattern (the even-weight vertices, which
    for ``d = 2`` is the diagonal pair of ``C_4``).  Halving phase ``j`` adds
    the uncovered vertices whose first ``j-1`` coordinates are 1 and whose
    ``j``-th coordinate is 0; each of them hits its partner across coordinate
    ``j`` for the ``j``-th time.  With ``k = d`` one vertex is left and goes
    last.  Every step is checked against the sequence engine.
    """
    if d < 2 or not 1 <= k <= d:
        raise ValueError(f"hypercube witness requires d >= 2 and 1 <= k <= d, got d={d}, k={k}")
    g = hypercube(d)
    pattern = standard_pattern(d) if d >= 3 else [0b00, 0b11]
    phases = [("pattern", pattern)]
    st = state_of(g, pattern)
    for j in range(1, min(k, d - 1) + 1):
        bit = d - j
        high = ((1 << (j - 1)) - 1) << (bit + 1)
        phase = [
            v for v in range(2**d)
            if v not in st.chosen and v & high == high and not v >> bit & 1
        ]
        for v in phase:
            partner = v ^ (1 << bit)
            if st.open_count[partner] != j - 1 or partner not in legal_witnesses(g, st, Variant.L, k, v):
                raise ConstructionError(f"phase {j}: vertex {v} cannot footprint its partner {partner}")
            st = append(st, g, v)
        phases.append((f"halving-{j}", phase))
    if k == d:
        rest = [v for v in range(2**d) if v not in st.chosen]
        if len(rest) != 1 or not legal_witnesses(g, st, Variant.L, k, rest[0]):
            raise ConstructionError(f"terminal phase expected one addable vertex, found {rest}")
        phases.append(("terminal", rest))
    return phases


def hypercube_L_witness(d: int, k: int) -> GrundySequence:
    order = [v for _, phase in hypercube_L_phases(d, k) for v in phase]
    seq = certify(hypercube(d), Variant.L, k, order)
    if len(seq) != cube_formula(d, k):
        raise ConstructionError(f"witness length {len(seq)} != {cube_formula(d, k)}")
    return seq


def is_canonical_hypercube(g: Graph) -> int | None:
    """Dimension ``d`` if ``g`` is ``Q_d`` under the bit labelling, else None."""
    n = g.n
    if n < 1 or n & (n - 1):
        return None
    d = n.bit_length() - 1
    return d if g == hypercube(d) else None


def last_step_footprints_other(g: Graph, seq: GrundySequence) -> bool:
    """Whether the final vertex of an L-sequence hits a neighbor for the k-th time."""
    if seq.variant is not Variant.L or not seq.order:
        raise SequenceError("needs a non-empty L-sequence")
    x = seq.order[-1]
    st = state_of(g, seq.order[:-1])
    return any(u != x for u in legal_witnesses(g, st, Variant.L, seq.k, x))


def independent(g: Graph, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    return all(not (g.adj[v] & vs) for v in vs)


"""k-forcing: closure simulation, exact forcing numbers and the Z-sequence
obtained by replaying a forcing trace backwards."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import Graph
from .sequences import GrundySequence, Variant

DEFAULT_MAX_VERTICES = 24
_STALLED_CAP = 4096


class ForcingError(ValueError):
    pass


class CapacityError(ForcingError):
    pass


@dataclass(frozen=True)
class ForcingTrace:
    """Ordered firings ``(forcer, forced)`` of the k-forcing closure."""

    k: int
    initial_blue: frozenset[int]
    waves: tuple[tuple[int, tuple[int, ...]], ...]
    final_blue: frozenset[int]

    def complete(self, n: int) -> bool:
        return len(self.final_blue) == n

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "initial_blue": sorted(self.initial_blue),
            "waves": [{"forcer": b, "forced": list(w)} for b, w in self.waves],
            "final_blue": sorted(self.final_blue),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ForcingTrace":
        return cls(
            int(d["k"]),
            frozenset(d["initial_blue"]),
            tuple((int(w["forcer"]), tuple(w["forced"])) for w in d["waves"]),
            frozenset(d["final_blue"]),
        )


@dataclass(frozen=True)
class ForcingResult:
    F_k: int
    witness_set: frozenset[int]
    trace: ForcingTrace


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def closure_mask(masks: tuple[int, ...], k: int, blue: int) -> int:
    """Final blue set of the closure, without recording a trace."""
    changed = True
    while changed:
        changed = False
        for b in _bits(blue):
            white = masks[b] & ~blue
            if white and white.bit_count() <= k:
                blue |= white
                changed = True
    return blue


def closure(g: Graph, k: int, blue: Iterable[int]) -> ForcingTrace:
    """Run the color-change rule to its fixpoint.

    One forcer fires per step: the least-id blue vertex having between 1 and
    ``k`` white neighbors.  The fixpoint itself does not depend on this order.
    """
    if k < 1:
        raise ForcingError(f"k must be >= 1, got {k}")
    initial = frozenset(blue)
    for v in initial:
        if not 0 <= v < g.n:
            raise ForcingError(f"vertex {v} out of range for n={g.n}")
    masks = g.masks
    cur = _to_mask(initial)
    waves = []
    while True:
        for b in _bits(cur):
            white = masks[b] & ~cur
            if white and white.bit_count() <= k:
                waves.append((b, tuple(_bits(white))))
                cur |= white
                break
        else:
            break
    return ForcingTrace(k, initial, tuple(waves), frozenset(_bits(cur)))


def _component_forcing_set(g: Graph, k: int) -> list[int]:
    n = g.n
    full = (1 << n) - 1
    masks = g.masks
    if n == 0:
        return []
    stalled: list[int] = []
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            b = _to_mask(combo)
            # a forcing set cannot sit inside a closure that already stalled
            if any(b & ~c == 0 for c in stalled):
                continue
            c = closure_mask(masks, k, b)
            if c == full:
                return list(combo)
            if len(stalled) < _STALLED_CAP and not any(c & ~s == 0 for s in stalled):
                stalled.append(c)
    raise AssertionError("unreachable: V itself is forcing")  # pragma: no cover


def k_forcing_number(g: Graph, k: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> ForcingResult:
    """Exact ``F_k`` by increasing-size subset search, per component."""
    if k < 1:
        raise ForcingError(f"k must be >= 1, got {k}")
    if g.n > max_vertices:
        raise CapacityError(
            f"n={g.n} exceeds the forcing search guard ({max_vertices}); raise max_vertices explicitly"
        )
    chosen: list[int] = []
    for comp in g.components():
        sub, old = g.induced_subgraph(comp)
        chosen += [old[v] for v in _component_forcing_set(sub, k)]
    witness = frozenset(chosen)
    return ForcingResult(len(witness), witness, closure(g, k, witness))


def z_sequence_from_forcing(g: Graph, k: int, trace: ForcingTrace) -> GrundySequence:
    """Forced sets in reverse firing order; each step is witnessed by its forcer."""
    if trace.k != k:
        raise ForcingError(f"trace was recorded for k={trace.k}, not k={k}")
    if len(trace.final_blue) != g.n:
        raise ForcingError(
            f"trace colors {len(trace.final_blue)} of {g.n} vertices; the initial set is not k-forcing"
        )
    order, wit = [], []
    for b, forced in reversed(trace.waves):
        for w in sorted(forced):
            order.append(w)
            wit.append(b)
    return GrundySequence(Variant.Z, k, tuple(order), tuple(wit))

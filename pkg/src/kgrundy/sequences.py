"""The four k-Grundy sequence semantics.

A sequence ``(v_1, ..., v_m)`` of distinct vertices is legal when every
``v_i`` has a witness ``u_i`` in its *candidate-side* neighborhood that lies
in the *count-side* neighborhoods of fewer than ``k`` earlier members.
The variant picks open or closed neighborhoods for each side:

=======  ==============  ==========
variant  candidate side  count side
=======  ==============  ==========
PLAIN    closed          closed
TOTAL    open            open
Z        open            closed
L        closed          open
=======  ==============  ==========
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph

log = logging.getLogger(__name__)


class SequenceError(ValueError):
    """Misuse of the sequence engine (duplicate vertex, bad id)."""


class Variant(enum.Enum):
    PLAIN = "plain"
    TOTAL = "total"
    Z = "z"
    L = "l"

    @property
    def candidate_closed(self) -> bool:
        return self in (Variant.PLAIN, Variant.L)

    @property
    def count_closed(self) -> bool:
        return self in (Variant.PLAIN, Variant.Z)

    @classmethod
    def parse(cls, text: "str | Variant") -> "Variant":
        if isinstance(text, Variant):
            return text
        key = text.strip().lower()
        aliases = {"t": "total", "k": "plain", "grundy": "plain"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise SequenceError(f"unknown variant {text!r}; expected plain, total, z or l") from None


class TieRule(enum.Enum):
    MIN_ID = "min_id"
    MAX_NEW_COVERAGE = "max_new_coverage"


class FootprintState:
    """Chosen-vertex set plus per-vertex open coverage counts.

    ``open_count[u]`` is the number of chosen ``v`` with ``u`` in ``N(v)``;
    the closed count adds one when ``u`` itself is chosen.  Both depend only
    on the chosen set, never on the order it was built in.
    """

    __slots__ = ("graph", "chosen", "open_count")

    def __init__(self, graph: Graph, chosen: frozenset[int] = frozenset(), open_count=None):
        self.graph = graph
        self.chosen = frozenset(chosen)
        if open_count is None:
            open_count = [0] * graph.n
            for v in self.chosen:
                for u in graph.adj[v]:
                    open_count[u] += 1
        self.open_count: tuple[int, ...] = tuple(open_count)

    def closed_count(self, u: int) -> int:
        return self.open_count[u] + (u in self.chosen)

    def count(self, u: int, variant: Variant) -> int:
        return self.closed_count(u) if variant.count_closed else self.open_count[u]

    def append(self, v: int) -> "FootprintState":
        return append(self, self.graph, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FootprintState):
            return NotImplemented
        return self.chosen == other.chosen and self.open_count == other.open_count

    def __repr__(self) -> str:
        return f"FootprintState(chosen={sorted(self.chosen)}, open_count={list(self.open_count)})"


def new_state(g: Graph) -> FootprintState:
    return FootprintState(g)


def state_of(g: Graph, vertices: Iterable[int]) -> FootprintState:
    """Recompute the state of a chosen set from scratch."""
    return FootprintState(g, frozenset(vertices))


def append(st: FootprintState, g: Graph, v: int) -> FootprintState:
    if not 0 <= v < g.n:
        raise SequenceError(f"vertex {v} out of range for n={g.n}")
    if v in st.chosen:
        raise SequenceError(f"vertex {v} already chosen")
    counts = list(st.open_count)
    for u in g.adj[v]:
        counts[u] += 1
    return FootprintState(g, st.chosen | {v}, counts)


def legal_witnesses(g: Graph, st: FootprintState, variant: Variant, k: int, v: int) -> set[int]:
    """Every vertex that certifies appending ``v`` to the current prefix."""
    if k < 1:
        raise SequenceError(f"k must be >= 1, got {k}")
    if v in st.chosen:
        raise SequenceError(f"vertex {v} already chosen")
    cand = g.closed_neighborhood(v) if variant.candidate_closed else g.adj[v]
    return {u for u in cand if st.count(u, variant) < k}


@dataclass(frozen=True)
class GrundySequence:
    """Ordered vertex list with optional per-step witnesses."""

    variant: Variant
    k: int
    order: tuple[int, ...]
    witnesses: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if self.witnesses is not None:
            object.__setattr__(self, "witnesses", tuple(self.witnesses))

    def __len__(self) -> int:
        return len(self.order)

    def to_dict(self) -> dict:
        d = {"variant": self.variant.value, "k": self.k, "order": list(self.order)}
        if self.witnesses is not None:
            d["witnesses"] = list(self.witnesses)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "GrundySequence":
        try:
            w = d.get("witnesses")
            return cls(
                Variant.parse(d["variant"]),
                int(d["k"]),
                tuple(int(x) for x in d["order"]),
                None if w is None else tuple(int(x) for x in w),
            )
        except (KeyError, TypeError) as exc:
            raise SequenceError(f"malformed sequence certificate: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "GrundySequence":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SequenceError(f"certificate is not valid JSON: {exc}") from None


@dataclass
class VerifyResult:
    valid: bool
    index: int | None = None  # 1-based position of the first bad step
    reason: str = ""
    witnesses: tuple[int, ...] = ()
    warnings: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify(g: Graph, seq: GrundySequence) -> VerifyResult:
    """Check ``seq`` step by step and record the least-id witness per step.

    Supplied witnesses are checked too: a certificate whose recorded witness
    does not work is invalid even if another witness would.
    """
    k, variant = seq.k, seq.variant
    if k < 1:
        return VerifyResult(False, None, f"k must be >= 1, got {k}")
    for v in seq.order:
        if not 0 <= v < g.n:
            raise SequenceError(f"vertex {v} out of range for n={g.n}")
    if seq.witnesses is not None and len(seq.witnesses) != len(seq.order):
        return VerifyResult(False, None, "witness list length differs from sequence length")
    notes = []
    if variant is Variant.Z and g.n and k > g.min_degree():
        notes.append(f"k={k} exceeds minimum degree {g.min_degree()}; Z-sequences assume k <= delta")
        log.debug(notes[-1])
    st = new_state(g)
    found = []
    for i, v in enumerate(seq.order, 1):
        if v in st.chosen:
            return VerifyResult(False, i, f"duplicate vertex {v} at index {i}", tuple(found), notes)
        legal = legal_witnesses(g, st, variant, k, v)
        if not legal:
            return VerifyResult(False, i, f"vertex {v} has no legal witness at index {i}", tuple(found), notes)
        if seq.witnesses is not None and seq.witnesses[i - 1] not in legal:
            return VerifyResult(
                False, i, f"recorded witness {seq.witnesses[i - 1]} for vertex {v} is not legal at index {i}",
                tuple(found), notes,
            )
        found.append(min(legal))
        st = append(st, g, v)
    return VerifyResult(True, None, "", tuple(found), notes)


def certify(g: Graph, variant: Variant, k: int, order: Sequence[int]) -> GrundySequence:
    """Verify ``order`` and return it with least-id witnesses attached."""
    seq = GrundySequence(variant, k, tuple(order))
    res = verify(g, seq)
    if not res.valid:
        raise SequenceError(res.reason)
    return GrundySequence(variant, k, seq.order, res.witnesses)


def greedy_extend(
    g: Graph, seq: GrundySequence, tie_rule: TieRule = TieRule.MIN_ID
) -> GrundySequence:
    """Extend ``seq`` until no vertex can be appended.

    ``MIN_ID`` appends the smallest legal vertex; ``MAX_NEW_COVERAGE`` the
    legal vertex with the most legal witnesses (ties to the smallest id).
    """
    variant, k = seq.variant, seq.k
    st = state_of(g, seq.order)
    order = list(seq.order)
    while True:
        best, best_key = None, None
        for v in range(g.n):
            if v in st.chosen:
                continue
            w = legal_witnesses(g, st, variant, k, v)
            if not w:
                continue
            if tie_rule is TieRule.MIN_ID:
                best = v
                break
            key = -len(w)
            if best_key is None or key < best_key:
                best, best_key = v, key
        if best is None:
            break
        order.append(best)
        st = append(st, g, best)
    if len(order) == len(seq.order):
        return seq
    return certify(g, variant, k, order)


def is_maximal(g: Graph, seq: GrundySequence) -> bool:
    st = state_of(g, seq.order)
    return not any(
        legal_witnesses(g, st, seq.variant, seq.k, v) for v in range(g.n) if v not in st.chosen
    )

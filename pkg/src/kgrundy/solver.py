"""Exact k-Grundy numbers by depth-first search over chosen-vertex sets.

Whether a vertex can be appended depends only on the *set* chosen so far,
not on its order, so the depth reachable from a set is a property of the
set.  Each set is therefore expanded at most once (memo of explored sets,
keyed by an n-bit word).  Two prunings keep the search small:

* a vertex that is not appendable now never becomes appendable later
  (coverage counts only grow), so ``|chosen| + #appendable`` bounds every
  extension;
* optionally, the search stops as soon as it reaches the minimum-degree
  upper bound of the variant.

The reported witness does not come from the search itself: once the value
is known, a second pass finds the lexicographically least sequence of that
length, so the witness is identical for every worker count.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructions import (
    cube_formula,
    degree_upper_bound,
    hypercube_L_witness,
    is_canonical_hypercube,
)
from .forcing import k_forcing_number, z_sequence_from_forcing
from .graph import Graph
from .sequences import (
    GrundySequence,
    TieRule,
    Variant,
    certify,
    greedy_extend,
    legal_witnesses,
    new_state,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 24


class SolverError(ValueError):
    pass


class CapacityError(SolverError):
    pass


class PreconditionError(SolverError):
    pass


@dataclass
class SolverConfig:
    memo_limit: int = 8_000_000
    use_degree_bound_pruning: bool = True
    allow_Z_below_delta: bool = False
    parallel_width: int = 1
    max_vertices: int = DEFAULT_MAX_VERTICES

    def __post_init__(self):
        if self.memo_limit < 0:
            raise SolverError("memo_limit must be >= 0")
        if self.parallel_width < 1:
            raise SolverError("parallel_width must be >= 1")


@dataclass
class SolveStats:
    states_visited: int = 0
    memo_hits: int = 0
    elapsed: float = 0.0
    upper_bound: int = 0
    reached_upper_bound: bool = False
    greedy_lower_bound: int = 0
    witness_states: int = 0

    def to_dict(self, include_time: bool = True) -> dict:
        d = dict(self.__dict__)
        if not include_time:
            d.pop("elapsed")
        return d


@dataclass
class SolveResult:
    value: int
    witness: GrundySequence
    stats: SolveStats = field(default_factory=SolveStats)


@dataclass
class Bounds:
    lower: int
    upper: int
    witness: GrundySequence
    lower_source: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of vertices with equal open or equal closed neighborhoods.

    Swapping two such twins is an automorphism, so among unchosen twins only
    the least one needs to be branched on.
    """
    by_open: dict[int, list[int]] = {}
    by_closed: dict[int, list[int]] = {}
    for v, m in enumerate(g.masks):
        by_open.setdefault(m, []).append(v)
        by_closed.setdefault(m | (1 << v), []).append(v)
    classes = [c for c in by_open.values() if len(c) > 1]
    classes += [c for c in by_closed.values() if len(c) > 1]
    return sorted(classes)


def _tables(g: Graph, variant: Variant):
    cand = [m | (1 << v) if variant.candidate_closed else m for v, m in enumerate(g.masks)]
    hit = [sorted(g.adj[v] | {v}) if variant.count_closed else sorted(g.adj[v]) for v in range(g.n)]
    lower_twins = [0] * g.n
    for cls in twin_classes(g):
        for i, v in enumerate(cls):
            lower_twins[v] = sum(1 << u for u in cls[:i])
    return cand, hit, lower_twins


def _explore(g: Graph, variant: Variant, k: int, prefix: list[int], best: int,
             upper: int, stop_at_upper: bool, memo_limit: int) -> tuple[int, int, int, bool]:
    """Deepest reachable depth from ``prefix`` if it beats ``best``.

    Returns ``(best, states, memo_hits, reached_upper)``.
    """
    n = g.n
    full = (1 << n) - 1
    cand, hit, lower_twins = _tables(g, variant)
    counts = [0] * n
    avail = full
    chosen0 = 0
    for v in prefix:
        chosen0 |= 1 << v
        for u in hit[v]:
            counts[u] += 1
            if counts[u] == k:
                avail &= ~(1 << u)
    visited: set[int] = set()
    states = hits = 0
    depth0 = len(prefix)

    class Stop(Exception):
        pass

    def dfs(chosen: int, depth: int) -> None:
        nonlocal avail, best, states, hits
        if chosen in visited:
            hits += 1
            return
        if len(visited) < memo_limit:
            visited.add(chosen)
        states += 1
        if depth > best:
            best = depth
            if stop_at_upper and best >= upper:
                raise Stop
        legal = []
        for v in _bits(full & ~chosen):
            w = cand[v] & avail
            if w:
                legal.append((w.bit_count(), v))
        if depth + len(legal) <= best:
            return
        legal.sort()
        for _, v in legal:
            if lower_twins[v] & ~chosen:
                continue
            hv = hit[v]
            for u in hv:
                c = counts[u] + 1
                counts[u] = c
                if c == k:
                    avail &= ~(1 << u)
            dfs(chosen | (1 << v), depth + 1)
            for u in hv:
                if counts[u] == k:
                    avail |= 1 << u
                counts[u] -= 1

    reached = False
    try:
        dfs(chosen0, depth0)
    except Stop:
        reached = True
    return best, states, hits, reached


def _explore_branch(args):
    return _explore(*args)


def _lex_witness(g: Graph, variant: Variant, k: int, target: int, memo_limit: int) -> tuple[list[int], int]:
    """Lexicographically least legal sequence of length ``target``."""
    n = g.n
    full = (1 << n) - 1
    cand, hit, lower_twins = _tables(g, variant)
    counts = [0] * n
    avail = full
    dead: set[int] = set()
    path: list[int] = []
    states = 0

    def go(chosen: int) -> bool:
        nonlocal avail, states
        if len(path) >= target:
            return True
        if chosen in dead:
            return False
        states += 1
        legal = [v for v in _bits(full & ~chosen) if cand[v] & avail]
        if len(path) + len(legal) >= target:
            for v in legal:
                if lower_twins[v] & ~chosen:
                    continue
                for u in hit[v]:
                    counts[u] += 1
                    if counts[u] == k:
                        avail &= ~(1 << u)
                path.append(v)
                if go(chosen | (1 << v)):
                    return True
                path.pop()
                for u in hit[v]:
                    if counts[u] == k:
                        avail |= 1 << u
                    counts[u] -= 1
        if len(dead) < memo_limit:
            dead.add(chosen)
        return False

    if not go(0):
        raise AssertionError(f"no sequence of length {target}; search value is inconsistent")
    return path, states


def _check(g: Graph, variant: Variant, k: int, max_vertices: int, allow_z: bool) -> None:
    if k < 1:
        raise SolverError(f"k must be >= 1, got {k}")
    if g.n > max_vertices:
        raise CapacityError(
            f"n={g.n} exceeds the exact-search guard ({max_vertices} vertices); "
            "use bounds-only mode (grundy_bounds / `bounds`) or raise max_vertices, "
            "memory grows as 2^n"
        )
    if variant is Variant.Z and g.n and k > g.min_degree() and not allow_z:
        raise PreconditionError(
            f"Z-sequences need k <= minimum degree (k={k}, delta={g.min_degree()}); "
            "set allow_Z_below_delta to override"
        )


def upper_bound(g: Graph, variant: Variant, k: int) -> int:
    """Minimum-degree bound, capped at ``n``."""
    if g.n == 0:
        return 0
    return min(g.n, degree_upper_bound(g, variant, k))


def grundy_number(g: Graph, variant: Variant | str, k: int, cfg: SolverConfig | None = None) -> SolveResult:
    """Exact maximum length of a k-sequence of the given variant."""
    cfg = cfg or SolverConfig()
    variant = Variant.parse(variant)
    _check(g, variant, k, cfg.max_vertices, cfg.allow_Z_below_delta)
    t0 = time.perf_counter()
    upper = upper_bound(g, variant, k)
    stats = SolveStats(upper_bound=upper)
    greedy = max(
        (greedy_extend(g, GrundySequence(variant, k, ()), rule) for rule in TieRule), key=len
    )
    best = stats.greedy_lower_bound = len(greedy)
    stop = cfg.use_degree_bound_pruning
    if stop and best >= upper:
        stats.reached_upper_bound = True
    elif cfg.parallel_width == 1 or g.n < 2:
        best, stats.states_visited, stats.memo_hits, stats.reached_upper_bound = _explore(
            g, variant, k, [], best, upper, stop, cfg.memo_limit
        )
    else:
        st = new_state(g)
        roots = [v for v in range(g.n) if legal_witnesses(g, st, variant, k, v)]
        jobs = [(g, variant, k, [v], best, upper, stop, cfg.memo_limit) for v in roots]
        with ProcessPoolExecutor(max_workers=cfg.parallel_width) as pool:
            for b, s, h, r in pool.map(_explore_branch, jobs):
                best = max(best, b)
                stats.states_visited += s
                stats.memo_hits += h
                stats.reached_upper_bound |= r
    if stats.reached_upper_bound:
        log.info("search stopped at the degree upper bound %d", upper)
    order, stats.witness_states = _lex_witness(g, variant, k, best, cfg.memo_limit)
    stats.elapsed = time.perf_counter() - t0
    return SolveResult(best, certify(g, variant, k, order), stats)


def grundy_bounds(g: Graph, variant: Variant | str, k: int,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> Bounds:
    """Lower and upper bounds without exhaustive search.

    The lower bound is the best of the two greedy sequences, the forcing
    construction ``n - F_k`` for Z (when ``n <= max_vertices``) and the
    hypercube construction for L on a bit-labelled ``Q_d``.
    """
    variant = Variant.parse(variant)
    if k < 1:
        raise SolverError(f"k must be >= 1, got {k}")
    empty = GrundySequence(variant, k, ())
    cands = [(greedy_extend(g, empty, rule), f"greedy:{rule.value}") for rule in TieRule]
    if variant is Variant.Z and 0 < g.n <= max_vertices:
        fr = k_forcing_number(g, k, max_vertices=max_vertices)
        zs = z_sequence_from_forcing(g, k, fr.trace)
        cands.append((certify(g, variant, k, zs.order), "forcing:n-F_k"))
    if variant is Variant.L:
        d = is_canonical_hypercube(g)
        if d is not None and d >= 2 and k <= d:
            seq = hypercube_L_witness(d, k)
            assert len(seq) == cube_formula(d, k)
            cands.append((seq, "hypercube-construction"))
    witness, source = max(cands, key=lambda c: len(c[0]))
    return Bounds(len(witness), upper_bound(g, variant, k), witness, source)

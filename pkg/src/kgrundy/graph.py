"""Immutable simple graphs, named families and the Cartesian product.

Vertices are always the dense integers ``0..n-1``.  Neighbor sets and the
equivalent bitmasks are built once at construction time because every
search in this package is dominated by membership tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    """Invalid graph data (self-loop, out-of-range id, bad parameters)."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "masks", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        self.masks: tuple[int, ...] = tuple(sum(1 << u for u in s) for s in nbrs)
        self._edges = tuple(sorted((u, v) for u in range(n) for v in nbrs[u] if u < v))

    # -- neighborhoods -------------------------------------------------
    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    # -- global quantities ---------------------------------------------
    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def min_degree(self) -> int:
        return min_degree(self)

    def max_degree(self) -> int:
        if self.n == 0:
            raise GraphError("max degree of the empty graph is undefined")
        return max(self.degrees())

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..m-1`` plus the new->old id map."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(old), edges), old

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def __len__(self) -> int:
        return self.n


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(len(s) for s in g.adj)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

class Family(enum.Enum):
    CYCLE = "cycle"
    PATH = "path"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "kbipartite"
    HYPERCUBE = "hypercube"
    GRID = "grid"
    TREE_CYCLE_GADGET = "gadget"
    TRIANGULAR_GRID = "trigrid"
    ER_RANDOM = "er"


_ARITY = {
    Family.CYCLE: 1,
    Family.PATH: 1,
    Family.COMPLETE: 1,
    Family.COMPLETE_BIPARTITE: 2,
    Family.HYPERCUBE: 1,
    Family.GRID: 2,
    Family.TREE_CYCLE_GADGET: 1,
    Family.TRIANGULAR_GRID: 2,
    Family.ER_RANDOM: 3,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family with its parameters.

    ``ER_RANDOM`` takes ``(n, p, seed)``; every other family takes positive
    integers.  The textual form used by the CLI is ``name:p1,p2,...``, for
    example ``kbipartite:4,3`` or ``er:8,0.5,17``.
    """

    family: Family
    params: tuple

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        fam, p = self.family, self.params
        if len(p) != _ARITY[fam]:
            raise GraphError(f"{fam.value} takes {_ARITY[fam]} parameter(s), got {len(p)}")
        if fam is Family.ER_RANDOM:
            n, prob, seed = p
            if not isinstance(n, int) or n < 1:
                raise GraphError(f"er: n must be a positive integer, got {n!r}")
            if not 0.0 <= float(prob) <= 1.0:
                raise GraphError(f"er: p must lie in [0, 1], got {prob!r}")
            if not isinstance(seed, int) or seed < 0:
                raise GraphError(f"er: seed must be a non-negative integer, got {seed!r}")
            return
        for x in p:
            if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                raise GraphError(f"{fam.value}: parameters must be positive integers, got {p}")
        if fam is Family.CYCLE and p[0] < 3:
            raise GraphError(f"cycle requires n >= 3, got {p[0]}")
        if fam is Family.TREE_CYCLE_GADGET and p[0] < 3:
            raise GraphError(f"gadget requires height h >= 3, got {p[0]}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        name, _, rest = text.strip().partition(":")
        try:
            fam = Family(name.strip().lower())
        except ValueError:
            names = ", ".join(f.value for f in Family)
            raise GraphError(f"unknown family {name!r}; expected one of: {names}") from None
        raw = [x.strip() for x in rest.split(",")] if rest.strip() else []
        try:
            if fam is Family.ER_RANDOM:
                if len(raw) == 2:
                    raw.append("0")
                params = (int(raw[0]), float(raw[1]), int(raw[2])) if len(raw) == 3 else tuple(raw)
            else:
                params = tuple(int(x) for x in raw)
        except ValueError:
            raise GraphError(f"cannot parse parameters in {text!r}") from None
        return cls(fam, params)

    def __str__(self) -> str:
        return f"{self.family.value}:{','.join(str(x) for x in self.params)}"


def cycle(n: int) -> Graph:
    return generate(FamilySpec(Family.CYCLE, (n,)))


def path(n: int) -> Graph:
    return generate(FamilySpec(Family.PATH, (n,)))


def complete(n: int) -> Graph:
    return generate(FamilySpec(Family.COMPLETE, (n,)))


def complete_bipartite(m: int, n: int) -> Graph:
    return generate(FamilySpec(Family.COMPLETE_BIPARTITE, (m, n)))


def hypercube(d: int) -> Graph:
    return generate(FamilySpec(Family.HYPERCUBE, (d,)))


def grid(m: int, n: int) -> Graph:
    return generate(FamilySpec(Family.GRID, (m, n)))


def tree_cycle_gadget(h: int) -> Graph:
    return generate(FamilySpec(Family.TREE_CYCLE_GADGET, (h,)))


def triangular_grid(rows: int, cols: int) -> Graph:
    return generate(FamilySpec(Family.TRIANGULAR_GRID, (rows, cols)))


def er_random(n: int, p: float, seed: int = 0) -> Graph:
    return generate(FamilySpec(Family.ER_RANDOM, (n, p, seed)))


def gadget_levels(h: int) -> list[list[int]]:
    """Vertex ids of the tree-cycle gadget grouped by level (index 0 = roots).

    The first tree occupies ids ``0..2^h-2`` in heap order (children of ``i``
    are ``2i+1`` and ``2i+2``); the second tree is the same layout shifted by
    ``2^h - 1``.
    """
    size = 2**h - 1
    return [
        [t * size + i for t in (0, 1) for i in range(2 ** (lvl - 1) - 1, 2**lvl - 1)]
        for lvl in range(1, h + 1)
    ]


def _gadget_edges(h: int) -> list[tuple[int, int]]:
    size = 2**h - 1
    edges = []
    for t in (0, 1):
        off = t * size
        for i in range((size - 1) // 2):
            edges.append((off + i, off + 2 * i + 1))
            edges.append((off + i, off + 2 * i + 2))
    first_leaf = 2 ** (h - 1) - 1
    left = [first_leaf + j for j in range(2 ** (h - 1))]
    right = [size + v for v in left]
    # leaves alternate between the trees around one cycle: T0 T'0 T1 T'1 ...
    ring = [v for pair in zip(left, right) for v in pair]
    edges += [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    return edges


def generate(spec: FamilySpec) -> Graph:
    """Build the graph named by ``spec``."""
    fam, p = spec.family, spec.params
    if fam is Family.CYCLE:
        (n,) = p
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if fam is Family.PATH:
        (n,) = p
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if fam is Family.COMPLETE:
        (n,) = p
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if fam is Family.COMPLETE_BIPARTITE:
        m, n = p
        return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    if fam is Family.HYPERCUBE:
        (d,) = p
        return Graph(2**d, [(v, v ^ (1 << b)) for v in range(2**d) for b in range(d) if not v >> b & 1])
    if fam is Family.GRID:
        m, n = p
        return cartesian_product(path(m), path(n))
    if fam is Family.TREE_CYCLE_GADGET:
        (h,) = p
        return Graph(2 * (2**h - 1), _gadget_edges(h))
    if fam is Family.TRIANGULAR_GRID:
        rows, cols = p
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
                    if c + 1 < cols:
                        edges.append((v, v + cols + 1))
        return Graph(rows * cols, edges)
    if fam is Family.ER_RANDOM:
        n, prob, seed = p
        rng = np.random.Generator(np.random.PCG64(seed))
        draws = rng.random(n * (n - 1) // 2)
        pairs = ((i, j) for i in range(n) for j in range(i + 1, n))
        return Graph(n, [e for e, x in zip(pairs, draws) if x < prob])
    raise GraphError(f"unhandled family {fam}")  # pragma: no cover


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(u, v)`` gets id ``u * h.n + v``."""
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product requires two nonempty graphs")
    w = h.n
    edges = [(u * w + a, u * w + b) for u in range(g.n) for a, b in h.edges]
    edges += [(a * w + v, b * w + v) for a, b in g.edges for v in range(w)]
    return Graph(g.n * w, edges)

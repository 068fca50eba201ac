"""graph6 and edge-list serialization."""

from __future__ import annotations

import enum
from pathlib import Path
from typing import Iterator

from .graph import Graph, GraphError


class GraphFormat(enum.Enum):
    GRAPH6 = "g6"
    EDGE_LIST = "edges"


class GraphParseError(GraphError):
    """Malformed graph text; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


# -- graph6 ------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> str:
    bits = [1 if i in g.adj[j] else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[i : i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        s, base = s[10:], 10
    if not s:
        raise GraphParseError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", base + i)
    if ord(s[0]) < 126:
        n, pos = ord(s[0]) - 63, 1
    else:
        if len(s) < 4 or ord(s[1]) == 126:
            raise GraphParseError("unsupported or truncated graph6 size field", base)
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
    need = n * (n - 1) // 2
    nbytes = -(-need // 6)
    body = s[pos:]
    if len(body) != nbytes:
        raise GraphParseError(
            f"graph6 body has {len(body)} bytes, expected {nbytes} for n={n}", base + pos
        )
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[idx // 6]) - 63
            if byte >> (5 - idx % 6) & 1:
                edges.append((i, j))
            idx += 1
    if need % 6 and (ord(body[-1]) - 63) & ((1 << (6 - need % 6)) - 1):
        raise GraphParseError("nonzero graph6 padding bits", base + pos + nbytes - 1)
    return Graph(n, edges)


# -- edge list ---------------------------------------------------------------

def to_edge_list(g: Graph) -> str:
    lines = [f"# n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Whitespace edge list with 0-based ids, one edge per line.

    Blank lines and ``#`` comments are ignored, except a ``# n <count>``
    header which fixes the vertex count (otherwise ``max id + 1``).
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    n_header = None
    offset = 0
    for line in text.splitlines(keepends=True):
        start = offset
        offset += len(line.encode())
        body = line.strip()
        if not body:
            continue
        if body.startswith("#"):
            parts = body[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                try:
                    n_header = int(parts[1])
                except ValueError:
                    raise GraphParseError(f"bad vertex-count header {body!r}", start) from None
            continue
        parts = body.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two vertex ids, got {body!r}", start)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex id in {body!r}", start) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"negative vertex id in {body!r}", start)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", start)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"repeated edge {key}", start)
        seen.add(key)
        edges.append(key)
    n = max((max(e) for e in edges), default=-1) + 1
    if n_header is not None:
        if n_header < n:
            raise GraphParseError(f"header says n={n_header} but ids reach {n - 1}", 0)
        n = n_header
    return Graph(n, edges)


def parse(text: str, fmt: GraphFormat | str = GraphFormat.GRAPH6) -> Graph:
    fmt = GraphFormat(fmt)
    return from_graph6(text) if fmt is GraphFormat.GRAPH6 else from_edge_list(text)


def serialize(g: Graph, fmt: GraphFormat | str = GraphFormat.GRAPH6) -> str:
    fmt = GraphFormat(fmt)
    return to_graph6(g) if fmt is GraphFormat.GRAPH6 else to_edge_list(g)


def read_graph6_file(path: str | Path) -> Iterator[tuple[str, Graph]]:
    """Yield ``(descriptor, graph)`` for each non-empty line of a graph6 file."""
    path = Path(path)
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield f"{path.name}:{lineno}", from_graph6(line)
            except GraphParseError as exc:
                raise GraphParseError(f"{path}:{lineno}: {exc}", exc.offset) from None


def read_graph(path: str | Path, fmt: GraphFormat | str | None = None) -> Graph:
    """Read a single graph; format inferred from the suffix when not given."""
    path = Path(path)
    if fmt is None:
        fmt = GraphFormat.GRAPH6 if path.suffix in (".g6", ".graph6") else GraphFormat.EDGE_LIST
    text = path.read_text()
    if GraphFormat(fmt) is GraphFormat.GRAPH6:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphParseError(f"{path} holds {len(lines)} graph6 lines, expected 1", 0)
        text = lines[0]
    return parse(text, fmt)

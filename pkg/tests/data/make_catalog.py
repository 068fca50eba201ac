"""Regenerate connected_le7.g6: every connected graph on 1..7 vertices, one
per isomorphism class, in graph-atlas order.  Needs networkx (not a runtime
dependency of kgrundy)."""

from pathlib import Path

import networkx as nx

from kgrundy.graph import Graph
from kgrundy.graphio import to_graph6


def main() -> None:
    lines = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or not nx.is_connected(h):
            continue
        lines.append(to_graph6(Graph(h.number_of_nodes(), h.edges())))
    out = Path(__file__).with_name("connected_le7.g6")
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {out}")


if __name__ == "__main__":
    main()

"""Auditing the comparison inequalities over every connected graph on <= 6 vertices.

Within the standing hypothesis k <= minimum degree every check passes.  Outside
it the strict gap between the plain and L values can close, e.g. on K_2 with
k = 2 both values are 2.
"""

from collections import Counter
from pathlib import Path

from kgrundy.lab import audit_bounds, graph6_stream, replay

catalog = Path(__file__).resolve().parents[1] / "tests" / "data" / "connected_le7.g6"
stream = [(d, g) for d, g in graph6_stream(catalog) if g.n <= 6]
report = audit_bounds(stream, ks=[1, 2, 3])
print(f"{len(report.records)} graphs, totals {report.totals()}")

by_check = Counter(c.name for _, c in report.failures())
print("failing checks:", dict(by_check))
rec, chk = report.failures()[0]
print(f"example: {rec.instance} ({rec.graph6}) {chk.name}: {chk.detail}")
print("replay:", replay(rec)[0])

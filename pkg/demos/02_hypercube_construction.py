"""The hypercube L-construction, phase by phase, and where exact search stops.

The construction starts from an independent set of half the vertices (the
even-weight vertices, built from two 3-cube patterns), then repeatedly adds
vertices that hit a partner across one coordinate for the j-th time.
"""

from kgrundy.constructions import cube_formula, hypercube_L_phases, hypercube_L_witness
from kgrundy.graph import hypercube
from kgrundy.lab import check_cube_conjecture
from kgrundy.sequences import verify

d, k = 4, 2
print(f"Q_{d}, k = {k}")
for name, vertices in hypercube_L_phases(d, k):
    print(f"  {name:<10} {len(vertices):>2} vertices: {[format(v, f'0{d}b') for v in vertices]}")
seq = hypercube_L_witness(d, k)
print(f"  total {len(seq)} = ceil(2^d - 2^(d-k-1)) = {cube_formula(d, k)}; valid: {verify(hypercube(d), seq).valid}")

# %% exact for d <= 4, bound pinch or open interval beyond
print("\n d  k  formula  interval   status")
for d in range(2, 7):
    for k in range(1, d + 1):
        c = check_cube_conjecture(d, k)
        print(f"{d:>2} {k:>2} {c.formula:>8}  [{c.lower:>2}, {c.upper:>2}]  {c.status.value}")

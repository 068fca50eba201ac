"""k-forcing gives Z-sequences; on small graphs the two are not always tight.

Replaying a k-forcing process backwards yields a Z-sequence of length
n - F_k, so the Z-value is at least n - F_k.  For k = 1 these always agree.
For k = 2 the smallest graphs already show a strict gap.
"""

from kgrundy.forcing import k_forcing_number, z_sequence_from_forcing
from kgrundy.graph import cycle
from kgrundy.graphio import from_graph6
from kgrundy.lab import check_forcing_conjecture
from kgrundy.sequences import verify

g = cycle(5)
fr = k_forcing_number(g, 2)
print(f"C_5: F_2 = {fr.F_k} from {sorted(fr.witness_set)}")
for b, forced in fr.trace.waves:
    print(f"  {b} forces {list(forced)}")
seq = z_sequence_from_forcing(g, 2, fr.trace)
print(f"  reversed waves -> Z-sequence {seq.order} with witnesses {seq.witnesses}, valid {verify(g, seq).valid}")

# %% a 6-vertex graph of minimum degree 2 where the bound is strict
g = from_graph6("EO~o")
print("\nEO~o:", {v: sorted(g.adj[v]) for v in g})
fc = check_forcing_conjecture(g, 2)
print(f"  Z-value {fc.zk} via {fc.z_witness.order} (witnesses {fc.z_witness.witnesses})")
print(f"  F_2 = {g.n - fc.n_minus_fk} via {list(fc.forcing_set)}, so n - F_2 = {fc.n_minus_fk}")
print(f"  equal: {fc.equal}")

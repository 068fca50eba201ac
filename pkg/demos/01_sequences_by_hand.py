"""Building k-sequences one step at a time, then letting the solver search.

A k-sequence grows by appending a vertex v that still has a *witness*: a
vertex u near v that earlier members have covered fewer than k times.  The
four variants differ only in which neighborhoods are used (open or closed)
for the candidate side and for the counting side.
"""

from kgrundy import GrundySequence, Variant, append, grundy_number, legal_witnesses, new_state, verify
from kgrundy.graph import cycle

g = cycle(6)
print("C_6, k = 2, plain (closed/closed) variant\n")

# %% step through the cycle in order and watch the coverage counts
st = new_state(g)
for v in range(6):
    w = legal_witnesses(g, st, Variant.PLAIN, 2, v)
    if not w:
        print(f"vertex {v}: no witness left, stop")
        break
    st = append(st, g, v)
    closed = [st.closed_count(u) for u in range(g.n)]
    print(f"append {v}: witnesses {sorted(w)}  closed counts now {closed}")

# %% the verifier reports the first bad step
bad = GrundySequence(Variant.PLAIN, 2, (0, 1, 2, 3, 4, 5))
res = verify(g, bad)
print(f"\nwhole cycle as a sequence -> valid={res.valid}, {res.reason}")

# %% exact values for every variant
print()
for variant in Variant:
    r = grundy_number(g, variant, 2)
    print(f"{variant.value:>5}: value {r.value}, lexicographically least witness {r.witness.order}")

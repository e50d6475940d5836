"""Splitting the degree-n chains into normalized and degenerate parts."""

from cubical import cset as cs
from cubical import moore as mo
from cubical.moore import Variant

for X in (cs.circle(), cs.sphere(2), cs.torus()):
    for n in range(5):
        r = mo.check_decomposition(X, n, Variant.SNEG)
        print(f"{X.name} n={n}: A={r.rank_A} N={r.rank_N} D={r.rank_D} ok={r.ok}")

# per-dimension multiplicities for the torus in degree 4
r = mo.check_decomposition(cs.torus(), 4, Variant.SNEG)
for i, (rank_n, maps) in sorted(r.counts.items()):
    print(f"  i={i}: rank N_i={rank_n} times {maps} maps")

"""A degenerate square whose faces all vanish.

On the interval with its basepoint collapsed, the chain below sits in the
normalized group and in the span of all degenerate cubes at once.  Dropping
the positive connections from the quotient removes the overlap.
"""

from cubical import moore as mo

r = mo.counterexample_witness()
print("chain:", " ".join(f"{a:+d} {c}" for c, a in r.chain.items()))
for (i, e), image in sorted(r.faces.items()):
    print(f"  face {i},{e}: {image or 0}")
for v, rank in r.intersections.items():
    print(f"rank of N meet D ({v.value}): {rank}")

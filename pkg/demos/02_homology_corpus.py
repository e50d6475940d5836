"""Reduced homology of the built-in cubical sets under each variant."""

from cubical import cset as cs
from cubical import moore as mo
from cubical.moore import Variant

for name in cs.CORPUS:
    X = cs.builtin(name)
    print(name)
    for v in Variant:
        groups = [str(mo.reduced_homology(X, v, None, n)) for n in range(4)]
        print(f"  {v.value:>4}: " + "  ".join(groups))

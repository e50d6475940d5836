"""The chain homotopy built from a contraction of the interval."""

from cubical import homotopy_checks as hc
from cubical.moore import Variant

d = hc.interval_contraction()
for v in Variant:
    r = hc.verify_chain_homotopy(d, v, 3)
    print(r)
r = hc.verify_chain_homotopy(hc.endpoint_path(), Variant.NONE, 2)
print("alpha_0 for the endpoint path:", r.alpha[0])

"""A monoidal double category, read both ways round.

Chains in the two-element lattice form a pseudocategory in pseudomonoids
(tensor = pointwise meet).  Currying gives a model of the pseudocategory
sketch valued in pseudomonoid models; transposing gives a model of the
pseudomonoid sketch valued in pseudocategory models.  Transposing back
recovers the original byte for byte.
"""
import time

from esketch.builders import chain_double_multimodel
from esketch.closure import check_multimodel, curry, symmetry_transpose
from esketch.models import check_model

t0 = time.perf_counter()
mm = chain_double_multimodel([0, 1], lambda a, b: a <= b, min, 1)
print("as a multimodel:", check_multimodel(mm))

m = curry(mm, "right")
print("pseudocategory in pseudomonoids:", check_model(m))
m2 = symmetry_transpose(m)
print("pseudomonoid in pseudocategories:", check_model(m2))
back = symmetry_transpose(m2)
print("round trip is byte-identical:", back.dumps() == m.dumps())
print(f"{time.perf_counter() - t0:.1f}s")

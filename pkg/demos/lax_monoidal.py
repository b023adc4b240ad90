"""Lax monoidal functors as lax transformations of pseudomonoid models.

A functor from the discrete monoidal category Z/3 into the one-object
category B(Z/2) is lax monoidal exactly when its structure map is a
2-cocycle.  Coboundaries pass; a lone non-zero value does not.
"""
from esketch import fincat as fc
from esketch.builders import (discrete_monoidal, lax_monoidal_transformation,
                              pseudomonoid_model, strict_monoid_category)
from esketch.models import check_model, check_transformation

C, to, tm, u = discrete_monoidal([0, 1, 2], lambda a, b: (a + b) % 3, 0)
D, *tensor_d = strict_monoid_category([0, 1], lambda a, b: (a + b) % 2, 0)
M, N = pseudomonoid_model(C, to, tm, u), pseudomonoid_model(D, *tensor_d)
print("source model:", check_model(M))
print("target model:", check_model(N))

F = fc.FinFunctor(C, D, [0, 0, 0], [0, 0, 0])
f = {0: 0, 1: 1, 2: 0}


def coboundary(a, b):
    return (f[a] + f[b] + f[(a + b) % 3]) % 2


def spike(a, b):
    return 1 if (a, b) == (1, 1) else 0


for name, mu in [("coboundary", coboundary), ("single spike", spike)]:
    t = lax_monoidal_transformation(M, N, F, mu, 0)
    print(f"{name:>12}: {check_transformation(t)}")

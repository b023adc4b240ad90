import itertools
import json

import pytest
from hypothesis import given, strategies as st

from esketch import fincat as fc
from esketch.builders import (codiscrete_monoidal, complete_transformation, discrete_monoidal,
                              involution_model, lax_monoidal_transformation, pseudomonoid_model,
                              strict_monoid_category, thin_functor, thin_monoidal,
                              trivial_and_swap)
from esketch.enhanced import Weakness as W
from esketch.errors import InvalidData, ShapeMismatch
from esketch.models import (ModTarget, Model, Modification, WTransform, check_model,
                            check_modification, check_transformation,
                            compose_transformations, enumerate_modifications,
                            enumerate_transformations, identity_modification,
                            identity_transformation, pointwise_limit, same_transformation,
                            transport)
from esketch.sketches import builtin

from oracles import lax_monoidal_axioms


def z2():
    return strict_monoid_category([0, 1], lambda a, b: (a + b) % 2, 0)


def z3_discrete():
    return discrete_monoidal([0, 1, 2], lambda a, b: (a + b) % 3, 0)


MONOIDAL = {
    "B(Z/2)": z2,
    "Z/3 discrete": z3_discrete,
    "thin max": lambda: thin_monoidal([0, 1], lambda a, b: a <= b, max, 0),
    "codiscrete xor": lambda: codiscrete_monoidal([0, 1], lambda a, b: a ^ b, 0),
}


@pytest.mark.parametrize("name", MONOIDAL)
def test_monoidal_categories_are_models(name):
    assert check_model(pseudomonoid_model(*MONOIDAL[name]()))


def test_wrong_tensor_is_rejected():
    C, to, tm, u = z3_discrete()
    M = pseudomonoid_model(C, to, tm, u)
    M2 = M.obj("M2")
    const = fc.constant_functor(M2, C, 1)
    bad = Model(M.sketch, M.target, M.objects, dict(M.morphisms, m=const), M.cells)
    report = check_model(bad)
    assert not report
    assert report.details["at"] in ("alpha", "lambda", "rho")


def test_missing_value_is_located():
    M = pseudomonoid_model(*z2())
    cells = {k: v for k, v in M.cells.items() if k != "rho"}
    report = check_model(Model(M.sketch, M.target, M.objects, M.morphisms, cells))
    assert not report and report.details["at"] == "rho"


def test_involution_must_square_to_identity():
    I = fc.iso()
    assert check_model(involution_model(I, thin_functor(I, I, [1, 0])))
    C = fc.from_preorder([0, 1, 2], lambda a, b: True)
    cycle = thin_functor(C, C, [1, 2, 0])
    assert not check_model(involution_model(C, cycle))


def test_trivial_and_swap_counts():
    M, N = trivial_and_swap()
    assert enumerate_transformations(M, N, W.S, W.P) == []
    found = enumerate_transformations(M, N, W.P, W.P)
    assert len(found) == 2
    assert all(check_transformation(t) for t in found)
    assert not same_transformation(*found)


def test_strict_reading_rejects_at_the_involution():
    M, N = trivial_and_swap()
    t = enumerate_transformations(M, N, W.P, W.P)[0]
    report = check_transformation(WTransform(M, N, W.S, W.P, t.components, t.witnesses))
    assert not report and report.details["at"] == "i"


def test_enumeration_is_complete_on_small_involutions():
    cats = [fc.terminal(), fc.iso(), fc.discrete("ab")]
    for C, D in itertools.product(cats, repeat=2):
        for i, j in itertools.product(fc.enumerate_functors(C, C), fc.enumerate_functors(D, D)):
            M, N = involution_model(C, i), involution_model(D, j)
            if not (check_model(M) and check_model(N)):
                continue
            strict = enumerate_transformations(M, N, W.S, W.S)
            expected = [F for F in fc.enumerate_functors(C, D)
                        if fc.compose_functors(j, F) == fc.compose_functors(F, i)]
            assert len(strict) == len(expected)


def lax_mu_case(mu_table, eta):
    C, to, tm, u = z3_discrete()
    D, to2, tm2, u2 = z2()
    M, N = pseudomonoid_model(C, to, tm, u), pseudomonoid_model(D, to2, tm2, u2)
    F = fc.FinFunctor(C, D, [0, 0, 0], [0, 0, 0])

    def mu(a, b):
        return mu_table[3 * a + b]

    t = lax_monoidal_transformation(M, N, F, mu, eta)
    oracle = lax_monoidal_axioms(C, (to, tm, u), D, (to2, tm2, u2), F, mu, eta)
    return t, oracle


@given(st.lists(st.integers(0, 1), min_size=9, max_size=9), st.integers(0, 1))
def test_lax_monoidal_functors_agree_with_oracle(mu_table, eta):
    t, oracle = lax_mu_case(mu_table, eta)
    assert bool(check_transformation(t)) == (oracle is None)


def test_coboundary_is_lax_monoidal():
    f = {0: 0, 1: 1, 2: 0}
    table = [(f[a] + f[b] + f[(a + b) % 3]) % 2 for a in range(3) for b in range(3)]
    t, oracle = lax_mu_case(table, 0)
    assert oracle is None and check_transformation(t)


def test_transport_weakens_and_flips():
    M, N = trivial_and_swap()
    t = enumerate_transformations(M, N, W.P, W.P)[0]
    lax = transport(t, W.P, W.L)
    assert check_transformation(lax)
    colax = transport(t, W.P, W.C)
    assert check_transformation(colax)
    assert transport(colax, W.P, W.L).witnesses == t.witnesses


def test_lax_points_of_an_arrow():
    C = fc.arrow()
    M = involution_model(C, fc.identity_functor(C))
    one = fc.terminal()
    P = involution_model(one, fc.identity_functor(one))
    laxes = enumerate_transformations(P, M, W.L, W.L)
    assert len(laxes) == 2 and all(check_transformation(t) for t in laxes)


def test_identity_and_composition_laws():
    M, N = trivial_and_swap()
    for t in enumerate_transformations(M, N, W.P, W.P):
        assert same_transformation(compose_transformations(identity_transformation(N, W.P, W.P), t), t)
        assert same_transformation(compose_transformations(t, identity_transformation(M, W.P, W.P)), t)


def test_modifications_between_swaps():
    M, N = trivial_and_swap()
    a, b = enumerate_transformations(M, N, W.P, W.P)
    assert check_modification(identity_modification(a))
    between = enumerate_modifications(a, b)
    assert len(between) == 1 and check_modification(between[0])
    assert not check_modification(Modification(a, b, identity_modification(a).components))


def test_missing_witness_is_reported():
    M, N = trivial_and_swap()
    comps = {"Star": fc.constant_functor(M.obj("Star"), N.obj("Star"), 0)}
    with pytest.raises(InvalidData, match="witness at 'i' is required"):
        complete_transformation(M, N, W.P, W.P, comps)
    report = check_transformation(WTransform(M, N, W.P, W.P, comps))
    assert not report and "no witness" in report.first_failure


def test_json_round_trips():
    M = pseudomonoid_model(*z2())
    back = Model.from_json(M.sketch, M.target, json.loads(M.dumps()))
    assert back == M
    t, _ = lax_mu_case([0] * 9, 0)
    doc = json.loads(json.dumps(t.to_json()))
    assert WTransform.from_json(doc, t.source, t.target, t.wp, t.w) == t
    s, n = trivial_and_swap()
    a, b = enumerate_transformations(s, n, W.P, W.P)
    mu = enumerate_modifications(a, b)[0]
    assert Modification.from_json(mu.to_json(), a, b) == mu


def involutions():
    out = []
    for C in (fc.terminal(), fc.iso(), fc.discrete("ab"), fc.arrow()):
        for i in fc.enumerate_functors(C, C):
            m = involution_model(C, i)
            if check_model(m):
                out.append(m)
    return out


def test_pointwise_products_are_limits():
    inv = builtin("involution")
    T = ModTarget(inv, involutions()[0].target)
    ms = involutions()
    for A, B in [(ms[1], ms[2]), (ms[2], ms[-1])]:
        lim, cone = pointwise_limit(fc.TightProduct(2), [A, B])
        assert check_model(lim)
        assert all(check_transformation(p) for p in cone.projections)
        assert T.verify_cone(fc.TightProduct(2), lim, cone.projections, None, [])


def test_pointwise_power_is_a_limit():
    inv = builtin("involution")
    for m in involutions():
        lim, cone = pointwise_limit(fc.Power2, [m])
        assert check_model(lim)
        assert check_modification(cone.cell)
        T = ModTarget(inv, m.target)
        assert T.verify_cone(fc.Power2, lim, cone.projections, cone.cell, [])


def test_pointwise_limits_need_strict_diagrams():
    M, N = trivial_and_swap()
    t = enumerate_transformations(M, N, W.P, W.P)[0]
    with pytest.raises(ShapeMismatch):
        pointwise_limit(fc.TightPullback, [t, t])

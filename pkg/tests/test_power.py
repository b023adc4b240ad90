import pytest
from hypothesis import given, settings, strategies as st

from esketch import fincat as fc
from esketch.builders import (codiscrete_monoidal, lax_monoidal_transformation,
                              pseudomonoid_model, trivial_and_swap)
from esketch.enhanced import Weakness as W
from esketch.errors import NotAPowerTheory, TargetLacksPowers
from esketch.models import (ModTarget, Model, Modification, check_modification, check_transformation,
                            enumerate_transformations, identity_transformation,
                            same_transformation)
from esketch.power import is_power_theory, power_structure, reconstruct, strictify
from esketch.sketches import builtin


@pytest.mark.parametrize("name,expected", [("pseudomonoid", True), ("pseudocategory", False),
                                           ("involution", False), ("fibration", False)])
def test_power_theories(name, expected):
    assert is_power_theory(builtin(name)) == expected


def test_pseudomonoid_structure():
    pt = power_structure(builtin("pseudomonoid"))
    assert pt.base == "M"
    assert {apex: n for apex, n, _ in pt.powers} == {"One": 0, "M2": 2, "M3": 3, "M4": 4}


def test_involution_is_refused_and_has_no_strict_replacement():
    M, N = trivial_and_swap()
    with pytest.raises(NotAPowerTheory, match="apex"):
        power_structure(M.sketch)
    for t in enumerate_transformations(M, N, W.P, W.P):
        with pytest.raises(NotAPowerTheory):
            strictify(t)
    assert enumerate_transformations(M, N, W.S, W.P) == []


XOR = codiscrete_monoidal([0, 1], lambda a, b: a ^ b, 0)
XOR_MODEL = pseudomonoid_model(*XOR)


def codiscrete_functor(C, D, ob):
    return fc.FinFunctor(C, D, ob, [D.hom(ob[C.src[u]], ob[C.tgt[u]])[0] for u in range(C.n_mor)])


def strict_lax_monoidal(ob):
    """A strict-at-projections lax transformation from an object map of the
    codiscrete xor category; every map is lax monoidal there."""
    C = XOR_MODEL.obj("M")
    F = codiscrete_functor(C, C, ob)
    to, _, u = XOR[1], XOR[2], XOR[3]
    return lax_monoidal_transformation(
        XOR_MODEL, XOR_MODEL, F,
        lambda a, b: C.hom(to(F.ob[a], F.ob[b]), F.ob[to(a, b)])[0],
        C.hom(u, F.ob[u])[0])


def perturbation(psi0, maps):
    """Invertible cells from psi0's apex components to arbitrary functors."""
    T = XOR_MODEL.target
    comps = {}
    for o, f in psi0.components.items():
        src, tgt = f.source, f.target
        if o not in maps:
            comps[o] = T.id2(f)
            continue
        ob = [maps[o][a % len(maps[o])] % tgt.n_obj for a in range(src.n_obj)]
        G = codiscrete_functor(src, tgt, ob)
        comps[o] = fc.FinNatTrans(f, G, [tgt.hom(f.ob[a], G.ob[a])[0] for a in range(src.n_obj)])
    return Modification(psi0, None, comps)


object_maps = st.lists(st.integers(0, 1), min_size=2, max_size=2)
apex_maps = st.fixed_dictionaries({"M2": st.lists(st.integers(0, 3), min_size=4, max_size=4),
                                   "M3": st.lists(st.integers(0, 7), min_size=8, max_size=8)})


@settings(max_examples=20)
@given(object_maps, apex_maps)
def test_strictify_recovers_the_strict_part(ob, maps):
    psi0 = strict_lax_monoidal(ob)
    assert check_transformation(psi0)
    t = reconstruct(psi0, perturbation(psi0, maps), W.P)
    assert check_transformation(t)
    psi, ups = strictify(t)
    assert (psi.wp, psi.w) == (W.S, W.L)
    assert check_transformation(psi)
    assert same_transformation(psi, psi0)
    assert check_modification(ups)
    assert all(XOR_MODEL.target.inverse2(x) is not None for x in ups.components.values())
    assert same_transformation(reconstruct(psi, ups, W.P), t)


@settings(max_examples=20)
@given(object_maps, apex_maps)
def test_strictify_is_idempotent(ob, maps):
    psi0 = strict_lax_monoidal(ob)
    psi, _ = strictify(reconstruct(psi0, perturbation(psi0, maps), W.P))
    again, ups = strictify(psi)
    assert same_transformation(again, psi)
    assert all(x.is_identity() for x in ups.components.values())


def test_identity_strictifies_to_itself():
    t = identity_transformation(XOR_MODEL, W.P, W.P)
    psi, ups = strictify(t)
    assert psi.witnesses == {} and same_transformation(psi, t)


def test_colax_inputs():
    psi0 = identity_transformation(XOR_MODEL, W.S, W.C)
    t = reconstruct(psi0, perturbation(psi0, {"M2": [1, 0, 3, 2]}), W.P)
    assert t.witnesses and check_transformation(t)
    psi, ups = strictify(t)
    assert check_transformation(psi) and same_transformation(psi, psi0)


def test_models_valued_in_models_are_refused():
    inner = ModTarget(builtin("pseudomonoid"), XOR_MODEL.target, W.S, W.S)
    m = Model(builtin("pseudomonoid"), inner, {}, {})
    t = identity_transformation(XOR_MODEL)
    fake = type(t)(m, m, W.P, W.P, {})
    with pytest.raises(TargetLacksPowers):
        strictify(fake)

import itertools

import pytest
from hypothesis import given, strategies as st

from esketch import fincat as fc
from esketch.errors import BoundaryMismatch, InvalidData, SearchBudgetExceeded, ShapeMismatch

from oracles import limit_size


def diagrams(cats):
    """Diagrams of every catalogue kind over the corpus."""
    out = []
    for k, C in enumerate(cats):
        D = cats[(k + 1) % len(cats)]
        out.append((fc.TightProduct(0), []))
        out.append((fc.TightProduct(1), [C]))
        out.append((fc.TightProduct(2), [C, D]))
        out.append((fc.Power2, [C]))
        fs = fc.enumerate_functors(C, D)
        if fs:
            f = fs[-1]
            out.append((fc.LaxLimitOfArrow, [f]))
            out.append((fc.ColaxLimitOfArrow, [f]))
        ends = fc.enumerate_functors(C, C)
        for f, g in [(ends[0], ends[-1]), (ends[-1], ends[-1])]:
            out.append((fc.TightPullback, [f, g]))
            out.append((fc.TightComma, [f, g]))
    return out


def test_corpus_limits_match_oracle(corpus):
    for kind, diagram in diagrams(corpus):
        cone = fc.canonical_limit(kind, diagram)
        assert fc.verify_cone(cone, diagram), (kind, diagram)
        assert (cone.apex.n_obj, cone.apex.n_mor) == limit_size(kind.family, diagram)


def test_arrow_category_objects_are_morphisms(corpus):
    for C in corpus:
        assert fc.canonical_limit(fc.Power2, [C]).apex.n_obj == C.n_mor


def test_comma_of_identities_is_power(corpus):
    for C in corpus:
        i = fc.identity_functor(C)
        comma = fc.canonical_limit(fc.TightComma, [i, i])
        power = fc.canonical_limit(fc.Power2, [C])
        assert comma.apex == power.apex
        assert comma.cell.components == power.cell.components


def test_non_limits_rejected():
    C = fc.arrow()
    two = fc.canonical_limit(fc.TightProduct(2), [C, C])
    # dropping a projection's information: both legs equal the first
    bad = fc.ConeWitness(fc.TightProduct(2), two.apex, [two.projections[0]] * 2)
    report = fc.verify_cone(bad, [C, C])
    assert not report and "injective" in report.first_failure
    # a smaller apex misses objects
    one = fc.terminal()
    k = fc.constant_functor(one, C, 0)
    r = fc.verify_cone(fc.ConeWitness(fc.TightProduct(2), one, [k, k]), [C, C])
    assert not r and "surjective" in r.first_failure


def test_cone_typing_errors():
    C = fc.arrow()
    cone = fc.canonical_limit(fc.TightProduct(2), [C, C])
    assert not fc.verify_cone(fc.ConeWitness(fc.TightProduct(2), cone.apex, cone.projections[:1]),
                              [C, C])
    with pytest.raises(ShapeMismatch):
        fc.canonical_limit(fc.TightPullback, [C])
    with pytest.raises(BoundaryMismatch):
        fc.mediate(fc.ConeWitness(fc.TightProduct(2), cone.apex, cone.projections[:1]), [C, C])


def test_mediate_recovers_identity():
    C = fc.iso()
    cone = fc.canonical_limit(fc.TightProduct(2), [C, C])
    K = fc.mediate(cone, [C, C])
    assert K == fc.identity_functor(cone.apex)


def test_bad_tables_rejected():
    with pytest.raises(InvalidData):
        fc.FinCat(["a"], [("1", 0, 0), ("f", 0, 0)], [(1, 1, 0)])
    with pytest.raises(InvalidData):
        fc.FinCat(["a", "a"], [], [])
    with pytest.raises(InvalidData):
        fc.from_preorder([0, 1, 2], lambda a, b: (a, b) in ((0, 1), (1, 2)) or a == b)


def test_functor_counts():
    # functors from the arrow category are the morphisms of the target
    for C in (fc.iso(), fc.arrow(), fc.from_preorder([0, 1, 2], lambda a, b: a <= b)):
        assert len(fc.enumerate_functors(fc.arrow(), C)) == C.n_mor
    assert len(fc.enumerate_functors(fc.discrete("ab"), fc.discrete("xyz"))) == 9


def test_budget_is_enforced():
    C = fc.discrete(["a", "b", "c", "d"])
    with pytest.raises(SearchBudgetExceeded):
        fc.enumerate_functors(C, C, budget=10)


def test_json_round_trip(corpus):
    for C in corpus:
        D = fc.FinCat.from_json(C.to_json())
        assert D == C
        F = fc.identity_functor(C)
        assert fc.FinFunctor.from_json(F.to_json(), C, C) == F


# -- properties over random preorders ----------------------------------------------

@st.composite
def preorders(draw, max_size=4):
    n = draw(st.integers(1, max_size))
    rel = {(i, i) for i in range(n)}
    for i, j in itertools.product(range(n), repeat=2):
        if i != j and draw(st.booleans()):
            rel.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return fc.from_preorder(range(n), lambda a, b: (a, b) in rel)


@given(preorders(), preorders())
def test_products_and_powers_of_preorders(C, D):
    for kind, diagram in [(fc.TightProduct(2), [C, D]), (fc.Power2, [C])]:
        cone = fc.canonical_limit(kind, diagram)
        assert fc.verify_cone(cone, diagram)
        assert (cone.apex.n_obj, cone.apex.n_mor) == limit_size(kind.family, diagram)


@given(preorders(3), preorders(3), st.data())
def test_pullbacks_and_commas_of_preorders(A, C, data):
    fs = fc.enumerate_functors(A, C)
    f = data.draw(st.sampled_from(fs))
    g = data.draw(st.sampled_from(fs))
    for kind in (fc.TightPullback, fc.TightComma):
        cone = fc.canonical_limit(kind, [f, g])
        assert fc.verify_cone(cone, [f, g])
        assert (cone.apex.n_obj, cone.apex.n_mor) == limit_size(kind.family, [f, g])


@given(preorders(3), preorders(3), st.data())
def test_functor_composition_laws(C, D, data):
    f = data.draw(st.sampled_from(fc.enumerate_functors(C, D)))
    g = data.draw(st.sampled_from(fc.enumerate_functors(D, C)))
    assert fc.compose_functors(f, fc.identity_functor(C)) == f
    assert fc.compose_functors(fc.identity_functor(D), f) == f
    h = fc.compose_functors(g, f)
    assert fc.compose_functors(f, h) == fc.compose_functors(fc.compose_functors(f, g), f)
    assert h.problem() is None


@given(preorders(3), st.data())
def test_whiskering_identity_cells(C, data):
    f = data.draw(st.sampled_from(fc.enumerate_functors(C, C)))
    cell = fc.identity_trans(f)
    assert fc.whisker(f, cell, f).is_identity()
    assert fc.vcompose(cell, cell) == cell

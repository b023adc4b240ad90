import pytest

from esketch import fincat as fc
from esketch.dsl import parse_sketch, print_sketch
from esketch.errors import ElaborationError, KindNotInCatalogue, UnknownBuiltin
from esketch.sketches import (BUILTINS, FSketch, TwoSketch, builtin, builtin_text,
                              chordate_sketch, free_enhance, underlying_2sketch, validate_sketch)
from esketch.weights import cloven_mark, schema, weight_data

from sketchgen import random_sketch_text

PSEUDOMONOID_TIGHT = {"p2_1", "p2_2", "p3_1", "p3_2", "p3_3",
                      "p4_1", "p4_2", "p4_3", "p4_4", "bang"}
PSEUDOCATEGORY_TIGHT = {"s", "t", "pi1_1", "pi1_2", "pi2_1", "pi2_2", "pi3_1", "pi3_2"}
FIBRATION_TIGHT = {"pi1", "pi2", "pp1", "pp2"}


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_validate(name):
    s = builtin(name)
    assert validate_sketch(s), name
    assert print_sketch(s) == builtin_text(name)


@pytest.mark.parametrize("name,tight", [("pseudomonoid", PSEUDOMONOID_TIGHT),
                                        ("pseudocategory", PSEUDOCATEGORY_TIGHT),
                                        ("fibration", FIBRATION_TIGHT)])
def test_builtin_tight_sets(name, tight):
    assert set(builtin(name).tight_names()) == tight


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        builtin("monad")


@pytest.mark.parametrize("name", ["pseudomonoid", "pseudocategory", "fibration", "category",
                                  "discrete-fibration", "involution"])
def test_free_enhancement_recovers_builtins(name):
    s = builtin(name)
    enhanced = free_enhance(underlying_2sketch(s), fc.FAMILIES)
    assert set(enhanced.tight_names()) == set(s.tight_names())
    assert enhanced == s


def test_enhancement_is_a_section_of_forgetting():
    for seed in range(50):
        u = underlying_2sketch(parse_sketch(random_sketch_text(seed)))
        assert isinstance(u, TwoSketch)
        assert underlying_2sketch(free_enhance(u, fc.FAMILIES)) == u


def test_enhanced_sketches_validate():
    for seed in range(50):
        u = underlying_2sketch(parse_sketch(random_sketch_text(seed)))
        assert validate_sketch(free_enhance(u, fc.FAMILIES))


def test_catalogue_restriction():
    with pytest.raises(KindNotInCatalogue):
        free_enhance(underlying_2sketch(builtin("fibration")), ["product"])
    s = free_enhance(underlying_2sketch(builtin("pseudomonoid")), ["product"])
    assert set(s.tight_names()) == PSEUDOMONOID_TIGHT


def test_chordate_marks_everything():
    s = chordate_sketch(builtin("pseudomonoid"))
    assert set(s.tight_names()) == {g.name for g in s.presentation.gen1}
    assert validate_sketch(s)


def test_loose_projection_is_rejected():
    s = builtin("pseudocategory")
    loose = FSketch(s.presentation.with_tight(set(s.tight_names()) - {"pi1_1"}), s.cones)
    report = validate_sketch(loose)
    assert not report and "pi1_1" in report.first_failure
    assert validate_sketch(loose, tightness=False)


PULLBACK = """sketch P
object A
object B
object C
object X
tight f : A -> C
tight g : B -> C
tight p : X -> A
tight q : X -> B
cone pullback(X; proj = p, q; over left = f, right = g)
"""


def test_unprovable_square_is_deferred():
    report = validate_sketch(parse_sketch(PULLBACK))
    assert report
    assert len(report.details["deferred"]) == 1


def test_square_from_equations_is_not_deferred():
    text = PULLBACK.replace("cone", "eq f . p == g . q\ncone")
    assert validate_sketch(parse_sketch(text)).details["deferred"] == []


def test_ill_typed_cone_is_rejected():
    text = PULLBACK.replace("over left = f, right = g", "over left = g, right = f")
    with pytest.raises(ElaborationError, match="ill-typed"):
        parse_sketch(text)


def test_cleavage_marks():
    assert cloven_mark(fc.Power2) == {"src", "tgt"}
    assert cloven_mark(fc.TightComma) == {"left", "right"}
    assert cloven_mark(fc.TightPullback) == {"left", "right"}
    assert cloven_mark(fc.LaxLimitOfArrow) == {"dom", "cod"}
    assert cloven_mark(fc.ColaxLimitOfArrow) == {"dom", "cod"}
    assert cloven_mark(fc.TightProduct(3)) == {"p1", "p2", "p3"}
    assert cloven_mark(fc.TightTerminal) == frozenset()


@pytest.mark.parametrize("family", fc.FAMILIES)
def test_schema_agrees_with_cleavage(family):
    kind = fc.kind_of(family, 2)
    assert cloven_mark(kind) == schema(kind).tight_slots
    data = weight_data(kind)
    assert set(schema(kind).proj_slots) <= set(data.slots.values())

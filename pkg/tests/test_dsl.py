import pytest
from hypothesis import given, strategies as st

from esketch.dsl import elaborate, parse, parse_sketch, print_sketch
from esketch.errors import ElaborationError, EskSyntaxError
from esketch.sketches import builtin, builtin_text

from sketchgen import random_sketch_text


def test_empty_body():
    s = parse_sketch("sketch X\n")
    assert s.name == "X"
    assert s.presentation.objects == () and s.cones == ()


def test_comments_and_blank_lines():
    s = parse_sketch("# a header comment\n\nsketch X\nobject A  # trailing\n\n")
    assert s.presentation.objects == ("A",)


def test_composition_is_rightmost_first():
    s = parse_sketch("sketch X\nobject A\nobject B\nobject C\n"
                     "loose f : A -> B\nloose g : B -> C\nloose h : A -> C\n"
                     "eq g . f == h\n")
    assert s.presentation.eqs1[0].lhs.gens == ("f", "g")


def test_undeclared_object_is_located():
    with pytest.raises(ElaborationError) as exc:
        parse_sketch("sketch X\nobject A\ntight f : A -> B\n")
    assert exc.value.line == 3


def test_unknown_cell_in_equation():
    text = "sketch X\nobject A\nloose f : A -> A\neq ( | nope | ) == ( | id2(f) | )\n"
    with pytest.raises(ElaborationError) as exc:
        parse_sketch(text)
    assert exc.value.name == "nope"


def test_syntax_error_carries_position_and_expectations():
    with pytest.raises(EskSyntaxError) as exc:
        parse("sketch X\nobject A\ntight f : A => A\n")
    err = exc.value
    assert (err.line, err.col) == (3, 13)
    assert "->" in err.expected


def test_missing_header():
    with pytest.raises(EskSyntaxError) as exc:
        parse("object A\n")
    assert exc.value.line == 1 and "sketch" in exc.value.expected


def test_second_header_rejected():
    with pytest.raises(EskSyntaxError) as exc:
        parse("sketch X\nsketch Y\n")
    assert exc.value.line == 2


def test_invalid_utf8_is_located():
    with pytest.raises(EskSyntaxError) as exc:
        parse(b"sketch X\nobject \xff\n")
    assert (exc.value.line, exc.value.col) == (2, 8)


def test_quoted_names_round_trip():
    text = 'sketch "a b"\nobject "<x,y>"\nloose "q\\"r" : "<x,y>" -> "<x,y>"\n'
    s = parse_sketch(text)
    assert s.presentation.gen1[0].name == 'q"r'
    assert print_sketch(s) == text


@pytest.mark.parametrize("name", ["pseudomonoid", "pseudocategory", "fibration"])
def test_builtin_golden_round_trip(name):
    s = builtin(name)
    assert parse_sketch(print_sketch(s)) == s
    assert print_sketch(s) == builtin_text(name)


def test_generated_sketches_are_stable():
    for seed in range(40):
        once = print_sketch(parse_sketch(random_sketch_text(seed)))
        assert print_sketch(parse_sketch(once)) == once


@given(st.integers(0, 10 ** 6))
def test_round_trip_property(seed):
    s = parse_sketch(random_sketch_text(seed))
    assert parse_sketch(print_sketch(s)) == s


@given(st.binary(max_size=200))
def test_parser_is_total_on_bytes(data):
    try:
        elaborate(parse(data))
    except EskSyntaxError as err:
        assert err.line >= 1 and err.col >= 1
    except ElaborationError:
        pass


@given(st.integers(0, 500), st.data())
def test_parser_is_total_on_mutations(seed, data):
    text = random_sketch_text(seed)
    k = data.draw(st.integers(0, len(text) - 1))
    junk = data.draw(st.text(max_size=4))
    mutated = text[:k] + junk + text[k + data.draw(st.integers(0, 3)):]
    try:
        parse_sketch(mutated)
    except (EskSyntaxError, ElaborationError):
        pass

"""Parser, pretty-printer and AST utilities."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monge4 import expr as ex
from monge4.errors import ExpressionSyntaxError, UnknownIdentifierError


def test_power_sum_ast():
    tree = ex.parse_expression("x^2 + y^2")
    assert tree == ex.BinOp("+", ex.Pow(ex.Name("x"), 2.0),
                            ex.Pow(ex.Name("y"), 2.0))


def test_function_call_ast():
    tree = ex.parse_expression("sin(x*y)")
    assert tree == ex.Call("sin", ex.BinOp("*", ex.Name("x"), ex.Name("y")))


def test_incomplete_input_offset():
    with pytest.raises(ExpressionSyntaxError) as err:
        ex.parse_expression("x +")
    assert err.value.offset == 3


def test_empty_input():
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("   ")


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as err:
        ex.parse_expression("2*t + 1")
    assert err.value.offset == 2
    assert "t" in str(err.value)


def test_unbalanced_paren():
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("sin(x")
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("(x + y")


def test_power_exponent_must_be_literal():
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("x^y")
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("2^(x)")


def test_signed_exponent():
    tree = ex.parse_expression("x^-2")
    assert tree == ex.Pow(ex.Name("x"), -2.0)


def test_precedence():
    # ^ binds above unary minus, which binds above * /
    assert ex.parse_expression("-x^2") == ex.Neg(ex.Pow(ex.Name("x"), 2.0))
    assert ex.parse_expression("2*-x") == ex.BinOp(
        "*", ex.Num(2.0), ex.Neg(ex.Name("x")))
    assert ex.parse_expression("1 - 2 - 3") == ex.BinOp(
        "-", ex.BinOp("-", ex.Num(1.0), ex.Num(2.0)), ex.Num(3.0))
    assert ex.parse_expression("6/2/3") == ex.BinOp(
        "/", ex.BinOp("/", ex.Num(6.0), ex.Num(2.0)), ex.Num(3.0))
    assert ex.parse_expression("1 + 2*3") == ex.BinOp(
        "+", ex.Num(1.0), ex.BinOp("*", ex.Num(2.0), ex.Num(3.0)))


def test_power_left_associative():
    assert ex.parse_expression("x^2^3") == ex.Pow(ex.Pow(ex.Name("x"), 2.0), 3.0)


def test_constants():
    assert ex.parse_expression("pi") == ex.Name("pi")
    assert ex.CONSTANTS["pi"] == math.pi
    assert ex.CONSTANTS["e"] == math.e


def test_juxtaposition_is_an_error():
    with pytest.raises(ExpressionSyntaxError):
        ex.parse_expression("2 x")


_numbers = st.one_of(
    st.integers(min_value=0, max_value=9).map(float),
    st.floats(min_value=0.0, max_value=100.0,
              allow_nan=False, allow_infinity=False),
)
_exponents = st.one_of(
    st.integers(min_value=-5, max_value=5).map(float),
    st.floats(min_value=-4.0, max_value=4.0,
              allow_nan=False, allow_infinity=False),
)
_leaves = st.one_of(
    _numbers.map(ex.Num),
    st.sampled_from(["x", "y", "pi", "e"]).map(ex.Name),
)


def _extend(children):
    return st.one_of(
        children.map(ex.Neg),
        st.tuples(st.sampled_from("+-*/"), children, children).map(
            lambda t: ex.BinOp(*t)),
        st.tuples(children, _exponents).map(lambda t: ex.Pow(*t)),
        st.tuples(st.sampled_from(ex.FUNCTIONS), children).map(
            lambda t: ex.Call(*t)),
    )


_trees = st.recursive(_leaves, _extend, max_leaves=25)


@given(_trees)
@settings(max_examples=300)
def test_pretty_print_round_trip(tree):
    assert ex.parse_expression(ex.pretty(tree)) == tree


def test_substitute():
    tree = ex.parse_expression("x^2 + sin(y)")
    swapped = ex.substitute(tree, {"x": ex.Name("y"), "y": ex.Name("x")})
    assert swapped == ex.parse_expression("y^2 + sin(x)")

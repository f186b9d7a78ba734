import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidiagtrace import (
    DimensionMismatch,
    NonFiniteEntry,
    NonPositiveEntry,
    ParseError,
    make_bidiagonal,
    ratios,
)
from bidiagtrace.core import (
    format_matrix_text,
    load_matrix,
    parse_inline,
    parse_matrix_text,
    relative_deviation,
    save_matrix,
)

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def matrices(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    q = draw(st.lists(positive, min_size=n, max_size=n))
    e = draw(st.lists(positive, min_size=n - 1, max_size=n - 1))
    return make_bidiagonal(q, e)


def test_scalar_matrix():
    b = make_bidiagonal([2.0], [])
    assert b.n == 1
    assert b.e.size == 0
    np.testing.assert_array_equal(b.dense(), [[math.sqrt(2.0)]])


def test_unit_matrix_dense():
    b = make_bidiagonal([1, 1], [1])
    np.testing.assert_array_equal(b.dense(), [[1.0, 1.0], [0.0, 1.0]])


@pytest.mark.parametrize(
    "q, e, exc",
    [
        ([1, -1], [1], NonPositiveEntry),
        ([1, 1], [0.0], NonPositiveEntry),
        ([1, 1], [1, 1], DimensionMismatch),
        ([], [], DimensionMismatch),
        ([1, math.inf], [1], NonFiniteEntry),
        ([1, 1], [math.nan], NonFiniteEntry),
    ],
)
def test_rejects(q, e, exc):
    with pytest.raises(exc):
        make_bidiagonal(q, e)


def test_matrix_is_immutable():
    b = make_bidiagonal([1, 2], [3])
    with pytest.raises(ValueError):
        b.q[0] = 5.0


@pytest.mark.parametrize(
    "q, e, bc, f, ft",
    [
        ([1, 1], [1], [1, 1], [1], [1]),
        ([2, 4], [8], [0.5, 0.25], [4], [2]),
        ([1], [], [1], [], []),
    ],
)
def test_ratios_examples(q, e, bc, f, ft):
    r = ratios(make_bidiagonal(q, e))
    np.testing.assert_array_equal(r.b_check, bc)
    np.testing.assert_array_equal(r.f, f)
    np.testing.assert_array_equal(r.f_tilde, ft)


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_ratios_round_trip(b):
    r = ratios(b)
    assert np.all(r.b_check > 0) and np.all(r.f > 0) and np.all(r.f_tilde > 0)
    np.testing.assert_allclose(r.f * b.q[:-1], b.e, rtol=1e-15)
    np.testing.assert_allclose(r.f_tilde * b.q[1:], b.e, rtol=1e-15)


def test_text_format_round_trip(tmp_path):
    b = make_bidiagonal([0.1, 2.5, 3.0], [1e-7, 4.0])
    path = tmp_path / "m.txt"
    save_matrix(b, path, comment="hello")
    text = path.read_text()
    assert text.startswith("# hello\n3\n")
    c = load_matrix(path)
    np.testing.assert_array_equal(c.q, b.q)
    np.testing.assert_array_equal(c.e, b.e)


def test_text_format_scalar_without_e_line():
    b = parse_matrix_text("# c\n1\n2.0\n")
    assert b.n == 1 and b.q[0] == 2.0
    assert parse_matrix_text("1\n2.0\n\n").n == 1
    assert format_matrix_text(b) == "1\n2.0\n\n"


def test_parse_length_rule():
    with pytest.raises(ParseError, match="length rule.*N - 1 = 1 e values, got 2") as info:
        parse_matrix_text("2\n1 1\n1 1\n")
    assert info.value.line == 3


def test_parse_bad_token_column():
    with pytest.raises(ParseError) as info:
        parse_matrix_text("2\n1 x\n1\n")
    assert (info.value.line, info.value.column) == (2, 3)


def test_parse_nonpositive_is_parse_error():
    with pytest.raises(ParseError, match="positive"):
        parse_matrix_text("2\n1 -1\n1\n")


def test_parse_inline():
    b = parse_inline("1,2,3;4,5")
    np.testing.assert_array_equal(b.q, [1, 2, 3])
    np.testing.assert_array_equal(b.e, [4, 5])
    assert parse_inline("7;").n == 1
    with pytest.raises(ParseError, match="length rule"):
        parse_inline("1,2;")


def test_relative_deviation():
    assert relative_deviation(0.0, 0.0) == 0.0
    assert relative_deviation(1.0, 2.0) == 0.5
    assert relative_deviation(math.inf, math.inf) == 0.0

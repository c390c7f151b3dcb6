from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su3euler import euler
from su3euler.euler import FundamentalRep
from su3euler.polystate import (
    N_SYMBOLS, SYMBOLS, FundamentalSymbol, PolyState, from_vector, symbol_values, symbol_values_from_matrix,
    vectorize,
)
from _strategies import angles

coeffs = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def polystates(draw, max_terms=3, max_degree=2):
    out = PolyState()
    for _ in range(draw(st.integers(1, max_terms))):
        syms = draw(st.lists(st.integers(0, N_SYMBOLS - 1), min_size=0, max_size=max_degree))
        out = out + PolyState.monomial(*syms, coeff=draw(coeffs))
    return out


def test_symbol_indexing_roundtrip():
    assert len(SYMBOLS) == 18
    for n, s in enumerate(SYMBOLS):
        assert s.index == n
        assert FundamentalSymbol.from_index(n) == s


def test_lookup_by_weights():
    s = FundamentalSymbol.lookup("3", (0.5, 1 / 3), (0.5, 1 / 3))
    assert s == FundamentalSymbol(FundamentalRep.THREE, 0, 0)
    s = FundamentalSymbol.lookup("3*", (0, 2 / 3), (0, 2 / 3))
    assert s.index == 17
    assert s.row_weight == (Fraction(0), Fraction(2, 3))


def test_symbol_values_layout(rng):
    x = rng.uniform(0, 1, (3, 8))
    v = symbol_values(x)
    assert v.shape == (3, 18)
    assert np.allclose(v[:, 5], euler.closed_rep(x)[:, 1, 2])
    assert np.allclose(v[:, 9 + 7], euler.closed_rep(x, FundamentalRep.THREE_STAR)[:, 2, 1])
    u = euler.product_rep(x)
    assert np.allclose(symbol_values_from_matrix(u), v)


@settings(max_examples=40, deadline=None)
@given(polystates(), polystates(), angles())
def test_ring_operations_commute_with_evaluation(a, b, x):
    assert np.isclose((a + b)(x), a(x) + b(x))
    assert np.isclose((a - b)(x), a(x) - b(x))
    assert np.isclose((a * b)(x), a(x) * b(x))
    assert np.isclose((a * 2.5)(x), 2.5 * a(x))
    assert np.isclose((a / 2)(x), a(x) / 2)
    assert np.isclose((a ** 2)(x), a(x) ** 2)


@settings(max_examples=40, deadline=None)
@given(polystates())
def test_self_difference_is_zero(a):
    assert not (a - a)
    assert a.close_to(a.copy())
    assert a.max_abs_diff(a) == 0.0


@settings(max_examples=30, deadline=None)
@given(polystates(), angles(), angles())
def test_translations(a, x, y):
    g = euler.product_rep(y)
    u = euler.product_rep(x)
    assert np.isclose(a.left_translate(g).evaluate_matrix(u), a.evaluate_matrix(g @ u), atol=1e-10)
    assert np.isclose(a.right_translate(g).evaluate_matrix(u), a.evaluate_matrix(u @ g), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(polystates())
def test_vectorize_roundtrip(a):
    vec, monos = vectorize([a])
    assert from_vector(vec[0], monos).close_to(a, 1e-15)


def test_weights_and_degrees():
    s = PolyState.monomial(0, 17)  # <1/2,1/3||1/2,1/3> <0,2/3||0,2/3>*
    assert s.left_weights() == {(Fraction(1, 2), Fraction(1))}
    assert s.right_weights() == {(Fraction(1, 2), Fraction(1))}
    assert s.degrees() == {(1, 1)}


def test_one_and_zero(rng):
    x = rng.uniform(0, 1, (4, 8))
    assert np.allclose(PolyState.one()(x), 1)
    assert np.allclose(PolyState.zero()(x), 0)
    assert len(PolyState.zero()) == 0


def test_tiny_coefficients_dropped():
    assert not PolyState.symbol(0, 1e-15)


def test_unitarity_relation_as_function(rng):
    # sum_k <0,k> conj(<0,k>) = 1 holds as functions though not as PolyStates
    x = rng.uniform(0, 1, (5, 8))
    d = euler.closed_rep(x)
    assert np.allclose(np.sum(np.abs(d[:, 0]) ** 2, axis=-1), 1)


def test_json_and_repr():
    s = PolyState.monomial(0, 0, 17, coeff=-2)
    js = s.to_json()
    assert js == [{"monomial": [str(SYMBOLS[0])] * 2 + [str(SYMBOLS[17])], "coeff": [-2.0, 0.0]}]
    assert "PolyState(" in repr(s)
    assert repr(PolyState()) == "PolyState(0)"


@pytest.mark.parametrize("n", [0, 5, 17])
def test_symbol_evaluates_to_matrix_entry(n, rng):
    x = rng.uniform(0, 1, 8)
    s = SYMBOLS[n]
    assert np.isclose(PolyState.symbol(s)(x), euler.closed_rep(x, s.rep)[s.row, s.col])

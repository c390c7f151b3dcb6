import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from su3euler import euler
from su3euler.algebra import LAMBDA, SQRT3, matrices_close
from su3euler.euler import EulerAngles, FundamentalRep
from _strategies import angles

THREE, STAR = FundamentalRep.THREE, FundamentalRep.THREE_STAR
ORDER = (3, 2, 3, 5, 3, 2, 3, 8)


def expm_product(x):
    """Independent oracle: the eight-factor product through scipy's expm."""
    signs = (-1, 1, -1, 1, -1, 1, -1, -1)
    u = np.eye(3, dtype=complex)
    for k, s, t in zip(ORDER, signs, x):
        u = u @ scipy.linalg.expm(s * 1j * t * LAMBDA[k - 1])
    return u


def test_identity_at_zero():
    for rep in FundamentalRep:
        assert matrices_close(euler.closed_rep(np.zeros(8), rep), np.eye(3), 1e-15)
    assert matrices_close(euler.adjoint_closed(np.zeros(8)), np.eye(8), 1e-15)


@settings(max_examples=50, deadline=None)
@given(angles())
def test_product_matches_expm_oracle(x):
    assert matrices_close(euler.product_rep(x, THREE), expm_product(x), 1e-12)


@settings(max_examples=50, deadline=None)
@given(angles())
def test_closed_matches_product(x):
    for rep in FundamentalRep:
        assert matrices_close(euler.closed_rep(x, rep), euler.product_rep(x, rep), 1e-12)


@settings(max_examples=50, deadline=None)
@given(angles())
def test_fundamental_special_unitary(x):
    for rep in FundamentalRep:
        u = euler.closed_rep(x, rep)
        assert matrices_close(u @ u.conj().T, np.eye(3), 1e-12)
        assert abs(np.linalg.det(u) - 1) < 1e-12


def test_top_left_element_closed_form(rng):
    # <1/2,1/3||1/2,1/3> written out by hand
    x = rng.uniform(0, 1, (20, 8))
    al, be, ga, th, a, b, c, ph = x.T
    eta = ph / SQRT3
    e = lambda t: np.exp(1j * t)  # noqa: E731
    want = e(-eta - al - c) * (e(-ga - a) * np.cos(be) * np.cos(b) * np.cos(th) - e(ga + a) * np.sin(be) * np.sin(b))
    assert np.max(np.abs(euler.closed_rep(x)[:, 0, 0] - want)) < 1e-14


def test_star_bottom_right_element(rng):
    x = rng.uniform(0, 1, (20, 8))
    want = np.exp(-2j * x[:, 7] / SQRT3) * np.cos(x[:, 3])
    assert np.max(np.abs(euler.closed_rep(x, STAR)[:, 2, 2] - want)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(angles())
def test_star_is_sign_conjugated_three(x):
    assert matrices_close(euler.star_from_three(euler.closed_rep(x)), euler.closed_rep(x, STAR), 1e-12)


@settings(max_examples=30, deadline=None)
@given(angles())
def test_substituted_generators_give_star(x):
    assert matrices_close(euler.substituted_rep(x), euler.closed_rep(x, STAR), 1e-12)


def test_substituted_identity_signs_give_three(rng):
    x = rng.uniform(0, 1, (5, 8))
    assert matrices_close(euler.substituted_rep(x, signs=(1,) * 8), euler.product_rep(x), 1e-14)


@settings(max_examples=40, deadline=None)
@given(angles())
def test_adjoint_closed_matches_conjugation(x):
    R = euler.adjoint_closed(x)
    assert matrices_close(R, euler.adjoint_from_conjugation(x), 1e-10)
    assert matrices_close(R, euler.adjoint_from_conjugation(x, STAR), 1e-10)
    assert matrices_close(R.T @ R, np.eye(8), 1e-10)
    assert abs(np.linalg.det(R) - 1) < 1e-10


@settings(max_examples=30, deadline=None)
@given(angles())
def test_adjoint_definition(x):
    # W l_i W^dag = sum_j R_ij l_j with W the conjugate 3 matrix
    w = np.conj(euler.product_rep(x))
    R = euler.adjoint_closed(x)
    for i in range(8):
        assert matrices_close(w @ LAMBDA[i] @ w.conj().T, np.einsum("j,jab->ab", R[i], LAMBDA), 1e-10)


@settings(max_examples=30, deadline=None)
@given(angles(), angles())
def test_adjoint_reverses_composition(x, y):
    u1, u2 = euler.product_rep(x), euler.product_rep(y)
    lhs = euler.adjoint_of_matrix(u1 @ u2)
    assert matrices_close(lhs, euler.adjoint_of_matrix(u2) @ euler.adjoint_of_matrix(u1), 1e-12)


@settings(max_examples=30, deadline=None)
@given(angles())
def test_adjoint_split_product(x):
    x1, x2 = x.copy(), x.copy()
    x1[3:] = 0.0
    x2[:3] = 0.0
    split = euler.adjoint_from_conjugation(x2) @ euler.adjoint_from_conjugation(x1)
    assert matrices_close(euler.adjoint_from_conjugation(x), split, 1e-12)


def test_batched_shapes(rng):
    x = rng.uniform(0, 1, (4, 2, 8))
    assert euler.closed_rep(x).shape == (4, 2, 3, 3)
    assert euler.adjoint_closed(x).shape == (4, 2, 8, 8)


def test_euler_angles_roundtrip():
    a = EulerAngles(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
    assert EulerAngles.from_array(a.as_array()) == a
    assert a.eta == pytest.approx(0.8 / SQRT3)
    assert a.in_canonical_ranges()
    assert matrices_close(euler.closed_rep(a), euler.closed_rep(a.as_array()), 1e-15)


def test_euler_angles_wrong_length():
    with pytest.raises(ValueError):
        EulerAngles.from_array([0.0] * 7)
    with pytest.raises(ValueError):
        euler.as_angle_array(np.zeros((3, 5)))


def test_canonical_ranges_mask():
    x = np.zeros((3, 8))
    x[1, 1] = np.pi / 2  # closed end
    x[2, 0] = np.pi  # open end
    assert list(euler.in_canonical_ranges(x)) == [True, True, False]
    assert not euler.in_canonical_ranges(np.full(8, -0.1))

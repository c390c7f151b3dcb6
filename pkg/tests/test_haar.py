import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su3euler import euler, haar, irreps
from su3euler.euler import FundamentalRep
from su3euler.haar import V0, Mode, ModeError, QuadratureSpec
from su3euler.polystate import PolyState, SYMBOLS
from _strategies import angles

MC = QuadratureSpec(mode=Mode.MONTE_CARLO, mc_samples=200_000, seed=3)


def test_volume_value():
    assert V0 == pytest.approx(np.sqrt(3) / 2 * np.pi ** 5, rel=1e-15)
    assert haar.group_volume() == pytest.approx(V0, rel=1e-12)


@pytest.mark.parametrize("order", [10, 16, 32])
def test_volume_converged_from_moderate_order(order):
    assert haar.group_volume(QuadratureSpec(gauss_order=order)) == pytest.approx(V0, rel=1e-12)


def test_volume_error_shrinks_with_order():
    errs = [abs(haar.group_volume(QuadratureSpec(gauss_order=n)) - V0) for n in (2, 3, 4, 5)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_volume_monte_carlo_within_error():
    v, err = haar.group_volume_mc(MC)
    assert err > 0
    assert abs(v - V0) < 4 * err
    assert haar.group_volume(MC) == v


def test_density_nonnegative_on_box(rng):
    x = rng.uniform(0, 1, (200, 8)) * np.array([r[1] for r in euler.CANONICAL_RANGES])
    assert np.all(haar.density(x) >= 0)


def test_gauss_nodes_integrate_polynomial():
    x, w = haar.gauss_nodes(10)
    assert np.all((x > 0) & (x < np.pi / 2))
    assert np.sum(w * x ** 3) == pytest.approx((np.pi / 2) ** 4 / 4, rel=1e-13)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(gauss_order=0)
    with pytest.raises(ValueError):
        QuadratureSpec(mc_samples=0)
    assert QuadratureSpec(mode="montecarlo").mode is Mode.MONTE_CARLO


def test_symbol_orthogonality():
    # <D_ij, D_kl> = V0 / 3 delta over the 3 and the 3* entries (Schur orthogonality)
    sts = [PolyState.symbol(s) for s in SYMBOLS]
    G = haar.gram_matrix(sts)
    want = np.zeros((18, 18))
    want[np.arange(18), np.arange(18)] = V0 / 3
    # the 3* entries are conjugates of signed 3 entries, so <3*, 3> vanishes as well
    assert np.max(np.abs(G - want)) < 1e-12 * V0


def test_monomial_norm():
    # |D_00|^2 |D*_22|^2 integrates to V0 / 8 for the octet highest weight
    hw = irreps.highest_weight((1, 1))
    assert haar.norm2(hw) == pytest.approx(V0 / 8, rel=1e-12)


def test_expansion_matches_function(rng):
    # the phase expansion on a grid node reproduces the polynomial's value there
    s = PolyState.monomial(0, 4, 17, coeff=0.7 - 0.2j)
    order = 6
    ex = haar.expansion(s, order)
    nodes, _ = haar.gauss_nodes(order)
    phases = rng.uniform(0, 2, 5)
    x = np.array([phases[0], nodes[1], phases[1], nodes[2], phases[2], nodes[4], phases[3], np.sqrt(3) * phases[4]])
    ang = np.array([phases[0], phases[1], phases[2], phases[3], phases[4]])
    val = sum(a[1, 2, 4] * np.exp(1j * np.dot(p, ang)) for p, a in ex.items())
    assert val == pytest.approx(s(x), abs=1e-13)


def test_separable_needs_polystates():
    with pytest.raises(ModeError):
        haar.inner_product(lambda x: x[..., 0], PolyState.one())
    with pytest.raises(ModeError):
        haar.gram_matrix([lambda x: x[..., 0]])


def test_monte_carlo_matches_separable():
    s = irreps.highest_weight((1, 1))
    t = s + PolyState.symbol(4) * PolyState.symbol(12)
    exact = haar.inner_product(s, t)
    val, err = haar.inner_product_mc(s, t, MC)
    assert abs(val - exact) < 5 * err + 1e-12
    assert haar.inner_product(s, t, MC) == pytest.approx(val)


def test_sample_haar_ranges_and_seed():
    a = haar.sample_haar(1000, seed=5)
    b = haar.sample_haar(1000, seed=5)
    assert np.array_equal(a, b)
    assert np.all((a[:, [1, 3, 5]] >= 0) & (a[:, [1, 3, 5]] <= np.pi / 2))
    assert np.all((a[:, 7] >= 0) & (a[:, 7] < 2 * np.pi * np.sqrt(3)))


@settings(max_examples=8, deadline=None)
@given(angles(), st.sampled_from([(1, 0), (0, 1), (1, 1)]), st.booleans())
def test_translation_invariance(y, label, left):
    g = euler.product_rep(y)
    sts = [s.state for s in irreps.generate_irrep(label).states]
    G0 = haar.gram_matrix(sts)
    moved = [s.left_translate(g) if left else s.right_translate(g) for s in sts]
    assert np.max(np.abs(haar.gram_matrix(moved) - G0)) < 1e-10 * V0


def test_orthogonality_suite_report():
    groups = [(1, [PolyState.one()])]
    for lab in ((1, 0), (0, 1), (1, 1)):
        groups.append((irreps.dimension(lab), [s.state for s in irreps.generate_irrep(lab).states]))
    rep = haar.orthogonality_suite(groups)
    assert rep.gram_max_offdiag < 1e-8
    assert rep.gram_max_diag_err < 1e-8
    js = rep.to_json()
    assert set(js) == {"v0", "gram_max_offdiag", "gram_max_diag_err", "per_pair", "states"}
    assert len(js["states"]) == 15
    assert all(p["i"] == p["j"] for p in js["per_pair"])


def test_fundamental_entries_star_relation(rng):
    # 3* entries are signed conjugates of 3 entries, consistent with the gram above
    x = rng.uniform(0, 1, (5, 8))
    assert np.allclose(euler.star_from_three(euler.closed_rep(x)), euler.closed_rep(x, FundamentalRep.THREE_STAR))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su3euler import diffops, euler
from su3euler.diffops import (
    ALL_KINDS, FieldEvaluationError, Ladder, LadderKind, ScalarField, Side, SingularityError,
)
from su3euler.euler import FUNDAMENTAL_WEIGHTS, FundamentalRep
from _strategies import regular_angles

REPS = list(FundamentalRep)


def element(rep, i, j):
    return ScalarField(lambda x: euler.closed_rep(x, rep)[..., i, j], f"{rep.value}[{i}{j}]")


def row_index(rep, weight):
    return FUNDAMENTAL_WEIGHTS[rep].index(weight)


@settings(max_examples=15, deadline=None)
@given(regular_angles(), st.sampled_from(REPS), st.integers(0, 2), st.integers(0, 2))
def test_weight_eigenvalues(x, rep, i, j):
    f = element(rep, i, j)
    fx = f(x)
    t3, y = FUNDAMENTAL_WEIGHTS[rep][i]
    t3r, yr = FUNDAMENTAL_WEIGHTS[rep][j]
    for name, lab in (("T3", t3), ("Y", y), ("T3r", t3r), ("Yr", yr)):
        assert abs(diffops.apply(name, f, x) - float(lab) * fx) < 1e-7


# lowering operators and the weight shift they produce on a row label
SHIFTS = {"T-": (-1, 0), "U-": (0.5, -1), "V-": (-0.5, -1), "T+": (1, 0), "U+": (-0.5, 1), "V+": (0.5, 1)}


@pytest.mark.parametrize("op", list(SHIFTS))
@pytest.mark.parametrize("rep", REPS)
def test_ladder_maps_rows_to_rows(op, rep):
    x = np.array([0.3, 0.5, 1.1, 0.7, 2.0, 0.4, 0.9, 1.3])
    dt3, dy = SHIFTS[op]
    wts = FUNDAMENTAL_WEIGHTS[rep]
    for i, (t3, y) in enumerate(wts):
        target = (t3 + dt3, y + dy)
        for j in range(3):
            got = diffops.apply(op, element(rep, i, j), x)
            if target in wts:
                k = wts.index(target)
                want = euler.closed_rep(x, rep)[k, j]
                assert min(abs(got - want), abs(got + want)) < 1e-7
            else:
                assert abs(got) < 1e-7


def test_right_operators_act_on_columns():
    x = np.array([0.3, 0.5, 1.1, 0.7, 2.0, 0.4, 0.9, 1.3])
    for rep in REPS:
        wts = FUNDAMENTAL_WEIGHTS[rep]
        for op, (dt3, dy) in SHIFTS.items():
            for j, (t3, y) in enumerate(wts):
                target = (t3 + dt3, y + dy)
                got = diffops.apply(op + "r", element(rep, 0, j), x)
                if target in wts:
                    want = euler.closed_rep(x, rep)[0, wts.index(target)]
                    assert min(abs(got - want), abs(got + want)) < 1e-7
                else:
                    assert abs(got) < 1e-7


def product_field(x):
    d = euler.closed_rep(x)
    s = euler.closed_rep(x, FundamentalRep.THREE_STAR)
    return d[..., 0, 1] * s[..., 2, 0] + d[..., 2, 2] ** 2


@pytest.mark.parametrize("side", ["", "r"])
def test_su2_commutator_on_nonlinear_field(side):
    x = np.array([0.4, 0.6, 1.3, 0.5, 0.7, 0.9, 2.1, 0.8])
    probes = [(ScalarField(product_field), x)]
    res = diffops.commutator_residual("T+" + side, "T-" + side, (2.0, "T3" + side), probes)
    assert res < 1e-5
    res = diffops.commutator_residual("U+" + side, "V-" + side, "T-" + side, probes)
    assert res < 1e-5


def test_left_and_right_commute():
    x = np.array([0.4, 0.6, 1.3, 0.5, 0.7, 0.9, 2.1, 0.8])
    probes = [(ScalarField(product_field), x)]
    for a, b in (("T+", "V-r"), ("U-", "T+r"), ("Y", "U+r")):
        assert diffops.commutator_residual(a, b, None, probes) < 1e-5


def test_gradient_against_analytic(rng):
    x = rng.uniform(0.2, 1.2, (4, 8))
    f = lambda p: np.sin(p[..., 0]) * np.cos(2 * p[..., 3]) + p[..., 7] ** 3  # noqa: E731
    g = diffops.gradient(f, x)
    want = np.zeros((8, 4))
    want[0] = np.cos(x[:, 0]) * np.cos(2 * x[:, 3])
    want[3] = -2 * np.sin(x[:, 0]) * np.sin(2 * x[:, 3])
    want[7] = 3 * x[:, 7] ** 2
    assert np.max(np.abs(g - want)) < 1e-10


def test_singularity_guard():
    x = np.array([0.3, np.pi / 2 - 1e-4, 0.5, 0.7, 0.2, 0.4, 0.9, 1.0])
    with pytest.raises(SingularityError):
        diffops.apply("T+", element(FundamentalRep.THREE, 0, 0), x)
    # T3 has no singular coefficient
    diffops.apply("T3", element(FundamentalRep.THREE, 0, 0), x)


def test_non_finite_field_rejected():
    x = np.array([0.3, 0.5, 0.5, 0.7, 0.2, 0.4, 0.9, 1.0])
    with pytest.raises(FieldEvaluationError):
        diffops.apply("T3", lambda p: np.full(p.shape[:-1], np.nan), x)


def test_bad_step():
    with pytest.raises(ValueError):
        diffops.apply("T3", element(FundamentalRep.THREE, 0, 0), np.full(8, 0.3), step=0)


def test_kind_names_roundtrip():
    assert len(ALL_KINDS) == 16
    for k in ALL_KINDS:
        assert LadderKind.parse(k.name) == k
        assert k.adjoint().adjoint() == k
    assert LadderKind.parse("U-r") == LadderKind(Ladder.U_MINUS, Side.RIGHT)
    assert LadderKind.parse("V+").adjoint().name == "V-"
    assert LadderKind.parse("T3r").adjoint().name == "T3r"


def test_build_operator_accepts_names():
    op = diffops.build_operator("V+r")
    assert op is diffops.build_operator(LadderKind(Ladder.V_PLUS, Side.RIGHT))
    assert op.first_order_terms()

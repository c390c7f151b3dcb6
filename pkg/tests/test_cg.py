from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su3euler import cg, irreps
from su3euler.cg import DecompositionError, MultiplicityError
from su3euler.irreps import IrrepLabel

SMALL = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]


def phase_aligned(a, b):
    ov = np.vdot(a.ravel(), b.ravel())
    ph = ov / abs(ov) if abs(ov) else 1.0
    return float(np.max(np.abs(a * ph - b)))


def weights(label):
    return Counter((s.t3, s.y) for s in irreps.generate_irrep(label).states)


@pytest.mark.parametrize("r1,r2,want", [
    ((1, 0), (0, 1), {(1, 1): 1, (0, 0): 1}),
    ((1, 0), (1, 0), {(2, 0): 1, (0, 1): 1}),
    ((0, 1), (0, 1), {(0, 2): 1, (1, 0): 1}),
    ((1, 1), (1, 0), {(2, 1): 1, (0, 2): 1, (1, 0): 1}),
    ((0, 0), (2, 0), {(2, 0): 1}),
])
def test_known_decompositions(r1, r2, want):
    got = {(t.p, t.q): m for t, m in cg.tensor_decompose(r1, r2)}
    assert got == want


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_decomposition_conserves_weights(r1, r2):
    # the weight multiset of the product equals the union of the targets' multisets
    w1, w2 = weights(r1), weights(r2)
    prod = Counter()
    for a, na in w1.items():
        for b, nb in w2.items():
            prod[(a[0] + b[0], a[1] + b[1])] += na * nb
    total = Counter()
    for t, m in cg.tensor_decompose(r1, r2):
        for w, n in weights(t).items():
            total[w] += m * n
    assert total == prod


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_stacked_coefficients_orthogonal(r1, r2):
    S = cg.stacked_matrix(cg.all_couplings(r1, r2))
    n = IrrepLabel(*r1).dim * IrrepLabel(*r2).dim
    assert S.shape == (n, n)
    assert np.max(np.abs(S @ S.T - np.eye(n))) < 1e-8


@pytest.mark.parametrize("r1,r2", [((1, 0), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (1, 0)), ((0, 1), (2, 0))])
def test_projection_matches_casimir_oracle(r1, r2):
    for t in cg.all_couplings(r1, r2):
        assert phase_aligned(cg.oracle_coefficients(r1, r2, t.target), t.coefficients) < 1e-8
        assert cg.equivariance_residual(t) < 1e-10


def test_singlet_in_three_times_antitriplet():
    t = cg.wcg_coefficients((1, 0), (0, 1), (0, 0))
    assert t.coefficients.shape == (1, 9)
    nz = t.coefficients[0][np.abs(t.coefficients[0]) > 1e-12]
    assert len(nz) == 3
    assert np.allclose(np.abs(nz), 1 / np.sqrt(3))


def test_sextet_highest_weight_is_product_of_highest_weights():
    t = cg.wcg_coefficients((1, 0), (1, 0), (2, 0))
    assert t.coefficients[0, 0] == pytest.approx(1.0)
    a = cg.wcg_coefficients((1, 0), (1, 0), (0, 1))
    # the antitriplet is antisymmetric under exchange of the factors
    C = a.coefficients.reshape(3, 3, 3)
    assert np.max(np.abs(C + np.swapaxes(C, 1, 2))) < 1e-12
    S = t.coefficients.reshape(6, 3, 3)
    assert np.max(np.abs(S - np.swapaxes(S, 1, 2))) < 1e-12


def test_octet_squared_with_multiplicity():
    decomp = {(t.p, t.q): m for t, m in cg.tensor_decompose((1, 1), (1, 1))}
    assert decomp == {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}
    copies = [cg.wcg_coefficients((1, 1), (1, 1), (1, 1), mu) for mu in range(2)]
    stacked = cg.stacked_matrix(copies)
    assert np.max(np.abs(stacked @ stacked.T - np.eye(16))) < 1e-8
    projs = cg.oracle_projectors((1, 1), (1, 1), (1, 1))
    for k, P in enumerate(projs):
        assert np.linalg.matrix_rank(P, tol=1e-8) == 2
        for c in copies:
            assert np.max(np.abs(P @ c.coefficients[k] - c.coefficients[k])) < 1e-8
    with pytest.raises(MultiplicityError):
        cg.oracle_coefficients((1, 1), (1, 1), (1, 1))


def test_errors():
    with pytest.raises(MultiplicityError):
        cg.wcg_coefficients((1, 0), (0, 1), (2, 0))
    with pytest.raises(MultiplicityError):
        cg.wcg_coefficients((1, 0), (0, 1), (1, 1), mult_index=1)
    with pytest.raises(DecompositionError):
        cg.tensor_decompose((2, 2), (1, 1))
    with pytest.raises(DecompositionError):
        cg.tensor_decompose((1, 1), (1, 1), bound=10)


def test_candidate_targets_triality():
    for t in cg.candidate_targets((1, 0), (1, 0)):
        assert (t.p - t.q) % 3 == 2


def test_csv_and_json():
    t = cg.wcg_coefficients((1, 0), (0, 1), (1, 1))
    lines = t.to_csv().strip().split("\n")
    assert lines[0] == "t1,t31,y1,t2,t32,y2,T,T3,Y,coeff"
    assert len(lines) - 1 == len(t.rows())
    first = lines[1].split(",")
    assert len(first) == 10 and float(first[-1]) == pytest.approx(1.0)
    js = t.to_json()
    assert js["factors"] == [[1, 0], [0, 1]] and js["target"] == [1, 1]
    assert len(js["entries"]) == len(t.rows())
    # entries dict keyed by (state1, state2, coupled)
    assert len(t.entries) == len(t.rows())

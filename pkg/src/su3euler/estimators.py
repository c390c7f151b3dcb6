"""scikit-learn style transformer from Euler angles to representation matrix entries."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import euler, irreps

N_ANGLES = 8


def check_angles(X, canonical=False):
    """Validate an (n, 8) angle array; with ``canonical`` also require the canonical box."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != N_ANGLES:
        raise ValueError(f"expected {N_ANGLES} angle columns (alpha,beta,gamma,theta,a,b,c,phi), got {X.shape[1]}")
    if canonical:
        bad = ~euler.in_canonical_ranges(X)
        if np.any(bad):
            raise ValueError(f"{int(bad.sum())} rows lie outside the canonical ranges")
    return X


def _rep_key(rep):
    if rep in ("3", "3*", "adjoint"):
        return rep
    if isinstance(rep, irreps.IrrepLabel):
        return rep
    if isinstance(rep, str):
        raise ValueError(f"rep must be '3', '3*', 'adjoint' or a (p, q) label, got {rep!r}")
    try:
        p, q = rep
    except (TypeError, ValueError):
        raise ValueError(f"rep must be '3', '3*', 'adjoint' or a (p, q) label, got {rep!r}")
    return irreps.IrrepLabel(int(p), int(q))


class RepresentationFeatures(BaseEstimator, TransformerMixin):
    """Map each row of Euler angles to the entries of its representation matrix.

    rep: '3', '3*', 'adjoint' or an irrep label (p, q).
    part: 'complex' returns complex entries, 'realimag' real parts then imaginary parts.
    canonical: reject rows outside the canonical ranges.
    """

    def __init__(self, rep="3", part="realimag", canonical=False):
        self.rep = rep
        self.part = part
        self.canonical = canonical

    def fit(self, X, y=None):
        if self.part not in ("complex", "realimag"):
            raise ValueError(f"part must be 'complex' or 'realimag', got {self.part!r}")
        X = check_angles(X, self.canonical)
        key = _rep_key(self.rep)
        if isinstance(key, irreps.IrrepLabel):
            self.functions_ = irreps.generate_irrep(key).matrix_functions()
            self.dim_ = key.dim
        else:
            self.functions_ = None
            self.dim_ = 8 if key == "adjoint" else 3
        self.n_features_in_ = X.shape[1]
        return self

    def _matrices(self, X):
        key = _rep_key(self.rep)
        if self.functions_ is not None:
            return np.stack([np.stack([f(X) for f in row], axis=-1) for row in self.functions_], axis=-2)
        if key == "adjoint":
            return euler.adjoint_closed(X).astype(complex)
        return euler.closed_rep(X, euler.FundamentalRep(key))

    def transform(self, X):
        check_is_fitted(self, "dim_")
        X = check_angles(X, self.canonical)
        if X.shape[1] != self.n_features_in_:
            raise ValueError("column count differs from fit")
        M = self._matrices(X).reshape(X.shape[0], -1)
        if self.part == "complex":
            return M
        return np.hstack([M.real, M.imag])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "dim_")
        d = self.dim_
        names = [f"d{i}_{j}" for i in range(d) for j in range(d)]
        if self.part == "complex":
            return np.array(names, dtype=object)
        return np.array([f"re_{n}" for n in names] + [f"im_{n}" for n in names], dtype=object)


__all__ = ["RepresentationFeatures", "check_angles", "N_ANGLES"]

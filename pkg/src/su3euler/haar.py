"""Invariant measure, group volume and inner products.

dV = sin2b sin2B sin2t sin^2 t  (beta, b, theta) times flat measure on the
phase angles. The separable mode expands every PolyState in phase monomials
e^{i(n1 alpha + n2 gamma + n3 a + n4 c + n5 eta)} with amplitudes tabulated on
a Gauss-Legendre grid in (beta, theta, b); the phase integrals then reduce to
Kronecker deltas on the integer exponents.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .algebra import SQRT3, generator_exp
from .polystate import N_SYMBOLS, SYMBOLS, PolyState, REPS

V0 = SQRT3 / 2 * np.pi**5
PHASE_LENGTH = np.pi  # alpha, gamma, a, c and eta each run over [0, pi)
HALF_PI = np.pi / 2


class Mode(Enum):
    SEPARABLE = "separable"
    MONTE_CARLO = "montecarlo"


class ModeError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    mode: Mode = Mode.SEPARABLE
    gauss_order: int = 24
    mc_samples: int = 10**6
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.gauss_order < 1:
            raise ValueError("gauss_order must be positive")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be positive")


DEFAULT_SPEC = QuadratureSpec()


def density(angles):
    x = np.asarray(angles, dtype=float)
    be, th, b = x[..., 1], x[..., 3], x[..., 5]
    return np.sin(2 * be) * np.sin(2 * b) * np.sin(2 * th) * np.sin(th) ** 2


@lru_cache(maxsize=8)
def gauss_nodes(order):
    """Nodes and weights of Gauss-Legendre on [0, pi/2]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return HALF_PI * (x + 1) / 2, HALF_PI * w / 2


@lru_cache(maxsize=8)
def _grid_weights(order):
    """(order, order, order) weights over (beta, theta, b) including the density."""
    x, w = gauss_nodes(order)
    wb = w * np.sin(2 * x)
    wt = w * np.sin(2 * x) * np.sin(x) ** 2
    return np.einsum("i,j,k->ijk", wb, wt, wb)


def group_volume(spec=DEFAULT_SPEC):
    """Integral of dV over the canonical ranges."""
    if spec.mode is Mode.SEPARABLE:
        return float(np.sum(_grid_weights(spec.gauss_order))) * PHASE_LENGTH**5 * SQRT3
    return group_volume_mc(spec)[0]


def group_volume_mc(spec):
    """MC estimate of the volume (uniform sampling of the box) and its standard error."""
    rng = np.random.default_rng(spec.seed)
    u = rng.uniform(0.0, HALF_PI, size=(spec.mc_samples, 3))
    vals = np.sin(2 * u[:, 0]) * np.sin(2 * u[:, 2]) * np.sin(2 * u[:, 1]) * np.sin(u[:, 1]) ** 2
    box = HALF_PI**3 * PHASE_LENGTH**5 * SQRT3
    return float(np.mean(vals) * box), float(np.std(vals) / np.sqrt(len(vals)) * box)


# phase exponents of diag(e^{-i lambda3 x}) and of e^{-i lambda8 phi} in eta units
_D3 = np.array([1, -1, 0])
_D8 = np.array([1, 1, -2])


@lru_cache(maxsize=8)
def symbol_expansions(order):
    """Phase expansion of every symbol on the grid.

    Returns a list of 18 dicts {phase (5 ints: alpha, gamma, a, c, eta): complex
    array (order, order, order) over (beta, theta, b)}. The 3 entry (i, j) is a
    sum over intermediate indices k, l of
    e^{-i d_i alpha} R2(beta)_ik e^{-i d_k gamma} R5(theta)_kl e^{-i d_l a} R2(b)_lj e^{-i d_j c} e^{-i e_j eta};
    3* entries follow from star = S conj(three) S.
    """
    x, _ = gauss_nodes(order)
    r2 = generator_exp(2, x).real  # (order, 3, 3), exactly real
    r5 = generator_exp(5, x).real
    out = []
    three = {}
    for i in range(3):
        for j in range(3):
            terms = {}
            for k in range(3):
                for m in range(3):
                    amp = np.einsum("p,q,r->pqr", r2[:, i, k], r5[:, k, m], r2[:, m, j])
                    if not np.any(amp):
                        continue
                    ph = (-_D3[i], -_D3[k], -_D3[m], -_D3[j], -_D8[j])
                    terms[ph] = terms.get(ph, 0) + amp
            three[i, j] = terms
    s = (-1, 1, 1)
    for sym in SYMBOLS:
        base = three[sym.row, sym.col]
        if sym.rep is REPS[0]:
            out.append({p: a.astype(complex) for p, a in base.items()})
        else:
            sign = s[sym.row] * s[sym.col]
            out.append({tuple(-v for v in p): sign * a.astype(complex) for p, a in base.items()})
    return out


def _mul_expansions(e1, e2):
    out = {}
    for p1, a1 in e1.items():
        for p2, a2 in e2.items():
            p = tuple(u + v for u, v in zip(p1, p2))
            if p in out:
                out[p] = out[p] + a1 * a2
            else:
                out[p] = a1 * a2
    return out


class _ExpansionCache:
    def __init__(self, order):
        self.order = order
        self.sym = symbol_expansions(order)
        self.powers = {}

    def power(self, n, e):
        key = (n, e)
        if key not in self.powers:
            if e == 1:
                self.powers[key] = self.sym[n]
            else:
                self.powers[key] = _mul_expansions(self.power(n, e - 1), self.sym[n])
        return self.powers[key]

    def expand(self, state):
        out = {}
        for mono, coef in state.terms.items():
            term = None
            for n, e in enumerate(mono):
                if e:
                    p = self.power(n, e)
                    term = p if term is None else _mul_expansions(term, p)
            if term is None:
                shape = (self.order,) * 3
                term = {(0,) * 5: np.ones(shape, dtype=complex)}
            for p, a in term.items():
                out[p] = out.get(p, 0) + coef * a
        return out


_caches = {}


def expansion(state, order=DEFAULT_SPEC.gauss_order):
    if order not in _caches:
        _caches[order] = _ExpansionCache(order)
    return _caches[order].expand(state)


def expansion_inner(ef, eg, order=DEFAULT_SPEC.gauss_order):
    """Inner product of two phase expansions."""
    w = _grid_weights(order)
    acc = 0j
    for p, a in ef.items():
        b = eg.get(p)
        if b is not None:
            acc += np.sum(w * np.conj(a) * b)
    return complex(acc * PHASE_LENGTH**5 * SQRT3)


def _separable_gram(states, order):
    w = _grid_weights(order)
    exps = [expansion(s, order) for s in states]
    n = len(states)
    G = np.zeros((n, n), dtype=complex)
    scale = PHASE_LENGTH**5 * SQRT3
    for i in range(n):
        for j in range(i, n):
            acc = 0j
            for p, a in exps[i].items():
                b = exps[j].get(p)
                if b is not None:
                    acc += np.sum(w * np.conj(a) * b)
            G[i, j] = acc * scale
            G[j, i] = np.conj(G[i, j])
    return G


def sample_haar(n, seed=0):
    """Haar-distributed Euler angles by inverse CDF (phase angles over full periods).

    beta, b: F = sin^2 -> beta = arcsin(sqrt(u)); theta: F = sin^4 -> theta = arcsin(u^(1/4)).
    """
    rng = np.random.default_rng(seed)
    x = np.empty((n, 8))
    for k in (0, 2, 4, 6):
        x[:, k] = rng.uniform(0.0, 2 * np.pi, n)
    x[:, 7] = rng.uniform(0.0, 2 * np.pi, n) * SQRT3
    x[:, 1] = np.arcsin(np.sqrt(rng.uniform(0.0, 1.0, n)))
    x[:, 5] = np.arcsin(np.sqrt(rng.uniform(0.0, 1.0, n)))
    x[:, 3] = np.arcsin(rng.uniform(0.0, 1.0, n) ** 0.25)
    return x


def _as_callable(f):
    return f if callable(f) else (lambda x: f)


def _mc_gram(states, spec, with_error=False):
    x = sample_haar(spec.mc_samples, spec.seed)
    vals = np.stack([np.asarray(_as_callable(s)(x)) for s in states])  # (n, N)
    prod = np.conj(vals)[:, None, :] * vals[None, :, :]
    G = np.mean(prod, axis=-1) * V0
    if with_error:
        err = np.std(prod, axis=-1) / np.sqrt(x.shape[0]) * V0
        return G, err
    return G


def gram_matrix(states, spec=DEFAULT_SPEC):
    """Matrix of inner products <s_i, s_j> = integral conj(s_i) s_j dV."""
    states = list(states)
    if spec.mode is Mode.SEPARABLE:
        if not all(isinstance(s, PolyState) for s in states):
            raise ModeError("separable quadrature needs PolyStates; use Mode.MONTE_CARLO for opaque fields")
        return _separable_gram(states, spec.gauss_order)
    return _mc_gram(states, spec)


def inner_product(f, g, spec=DEFAULT_SPEC):
    """Integral of conj(f) g over the group."""
    if spec.mode is Mode.SEPARABLE:
        if not (isinstance(f, PolyState) and isinstance(g, PolyState)):
            raise ModeError("separable quadrature needs PolyStates; use Mode.MONTE_CARLO for opaque fields")
        return expansion_inner(expansion(f, spec.gauss_order), expansion(g, spec.gauss_order), spec.gauss_order)
    return complex(_mc_gram([f, g], spec)[0, 1])


def inner_product_mc(f, g, spec):
    """MC inner product and its standard error."""
    G, err = _mc_gram([f, g], spec, with_error=True)
    return complex(G[0, 1]), float(err[0, 1])


def norm2(f, spec=DEFAULT_SPEC):
    return inner_product(f, f, spec).real


@dataclass
class OrthogonalityReport:
    v0: float
    gram: np.ndarray
    labels: list
    dims: list
    gram_max_offdiag: float
    gram_max_diag_err: float

    def to_json(self):
        return {
            "v0": self.v0,
            "gram_max_offdiag": self.gram_max_offdiag,
            "gram_max_diag_err": self.gram_max_diag_err,
            "per_pair": [
                {"i": i, "j": j, "value": [self.gram[i, j].real, self.gram[i, j].imag]}
                for i in range(len(self.labels)) for j in range(len(self.labels))
                if i <= j and abs(self.gram[i, j]) > 1e-12 * self.v0
            ],
            "states": [str(l) for l in self.labels],
        }


def orthogonality_suite(irreps, spec=DEFAULT_SPEC):
    """Gram matrix over all states of the supplied irreps.

    ``irreps`` is a list of (dim, [states]) pairs. Reports the largest
    off-diagonal |G_ij| / V0 and the largest |G_ii - V0/d| / (V0/d).
    """
    states, dims, labels = [], [], []
    for k, (dim, sts) in enumerate(irreps):
        for j, s in enumerate(sts):
            states.append(s)
            dims.append(dim)
            labels.append((k, j))
    G = gram_matrix(states, spec)
    v0 = V0
    target = np.array([v0 / d for d in dims])
    off = G - np.diag(np.diag(G))
    return OrthogonalityReport(
        v0=v0,
        gram=G,
        labels=labels,
        dims=dims,
        gram_max_offdiag=float(np.max(np.abs(off)) / v0) if len(states) > 1 else 0.0,
        gram_max_diag_err=float(np.max(np.abs(np.diag(G) - target) / target)),
    )


__all__ = [
    "V0", "Mode", "ModeError", "QuadratureSpec", "DEFAULT_SPEC", "density", "gauss_nodes",
    "group_volume", "group_volume_mc", "symbol_expansions", "expansion", "expansion_inner", "gram_matrix",
    "inner_product", "inner_product_mc", "norm2", "sample_haar", "orthogonality_suite",
    "OrthogonalityReport", "N_SYMBOLS",
]

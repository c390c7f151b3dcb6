"""Tensor products and Wigner-Clebsch-Gordan coefficients by Haar projection.

For factors D1, D2 and a target T with highest weight hw, the matrix

    X[(i,j),(a,b)] = (d_T / V0) <D^T_{hw,hw}, D1_{ia} D2_{jb}>

over index pairs whose weights add up to hw is the projector sum_mu c_mu c_mu^dag
onto the highest-weight coupling vectors; its trace is the multiplicity. The
coefficients of any other target state k follow from the same projection with
D^T_{k,hw} in place of D^T_{hw,hw}.
"""
import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .diffops import Ladder, LadderKind, Side
from .haar import V0, expansion, expansion_inner
from .irreps import E11, S33, IrrepLabel, generate_irrep, ladder_action
from .polystate import PolyState

DEFAULT_PRODUCT_BOUND = 81
REAL_TOL = 1e-10


class DecompositionError(RuntimeError):
    pass


class MultiplicityError(IndexError):
    pass


def _label(r):
    return r if isinstance(r, IrrepLabel) else IrrepLabel(*r)


@dataclass
class _Factor:
    irrep: object
    funcs: list  # d x d PolyStates D_{ia}
    weights: list  # (t3, y) per basis index


@lru_cache(maxsize=32)
def _factor(label):
    ir = generate_irrep(label)
    funcs = ir.matrix_functions()
    return _Factor(ir, funcs, [(s.t3, s.y) for s in ir.states])


def _hw_element(label):
    """D^T_{hw,hw} = e11^p s33^q (highest weight with the identity normalization)."""
    return PolyState.symbol(E11) ** label.p * PolyState.symbol(S33) ** label.q


def _pairs(f1, f2, weight):
    return [(i, j) for i, wi in enumerate(f1.weights) for j, wj in enumerate(f2.weights)
            if (wi[0] + wj[0], wi[1] + wj[1]) == tuple(weight)]


class _Projector:
    """Haar overlaps of target functions with factor products, with cached expansions."""

    def __init__(self, f1, f2):
        self.f1, self.f2 = f1, f2
        self._exp = {}

    def _product_exp(self, i, a, j, b):
        key = (i, a, j, b)
        if key not in self._exp:
            self._exp[key] = expansion(self.f1.funcs[i][a] * self.f2.funcs[j][b])
        return self._exp[key]

    def overlaps(self, target_fn, rows, cols, dim_t):
        et = expansion(target_fn)
        out = np.zeros((len(rows), len(cols)), dtype=complex)
        for r, (i, j) in enumerate(rows):
            for c, (a, b) in enumerate(cols):
                out[r, c] = expansion_inner(et, self._product_exp(i, a, j, b))
        return out * dim_t / V0


def _triality(label):
    return (label.p - label.q) % 3


def candidate_targets(r1, r2):
    r1, r2 = _label(r1), _label(r2)
    top = r1.p + r1.q + r2.p + r2.q
    tri = (_triality(r1) + _triality(r2)) % 3
    return [IrrepLabel(p, q) for p in range(top + 1) for q in range(top + 1 - p)
            if (p - q) % 3 == tri and IrrepLabel(p, q).dim <= r1.dim * r2.dim]


def _check_bound(r1, r2, bound):
    if r1.dim * r2.dim > bound:
        raise DecompositionError(
            f"product dimension {r1.dim * r2.dim} exceeds the configured bound {bound}")


def _hw_projector(r1, r2, target, proj=None):
    f1, f2 = _factor(r1), _factor(r2)
    pairs = _pairs(f1, f2, target.highest_weight)
    if not pairs:
        return pairs, np.zeros((0, 0))
    proj = proj or _Projector(f1, f2)
    X = proj.overlaps(_hw_element(target), pairs, pairs, target.dim)
    return pairs, X


def tensor_decompose(r1, r2, bound=DEFAULT_PRODUCT_BOUND):
    """[(target, multiplicity)] with multiplicity = trace of the highest-weight projector."""
    r1, r2 = _label(r1), _label(r2)
    _check_bound(r1, r2, bound)
    f1, f2 = _factor(r1), _factor(r2)
    proj = _Projector(f1, f2)
    out = []
    for t in candidate_targets(r1, r2):
        pairs, X = _hw_projector(r1, r2, t, proj)
        if not pairs:
            continue
        m = np.trace(X).real
        if abs(m - round(m)) > 1e-8:
            raise DecompositionError(f"non-integer multiplicity {m} for {t}")
        if round(m):
            out.append((t, int(round(m))))
    total = sum(t.dim * m for t, m in out)
    if total != r1.dim * r2.dim:
        raise DecompositionError(f"dimension mismatch: {total} != {r1.dim * r2.dim}")
    out.sort(key=lambda tm: (-tm[0].dim, -tm[0].p))
    return out


def _coupling_vectors(X):
    """Orthonormal basis of range(X), taken from its columns in pair order (deterministic)."""
    w, v = np.linalg.eigh((X + X.conj().T) / 2)
    m = int(round(np.sum(w)))
    basis = []
    for col in range(X.shape[1]):
        vec = X[:, col].copy()
        for b in basis:
            vec = vec - b * np.vdot(b, vec)
        n = np.linalg.norm(vec)
        if n > 1e-8:
            vec = vec / n
            lead = vec[np.argmax(np.abs(vec) > 1e-10)]
            basis.append(vec * abs(lead) / lead)
        if len(basis) == m:
            break
    return basis


@dataclass
class CouplingTable:
    factors: tuple
    target: IrrepLabel
    multiplicity_index: int
    coefficients: np.ndarray  # (d_T, d1 * d2), row k = target state, column i * d2 + j
    factor_weights: tuple
    target_weights: list
    entries: dict = field(default_factory=dict)

    def rows(self):
        """(state1, state2, target state, coefficient) for nonzero entries."""
        w1, w2 = self.factor_weights
        d2 = len(w2)
        out = []
        for k, tw in enumerate(self.target_weights):
            for col in np.nonzero(np.abs(self.coefficients[k]) > 1e-12)[0]:
                i, j = divmod(int(col), d2)
                out.append((w1[i], w2[j], tw, float(self.coefficients[k, col])))
        return out

    def to_csv(self):
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["t1", "t31", "y1", "t2", "t32", "y2", "T", "T3", "Y", "coeff"])
        for a, b, c, v in self.rows():
            wr.writerow([*map(str, a.as_tuple()), *map(str, b.as_tuple()), *map(str, c.as_tuple()),
                         f"{v:.17g}"])
        return buf.getvalue()

    def to_json(self):
        r1, r2 = self.factors
        return {
            "factors": [[r1.p, r1.q], [r2.p, r2.q]],
            "target": [self.target.p, self.target.q],
            "multiplicity_index": self.multiplicity_index,
            "entries": [
                {"state1": [str(x) for x in a.as_tuple()], "state2": [str(x) for x in b.as_tuple()],
                 "coupled": [str(x) for x in c.as_tuple()], "coeff": v}
                for a, b, c, v in self.rows()
            ],
        }


def wcg_coefficients(r1, r2, target, mult_index=0, bound=DEFAULT_PRODUCT_BOUND):
    """Coupling table of ``target`` (multiplicity copy ``mult_index``) inside r1 x r2."""
    r1, r2, target = _label(r1), _label(r2), _label(target)
    _check_bound(r1, r2, bound)
    f1, f2 = _factor(r1), _factor(r2)
    proj = _Projector(f1, f2)
    hw_pairs, X = _hw_projector(r1, r2, target, proj)
    vecs = _coupling_vectors(X) if hw_pairs else []
    if not vecs:
        raise MultiplicityError(f"{target} does not occur in {r1} x {r2}")
    if not 0 <= mult_index < len(vecs):
        raise MultiplicityError(f"multiplicity index {mult_index} out of range 0..{len(vecs) - 1}")
    c_hw = vecs[mult_index]
    irt = generate_irrep(target)
    sign = irt.states[0].state.evaluate_matrix(np.eye(3)).real
    d1, d2 = r1.dim, r2.dim
    C = np.zeros((target.dim, d1 * d2), dtype=complex)
    for k, s in enumerate(irt.states):
        rows = _pairs(f1, f2, (s.t3, s.y))
        Y = proj.overlaps(s.state * (1 / sign), rows, hw_pairs, target.dim)
        vals = Y @ c_hw
        for (i, j), v in zip(rows, vals):
            C[k, i * d2 + j] = v
    if np.max(np.abs(C.imag)) > REAL_TOL:
        raise DecompositionError(f"coupling coefficients not real (max imag {np.max(np.abs(C.imag)):.2e})")
    table = CouplingTable(
        factors=(r1, r2),
        target=target,
        multiplicity_index=mult_index,
        coefficients=C.real,
        factor_weights=(tuple(s.weight for s in f1.irrep.states), tuple(s.weight for s in f2.irrep.states)),
        target_weights=[s.weight for s in irt.states],
    )
    table.entries = {(a, b, c): v for a, b, c, v in table.rows()}
    return table


def all_couplings(r1, r2, bound=DEFAULT_PRODUCT_BOUND):
    """Every coupling table of r1 x r2, in tensor_decompose order."""
    out = []
    for t, m in tensor_decompose(r1, r2, bound):
        out.extend(wcg_coefficients(r1, r2, t, mu, bound) for mu in range(m))
    return out


def stacked_matrix(tables):
    return np.vstack([t.coefficients for t in tables])


# ------------------------------------------------------------------ oracle


def factor_ladder_matrix(irrep, which):
    """Matrix of a left ladder operator in the irrep's orthonormal basis, from Haar overlaps."""
    nrm = V0 / irrep.label.dim
    exps = [expansion(s.state) for s in irrep.states]
    d = irrep.dim
    M = np.zeros((d, d), dtype=complex)
    for j, s in enumerate(irrep.states):
        img = expansion(ladder_action(which, s.state))
        for k in range(d):
            M[k, j] = expansion_inner(exps[k], img) / nrm
    return M


def product_operators(r1, r2):
    """Ladder operators L x 1 + 1 x L on the product space, keyed by name."""
    f1, f2 = _factor(_label(r1)), _factor(_label(r2))
    d1, d2 = f1.irrep.dim, f2.irrep.dim
    ops = {}
    for k in Ladder:
        name = LadderKind(k, Side.LEFT).name
        ops[name] = (np.kron(factor_ladder_matrix(f1.irrep, name), np.eye(d2))
                     + np.kron(np.eye(d1), factor_ladder_matrix(f2.irrep, name)))
    return ops


def casimir_matrix(ops):
    C = ops["T3"] @ ops["T3"] + 0.75 * ops["Y"] @ ops["Y"]
    for x in ("T", "U", "V"):
        C = C + 0.5 * (ops[x + "+"] @ ops[x + "-"] + ops[x + "-"] @ ops[x + "+"])
    return C


def oracle_coefficients(r1, r2, target):
    """Coupling vectors of a multiplicity-free target from Casimir diagonalization.

    The highest-weight vector is the joint eigenvector of the product-space
    Casimir (eigenvalue of ``target``), T3 and Y with the highest weight; the
    other states follow by replaying the target basis recipes with product-space
    ladder matrices. Returns (d_T, d1 d2) with the highest-weight coefficient
    phase chosen like the projection route (first nonzero entry positive).
    """
    r1, r2, target = _label(r1), _label(r2), _label(target)
    ops = product_operators(r1, r2)
    C = casimir_matrix(ops)
    t3m, ym = target.highest_weight
    M = (C - float(target.casimir) * np.eye(len(C)))
    M = np.vstack([M, ops["T3"] - float(t3m) * np.eye(len(C)), ops["Y"] - float(ym) * np.eye(len(C))])
    for x in ("T+", "U+", "V+"):
        M = np.vstack([M, ops[x]])
    _, s, vh = np.linalg.svd(M)
    null = vh[np.sum(s > 1e-8):].conj()
    if len(null) != 1:
        raise MultiplicityError(f"oracle needs a multiplicity-free target, found {len(null)} copies of {target}")
    v = null[0]
    lead = v[np.argmax(np.abs(v) > 1e-10)]
    v = v * abs(lead) / lead
    irt = generate_irrep(target)
    out = np.zeros((target.dim, len(v)), dtype=complex)
    for k, s in enumerate(irt.states):
        acc = np.zeros_like(v)
        for word, c in s.recipe.items():
            w = v
            for letter in reversed(word):
                w = ops[letter] @ w
            acc = acc + c * w
        out[k] = acc
    return out


def oracle_projectors(r1, r2, target):
    """Per-state projectors onto the joint (Casimir, T^2, T3, Y) eigenspaces (any multiplicity)."""
    r1, r2, target = _label(r1), _label(r2), _label(target)
    ops = product_operators(r1, r2)
    C = casimir_matrix(ops)
    T2 = ops["T-"] @ ops["T+"] + ops["T3"] @ ops["T3"] + ops["T3"]
    n = len(C)
    out = []
    for s in generate_irrep(target).states:
        t = float(s.t)
        M = np.vstack([C - float(target.casimir) * np.eye(n), T2 - t * (t + 1) * np.eye(n),
                       ops["T3"] - float(s.t3) * np.eye(n), ops["Y"] - float(s.y) * np.eye(n)])
        _, sv, vh = np.linalg.svd(M)
        null = vh[np.sum(sv > 1e-8):]
        out.append(null.conj().T @ null)
    return out


def equivariance_residual(table):
    """max |(L x 1 + 1 x L) C_k - sum_k' A_{k'k} C_k'| over the lowering/raising operators."""
    r1, r2 = table.factors
    ops = product_operators(r1, r2)
    irt = generate_irrep(table.target)
    worst = 0.0
    for name in ("T+", "T-", "U+", "U-", "V+", "V-", "T3", "Y"):
        A = factor_ladder_matrix(irt, name)
        lhs = ops[name] @ table.coefficients.T
        rhs = table.coefficients.T @ A
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


__all__ = [
    "DecompositionError", "MultiplicityError", "CouplingTable", "tensor_decompose", "wcg_coefficients",
    "all_couplings", "stacked_matrix", "candidate_targets", "factor_ladder_matrix", "product_operators",
    "casimir_matrix", "oracle_coefficients", "oracle_projectors", "equivariance_residual",
    "DEFAULT_PRODUCT_BOUND",
]

"""Polynomial states in the 18 fundamental matrix-element symbols.

A symbol is one entry <row || col> of the 3 or 3* matrix. Symbols are indexed
0..17: rep * 9 + 3 * row + col, rows and columns in the bracket-table order of
FUNDAMENTAL_WEIGHTS.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .euler import FUNDAMENTAL_WEIGHTS, FundamentalRep, closed_rep, star_from_three

N_SYMBOLS = 18
REPS = (FundamentalRep.THREE, FundamentalRep.THREE_STAR)
COEFF_TOL = 1e-13


@dataclass(frozen=True)
class FundamentalSymbol:
    rep: FundamentalRep
    row: int
    col: int

    @property
    def index(self):
        return REPS.index(self.rep) * 9 + 3 * self.row + self.col

    @classmethod
    def from_index(cls, n):
        r, rest = divmod(int(n), 9)
        return cls(REPS[r], *divmod(rest, 3))

    @property
    def row_weight(self):
        return FUNDAMENTAL_WEIGHTS[self.rep][self.row]

    @property
    def col_weight(self):
        return FUNDAMENTAL_WEIGHTS[self.rep][self.col]

    def __str__(self):
        (t, y), (t2, y2) = self.row_weight, self.col_weight
        return f"<{t},{y}||{t2},{y2}>{'*' if self.rep is FundamentalRep.THREE_STAR else ''}"

    @classmethod
    def lookup(cls, rep, row, col):
        """Symbol from (t3, y) label pairs, e.g. lookup('3', (1/2, 1/3), (1/2, 1/3))."""
        rep = FundamentalRep(rep)
        labels = [tuple(w) for w in FUNDAMENTAL_WEIGHTS[rep]]
        key = lambda w: (Fraction(w[0]).limit_denominator(6), Fraction(w[1]).limit_denominator(6))  # noqa: E731
        return cls(rep, labels.index(key(row)), labels.index(key(col)))


SYMBOLS = tuple(FundamentalSymbol.from_index(n) for n in range(N_SYMBOLS))
ROW_WEIGHTS = np.array([[float(v) for v in s.row_weight] for s in SYMBOLS])
COL_WEIGHTS = np.array([[float(v) for v in s.col_weight] for s in SYMBOLS])


def symbol_values(angles):
    """(..., 18) complex values of all symbols at the given angles."""
    three = closed_rep(angles, FundamentalRep.THREE)
    star = closed_rep(angles, FundamentalRep.THREE_STAR)
    sh = three.shape[:-2]
    return np.concatenate([three.reshape(sh + (9,)), star.reshape(sh + (9,))], axis=-1)


def symbol_values_from_matrix(u):
    """Symbol values for an arbitrary SU(3) element given by its 3 matrix."""
    u = np.asarray(u, dtype=complex)
    sh = u.shape[:-2]
    return np.concatenate([u.reshape(sh + (9,)), star_from_three(u).reshape(sh + (9,))], axis=-1)


def _key(exps):
    return tuple(int(e) for e in exps)


class PolyState:
    """Sparse polynomial: {exponent tuple of length 18: complex coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for mono, c in (terms or {}).items():
            c = complex(c)
            if abs(c) > COEFF_TOL:
                self.terms[_key(mono)] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0,) * N_SYMBOLS: 1.0})

    @classmethod
    def symbol(cls, sym, coeff=1.0):
        if isinstance(sym, FundamentalSymbol):
            sym = sym.index
        exps = [0] * N_SYMBOLS
        exps[sym] = 1
        return cls({tuple(exps): coeff})

    @classmethod
    def monomial(cls, *syms, coeff=1.0):
        out = cls.one()
        for s in syms:
            out = out * cls.symbol(s)
        return out * coeff

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def copy(self):
        return PolyState(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PolyState(out)

    def __neg__(self):
        return PolyState({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyState):
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            return PolyState(out)
        return PolyState({m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __pow__(self, n):
        out = PolyState.one()
        for _ in range(n):
            out = out * self
        return out

    def close_to(self, other, tol=1e-10):
        diff = self - other
        return all(abs(c) < tol for c in diff.terms.values())

    def max_abs_diff(self, other):
        diff = self - other
        return max((abs(c) for c in diff.terms.values()), default=0.0)

    def degrees(self):
        """Set of (degree in 3 symbols, degree in 3* symbols) over the terms."""
        return {(sum(m[:9]), sum(m[9:])) for m in self.terms}

    def _weights(self, table):
        out = set()
        for m in self.terms:
            w = np.asarray(m) @ table
            out.add((Fraction(w[0]).limit_denominator(6), Fraction(w[1]).limit_denominator(6)))
        return out

    def left_weights(self):
        """Distinct (t3, y) row weights carried by the terms."""
        return self._weights(ROW_WEIGHTS)

    def right_weights(self):
        return self._weights(COL_WEIGHTS)

    def exponent_matrix(self):
        if not self.terms:
            return np.zeros((0, N_SYMBOLS), dtype=int), np.zeros(0, dtype=complex)
        monos = sorted(self.terms)
        return np.array(monos, dtype=int), np.array([self.terms[m] for m in monos])

    def evaluate_symbols(self, values):
        """Evaluate at given (..., 18) symbol values."""
        values = np.asarray(values, dtype=complex)
        exps, coeffs = self.exponent_matrix()
        if len(coeffs) == 0:
            return np.zeros(values.shape[:-1], dtype=complex)
        prods = np.prod(values[..., None, :] ** exps, axis=-1)
        return prods @ coeffs

    def __call__(self, angles):
        return self.evaluate_symbols(symbol_values(angles))

    def evaluate_matrix(self, u):
        """Evaluate on an SU(3) element given by its 3 matrix."""
        return self.evaluate_symbols(symbol_values_from_matrix(u))

    def substitute(self, images):
        """Replace each symbol n by the PolyState images[n]."""
        out = PolyState()
        cache = {}
        for m, c in self.terms.items():
            term = PolyState.one() * c
            for n, e in enumerate(m):
                if e:
                    if (n, e) not in cache:
                        cache[n, e] = images[n] ** e
                    term = term * cache[n, e]
            out = out + term
        return out

    def left_translate(self, g):
        """The state x -> f(g x) for a fixed SU(3) matrix g."""
        return self._translate(np.asarray(g, dtype=complex), left=True)

    def right_translate(self, g):
        """The state x -> f(x g)."""
        return self._translate(np.asarray(g, dtype=complex), left=False)

    def _translate(self, g, left):
        mats = {REPS[0]: g, REPS[1]: star_from_three(g)}
        images = []
        for s in SYMBOLS:
            m = mats[s.rep]
            if left:  # (g x)_{ij} = sum_k g_ik x_kj
                parts = {(s.rep, k, s.col): m[s.row, k] for k in range(3)}
            else:  # (x g)_{ij} = sum_k x_ik g_kj
                parts = {(s.rep, s.row, k): m[k, s.col] for k in range(3)}
            img = PolyState()
            for (rep, r, col), coef in parts.items():
                img = img + PolyState.symbol(FundamentalSymbol(rep, r, col), coef)
            images.append(img)
        return self.substitute(images)

    def to_json(self):
        out = []
        for m in sorted(self.terms):
            c = self.terms[m]
            syms = []
            for n, e in enumerate(m):
                syms.extend([str(SYMBOLS[n])] * e)
            out.append({"monomial": syms, "coeff": [c.real, c.imag]})
        return out

    def __repr__(self):
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            syms = "".join(str(SYMBOLS[n]) * e for n, e in enumerate(m) if e)
            parts.append(f"({c.real:.6g}{c.imag:+.6g}j){syms or '1'}")
        return "PolyState(" + " + ".join(parts) + ")" if parts else "PolyState(0)"


def vectorize(states):
    """Stack PolyStates into a (len(states), n_monomials) coefficient matrix over a shared monomial list."""
    monos = sorted({m for s in states for m in s.terms})
    index = {m: k for k, m in enumerate(monos)}
    out = np.zeros((len(states), len(monos)), dtype=complex)
    for i, s in enumerate(states):
        for m, c in s.terms.items():
            out[i, index[m]] = c
    return out, monos


def from_vector(vec, monos):
    return PolyState({m: c for m, c in zip(monos, vec)})

"""Irreducible representations built from the highest-weight state.

States are PolyStates; ladder operators act on them through a per-symbol
action table (fitted once from the differential operators) extended by the
Leibniz rule. Generation lowers from the highest weight and orthonormalizes
each weight space with the Haar inner product.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .diffops import ALL_KINDS, Ladder, LadderKind, Side, apply
from .euler import CANONICAL_RANGES
from .haar import V0, expansion, expansion_inner
from .polystate import N_SYMBOLS, SYMBOLS, REPS, FundamentalSymbol, PolyState, symbol_values

DEFAULT_BOUND = 4
FIT_TOL = 1e-6
SNAP_TOL = 1e-8
ZERO_TOL = 1e-12


class ConventionError(RuntimeError):
    """The fitted action of an operator is not linear in the candidate symbols."""


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class IrrepLabel:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or int(self.p) != self.p or int(self.q) != self.q:
            raise ValueError(f"(p, q) must be non-negative integers, got ({self.p}, {self.q})")

    @property
    def dim(self):
        return dimension(self)

    @property
    def highest_weight(self):
        return Fraction(self.p, 2), Fraction(2 * self.q + self.p, 3)

    @property
    def casimir(self):
        p, q = self.p, self.q
        return Fraction(p * p + q * q + p * q + 3 * p + 3 * q, 3)

    def __str__(self):
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class WeightLabel:
    t: Fraction
    t3: Fraction
    y: Fraction

    def __post_init__(self):
        for name in ("t", "t3", "y"):
            object.__setattr__(self, name, Fraction(getattr(self, name)).limit_denominator(6))
        if abs(self.t3) > self.t or (self.t - abs(self.t3)).denominator != 1:
            raise ValueError(f"invalid isospin labels t={self.t}, t3={self.t3}")

    def as_tuple(self):
        return (self.t, self.t3, self.y)

    def __str__(self):
        return f"({self.t},{self.t3},{self.y})"


def dimension(label):
    if not isinstance(label, IrrepLabel):
        label = IrrepLabel(*label)
    p, q = label.p, label.q
    return (p + 1) * (q + 1) * (p + q + 2) // 2


# ---------------------------------------------------------------- action table

E11 = FundamentalSymbol(REPS[0], 0, 0)  # <1/2,1/3||1/2,1/3> of 3
S33 = FundamentalSymbol(REPS[1], 2, 2)  # <0,2/3||0,2/3> of 3*


def probe_points(n, seed=0, margin=0.2):
    """Seeded points inside the canonical ranges, ``margin`` away from each end."""
    rng = np.random.default_rng(seed)
    lo = np.array([r[0] for r in CANONICAL_RANGES]) + margin
    hi = np.array([r[1] for r in CANONICAL_RANGES]) - margin
    return rng.uniform(lo, hi, size=(n, 8))


def _snap(z):
    """Round real and imaginary parts to the nearest multiple of 1/6 when that close."""
    def one(v):
        r = round(6 * v) / 6
        return r if abs(v - r) < SNAP_TOL else v
    return complex(one(z.real), one(z.imag))


@dataclass(frozen=True)
class ActionTable:
    """matrices[name][m, n]: coefficient of symbol m in (op symbol n)."""

    matrices: dict
    residuals: dict = field(default_factory=dict, compare=False)

    def matrix(self, which):
        return self.matrices[_kind(which).name]


def _kind(which):
    return LadderKind.parse(which) if isinstance(which, str) else which


def init_action_table(n_points=20, seed=0, tol=FIT_TOL):
    """Fit each operator's action on each symbol against the same-column (left)
    or same-row (right) symbols of the same rep by least squares."""
    pts = probe_points(n_points, seed)
    sv = symbol_values(pts)  # (n_points, 18)
    matrices, residuals = {}, {}
    for kind in ALL_KINDS:
        M = np.zeros((N_SYMBOLS, N_SYMBOLS), dtype=complex)
        worst = 0.0
        for sym in SYMBOLS:
            if kind.side is Side.LEFT:
                cand = [FundamentalSymbol(sym.rep, r, sym.col).index for r in range(3)]
            else:
                cand = [FundamentalSymbol(sym.rep, sym.row, c).index for c in range(3)]
            n = sym.index
            rhs = apply(kind, lambda x, n=n: symbol_values(x)[..., n], pts)
            A = sv[:, cand]
            coef, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            res = float(np.max(np.abs(A @ coef - rhs)))
            worst = max(worst, res)
            if res > tol:
                raise ConventionError(f"{kind.name} on {sym}: fit residual {res:.2e} exceeds {tol:g}")
            for m, c in zip(cand, coef):
                c = _snap(c)
                if abs(c) > SNAP_TOL:
                    M[m, n] = c
        matrices[kind.name] = M
        residuals[kind.name] = worst
    return ActionTable(matrices, residuals)


@lru_cache(maxsize=1)
def default_action_table():
    return init_action_table()


def ladder_action(which, state, table=None):
    """Apply a ladder operator to a PolyState via the Leibniz rule."""
    M = (table or default_action_table()).matrix(which)
    out = {}
    for mono, c in state.terms.items():
        for n, e in enumerate(mono):
            if not e:
                continue
            for m in np.nonzero(M[:, n])[0]:
                new = list(mono)
                new[n] -= 1
                new[m] += 1
                key = tuple(new)
                out[key] = out.get(key, 0) + c * e * M[m, n]
    return PolyState(out)


def apply_word(word, state, table=None, side=None):
    """Apply the operators of ``word`` right to left: word (A, B) gives A B state.

    With ``side`` given, every letter is reinterpreted on that side.
    """
    for name in reversed(word):
        k = _kind(name)
        if side is not None:
            k = LadderKind(k.kind, side)
        state = ladder_action(k, state, table)
    return state


def apply_recipe(recipe, state, table=None, side=None):
    """sum_w c_w (word w applied to state)."""
    out = PolyState()
    for word, c in recipe.items():
        out = out + apply_word(word, state, table, side) * c
    return out


# ---------------------------------------------------------------- highest weight


def highest_weight(label):
    """The highest-weight PolyState: (-1)^(p+1) e11^p s33^q, the binomial sum
    expanded in fundamental symbols (sign kept as in the closed form)."""
    if not isinstance(label, IrrepLabel):
        label = IrrepLabel(*label)
    p, q = label.p, label.q
    return (PolyState.symbol(E11) ** p) * (PolyState.symbol(S33) ** q) * (-1) ** (p + 1)


def highest_weight_field(label):
    """Closed-form scalar field of the highest weight (binomial sum in the angles)."""
    if not isinstance(label, IrrepLabel):
        label = IrrepLabel(*label)
    p, q = label.p, label.q

    def f(x):
        x = np.asarray(x, dtype=float)
        al, be, ga, th, a, b, c, ph = (x[..., k] for k in range(8))
        eta = ph / np.sqrt(3)
        u = np.exp(-1j * (ga + a)) * np.cos(be) * np.cos(b) * np.cos(th)
        v = np.exp(1j * (ga + a)) * np.sin(be) * np.sin(b)
        s = sum((-1) ** (n + 1) * comb(p, n) * u**n * v ** (p - n) for n in range(p + 1))
        return np.exp(-1j * ((2 * q + p) * eta + p * al + p * c)) * s * np.cos(th) ** q

    return f


# ---------------------------------------------------------------- generation

_SHIFTS = {
    "T-": (Fraction(-1), Fraction(0)),
    "U-": (Fraction(1, 2), Fraction(-1)),
    "V-": (Fraction(-1, 2), Fraction(-1)),
}


@dataclass
class IrrepState:
    weight: WeightLabel
    state: PolyState
    recipe: dict  # word tuple -> coefficient, words applied to the highest weight

    @property
    def t(self):
        return self.weight.t

    @property
    def t3(self):
        return self.weight.t3

    @property
    def y(self):
        return self.weight.y


class _Haar:
    """Inner products with cached phase expansions."""

    def __init__(self):
        self._cache = {}

    def exp(self, s):
        key = id(s)
        if key not in self._cache:
            self._cache[key] = (s, expansion(s))
        return self._cache[key][1]

    def inner(self, f, g):
        return expansion_inner(self.exp(f), self.exp(g))


def _combine(pairs):
    """Linear combination of (coef, state, recipe)."""
    st, rec = PolyState(), {}
    for c, s, r in pairs:
        st = st + s * c
        for w, v in r.items():
            rec[w] = rec.get(w, 0) + c * v
    return st, {w: v for w, v in rec.items() if abs(v) > 1e-14}


@dataclass
class Irrep:
    label: IrrepLabel
    states: list

    @property
    def dim(self):
        return len(self.states)

    @property
    def norm(self):
        return V0 / self.label.dim

    def index(self, weight):
        w = weight.as_tuple() if isinstance(weight, WeightLabel) else tuple(Fraction(v) for v in weight)
        for k, s in enumerate(self.states):
            if s.weight.as_tuple() == w:
                return k
        raise KeyError(weight)

    def column_functions(self, table=None):
        """D_{hw, a} for every basis label a: right-side replay of each recipe on the highest weight."""
        hw = self.states[0].state
        return [apply_recipe(s.recipe, hw, table, side=Side.RIGHT) for s in self.states]

    def matrix_functions(self, table=None):
        """Full d x d array of PolyStates D_{i, a}, normalized so D(identity) = 1.

        Both recipes act on the highest weight once, so the result is divided by
        the highest weight's value at the identity ((-1)^(p+1)).
        """
        sign = self.states[0].state.evaluate_matrix(np.eye(3)).real
        cols = self.column_functions(table)
        return [[apply_recipe(si.recipe, ca, table, side=Side.LEFT) * (1 / sign) for ca in cols]
                for si in self.states]

    def to_json(self):
        return {
            "p": self.label.p,
            "q": self.label.q,
            "dim": self.label.dim,
            "states": [
                {"t": str(s.t), "t3": str(s.t3), "y": str(s.y), "terms": s.state.to_json()}
                for s in self.states
            ],
        }


def generate_irrep(label, bound=DEFAULT_BOUND, table=None):
    """Orthogonal basis of the irrep, each state of Haar norm^2 V0/dim.

    Weights are visited by descending y, then descending t3. A weight space is
    filled first by normalized T- images (same t as their source), then the
    remaining directions are taken from U-/V- images, orthogonalized, and
    labeled t = t3. Lowering matrix elements come out real and positive.
    """
    if not isinstance(label, IrrepLabel):
        label = IrrepLabel(*label)
    if label.p + label.q > bound:
        raise GenerationError(f"p+q = {label.p + label.q} exceeds the configured bound {bound}")
    table = table or default_action_table()
    d = label.dim
    nrm = V0 / d
    haar = _Haar()
    hw = highest_weight(label)
    hw_norm = haar.inner(hw, hw).real
    if abs(hw_norm - nrm) > 1e-9 * nrm:
        raise GenerationError(f"highest weight norm {hw_norm} differs from V0/d = {nrm}")
    t3m, ym = label.highest_weight
    by_weight = {(t3m, ym): [IrrepState(WeightLabel(t3m, t3m, ym), hw, {(): 1.0})]}
    order = [(t3m, ym)]

    y = ym
    while True:
        upper = [w for w in by_weight if w[1] == y + 1]
        cands = {w[0] - Fraction(1, 2) for w in upper} | {w[0] + Fraction(1, 2) for w in upper}
        if y == ym:
            cands = {t3m}
        pending = sorted(cands, reverse=True)
        done = set()
        found_any = False
        while pending:
            t3 = pending.pop(0)
            if t3 in done:
                continue
            done.add(t3)
            key = (t3, y)
            if key == (t3m, ym):
                found_any = True
                pending = sorted(set(pending) | {t3 - 1}, reverse=True)
                continue
            basis = _fill_weight(key, by_weight, table, haar, nrm)
            if basis:
                by_weight[key] = basis
                order.append(key)
                found_any = True
                pending = sorted(set(pending) | {t3 - 1}, reverse=True)
        if not found_any:
            break
        y -= 1
    states = [s for key in order for s in by_weight[key]]
    if len(states) != d:
        raise GenerationError(f"generated {len(states)} states for {label}, expected {d}")
    return Irrep(label, states)


def _normalized(pairs, haar, nrm):
    st, rec = _combine(pairs)
    n2 = haar.inner(st, st).real
    if n2 < ZERO_TOL * nrm:
        return None
    f = np.sqrt(nrm / n2)
    return st * f, {w: v * f for w, v in rec.items()}


def _fill_weight(key, by_weight, table, haar, nrm):
    t3, y = key
    basis = []
    # T- images carry their source's isospin
    src = by_weight.get((t3 + 1, y), [])
    for s in src:
        if s.t < -t3:
            continue
        img = ladder_action("T-", s.state, table)
        rec = {("T-",) + w: c for w, c in s.recipe.items()}
        got = _orthonormalize(img, rec, basis, haar, nrm)
        if got is None:
            raise GenerationError(f"T- image vanished unexpectedly at weight {key}")
        basis.append(IrrepState(WeightLabel(s.t, t3, y), *got))
    # U- / V- images supply the states with t = t3
    for op in ("U-", "V-"):
        dt3, dy = _SHIFTS[op]
        for s in by_weight.get((t3 - dt3, y - dy), []):
            img = ladder_action(op, s.state, table)
            if not img:
                continue
            rec = {(op,) + w: c for w, c in s.recipe.items()}
            got = _orthonormalize(img, rec, basis, haar, nrm)
            if got is None:
                continue
            if t3 < 0:
                raise GenerationError(f"new isospin top at negative t3 {t3}")
            basis.append(IrrepState(WeightLabel(t3, t3, y), *got))
    return basis


def _orthonormalize(img, rec, basis, haar, nrm):
    """Gram-Schmidt of (img, rec) against ``basis``; phase keeps the overlap with img positive."""
    if haar.inner(img, img).real < ZERO_TOL * nrm:
        return None
    pairs = [(1.0, img, rec)]
    for b in basis:
        c = haar.inner(b.state, img) / nrm
        pairs.append((-c, b.state, b.recipe))
    st, r = _combine(pairs)
    n2 = haar.inner(st, st).real
    if n2 < 1e-10 * haar.inner(img, img).real:
        return None
    f = np.sqrt(nrm / n2)
    st, r = st * f, {w: v * f for w, v in r.items()}
    ov = haar.inner(st, img)
    phase = abs(ov) / ov if abs(ov) > 0 else 1.0
    return st * phase, {w: v * phase for w, v in r.items()}


# ---------------------------------------------------------------- isospin and Casimir


def isospin_squared(state, table=None):
    """T^2 = T- T+ + T3^2 + T3 applied algebraically."""
    tp = ladder_action("T-", ladder_action("T+", state, table), table)
    t3 = ladder_action("T3", state, table)
    return tp + ladder_action("T3", t3, table) + t3


def casimir(state, table=None, side=Side.LEFT):
    """Quadratic Casimir: sum of 1/2 {X+, X-} over T, U, V plus T3^2 + 3/4 Y^2."""
    L = lambda name, s: ladder_action(LadderKind(Ladder(name), side), s, table)  # noqa: E731
    out = PolyState()
    for x in ("T", "U", "V"):
        out = out + (L(x + "+", L(x + "-", state)) + L(x + "-", L(x + "+", state))) * 0.5
    out = out + L("T3", L("T3", state)) + L("Y", L("Y", state)) * 0.75
    return out


def isospin_components(states, table=None):
    """Split states sharing one (t3, y) into total-isospin eigenstates.

    Returns [(t, PolyState)] sorted by descending t; each output has the Haar
    norm of the first input state.
    """
    states = list(states)
    if not states:
        return []
    haar = _Haar()
    if len(states) == 1:
        s = states[0]
        t2 = haar.inner(s, isospin_squared(s, table)) / haar.inner(s, s)
        return [(_t_from_t2(t2.real), s)]
    G = np.array([[haar.inner(a, b) for b in states] for a in states])
    images = [isospin_squared(s, table) for s in states]
    H = np.array([[haar.inner(a, b) for b in images] for a in states])
    # generalized Hermitian problem H c = lambda G c, restricted to the range of G
    w, v = np.linalg.eigh(G)
    keep = w > 1e-10 * w.max()
    P = v[:, keep] / np.sqrt(w[keep])
    lam, u = np.linalg.eigh(P.conj().T @ H @ P)
    coeffs = P @ u
    ref = G[0, 0].real
    out = []
    for k in range(len(lam)):
        c = coeffs[:, k]
        st = PolyState()
        for ck, s in zip(c, states):
            st = st + s * ck
        n2 = haar.inner(st, st).real
        st = st * np.sqrt(ref / n2)
        # fix phase: first sizeable coefficient on the input monomials real positive
        lead = next(x for x in c if abs(x) > 1e-8)
        st = st * (abs(lead) / lead)
        out.append((_t_from_t2(lam[k]), st))
    out.sort(key=lambda ts: -ts[0])
    return out


def _t_from_t2(t2):
    t = (-1 + np.sqrt(1 + 4 * max(t2, 0.0))) / 2
    return Fraction(round(2 * t), 2)


def gram_oracle(words, label, table=None):
    """<L_s hw, L_s' hw> computed algebraically: N times the coefficient of hw in L_s^dagger L_s' hw."""
    hw = highest_weight(label)
    nrm = V0 / IrrepLabel(*label).dim if not isinstance(label, IrrepLabel) else V0 / label.dim
    mono = next(iter(hw.terms))
    n = len(words)
    G = np.zeros((n, n), dtype=complex)
    for i, wi in enumerate(words):
        adj = tuple(_kind(x).adjoint().name for x in reversed(wi))
        for j, wj in enumerate(words):
            s = apply_word(adj + tuple(wj), hw, table)
            G[i, j] = nrm * s.terms.get(mono, 0) / hw.terms[mono]
    return G

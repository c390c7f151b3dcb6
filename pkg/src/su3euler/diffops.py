"""Left and right ladder operators as first-order differential operators.

Operators act on scalar fields on the group: callables taking an angle array of
shape (..., 8) and returning a complex array of shape (...). Derivatives are
taken numerically with a fourth-order central stencil, Richardson-extrapolated
over steps h and h/2.
"""
from dataclasses import dataclass, field
from enum import Enum
from types import SimpleNamespace
from typing import Callable, Optional

import numpy as np

from .algebra import SQRT3
from .euler import as_angle_array

DEFAULT_STEP = 1e-3
GUARD_STEPS = 4


class SingularityError(ValueError):
    """An operator coefficient is singular (or too close) at the requested point."""


class FieldEvaluationError(ValueError):
    """A scalar field returned non-finite values."""


class Ladder(Enum):
    T_PLUS = "T+"
    T_MINUS = "T-"
    U_PLUS = "U+"
    U_MINUS = "U-"
    V_PLUS = "V+"
    V_MINUS = "V-"
    T3 = "T3"
    Y = "Y"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class LadderKind:
    kind: Ladder
    side: Side = Side.LEFT

    def __post_init__(self):
        object.__setattr__(self, "kind", Ladder(self.kind))
        object.__setattr__(self, "side", Side(self.side))

    @property
    def name(self):
        return self.kind.value + ("r" if self.side is Side.RIGHT else "")

    @classmethod
    def parse(cls, text):
        """'T+', 'U-r', 'Y', 'T3r' ... -> LadderKind."""
        side = Side.RIGHT if text.endswith("r") else Side.LEFT
        return cls(Ladder(text[:-1] if side is Side.RIGHT else text), side)

    def adjoint(self):
        """The partner with raising and lowering exchanged (T3, Y are self-adjoint)."""
        swap = {"+": "-", "-": "+"}
        v = self.kind.value
        if v[-1] in swap:
            return LadderKind(Ladder(v[0] + swap[v[-1]]), self.side)
        return self


ALL_KINDS = tuple(LadderKind(k, s) for s in Side for k in Ladder)


@dataclass(frozen=True)
class ScalarField:
    """A complex function on the group, evaluated on angle arrays."""

    eval: Callable
    descriptor: str = ""

    def __call__(self, angles):
        return self.eval(as_angle_array(angles))


def _trig(x):
    al, be, ga, th, a, b, c, ph = (x[..., k] for k in range(8))
    t = SimpleNamespace(al=al, be=be, ga=ga, th=th, a=a, b=b, c=c, eta=ph / SQRT3)
    t.cbe, t.sbe = np.cos(be), np.sin(be)
    t.cb, t.sb = np.cos(b), np.sin(b)
    t.ct, t.st = np.cos(th), np.sin(th)
    t.s2be, t.c2be = np.sin(2 * be), np.cos(2 * be)
    t.s2b, t.c2b = np.sin(2 * b), np.cos(2 * b)
    t.s2t = np.sin(2 * th)
    t.cot2be, t.cot2b = t.c2be / t.s2be, t.c2b / t.s2b
    t.cott, t.tant = t.ct / t.st, t.st / t.ct
    t.w = (2 - t.st**2) / t.s2t
    return t


def _e(z):
    return np.exp(1j * z)


# Singular sets as (axis, spacing): coefficient blows up where angle = k * spacing.
_SING_T_LEFT = ((1, np.pi / 2),)
_SING_T_RIGHT = ((5, np.pi / 2),)
_SING_UV = ((1, np.pi / 2), (5, np.pi / 2), (3, np.pi / 2))


@dataclass(frozen=True)
class DiffOperator:
    """sum_k coeff_k(x) d/dx_axis_k  +  zeroth(x)  +  y8_coupling(x) * Y8.

    ``terms`` holds (axis, coefficient) pairs with axis 1..8 in the order
    (alpha, beta, gamma, theta, a, b, c, phi). ``y8`` names the operator that
    ``y8_coupling`` multiplies.
    """

    name: str
    terms: tuple = ()
    zeroth: Optional[Callable] = None
    y8_coupling: Optional[Callable] = None
    y8: Optional["DiffOperator"] = None
    singular: tuple = ()
    meta: dict = field(default_factory=dict, compare=False)

    def first_order_terms(self):
        """All first-order terms with the Y8 coupling folded in."""
        out = list(self.terms)
        if self.y8_coupling is not None:
            for axis, coeff in self.y8.terms:
                out.append((axis, _product(self.y8_coupling, coeff)))
        return out

    def check_regular(self, x, step):
        x = as_angle_array(x)
        guard = GUARD_STEPS * step
        for axis, spacing in self.singular:
            v = x[..., axis]
            dist = np.abs(v - spacing * np.round(v / spacing))
            if np.any(dist < guard):
                raise SingularityError(
                    f"{self.name}: angle {axis + 1} within {guard:g} of a coefficient singularity"
                )

    def coefficients(self, x):
        """(8, ...) complex array of first-order coefficients at ``x``."""
        x = as_angle_array(x)
        t = _trig(x)
        out = np.zeros((8,) + x.shape[:-1], dtype=complex)
        for axis, coeff in self.first_order_terms():
            out[axis - 1] += coeff(t)
        return out


def _product(f, g):
    return lambda t: f(t) * g(t)


def _const(v):
    return lambda t: v * np.ones_like(t.al)


def _op(name, terms, y8=None, y8_coupling=None, singular=()):
    return DiffOperator(name, tuple(terms), None, y8_coupling, y8, singular)


def _build_left():
    i = 1j
    T3 = _op("T3", [(1, _const(i / 2))])
    Y = _op("Y", [(3, _const(i)), (5, _const(-i)), (8, _const(i / SQRT3))])

    def tpm(sgn):
        ph = lambda t: 0.5 * _e(-sgn * 2 * t.al)  # noqa: E731
        return [
            (1, lambda t: ph(t) * i * t.cot2be),
            (2, lambda t: ph(t) * (-sgn)),
            (3, lambda t: ph(t) * (-i) / t.s2be),
        ]

    def vpm(sgn):
        # sgn=+1 for V+, -1 for V-
        E = lambda t: _e(-sgn * (t.al + t.ga))  # noqa: E731
        F = lambda t: _e(-sgn * (t.al - t.ga - 2 * t.a))  # noqa: E731
        terms = [
            (1, lambda t: i / 2 * E(t) * t.sbe / t.s2be * t.cott),
            (2, lambda t: sgn * 0.5 * E(t) * t.sbe * t.cott),
            (3, lambda t: -i / 2 * E(t) * t.cot2be * t.sbe * t.cott + i / 2 * E(t) * t.w * t.cbe),
            (4, lambda t: -sgn * 0.5 * E(t) * t.cbe),
            (5, lambda t: -i / 2 * E(t) * 2 * t.cbe / t.s2t - i / 2 * F(t) * t.cot2b / t.st * t.sbe),
            (6, lambda t: -sgn * 0.5 * F(t) * t.sbe / t.st),
            (7, lambda t: i / 2 * F(t) * t.sbe / (t.st * t.s2b)),
        ]
        return terms, (lambda t: -0.75 * E(t) * t.tant * t.cbe)

    def upm(sgn):
        G = lambda t: _e(sgn * (t.al - t.ga))  # noqa: E731
        K = lambda t: _e(sgn * (t.al + t.ga + 2 * t.a))  # noqa: E731
        terms = [
            (1, lambda t: i / 2 * G(t) * t.cbe / t.s2be * t.cott),
            (2, lambda t: sgn * 0.5 * G(t) * t.cbe * t.cott),
            (3, lambda t: -i / 2 * G(t) * t.cot2be * t.cbe * t.cott - i / 2 * G(t) * t.w * t.sbe),
            (4, lambda t: sgn * 0.5 * G(t) * t.sbe),
            (5, lambda t: i / 2 * G(t) * 2 * t.sbe / t.s2t - i / 2 * K(t) * t.cot2b / t.st * t.cbe),
            (6, lambda t: -sgn * 0.5 * K(t) * t.cbe / t.st),
            (7, lambda t: i / 2 * K(t) * t.cbe / (t.st * t.s2b)),
        ]
        return terms, (lambda t: 0.75 * G(t) * t.tant * t.sbe)

    ops = {Ladder.T3: T3, Ladder.Y: Y}
    ops[Ladder.T_PLUS] = _op("T+", tpm(1), singular=_SING_T_LEFT)
    ops[Ladder.T_MINUS] = _op("T-", tpm(-1), singular=_SING_T_LEFT)
    for kind, sgn in ((Ladder.V_PLUS, 1), (Ladder.V_MINUS, -1)):
        terms, y8c = vpm(sgn)
        ops[kind] = _op(kind.value, terms, Y, y8c, _SING_UV)
    for kind, sgn in ((Ladder.U_PLUS, 1), (Ladder.U_MINUS, -1)):
        terms, y8c = upm(sgn)
        ops[kind] = _op(kind.value, terms, Y, y8c, _SING_UV)
    return ops


def _build_right():
    i = 1j
    T3 = _op("T3r", [(7, _const(i / 2))])
    Y = _op("Yr", [(8, _const(i / SQRT3))])

    def tpm(sgn):
        ph = lambda t: 0.5 * _e(-sgn * 2 * t.c)  # noqa: E731
        return [
            (7, lambda t: ph(t) * (-i) * t.cot2b),
            (6, lambda t: ph(t) * sgn),
            (5, lambda t: ph(t) * i / t.s2b),
        ]

    def vpm(sgn):
        # sgn=+1 for V-r, -1 for V+r
        P = lambda t: _e(sgn * (t.c + t.a + 3 * t.eta))  # noqa: E731
        Q = lambda t: _e(sgn * (t.c - t.a - 2 * t.ga + 3 * t.eta))  # noqa: E731
        terms = [
            (7, lambda t: -i / 2 * P(t) * t.sb / t.s2b * t.cott),
            (6, lambda t: sgn * 0.5 * P(t) * t.sb * t.cott),
            (5, lambda t: i / 2 * P(t) * t.cot2b * t.sb * t.cott - i / 2 * P(t) * t.w * t.cb),
            (4, lambda t: -sgn * 0.5 * P(t) * t.cb),
            (3, lambda t: i / 2 * P(t) * 2 * t.cb / t.s2t + i / 2 * Q(t) * t.cot2be / t.st * t.sb),
            (2, lambda t: -sgn * 0.5 * Q(t) * t.sb / t.st),
            (1, lambda t: -i / 2 * Q(t) * t.sb / (t.st * t.s2be)),
        ]
        return terms, (lambda t: 0.75 * P(t) * t.tant * t.cb)

    def upm(sgn):
        # sgn=+1 for U-r, -1 for U+r
        M = lambda t: _e(-sgn * (t.c - t.a - 3 * t.eta))  # noqa: E731
        N = lambda t: _e(-sgn * (t.c + t.a + 2 * t.ga - 3 * t.eta))  # noqa: E731
        terms = [
            (7, lambda t: i / 2 * M(t) * t.cb / t.s2b * t.cott),
            (6, lambda t: -sgn * 0.5 * M(t) * t.cb * t.cott),
            (5, lambda t: -i / 2 * M(t) * t.cot2b * t.cb * t.cott - i / 2 * M(t) * t.w * t.sb),
            (4, lambda t: -sgn * 0.5 * M(t) * t.sb),
            (3, lambda t: i / 2 * M(t) * 2 * t.sb / t.s2t - i / 2 * N(t) * t.cot2be / t.st * t.cb),
            (2, lambda t: sgn * 0.5 * N(t) * t.cb / t.st),
            (1, lambda t: i / 2 * N(t) * t.cb / (t.st * t.s2be)),
        ]
        return terms, (lambda t: 0.75 * M(t) * t.tant * t.sb)

    ops = {Ladder.T3: T3, Ladder.Y: Y}
    ops[Ladder.T_PLUS] = _op("T+r", tpm(1), singular=_SING_T_RIGHT)
    ops[Ladder.T_MINUS] = _op("T-r", tpm(-1), singular=_SING_T_RIGHT)
    for kind, sgn in ((Ladder.V_MINUS, 1), (Ladder.V_PLUS, -1)):
        terms, y8c = vpm(sgn)
        ops[kind] = _op(kind.value + "r", terms, Y, y8c, _SING_UV)
    for kind, sgn in ((Ladder.U_MINUS, 1), (Ladder.U_PLUS, -1)):
        terms, y8c = upm(sgn)
        ops[kind] = _op(kind.value + "r", terms, Y, y8c, _SING_UV)
    return ops


_OPERATORS = {Side.LEFT: _build_left(), Side.RIGHT: _build_right()}


def build_operator(which):
    """The differential operator for a LadderKind (or a name like 'V+r')."""
    if isinstance(which, str):
        which = LadderKind.parse(which)
    return _OPERATORS[which.side][which.kind]


def _stencil_offsets(step):
    # 4th-order central differences at h and h/2 share the +-h points
    return np.array([-2, -1, -0.5, 0.5, 1, 2]) * step


def gradient(f, x, step=DEFAULT_STEP):
    """(8, ...) array of partial derivatives of ``f`` at points ``x``."""
    x = as_angle_array(x)
    offs = _stencil_offsets(step)
    pts = np.broadcast_to(x[..., None, None, :], x.shape[:-1] + (8, len(offs), 8)).copy()
    for k in range(8):
        pts[..., k, :, k] += offs
    vals = np.asarray(f(pts))
    if not np.all(np.isfinite(vals)):
        raise FieldEvaluationError("scalar field returned non-finite values near the requested point")
    m2, m1, mh, ph, p1, p2 = (vals[..., j] for j in range(6))
    d_h = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * step)
    d_h2 = (m1 - 8 * mh + 8 * ph - p1) / (6 * step)
    d = (16 * d_h2 - d_h) / 15
    return np.moveaxis(d, -1, 0)


def apply(op, f, at, step=DEFAULT_STEP):
    """(op f)(at) by finite differences. ``op`` may be a DiffOperator or LadderKind."""
    if step <= 0:
        raise ValueError("step must be positive")
    if not isinstance(op, DiffOperator):
        op = build_operator(op)
    x = as_angle_array(at)
    op.check_regular(x, step)
    grad = gradient(f, x, step)
    out = np.sum(op.coefficients(x) * grad, axis=0)
    if op.zeroth is not None:
        out = out + op.zeroth(_trig(x)) * f(x)
    return out


def applied(op, f, step=DEFAULT_STEP):
    """The field x -> (op f)(x), for composing operators."""
    if not isinstance(op, DiffOperator):
        op = build_operator(op)
    name = getattr(f, "descriptor", "f")
    return ScalarField(lambda x: apply(op, f, x, step), f"{op.name}({name})")


def commutator_residual(op1, op2, expected, probes, step=DEFAULT_STEP):
    """max |([op1, op2] - expected) f| over (field, point) probes.

    ``expected`` is an operator, a (coefficient, operator) pair, a list of such
    pairs, or None for zero.
    """
    if expected is None:
        expected = []
    elif isinstance(expected, (DiffOperator, LadderKind, str)):
        expected = [(1.0, expected)]
    elif isinstance(expected, tuple) and len(expected) == 2 and np.isscalar(expected[0]):
        expected = [expected]
    worst = 0.0
    for f, at in probes:
        x = as_angle_array(at)
        lhs = (apply(op1, applied(op2, f, step), x, step)
               - apply(op2, applied(op1, f, step), x, step))
        rhs = sum((coef * apply(op, f, x, step) for coef, op in expected), 0.0)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst

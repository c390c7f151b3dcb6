"""Euler-angle parameterization of SU(3): fundamental and adjoint matrices.

Every evaluator accepts either an :class:`EulerAngles` or an array whose last
axis holds the eight angles in the order (alpha, beta, gamma, theta, a, b, c, phi),
and broadcasts over any leading axes.
"""
from dataclasses import astuple, dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .algebra import LAMBDA, SQRT3, generator_exp

ANGLE_NAMES = ("alpha", "beta", "gamma", "theta", "a", "b", "c", "phi")

# (lower, upper) per angle; phase angles are half-open
CANONICAL_RANGES = (
    (0.0, np.pi),
    (0.0, np.pi / 2),
    (0.0, np.pi),
    (0.0, np.pi / 2),
    (0.0, np.pi),
    (0.0, np.pi / 2),
    (0.0, np.pi),
    (0.0, SQRT3 * np.pi),
)


@dataclass(frozen=True)
class EulerAngles:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    theta: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    phi: float = 0.0

    @property
    def eta(self):
        return self.phi / SQRT3

    def as_array(self):
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, values):
        values = np.asarray(values, dtype=float).ravel()
        if values.shape != (8,):
            raise ValueError(f"expected 8 angles, got {values.shape[0]}")
        return cls(*map(float, values))

    def in_canonical_ranges(self):
        return in_canonical_ranges(self.as_array())


def in_canonical_ranges(angles):
    """Boolean mask (over leading axes) of points inside the canonical box."""
    x = np.asarray(angles, dtype=float)
    ok = np.ones(x.shape[:-1], dtype=bool)
    for k, (lo, hi) in enumerate(CANONICAL_RANGES):
        closed = k in (1, 3, 5)
        ok &= x[..., k] >= lo
        ok &= (x[..., k] <= hi) if closed else (x[..., k] < hi)
    return ok


def as_angle_array(angles):
    if isinstance(angles, EulerAngles):
        return angles.as_array()
    x = np.asarray(angles, dtype=float)
    if x.shape[-1:] != (8,):
        raise ValueError(f"angle arrays need a trailing axis of length 8, got shape {x.shape}")
    return x


class FundamentalRep(Enum):
    THREE = "3"
    THREE_STAR = "3*"

    @property
    def pq(self):
        return (1, 0) if self is FundamentalRep.THREE else (0, 1)


# Weight labels (t3, y) of the rows/columns of each fundamental matrix, in
# table order.
FUNDAMENTAL_WEIGHTS = {
    FundamentalRep.THREE: (
        (Fraction(1, 2), Fraction(1, 3)),
        (Fraction(-1, 2), Fraction(1, 3)),
        (Fraction(0), Fraction(-2, 3)),
    ),
    FundamentalRep.THREE_STAR: (
        (Fraction(-1, 2), Fraction(-1, 3)),
        (Fraction(1, 2), Fraction(-1, 3)),
        (Fraction(0), Fraction(2, 3)),
    ),
}

# Generator order and exponent signs of the eight-factor product.
_FACTORS = (3, 2, 3, 5, 3, 2, 3, 8)
_SIGNS = {
    FundamentalRep.THREE: (-1, 1, -1, 1, -1, 1, -1, -1),
    FundamentalRep.THREE_STAR: (1, -1, 1, -1, 1, -1, 1, 1),
}

# S conj(D3) S = D3*, S = diag(-1, 1, 1)
STAR_SIGNS = np.array([-1.0, 1.0, 1.0])


def product_rep(angles, rep=FundamentalRep.THREE):
    """Ordered product of the eight one-parameter exponentials."""
    rep = FundamentalRep(rep)
    x = as_angle_array(angles)
    out = np.broadcast_to(np.eye(3, dtype=complex), x.shape[:-1] + (3, 3))
    for k, (gen, sign) in enumerate(zip(_FACTORS, _SIGNS[rep])):
        out = out @ generator_exp(gen, x[..., k], sign)
    return out


def _unpack(angles):
    x = as_angle_array(angles)
    return [x[..., k] for k in range(8)]


def closed_rep(angles, rep=FundamentalRep.THREE):
    """Fundamental matrix assembled element by element from closed forms."""
    rep = FundamentalRep(rep)
    al, be, ga, th, a, b, c, ph = _unpack(angles)
    eta = ph / SQRT3
    E = lambda z: np.exp(1j * z)  # noqa: E731
    cb, sb = np.cos(be), np.sin(be)
    cB, sB = np.cos(b), np.sin(b)
    ct, st = np.cos(th), np.sin(th)
    out = np.empty(np.shape(al) + (3, 3), dtype=complex)
    if rep is FundamentalRep.THREE:
        out[..., 0, 0] = E(-al - c - eta) * (E(-ga - a) * cb * cB * ct - E(ga + a) * sb * sB)
        out[..., 0, 1] = E(-al + c - eta) * (E(-ga - a) * cb * sB * ct + E(ga + a) * sb * cB)
        out[..., 0, 2] = E(-al - ga + 2 * eta) * cb * st
        out[..., 1, 0] = -E(al - c - eta) * (E(-ga - a) * sb * cB * ct + E(ga + a) * cb * sB)
        out[..., 1, 1] = -E(al + c - eta) * (E(-ga - a) * sb * sB * ct - E(ga + a) * cb * cB)
        out[..., 1, 2] = -E(al - ga + 2 * eta) * sb * st
        out[..., 2, 0] = -E(-a - c - eta) * st * cB
        out[..., 2, 1] = -E(-a + c - eta) * sB * st
        out[..., 2, 2] = E(2 * eta) * ct
    else:
        out[..., 0, 0] = E(al + c + eta) * (E(ga + a) * cb * cB * ct - E(-ga - a) * sb * sB)
        out[..., 0, 1] = -E(al - c + eta) * (E(ga + a) * cb * sB * ct + E(-ga - a) * sb * cB)
        out[..., 0, 2] = -E(al + ga - 2 * eta) * cb * st
        out[..., 1, 0] = E(-al + c + eta) * (E(ga + a) * sb * cB * ct + E(-ga - a) * cb * sB)
        out[..., 1, 1] = -E(-al - c + eta) * (E(ga + a) * sb * sB * ct - E(-ga - a) * cb * cB)
        out[..., 1, 2] = -E(-al + ga - 2 * eta) * sb * st
        out[..., 2, 0] = E(a + c + eta) * st * cB
        out[..., 2, 1] = -E(a - c + eta) * st * sB
        out[..., 2, 2] = E(-2 * eta) * ct
    return out


def substituted_rep(angles, signs=(1, -1, -1, 1, -1, 1, -1, -1)):
    """Product of exponentials of the Three rep after lambda_k -> signs[k-1] lambda_k.

    With the default signs the result is the ThreeStar matrix itself (its
    complex conjugate is not).
    """
    x = as_angle_array(angles)
    out = np.broadcast_to(np.eye(3, dtype=complex), x.shape[:-1] + (3, 3))
    for k, (gen, sign) in enumerate(zip(_FACTORS, _SIGNS[FundamentalRep.THREE])):
        out = out @ generator_exp(gen, x[..., k], sign * signs[gen - 1])
    return out


def star_from_three(u):
    """ThreeStar matrix of the group element whose Three matrix is ``u``."""
    return STAR_SIGNS[:, None] * np.conj(u) * STAR_SIGNS[None, :]


def adjoint_from_conjugation(angles, rep=FundamentalRep.THREE):
    """R_ij = tr(W l_i W^dagger l_j) / 2 with W the conjugate Three matrix.

    W is rebuilt from whichever fundamental ``rep`` names (for ThreeStar,
    W = S D S), so both choices must give the same matrix.
    """
    rep = FundamentalRep(rep)
    d = product_rep(angles, rep)
    if rep is FundamentalRep.THREE:
        w = np.conj(d)
    else:
        w = STAR_SIGNS[:, None] * d * STAR_SIGNS[None, :]
    return adjoint_of_matrix(w)


def adjoint_of_matrix(u):
    """Real 8x8 R with u l_i u^dagger = sum_j R_ij l_j.

    Composition reverses order: R(u1 u2) = R(u2) R(u1).
    """
    u = np.asarray(u)
    conj = u[..., None, :, :] @ LAMBDA @ np.conj(np.swapaxes(u, -1, -2))[..., None, :, :]
    r = np.einsum("...iab,jba->...ij", conj, LAMBDA) / 2
    return r.real


def adjoint_closed(angles):
    """8x8 real adjoint matrix from its 64 closed-form entries."""
    al, be, ga, th, a, b, c, ph = _unpack(angles)
    eta = ph / SQRT3
    cos, sin = np.cos, np.sin
    s3 = SQRT3
    c2al, s2al = cos(2 * al), sin(2 * al)
    c2be, s2be = cos(2 * be), sin(2 * be)
    cbe, sbe = cos(be), sin(be)
    c2b, s2b = cos(2 * b), sin(2 * b)
    cb, sb = cos(b), sin(b)
    c2c, s2c = cos(2 * c), sin(2 * c)
    ct, st = cos(th), sin(th)
    s2t, c2t = sin(2 * th), cos(2 * th)
    half = 1 - 0.5 * st**2  # 1 - sin^2(theta)/2
    sct = st * ct  # sin(2 theta)/2
    cG, sG = cos(2 * a + 2 * ga), sin(2 * a + 2 * ga)
    # recurring phase combinations
    p1 = al - ga - 2 * a
    p2 = al + ga + 2 * a
    q1 = a - c + 2 * ga - 3 * eta
    q2 = a + c + 3 * eta
    q3 = a + ga - al - c - 3 * eta
    q4 = a + ga + al - c - 3 * eta
    r1 = a + c + 2 * ga - 3 * eta
    r2 = a - c + 3 * eta
    r3 = a + c + ga - al - 3 * eta
    r4 = a + c + ga + al - 3 * eta

    R = np.empty(np.shape(al) + (8, 8))
    R[..., 0, 0] = (c2al * c2be * ct * (cG * c2b * c2c - sG * s2c)
                    - s2al * ct * (sG * c2b * c2c + cG * s2c)
                    - c2al * s2be * half * s2b * c2c)
    R[..., 0, 1] = (-s2al * c2be * ct * (cG * c2b * c2c - sG * s2c)
                    - c2al * ct * (sG * c2b * c2c + cG * s2c)
                    + s2al * s2be * half * s2b * c2c)
    R[..., 0, 2] = (s2be * cG * c2b * c2c * ct - s2be * sG * s2c * ct
                    + c2be * half * s2b * c2c)
    R[..., 0, 3] = (-0.5 * cos(al + ga) * cbe * s2t * s2b * c2c
                    - cos(p1) * sbe * c2b * c2c * st
                    - sin(p1) * sbe * s2c * st)
    R[..., 0, 4] = (0.5 * sin(al + ga) * cbe * s2t * s2b * c2c
                    + sin(p1) * sbe * c2b * c2c * st
                    - cos(p1) * sbe * s2c * st)
    R[..., 0, 5] = (0.5 * cos(al - ga) * sbe * s2t * s2b * c2c
                    - cos(p2) * cbe * c2b * c2c * st
                    + sin(p2) * cbe * s2c * st)
    R[..., 0, 6] = (0.5 * sin(al - ga) * sbe * s2t * s2b * c2c
                    - sin(p2) * cbe * c2b * c2c * st
                    - cos(p2) * cbe * s2c * st)
    R[..., 0, 7] = -s3 / 2 * st**2 * s2b * c2c

    R[..., 1, 0] = (c2al * c2be * ct * (sG * c2c + cG * c2b * s2c)
                    - s2al * ct * (sG * c2b * s2c - cG * c2c)
                    - c2al * s2be * half * s2b * s2c)
    R[..., 1, 1] = (-s2al * c2be * ct * (sG * c2c + cG * c2b * s2c)
                    - c2al * ct * (sG * c2b * s2c - cG * c2c)
                    + s2al * s2be * half * s2b * s2c)
    R[..., 1, 2] = (s2be * ct * (cG * c2b * s2c + sG * c2c)
                    + c2be * half * s2b * s2c)
    R[..., 1, 3] = (-0.5 * cos(al + ga) * cbe * s2t * s2b * s2c
                    + sin(p1) * sbe * st * c2c
                    - cos(p1) * sbe * st * c2b * s2c)
    R[..., 1, 4] = (0.5 * sin(al + ga) * cbe * s2t * s2b * s2c
                    + cos(p1) * sbe * st * c2c
                    + sin(p1) * sbe * st * c2b * s2c)
    R[..., 1, 5] = (0.5 * cos(al - ga) * sbe * s2t * s2b * s2c
                    - sin(p2) * cbe * st * c2c
                    - cos(p2) * cbe * st * c2b * s2c)
    R[..., 1, 6] = (0.5 * sin(al - ga) * sbe * s2t * s2b * s2c
                    + cos(p2) * cbe * st * c2c
                    - sin(p2) * cbe * st * c2b * s2c)
    R[..., 1, 7] = -s3 / 2 * st**2 * s2b * s2c

    R[..., 2, 0] = (-c2al * c2be * ct * s2b * cG
                    + s2al * ct * s2b * sG
                    - c2al * s2be * half * c2b)
    R[..., 2, 1] = (s2al * c2be * ct * s2b * cG
                    + c2al * ct * s2b * sG
                    + s2al * s2be * half * c2b)
    R[..., 2, 2] = -s2be * ct * s2b * cG + c2be * half * c2b
    R[..., 2, 3] = -0.5 * cos(al + ga) * cbe * s2t * c2b + cos(p1) * sbe * st * s2b
    R[..., 2, 4] = 0.5 * sin(al + ga) * cbe * s2t * c2b - sin(p1) * sbe * st * s2b
    R[..., 2, 5] = 0.5 * cos(al - ga) * sbe * s2t * c2b + cos(p2) * cbe * st * s2b
    R[..., 2, 6] = 0.5 * sin(al - ga) * sbe * s2t * c2b + sin(p2) * cbe * st * s2b
    R[..., 2, 7] = -s3 / 2 * st**2 * c2b

    R[..., 3, 0] = (-c2al * c2be * st * sb * cos(q1)
                    - c2al * s2be * sct * cos(q2) * cb
                    + s2al * st * sb * sin(q1))
    R[..., 3, 1] = (s2al * c2be * st * sb * cos(q1)
                    + s2al * s2be * sct * cos(q2) * cb
                    + c2al * st * sb * sin(q1))
    R[..., 3, 2] = -s2be * st * sb * cos(q1) + c2be * sct * cos(q2) * cb
    R[..., 3, 3] = (cos(al + ga) * cbe * c2t * cos(q2) * cb
                    - sin(al + ga) * cbe * sin(q2) * cb
                    - sbe * ct * sb * cos(q3))
    R[..., 3, 4] = (-sin(al + ga) * cbe * c2t * cos(q2) * cb
                    - cos(al + ga) * cbe * sin(q2) * cb
                    - sbe * ct * sb * sin(q3))
    R[..., 3, 5] = (-cos(al - ga) * sbe * c2t * cos(q2) * cb
                    - sin(al - ga) * sbe * sin(q2) * cb
                    - cbe * ct * sb * cos(q4))
    R[..., 3, 6] = (-sin(al - ga) * sbe * c2t * cos(q2) * cb
                    + cos(al - ga) * sbe * sin(q2) * cb
                    - cbe * ct * sb * sin(q4))
    R[..., 3, 7] = s3 * sct * cos(q2) * cb

    R[..., 4, 0] = (c2al * c2be * st * sb * sin(q1)
                    - c2al * s2be * sct * sin(q2) * cb
                    + s2al * st * sb * cos(q1))
    R[..., 4, 1] = (-s2al * c2be * st * sb * sin(q1)
                    + s2al * s2be * sct * sin(q2) * cb
                    + c2al * st * sb * cos(q1))
    R[..., 4, 2] = s2be * st * sb * sin(q1) + c2be * sct * cb * sin(q2)
    R[..., 4, 3] = (cos(al + ga) * cbe * c2t * sin(q2) * cb
                    + sin(al + ga) * cbe * cos(q2) * cb
                    + sbe * ct * sb * sin(q3))
    R[..., 4, 4] = (-sin(al + ga) * cbe * c2t * sin(q2) * cb
                    + cos(al + ga) * cbe * cos(q2) * cb
                    - sbe * ct * sb * cos(q3))
    R[..., 4, 5] = (-cos(al - ga) * sbe * c2t * sin(q2) * cb
                    + sin(al - ga) * sbe * cos(q2) * cb
                    + cbe * ct * sb * sin(q4))
    R[..., 4, 6] = (-sin(al - ga) * sbe * c2t * sin(q2) * cb
                    - cos(al - ga) * sbe * cos(q2) * cb
                    - cbe * ct * sb * cos(q4))
    R[..., 4, 7] = s3 * sct * sin(q2) * cb

    R[..., 5, 0] = (c2al * c2be * st * cb * cos(r1)
                    - c2al * s2be * sct * cos(r2) * sb
                    - s2al * st * cb * sin(r1))
    R[..., 5, 1] = (-s2al * c2be * st * cb * cos(r1)
                    + s2al * s2be * sct * cos(r2) * sb
                    - c2al * st * cb * sin(r1))
    R[..., 5, 2] = s2be * st * cb * cos(r1) + c2be * sct * sb * cos(r2)
    R[..., 5, 3] = (cos(al + ga) * cbe * c2t * cos(r2) * sb
                    - sin(al + ga) * cbe * sin(r2) * sb
                    + sbe * ct * cb * cos(r3))
    R[..., 5, 4] = (-sin(al + ga) * cbe * c2t * cos(r2) * sb
                    - cos(al + ga) * cbe * sin(r2) * sb
                    + sbe * ct * cb * sin(r3))
    R[..., 5, 5] = (-cos(al - ga) * sbe * c2t * cos(r2) * sb
                    - sin(al - ga) * sbe * sin(r2) * sb
                    + cbe * ct * cb * cos(r4))
    R[..., 5, 6] = (-sin(al - ga) * sbe * c2t * cos(r2) * sb
                    + cos(al - ga) * sbe * sin(r2) * sb
                    + cbe * ct * cb * sin(r4))
    R[..., 5, 7] = s3 * sct * cos(r2) * sb

    R[..., 6, 0] = (-c2al * c2be * st * cb * sin(r1)
                    - c2al * s2be * sct * sin(r2) * sb
                    - s2al * st * cb * cos(r1))
    R[..., 6, 1] = (s2al * c2be * st * cb * sin(r1)
                    + s2al * s2be * sct * sin(r2) * sb
                    - c2al * st * cb * cos(r1))
    R[..., 6, 2] = -s2be * st * cb * sin(r1) + c2be * sct * sb * sin(r2)
    R[..., 6, 3] = (cos(al + ga) * cbe * c2t * sin(r2) * sb
                    + sin(al + ga) * cbe * cos(r2) * sb
                    - sbe * ct * cb * sin(r3))
    R[..., 6, 4] = (-sin(al + ga) * cbe * c2t * sin(r2) * sb
                    + cos(al + ga) * cbe * cos(r2) * sb
                    + sbe * ct * cb * cos(r3))
    R[..., 6, 5] = (-cos(al - ga) * sbe * c2t * sin(r2) * sb
                    + sin(al - ga) * sbe * cos(r2) * sb
                    - cbe * ct * cb * sin(r4))
    R[..., 6, 6] = (-sin(al - ga) * sbe * c2t * sin(r2) * sb
                    - cos(al - ga) * sbe * cos(r2) * sb
                    + cbe * ct * cb * cos(r4))
    R[..., 6, 7] = s3 * sct * sin(r2) * sb

    R[..., 7, 0] = s3 / 2 * c2al * s2be * st**2
    R[..., 7, 1] = -s3 / 2 * s2al * s2be * st**2
    R[..., 7, 2] = -s3 / 2 * c2be * st**2
    R[..., 7, 3] = -s3 / 2 * cos(al + ga) * cbe * s2t
    R[..., 7, 4] = s3 / 2 * sin(al + ga) * cbe * s2t
    R[..., 7, 5] = s3 / 2 * cos(al - ga) * sbe * s2t
    R[..., 7, 6] = s3 / 2 * sin(al - ga) * sbe * s2t
    R[..., 7, 7] = 1 - 1.5 * st**2
    return R

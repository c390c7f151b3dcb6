"""Gell-Mann basis, commutators, structure constants and unitary exponentials."""
import numpy as np

DEFAULT_TOL = 1e-10

SQRT3 = np.sqrt(3.0)


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


def gellmann_basis():
    """Return the eight Gell-Mann matrices as a (8, 3, 3) complex array.

    ``basis[k]`` is lambda_{k+1}; tr(lambda_i lambda_j) = 2 delta_ij.
    """
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / SQRT3
    lam.setflags(write=False)
    return lam


LAMBDA = gellmann_basis()


def matrices_close(a, b, tol=DEFAULT_TOL):
    """Max-norm comparison; the only notion of matrix equality used here."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) < tol)


def commutator(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[-2:] != b.shape[-2:] or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def structure_constants(basis=LAMBDA):
    """f_ijk = tr([l_i, l_j] l_k) / 4i, as an (8, 8, 8) real array (0-based)."""
    basis = np.asarray(basis)
    comm = basis[:, None] @ basis[None, :] - basis[None, :] @ basis[:, None]
    f = np.einsum("ijab,kba->ijk", comm, basis) / 4j
    if np.max(np.abs(f.imag)) > DEFAULT_TOL:
        raise DomainError("basis does not close under commutation with real constants")
    return f.real


def unitary_exp(arg, tol=DEFAULT_TOL):
    """Matrix exponential of an anti-Hermitian ``arg`` via Hermitian eigendecomposition.

    ``arg`` is the full exponent, e.g. ``-1j * alpha * LAMBDA[2]``.
    Broadcasts over leading axes.
    """
    arg = np.asarray(arg, dtype=complex)
    residual = np.max(np.abs(arg + np.conj(np.swapaxes(arg, -1, -2))), initial=0.0)
    if residual > tol * max(1.0, np.max(np.abs(arg), initial=0.0)):
        raise DomainError(f"exponent is not anti-Hermitian (residual {residual:.3g})")
    h = 1j * arg  # Hermitian
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def generator_exp(k, angle, sign=1):
    """exp(sign * i * lambda_k * angle) for 1-based generator index ``k``.

    Broadcasts over an array of angles.
    """
    angle = np.asarray(angle, dtype=float)
    return unitary_exp(sign * 1j * angle[..., None, None] * LAMBDA[k - 1])

"""Dense complex linear algebra for small operators.

Operators are plain ``numpy`` complex arrays of shape ``(d, d)``.  Only the
handful of routines needed by the physics modules live here: Kronecker
products, Hermitian eigensolving and the square root of a positive
semidefinite matrix.
"""

import numpy as np

__all__ = [
    "NonHermitianInput",
    "NegativeSpectrum",
    "HERMITIAN_TOL",
    "as_operator",
    "dag",
    "kron",
    "check_hermitian",
    "herm_eigh",
    "herm_eigvals",
    "psd_sqrt",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
]

HERMITIAN_TOL = 1e-10
# eigenvalues in (-NEG_RAISE_TOL, 0) are treated as round-off and clamped
NEG_RAISE_TOL = 1e-8

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class NonHermitianInput(ValueError):
    """Raised when a routine that requires a Hermitian matrix gets another."""


class NegativeSpectrum(ValueError):
    """Raised when a matrix expected to be PSD has a clearly negative eigenvalue."""


def as_operator(a):
    """Return `a` as a square complex array, raising ``ValueError`` otherwise."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def dag(a):
    """Conjugate transpose."""
    return np.conj(np.transpose(a))


def kron(a, b):
    """Kronecker product ``a (x) b``.

    ``(a (x) b)[i*db + k, j*db + l] == a[i, j] * b[k, l]``.
    """
    return np.kron(as_operator(a), as_operator(b))


def check_hermitian(a, tol=HERMITIAN_TOL):
    """Raise :class:`NonHermitianInput` unless ``max|a - a^H| <= tol``."""
    a = as_operator(a)
    err = np.max(np.abs(a - dag(a)))
    if err > tol:
        raise NonHermitianInput(f"matrix is not Hermitian: max|A - A^H| = {err:.3e}")
    return a


def herm_eigh(a, tol=HERMITIAN_TOL):
    """Eigen-decomposition of a Hermitian matrix.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    v : ndarray
        Unitary matrix whose columns are the eigenvectors, ``a = v diag(w) v^H``.
    """
    a = check_hermitian(a, tol)
    # symmetrize so that eigh sees an exactly Hermitian matrix
    return np.linalg.eigh(0.5 * (a + dag(a)))


def herm_eigvals(a, tol=HERMITIAN_TOL):
    """Real eigenvalues of a Hermitian matrix, ascending."""
    a = check_hermitian(a, tol)
    return np.linalg.eigvalsh(0.5 * (a + dag(a)))


ROUNDOFF_FLOOR = 1e-14


def psd_sqrt(a, tol=HERMITIAN_TOL):
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues between ``-1e-8`` and ``0`` are clamped to zero; anything more
    negative raises :class:`NegativeSpectrum`. Eigenvalues at the level of
    eigensolver round-off are also zeroed, since their square roots (~1e-8)
    would otherwise spoil ``sqrt(P) == P`` for projectors.
    """
    w, v = herm_eigh(a, tol)
    if w.size and w[0] < -NEG_RAISE_TOL:
        raise NegativeSpectrum(f"smallest eigenvalue {w[0]:.3e} is negative")
    floor = ROUNDOFF_FLOOR * max(1.0, float(np.abs(w).max(initial=0.0)))
    root = np.sqrt(np.where(w > floor, w, 0.0))
    b = (v * root) @ dag(v)
    return 0.5 * (b + dag(b))

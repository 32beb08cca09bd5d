"""Lead-resolved current, Wootters concurrence and simple state diagnostics."""

import numpy as np

from .liouvillian import Generator, devectorize, vectorize
from .operators import ROUNDOFF_FLOOR, SIGMA_Y, check_hermitian, herm_eigvals, kron, psd_sqrt

__all__ = [
    "InvalidState",
    "NUMBER_OPERATOR",
    "current",
    "concurrence",
    "spin_flip",
    "populations",
    "purity",
]

# total dot occupation n_A + n_B in the |gg>, |ge>, |eg>, |ee> basis
NUMBER_OPERATOR = np.diag([0.0, 1.0, 1.0, 2.0]).astype(complex)

_SYSY = kron(SIGMA_Y, SIGMA_Y)
_LEAD_SIGN = {"left": 1.0, "L": 1.0, "right": -1.0, "R": -1.0}


class InvalidState(ValueError):
    """Input is not a valid two-qubit density matrix."""


def current(g: Generator, lead, rho):
    """Particle current through ``lead`` in units of ``e * gamma0 / hbar``.

    The rate at which lead ``nu`` changes the dot occupation,
    ``Tr(N M_nu rho)``, equals minus the rate of change of that lead's
    electron number at this order, so it stands in for the lead current.
    The sign is chosen so that electrons moving left to right give a
    positive value through both leads.
    """
    sign = _LEAD_SIGN[lead]
    drho = devectorize(g.lead_part(lead) @ vectorize(rho))
    return sign * float(np.real(np.trace(NUMBER_OPERATOR @ drho)))


def spin_flip(rho):
    """``(sy kron sy) rho* (sy kron sy)``, conjugated in the computational basis."""
    return _SYSY @ np.conj(rho) @ _SYSY


def _validate(rho, trace_tol=1e-6, psd_tol=1e-8):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 density matrix, got shape {rho.shape}")
    try:
        check_hermitian(rho, 1e-8)
    except ValueError as exc:
        raise InvalidState(str(exc)) from None
    if abs(np.trace(rho) - 1) > trace_tol:
        raise InvalidState(f"trace {np.trace(rho):.6g} differs from 1")
    if herm_eigvals(rho, 1e-8)[0] < -psd_tol:
        raise InvalidState("density matrix has a negative eigenvalue")
    return 0.5 * (rho + rho.conj().T)


def concurrence(rho):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the eigenvalues of ``R = sqrt(sqrt(rho) rho~ sqrt(rho))``
    in decreasing order.  ``R`` is Hermitian, so they are obtained as square
    roots of the Hermitian eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``.
    Eigenvalues at round-off level are zeroed before the square root.
    """
    rho = _validate(rho)
    root = psd_sqrt(rho)
    inner = root @ spin_flip(rho) @ root
    inner = 0.5 * (inner + inner.conj().T)
    w = herm_eigvals(inner, 1e-8)
    floor = ROUNDOFF_FLOOR * max(1.0, float(np.abs(w).max()))
    lam = np.sqrt(np.where(w > floor, w, 0.0))[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0))


def populations(rho):
    """Diagonal of ``rho`` (real parts) in the gg, ge, eg, ee order."""
    return np.real(np.diag(rho)).copy()


def purity(rho):
    return float(np.real(np.trace(rho @ rho)))

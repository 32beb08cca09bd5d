"""Reservoir physics for normal and BCS superconducting leads.

Energies, temperatures and rates are measured in units of the base rate
``gamma0`` (with hbar = e = k_B = 1).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

__all__ = [
    "DegenerateInput",
    "NonPositiveFrequency",
    "DEFAULT_TEMPERATURE",
    "LeadParams",
    "CouplingSet",
    "default_dynes",
    "fermi",
    "bogoliubov_uv",
    "bcs_dos",
    "rates",
    "bias_potentials",
]

DEFAULT_TEMPERATURE = 0.02


class DegenerateInput(ValueError):
    """Bogoliubov coefficients are undefined at xi = delta = 0."""


class NonPositiveFrequency(ValueError):
    """Transition rates are only defined for positive Bohr frequencies."""


def default_dynes(delta, gamma0=1.0):
    """Default Dynes broadening, ``1e-3 * max(delta, gamma0)``."""
    return 1e-3 * max(float(delta), float(gamma0))


@dataclass(frozen=True)
class LeadParams:
    """State of one electrode.

    ``mu`` is the chemical potential *after* the bias shift; use
    :func:`bias_potentials` to obtain it.  ``phase`` is kept for completeness
    but no quasiparticle rate depends on it.
    """

    delta: float = 0.0
    phase: float = 0.0
    mu: float = 0.0
    temperature: float = DEFAULT_TEMPERATURE
    dynes: float = None

    def __post_init__(self):
        if self.dynes is None:
            object.__setattr__(self, "dynes", default_dynes(self.delta))
        if self.delta < 0:
            raise ValueError(f"gap must be non-negative, got {self.delta}")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")
        if self.dynes <= 0:
            raise ValueError(f"Dynes broadening must be positive, got {self.dynes}")

    @property
    def is_normal(self):
        return self.delta == 0


@dataclass(frozen=True)
class CouplingSet:
    """Dot-lead couplings parameterized by the asymmetry factor ``kappa``.

    Each dot couples with weight ``1 + kappa`` to its near lead (A-left,
    B-right) and ``1 - kappa`` to its far lead, so the pairwise sums stay
    fixed at 2 while ``(g_near - g_far) / (g_near + g_far) == kappa``.
    """

    gamma0: float = 1.0
    kappa: float = 0.0
    gammas: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.kappa <= 1.0:
            raise ValueError(f"kappa must lie in [0, 1], got {self.kappa}")
        if self.gamma0 <= 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        k = self.kappa
        object.__setattr__(self, "gammas", {
            ("A", "L"): 1.0 + k,
            ("A", "R"): 1.0 - k,
            ("B", "L"): 1.0 - k,
            ("B", "R"): 1.0 + k,
        })

    def gamma(self, dot, lead):
        return self.gammas[(dot, lead)]

    def asymmetry(self):
        """Recompute kappa from the stored couplings of dot A."""
        g_near, g_far = self.gammas[("A", "L")], self.gammas[("A", "R")]
        return (g_near - g_far) / (g_near + g_far)


def fermi(e, temperature):
    """Fermi-Dirac occupation ``1 / (exp(e / T) + 1)``; overflow-safe."""
    return expit(-np.asarray(e, dtype=float) / temperature)


def bogoliubov_uv(xi, delta, phase=0.0):
    """Bogoliubov coherence factors for a BCS lead.

    Returns
    -------
    u : complex
        ``exp(-i phase) * sqrt((1 + xi/E) / 2)``
    v : float
        ``sqrt((1 - xi/E) / 2)``
    energy : float
        Quasiparticle energy ``E = sqrt(xi**2 + delta**2)``.
    """
    energy = np.hypot(xi, delta)
    if energy == 0:
        raise DegenerateInput("xi and delta are both zero")
    ratio = xi / energy
    u = np.exp(-1j * phase) * np.sqrt(0.5 * (1.0 + ratio))
    v = np.sqrt(0.5 * (1.0 - ratio))
    return u, float(v), float(energy)


def bcs_dos(e, lead: LeadParams):
    """Dynes-broadened BCS density of states in units of the normal DOS.

    ``|Re[(e + i eta) / sqrt((e + i eta)^2 - delta^2)]|``; exactly 1 for a
    normal lead.
    """
    e = np.asarray(e, dtype=float)
    if lead.delta == 0:
        return np.ones_like(e)[()]
    z = e + 1j * lead.dynes
    return np.abs(np.real(z / np.sqrt(z * z - lead.delta ** 2)))[()]


def rates(omega, lead: LeadParams, gamma, gamma0=1.0):
    """Golden-rule excitation and relaxation rates of a dot transition.

    The bath is sampled at the transition energy measured from the lead's
    chemical potential, ``E = omega - mu``:

    * ``gamma_plus  = gamma0 * gamma**2 * D(E) * f(E)``      (electron enters the dot)
    * ``gamma_minus = gamma0 * gamma**2 * D(E) * (1 - f(E))`` (electron leaves the dot)
    """
    if omega <= 0:
        raise NonPositiveFrequency(f"Bohr frequency must be positive, got {omega}")
    e = omega - lead.mu
    total = gamma0 * gamma ** 2 * float(bcs_dos(e, lead))
    f_plus = float(fermi(e, lead.temperature))
    f_minus = float(fermi(-e, lead.temperature))
    return total * f_plus, total * f_minus


def bias_potentials(mu0, v):
    """Chemical potentials ``(mu_L, mu_R) = (mu0 + V, mu0)`` for bias ``V``."""
    return mu0 + v, mu0

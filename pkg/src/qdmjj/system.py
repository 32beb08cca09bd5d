"""Two-dot molecule: Hamiltonian, local jump operators and initial states.

Basis ordering used everywhere in the package (dot A first, dot B second)::

    index 0: |g_A g_B>    index 1: |g_A e_B>
    index 2: |e_A g_B>    index 3: |e_A e_B>
"""

from dataclasses import dataclass

import numpy as np

from .operators import IDENTITY_2, SIGMA_Z, kron

__all__ = [
    "InvalidParams",
    "SystemParams",
    "JumpOperator",
    "BASIS_LABELS",
    "DEFAULT_T_HOP",
    "ket",
    "build_hamiltonian",
    "jump_operators",
    "excitation_projector",
    "initial_state",
]

BASIS_LABELS = ("gg", "ge", "eg", "ee")
DEFAULT_T_HOP = 0.1


class InvalidParams(ValueError):
    """Physical parameters violate the model's validity conditions."""


@dataclass(frozen=True)
class SystemParams:
    """Dot energies and inter-dot hopping, all in units of the base rate."""

    eps_a: float
    eps_b: float
    t_hop: float = DEFAULT_T_HOP

    def validate(self):
        if not (np.isfinite(self.eps_a) and np.isfinite(self.eps_b) and np.isfinite(self.t_hop)):
            raise InvalidParams("system parameters must be finite")
        if self.eps_b <= 0:
            raise InvalidParams(f"eps_b must be positive, got {self.eps_b}")
        # eps_a == eps_b is allowed: the degenerate case used with cross terms
        if self.eps_a < self.eps_b:
            raise InvalidParams(f"expected eps_a >= eps_b, got {self.eps_a} < {self.eps_b}")
        if abs(self.t_hop) >= min(self.eps_a, self.eps_b):
            raise InvalidParams(
                f"|t_hop| = {abs(self.t_hop)} must stay below min(eps_a, eps_b)"
            )
        return self


@dataclass(frozen=True)
class JumpOperator:
    """Local lowering operator with its Bohr frequency and the dot it acts on."""

    op: np.ndarray
    freq: float
    dot: str
    name: str = ""


def ket(index):
    """Computational basis vector (0-based index into ``BASIS_LABELS``)."""
    v = np.zeros(4, dtype=complex)
    v[index] = 1.0
    return v


def _proj(i, j):
    m = np.zeros((4, 4), dtype=complex)
    m[i, j] = 1.0
    return m


def build_hamiltonian(p: SystemParams) -> np.ndarray:
    """Molecule Hamiltonian ``sum_a (eps_a/2) sz_a + t (s+_A s-_B + h.c.)``.

    ``sz`` has eigenvalues +-1 so that each dot's level splitting equals its
    energy; this makes the Bohr frequencies of the jump operators exactly
    ``eps_a`` and ``eps_b``.
    """
    p.validate()
    # single-dot blocks are ordered (|g>, |e>), so sz = diag(-1, +1)
    sz = -SIGMA_Z
    h = 0.5 * p.eps_a * kron(sz, IDENTITY_2) + 0.5 * p.eps_b * kron(IDENTITY_2, sz)
    h[1, 2] += p.t_hop
    h[2, 1] += p.t_hop
    return h


def jump_operators(p: SystemParams) -> list:
    """The four local lowering operators in the fixed order A1, A2, B1, B2."""
    return [
        JumpOperator(_proj(0, 2), p.eps_a, "A", "A1"),  # |gg><eg|
        JumpOperator(_proj(1, 3), p.eps_a, "A", "A2"),  # |ge><ee|
        JumpOperator(_proj(0, 1), p.eps_b, "B", "B1"),  # |gg><ge|
        JumpOperator(_proj(2, 3), p.eps_b, "B", "B2"),  # |eg><ee|
    ]


def excitation_projector(dot):
    """Projector onto the excited level of dot ``'A'`` or ``'B'``."""
    if dot == "A":
        return np.diag([0, 0, 1, 1]).astype(complex)
    if dot == "B":
        return np.diag([0, 1, 0, 1]).astype(complex)
    raise ValueError(f"unknown dot {dot!r}")


def initial_state(kind: str) -> np.ndarray:
    """Canonical initial density matrices.

    ``'bell'`` is the maximally entangled state ``(|ge> + i|eg>)/sqrt(2)``,
    ``'separable'`` is the product ground state ``|gg>``.
    """
    rho = np.zeros((4, 4), dtype=complex)
    if kind == "bell":
        rho[1, 1] = rho[2, 2] = 0.5
        rho[1, 2] = -0.5j
        rho[2, 1] = 0.5j
    elif kind == "separable":
        rho[0, 0] = 1.0
    else:
        raise ValueError(f"unknown initial state kind {kind!r}")
    return rho

"""Master-equation generator in Liouville space and its solvers.

Density matrices are vectorized by stacking columns, so ``vec(A X B) =
(B^T kron A) vec(X)`` and index ``4*j + i`` of ``vec(rho)`` holds
``rho[i, j]``.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .leads import CouplingSet, LeadParams, rates
from .operators import dag
from .system import SystemParams, build_hamiltonian, jump_operators

__all__ = [
    "DimensionMismatch",
    "NegativeRate",
    "DegenerateSteadyState",
    "NoConvergence",
    "ToleranceFailure",
    "Generator",
    "Trajectory",
    "vectorize",
    "devectorize",
    "spre",
    "spost",
    "commutator_super",
    "dissipator",
    "cross_dissipator",
    "lead_rates",
    "build_generator",
    "steady_state",
    "evolve",
    "default_time_grid",
    "real_generator",
]


DIM = 4
NULLSPACE_TOL = 1e-8
RESIDUAL_TOL = 1e-10
PSD_TOL = 1e-9

TRACE_TOL = 1e-7
MIN_EIG_TOL = 1e-7
HERMITIAN_DRIFT_TOL = 1e-8


class DimensionMismatch(ValueError):
    pass


class NegativeRate(ValueError):
    pass


class DegenerateSteadyState(RuntimeError):
    """The generator has more than one stationary state."""


class NoConvergence(RuntimeError):
    pass


class ToleranceFailure(RuntimeError):
    """Time integration drifted outside the density-matrix tolerances."""


@dataclass(frozen=True)
class Generator:
    """Superoperator ``M`` of ``d vec(rho)/dt = M vec(rho)``.

    ``m_total`` is exactly ``m_coherent + m_left + m_right``.
    """

    m_total: np.ndarray
    m_left: np.ndarray
    m_right: np.ndarray
    m_coherent: np.ndarray
    vectorization: str = "column"

    def lead_part(self, lead):
        if lead in ("L", "left"):
            return self.m_left
        if lead in ("R", "right"):
            return self.m_right
        raise ValueError(f"unknown lead {lead!r}")

    @classmethod
    def from_parts(cls, m_coherent, m_left, m_right):
        return cls(m_coherent + m_left + m_right, m_left, m_right, m_coherent)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n_times, 4, 4)

    def __len__(self):
        return len(self.times)


def vectorize(rho):
    rho = np.asarray(rho)
    if rho.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected a {DIM}x{DIM} matrix, got shape {rho.shape}")
    return rho.reshape(-1, order="F").astype(complex)


def devectorize(v):
    v = np.asarray(v)
    if v.shape != (DIM * DIM,):
        raise DimensionMismatch(f"expected a vector of length {DIM * DIM}, got shape {v.shape}")
    return v.reshape(DIM, DIM, order="F")


def spre(a):
    """Superoperator of ``rho -> a @ rho``."""
    return np.kron(np.eye(a.shape[0]), a)


def spost(a):
    """Superoperator of ``rho -> rho @ a``."""
    return np.kron(a.T, np.eye(a.shape[0]))


def commutator_super(h):
    """Superoperator of ``rho -> -i [h, rho]``."""
    return -1j * (spre(h) - spost(h))


def cross_dissipator(a, b, gp, gm):
    """Generalized dissipator coupling two jump operators.

    ``gm (b rho a^H - {a^H b, rho}/2) + gp (a^H rho b - {b a^H, rho}/2)``;
    for ``a is b`` this is the ordinary Lindblad dissipator.
    """
    if gp < 0 or gm < 0:
        raise NegativeRate(f"rates must be non-negative, got gp={gp}, gm={gm}")
    ad = dag(a)
    out = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    if gm:
        out += gm * (np.kron(np.conj(a), b) - 0.5 * (spre(ad @ b) + spost(ad @ b)))
    if gp:
        out += gp * (np.kron(b.T, ad) - 0.5 * (spre(b @ ad) + spost(b @ ad)))
    return out


def dissipator(jump, gp, gm):
    """Lindblad superoperator for lowering (rate ``gm``) and raising (``gp``)
    by a single jump operator."""
    a = getattr(jump, "op", jump)
    return cross_dissipator(a, a, gp, gm)


def lead_rates(sys: SystemParams, lead: LeadParams, lead_name, couplings: CouplingSet):
    """``(jump, gamma_plus, gamma_minus)`` for every jump operator and one lead."""
    out = []
    for jump in jump_operators(sys):
        g = couplings.gamma(jump.dot, lead_name)
        gp, gm = rates(jump.freq, lead, g, couplings.gamma0)
        out.append((jump, gp, gm))
    return out


def _lead_superoperator(entries, cross_terms):
    m = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for jump, gp, gm in entries:
        m += dissipator(jump, gp, gm)
    if cross_terms:
        # rates of cross terms: geometric mean of the two channels
        for (ja, gpa, gma), (jb, gpb, gmb) in itertools.permutations(entries, 2):
            if np.isclose(ja.freq, jb.freq, rtol=0, atol=1e-12):
                m += cross_dissipator(ja.op, jb.op, np.sqrt(gpa * gpb), np.sqrt(gma * gmb))
    return m


def build_generator(sys: SystemParams, leads, couplings: CouplingSet,
                    include_coherent=True, cross_terms=False) -> Generator:
    """Assemble the generator for the molecule between two leads.

    Parameters
    ----------
    sys : SystemParams
    leads : (LeadParams, LeadParams)
        Left and right lead, chemical potentials already bias-shifted.
    couplings : CouplingSet
    include_coherent : bool
        Add ``-i[H, rho]``.  Without it the hopping has no effect.
    cross_terms : bool
        Add dissipators between distinct jump operators of equal Bohr
        frequency (secular approximation otherwise keeps them out).
    """
    sys.validate()
    left, right = leads
    h = build_hamiltonian(sys)
    m_coh = commutator_super(h) if include_coherent else np.zeros((DIM * DIM,) * 2, dtype=complex)
    m_left = _lead_superoperator(lead_rates(sys, left, "L", couplings), cross_terms)
    m_right = _lead_superoperator(lead_rates(sys, right, "R", couplings), cross_terms)
    return Generator.from_parts(m_coh, m_left, m_right)


def steady_state(g: Generator) -> np.ndarray:
    """Unique stationary density matrix of ``g`` from its null singular vector."""
    _, s, vh = np.linalg.svd(g.m_total)
    if s[-2] < NULLSPACE_TOL:
        n_null = int(np.sum(s < NULLSPACE_TOL))
        raise DegenerateSteadyState(
            f"null space has dimension {n_null} (singular values {s[-n_null:]})"
        )
    rho = devectorize(np.conj(vh[-1]))
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise NoConvergence("null vector is traceless")
    rho = rho / tr
    rho = 0.5 * (rho + dag(rho))
    residual = np.max(np.abs(g.m_total @ vectorize(rho)))
    if residual > RESIDUAL_TOL:
        raise NoConvergence(f"steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    min_eig = np.linalg.eigvalsh(rho)[0]
    if min_eig < -PSD_TOL:
        raise NoConvergence(f"steady state is not positive: min eigenvalue {min_eig:.3e}")
    return rho


def default_time_grid(t_max=50.0, n_points=400):
    """``t = 0`` followed by log-spaced times up to ``t_max``."""
    return np.concatenate([[0.0], np.geomspace(t_max * 1e-4, t_max, n_points - 1)])


def _check_state(rho, t):
    trace_err = abs(np.trace(rho) - 1.0)
    herm_err = np.max(np.abs(rho - dag(rho)))
    min_eig = np.linalg.eigvalsh(0.5 * (rho + dag(rho)))[0]
    if trace_err > TRACE_TOL or herm_err > HERMITIAN_DRIFT_TOL or min_eig < -MIN_EIG_TOL:
        raise ToleranceFailure(
            f"t={t:.6g}: trace error {trace_err:.2e}, Hermiticity error {herm_err:.2e}, "
            f"min eigenvalue {min_eig:.2e}"
        )


def _hermitian_basis():
    """Columns are ``vec`` of an orthonormal basis of 4x4 Hermitian matrices."""
    cols = []
    for i in range(DIM):
        for j in range(i, DIM):
            if i == j:
                cols.append([(i, j, 1.0)])
            else:
                r = 1 / np.sqrt(2)
                cols.append([(i, j, r), (j, i, r)])
                cols.append([(i, j, 1j * r), (j, i, -1j * r)])
    t = np.zeros((DIM * DIM, len(cols)), dtype=complex)
    for k, entries in enumerate(cols):
        for i, j, val in entries:
            t[DIM * j + i, k] = val
    return t


_HBASIS = _hermitian_basis()


def real_generator(g: Generator):
    """``M`` in the real coordinates of the Hermitian basis."""
    return np.real(dag(_HBASIS) @ g.m_total @ _HBASIS)


def evolve(g: Generator, rho0, t_grid, method="DOP853", atol=1e-9, rtol=1e-9,
           check=True) -> Trajectory:
    """Integrate ``d rho/dt = M rho`` with adaptive step-size control.

    The state is carried in real coordinates of a Hermitian operator basis,
    so Hermiticity holds by construction.  Each interval of ``t_grid`` is a
    separate integration; no dense-output interpolation is involved.
    ``method`` is any :func:`scipy.integrate.solve_ivp` method; ``'Radau'``
    suits long horizons dominated by slow modes.  Every returned state is
    checked against the trace and positivity tolerances unless ``check`` is
    false.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or t_grid[0] != 0 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly ascending and start at 0")
    rho0 = np.asarray(rho0, dtype=complex)
    vectorize(rho0)
    if np.max(np.abs(rho0 - dag(rho0))) > HERMITIAN_DRIFT_TOL:
        raise ValueError("initial state must be Hermitian")
    mr = real_generator(g)
    x = np.real(dag(_HBASIS) @ vectorize(rho0))
    xs = [x]
    if np.any(mr):
        kwargs = {"jac": mr} if method in ("Radau", "BDF", "LSODA") else {}
        for t0, t1 in zip(t_grid[:-1], t_grid[1:]):
            sol = solve_ivp(lambda t, y: mr @ y, (t0, t1), x, method=method,
                            atol=atol, rtol=rtol, **kwargs)
            if not sol.success:
                raise ToleranceFailure(f"integrator failed at t={t0:.6g}: {sol.message}")
            x = sol.y[:, -1]
            xs.append(x)
    else:
        xs *= t_grid.size
    states = np.stack([devectorize(_HBASIS @ x) for x in xs])
    if check:
        for t, rho in zip(t_grid, states):
            _check_state(rho, t)
    return Trajectory(t_grid, states)

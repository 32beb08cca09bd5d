import numpy as np
import pytest
from scipy.linalg import expm

from qdmjj.leads import CouplingSet, LeadParams, bias_potentials, fermi
from qdmjj.liouvillian import (
    DegenerateSteadyState,
    DimensionMismatch,
    Generator,
    NegativeRate,
    build_generator,
    default_time_grid,
    devectorize,
    dissipator,
    evolve,
    lead_rates,
    steady_state,
    vectorize,
)
from qdmjj.system import SystemParams, initial_state, jump_operators

from conftest import random_density_matrix, random_model

ZERO = np.zeros((16, 16), dtype=complex)


def symmetric_generator(v=0.0, delta=0.0, kappa=0.0, **flags):
    mu_l, mu_r = bias_potentials(0.0, v)
    leads = (LeadParams(delta, mu=mu_l), LeadParams(delta, mu=mu_r))
    return build_generator(SystemParams(4.0, 2.0, 0.1), leads, CouplingSet(kappa=kappa), **flags)


def lindblad_oracle(a, gp, gm, rho):
    """Dense matrix-action form of the dissipator."""
    ad = a.conj().T
    return (gm * (a @ rho @ ad - 0.5 * (ad @ a @ rho + rho @ ad @ a))
            + gp * (ad @ rho @ a - 0.5 * (a @ ad @ rho + rho @ a @ ad)))


def test_vectorize_convention(rng):
    rho = random_density_matrix(rng)
    assert np.array_equal(devectorize(vectorize(rho)), rho)
    e0 = np.zeros(16)
    e0[0] = 1
    assert np.array_equal(vectorize(np.diag([1, 0, 0, 0])), e0)
    op = np.zeros((4, 4))
    op[0, 1] = 1
    v = vectorize(op)
    assert v[4] == 1 and np.count_nonzero(v) == 1


def test_vectorize_rejects_wrong_shape():
    with pytest.raises(DimensionMismatch):
        vectorize(np.eye(3))
    with pytest.raises(DimensionMismatch):
        devectorize(np.zeros(9))


def test_dissipator_zero_rates():
    for jump in jump_operators(SystemParams(4.0, 2.0)):
        assert np.array_equal(dissipator(jump, 0.0, 0.0), ZERO)


def test_dissipator_single_decay():
    a = np.zeros((4, 4))
    a[1, 2] = 1  # |1><2|
    rho = np.zeros((4, 4))
    rho[2, 2] = 1
    drho = devectorize(dissipator(a, 0.0, 1.0) @ vectorize(rho))
    assert np.allclose(drho, np.diag([0, 1, -1, 0]), atol=1e-15)


def test_dissipator_matches_oracle_and_preserves_trace(rng):
    for jump in jump_operators(SystemParams(4.0, 2.0)):
        gp, gm = rng.uniform(0, 2, size=2)
        d = dissipator(jump, gp, gm)
        rho = random_density_matrix(rng)
        assert np.allclose(devectorize(d @ vectorize(rho)), lindblad_oracle(jump.op, gp, gm, rho),
                           atol=1e-13)
        assert abs(np.trace(devectorize(d @ vectorize(np.eye(4) / 4)))) <= 1e-15


def test_dissipator_rejects_negative_rate():
    with pytest.raises(NegativeRate):
        dissipator(jump_operators(SystemParams(4.0, 2.0))[0], -1e-3, 0.0)


def test_generator_is_sum_of_parts():
    g = symmetric_generator(v=5.0, delta=1.0)
    assert np.array_equal(g.m_total, g.m_coherent + g.m_left + g.m_right)
    assert g.vectorization == "column"


def test_generator_trace_annihilation_and_hermiticity(rng):
    covector = vectorize(np.eye(4)).conj()
    for _ in range(20):
        sysp, leads, couplings, flags = random_model(rng)
        g = build_generator(sysp, leads, couplings, **flags)
        assert np.max(np.abs(covector @ g.m_total)) <= 1e-10
        rho = random_density_matrix(rng)
        drho = devectorize(g.m_total @ vectorize(rho))
        assert np.max(np.abs(drho - drho.conj().T)) <= 1e-10


def test_ideal_asymmetry_kills_far_channels():
    sysp = SystemParams(4.0, 2.0)
    lead = LeadParams(0.0, mu=3.0)
    couplings = CouplingSet(kappa=1.0)
    for jump, gp, gm in lead_rates(sysp, lead, "R", couplings):
        if jump.dot == "A":
            assert gp == 0 and gm == 0
    for jump, gp, gm in lead_rates(sysp, lead, "L", couplings):
        if jump.dot == "B":
            assert gp == 0 and gm == 0


def test_pump_drain_rates():
    t = 0.02
    sysp = SystemParams(4.0, 2.0)
    mu_l, mu_r = bias_potentials(0.0, 10.0)
    couplings = CouplingSet(kappa=0.0)
    for jump, gp, gm in lead_rates(sysp, LeadParams(0.0, mu=mu_l, temperature=t), "L", couplings):
        assert gp == pytest.approx(fermi(jump.freq - mu_l, t), rel=1e-12)
        assert gp == pytest.approx(1.0, abs=1e-12)
    for _, gp, _ in lead_rates(sysp, LeadParams(0.0, mu=mu_r, temperature=t), "R", couplings):
        assert gp <= 1e-40


def test_spectrum_has_no_growing_modes(rng):
    for _ in range(20):
        sysp, leads, couplings, flags = random_model(rng)
        g = build_generator(sysp, leads, couplings, **flags)
        assert np.max(np.linalg.eigvals(g.m_total).real) <= 1e-10


def test_steady_state_degenerate_without_rates():
    with pytest.raises(DegenerateSteadyState):
        steady_state(Generator.from_parts(ZERO, ZERO, ZERO))


def test_single_lossy_channel_reaches_ground_state():
    m = np.zeros((16, 16), dtype=complex)
    for jump in jump_operators(SystemParams(4.0, 2.0)):
        m += dissipator(jump, 0.0, 1.0)
    g = Generator.from_parts(ZERO, m, ZERO)
    rho_ss = steady_state(g)
    assert np.allclose(rho_ss, np.diag([1, 0, 0, 0]), atol=1e-10)
    traj = evolve(g, initial_state("bell"), [0.0, 10.0, 50.0])
    assert np.max(np.abs(traj.states[-1] - rho_ss)) <= 1e-6

    # only one channel |1> <- |2>: several absorbing states, no unique answer
    a = np.zeros((4, 4))
    a[1, 2] = 1
    g1 = Generator.from_parts(ZERO, dissipator(a, 0.0, 1.0), ZERO)
    with pytest.raises(DegenerateSteadyState):
        steady_state(g1)
    rho = np.diag([0.0, 0.0, 1.0, 0.0])
    traj = evolve(g1, rho, [0.0, 50.0])
    assert np.allclose(traj.states[-1], np.diag([0, 1, 0, 0]), atol=1e-9)


def test_steady_state_contract():
    g = symmetric_generator(v=7.0, delta=1.8)
    rho = steady_state(g)
    assert np.max(np.abs(g.m_total @ vectorize(rho))) <= 1e-10
    assert abs(np.trace(rho) - 1) <= 1e-12
    assert np.array_equal(rho, rho.conj().T)
    assert np.linalg.eigvalsh(rho)[0] >= -1e-9


def test_zero_generator_keeps_state(rng):
    rho = random_density_matrix(rng)
    traj = evolve(Generator.from_parts(ZERO, ZERO, ZERO), rho, default_time_grid(10.0, 20))
    assert all(np.allclose(s, rho, atol=1e-15) for s in traj.states)


def test_evolve_against_matrix_exponential(rng):
    g = symmetric_generator(v=6.0, delta=1.0)
    rho0 = initial_state("bell")
    times = [0.0, 0.3, 2.0, 7.5]
    traj = evolve(g, rho0, times)
    for t, rho in zip(times, traj.states):
        exact = devectorize(expm(g.m_total * t) @ vectorize(rho0))
        assert np.max(np.abs(rho - exact)) <= 1e-8
    assert all(abs(np.trace(s) - 1) <= 1e-7 for s in traj.states)


def test_evolve_reaches_steady_state():
    g = symmetric_generator(v=7.0, delta=1.8)
    traj = evolve(g, initial_state("bell"), default_time_grid(50.0, 60))
    assert np.max(np.abs(traj.states[-1] - steady_state(g))) <= 1e-6


def test_evolve_is_linear(rng):
    g = symmetric_generator(v=5.0, delta=0.5, kappa=0.4)
    r1, r2 = random_density_matrix(rng), random_density_matrix(rng, rank=1)
    alpha = 0.3
    grid = default_time_grid(20.0, 30)
    mix = evolve(g, alpha * r1 + (1 - alpha) * r2, grid).states
    parts = alpha * evolve(g, r1, grid).states + (1 - alpha) * evolve(g, r2, grid).states
    assert np.max(np.abs(mix - parts)) <= 1e-8


def test_evolve_rejects_bad_grid():
    g = symmetric_generator()
    with pytest.raises(ValueError):
        evolve(g, initial_state("bell"), [1.0, 2.0])
    with pytest.raises(ValueError):
        evolve(g, initial_state("bell"), [0.0, 2.0, 1.0])


def test_default_time_grid():
    grid = default_time_grid()
    assert grid.size == 400 and grid[0] == 0 and grid[-1] == pytest.approx(50.0)
    assert np.all(np.diff(grid) > 0)

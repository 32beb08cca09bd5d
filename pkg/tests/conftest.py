import numpy as np
import pytest

from qdmjj.leads import CouplingSet, LeadParams, bias_potentials
from qdmjj.system import SystemParams


def random_density_matrix(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_unitary(rng, dim=2):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_model(rng):
    """Random physically valid (system, leads, couplings, flags)."""
    eps_b = rng.uniform(0.5, 5.0)
    eps_a = eps_b + rng.uniform(0.0, 4.0)
    t_hop = rng.uniform(-0.3, 0.3) * min(1.0, eps_b)
    sysp = SystemParams(eps_a, eps_b, t_hop)
    v = rng.uniform(-2.0, 12.0)
    mu_l, mu_r = bias_potentials(0.0, v)
    temperature = rng.uniform(0.02, 0.5)
    deltas = [0.0 if rng.random() < 0.3 else rng.uniform(0.5, 4.0) for _ in range(2)]
    leads = (LeadParams(deltas[0], mu=mu_l, temperature=temperature),
             LeadParams(deltas[1], mu=mu_r, temperature=temperature))
    couplings = CouplingSet(kappa=rng.uniform(0.0, 1.0))
    flags = {"include_coherent": bool(rng.random() < 0.8),
             "cross_terms": bool(rng.random() < 0.3)}
    return sysp, leads, couplings, flags


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)

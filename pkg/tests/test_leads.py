import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdmjj.leads import (
    CouplingSet,
    DegenerateInput,
    LeadParams,
    NonPositiveFrequency,
    bcs_dos,
    bias_potentials,
    bogoliubov_uv,
    default_dynes,
    fermi,
    rates,
)

energies = st.floats(min_value=-50, max_value=50, allow_nan=False)
temps = st.floats(min_value=1e-3, max_value=5.0)


def test_fermi_values():
    assert fermi(0.0, 0.3) == 0.5
    assert math.isclose(fermi(10 * 0.02, 0.02), 1 / (math.exp(10) + 1), rel_tol=1e-12)
    assert math.isclose(fermi(10.0, 1.0), 4.5397868702434395e-05, rel_tol=1e-12)
    # no overflow far in the tails
    assert fermi(1e4, 1e-3) == 0.0
    assert fermi(-1e4, 1e-3) == 1.0


@given(energies, temps)
def test_fermi_particle_hole(e, t):
    assert abs(fermi(e, t) + fermi(-e, t) - 1) <= 1e-15


def test_bogoliubov_gap_center_and_345():
    u, v, energy = bogoliubov_uv(0.0, 1.0, 0.0)
    assert math.isclose(abs(u) ** 2, 0.5) and math.isclose(v ** 2, 0.5)
    assert energy == 1.0
    u, v, energy = bogoliubov_uv(3.0, 4.0, 0.0)
    assert energy == 5.0
    assert math.isclose(abs(u) ** 2, 0.8, rel_tol=1e-14)
    assert math.isclose(v ** 2, 0.2, rel_tol=1e-14)


def test_bogoliubov_phase_only_in_u():
    u0, v0, _ = bogoliubov_uv(0.7, 1.3, 0.0)
    u1, v1, _ = bogoliubov_uv(0.7, 1.3, 1.1)
    assert math.isclose(abs(u0), abs(u1)) and v0 == v1
    assert math.isclose(np.angle(u1), -1.1)


def test_bogoliubov_degenerate():
    with pytest.raises(DegenerateInput):
        bogoliubov_uv(0.0, 0.0, 0.3)


@given(energies, st.floats(min_value=0, max_value=20), st.floats(min_value=-7, max_value=7))
def test_bogoliubov_normalization(xi, delta, phase):
    if xi == 0 and delta == 0:
        return
    u, v, _ = bogoliubov_uv(xi, delta, phase)
    assert abs(abs(u) ** 2 + v ** 2 - 1) <= 1e-12


def test_dos_normal_is_exactly_one():
    lead = LeadParams(0.0)
    assert bcs_dos(3.7, lead) == 1.0
    assert np.array_equal(bcs_dos(np.linspace(-5, 5, 11), lead), np.ones(11))


def test_dos_above_gap_matches_bcs_formula():
    lead = LeadParams(1.0, dynes=1e-9)
    assert math.isclose(bcs_dos(2.0, lead), 2 / math.sqrt(3), rel_tol=1e-8)


def test_dos_subgap_suppressed():
    assert bcs_dos(0.5, LeadParams(1.0, dynes=1e-3)) <= 5e-3


def test_dos_gap_edge_capped():
    lead = LeadParams(2.0, dynes=1e-3)
    peak = bcs_dos(2.0, lead)
    assert 1 < peak <= 2 * math.sqrt(lead.delta / lead.dynes)


@given(st.floats(min_value=0, max_value=30), st.floats(min_value=0.1, max_value=5))
def test_dos_even(e, delta):
    lead = LeadParams(delta)
    assert math.isclose(bcs_dos(e, lead), bcs_dos(-e, lead), rel_tol=1e-12, abs_tol=1e-15)


def test_dos_approaches_normal_far_from_gap():
    lead = LeadParams(2.0)
    xs = np.linspace(1.5, 10, 50) * lead.delta
    d = bcs_dos(xs, lead)
    assert np.all(np.diff(d) < 0)
    assert abs(bcs_dos(10 * lead.delta, lead) - 1) < 0.01


def test_default_dynes():
    assert default_dynes(0.0) == 1e-3
    assert default_dynes(3.5) == 3.5e-3
    assert LeadParams(2.5).dynes == 2.5e-3


@pytest.mark.parametrize("kwargs", [{"delta": -1}, {"temperature": 0}, {"dynes": -1e-3}])
def test_lead_validation(kwargs):
    with pytest.raises(ValueError):
        LeadParams(**kwargs)


def test_rates_at_fermi_level():
    gp, gm = rates(2.0, LeadParams(0.0, mu=2.0), 1.5, 1.0)
    assert gp == gm == pytest.approx(1.5 ** 2 / 2)


def test_rates_fermi_tail():
    t = 0.02
    gp, gm = rates(2.0 + 10 * t, LeadParams(0.0, mu=2.0, temperature=t), 1.0, 1.0)
    assert gp == pytest.approx(fermi(10 * t, t), rel=1e-12)
    assert gm == pytest.approx(1 - fermi(10 * t, t), rel=1e-12)


def test_rates_subgap():
    gp, gm = rates(2.5, LeadParams(1.0, mu=2.0, dynes=1e-3), 1.3, 1.0)
    assert gp <= 5e-3 * 1.3 ** 2 and gm <= 5e-3 * 1.3 ** 2


def test_rates_reject_non_positive_frequency():
    with pytest.raises(NonPositiveFrequency):
        rates(0.0, LeadParams(), 1.0)


@settings(max_examples=200)
@given(st.floats(min_value=0.01, max_value=20), energies, temps, temps,
       st.floats(min_value=0, max_value=5), st.floats(min_value=0, max_value=2))
def test_rate_sum_rule_is_temperature_independent(omega, mu, t1, t2, delta, gamma):
    gp1, gm1 = rates(omega, LeadParams(delta, mu=mu, temperature=t1), gamma)
    gp2, gm2 = rates(omega, LeadParams(delta, mu=mu, temperature=t2), gamma)
    assert gp1 >= 0 and gm1 >= 0
    assert abs((gp1 + gm1) - (gp2 + gm2)) <= 1e-12 * max(1.0, gp1 + gm1)


def test_bias_potentials():
    assert bias_potentials(0, 0) == (0, 0)
    assert bias_potentials(0, 3) == (3, 0)
    assert bias_potentials(1, 2) == (3, 1)


def test_couplings():
    sym = CouplingSet(kappa=0.0)
    assert len(set(sym.gammas.values())) == 1
    ideal = CouplingSet(kappa=1.0)
    assert ideal.gamma("A", "R") == 0 and ideal.gamma("B", "L") == 0
    with pytest.raises(ValueError):
        CouplingSet(kappa=1.5)


@given(st.floats(min_value=0, max_value=1))
def test_kappa_roundtrip(kappa):
    c = CouplingSet(kappa=kappa)
    assert abs(c.asymmetry() - kappa) <= 1e-15
    g = c.gammas
    assert abs((g["B", "R"] - g["B", "L"]) / (g["B", "R"] + g["B", "L"]) - kappa) <= 1e-15

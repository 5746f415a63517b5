import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from superabsorb.dynamics import (NegativeEntropyProduction, PopulationState, entropy,
                                  entropy_production_rate, entropy_rate, gibbs_state, heat_current,
                                  mean_energy, propagate, propagator, sample_trajectory)
from superabsorb.ladder import (BathModel, build_generator, build_ladder, build_rates, occupation,
                                spectral_density)


@pytest.fixture
def toy_gen(toy):
    ladder, bath = toy
    return ladder, bath, build_generator(build_rates(ladder, bath))


def random_state(rng, n):
    p = rng.dirichlet(np.ones(n + 1))
    return PopulationState(n, p)


def two_level_closed_form(p0, kappa, n, t):
    p_inf = n / (1 + 2 * n)
    return p_inf + (p0 - p_inf) * math.exp(-kappa * (1 + 2 * n) * t)


def test_zero_duration_is_identity(toy_gen, rng):
    ladder, _, G = toy_gen
    s = random_state(rng, ladder.n_qubits)
    np.testing.assert_array_equal(propagate(s, G, 0.0).probs, s.probs)


@pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 7.5, 40.0])
def test_two_level_relaxation_matches_closed_form(t):
    lad = build_ladder(1, 1.0, 0.0)
    bath = BathModel(1.0, 0.2, 0.3, 0.7)
    kappa, n = spectral_density(bath, 1.0), occupation(0.7, 1.0)
    G = build_generator(build_rates(lad, bath))
    out = propagate(PopulationState(1, [0.9, 0.1]), G, t)
    assert out.probs[0] == pytest.approx(two_level_closed_form(0.9, kappa, n, t), abs=1e-10)


def test_long_time_limit_is_gibbs(toy_gen):
    ladder, bath, G = toy_gen
    s = PopulationState.from_levels(5, {0.5: 0.3, -0.5: 0.7})
    out = propagate(s, G, 1e5)
    tv = 0.5 * np.abs(out.probs - gibbs_state(ladder, bath.beta).probs).sum()
    assert tv < 1e-8


def test_generator_stationary_at_gibbs(toy_gen):
    ladder, bath, G = toy_gen
    g = gibbs_state(ladder, bath.beta)
    assert np.abs(G @ g.probs).max() < 1e-14 * np.abs(G).max()


def test_matches_stiff_rk_integrator(ref, rng):
    # test-only cross-check of the matrix exponential against adaptive Radau
    lad = build_ladder(15, ref.omega_a_cold, ref.omega_interaction)
    bath = BathModel(ref.omega_a_cold, ref.coupling, ref.linewidth, ref.beta_cold)
    G = build_generator(build_rates(lad, bath))
    s = random_state(rng, 15)
    t_end = 50.0 / np.abs(np.diag(G)).max()
    sol = solve_ivp(lambda t, p: G @ p, (0, t_end), s.probs, method="Radau", jac=G,
                    rtol=1e-11, atol=1e-14)
    np.testing.assert_allclose(propagate(s, G, t_end).probs, sol.y[:, -1], atol=1e-9)


def test_sample_trajectory(toy_gen, rng):
    ladder, _, G = toy_gen
    s = random_state(rng, ladder.n_qubits)
    two = sample_trajectory(s, G, 3.0, 2)
    np.testing.assert_array_equal(two.times, [0.0, 3.0])
    traj = sample_trajectory(s, G, 3.0, 31)
    np.testing.assert_allclose(traj.states[-1].probs, propagate(s, G, 3.0).probs, atol=1e-12)
    chained = s
    for k in range(1, 31):
        chained = propagate(chained, G, traj.times[k] - traj.times[k - 1])
    np.testing.assert_allclose(chained.probs, traj.states[-1].probs, atol=1e-10)
    with pytest.raises(ValueError):
        sample_trajectory(s, G, 1.0, 1)


def test_relaxation_energy_monotone_two_level():
    lad = build_ladder(1, 1.0, 0.0)
    bath = BathModel(1.0, 0.2, 0.3, 0.7)
    G = build_generator(build_rates(lad, bath))
    traj = sample_trajectory(PopulationState(1, [0.8, 0.2]), G, 30.0, 200)
    e = np.array([mean_energy(s, lad) for s in traj.states])
    assert np.all(np.diff(e) < 1e-14)
    kappa, n = spectral_density(bath, 1.0), occupation(0.7, 1.0)
    expected = [two_level_closed_form(0.8, kappa, n, t) - 0.5 for t in traj.times]
    np.testing.assert_allclose(e, expected, atol=1e-10)


def test_relaxation_energy_monotone_ladder(toy_gen):
    ladder, _, G = toy_gen
    s = PopulationState.from_levels(5, {0.5: 0.5, -0.5: 0.5})
    e = [mean_energy(x, ladder) for x in sample_trajectory(s, G, 50.0, 100).states]
    assert np.all(np.diff(e) < 0)


def test_mean_energy_examples():
    lad = build_ladder(3, 1.0, 0.1)
    assert mean_energy(PopulationState.from_levels(3, {0.5: 1.0}), lad) == pytest.approx(0.525)
    lad1 = build_ladder(1, 1.0, 0.0)
    assert mean_energy(PopulationState(1, [0.5, 0.5]), lad1) == pytest.approx(0.0, abs=1e-15)


def test_gibbs_energy_decreases_with_beta(toy):
    ladder, _ = toy
    betas = np.linspace(0.1, 5, 50)
    e = [mean_energy(gibbs_state(ladder, b), ladder) for b in betas]
    assert np.all(np.diff(e) < 0)


def test_heat_current_signs(toy_gen):
    ladder, bath, G = toy_gen
    g = gibbs_state(ladder, bath.beta)
    assert abs(heat_current(g, G, ladder)) < 1e-12 * np.abs(G).max() * np.abs(ladder.energies).max()
    cold = gibbs_state(ladder, 5 * bath.beta)
    assert heat_current(cold, G, ladder) > 0


def test_heat_current_and_entropy_rate_finite_differences(toy_gen, rng):
    ladder, bath, G = toy_gen
    s = random_state(rng, ladder.n_qubits)
    t0, h = 0.5, 1e-3
    mid = propagate(s, G, t0)
    plus, minus = propagate(s, G, t0 + h), propagate(s, G, t0 - h)
    dE = (mean_energy(plus, ladder) - mean_energy(minus, ladder)) / (2 * h)
    assert heat_current(mid, G, ladder) == pytest.approx(dE, rel=1e-6)
    dS = (entropy(plus) - entropy(minus)) / (2 * h)
    assert entropy_rate(mid, G) == pytest.approx(dS, rel=1e-6)


def test_entropy_examples():
    assert entropy(PopulationState.from_levels(3, {1.5: 1.0})) == 0.0
    assert entropy(PopulationState(4, np.full(5, 0.2))) == pytest.approx(math.log(5))
    assert entropy(PopulationState(1, [0.5, 0.5])) == pytest.approx(math.log(2))


def schnakenberg(p, G):
    """Link-flux form of the entropy production, an independent route."""
    total = 0.0
    for i in range(len(p) - 1):
        fwd, bwd = G[i + 1, i] * p[i], G[i, i + 1] * p[i + 1]
        if fwd > 0 and bwd > 0:
            total += (fwd - bwd) * math.log(fwd / bwd)
    return total


def test_entropy_production_at_gibbs_is_zero(toy_gen):
    ladder, bath, G = toy_gen
    g = gibbs_state(ladder, bath.beta)
    assert abs(entropy_production_rate(g, G, ladder, bath.beta)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_second_law_on_random_states(seed):
    ladder = build_ladder(5, 1.0, 0.1)
    bath = BathModel(1.0, 0.05, 0.5, 1.5)
    G = build_generator(build_rates(ladder, bath))
    s = random_state(np.random.default_rng(seed), 5)
    sig = entropy_production_rate(s, G, ladder, bath.beta)
    assert sig > 0
    assert sig == pytest.approx(schnakenberg(s.probs, G), rel=1e-8)


def test_wrong_bath_trips_sanity_check(toy_gen, rng):
    ladder, bath, G = toy_gen
    # a state at a hotter Gibbs point evaluated with a much colder beta
    s = gibbs_state(ladder, 0.2)
    with pytest.raises(NegativeEntropyProduction):
        entropy_production_rate(s, G, ladder, -5.0)


def test_probability_conservation_long_chain(ref):
    lad = build_ladder(31, ref.omega_a_hot, ref.omega_interaction)
    G = build_generator(build_rates(lad, BathModel(ref.omega_a_hot, ref.coupling,
                                                   ref.linewidth, ref.beta_hot)))
    P = propagator(G, 1e-9)
    p = np.zeros(32)
    p[15] = 1.0
    worst = 0.0
    for _ in range(10_000):
        p = P @ p
        worst = min(worst, p.min())
    assert abs(p.sum() - 1) < 1e-9
    assert worst >= -1e-12


def test_dimension_mismatch(toy_gen):
    _, _, G = toy_gen
    with pytest.raises(ValueError, match="generator shape"):
        propagate(PopulationState(3, [1, 0, 0, 0]), G, 1.0)


def test_population_state_validation():
    with pytest.raises(ValueError):
        PopulationState(1, [0.7, 0.7])
    with pytest.raises(ValueError):
        PopulationState(1, [1.1, -0.1])
    assert PopulationState(1, [1 + 1e-13, -1e-13]).probs.min() == 0.0

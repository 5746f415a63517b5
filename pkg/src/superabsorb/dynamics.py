"""Exact propagation of ladder populations and instantaneous thermodynamic observables."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.special import logsumexp

from .ladder import LadderModel

log = logging.getLogger(__name__)

NEGATIVITY_SLACK = 1e-12
LOG_FLOOR = 1e-300
SIGMA_WARN = -1e-10
SIGMA_ERROR = -1e-6


class NegativeEntropyProduction(RuntimeError):
    pass


@dataclass(frozen=True)
class PopulationState:
    """Populations p_M over the Dicke ladder, descending-M order."""

    n_qubits: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (self.n_qubits + 1,):
            raise ValueError(f"expected {self.n_qubits + 1} populations, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("non-finite populations")
        if p.min() < -1e-9:
            raise ValueError(f"negative population {p.min():.3e}")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"populations sum to {p.sum():.12g}")
        object.__setattr__(self, "probs", np.clip(p, 0.0, None))

    @classmethod
    def from_levels(cls, n_qubits: int, weights: dict) -> "PopulationState":
        """Build a state from a {M: p_M} mapping; unlisted levels are empty."""
        p = np.zeros(n_qubits + 1)
        for m, w in weights.items():
            p[int(round(n_qubits / 2 - m))] = w
        return cls(n_qubits, p)

    def population(self, m: float) -> float:
        return float(self.probs[int(round(self.n_qubits / 2 - m))])


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: list = field(repr=False)
    tag: str = ""

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states differ in length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def probs(self) -> np.ndarray:
        return np.array([s.probs for s in self.states])


def _check_generator(state: PopulationState, generator: np.ndarray):
    if generator.shape != (state.n_qubits + 1,) * 2:
        raise ValueError(f"generator shape {generator.shape} does not match N={state.n_qubits}")
    if not np.all(np.isfinite(generator)):
        raise ValueError("generator has non-finite entries")


def propagator(generator: np.ndarray, duration: float) -> np.ndarray:
    """exp(G t) by Pade scaling-and-squaring."""
    if duration < 0:
        raise ValueError("duration must be non-negative")
    return expm(generator * duration)


def apply_propagator(state: PopulationState, prop: np.ndarray) -> PopulationState:
    p = prop @ state.probs
    if p.min() < -1e-9:
        raise ValueError(f"propagation produced population {p.min():.3e}")
    return PopulationState(state.n_qubits, np.clip(p, 0.0, None))


def propagate(state: PopulationState, generator: np.ndarray, duration: float) -> PopulationState:
    _check_generator(state, generator)
    if duration == 0:
        return state
    return apply_propagator(state, propagator(generator, duration))


def sample_trajectory(state, generator, duration, n_samples, tag="") -> Trajectory:
    """States at ``n_samples`` equally spaced times on [0, duration], each propagated from t = 0."""
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    _check_generator(state, generator)
    times = np.linspace(0.0, duration, n_samples)
    states = [state] + [propagate(state, generator, t) for t in times[1:]]
    return Trajectory(times, states, tag)


def gibbs_state(ladder: LadderModel, beta: float) -> PopulationState:
    logw = -beta * ladder.energies
    return PopulationState(ladder.n_qubits, np.exp(logw - logsumexp(logw)))


def mean_energy(state: PopulationState, ladder: LadderModel) -> float:
    return float(ladder.energies @ state.probs)


def heat_current(state, generator, ladder) -> float:
    """J = sum_M E_M (G p)_M."""
    return float(ladder.energies @ (generator @ state.probs))


def entropy(state: PopulationState) -> float:
    p = state.probs[state.probs > 0]
    return float(-(p * np.log(p)).sum())


def entropy_rate(state, generator) -> float:
    """dS/dt = -sum_M (G p)_M ln p_M."""
    dp = generator @ state.probs
    logp = np.log(np.maximum(state.probs, LOG_FLOOR))
    return float(-np.sum(np.where(dp == 0, 0.0, dp * logp)))


def entropy_production_rate(state, generator, ladder, beta) -> float:
    """sigma_dot = dS/dt - beta J.

    Sanity bands are relative to the gross (in plus out) flux weighted by
    |ln p| + |beta E|, so they stay meaningful at equilibrium where the net
    flux is pure roundoff.
    """
    dp = generator @ state.probs
    logp = np.log(np.maximum(state.probs, LOG_FLOOR))
    s_terms = np.where(dp == 0, 0.0, dp * logp)
    j_terms = ladder.energies * dp
    sigma = float(-s_terms.sum() - beta * j_terms.sum())
    gross = np.abs(generator) @ state.probs
    scale = float(np.sum(gross * (np.abs(logp) + abs(beta) * np.abs(ladder.energies))))
    if scale > 0:
        if sigma < SIGMA_ERROR * scale:
            raise NegativeEntropyProduction(f"sigma_dot = {sigma:.3e} (scale {scale:.3e})")
        if sigma < SIGMA_WARN * scale:
            log.warning("slightly negative entropy production %.3e (scale %.3e)", sigma, scale)
    return sigma

"""Dicke-ladder spectrum, engineered cavity bath and the population rate generator.

Population vectors are indexed by M in *descending* order: index 0 is
M = N/2, index N is M = -N/2. A link labelled M connects |M> (index i)
and |M-1> (index i+1), so links are stored for M = N/2 ... -N/2+1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# exp(x) overflows a double just above 709
OVERFLOW_EXPONENT = 700.0


class DegenerateGapError(ValueError):
    """A ladder link has |Delta_M| below the gap floor; n(omega) would diverge."""


@dataclass(frozen=True)
class LadderModel:
    n_qubits: int
    omega_a: float
    omega_interaction: float
    levels: np.ndarray  # M, descending
    energies: np.ndarray  # E_M per level
    link_m: np.ndarray  # upper level M of each link, descending
    gaps: np.ndarray  # Delta_M = E_M - E_{M-1}
    trans_freqs: np.ndarray  # |Delta_M|
    degeneracy_factors: np.ndarray  # a_M

    @property
    def dim(self) -> int:
        return self.n_qubits + 1

    def level_index(self, m: float) -> int:
        """Position of level M in the population vector."""
        i = int(round(self.n_qubits / 2 - m))
        if not 0 <= i <= self.n_qubits or abs(self.levels[i] - m) > 1e-9:
            raise ValueError(f"M={m} is not a level of the N={self.n_qubits} ladder")
        return i

    def link_index(self, m: float) -> int:
        """Position of link M (|M> <-> |M-1>) in the link arrays."""
        i = self.level_index(m)
        if i == self.n_qubits:
            raise ValueError(f"no link below the bottom level M={m}")
        return i


def degeneracy_factor(n_qubits, m):
    """a_M = (N/2 + M)(N/2 - M + 1)."""
    return (n_qubits / 2 + m) * (n_qubits / 2 - m + 1)


def build_ladder(n_qubits: int, omega_a: float, omega_interaction: float) -> LadderModel:
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    levels = n_qubits / 2 - np.arange(n_qubits + 1, dtype=float)
    energies = omega_a * levels + omega_interaction * levels**2
    link_m = levels[:-1]
    gaps = omega_a + (2 * link_m - 1) * omega_interaction
    return LadderModel(
        n_qubits=n_qubits,
        omega_a=float(omega_a),
        omega_interaction=float(omega_interaction),
        levels=levels,
        energies=energies,
        link_m=link_m,
        gaps=gaps,
        trans_freqs=np.abs(gaps),
        degeneracy_factors=degeneracy_factor(n_qubits, link_m),
    )


@dataclass(frozen=True)
class BathModel:
    """Thermal bath seen through a leaky cavity with a Lorentzian response."""

    omega_cavity: float
    coupling: float
    linewidth: float
    beta: float

    @property
    def gamma_purcell(self) -> float:
        return 8.0 * self.coupling**2 / self.linewidth


def spectral_density(bath: BathModel, omega):
    """kappa(omega) = 4 pi |xi(omega)|^2 = 2 dw g^2 / ((omega - omega_c)^2 + dw^2 / 4)."""
    omega = np.asarray(omega, dtype=float)
    detuning = omega - bath.omega_cavity
    out = 2.0 * bath.linewidth * bath.coupling**2 / (detuning**2 + bath.linewidth**2 / 4.0)
    return out if out.ndim else float(out)


def occupation(beta, omega):
    """Bose-Einstein occupation 1 / (exp(beta omega) - 1).

    ``expm1`` keeps the small-argument limit accurate; arguments beyond the
    overflow threshold give exactly zero.
    """
    x = np.asarray(beta, dtype=float) * np.asarray(omega, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x) | np.isposinf(x)):
        raise ValueError("occupation needs beta * omega > 0")
    safe = np.minimum(x, OVERFLOW_EXPONENT)
    n = np.where(x > OVERFLOW_EXPONENT, 0.0, 1.0 / np.expm1(safe))
    if not np.all(np.isfinite(n)):
        raise ValueError("non-finite occupation number")
    return n if n.ndim else float(n)


@dataclass(frozen=True)
class RateTable:
    """Per-link transition rates (rad/s), aligned with ``LadderModel.link_m``.

    ``down_rate`` always lowers the energy of the pair: for a positive gap it
    drives |M> -> |M-1>, for a negative gap |M-1> -> |M>.
    """

    down_rate: np.ndarray
    up_rate: np.ndarray
    gap_sign: np.ndarray
    kappa: np.ndarray
    occupation: np.ndarray
    beta: float

    @property
    def rate_to_lower_m(self) -> np.ndarray:
        """Rate of |M> -> |M-1> for each link."""
        return np.where(self.gap_sign > 0, self.down_rate, self.up_rate)

    @property
    def rate_to_upper_m(self) -> np.ndarray:
        """Rate of |M-1> -> |M> for each link."""
        return np.where(self.gap_sign > 0, self.up_rate, self.down_rate)


def build_rates(ladder: LadderModel, bath: BathModel, gap_floor: float = 1e-9) -> RateTable:
    omegas = ladder.trans_freqs
    if omegas.size and np.min(omegas) < gap_floor * ladder.omega_a:
        bad = ladder.link_m[np.argmin(omegas)]
        raise DegenerateGapError(
            f"|Delta_M| below gap floor at M={bad:g} (N={ladder.n_qubits})")
    kappa = np.asarray(spectral_density(bath, omegas), dtype=float)
    if np.isinf(bath.beta):
        n = np.zeros_like(omegas)
    else:
        n = np.asarray(occupation(bath.beta, omegas), dtype=float)
    a = ladder.degeneracy_factors
    return RateTable(
        down_rate=a * kappa * (1.0 + n),
        up_rate=a * kappa * n,
        gap_sign=np.sign(ladder.gaps),
        kappa=kappa,
        occupation=n,
        beta=bath.beta,
    )


def build_generator(rates: RateTable) -> np.ndarray:
    """Rate matrix G with dp/dt = G p (descending-M order); columns sum to zero."""
    k_down = rates.rate_to_lower_m  # index i -> i+1
    k_up = rates.rate_to_upper_m  # index i+1 -> i
    dim = k_down.size + 1
    G = np.zeros((dim, dim))
    idx = np.arange(dim - 1)
    G[idx + 1, idx] = k_down
    G[idx, idx + 1] = k_up
    G[np.arange(dim), np.arange(dim)] = -G.sum(axis=0)
    return G

"""Degenerate 2N_d-state comparison model with an all-to-all collective jump operator.

Basis order: (e,1) ... (e,N_d), (g,1) ... (g,N_d). The model only needs to
reproduce decay-rate scalings, so no engine cycle is built on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import loglog_slope
from .oracle import expm_taylor, lindblad_superoperator


@dataclass(frozen=True)
class TFSpec:
    n_degeneracy: int
    omega0: float
    gamma_down: float
    gamma_up: float

    @classmethod
    def thermal(cls, n_degeneracy: int, omega0: float, gamma_down: float, beta: float) -> "TFSpec":
        """Rates obeying gamma_down / gamma_up = exp(beta omega0)."""
        return cls(n_degeneracy, omega0, gamma_down, gamma_down * math.exp(-beta * omega0))

    @property
    def dim(self) -> int:
        return 2 * self.n_degeneracy


def hamiltonian(spec: TFSpec) -> np.ndarray:
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    h[np.arange(spec.n_degeneracy), np.arange(spec.n_degeneracy)] = spec.omega0
    return h


def build_tf_jump(spec: TFSpec) -> np.ndarray:
    """L = sum_{j,j'} |g,j><e,j'|: all-ones block from the excited to the ground sector."""
    nd = spec.n_degeneracy
    L = np.zeros((spec.dim, spec.dim))
    L[nd:, :nd] = 1.0
    return L


def plus_state(spec: TFSpec, sector: str) -> np.ndarray:
    """|e,+> or |g,+>: uniform superposition within one sector."""
    nd = spec.n_degeneracy
    v = np.zeros(spec.dim)
    sl = slice(0, nd) if sector == "e" else slice(nd, 2 * nd)
    v[sl] = 1.0 / math.sqrt(nd)
    return v


def bd_state(spec: TFSpec) -> np.ndarray:
    v = plus_state(spec, "e")
    return np.outer(v, v).astype(complex)


def sd_state(spec: TFSpec) -> np.ndarray:
    rho = np.zeros((spec.dim, spec.dim), dtype=complex)
    nd = spec.n_degeneracy
    rho[np.arange(nd), np.arange(nd)] = 1.0 / nd
    return rho


def liouvillian(spec: TFSpec) -> np.ndarray:
    L = build_tf_jump(spec)
    return lindblad_superoperator(hamiltonian(spec), [L, L.T], [spec.gamma_down, spec.gamma_up])


def evolve_tf(rho: np.ndarray, spec: TFSpec, duration: float) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (spec.dim, spec.dim):
        raise ValueError(f"state must be {spec.dim}x{spec.dim}")
    vec = expm_taylor(liouvillian(spec) * duration) @ rho.reshape(-1, order="F")
    return vec.reshape(spec.dim, spec.dim, order="F")


def excited_population(rho: np.ndarray, spec: TFSpec) -> float:
    nd = spec.n_degeneracy
    return float(np.real(np.trace(rho[:nd, :nd])))


def initial_decay_rate(spec: TFSpec, mode: str, dt_scale: float = 1e-7) -> float:
    """Relative decay rate -(dP_e/dt)/P_e at t = 0+ by a forward finite difference."""
    if mode == "bd":
        rho = bd_state(spec)
    elif mode == "sd":
        rho = sd_state(spec)
    else:
        raise ValueError(f"mode must be 'sd' or 'bd', got {mode!r}")
    # step short against the fastest possible rate N_d^2 gamma
    dt = dt_scale / (spec.n_degeneracy**2 * max(spec.gamma_down, spec.gamma_up))
    p0 = excited_population(rho, spec)
    p1 = excited_population(evolve_tf(rho, spec, dt), spec)
    return (p0 - p1) / (dt * p0)


def measure_rate_scaling(specs, mode: str) -> float:
    """Log-log slope of the initial decay rate against N_d over a family of specs."""
    specs = list(specs)
    if len(specs) < 4:
        raise ValueError("need at least four N_d values")
    nd = [s.n_degeneracy for s in specs]
    return loglog_slope(nd, [initial_decay_rate(s, mode) for s in specs])

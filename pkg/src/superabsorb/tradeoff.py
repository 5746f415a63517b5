"""Current-dissipation and power-efficiency trade-off quantities for Dicke-diagonal states.

The bound A(t) = (A_cl + A_qm) / 2 is evaluated in closed form. The
closed forms assume every ladder gap Delta_M is positive, so that each
link has a single energy-lowering direction |M> -> |M-1>; other regimes
raise NonpositiveGapError instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .dynamics import PopulationState, Trajectory, entropy_production_rate, heat_current
from .engine import CycleRecord
from .ladder import LadderModel, RateTable, build_generator

VERDICT_TOL = 1e-8
# |J| below this fraction of the gross energy flux counts as equilibrium
EQUILIBRIUM_TOL = 1e-10


class NonpositiveGapError(ValueError):
    pass


def log_binom(n, k):
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def dicke_binomials(n_qubits: int) -> np.ndarray:
    """C(N, N/2 + M) per level, descending M."""
    excitations = n_qubits - np.arange(n_qubits + 1)
    return np.exp(log_binom(n_qubits, excitations))


@dataclass(frozen=True)
class CoherenceFactors:
    n_qubits: int
    gamma_up: np.ndarray  # per link, a_M kappa n
    gamma_down: np.ndarray  # per link, a_M kappa (1 + n)
    binom: np.ndarray  # per level
    x_diag: np.ndarray  # per level: Delta_M^2 gamma_M^up + Delta_{M+1}^2 gamma_{M+1}^down
    c_x: float
    rates: RateTable

    @property
    def generator(self) -> np.ndarray:
        return build_generator(self.rates)


def _require_positive_gaps(ladder: LadderModel):
    if np.any(ladder.gaps <= 0):
        m = ladder.link_m[np.argmax(ladder.gaps <= 0)]
        raise NonpositiveGapError(f"Delta_M <= 0 at M={m:g} (N={ladder.n_qubits})")


def coherence_factors(ladder: LadderModel, rates: RateTable) -> CoherenceFactors:
    _require_positive_gaps(ladder)
    gaps2 = ladder.gaps**2
    up = rates.up_rate
    down = rates.down_rate
    # level i holds M; link i is (M, M-1); link i-1 is (M+1, M)
    x = np.zeros(ladder.dim)
    x[:-1] += gaps2 * up
    x[1:] += gaps2 * down
    binom = dicke_binomials(ladder.n_qubits)
    return CoherenceFactors(
        n_qubits=ladder.n_qubits,
        gamma_up=up, gamma_down=down, binom=binom, x_diag=x,
        c_x=float(np.max(x / binom)),
        rates=rates,
    )


def a_classical(state: PopulationState, factors: CoherenceFactors) -> float:
    """A_cl = sum_M p_M / C(N, N/2+M) [Delta_M^2 gamma_M^up + Delta_{M+1}^2 gamma_{M+1}^down]."""
    return float(np.sum(state.probs * factors.x_diag / factors.binom))


def c_l1(state: PopulationState, binom: np.ndarray | None = None) -> float:
    """l1-coherence of a Dicke-diagonal state in the computational basis."""
    if binom is None:
        binom = dicke_binomials(state.n_qubits)
    return float(np.sum(state.probs * (binom - 1.0)))


def a_quantum(state: PopulationState, factors: CoherenceFactors) -> float:
    return factors.c_x * c_l1(state, factors.binom)


@dataclass(frozen=True)
class BoundSample:
    t: float
    stroke: str
    a_cl: float
    a_qm: float
    a_mean: float
    j: float
    sigma_dot: float
    ratio_ok: bool
    at_equilibrium: bool = False

    @property
    def ratio(self) -> float:
        """J^2 / sigma_dot, taken as 0 at equilibrium points where both are roundoff."""
        if self.at_equilibrium:
            return 0.0
        return self.j**2 / self.sigma_dot


def check_current_bound(trajectory: Trajectory, factors: CoherenceFactors, ladder: LadderModel,
                        beta: float, t_offset: float = 0.0) -> list[BoundSample]:
    """Evaluate J^2 / sigma_dot <= A(t) at every trajectory sample."""
    _require_positive_gaps(ladder)
    G = factors.generator
    abs_e = np.abs(ladder.energies)
    out = []
    for t, s in zip(trajectory.times, trajectory.states):
        j = heat_current(s, G, ladder)
        sig = entropy_production_rate(s, G, ladder, beta)
        acl = a_classical(s, factors)
        aqm = a_quantum(s, factors)
        amean = 0.5 * (acl + aqm)
        gross = float(abs_e @ (np.abs(G) @ s.probs))
        eq = abs(j) <= EQUILIBRIUM_TOL * gross
        ok = eq or (sig > 0 and j * j / sig <= amean * (1.0 + VERDICT_TOL))
        out.append(BoundSample(float(t + t_offset), trajectory.tag, acl, aqm, amean, j, sig,
                               bool(ok), bool(eq)))
    return out


@dataclass(frozen=True)
class BoundReport:
    a_bar: float
    alpha: float
    p_over_delta_eta: float
    bound_value: float
    satisfied: bool
    margin: float
    delta_eta_zero: bool = False


def tradeoff_alpha(beta_cold: float, eta_carnot: float) -> float:
    return beta_cold * eta_carnot / (2.0 - eta_carnot) ** 2


def time_average(samples: list[BoundSample], tau: float) -> float:
    """Trapezoidal average of A(t) over the cycle, integrating each stroke separately."""
    total = 0.0
    for stroke in dict.fromkeys(s.stroke for s in samples):
        group = [s for s in samples if s.stroke == stroke]
        t = np.array([s.t for s in group])
        a = np.array([s.a_mean for s in group])
        total += float(np.sum(0.5 * (a[1:] + a[:-1]) * np.diff(t)))
    return total / tau


def check_power_bound(record: CycleRecord, samples: list[BoundSample], beta_cold: float) -> BoundReport:
    a_bar = time_average(samples, record.tau)
    alpha = tradeoff_alpha(beta_cold, record.eta_carnot)
    bound = alpha * a_bar
    if record.delta_eta == 0:
        return BoundReport(a_bar, alpha, float("inf"), bound, False, 0.0, delta_eta_zero=True)
    ratio = record.power / record.delta_eta
    return BoundReport(
        a_bar=a_bar, alpha=alpha, p_over_delta_eta=ratio, bound_value=bound,
        satisfied=bool(ratio <= bound * (1.0 + VERDICT_TOL)),
        margin=bound / ratio if ratio != 0 else float("inf"),
    )


@dataclass(frozen=True)
class CycleBounds:
    record: CycleRecord
    samples: list
    report: BoundReport
    final_state: PopulationState


def evaluate_cycle(state: PopulationState, plan, beta_hot: float, beta_cold: float,
                   n_samples: int = 1000) -> CycleBounds:
    """Run one engine cycle and evaluate both trade-off relations along it.

    Each stroke's A(t) uses the coherence factors of its own bath.
    """
    from .dynamics import sample_trajectory
    from .engine import run_cycle

    f_hot = coherence_factors(plan.ladder_hot, plan.rates_hot)
    f_cold = coherence_factors(plan.ladder_cold, plan.rates_cold)
    end, record = run_cycle(state, plan)
    traj_h = sample_trajectory(state, plan.generator_hot, plan.tau_hot, n_samples, tag="hot")
    mid = traj_h.states[-1]
    traj_c = sample_trajectory(mid, plan.generator_cold, plan.tau_cold, n_samples, tag="cold")
    samples = (check_current_bound(traj_h, f_hot, plan.ladder_hot, beta_hot)
               + check_current_bound(traj_c, f_cold, plan.ladder_cold, beta_cold,
                                     t_offset=plan.tau_hot))
    return CycleBounds(record, samples, check_power_bound(record, samples, beta_cold), end)

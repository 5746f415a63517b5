"""Superabsorption quantum heat engine: Dicke-ladder dynamics, engine cycle, trade-off checks."""

from .dynamics import (PopulationState, Trajectory, entropy, entropy_production_rate, gibbs_state,
                       heat_current, mean_energy, propagate, sample_trajectory)
from .engine import (CycleRecord, Predictions, StrokePlan, SweepResult, build_plan, initial_state,
                     predict, run_cycle, run_cycles, separable_baseline, sweep_n)
from .ladder import (BathModel, DegenerateGapError, LadderModel, RateTable, build_generator,
                     build_ladder, build_rates, occupation, spectral_density)
from .units import (CONSTANTS, REFERENCE_CONFIG, ConfigError, EngineConfig, NaturalParams,
                    dimensionless_exponents, load_config, read_config, to_natural)
from .tradeoff import (CoherenceFactors, a_classical, a_quantum, c_l1, coherence_factors,
                       evaluate_cycle)

__version__ = "0.1.0"

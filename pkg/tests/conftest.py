import dataclasses

import numpy as np
import pytest

from superabsorb.ladder import BathModel, build_ladder
from superabsorb.units import REFERENCE_CONFIG, to_natural

# every ladder gap stays positive on both strokes up to N = 31, and the
# centre link dominates the coherence factor there
TRADEOFF_CONFIG = dataclasses.replace(REFERENCE_CONFIG, freq_interaction=15e6, cavity_linewidth=0.1e6)
# narrow-line variant that keeps those properties up to N = 63
TRADEOFF_WIDE_CONFIG = dataclasses.replace(REFERENCE_CONFIG, freq_interaction=8e6, cavity_linewidth=1.0)


def reference_params(freq_cold=0.55e9):
    return to_natural(dataclasses.replace(REFERENCE_CONFIG, freq_qubit_cold=freq_cold))


@pytest.fixture
def ref():
    return reference_params()


@pytest.fixture
def tradeoff_params():
    return to_natural(TRADEOFF_CONFIG)


@pytest.fixture
def toy():
    """Small natural-unit model with rates of comparable size on every link."""
    ladder = build_ladder(5, 1.0, 0.1)
    bath = BathModel(omega_cavity=1.0, coupling=0.05, linewidth=0.5, beta=1.5)
    return ladder, bath


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

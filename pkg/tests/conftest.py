import numpy as np
import pytest

from qabn.network import build_step_operator
from qabn.presets import preset


def loop_reduced_state(amps, q, i):
    """Partial trace by explicit summation over basis pairs (slow reference)."""
    rho = np.zeros((2, 2), dtype=complex)
    shift = q - 1 - i
    for b in range(1 << q):
        for a in (0, 1):
            for c in (0, 1):
                if (b >> shift) & 1 != a:
                    continue
                partner = b ^ ((a ^ c) << shift)
                rho[a, c] += amps[b] * np.conj(amps[partner])
    return rho


def binary_entropy(p):
    return 0.0 if p in (0.0, 1.0) else float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


@pytest.fixture
def net():
    def make(name):
        s = preset(name).network
        return s, build_step_operator(s), s.initial_state()
    return make


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

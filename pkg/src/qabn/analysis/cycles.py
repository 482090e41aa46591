"""State-cycle and I_m-cycle detection.

Because a network step is a basis permutation, the exact state period comes
from the cycle structure of that permutation: on each cycle touched by the
initial amplitudes, find the smallest rotation that leaves the amplitude
sequence unchanged, then take the lcm. No trajectory replay is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import DomainError
from ..network import PureState, StepOperator, evolve
from .entropy import im_series

ORBIT = "orbit-oracle"
ITERATIVE = "iterative"


@dataclass(frozen=True)
class CycleReport:
    state_period: int | None
    im_period: int | None = None
    preperiod: int = 0
    method: str = ORBIT
    steps_searched: int | None = None

    @property
    def found(self) -> bool:
        return self.state_period is not None

    def to_dict(self) -> dict:
        return {
            "state_period": self.state_period,
            "im_period": self.im_period,
            "preperiod": self.preperiod,
            "method": self.method,
        }


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def permutation_cycles(index_map: np.ndarray, starts: Iterable[int] | None = None) -> list[list[int]]:
    """Disjoint cycles of a permutation, optionally only those through ``starts``."""
    succ = index_map.tolist()
    seen = bytearray(len(succ))
    cycles = []
    for s in (range(len(succ)) if starts is None else starts):
        s = int(s)
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = 1
        b = succ[s]
        while b != s:
            cyc.append(b)
            seen[b] = 1
            b = succ[b]
        cycles.append(cyc)
    return cycles


def minimal_rotation(values: np.ndarray, tol: float = 1e-12) -> int:
    """Smallest ``d`` dividing ``len(values)`` with ``roll(values, d) == values``."""
    n = len(values)
    for d in divisors(n):
        if d == n or np.all(np.abs(np.roll(values, d) - values) <= tol):
            return d
    return n


def detect_state_cycle_orbit(W: StepOperator, initial: PureState, tol: float = 1e-12) -> CycleReport:
    if initial.qubit_count != W.qubit_count:
        raise DomainError("state and operator sizes differ")
    idx, val = initial.support()
    amp = dict(zip(idx.tolist(), val.tolist()))
    period = 1
    for cyc in permutation_cycles(W.index_map, idx):
        seq = np.array([amp.get(b, 0.0) for b in cyc], dtype=complex)
        period = math.lcm(period, minimal_rotation(seq, tol))
    return CycleReport(period, method=ORBIT)


def detect_state_cycle_iterative(W: StepOperator, initial: PureState, max_steps: int = 10_000,
                                 tol: float = 1e-10) -> CycleReport:
    """Step until the state returns to ``initial``; ``state_period`` is None if it never does."""
    if max_steps < 1:
        raise DomainError("max_steps must be at least 1")
    traj = evolve(initial, W, max_steps)
    next(traj)
    for t, state in enumerate(traj, start=1):
        if state.allclose(initial, tol):
            return CycleReport(t, method=ITERATIVE, steps_searched=t)
    return CycleReport(None, method=ITERATIVE, steps_searched=max_steps)


def detect_im_cycle(series, tol: float = 1e-9, min_repeats: int = 3) -> int | None:
    """Smallest ``p`` with ``|s[t+p] - s[t]| < tol`` across the window.

    The window must hold at least ``min_repeats`` full periods.
    """
    s = np.asarray(series, dtype=float)
    if len(s) < 2:
        raise DomainError("series needs at least two points")
    for p in range(1, len(s) // min_repeats + 1):
        if np.all(np.abs(s[p:] - s[:-p]) < tol):
            return p
    return None


def im_period_exact(W: StepOperator, initial: PureState, state_period: int,
                    tol: float = 1e-9) -> int:
    """I_m period from one full state period; always a divisor of ``state_period``."""
    series = im_series(W, initial, state_period - 1)
    for d in divisors(state_period):
        if np.all(np.abs(np.roll(series, -d) - series) < tol):
            return d
    return state_period


def cycle_report(W: StepOperator, initial: PureState, im_limit: int = 200_000,
                 tol: float = 1e-9) -> CycleReport:
    """Orbit period plus the I_m period when the state period is at most ``im_limit``."""
    orbit = detect_state_cycle_orbit(W, initial)
    im = im_period_exact(W, initial, orbit.state_period, tol) if orbit.state_period <= im_limit else None
    return CycleReport(orbit.state_period, im, 0, ORBIT)

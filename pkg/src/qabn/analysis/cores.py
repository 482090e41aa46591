"""Frozen cores, islands and bit-flip perturbation experiments."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import DomainError
from ..network import NetworkSpec, PureState, StepOperator, build_step_operator, evolve
from .cycles import detect_im_cycle, detect_state_cycle_orbit
from .entropy import multipartite_mutual_information, reduced_states, trace_distance

FULL_PERIOD = "full-period"
SAMPLED = "sampled"
FIXED = "fixed"


def islands(frozen: Sequence[int], q: int) -> list[list[int]]:
    """Maximal runs of consecutive non-frozen indices."""
    frozen = set(frozen)
    runs, cur = [], []
    for i in range(q):
        if i in frozen:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(i)
    if cur:
        runs.append(cur)
    return runs


def island_of(qubit: int, runs: Sequence[Sequence[int]]) -> int | None:
    for n, run in enumerate(runs):
        if qubit in run:
            return n
    return None


def _summary(rho: np.ndarray) -> tuple[float, float, float, float]:
    vals = (rho[0, 0].real, rho[0, 1].real, rho[0, 1].imag, rho[1, 1].real)
    return tuple(round(float(v), 9) + 0.0 for v in vals)


@dataclass(frozen=True)
class FrozenCoreReport:
    frozen: tuple[int, ...]
    islands: tuple[tuple[int, ...], ...]
    visited: dict[int, list[tuple[float, float, float, float]]] = field(compare=False)
    horizon: int = 0
    horizon_mode: str = FIXED

    def to_dict(self) -> dict:
        return {
            "frozen": list(self.frozen),
            "islands": [list(r) for r in self.islands],
            "horizon": self.horizon,
            "horizon_mode": self.horizon_mode,
            "visited": {str(q): [list(s) for s in v] for q, v in self.visited.items()},
        }


def frozen_cores(W: StepOperator, initial: PureState, horizon: int | None = None,
                 tol: float = 1e-9, sample_limit: int = 10_000,
                 max_visited: int = 32) -> FrozenCoreReport:
    """Qubits whose reduced state stays within ``tol`` (trace distance) of its start.

    With no ``horizon`` the whole state period is scanned when it is at most
    ``sample_limit`` steps, otherwise the first ``sample_limit`` steps.
    """
    if horizon is None:
        period = detect_state_cycle_orbit(W, initial).state_period
        if period <= sample_limit:
            horizon, mode = period, FULL_PERIOD
        else:
            horizon, mode = sample_limit, SAMPLED
    else:
        mode = FIXED
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    q = W.qubit_count
    start = reduced_states(initial)
    moved = [False] * q
    visited: dict[int, list] = {i: [] for i in range(q)}
    for state in evolve(initial, W, horizon - 1):
        for i, rho in enumerate(reduced_states(state)):
            if not moved[i] and trace_distance(rho, start[i]) >= tol:
                moved[i] = True
            s = _summary(rho)
            if len(visited[i]) < max_visited and s not in visited[i]:
                visited[i].append(s)
    frozen = tuple(i for i in range(q) if not moved[i])
    return FrozenCoreReport(frozen, tuple(tuple(r) for r in islands(frozen, q)),
                            visited, horizon, mode)


def perturbed_trajectory(W: StepOperator, initial: PureState, step: int,
                         qubits: Sequence[int], horizon: int) -> list[PureState]:
    """States at ``t = 0..horizon``, with bit flips applied to the state at ``t = step``."""
    out = []
    for t, state in enumerate(evolve(initial, W, step)):
        if t == step:
            for qb in qubits:
                state = state.bit_flipped(qb)
        out.append(state)
    out.extend(list(evolve(out[-1], W, horizon - step))[1:])
    return out


@dataclass(frozen=True)
class PerturbationReport:
    qubit: int
    step: int
    first_divergence: dict[int, int | None]
    island_crossing: bool
    im_cycle_preserved: bool
    baseline_im_period: int | None
    perturbed_im_period: int | None
    horizon: int

    def to_dict(self) -> dict:
        return {
            "qubit": self.qubit,
            "step": self.step,
            "first_divergence": {str(k): v for k, v in self.first_divergence.items()},
            "island_crossing": self.island_crossing,
            "im_cycle_preserved": self.im_cycle_preserved,
            "baseline_im_period": self.baseline_im_period,
            "perturbed_im_period": self.perturbed_im_period,
            "horizon": self.horizon,
        }


def perturb_operator(W: StepOperator, initial: PureState, step: int, qubit: int,
                     horizon: int | None = None, tol: float = 1e-9,
                     im_tol: float = 1e-9) -> PerturbationReport:
    q = W.qubit_count
    if step < 0:
        raise DomainError("perturbation step must be non-negative")
    if not 0 <= qubit < q:
        raise DomainError(f"qubit {qubit} out of range for {q} qubits")
    if horizon is None:
        horizon = step + 360
    if horizon < step:
        raise DomainError("horizon must not precede the perturbation step")
    base = list(evolve(initial, W, horizon))
    pert = perturbed_trajectory(W, initial, step, [qubit], horizon)

    first: dict[int, int | None] = {i: None for i in range(q)}
    for t in range(step, horizon + 1):
        rb, rp = reduced_states(base[t]), reduced_states(pert[t])
        for i in range(q):
            if first[i] is None and trace_distance(rb[i], rp[i]) > tol:
                first[i] = t

    runs = frozen_cores(W, initial, tol=tol).islands
    home = island_of(qubit, runs)
    crossing = any(t is not None and i != qubit and island_of(i, runs) != home
                   for i, t in first.items())

    im_base = detect_im_cycle([multipartite_mutual_information(s) for s in base], im_tol)
    im_pert = detect_im_cycle([multipartite_mutual_information(s) for s in pert[step:]], im_tol)
    return PerturbationReport(qubit, step, first, crossing,
                              im_base is not None and im_base == im_pert,
                              im_base, im_pert, horizon)


def perturb(spec: NetworkSpec, step: int, qubit: int, op: str = "bit-flip",
            horizon: int | None = None, tol: float = 1e-9) -> PerturbationReport:
    if op != "bit-flip":
        raise DomainError(f"unsupported perturbation {op!r}")
    return perturb_operator(build_step_operator(spec), spec.initial_state(), step, qubit,
                            horizon, tol)

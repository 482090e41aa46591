"""Classical synchronous autonomous Boolean networks.

States are n-bit tuples, or integers with variable 0 as the most
significant bit. The update is plain evaluation, ``x_i' = f_i(inputs_i)``.
"""
from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis.cores import islands
from .boolfn import TruthTable, enumerate_functions, evaluate, format_function
from .errors import DomainError, ResourceError

MAX_GRAPH_VARS = 22
MAX_ENSEMBLE_VARS = 20


@dataclass(frozen=True)
class ClassicalNet:
    """``nodes[i] = (function, input variable indices)`` for variable ``i``."""

    nodes: tuple[tuple[TruthTable, tuple[int, ...]], ...]

    def __post_init__(self):
        nodes = tuple((f, tuple(int(j) for j in ins)) for f, ins in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        n = len(nodes)
        if n == 0:
            raise DomainError("a classical net needs at least one variable")
        for i, (f, ins) in enumerate(nodes):
            if len(ins) != f.arity:
                raise DomainError(f"variable {i}: {f.label} takes {f.arity} inputs, got {len(ins)}")
            if any(not 0 <= j < n for j in ins):
                raise DomainError(f"variable {i}: input index out of range in {ins}")

    @property
    def n(self) -> int:
        return len(self.nodes)

    def describe(self) -> list[str]:
        return [f"cvar {i} = {format_function(f)}({','.join(map(str, ins))})"
                for i, (f, ins) in enumerate(self.nodes)]


def to_int(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def to_bits(state: int, n: int) -> tuple[int, ...]:
    return tuple((state >> (n - 1 - i)) & 1 for i in range(n))


def bitstring(state: int, n: int) -> str:
    return format(state, f"0{n}b")


def classical_step(net: ClassicalNet, state: Sequence[int]) -> tuple[int, ...]:
    if len(state) != net.n:
        raise DomainError(f"state has {len(state)} bits, net has {net.n} variables")
    return tuple(evaluate(f, [state[j] for j in ins]) for f, ins in net.nodes)


def step_int(net: ClassicalNet, state: int) -> int:
    n = net.n
    out = 0
    for f, ins in net.nodes:
        idx = 0
        for j in ins:
            idx = (idx << 1) | ((state >> (n - 1 - j)) & 1)
        out = (out << 1) | f.outputs[idx]
    return out


def successor_map(net: ClassicalNet) -> np.ndarray:
    n = net.n
    if n > MAX_GRAPH_VARS:
        raise ResourceError(f"state graph limited to {MAX_GRAPH_VARS} variables, got {n}")
    states = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(states)
    for i, (f, ins) in enumerate(net.nodes):
        idx = np.zeros_like(states)
        for j in ins:
            idx = (idx << 1) | ((states >> (n - 1 - j)) & 1)
        out |= np.asarray(f.outputs, dtype=np.int64)[idx] << (n - 1 - i)
    return out


@dataclass(frozen=True, eq=False)
class StateGraph:
    n: int
    successors: np.ndarray
    attractors: list[list[int]]
    basin: np.ndarray

    @property
    def basin_sizes(self) -> list[int]:
        return np.bincount(self.basin, minlength=len(self.attractors)).tolist()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "attractors": [[bitstring(s, self.n) for s in cyc] for cyc in self.attractors],
            "lengths": [len(c) for c in self.attractors],
            "basin_sizes": self.basin_sizes,
        }

    def to_dot(self, max_vars: int = 10) -> str:
        if self.n > max_vars:
            raise ResourceError(f"DOT output limited to {max_vars} variables")
        lines = ["digraph states {"]
        for s, t in enumerate(self.successors.tolist()):
            lines.append(f'  "{bitstring(s, self.n)}" -> "{bitstring(t, self.n)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_attractors(net: ClassicalNet) -> StateGraph:
    succ = successor_map(net)
    size = len(succ)
    # succ^(2^m) with 2^m >= size lands every state on its attractor
    jump = succ.copy()
    for _ in range(max(1, size.bit_length())):
        jump = jump[jump]
    on_cycle = np.unique(jump)
    label = np.full(size, -1, dtype=np.int64)
    attractors = []
    for s in on_cycle.tolist():
        if label[s] >= 0:
            continue
        cyc = [s]
        label[s] = len(attractors)
        b = int(succ[s])
        while b != s:
            cyc.append(b)
            label[b] = len(attractors)
            b = int(succ[b])
        attractors.append(cyc)
    return StateGraph(net.n, succ, attractors, label[jump])


def trajectory_cycle(net: ClassicalNet, state: int) -> tuple[int, int]:
    """``(preperiod, cycle length)`` of the trajectory from ``state``."""
    seen = {}
    t = 0
    while state not in seen:
        seen[state] = t
        state = step_int(net, state)
        t += 1
    return seen[state], t - seen[state]


@dataclass(frozen=True)
class ClassicalFrozenReport:
    frozen: tuple[int, ...]
    islands: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"frozen": list(self.frozen), "islands": [list(r) for r in self.islands]}


def frozen_from_rows(rows: Sequence[Sequence[int]]) -> ClassicalFrozenReport:
    """Frozen variables and islands of an explicit trajectory (one row per step)."""
    rows = [tuple(r) for r in rows]
    if not rows:
        raise DomainError("need at least one row")
    n = len(rows[0])
    frozen = tuple(i for i in range(n) if all(r[i] == rows[0][i] for r in rows))
    return ClassicalFrozenReport(frozen, tuple(tuple(r) for r in islands(frozen, n)))


def classical_frozen_cores(net: ClassicalNet, initial: Sequence[int], horizon: int) -> ClassicalFrozenReport:
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    rows = [tuple(initial)]
    for _ in range(horizon):
        rows.append(classical_step(net, rows[-1]))
    return frozen_from_rows(rows)


def random_classical_net(rng: random.Random, n: int, k: int = 2) -> ClassicalNet:
    """Each variable reads ``k`` distinct random variables through a uniform random function."""
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    tables = enumerate_functions(k)
    return ClassicalNet(tuple((rng.choice(tables), tuple(rng.sample(range(n), k)))
                              for _ in range(n)))


@dataclass(frozen=True)
class EnsembleStats:
    seed: int
    n: int
    k: int
    lengths: tuple[int, ...]

    @property
    def median(self) -> float:
        return float(statistics.median(self.lengths))

    @property
    def mean(self) -> float:
        return float(statistics.fmean(self.lengths))

    def to_dict(self) -> dict:
        return {"seed": self.seed, "n": self.n, "k": self.k, "samples": len(self.lengths),
                "median": self.median, "mean": self.mean, "max": max(self.lengths)}


def ensemble_cycle_stats(seed: int, n: int, k: int = 2, samples: int = 100) -> EnsembleStats:
    """Attractor lengths reached from random initial states of random nets."""
    if n > MAX_ENSEMBLE_VARS:
        raise ResourceError(f"ensemble limited to {MAX_ENSEMBLE_VARS} variables, got {n}")
    if n < 1 or samples < 1:
        raise DomainError("need n >= 1 and samples >= 1")
    rng = random.Random(seed)
    lengths = []
    for _ in range(samples):
        net = random_classical_net(rng, n, min(k, n))
        _, length = trajectory_cycle(net, rng.randrange(1 << n))
        lengths.append(length)
    return EnsembleStats(seed, n, k, tuple(lengths))

"""Quantum autonomous Boolean networks: layout, step operator and evolution.

Conventions used throughout the package:

* qubit 0 (topmost in a circuit drawing) is the most significant bit of a
  basis index;
* qubits are laid out function by function, each block being the function's
  inputs in order followed by its ancilla;
* one step applies every bit oracle and then the wiring, where
  ``wiring[j] = i`` means output wire ``i`` feeds input ``j`` of the next step.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .boolfn import CATALOG, TruthTable, format_function
from .errors import DomainError, ResourceError, SpecParseError
from .oracle import build_bit_oracle, tensor_network_oracle

DENSE_LIMIT = 14
MAX_QUBITS = 22
DENSITY_LIMIT = 8
SYMBOLS = "01+-"

_INV_SQRT2 = 1 / math.sqrt(2)
_KETS = {
    "0": np.array([1.0, 0.0]),
    "1": np.array([0.0, 1.0]),
    "+": np.array([_INV_SQRT2, _INV_SQRT2]),
    "-": np.array([_INV_SQRT2, -_INV_SQRT2]),
}


# --------------------------------------------------------------------- layout

@dataclass(frozen=True)
class QubitLayout:
    """Per-function blocks of global qubit indices: ``(x_indices, y_index)``."""

    blocks: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def qubit_count(self) -> int:
        return sum(len(xs) + 1 for xs, _ in self.blocks)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(len(xs) for xs, _ in self.blocks)

    def block_of(self, qubit: int) -> int:
        for i, (xs, y) in enumerate(self.blocks):
            if qubit in xs or qubit == y:
                return i
        raise DomainError(f"qubit {qubit} out of range")

    def qubit_names(self) -> list[str]:
        names = []
        for i, (xs, _) in enumerate(self.blocks, start=1):
            if len(xs) == 1:
                names.append(f"x{i}")
            else:
                names.extend(f"x{i}{chr(ord('a') + j)}" for j in range(len(xs)))
            names.append(f"y{i}")
        return names


def layout_for_arities(arities: Sequence[int]) -> QubitLayout:
    blocks, pos = [], 0
    for k in arities:
        blocks.append((tuple(range(pos, pos + k)), pos + k))
        pos += k + 1
    return QubitLayout(tuple(blocks))


# ---------------------------------------------------------------- input state

@dataclass(frozen=True)
class InputStateExpr:
    """Product input, one ``(x_symbols, y_symbol)`` group per function."""

    groups: tuple[tuple[str, str], ...]

    def __post_init__(self):
        for xs, y in self.groups:
            if not xs or any(c not in SYMBOLS for c in xs) or len(y) != 1 or y not in SYMBOLS:
                raise DomainError(f"bad input group ({xs},{y})")

    @property
    def symbols(self) -> str:
        return "".join(xs + y for xs, y in self.groups)

    def __str__(self):
        return "".join(f"({xs},{y})" for xs, y in self.groups)


_GROUP = re.compile(r"\(([^()]*)\)")


def parse_input_expr(text: str) -> InputStateExpr:
    """Parse ``(XS,Y)(XS,Y)...`` with symbols from ``{0,1,+,-}``."""
    s = re.sub(r"\s+", "", text).replace("−", "-")
    groups, pos = [], 0
    for n, m in enumerate(_GROUP.finditer(s), start=1):
        if m.start() != pos:
            raise SpecParseError(f"unexpected text {s[pos:m.start()]!r} before group {n}")
        pos = m.end()
        parts = m.group(1).split(",")
        if len(parts) != 2:
            raise SpecParseError(f"group {n} ({m.group(1)}) must be 'XS,Y'")
        xs, y = parts
        if not xs or any(c not in SYMBOLS for c in xs):
            raise SpecParseError(f"group {n}: bad input symbols {xs!r}")
        if len(y) != 1 or y not in SYMBOLS:
            raise SpecParseError(f"group {n}: ancilla must be one of 0,1,+,- (got {y!r})")
        groups.append((xs, y))
    if pos != len(s) or not groups:
        raise SpecParseError(f"malformed input expression {text!r}")
    return InputStateExpr(tuple(groups))


def check_input(expr: InputStateExpr, layout: QubitLayout) -> None:
    if len(expr.groups) != len(layout.blocks):
        raise SpecParseError(
            f"input has {len(expr.groups)} groups but the network has {len(layout.blocks)} functions")
    for n, ((xs, _), k) in enumerate(zip(expr.groups, layout.arities), start=1):
        if len(xs) != k:
            raise SpecParseError(f"group {n} ({xs}) has {len(xs)} inputs, function {n} takes {k}")


def parse_input(text: str, layout: QubitLayout) -> "PureState":
    expr = parse_input_expr(text)
    check_input(expr, layout)
    return product_state(expr.symbols)


# ----------------------------------------------------------------- pure state

class PureState:
    """A ``q``-qubit state vector.

    Stored densely up to ``DENSE_LIMIT`` qubits and as a sorted support
    (``indices``, ``values``) above that.
    """

    __slots__ = ("qubit_count", "_dense", "_indices", "_values")

    def __init__(self, qubit_count: int, amplitudes=None, *, indices=None, values=None):
        self.qubit_count = int(qubit_count)
        if amplitudes is not None:
            a = np.asarray(amplitudes, dtype=complex)
            if a.shape != (1 << self.qubit_count,):
                raise DomainError(f"expected {1 << self.qubit_count} amplitudes, got {a.shape}")
            self._dense, self._indices, self._values = a, None, None
        else:
            idx = np.asarray(indices, dtype=np.int64)
            val = np.asarray(values, dtype=complex)
            order = np.argsort(idx, kind="stable")
            self._dense, self._indices, self._values = None, idx[order], val[order]

    @property
    def is_sparse(self) -> bool:
        return self._dense is None

    @property
    def amplitudes(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense
        if self.qubit_count > MAX_QUBITS:
            raise ResourceError(f"cannot densify {self.qubit_count} qubits")
        a = np.zeros(1 << self.qubit_count, dtype=complex)
        a[self._indices] = self._values
        return a

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted nonzero basis indices and their amplitudes."""
        if self._dense is None:
            return self._indices, self._values
        idx = np.flatnonzero(self._dense)
        return idx, self._dense[idx]

    def norm2(self) -> float:
        _, v = self.support()
        return float(np.vdot(v, v).real)

    def permuted(self, index_map: np.ndarray) -> "PureState":
        """State with amplitude of ``b`` moved to ``index_map[b]``."""
        if self._dense is not None:
            new = np.empty_like(self._dense)
            new[index_map] = self._dense
            return PureState(self.qubit_count, new)
        return PureState(self.qubit_count, indices=index_map[self._indices], values=self._values)

    def bit_flipped(self, qubit: int) -> "PureState":
        if not 0 <= qubit < self.qubit_count:
            raise DomainError(f"qubit {qubit} out of range for {self.qubit_count} qubits")
        mask = 1 << (self.qubit_count - 1 - qubit)
        if self._dense is not None:
            return self.permuted(np.arange(len(self._dense)) ^ mask)
        return PureState(self.qubit_count, indices=self._indices ^ mask, values=self._values)

    def allclose(self, other: "PureState", tol: float = 1e-10) -> bool:
        if other.qubit_count != self.qubit_count:
            return False
        if self._dense is not None and other._dense is not None:
            return bool(np.all(np.abs(self._dense - other._dense) <= tol))
        ia, va = self.support()
        ib, vb = other.support()
        keys = np.union1d(ia, ib)
        a = np.zeros(len(keys), complex)
        b = np.zeros(len(keys), complex)
        a[np.searchsorted(keys, ia)] = va
        b[np.searchsorted(keys, ib)] = vb
        return bool(np.all(np.abs(a - b) <= tol))

    def density(self) -> np.ndarray:
        a = self.amplitudes
        return np.outer(a, a.conj())

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"PureState(q={self.qubit_count}, {kind})"


def product_state(symbols: str, sparse: bool | None = None) -> PureState:
    """Tensor product of ``|0>, |1>, |+>, |->`` in the given order."""
    q = len(symbols)
    if q > MAX_QUBITS:
        raise ResourceError(f"{q} qubits exceeds the limit of {MAX_QUBITS}")
    if sparse is None:
        sparse = q > DENSE_LIMIT
    if not sparse:
        v = np.ones(1)
        for c in symbols:
            v = np.kron(v, _KETS[c])
        return PureState(q, v)
    idx = np.zeros(1, dtype=np.int64)
    val = np.ones(1)
    for c in symbols:
        ket = _KETS[c]
        parts_i, parts_v = [], []
        for bit in (0, 1):
            if ket[bit] != 0:
                parts_i.append(idx * 2 + bit)
                parts_v.append(val * ket[bit])
        idx, val = np.concatenate(parts_i), np.concatenate(parts_v)
    return PureState(q, indices=idx, values=val)


# -------------------------------------------------------------- network spec

@dataclass(frozen=True)
class NetworkSpec:
    functions: tuple[TruthTable, ...]
    wiring: tuple[int, ...]
    input: InputStateExpr
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "wiring", tuple(int(w) for w in self.wiring))
        if isinstance(self.input, str):
            object.__setattr__(self, "input", parse_input_expr(self.input))
        if not self.functions:
            raise DomainError("a network needs at least one function")
        lay = self.layout
        if sorted(self.wiring) != list(range(lay.qubit_count)):
            raise DomainError(
                f"wiring {list(self.wiring)} is not a permutation of 0..{lay.qubit_count - 1}")
        check_input(self.input, lay)

    @property
    def layout(self) -> QubitLayout:
        return layout_for_arities([f.arity for f in self.functions])

    @property
    def qubit_count(self) -> int:
        return sum(f.arity + 1 for f in self.functions)

    def initial_state(self) -> PureState:
        return product_state(self.input.symbols)

    def describe(self) -> str:
        funcs = ", ".join(format_function(f) for f in self.functions)
        return f"functions={funcs}; wiring={list(self.wiring)}; input={self.input}"


def layout(spec: NetworkSpec) -> QubitLayout:
    return spec.layout


@dataclass(frozen=True, eq=False)
class StepOperator:
    """One network step ``W = P . U_F`` as a basis-index permutation."""

    qubit_count: int
    index_map: np.ndarray

    def apply(self, state: PureState) -> PureState:
        if state.qubit_count != self.qubit_count:
            raise DomainError(
                f"state has {state.qubit_count} qubits, operator acts on {self.qubit_count}")
        return state.permuted(self.index_map)

    def inverse(self) -> "StepOperator":
        inv = np.empty_like(self.index_map)
        inv[self.index_map] = np.arange(len(self.index_map))
        inv.setflags(write=False)
        return StepOperator(self.qubit_count, inv)

    def __eq__(self, other):
        return (isinstance(other, StepOperator) and self.qubit_count == other.qubit_count
                and np.array_equal(self.index_map, other.index_map))

    __hash__ = None


def build_wiring_permutation(wiring: Sequence[int], q: int | QubitLayout | None = None) -> np.ndarray:
    """Basis-index relabeling for a wiring: ``new_bit[j] = old_bit[wiring[j]]``."""
    wiring = [int(w) for w in wiring]
    if isinstance(q, QubitLayout):
        q = q.qubit_count
    if q is None:
        q = len(wiring)
    if len(wiring) != q or sorted(wiring) != list(range(q)):
        raise DomainError(f"wiring {wiring} is not a permutation of 0..{q - 1}")
    if q > MAX_QUBITS:
        raise ResourceError(f"{q} qubits exceeds the limit of {MAX_QUBITS}")
    basis = np.arange(1 << q, dtype=np.int64)
    out = np.zeros_like(basis)
    for j, src in enumerate(wiring):
        out |= ((basis >> (q - 1 - src)) & 1) << (q - 1 - j)
    return out


def build_step_operator(spec: NetworkSpec) -> StepOperator:
    if spec.qubit_count > MAX_QUBITS:
        raise ResourceError(f"{spec.qubit_count} qubits exceeds the limit of {MAX_QUBITS}")
    oracle = tensor_network_oracle([build_bit_oracle(f) for f in spec.functions])
    wire = build_wiring_permutation(spec.wiring, spec.qubit_count)
    index_map = wire[oracle]
    index_map.setflags(write=False)
    return StepOperator(spec.qubit_count, index_map)


def evolve(state: PureState, W: StepOperator, steps: int | None) -> Iterator[PureState]:
    """Yield the states at ``t = 0, 1, ..., steps`` (forever when ``steps`` is None)."""
    if state.qubit_count != W.qubit_count:
        raise DomainError(f"state has {state.qubit_count} qubits, operator acts on {W.qubit_count}")
    if steps is not None and steps < 0:
        raise DomainError("steps must be non-negative")
    t = 0
    while True:
        yield state
        if steps is not None and t >= steps:
            return
        state = state.permuted(W.index_map)
        t += 1


def evolve_density(rho: np.ndarray, W: StepOperator) -> np.ndarray:
    """``P U_F rho U_F^dag P^dag`` on a full density matrix (small q only)."""
    if W.qubit_count > DENSITY_LIMIT:
        raise ResourceError(f"density backend limited to {DENSITY_LIMIT} qubits")
    out = np.empty_like(rho)
    out[np.ix_(W.index_map, W.index_map)] = rho
    return out


def count_wirings(spec_or_q: NetworkSpec | int) -> int:
    q = spec_or_q if isinstance(spec_or_q, int) else spec_or_q.qubit_count
    if q < 0:
        raise DomainError("qubit count must be non-negative")
    return math.factorial(q)


def random_network(seed: int, n: int, arities: int | Sequence[int] = 2) -> NetworkSpec:
    """Seeded random network: catalog functions, Fisher-Yates wiring, random input symbols."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if isinstance(arities, int):
        arities = [arities] * n
    arities = list(arities)
    if len(arities) != n or any(k not in (1, 2) for k in arities):
        raise DomainError(f"need {n} arities from {{1, 2}}, got {arities}")
    rng = random.Random(seed)
    by_arity = {k: [tt for (_, a), tt in sorted(CATALOG.items(), key=lambda kv: kv[1].outputs)
                    if a == k] for k in (1, 2)}
    functions = [rng.choice(by_arity[k]) for k in arities]
    q = sum(k + 1 for k in arities)
    wiring = list(range(q))
    rng.shuffle(wiring)
    groups = tuple(("".join(rng.choice(SYMBOLS) for _ in range(k)), rng.choice(SYMBOLS))
                   for k in arities)
    return NetworkSpec(tuple(functions), tuple(wiring), InputStateExpr(groups), seed=seed)

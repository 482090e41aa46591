"""Bit and phase oracles for classical Boolean functions.

Every oracle here is a permutation (or sign pattern) of computational basis
states, so it is stored as an integer index array rather than a matrix.
Within a function block the ancilla is the least significant qubit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .boolfn import TruthTable
from .errors import DomainError


@dataclass(frozen=True, eq=False)
class BitOracle:
    """``|x, y> -> |x, y ^ f(x)>`` as a basis-index permutation."""

    qubit_count: int
    index_map: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, BitOracle) and self.qubit_count == other.qubit_count
                and np.array_equal(self.index_map, other.index_map))

    def __hash__(self):
        return hash((self.qubit_count, self.index_map.tobytes()))

    def dense(self) -> np.ndarray:
        return permutation_matrix(self.index_map)


@dataclass(frozen=True, eq=False)
class PhaseOracle:
    """``|x> -> (-1)^f(x) |x>``; kept for completeness, unused by the network engine."""

    qubit_count: int
    signs: np.ndarray

    def dense(self) -> np.ndarray:
        return np.diag(self.signs.astype(float))


def permutation_matrix(index_map: np.ndarray) -> np.ndarray:
    """Dense 0/1 matrix ``M`` with ``M[index_map[b], b] = 1``."""
    n = len(index_map)
    m = np.zeros((n, n))
    m[index_map, np.arange(n)] = 1.0
    return m


def _readonly(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def build_bit_oracle(tt: TruthTable) -> BitOracle:
    basis = np.arange(1 << (tt.arity + 1))
    f = np.asarray(tt.outputs, dtype=np.int64)
    return BitOracle(tt.arity + 1, _readonly(basis ^ f[basis >> 1]))


def build_phase_oracle(tt: TruthTable) -> PhaseOracle:
    signs = 1 - 2 * np.asarray(tt.outputs, dtype=np.int64)
    signs.setflags(write=False)
    return PhaseOracle(tt.arity, signs)


def tensor_permutations(maps: Sequence[np.ndarray], widths: Sequence[int]) -> np.ndarray:
    """Kronecker product of basis permutations; the first block is most significant."""
    if not maps:
        raise DomainError("need at least one block")
    total = sum(widths)
    basis = np.arange(1 << total, dtype=np.int64)
    out = np.zeros_like(basis)
    shift = total
    for m, w in zip(maps, widths):
        shift -= w
        local = (basis >> shift) & ((1 << w) - 1)
        out |= np.asarray(m, dtype=np.int64)[local] << shift
    return out


def tensor_network_oracle(oracles: Sequence[BitOracle]) -> np.ndarray:
    """``U_f1 (x) ... (x) U_fn`` as a permutation of ``2**q`` basis indices."""
    if not oracles:
        raise DomainError("tensor_network_oracle needs a non-empty list")
    return _readonly(tensor_permutations([o.index_map for o in oracles],
                                         [o.qubit_count for o in oracles]))

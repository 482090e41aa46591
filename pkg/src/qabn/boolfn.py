"""Classical Boolean functions as truth tables.

A function of ``k`` inputs is stored as its output column: entry ``i`` is
``f`` evaluated on the big-endian ``k``-bit encoding of ``i``, so the first
input ``x1`` is the most significant bit.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ArityError, DomainError, SpecParseError

MAX_ARITY = 4


@dataclass(frozen=True)
class TruthTable:
    arity: int
    outputs: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 1:
            raise DomainError(f"arity must be a positive integer, got {self.arity!r}")
        outputs = tuple(int(b) for b in self.outputs)
        if len(outputs) != 1 << self.arity:
            raise ArityError(
                f"arity {self.arity} needs {1 << self.arity} outputs, got {len(outputs)}")
        if any(b not in (0, 1) for b in outputs):
            raise DomainError(f"outputs must be bits, got {self.outputs!r}")
        object.__setattr__(self, "outputs", outputs)

    def __call__(self, *bits: int) -> int:
        return evaluate(self, bits)

    @property
    def label(self) -> str:
        """Name used in spec files; falls back to the ``TT:`` literal."""
        return self.name if self.name else literal(self)

    def __repr__(self):
        return f"TruthTable({self.label}, k={self.arity})"


def encode(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | (int(b) & 1)
    return index


def evaluate(tt: TruthTable, x: Sequence[int]) -> int:
    if len(x) != tt.arity:
        raise ArityError(f"{tt.label} takes {tt.arity} inputs, got {len(x)}")
    return tt.outputs[encode(x)]


def literal(tt: TruthTable) -> str:
    return f"TT:k={tt.arity}:" + "".join(str(b) for b in tt.outputs)


def enumerate_functions(k: int) -> list[TruthTable]:
    """All ``2**(2**k)`` functions of ``k`` inputs in lexicographic output order."""
    if not isinstance(k, int) or not 1 <= k <= MAX_ARITY:
        raise DomainError(f"k must be in 1..{MAX_ARITY}, got {k!r}")
    names = {tt.outputs: name for (name, arity), tt in CATALOG.items() if arity == k}
    return [TruthTable(k, outs, names.get(outs))
            for outs in itertools.product((0, 1), repeat=1 << k)]


def needs_ancilla(tt: TruthTable) -> bool:
    """True unless ``x -> f(x)`` is a bijection on the function's own bits.

    With one output bit that only happens for k=1 ID and NOT.
    """
    return not (tt.arity == 1 and sorted(tt.outputs) == [0, 1])


def _tt(k, bits, name):
    return TruthTable(k, tuple(int(c) for c in bits), name)


_NAMED = {
    1: {
        "CONST0": "00", "ID": "01", "NOT": "10", "CONST1": "11",
    },
    2: {
        "CONST0": "0000", "AND": "0001", "NIMPLY": "0010", "X1": "0011",
        "CNIMPLY": "0100", "X2": "0101", "XOR": "0110", "OR": "0111",
        "NOR": "1000", "XNOR": "1001", "NOT_X2": "1010", "CIMPLY": "1011",
        "NOT_X1": "1100", "IMPLY": "1101", "NAND": "1110", "CONST1": "1111",
    },
}

#: (NAME, arity) -> TruthTable, every function of one and two inputs.
CATALOG: dict[tuple[str, int], TruthTable] = {
    (name, k): _tt(k, bits, name) for k, table in _NAMED.items() for name, bits in table.items()
}

# Single-input readings of the two-input parity gates: the second operand is
# the ancilla itself, so XOR:1 is y ^ x (ID) and XNOR:1 is y ^ !x (NOT).
_ALIASES = {("XOR", 1): "01", ("XNOR", 1): "10"}

_LITERAL = re.compile(r"^TT:k=(\d+):([01]+)$", re.IGNORECASE)


def lookup_function(name: str, arity: int | None = None) -> TruthTable:
    """Resolve a catalog name (case-insensitive), optionally pinned to an arity."""
    key = name.strip().upper()
    if arity is not None:
        if (key, arity) in CATALOG:
            return CATALOG[key, arity]
        if (key, arity) in _ALIASES:
            return _tt(arity, _ALIASES[key, arity], key)
        raise DomainError(f"unknown function {name!r} with arity {arity}")
    hits = [k for k in (1, 2) if (key, k) in CATALOG]
    if len(hits) == 1:
        return CATALOG[key, hits[0]]
    if not hits:
        raise DomainError(f"unknown function {name!r}")
    raise DomainError(f"{name!r} exists at several arities; write it as {key}:k")


def parse_function(token: str) -> TruthTable:
    """Parse ``NAME``, ``NAME:k`` or ``TT:k=K:BITS``."""
    token = token.strip()
    m = _LITERAL.match(token)
    if m:
        k = int(m.group(1))
        if not 1 <= k <= MAX_ARITY:
            raise SpecParseError(f"literal arity out of range in {token!r}")
        try:
            return TruthTable(k, tuple(int(c) for c in m.group(2)))
        except ArityError as exc:
            raise SpecParseError(f"{token!r}: {exc}") from None
    name, sep, ar = token.partition(":")
    try:
        arity = int(ar) if sep else None
    except ValueError:
        raise SpecParseError(f"bad arity in {token!r}") from None
    try:
        return lookup_function(name, arity)
    except DomainError as exc:
        raise SpecParseError(str(exc)) from None


def format_function(tt: TruthTable) -> str:
    """Inverse of :func:`parse_function`."""
    if tt.name is None:
        return literal(tt)
    return f"{tt.name}:{tt.arity}"

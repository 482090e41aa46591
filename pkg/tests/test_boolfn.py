import itertools

import pytest

from qabn.boolfn import (CATALOG, TruthTable, enumerate_functions, evaluate, format_function,
                         lookup_function, needs_ancilla, parse_function)
from qabn.errors import ArityError, DomainError, SpecParseError

STANDARD = {
    "AND": lambda a, b: a & b,
    "OR": lambda a, b: a | b,
    "XOR": lambda a, b: a ^ b,
    "XNOR": lambda a, b: 1 - (a ^ b),
    "NOR": lambda a, b: 1 - (a | b),
    "NAND": lambda a, b: 1 - (a & b),
    "IMPLY": lambda a, b: (1 - a) | b,
    "NIMPLY": lambda a, b: a & (1 - b),
    "X1": lambda a, b: a,
    "NOT_X2": lambda a, b: 1 - b,
}


def test_eval_examples():
    assert evaluate(lookup_function("OR"), (1, 1)) == 1
    assert evaluate(lookup_function("AND"), (0, 0)) == 0
    assert evaluate(lookup_function("XNOR"), (1, 0)) == 0


def test_eval_big_endian():
    # x1 is the most significant bit of the row index
    nimply = lookup_function("NIMPLY")
    assert nimply.outputs == (0, 0, 1, 0)
    assert nimply(1, 0) == 1 and nimply(0, 1) == 0


def test_eval_arity_mismatch():
    with pytest.raises(ArityError):
        evaluate(lookup_function("AND"), (1,))


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_catalog_matches_logic(name):
    tt = lookup_function(name, 2)
    for a, b in itertools.product((0, 1), repeat=2):
        assert tt(a, b) == STANDARD[name](a, b)


def test_one_input_catalog():
    assert [lookup_function(n, 1).outputs for n in ("CONST0", "ID", "NOT", "CONST1")] == [
        (0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("k,count", [(1, 4), (2, 16), (3, 256)])
def test_enumerate_counts_and_distinct(k, count):
    tables = enumerate_functions(k)
    assert len(tables) == count == 2 ** (2 ** k)
    outs = [t.outputs for t in tables]
    assert len(set(outs)) == count
    assert set(outs) == set(itertools.product((0, 1), repeat=2 ** k))
    assert outs == sorted(outs)


@pytest.mark.parametrize("k", [0, 5, -1])
def test_enumerate_range(k):
    with pytest.raises(DomainError):
        enumerate_functions(k)


def test_catalog_names_unique_per_table():
    for k in (1, 2):
        entries = [tt.outputs for (n, a), tt in CATALOG.items() if a == k]
        assert len(entries) == len(set(entries)) == 2 ** (2 ** k)


def test_case_insensitive_lookup():
    assert lookup_function("nand") == lookup_function("NAND")
    assert parse_function("xnor:2").outputs == (1, 0, 0, 1)


def brute_force_injective(tt):
    # the map (x) -> f(x) on the function's own k bits, viewed as k bits -> k bits
    # with the output replacing the last bit: needs 2^k distinct images
    images = set()
    for x in itertools.product((0, 1), repeat=tt.arity):
        images.add(x[:-1] + (tt(*x),))
    return len(images) == 2 ** tt.arity


def test_needs_ancilla_examples():
    assert needs_ancilla(lookup_function("OR")) is True
    assert needs_ancilla(lookup_function("ID")) is False
    assert needs_ancilla(lookup_function("NAND")) is True
    assert not brute_force_injective(lookup_function("NAND"))


@pytest.mark.parametrize("k", [1, 2])
def test_no_ancilla_implies_injective(k):
    for tt in enumerate_functions(k):
        if not needs_ancilla(tt):
            assert brute_force_injective(tt)
        else:
            # one output bit from k >= 2 inputs can never be injective
            assert k >= 2 or not brute_force_injective(tt)


def test_literal_and_aliases():
    assert parse_function("TT:k=2:0001") == lookup_function("AND")
    assert parse_function("XNOR:1").outputs == (1, 0)
    assert parse_function("XOR:1").outputs == (0, 1)
    assert format_function(parse_function("XNOR:1")) == "XNOR:1"
    assert format_function(TruthTable(3, (0,) * 7 + (1,))) == "TT:k=3:00000001"


@pytest.mark.parametrize("bad", ["FOO", "CONST0", "TT:k=2:001", "AND:x", "TT:k=9:01"])
def test_parse_errors(bad):
    with pytest.raises(SpecParseError):
        parse_function(bad)


def test_truth_table_validation():
    with pytest.raises(ArityError):
        TruthTable(2, (0, 1))
    with pytest.raises(DomainError):
        TruthTable(1, (0, 2))

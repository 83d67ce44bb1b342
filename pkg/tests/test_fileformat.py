"""Parsing, serialization, and the round-trip guarantee."""

import pytest

from efalg.catalog import named_catalog
from efalg.core import AxiomViolationError, FiniteEffectAlgebra
from efalg.fileformat import (
    ParseError,
    parse,
    parse_generalized,
    parse_raw,
    serialize,
    serialize_generalized,
)
from efalg.structure import meager_algebra

MINIMAL = """\
efa 1
order 2
zero 0
one 1
sum 0 0 0
sum 0 1 1
"""


def test_minimal_two_chain():
    alg = parse(MINIMAL)
    assert alg.order == 2 and alg.zero == 0 and alg.one == 1
    assert serialize(alg) == MINIMAL


def test_serialize_parse_fixpoint_on_catalog(catalog):
    for entry in catalog:
        text = serialize(entry.algebra)
        again = parse(text)
        assert again == entry.algebra
        assert serialize(again) == text


def test_generalized_round_trip(catalog):
    for entry in catalog:
        mea, _ = meager_algebra(entry.algebra)
        text = serialize_generalized(mea)
        assert parse_generalized(text) == mea


def test_comments_and_blank_lines():
    text = "# header comment\n\nefa 1\norder 2\nzero 0  # trailing\none 1\nsum 0 0 0\nsum 0 1 1\n"
    assert parse(text).order == 2


def test_names_round_trip():
    text = MINIMAL + "name 0 bottom\nname 1 top element\n"
    alg = parse(text)
    assert alg.names == ("bottom", "top element")
    assert parse(serialize(alg)) == alg


def test_symmetric_closure_on_read():
    text = "efa 1\norder 3\nzero 0\none 2\nsum 0 0 0\nsum 1 0 1\nsum 2 0 2\nsum 1 1 2\n"
    alg = parse(text)
    assert alg.sum(0, 1) == 1


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "empty"),
        ("gefa 1\norder 2\nzero 0\n", "expected header"),
        ("efa 1\nzero 0\n", "'order' must come before"),
        ("efa 1\norder 2\nzero 0\nzero 0\n", "duplicate 'zero'"),
        ("efa 1\norder 2\nzero 0\none 1\nsum 1 1\n", "exactly three"),
        ("efa 1\norder 2\nzero 0\none 1\nsum 0 0 5\n", "out of range"),
        ("efa 1\norder 2\nzero 0\none 1\nfrob 1\n", "unknown directive"),
        ("efa 1\norder 2\nzero 0\nsum 0 0 0\n", "missing 'one'"),
        ("efa 1\norder 0\nzero 0\none 1\n", "order must be positive"),
    ],
)
def test_parse_errors_carry_line_and_reason(text, fragment):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert fragment in str(err.value)


def test_duplicate_sum_rejected():
    base = "efa 1\norder 4\nzero 0\none 3\n"
    with pytest.raises(ParseError) as err:
        parse(base + "sum 1 1 2\nsum 1 1 3\n")
    assert "duplicate definition" in str(err.value)
    assert err.value.line_no == 6
    # the mirrored pair counts as the same definition
    with pytest.raises(ParseError):
        parse(base + "sum 1 2 3\nsum 2 1 3\n")


def test_axiom_failure_is_not_a_parse_error():
    text = "efa 1\norder 3\nzero 0\none 2\nsum 0 0 0\nsum 0 1 1\nsum 0 2 2\n"
    table, zero, one, _ = parse_raw(text)  # parse fine
    with pytest.raises(AxiomViolationError):
        FiniteEffectAlgebra(table, zero, one)

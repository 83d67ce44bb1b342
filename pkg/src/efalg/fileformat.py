"""Line-oriented text format for algebra files.

Effect algebras:

    efa 1
    order 3
    zero 0
    one 2
    name 0 bottom        (optional, one per element at most)
    sum 0 0 0
    sum 0 1 1
    sum 0 2 2
    sum 1 1 2

Generalized effect algebras use the magic line ``gefa 1`` and carry no
``one`` header. ``#`` starts a comment. A ``sum I J K`` line states that
I + J = K; absent pairs are undefined. The serializer emits sums only for
I <= J in sorted order, so output is canonical and diff friendly; the
parser applies the commutative closure and rejects duplicate definitions
for a pair, contradictory or not.
"""

from __future__ import annotations

from .core import (
    FiniteEffectAlgebra,
    FiniteGeneralizedEffectAlgebra,
    PartialOpTable,
    UNDEFINED,
)

__all__ = ["ParseError", "parse", "parse_raw", "serialize", "parse_generalized", "serialize_generalized"]


class ParseError(ValueError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


def _meaningful_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse_common(text: str, magic: str, with_one: bool):
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError(0, "empty file")
    no, first = lines[0]
    if first != f"{magic} 1":
        raise ParseError(no, f"expected header '{magic} 1'")

    order: int | None = None
    zero: int | None = None
    one: int | None = None
    names: dict[int, str] = {}
    sums: dict[tuple[int, int], int] = {}

    def need_order(no: int) -> int:
        if order is None:
            raise ParseError(no, "'order' must come before this line")
        return order

    for no, line in lines[1:]:
        fields = line.split()
        kind = fields[0]
        if kind == "order":
            if order is not None:
                raise ParseError(no, "duplicate 'order'")
            order = _int_field(no, fields, 1, "order")
            if order < 1:
                raise ParseError(no, "order must be positive")
        elif kind == "zero":
            if zero is not None:
                raise ParseError(no, "duplicate 'zero'")
            zero = _element_field(no, fields, 1, need_order(no))
        elif kind == "one":
            if not with_one:
                raise ParseError(no, "'one' not allowed here")
            if one is not None:
                raise ParseError(no, "duplicate 'one'")
            one = _element_field(no, fields, 1, need_order(no))
        elif kind == "name":
            if len(fields) < 3:
                raise ParseError(no, "'name' needs an element and a label")
            i = _element_field(no, fields, 1, need_order(no))
            if i in names:
                raise ParseError(no, f"duplicate name for element {i}")
            names[i] = line.split(None, 2)[2]
        elif kind == "sum":
            n = need_order(no)
            if len(fields) != 4:
                raise ParseError(no, "'sum' needs exactly three elements")
            i = _element_field(no, fields, 1, n)
            j = _element_field(no, fields, 2, n)
            k = _element_field(no, fields, 3, n)
            key = (min(i, j), max(i, j))
            if key in sums:
                raise ParseError(no, f"duplicate definition for pair {key}")
            sums[key] = k
        else:
            raise ParseError(no, f"unknown directive {kind!r}")

    last = lines[-1][0]
    if order is None:
        raise ParseError(last, "missing 'order'")
    if zero is None:
        raise ParseError(last, "missing 'zero'")
    if with_one and one is None:
        raise ParseError(last, "missing 'one'")

    table = PartialOpTable.from_pairs(order, sums)
    name_tuple = None
    if names:
        name_tuple = tuple(names.get(i, str(i)) for i in range(order))
    return table, zero, one, name_tuple


def _int_field(no: int, fields: list[str], idx: int, what: str) -> int:
    if len(fields) <= idx:
        raise ParseError(no, f"missing value for {what}")
    try:
        return int(fields[idx])
    except ValueError:
        raise ParseError(no, f"{what} is not an integer: {fields[idx]!r}") from None


def _element_field(no: int, fields: list[str], idx: int, order: int) -> int:
    v = _int_field(no, fields, idx, "element")
    if not (0 <= v < order):
        raise ParseError(no, f"element {v} out of range for order {order}")
    return v


def parse_raw(text: str) -> tuple[PartialOpTable, int, int, tuple[str, ...] | None]:
    """Read an effect algebra file without running the axiom check."""
    table, zero, one, names = _parse_common(text, "efa", with_one=True)
    assert one is not None
    return table, zero, one, names


def parse(text: str) -> FiniteEffectAlgebra:
    """Read and validate an effect algebra file."""
    table, zero, one, names = parse_raw(text)
    return FiniteEffectAlgebra(table, zero, one, names)


def parse_generalized(text: str) -> FiniteGeneralizedEffectAlgebra:
    table, zero, _, names = _parse_common(text, "gefa", with_one=False)
    return FiniteGeneralizedEffectAlgebra(table, zero, names)


def _serialize_common(magic: str, table: PartialOpTable, zero: int, one: int | None, names) -> str:
    lines = [f"{magic} 1", f"order {table.order}", f"zero {zero}"]
    if one is not None:
        lines.append(f"one {one}")
    if names:
        for i, label in enumerate(names):
            lines.append(f"name {i} {label}")
    for i in range(table.order):
        for j in range(i, table.order):
            v = table.entries[i][j]
            if v != UNDEFINED:
                lines.append(f"sum {i} {j} {v}")
    return "\n".join(lines) + "\n"


def serialize(alg: FiniteEffectAlgebra) -> str:
    """Canonical text form: fixed header order, sums sorted with i <= j only."""
    return _serialize_common("efa", alg.table, alg.zero, alg.one, alg.names)


def serialize_generalized(alg: FiniteGeneralizedEffectAlgebra) -> str:
    return _serialize_common("gefa", alg.table, alg.zero, None, alg.names)

"""Finite effect algebras and generalized effect algebras over explicit sum tables.

An algebra lives on elements 0..order-1. The partial operation is a square
lookup table whose cells hold either an element id or UNDEFINED. Validation
is eager: constructing an algebra runs the full axiom check and refuses bad
tables, so downstream code never re-checks axioms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

UNDEFINED = -1

__all__ = [
    "UNDEFINED",
    "MalformedTableError",
    "AxiomViolationError",
    "Violation",
    "Verdict",
    "PartialOpTable",
    "verify_effect_algebra",
    "verify_generalized",
    "FiniteEffectAlgebra",
    "FiniteGeneralizedEffectAlgebra",
]


class MalformedTableError(ValueError):
    """Structurally broken input: wrong shape or out-of-range cells."""


class AxiomViolationError(ValueError):
    """Construction was attempted from a table that fails the algebra axioms."""

    def __init__(self, verdict: "Verdict"):
        self.verdict = verdict
        msg = "; ".join(v.describe() for v in verdict.violations) or "invalid table"
        super().__init__(msg)


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the lexicographically least witness found."""

    axiom: str
    witness: tuple[int, ...]
    detail: str = ""

    def describe(self) -> str:
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.axiom} at {self.witness}{extra}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[Violation, ...] = ()

    @property
    def axioms(self) -> frozenset[str]:
        return frozenset(v.axiom for v in self.violations)


@dataclass(frozen=True)
class PartialOpTable:
    """Square table of the partial sum; cell value UNDEFINED marks a missing sum.

    The table is fully materialized (no sparse rows) and immutable. Squareness
    and cell range are enforced here; everything semantic (symmetry included)
    is the verifier's job, so that broken tables can still be diagnosed.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise MalformedTableError("empty table")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise MalformedTableError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if v != UNDEFINED and not (0 <= v < n):
                    raise MalformedTableError(f"cell ({i},{j}) holds {v}, out of range")

    @property
    def order(self) -> int:
        return len(self.entries)

    def get(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def defined(self, i: int, j: int) -> bool:
        return self.entries[i][j] != UNDEFINED

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "PartialOpTable":
        return PartialOpTable(tuple(tuple(r) for r in rows))

    @staticmethod
    def from_pairs(order: int, pairs: Mapping[tuple[int, int], int]) -> "PartialOpTable":
        """Build a symmetric table from {(i, j): k} given for unordered pairs."""
        rows = [[UNDEFINED] * order for _ in range(order)]
        for (i, j), k in pairs.items():
            if not (0 <= i < order and 0 <= j < order):
                raise MalformedTableError(f"pair ({i},{j}) out of range for order {order}")
            for a, b in ((i, j), (j, i)):
                if rows[a][b] != UNDEFINED and rows[a][b] != k:
                    raise MalformedTableError(f"conflicting values for cell ({a},{b})")
                rows[a][b] = k
        return PartialOpTable.from_rows(rows)


def _check_constants(table: PartialOpTable, *constants: int) -> None:
    for c in constants:
        if not (0 <= c < table.order):
            raise MalformedTableError(f"distinguished element {c} out of range")


def verify_effect_algebra(table: PartialOpTable, zero: int, one: int) -> Verdict:
    """Check the four effect-algebra axioms plus distinctness of 0 and 1.

    Returns ok, or one violation per failed axiom with the least witness in
    lexicographic scan order. Malformed tables raise MalformedTableError
    instead; shape problems are input errors, not axiom violations.
    """
    _check_constants(table, zero, one)
    t = table.entries
    n = table.order
    violations: list[Violation] = []

    if zero == one:
        violations.append(Violation("E0", (zero,), "zero and one coincide"))

    # (Ei) commutativity, read off the stored table.
    for x in range(n):
        hit = next((y for y in range(x + 1, n) if t[x][y] != t[y][x]), None)
        if hit is not None:
            violations.append(Violation("Ei", (x, hit), "asymmetric cells"))
            break

    # (Eii) associativity: if one side is defined, both are and they agree.
    violations.extend(_associativity_violation(t, n, "Eii"))

    # (Eiii) every x has exactly one y with x + y = one.
    for x in range(n):
        sups = [y for y in range(n) if t[x][y] == one]
        if not sups:
            violations.append(Violation("Eiii", (x,), "no orthosupplement"))
            break
        if len(sups) > 1:
            violations.append(Violation("Eiii", (x, sups[0], sups[1]), "orthosupplement not unique"))
            break

    # (Eiv) one + x defined forces x = zero.
    for x in range(n):
        if x != zero and t[one][x] != UNDEFINED:
            violations.append(Violation("Eiv", (x,), "sum with one defined"))
            break

    return Verdict(not violations, tuple(violations))


def verify_generalized(table: PartialOpTable, zero: int) -> Verdict:
    """Check the five generalized-effect-algebra axioms over the stored table."""
    _check_constants(table, zero)
    t = table.entries
    n = table.order
    violations: list[Violation] = []

    for x in range(n):
        hit = next((y for y in range(x + 1, n) if t[x][y] != t[y][x]), None)
        if hit is not None:
            violations.append(Violation("GE1", (x, hit), "asymmetric cells"))
            break

    violations.extend(_associativity_violation(t, n, "GE2"))

    # (GE3) cancellation: a row may not repeat a defined value.
    done = False
    for x in range(n):
        seen: dict[int, int] = {}
        for y in range(n):
            v = t[x][y]
            if v == UNDEFINED:
                continue
            if v in seen:
                violations.append(Violation("GE3", (x, seen[v], y), "cancellation fails"))
                done = True
                break
            seen[v] = y
        if done:
            break

    # (GE4) x + y = 0 only for x = y = 0.
    done = False
    for x in range(n):
        for y in range(n):
            if t[x][y] == zero and (x != zero or y != zero):
                violations.append(Violation("GE4", (x, y), "nonzero elements sum to zero"))
                done = True
                break
        if done:
            break

    # (GE5) zero is neutral.
    for x in range(n):
        if t[x][zero] != x:
            violations.append(Violation("GE5", (x,), "zero not neutral"))
            break

    return Verdict(not violations, tuple(violations))


def _associativity_violation(t, n: int, axiom: str) -> list[Violation]:
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                yz = t[y][z]
                left = t[xy][z] if xy != UNDEFINED else UNDEFINED
                right = t[x][yz] if yz != UNDEFINED else UNDEFINED
                if left != right:
                    return [Violation(axiom, (x, y, z), "associativity fails")]
    return []


class _SumAlgebra:
    """Order-theoretic machinery shared by effect and generalized effect algebras.

    Everything is derived from the validated table; heavier derived data is
    memoized per algebra value (instances are immutable), so the methods stay
    cheap inside exhaustive sweeps.
    """

    table: PartialOpTable
    zero: int

    @property
    def order(self) -> int:
        return self.table.order

    def elements(self) -> range:
        return range(self.table.order)

    def sum(self, x: int, y: int) -> int | None:
        v = self.table.entries[x][y]
        return None if v == UNDEFINED else v

    def defined(self, x: int, y: int) -> bool:
        return self.table.entries[x][y] != UNDEFINED

    def leq(self, x: int, y: int) -> bool:
        return (_below_masks(self)[y] >> x) & 1 == 1

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def ominus(self, x: int, y: int) -> int | None:
        """x minus y: the unique z with y + z = x, or None when y is not below x."""
        return _ominus_matrix(self)[y][x]

    def below_mask(self, x: int) -> int:
        """Bitmask of elements z with z <= x."""
        return _below_masks(self)[x]

    def above_mask(self, x: int) -> int:
        return _above_masks(self)[x]

    def down_set(self, x: int) -> tuple[int, ...]:
        return _mask_elements(self.below_mask(x))

    def orthogonal_sum(self, family: Iterable[int]) -> int | None:
        """Left fold of the partial sum over a finite multiset; empty sums to zero.

        Validated associativity and commutativity make the result independent
        of the traversal order, so any iteration order of the multiset works.
        """
        acc = self.zero
        for x in family:
            nxt = self.sum(acc, x)
            if nxt is None:
                return None
            acc = nxt
        return acc

    # Meets and joins in the derived partial order. A missing bound is a
    # first-class None, never an error.
    def meet(self, x: int, y: int) -> int | None:
        lower = _below_masks(self)[x] & _below_masks(self)[y]
        return self._greatest(lower)

    def join(self, x: int, y: int) -> int | None:
        upper = _above_masks(self)[x] & _above_masks(self)[y]
        return self._least(upper)

    def meet_set(self, xs: Iterable[int]) -> int | None:
        mask = (1 << self.order) - 1
        for x in xs:
            mask &= _below_masks(self)[x]
        return self._greatest(mask)

    def join_set(self, xs: Iterable[int]) -> int | None:
        mask = (1 << self.order) - 1
        for x in xs:
            mask &= _above_masks(self)[x]
        return self._least(mask)

    def _greatest(self, mask: int) -> int | None:
        below = _below_masks(self)
        for m in _mask_elements(mask):
            if mask & ~below[m] == 0:
                return m
        return None

    def _least(self, mask: int) -> int | None:
        above = _above_masks(self)
        for m in _mask_elements(mask):
            if mask & ~above[m] == 0:
                return m
        return None


def _mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _below_masks(alg: _SumAlgebra) -> tuple[int, ...]:
    n = alg.order
    masks = [0] * n
    t = alg.table.entries
    for x in range(n):
        for y in range(n):
            v = t[x][y]
            if v != UNDEFINED:
                masks[v] |= 1 << x
    return tuple(masks)


@lru_cache(maxsize=None)
def _above_masks(alg: _SumAlgebra) -> tuple[int, ...]:
    n = alg.order
    below = _below_masks(alg)
    masks = [0] * n
    for x in range(n):
        for y in range(n):
            if (below[y] >> x) & 1:
                masks[x] |= 1 << y
    return tuple(masks)


@lru_cache(maxsize=None)
def _ominus_matrix(alg: _SumAlgebra) -> tuple[tuple[int | None, ...], ...]:
    n = alg.order
    t = alg.table.entries
    rows: list[list[int | None]] = [[None] * n for _ in range(n)]
    for y in range(n):
        for z in range(n):
            v = t[y][z]
            if v != UNDEFINED:
                rows[y][v] = z
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class FiniteEffectAlgebra(_SumAlgebra):
    """A validated finite effect algebra.

    Instances are immutable; all operations are pure functions of the value,
    so sharing across threads or workers is safe.
    """

    table: PartialOpTable
    zero: int
    one: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.table.order:
                raise MalformedTableError("names must cover every element")
        verdict = verify_effect_algebra(self.table, self.zero, self.one)
        if not verdict.ok:
            raise AxiomViolationError(verdict)

    def orthosupplement(self, x: int) -> int:
        """The unique y with x + y = one; involutive."""
        return _sup_vector(self)[x]

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)


@lru_cache(maxsize=None)
def _sup_vector(alg: FiniteEffectAlgebra) -> tuple[int, ...]:
    t = alg.table.entries
    n = alg.order
    return tuple(next(y for y in range(n) if t[x][y] == alg.one) for x in range(n))


@dataclass(frozen=True)
class FiniteGeneralizedEffectAlgebra(_SumAlgebra):
    """A validated finite generalized effect algebra (zero, no unit)."""

    table: PartialOpTable
    zero: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.table.order:
                raise MalformedTableError("names must cover every element")
        verdict = verify_generalized(self.table, self.zero)
        if not verdict.ok:
            raise AxiomViolationError(verdict)

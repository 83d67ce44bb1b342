"""Named example algebras, random sampling, and exhaustive enumeration.

The enumerator completes partial sum tables cell by cell with constraint
propagation (forced zero row, forbidden unit row, cancellation within rows,
orthosupplement uniqueness, incremental associativity) and de-duplicates
leaves by canonical form. Pruning is a speed device only: every surviving
leaf is re-validated by the full axiom check, and completeness is guarded
by an independent generate-and-filter oracle in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .core import (
    UNDEFINED,
    AxiomViolationError,
    FiniteEffectAlgebra,
    PartialOpTable,
    verify_effect_algebra,
)
from .iso import canonical_algebra, canonical_form

__all__ = [
    "GENERATOR_VERSION",
    "CatalogEntry",
    "EnumerationBoundError",
    "make_chain",
    "make_boolean",
    "horizontal_sum",
    "direct_product",
    "named_catalog",
    "enumerate_all",
    "all_up_to",
    "random_algebra",
]

GENERATOR_VERSION = 1

DEFAULT_BOUND = 6
HARD_BOUND = 7

_UNDECIDED = -2


class EnumerationBoundError(ValueError):
    def __init__(self, max_order: int, bound: int):
        cells = max(0, (max_order - 2) * (max_order - 1) // 2)
        estimate = max_order ** cells
        super().__init__(
            f"max_order {max_order} exceeds the configured bound {bound}; "
            f"a raw sweep at order {max_order} would touch on the order of "
            f"{estimate} partial tables"
        )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: FiniteEffectAlgebra
    expected: Mapping | None = None


def make_chain(n: int) -> FiniteEffectAlgebra:
    """The (n+1)-element chain with i + j defined exactly when i + j <= n."""
    if n < 1:
        raise ValueError("chain needs n >= 1; n = 0 collapses zero and one")
    pairs = {
        (i, j): i + j for i in range(n + 1) for j in range(i, n + 1) if i + j <= n
    }
    return FiniteEffectAlgebra(PartialOpTable.from_pairs(n + 1, pairs), 0, n)


def make_boolean(k: int) -> FiniteEffectAlgebra:
    """Power-set algebra on k atoms; elements are bitmasks, sums disjoint unions."""
    if not (1 <= k <= 6):
        raise ValueError("boolean algebra supported for 1 <= k <= 6 atoms")
    n = 1 << k
    pairs = {
        (i, j): i | j for i in range(n) for j in range(i, n) if i & j == 0
    }
    return FiniteEffectAlgebra(PartialOpTable.from_pairs(n, pairs), 0, n - 1)


def horizontal_sum(algebras: Sequence[FiniteEffectAlgebra]) -> FiniteEffectAlgebra:
    """Glue the summands at a shared zero and a shared unit.

    Sums inside a summand are inherited; sums across summands are undefined
    except through zero. Two-element summands contribute no interior and are
    absorbed, so a sum of 2-chains is the 2-chain.
    """
    if not algebras:
        raise ValueError("horizontal sum needs at least one summand")
    interiors: list[tuple[FiniteEffectAlgebra, dict[int, int]]] = []
    next_id = 1
    for alg in algebras:
        mapping = {alg.zero: 0}
        for x in alg.elements():
            if x not in (alg.zero, alg.one):
                mapping[x] = next_id
                next_id += 1
        interiors.append((alg, mapping))
    order = next_id + 1
    one = order - 1
    pairs: dict[tuple[int, int], int] = {(0, 0): 0, (0, one): one}
    for alg, mapping in interiors:
        mapping[alg.one] = one
        for x in alg.elements():
            for y in alg.elements():
                v = alg.sum(x, y)
                if v is not None:
                    pairs[(mapping[x], mapping[y])] = mapping[v]
    return FiniteEffectAlgebra(PartialOpTable.from_pairs(order, pairs), 0, one)


def direct_product(a: FiniteEffectAlgebra, b: FiniteEffectAlgebra) -> FiniteEffectAlgebra:
    """Componentwise algebra on pairs, indexed row major."""
    nb = b.order
    order = a.order * nb

    def idx(x: int, y: int) -> int:
        return x * nb + y

    pairs = {}
    for x1 in a.elements():
        for y1 in b.elements():
            for x2 in a.elements():
                for y2 in b.elements():
                    u = a.sum(x1, x2)
                    v = b.sum(y1, y2)
                    if u is not None and v is not None:
                        pairs[(idx(x1, y1), idx(x2, y2))] = idx(u, v)
    return FiniteEffectAlgebra(
        PartialOpTable.from_pairs(order, pairs), idx(a.zero, b.zero), idx(a.one, b.one)
    )


def _chain_expected(n: int) -> dict:
    return {
        "sharp": tuple((0, n)) if n > 1 else (0, 1),
        "meager": tuple(range(n)),
        "hypermeager": tuple(k for k in range(n + 1) if 2 * k <= n),
        "center": (0, n) if n > 1 else (0, 1),
        "principal": (0, n) if n > 1 else (0, 1),
        "blocks": (tuple(range(n + 1)),),
        "homogeneous": True,
        "rdp": True,
        "lattice": True,
        "sharply_dominating": True,
        "orthoalgebra": n == 1,
    }


@lru_cache(maxsize=None)
def named_catalog() -> tuple[CatalogEntry, ...]:
    """The fixed example algebras exercised by tests and the property suite."""
    entries: list[CatalogEntry] = []
    for n in range(1, 7):
        entries.append(CatalogEntry(f"chain-{n + 1}", make_chain(n), _chain_expected(n)))
    entries.append(
        CatalogEntry(
            "boolean-4",
            make_boolean(2),
            {
                "sharp": (0, 1, 2, 3),
                "meager": (0,),
                "hypermeager": (0,),
                "center": (0, 1, 2, 3),
                "blocks": ((0, 1, 2, 3),),
                "homogeneous": True,
                "rdp": True,
                "lattice": True,
                "orthoalgebra": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "boolean-8",
            make_boolean(3),
            {
                "sharp": tuple(range(8)),
                "meager": (0,),
                "center": tuple(range(8)),
                "blocks": (tuple(range(8)),),
                "homogeneous": True,
                "rdp": True,
                "lattice": True,
                "orthoalgebra": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "hsum-3-3",
            horizontal_sum([make_chain(2), make_chain(2)]),
            {
                "sharp": (0, 3),
                "meager": (0, 1, 2),
                "hypermeager": (0, 1, 2),
                "center": (0, 3),
                "principal": (0, 3),
                "blocks": ((0, 1, 3), (0, 2, 3)),
                "homogeneous": True,
                "rdp": False,
                "lattice": True,
                "orthoalgebra": False,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "hsum-3-3-3",
            horizontal_sum([make_chain(2)] * 3),
            {
                "sharp": (0, 4),
                "meager": (0, 1, 2, 3),
                "blocks": ((0, 1, 4), (0, 2, 4), (0, 3, 4)),
                "homogeneous": True,
                "rdp": False,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "hsum-4-3",
            horizontal_sum([make_chain(3), make_chain(2)]),
            {
                "sharp": (0, 4),
                "meager": (0, 1, 2, 3),
                "hypermeager": (0, 1, 3),
                "blocks": ((0, 1, 2, 4), (0, 3, 4)),
                "homogeneous": True,
                "lattice": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "hsum-4-4",
            horizontal_sum([make_chain(3), make_chain(3)]),
            {
                "sharp": (0, 5),
                "meager": (0, 1, 2, 3, 4),
                "hypermeager": (0, 1, 3),
                "blocks": ((0, 1, 2, 5), (0, 3, 4, 5)),
                "homogeneous": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "hsum-b4-3",
            horizontal_sum([make_boolean(2), make_chain(2)]),
            {
                "sharp": (0, 1, 2, 4),
                "meager": (0, 3),
                "hypermeager": (0, 3),
                "center": (0, 4),
                "principal": (0, 1, 2, 4),
                "blocks": ((0, 1, 2, 4), (0, 3, 4)),
                "homogeneous": True,
                "rdp": False,
                "lattice": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "product-3x2",
            direct_product(make_chain(2), make_chain(1)),
            {
                "sharp": (0, 1, 4, 5),
                "meager": (0, 2),
                "hypermeager": (0, 2),
                "center": (0, 1, 4, 5),
                "blocks": ((0, 1, 2, 3, 4, 5),),
                "homogeneous": True,
                "rdp": True,
                "lattice": True,
            },
        )
    )
    entries.append(
        CatalogEntry(
            "product-4x2",
            direct_product(make_chain(3), make_chain(1)),
            {
                "sharp": (0, 1, 6, 7),
                "meager": (0, 2, 4),
                "hypermeager": (0, 2),
                "center": (0, 1, 6, 7),
                "blocks": (tuple(range(8)),),
                "homogeneous": True,
                "rdp": True,
                "lattice": True,
            },
        )
    )
    return tuple(entries)


# ---------------------------------------------------------------------------
# enumeration


def _complete_tables(n: int, rng: random.Random | None = None) -> Iterator[FiniteEffectAlgebra]:
    """Depth-first completion of sum tables with zero = 0 and one = n - 1.

    Every isomorphism class has a representative in this labeling, so the
    stream is complete up to isomorphism once de-duplicated. Yields only
    tables that pass the full axiom check.
    """
    one = n - 1
    t = [[_UNDECIDED] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = x
        if x != 0:
            t[one][x] = t[x][one] = UNDEFINED

    interior = range(1, n - 1)
    cells = [(i, j) for i in interior for j in range(i, n - 1)]

    def assign(i: int, j: int, v: int, trail: list) -> bool:
        cur = t[i][j]
        if cur != _UNDECIDED:
            return cur == v
        t[i][j] = t[j][i] = v
        trail.append((i, j))
        if v != UNDEFINED:
            # cancellation: a defined value may appear once per row
            for row in {i, j}:
                count = sum(1 for y in range(n) if t[row][y] == v)
                if count > 1:
                    return False
        return True

    def propagate(trail: list) -> bool:
        while True:
            changed = False
            # orthosupplement: each interior row needs exactly one cell = one
            for x in interior:
                ones = 0
                open_cells = []
                for y in range(n):
                    if t[x][y] == one:
                        ones += 1
                    elif t[x][y] == _UNDECIDED:
                        open_cells.append(y)
                if ones > 1:
                    return False
                if ones == 0:
                    if not open_cells:
                        return False
                    if len(open_cells) == 1:
                        if not assign(x, open_cells[0], one, trail):
                            return False
                        changed = True
            # associativity on interior triples; triples touching zero or one
            # hold automatically in this frame
            for x in interior:
                tx = t[x]
                for y in interior:
                    xy = tx[y]
                    ty = t[y]
                    for z in interior:
                        yz = ty[z]
                        left = t[xy][z] if xy >= 0 else xy
                        right = tx[yz] if yz >= 0 else yz
                        if left == right:
                            continue
                        if left == _UNDECIDED or right == _UNDECIDED:
                            if left >= 0 and right == _UNDECIDED and yz >= 0:
                                if not assign(x, yz, left, trail):
                                    return False
                                changed = True
                            elif right >= 0 and left == _UNDECIDED and xy >= 0:
                                if not assign(xy, z, right, trail):
                                    return False
                                changed = True
                            continue
                        return False
            if not changed:
                return True

    def undo(trail: list):
        for i, j in trail:
            t[i][j] = t[j][i] = _UNDECIDED

    def candidates(i: int, j: int) -> list[int]:
        used = {t[i][y] for y in range(n)} | {t[j][y] for y in range(n)}
        values = [v for v in range(1, n) if v not in used]
        if rng is not None:
            rng.shuffle(values)
            if rng.random() < 0.5:
                return values + [UNDEFINED]
        return [UNDEFINED] + values

    def leaf() -> FiniteEffectAlgebra | None:
        rows = tuple(tuple(v for v in row) for row in t)
        table = PartialOpTable.from_rows(rows)
        if verify_effect_algebra(table, 0, one).ok:
            return FiniteEffectAlgebra(table, 0, one)
        return None

    def dfs(k: int) -> Iterator[FiniteEffectAlgebra]:
        while k < len(cells) and t[cells[k][0]][cells[k][1]] != _UNDECIDED:
            k += 1
        if k == len(cells):
            alg = leaf()
            if alg is not None:
                yield alg
            return
        i, j = cells[k]
        for v in candidates(i, j):
            trail: list = []
            if assign(i, j, v, trail) and propagate(trail):
                yield from dfs(k + 1)
            undo(trail)

    yield from dfs(0)


def enumerate_all(max_order: int, *, bound: int = DEFAULT_BOUND) -> Iterator[FiniteEffectAlgebra]:
    """Stream all effect algebras up to the given order, one per isomorphism class.

    Streams canonical relabelings in deterministic order. Refuses orders past
    the configured bound with a cost estimate; the hard ceiling is one above
    the default because the search is exponential in the cell count.
    """
    if max_order > min(bound, HARD_BOUND):
        raise EnumerationBoundError(max_order, min(bound, HARD_BOUND))
    for n in range(2, max_order + 1):
        seen: set[bytes] = set()
        for alg in _complete_tables(n):
            canon = canonical_algebra(alg)
            key = canonical_form(canon)
            if key not in seen:
                seen.add(key)
                yield canon


@lru_cache(maxsize=None)
def all_up_to(max_order: int) -> tuple[FiniteEffectAlgebra, ...]:
    """Cached tuple form of enumerate_all for repeated sweeps."""
    return tuple(enumerate_all(max_order, bound=max(max_order, DEFAULT_BOUND)))


def random_algebra(seed: int, order: int, *, bound: int = DEFAULT_BOUND) -> FiniteEffectAlgebra:
    """First completed table of a seed-shuffled search; deterministic per seed."""
    if order > min(bound, HARD_BOUND):
        raise EnumerationBoundError(order, min(bound, HARD_BOUND))
    if order < 2:
        raise ValueError("order must be at least 2")
    rng = random.Random(seed)
    alg = next(_complete_tables(order, rng), None)
    if alg is None:
        raise AssertionError("search space unexpectedly empty")
    return alg

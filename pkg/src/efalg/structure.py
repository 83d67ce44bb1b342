"""Structural analysis of finite effect algebras.

Computes the distinguished element sets (sharp, meager, hypermeager,
principal, central), blocks, the classifier flags, sharp bounds and the
unique sharp-meager decomposition, the closure operators used in the block
theory, and the Heyting check for blocks.

Finiteness is load bearing in two places and both are deliberate:
every orthogonal family of nonzero elements has size below the order
(partial sums strictly increase), so orthocompleteness and its meager
variant hold automatically, and every nonzero element has finite order,
so the Archimedean property holds automatically. The classifiers still
compute these honestly from the table so that bugs in the primitives
surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    UNDEFINED,
    FiniteEffectAlgebra,
    FiniteGeneralizedEffectAlgebra,
    PartialOpTable,
    _SumAlgebra,
)

__all__ = [
    "Flag",
    "SharpBounds",
    "StructureReport",
    "HypothesisError",
    "poset_meet",
    "poset_join",
    "sharp_elements",
    "meager_elements",
    "hypermeager_elements",
    "element_order",
    "is_archimedean",
    "principal_elements",
    "central_elements",
    "are_compatible",
    "is_internally_compatible",
    "blocks",
    "rdp_counterexample",
    "has_rdp",
    "homogeneity_counterexample",
    "is_homogeneous",
    "orthoalgebra_counterexample",
    "lattice_counterexample",
    "is_lattice",
    "sharp_bounds",
    "is_sharply_dominating",
    "decompose",
    "vartheta",
    "theta_map",
    "sigma_closure",
    "is_sub_effect_algebra",
    "restrict",
    "restrict_downset",
    "interval_algebra",
    "meager_algebra",
    "hypermeager_algebra",
    "is_boolean_algebra",
    "heyting_block_check",
    "structure_report",
]


class HypothesisError(RuntimeError):
    """An operation was applied to an algebra that violates its hypotheses."""

    def __init__(self, hypothesis: str, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        suffix = f" (witness {witness})" if witness is not None else ""
        super().__init__(f"hypothesis not met: {hypothesis}{suffix}")


def poset_meet(alg: _SumAlgebra, x: int, y: int) -> int | None:
    """Greatest lower bound in the derived order, None when it does not exist."""
    return alg.meet(x, y)


def poset_join(alg: _SumAlgebra, x: int, y: int) -> int | None:
    return alg.join(x, y)


# ---------------------------------------------------------------------------
# element sets


@lru_cache(maxsize=None)
def sharp_elements(E: FiniteEffectAlgebra) -> tuple[int, ...]:
    """Elements whose only common lower bound with their supplement is zero."""
    out = []
    for x in E.elements():
        common = E.below_mask(x) & E.below_mask(E.orthosupplement(x))
        if common == 1 << E.zero:
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=None)
def meager_elements(E: FiniteEffectAlgebra) -> tuple[int, ...]:
    """Elements with no nonzero sharp element below them."""
    sharp = set(sharp_elements(E))
    out = []
    for x in E.elements():
        if all(s == E.zero for s in E.down_set(x) if s in sharp):
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=None)
def hypermeager_elements(E: FiniteEffectAlgebra) -> tuple[int, ...]:
    """Elements lying below some y and below its supplement at the same time."""
    out = []
    for x in E.elements():
        if any(E.leq(x, y) and E.leq(x, E.orthosupplement(y)) for y in E.elements()):
            out.append(x)
    return tuple(out)


def element_order(alg: _SumAlgebra, x: int) -> int | float:
    """Largest n with the n-fold sum of x defined; math.inf for the zero element.

    Zero sums to itself forever, so its order is reported as infinite and it
    is excluded from Archimedean checks.
    """
    if x == alg.zero:
        return math.inf
    n = 1
    acc = x
    while True:
        nxt = alg.sum(acc, x)
        if nxt is None:
            return n
        acc = nxt
        n += 1
        if n > alg.order:  # unreachable in a lawful finite algebra
            raise AssertionError("unbounded order in a finite table")


def is_archimedean(alg: _SumAlgebra) -> bool:
    """True when every nonzero element has finite order; automatic at finite size."""
    return all(element_order(alg, x) != math.inf for x in alg.elements() if x != alg.zero)


@lru_cache(maxsize=None)
def principal_elements(E: FiniteEffectAlgebra) -> tuple[int, ...]:
    out = []
    for x in E.elements():
        down = E.down_set(x)
        if all(
            E.sum(y, z) is None or E.leq(E.sum(y, z), x)
            for y in down
            for z in down
        ):
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=None)
def central_elements(E: FiniteEffectAlgebra) -> tuple[int, ...]:
    """Elements x with x, x' principal such that every y splits across x and x'."""
    principal = set(principal_elements(E))
    out = []
    for x in E.elements():
        xc = E.orthosupplement(x)
        if x not in principal or xc not in principal:
            continue
        if all(_splits_across(E, y, x, xc) for y in E.elements()):
            out.append(x)
    return tuple(out)


def _splits_across(E: FiniteEffectAlgebra, y: int, x: int, xc: int) -> bool:
    for y1 in E.down_set(y):
        if not E.leq(y1, x):
            continue
        y2 = E.ominus(y, y1)
        if y2 is not None and E.leq(y2, xc):
            return True
    return False


# ---------------------------------------------------------------------------
# compatibility and blocks


def are_compatible(alg: _SumAlgebra, x: int, y: int) -> bool:
    """Pairwise compatibility: x = p+q, y = q+r with p+q+r defined.

    Works in effect algebras and generalized effect algebras alike. The
    search runs over common lower bounds q; p and r are then forced.
    """
    return _compat_matrix(alg)[x][y]


@lru_cache(maxsize=None)
def _compat_matrix(alg: _SumAlgebra) -> tuple[tuple[bool, ...], ...]:
    n = alg.order
    rows = [[False] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            ok = False
            common = alg.below_mask(x) & alg.below_mask(y)
            for q in alg.elements():
                if not (common >> q) & 1:
                    continue
                r = alg.ominus(y, q)
                if r is not None and alg.sum(x, r) is not None:
                    ok = True
                    break
            rows[x][y] = rows[y][x] = ok
    return tuple(tuple(r) for r in rows)


def is_internally_compatible(alg: _SumAlgebra, subset: frozenset[int] | Iterable[int]) -> bool:
    """Decide whether one orthogonal family drawn from the subset refines all of it.

    At finite order the definition's quantifier over finite parts collapses
    to the whole subset, so a single witnessing family suffices. The search
    runs over nondecreasing multisets of nonzero members with a defined sum;
    family size is bounded by the order because partial sums strictly grow.
    """
    members = frozenset(subset)
    return _internally_compatible(alg, members)


@lru_cache(maxsize=None)
def _internally_compatible(alg: _SumAlgebra, members: frozenset[int]) -> bool:
    targets = tuple(sorted(m for m in members if m != alg.zero))
    if not targets:
        return True
    compat = _compat_matrix(alg)
    if any(not compat[a][b] for a in targets for b in targets):
        return False
    pool = targets
    cap = alg.order - 1

    def reachable(sums: frozenset[int], x: int) -> frozenset[int]:
        extra = set()
        for v in sums:
            w = alg.sum(v, x)
            if w is not None:
                extra.add(w)
        return sums | extra

    target_set = set(targets)

    def dfs(start: int, total: int, size: int, sums: frozenset[int]) -> bool:
        if target_set <= sums:
            return True
        if size >= cap:
            return False
        for k in range(start, len(pool)):
            x = pool[k]
            nxt = alg.sum(total, x)
            if nxt is None:
                continue
            if dfs(k, nxt, size + 1, reachable(sums, x)):
                return True
        return False

    return dfs(0, alg.zero, 0, frozenset({alg.zero}))


@lru_cache(maxsize=None)
def blocks(E: FiniteEffectAlgebra) -> tuple[tuple[int, ...], ...]:
    """All maximal internally compatible subsets containing the unit.

    In a homogeneous algebra these are exactly the blocks of the theory
    (maximal RDP sub-effect algebras); on other input the operation still
    returns the maximal internally compatible subsets, and callers consult
    the homogeneity flag to know whether the block theory applies.

    Internal compatibility is not downward hereditary, so the search first
    enumerates maximal cliques of the pairwise compatibility relation and
    then refines each clique top-down, memoizing visited subsets.
    """
    n = E.order
    compat = _compat_matrix(E)
    neighbours = [frozenset(y for y in range(n) if y != x and compat[x][y]) for x in range(n)]

    cliques: list[frozenset[int]] = []

    def bron_kerbosch(r: frozenset[int], p: frozenset[int], x: frozenset[int]):
        if not p and not x:
            cliques.append(r)
            return
        pivot = max(p | x, key=lambda v: len(neighbours[v] & p))
        for v in sorted(p - neighbours[pivot]):
            bron_kerbosch(r | {v}, p & neighbours[v], x & neighbours[v])
            p = p - {v}
            x = x | {v}

    bron_kerbosch(frozenset(), frozenset(range(n)), frozenset())

    found: set[frozenset[int]] = set()
    memo: dict[frozenset[int], frozenset[frozenset[int]]] = {}

    def refine(subset: frozenset[int]) -> frozenset[frozenset[int]]:
        if subset in memo:
            return memo[subset]
        if _internally_compatible(E, subset):
            result = frozenset({subset})
        else:
            collected: set[frozenset[int]] = set()
            for v in sorted(subset):
                if v in (E.zero, E.one):
                    continue
                collected |= refine(subset - {v})
            result = frozenset(s for s in collected if not any(s < t for t in collected))
        memo[subset] = result
        return result

    for clique in cliques:
        if E.one in clique:
            found |= refine(clique)

    maximal = [s for s in found if not any(s < t for t in found)]
    return tuple(sorted(tuple(sorted(s)) for s in maximal))


def rdp_counterexample(E: FiniteEffectAlgebra) -> tuple[int, int, int] | None:
    """Least (u, v1, v2) with u <= v1 + v2 admitting no matching split, if any."""
    return _riesz_counterexample(E, bounded=False)


def has_rdp(E: FiniteEffectAlgebra) -> bool:
    return rdp_counterexample(E) is None


def homogeneity_counterexample(E: FiniteEffectAlgebra) -> tuple[int, int, int] | None:
    """Least (u, v1, v2) with u <= v1 + v2 <= u' admitting no split, if any."""
    return _riesz_counterexample(E, bounded=True)


def is_homogeneous(E: FiniteEffectAlgebra) -> bool:
    return homogeneity_counterexample(E) is None


@lru_cache(maxsize=None)
def _riesz_counterexample(E: FiniteEffectAlgebra, bounded: bool) -> tuple[int, int, int] | None:
    for u in E.elements():
        uc = E.orthosupplement(u)
        for v1 in E.elements():
            for v2 in E.elements():
                s = E.sum(v1, v2)
                if s is None or not E.leq(u, s):
                    continue
                if bounded and not E.leq(s, uc):
                    continue
                if not _riesz_split(E, u, v1, v2):
                    return (u, v1, v2)
    return None


def _riesz_split(E: FiniteEffectAlgebra, u: int, v1: int, v2: int) -> bool:
    for u1 in E.down_set(v1):
        u2 = E.ominus(u, u1)
        if u2 is not None and E.leq(u2, v2):
            return True
    return False


def orthoalgebra_counterexample(E: FiniteEffectAlgebra) -> tuple[int] | None:
    for x in E.elements():
        if x != E.zero and E.defined(x, x):
            return (x,)
    return None


def lattice_counterexample(alg: _SumAlgebra) -> tuple[int, int, str] | None:
    for x in alg.elements():
        for y in range(x + 1, alg.order):
            if alg.meet(x, y) is None:
                return (x, y, "meet")
            if alg.join(x, y) is None:
                return (x, y, "join")
    return None


def is_lattice(alg: _SumAlgebra) -> bool:
    return lattice_counterexample(alg) is None


# ---------------------------------------------------------------------------
# sharp bounds and decomposition


@dataclass(frozen=True)
class SharpBounds:
    """Per element: greatest sharp element below and smallest sharp above."""

    below: tuple[int | None, ...]
    above: tuple[int | None, ...]


@lru_cache(maxsize=None)
def sharp_bounds(E: FiniteEffectAlgebra) -> SharpBounds:
    sharp = sharp_elements(E)
    below: list[int | None] = []
    above: list[int | None] = []
    for x in E.elements():
        under = [s for s in sharp if E.leq(s, x)]
        over = [s for s in sharp if E.leq(x, s)]
        below.append(_maximum(E, under))
        above.append(_minimum(E, over))
    return SharpBounds(tuple(below), tuple(above))


def _maximum(E: _SumAlgebra, xs: Sequence[int]) -> int | None:
    for m in xs:
        if all(E.leq(z, m) for z in xs):
            return m
    return None


def _minimum(E: _SumAlgebra, xs: Sequence[int]) -> int | None:
    for m in xs:
        if all(E.leq(m, z) for z in xs):
            return m
    return None


def is_sharply_dominating(E: FiniteEffectAlgebra) -> bool:
    b = sharp_bounds(E)
    return all(v is not None for v in b.below) and all(v is not None for v in b.above)


def decompose(E: FiniteEffectAlgebra, x: int) -> tuple[int, int]:
    """Split x into its sharp part and meager part; unique in qualifying algebras."""
    bounds = sharp_bounds(E)
    if not is_sharply_dominating(E):
        bad = next(
            i
            for i in E.elements()
            if bounds.below[i] is None or bounds.above[i] is None
        )
        raise HypothesisError("sharply_dominating", bad)
    xt = bounds.below[x]
    rest = E.ominus(x, xt)
    assert rest is not None
    return xt, rest


# ---------------------------------------------------------------------------
# restrictions


def is_sub_effect_algebra(E: FiniteEffectAlgebra, subset: Iterable[int]) -> bool:
    """Unit membership plus two-out-of-three closure under defined sums."""
    q = frozenset(subset)
    if E.one not in q:
        return False
    for x in E.elements():
        for y in E.elements():
            z = E.sum(x, y)
            if z is None:
                continue
            if sum((x in q, y in q, z in q)) >= 2 and not {x, y, z} <= q:
                return False
    return True


def restrict(E: FiniteEffectAlgebra, subset: Iterable[int]) -> tuple[FiniteEffectAlgebra, tuple[int, ...]]:
    """Sub-effect algebra on a closed subset, with the element back-map."""
    elems = tuple(sorted(frozenset(subset)))
    index = {e: i for i, e in enumerate(elems)}
    pairs = {}
    for a in elems:
        for b in elems:
            v = E.sum(a, b)
            if v is not None:
                if v not in index:
                    raise ValueError(f"subset not closed under defined sums at ({a},{b})")
                pairs[(index[a], index[b])] = index[v]
    table = PartialOpTable.from_pairs(len(elems), pairs)
    sub = FiniteEffectAlgebra(table, index[E.zero], index[E.one])
    return sub, elems


def restrict_downset(
    E: FiniteEffectAlgebra, downset: Iterable[int]
) -> tuple[FiniteGeneralizedEffectAlgebra, tuple[int, ...]]:
    """Generalized effect algebra on a down-set: sums defined when they stay inside."""
    elems = tuple(sorted(frozenset(downset)))
    index = {e: i for i, e in enumerate(elems)}
    pairs = {}
    for a in elems:
        for b in elems:
            v = E.sum(a, b)
            if v is not None and v in index:
                pairs[(index[a], index[b])] = index[v]
    table = PartialOpTable.from_pairs(max(len(elems), 1), pairs)
    sub = FiniteGeneralizedEffectAlgebra(table, index[E.zero])
    return sub, elems


@lru_cache(maxsize=None)
def interval_algebra(E: FiniteEffectAlgebra, top: int) -> tuple[FiniteEffectAlgebra, tuple[int, ...]]:
    """The interval from zero to top as an effect algebra with unit top."""
    if top == E.zero:
        raise ValueError("interval with top = zero is not an effect algebra")
    elems = E.down_set(top)
    index = {e: i for i, e in enumerate(elems)}
    pairs = {}
    for a in elems:
        for b in elems:
            v = E.sum(a, b)
            if v is not None and E.leq(v, top):
                pairs[(index[a], index[b])] = index[v]
    table = PartialOpTable.from_pairs(len(elems), pairs)
    sub = FiniteEffectAlgebra(table, index[E.zero], index[top])
    return sub, elems


@lru_cache(maxsize=None)
def meager_algebra(E: FiniteEffectAlgebra) -> tuple[FiniteGeneralizedEffectAlgebra, tuple[int, ...]]:
    return restrict_downset(E, meager_elements(E))


@lru_cache(maxsize=None)
def hypermeager_algebra(E: FiniteEffectAlgebra) -> tuple[FiniteGeneralizedEffectAlgebra, tuple[int, ...]]:
    return restrict_downset(E, hypermeager_elements(E))


# ---------------------------------------------------------------------------
# closure operators


@lru_cache(maxsize=None)
def vartheta(E: FiniteEffectAlgebra, u: int) -> tuple[int, ...]:
    """Elements v and u - v for sums v of meager families orthogonal to u.

    The families range over meager elements below the supplement of u, with
    a defined sum that stays below u and lands in the meager set. Finiteness
    bounds the family size, so plain depth-first search is exhaustive.
    """
    meager = set(meager_elements(E))
    uc = E.orthosupplement(u)
    pool = tuple(sorted(m for m in meager if m != E.zero and E.leq(m, uc) and E.leq(m, u)))
    totals: set[int] = {E.zero}
    seen: set[tuple[int, int]] = set()

    def dfs(start: int, total: int):
        for k in range(start, len(pool)):
            x = pool[k]
            nxt = E.sum(total, x)
            if nxt is None or not E.leq(nxt, u) or nxt not in meager:
                continue
            totals.add(nxt)
            if (k, nxt) not in seen:
                seen.add((k, nxt))
                dfs(k, nxt)

    dfs(0, E.zero)
    out = set()
    for v in totals:
        out.add(v)
        w = E.ominus(u, v)
        assert w is not None
        out.add(w)
    return tuple(sorted(out))


def theta_map(E: FiniteEffectAlgebra, subset: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for u in frozenset(subset):
        out |= set(vartheta(E, u))
    return frozenset(out)


def sigma_closure(E: FiniteEffectAlgebra, subset: Iterable[int]) -> frozenset[int]:
    """Least superset of the input closed under the theta operator."""
    current = frozenset(subset)
    while True:
        nxt = current | theta_map(E, current)
        if nxt == current:
            return current
        current = nxt


# ---------------------------------------------------------------------------
# Heyting check for blocks


def is_boolean_algebra(E: FiniteEffectAlgebra) -> bool:
    """Lattice, distributive, orthosupplement complements: a Boolean algebra."""
    if not is_lattice(E):
        return False
    for x in E.elements():
        xc = E.orthosupplement(x)
        if E.meet(x, xc) != E.zero or E.join(x, xc) != E.one:
            return False
    for x in E.elements():
        for y in E.elements():
            for z in E.elements():
                lhs = E.meet(x, E.join(y, z))
                rhs = E.join(E.meet(x, y), E.meet(x, z))
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class HeytingVerdict:
    ok: bool
    failed_clause: str | None = None
    witness: tuple | None = None


def heyting_block_check(E: FiniteEffectAlgebra, block: Iterable[int]) -> HeytingVerdict:
    """Verify a block is a lattice with pseudocomplement (smallest sharp cover)'
    whose image is exactly the center of the block."""
    b = tuple(sorted(frozenset(block)))
    if homogeneity_counterexample(E) is not None:
        return HeytingVerdict(False, "hypothesis", ("homogeneous",))
    if not is_sharply_dominating(E):
        return HeytingVerdict(False, "hypothesis", ("sharply_dominating",))
    if b not in blocks(E):
        return HeytingVerdict(False, "hypothesis", ("block", b))

    sub, elems = restrict(E, b)
    index = {e: i for i, e in enumerate(elems)}
    bad = lattice_counterexample(sub)
    if bad is not None:
        return HeytingVerdict(False, "lattice", (elems[bad[0]], elems[bad[1]], bad[2]))
    if rdp_counterexample(sub) is not None:
        return HeytingVerdict(False, "rdp", rdp_counterexample(sub))

    above = sharp_bounds(E).above
    star = {}
    for x in b:
        hat = above[x]
        assert hat is not None
        star[x] = E.orthosupplement(hat)
        if star[x] not in index:
            return HeytingVerdict(False, "pseudocomplement", (x, "image outside block"))

    for x in b:
        for y in b:
            zero_meet = sub.meet(index[x], index[y]) == sub.zero
            below_star = E.leq(x, star[y])
            if zero_meet != below_star:
                return HeytingVerdict(False, "pseudocomplement", (x, y))

    heyting_center = frozenset(star[x] for x in b)
    center = frozenset(elems[c] for c in central_elements(sub))
    if heyting_center != center:
        return HeytingVerdict(False, "heyting_center", (tuple(sorted(heyting_center)), tuple(sorted(center))))
    return HeytingVerdict(True)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class Flag:
    value: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class StructureReport:
    order: int
    zero: int
    one: int
    sharp: tuple[int, ...]
    meager: tuple[int, ...]
    hypermeager: tuple[int, ...]
    center: tuple[int, ...]
    principal: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    ord: tuple[int | None, ...]
    bounds_below: tuple[int | None, ...]
    bounds_above: tuple[int | None, ...]
    homogeneous: Flag
    rdp: Flag
    lattice: Flag
    sharply_dominating: Flag
    archimedean: Flag
    orthoalgebra: Flag

    @property
    def block_theory_applies(self) -> bool:
        return self.homogeneous.value

    def to_json_dict(self) -> dict:
        def flag(f: Flag) -> dict:
            return {"value": f.value, "witness": list(f.witness) if f.witness else None}

        return {
            "schema_version": 1,
            "order": self.order,
            "zero": self.zero,
            "one": self.one,
            "sharp": list(self.sharp),
            "meager": list(self.meager),
            "hypermeager": list(self.hypermeager),
            "center": list(self.center),
            "principal": list(self.principal),
            "blocks": [list(b) for b in self.blocks],
            "ord": [None if v is None else v for v in self.ord],
            "sharp_bounds": {
                "below": list(self.bounds_below),
                "above": list(self.bounds_above),
            },
            "flags": {
                "homogeneous": flag(self.homogeneous),
                "rdp": flag(self.rdp),
                "lattice": flag(self.lattice),
                "sharply_dominating": flag(self.sharply_dominating),
                "archimedean": flag(self.archimedean),
                "orthoalgebra": flag(self.orthoalgebra),
            },
            "block_theory_applies": self.block_theory_applies,
        }


def structure_report(E: FiniteEffectAlgebra) -> StructureReport:
    hom = homogeneity_counterexample(E)
    rdp = rdp_counterexample(E)
    lat = lattice_counterexample(E)
    orth = orthoalgebra_counterexample(E)
    b = sharp_bounds(E)
    sd_witness = None
    for x in E.elements():
        if b.below[x] is None:
            sd_witness = (x, "below")
            break
        if b.above[x] is None:
            sd_witness = (x, "above")
            break
    arch_witness = next(
        (x for x in E.elements() if x != E.zero and element_order(E, x) == math.inf), None
    )
    ords: list[int | None] = [
        None if x == E.zero else int(element_order(E, x)) for x in E.elements()
    ]
    return StructureReport(
        order=E.order,
        zero=E.zero,
        one=E.one,
        sharp=sharp_elements(E),
        meager=meager_elements(E),
        hypermeager=hypermeager_elements(E),
        center=central_elements(E),
        principal=principal_elements(E),
        blocks=blocks(E),
        ord=tuple(ords),
        bounds_below=b.below,
        bounds_above=b.above,
        homogeneous=Flag(hom is None, hom),
        rdp=Flag(rdp is None, rdp),
        lattice=Flag(lat is None, lat),
        sharply_dominating=Flag(sd_witness is None, sd_witness),
        archimedean=Flag(arch_witness is None, (arch_witness,) if arch_witness is not None else None),
        orthoalgebra=Flag(orth is None, orth),
    )

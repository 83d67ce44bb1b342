"""Triple extraction, the four derived mappings, reconstruction, roundtrip."""

import dataclasses

import pytest

from efalg.catalog import horizontal_sum, make_boolean, make_chain
from efalg.structure import (
    HypothesisError,
    is_homogeneous,
    is_sharply_dominating,
    sharp_bounds,
)
from efalg.triple import (
    ReconstructionError,
    extract_triple,
    pi_s,
    r_map,
    reconstruct_tea,
    s_map,
    verify_roundtrip,
    widehat_triple,
)


@pytest.fixture(scope="module")
def chain3_triple():
    return extract_triple(make_chain(2))


@pytest.fixture(scope="module")
def diamond_triple():
    return extract_triple(horizontal_sum([make_chain(2), make_chain(2)]))


def qualifying(universe):
    for name, alg in universe:
        if is_homogeneous(alg) and is_sharply_dominating(alg):
            yield name, alg


class TestExtract:
    def test_boolean_collapses_meager(self):
        T = extract_triple(make_boolean(2))
        assert T.meager.order == 1
        assert T.sharp.order == 4
        assert all(T.h[s] == frozenset({0}) for s in T.sharp.elements())

    def test_three_chain(self, chain3_triple):
        T = chain3_triple
        assert T.sharp.order == 2
        assert T.meager.order == 2
        assert T.h[T.sharp.zero] == frozenset({0})
        assert T.h[T.sharp.one] == frozenset({0, 1})

    def test_diamond_meager_sum_undefined(self, diamond_triple):
        T = diamond_triple
        # the two interior points stay meager but their double is not
        assert T.meager.order == 3
        a = 1
        assert T.meager.sum(a, a) is None

    def test_h_monotone(self, universe_6):
        for _, alg in qualifying(universe_6):
            T = extract_triple(alg)
            for s in T.sharp.elements():
                for t in T.sharp.elements():
                    if T.sharp.leq(s, t):
                        assert T.h[s] <= T.h[t]

    def test_hypothesis_failure_reported(self, enumerated_6):
        non_hom = [a for a in enumerated_6 if not is_homogeneous(a)]
        assert non_hom
        with pytest.raises(HypothesisError) as err:
            extract_triple(non_hom[0])
        assert err.value.hypothesis == "homogeneous"
        assert err.value.witness is not None


class TestMappings:
    def test_widehat_of_zero(self, chain3_triple):
        assert widehat_triple(chain3_triple, 0) == chain3_triple.sharp.zero

    def test_widehat_three_chain_interior(self, chain3_triple):
        assert widehat_triple(chain3_triple, 1) == chain3_triple.sharp.one

    def test_widehat_agrees_with_bounds(self, universe_6):
        for _, alg in qualifying(universe_6):
            T = extract_triple(alg)
            above = sharp_bounds(alg).above
            for x in T.meager.elements():
                got = T.sharp_to_source[widehat_triple(T, x)]
                assert got == above[T.meager_to_source[x]]

    def test_pi_at_one_is_identity(self, universe_6):
        for _, alg in qualifying(universe_6):
            T = extract_triple(alg)
            for x in T.meager.elements():
                assert pi_s(T, T.sharp.one, x) == x
                assert pi_s(T, T.sharp.zero, x) == T.meager.zero

    def test_r_map_three_chain(self, chain3_triple):
        assert r_map(chain3_triple, 0) == 0
        assert r_map(chain3_triple, 1) == 1  # cover of a is 1, gap is a again

    def test_r_map_four_chain(self):
        T = extract_triple(make_chain(3))
        # p's cover is the top, so the gap is q
        p = T.meager_to_source.index(1)
        q = T.meager_to_source.index(2)
        assert r_map(T, p) == q

    def test_s_map_trivial_and_diamond(self, chain3_triple, diamond_triple):
        assert s_map(chain3_triple, 0, 0) == chain3_triple.sharp.zero
        assert s_map(chain3_triple, 1, 1) == chain3_triple.sharp.one
        a, b = 1, 2
        assert s_map(diamond_triple, a, b) == diamond_triple.sharp.zero


class TestReconstruct:
    def test_boolean_carrier_collapses(self):
        T = extract_triple(make_boolean(2))
        tea = reconstruct_tea(T)
        assert len(tea.carrier) == 4
        assert all(m == 0 for _, m in tea.carrier)

    def test_three_chain_carrier_and_sum(self, chain3_triple):
        tea = reconstruct_tea(chain3_triple)
        assert tea.carrier == ((0, 0), (0, 1), (1, 0))
        k = tea.carrier.index((0, 1))
        top = tea.carrier.index((1, 0))
        assert tea.algebra.sum(k, k) == top

    def test_roundtrip_catalog(self, catalog):
        for entry in catalog:
            result = verify_roundtrip(entry.algebra)
            assert result.ok, (entry.name, result.failure, result.witness)
            assert result.tea is not None and result.tea.phi is not None

    def test_phi_sends_constants(self, catalog):
        for entry in catalog:
            alg = entry.algebra
            result = verify_roundtrip(alg)
            tea = result.tea
            assert tea.carrier[tea.phi[alg.zero]] == (0, 0)
            sharp_one = extract_triple(alg).sharp.one
            assert tea.carrier[tea.phi[alg.one]] == (sharp_one, 0)

    def test_roundtrip_enumerated(self, universe_6):
        for name, alg in qualifying(universe_6):
            assert verify_roundtrip(alg).ok, name

    def test_rebuild_isomorphic_by_independent_search(self, universe_6):
        # confirm the rebuild with the generic backtracking search, not
        # just with the explicitly constructed map
        from efalg.iso import find_isomorphism

        for name, alg in qualifying(universe_6):
            tea = reconstruct_tea(extract_triple(alg))
            assert find_isomorphism(tea.algebra, alg) is not None, name


class TestPurityAndMutation:
    def test_reconstruction_ignores_backmaps(self, universe_6):
        for _, alg in qualifying(universe_6):
            T = extract_triple(alg)
            full = reconstruct_tea(T)
            bare = reconstruct_tea(T.stripped())
            assert full.algebra.table == bare.algebra.table
            assert full.carrier == bare.carrier

    def test_corrupted_h_detected(self, diamond_triple):
        T = diamond_triple
        # drop one meager element from h(one)
        h = list(T.h)
        h[T.sharp.one] = h[T.sharp.one] - {1}
        corrupted = dataclasses.replace(T, h=tuple(h))
        with pytest.raises(ReconstructionError):
            reconstruct_tea(corrupted)

    def test_extract_of_rebuild_isomorphic(self, universe_6):
        from efalg.iso import isomorphisms

        for name, alg in qualifying(universe_6):
            T = extract_triple(alg)
            T2 = extract_triple(reconstruct_tea(T).algebra)
            found = False
            for f in isomorphisms(T.sharp, T2.sharp):
                for g in isomorphisms(T.meager, T2.meager):
                    if all(
                        frozenset(g[m] for m in T.h[s]) == T2.h[f[s]]
                        for s in T.sharp.elements()
                    ):
                        found = True
                        break
                if found:
                    break
            assert found, name

import pytest

import oracles
from conftest import small_structures
from orderbench import axioms, stone
from orderbench.core import bits, full_mask, p0set
from orderbench.errors import (
    CapExceeded,
    FormatError,
    NotAFilter,
    NotOpen,
    PreconditionFailed,
)


def masks_to_sets(masks):
    return [frozenset(bits(m)) for m in masks]


class TestFilters:
    def test_powerset_filters(self, p2):
        got = stone.enumerate_filters(p2)
        assert got == [0, 0b1000, 0b1010, 0b1100, 0b1111]

    def test_two_atoms_filters(self, e0):
        got = masks_to_sets(stone.enumerate_filters(e0))
        assert frozenset({1}) in got and frozenset({2}) in got
        assert frozenset({1, 2}) not in got  # not directed: atoms meet only at zero

    def test_one_point(self, one):
        assert stone.enumerate_filters(one) == [0, 1]
        assert stone.enumerate_ultrafilters(one) == []

    def test_matches_oracle(self):
        for B in small_structures(4):
            got = masks_to_sets(stone.enumerate_filters(B))
            assert sorted(got, key=sorted) == sorted(
                oracles.naive_filters(B), key=sorted
            )

    def test_ultrafilters(self, e0, c2, p2):
        assert stone.enumerate_ultrafilters(p2) == [0b1010, 0b1100]
        assert masks_to_sets(stone.enumerate_ultrafilters(e0)) == [
            frozenset({1}),
            frozenset({2}),
        ]
        assert masks_to_sets(stone.enumerate_ultrafilters(c2)) == [frozenset({1, 2})]

    def test_ultrafilters_match_oracle(self):
        for B in small_structures(4):
            got = masks_to_sets(stone.enumerate_ultrafilters(B))
            assert sorted(got, key=sorted) == sorted(
                oracles.naive_ultrafilters(B), key=sorted
            )

    def test_cap(self):
        big = p0set(21, 0, [(0, j) for j in range(21)] + [(i, i) for i in range(21)])
        with pytest.raises(CapExceeded):
            stone.enumerate_filters(big)


class TestFilterCharacterizations:
    def test_powerset_ultrafilter(self, p2):
        rep = stone.ultrafilter_properties(p2, 0b1010)
        assert all(c.holds for c in rep.checks)

    def test_powerset_principal_top(self, p2):
        rep = stone.ultrafilter_properties(p2, 0b1000)
        assert rep.holds("maximal") is False
        assert rep.holds("complement_ideal") is False
        assert rep.holds("perp_characterization") is False
        assert rep.holds("equivalent") is True

    def test_two_atoms_no_equivalence_claim(self, e0):
        rep = stone.ultrafilter_properties(e0, 0b010)
        assert rep.holds("maximal") is True
        assert rep.holds("equivalent") is None

    def test_rejects_non_filters(self, p2):
        with pytest.raises(NotAFilter):
            stone.ultrafilter_properties(p2, 0b0110)
        with pytest.raises(NotAFilter):
            stone.ultrafilter_properties(p2, 0)
        with pytest.raises(NotAFilter):
            stone.ultrafilter_properties(p2, 0b1111)

    def test_equivalence_over_small_basic_lattices(self):
        for B in small_structures(5):
            if not axioms.is_basic_lattice(B):
                continue
            fm = full_mask(B.size)
            for U in stone.enumerate_filters(B):
                if U in (0, fm):
                    continue
                assert stone.ultrafilter_properties(B, U).passed

    def test_directed_upclosure_is_filter(self):
        # the strict up-closure of an order-directed set is a filter, and
        # a set is a filter exactly when it is a coinitial order-filter,
        # over small basic lattices
        from orderbench.core import derived_relations

        for B in small_structures(5):
            if not axioms.is_basic_lattice(B):
                continue
            der = derived_relations(B)
            filters = set(stone.enumerate_filters(B))
            for U in range(1 << B.size):
                members = list(bits(U))
                order_directed = all(
                    any(
                        U >> z & 1
                        and der.preceq[z] >> x & 1
                        and der.preceq[z] >> y & 1
                        for z in range(B.size)
                    )
                    for x in members
                    for y in members
                )
                if order_directed:
                    upclosure = 0
                    for x in members:
                        upclosure |= B.prec[x]
                    assert upclosure in filters, (B.pairs(), U)
                ge_closed = all(
                    U >> y & 1 for x in members for y in bits(der.preceq[x])
                )
                coinitial = all(
                    any(U >> x & 1 and B.prec[x] >> y & 1 for x in range(B.size))
                    for y in members
                )
                assert (U in filters) == (
                    order_directed and ge_closed and coinitial
                ), (B.pairs(), U)


class TestStoneSpace:
    def test_powerset_space(self, p2):
        X = stone.stone_space(p2)
        assert X.points == 2
        assert X.basis == (0, 0b01, 0b10, 0b11)
        assert X.opens == (0, 1, 2, 3)

    def test_two_atoms_space(self, e0):
        X = stone.stone_space(e0)
        assert X.points == 2
        assert sorted(X.basis[1:]) == [0b01, 0b10]

    def test_chain_collapses(self, c2):
        X = stone.stone_space(c2)
        assert X.points == 1
        assert X.basis == (0, 1, 1)

    def test_one_point_structure_empty_space(self, one):
        assert stone.stone_space(one).points == 0

    def test_duality_powerset(self, p2, p3):
        assert stone.verify_duality(p2).passed
        assert stone.verify_duality(p3).passed

    def test_duality_needs_basic_lattice(self, c2):
        with pytest.raises(PreconditionFailed):
            stone.verify_duality(c2)

    def test_duality_over_small_basic_lattices(self):
        for B in small_structures(5):
            if axioms.is_basic_lattice(B):
                assert stone.verify_duality(B).passed, B.pairs()


class TestBasisToStructure:
    def test_full_powerset_family(self, p2):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        S = stone.basis_to_structure(X, [0, 1, 2, 3])
        assert S.prec == p2.prec and S.zero == 0

    def test_atom_family(self, e0):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        S = stone.basis_to_structure(X, [0, 1, 2])
        assert S.prec == e0.prec

    def test_singleton_family(self):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        S = stone.basis_to_structure(X, [0])
        assert S.size == 1

    def test_requires_empty(self):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        with pytest.raises(PreconditionFailed):
            stone.basis_to_structure(X, [1, 2])

    def test_requires_open(self):
        X = stone.topology_from_basis(2, [0, 1, 3])
        with pytest.raises(NotOpen):
            stone.basis_to_structure(X, [0, 2])

    def test_point_filter(self):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        assert stone.point_filter(X, [0, 1, 2, 3], 0) == 0b1010
        assert stone.point_filter(X, [0, 1, 2], 1) == 0b100

    def test_nondiscrete_closure(self):
        # in the generated topology of {0,{1},{1,2}} the closure of {1} is
        # everything, so compact containment is strictly stronger than
        # inclusion
        X = stone.topology_from_basis(2, [0b01, 0b11])
        assert X.closure(0b01) == 0b11
        S = stone.basis_to_structure(X, [0, 0b01, 0b11])
        assert not S.has(1, 1)
        assert S.has(1, 2)


class TestTopologyFormat:
    def test_round_trip(self, p2):
        X = stone.stone_space(p2)
        again = stone.load_topology(stone.dump_topology(X))
        assert again.points == X.points and set(again.opens) == set(X.opens)

    def test_rejects_unclosed(self):
        with pytest.raises(FormatError):
            stone.load_topology(
                '{"points": 2, "opens": [[], [0], [1]], "basis": [[0], [1]]}'
            )

    def test_rejects_bad_shape(self):
        with pytest.raises(FormatError):
            stone.load_topology('{"points": 2}')

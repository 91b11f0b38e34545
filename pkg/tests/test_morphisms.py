import json

import pytest

from conftest import small_structures
from orderbench import axioms, morphisms as mo, stone
from orderbench.core import bits, dump_structure, full_mask
from orderbench.errors import (
    DimensionMismatch,
    NotContinuous,
    NotInterpolator,
    PreconditionFailed,
)


def all_valid_interpolators(B, C):
    """Brute-force enumeration with a cheap minimum-row rejection first."""
    out = []
    full_c = full_mask(C.size)
    free = [x for x in range(B.size) if x != B.zero]
    for code in range((1 << C.size) ** len(free)):
        rows = [0] * B.size
        rows[B.zero] = full_c
        k = code
        for x in free:
            rows[x] = k % (1 << C.size)
            k //= 1 << C.size
        R = mo.Interpolator(B, C, tuple(rows))
        if mo.is_interpolator(R).passed:
            out.append(R)
    return out


class TestInterpolatorAxioms:
    def test_prec_is_self_interpolator(self, p2):
        assert mo.is_interpolator(mo.identity_interpolator(p2)).passed

    def test_empty_relation_fails_cofinality(self, p2):
        rep = mo.is_interpolator(mo.Interpolator(p2, p2, (0, 0, 0, 0)))
        assert rep["cofinality"].holds is False
        assert not rep.passed

    def test_needs_basic_lattices(self, c2, p2):
        with pytest.raises(PreconditionFailed):
            mo.is_interpolator(mo.identity_interpolator(c2))
        with pytest.raises(PreconditionFailed):
            mo.is_interpolator(mo.Interpolator(c2, p2, (0b1111,) * 3))

    def test_derived_auxiliarity_on_valid(self, p2, p3):
        for R in all_valid_interpolators(p2, p2):
            rep = mo.is_interpolator(R)
            assert rep.holds("target_auxiliarity")
            assert rep.holds("source_auxiliarity")


class TestComposition:
    def test_prec_composes_to_itself(self, p2):
        R = mo.identity_interpolator(p2)
        assert mo.compose_interpolators(R, R).rel == R.rel

    def test_identity_laws(self, p2):
        for R in all_valid_interpolators(p2, p2):
            left = mo.compose_interpolators(mo.identity_interpolator(p2), R)
            right = mo.compose_interpolators(R, mo.identity_interpolator(p2))
            assert left.rel == R.rel and right.rel == R.rel

    def test_empty_absorbs(self, p2):
        E = mo.Interpolator(p2, p2, (0, 0, 0, 0))
        R = mo.identity_interpolator(p2)
        assert mo.compose_interpolators(E, R).rel == (0, 0, 0, 0)

    def test_dimension_mismatch(self, p2, p3):
        with pytest.raises(DimensionMismatch):
            mo.compose_interpolators(
                mo.identity_interpolator(p2), mo.identity_interpolator(p3)
            )

    def test_category_laws_small(self):
        # composites of valid interpolators are valid; composition is
        # associative; over the basic lattices of size <= 4
        lats = [B for B in small_structures(4) if axioms.is_basic_lattice(B)]
        pools = {}
        for B in lats:
            for C in lats:
                pools[(id(B), id(C))] = all_valid_interpolators(B, C)
        for B in lats:
            for C in lats:
                for R in pools[(id(B), id(C))]:
                    for D in lats:
                        for S in pools[(id(C), id(D))]:
                            RS = mo.compose_interpolators(R, S)
                            assert mo.is_interpolator(RS).passed
                            for E in lats:
                                for T in pools[(id(D), id(E))][:2]:
                                    a = mo.compose_interpolators(RS, T)
                                    b = mo.compose_interpolators(
                                        R, mo.compose_interpolators(S, T)
                                    )
                                    assert a.rel == b.rel


class TestStoneMaps:
    def test_identity_interpolator_identity_map(self, p2):
        sm = mo.induced_stone_map(mo.identity_interpolator(p2))
        assert sm.mapping == (0, 1)
        assert sm.report.passed

    def test_constant_map(self, p2):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        Y = stone.discrete_topology(1, [0, 1])
        C = mo.interpolator_from_map(X, Y, (0, 0), [0, 1, 2, 3], [0, 1])
        assert C.rel == (3, 2, 2, 2)
        sm = mo.induced_stone_map(C)
        assert sm.mapping == (0, 0) and sm.report.passed

    def test_from_identity_map_is_containment(self, p2):
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        I = mo.interpolator_from_map(X, X, (0, 1), [0, 1, 2, 3], [0, 1, 2, 3])
        for i in range(4):
            for j in range(4):
                assert I.has(i, j) == (i & j == i)

    def test_continuity_checked(self):
        X = stone.topology_from_basis(2, [0b01, 0b11])  # point 1 not open alone
        Y = stone.discrete_topology(2, [0, 1, 2, 3])
        with pytest.raises(NotContinuous):
            mo.interpolator_from_map(X, Y, (0, 1), [0, 0b01, 0b11], [0, 1, 2, 3])

    def test_invalid_rejected(self, p2):
        with pytest.raises(NotInterpolator):
            mo.induced_stone_map(mo.Interpolator(p2, p2, (0, 0, 0, 0)))

    def test_functoriality(self):
        # pushing forward a composite equals composing the pushforwards
        lats = [B for B in small_structures(3) if axioms.is_basic_lattice(B)]
        p2 = None
        from orderbench import lab

        p2 = lab.make_family("powerset", 2)
        lats.append(p2)
        for B in lats:
            for C in lats:
                for R in all_valid_interpolators(B, C):
                    fR = mo.induced_stone_map(R)
                    assert fR.report.passed
                    for D in lats:
                        for S in all_valid_interpolators(C, D):
                            fS = mo.induced_stone_map(S)
                            fRS = mo.induced_stone_map(mo.compose_interpolators(R, S))
                            assert fRS.report.passed
                            assert fRS.mapping == tuple(
                                fS.mapping[t] for t in fR.mapping
                            )

    def test_round_trip_with_point_map(self):
        # a continuous map, its interpolator, and back: the induced Stone
        # map agrees with the original under the point-filter bijection
        X = stone.discrete_topology(2, [0, 1, 2, 3])
        famX = [0, 1, 2, 3]
        for f in ((0, 0), (0, 1), (1, 0), (1, 1)):
            R = mo.interpolator_from_map(X, X, f, famX, famX)
            sm = mo.induced_stone_map(R)
            S = stone.basis_to_structure(X, famX)
            ults = stone.enumerate_ultrafilters(S)
            for p in range(2):
                pf = stone.point_filter(X, famX, p)
                qf = stone.point_filter(X, famX, f[p])
                assert sm.mapping[ults.index(pf)] == ults.index(qf)


class TestInterpolatorFormat:
    def test_round_trip(self, tmp_path, p2):
        (tmp_path / "p2.json").write_text(dump_structure(p2))
        doc = {
            "from": "p2.json",
            "to": "p2.json",
            "pairs": [[x, y] for x in range(4) for y in bits(p2.prec[x])],
        }
        R = mo.load_interpolator(json.dumps(doc), tmp_path)
        assert R.rel == p2.prec

    def test_bad_shape(self, tmp_path):
        with pytest.raises(Exception):
            mo.load_interpolator('{"from": "x"}', tmp_path)

import json
from itertools import product

import pytest

import oracles
from conftest import small_structures
from orderbench import lab, tight as ti
from orderbench.core import bits, dump_structure, mask_from, full_mask, p0set
from orderbench.errors import (
    NotTightish,
    PreconditionFailed,
    ZeroNotPreserved,
)


class TestCovers:
    def test_lower_bounds(self, e0, c2):
        assert ti.lower_bounds(e0, 0b110) == 0b001
        assert ti.lower_bounds(e0, 0) == 0b111
        assert ti.lower_bounds(c2, 0b100) == 0b111

    def test_named_covers(self, e0):
        assert ti.covers(e0, 0, 0b110) is True
        assert ti.covers(e0, 0b010, 0b100) is False

    def test_reflexive_on_nonempty(self):
        for B in small_structures(4):
            for C in range(1, 1 << B.size):
                assert ti.covers(B, C, C)

    def test_matches_oracle(self, e0, c2, p2, w5):
        for B in (e0, c2, p2, w5):
            for C in range(1 << B.size):
                for D in range(1 << B.size):
                    assert ti.covers(B, C, D) == oracles.naive_covers(
                        B, set(bits(C)), set(bits(D))
                    )

    @staticmethod
    def _precsim_refl(B, C, D):
        # the cover-like subset relation of the derived order
        from orderbench.core import derived_relations, meets_preceq

        der = derived_relations(B)
        mp = meets_preceq(B)
        below = 0
        for c in bits(C):
            below |= der.preceq_down[c]
        target = 1 << B.zero
        for d in bits(D):
            target |= mp[d]
        return below & ~target == 0

    def test_order_theoretic_reformulations(self):
        # singletons cover exactly when they are cover-like related; on a
        # separative structure singleton covers are the order; on a meet
        # semilattice the left side collapses to the meet; on a
        # distributive lattice the right side collapses to the join
        from orderbench.core import lattice_tables, order_predicates

        for B in small_structures(4):
            preds = order_predicates(B)
            nsub = 1 << B.size
            for x in range(B.size):
                for D in range(nsub):
                    assert ti.covers(B, 1 << x, D) == self._precsim_refl(
                        B, 1 << x, D
                    ), (B.pairs(), x, D)
            if preds.holds("separative"):
                from orderbench.core import derived_relations

                der = derived_relations(B)
                for x in range(B.size):
                    for y in range(B.size):
                        assert ti.covers(B, 1 << x, 1 << y) == bool(
                            der.preceq[x] >> y & 1
                        )
            if preds.holds("meet_semilattice"):
                mt, _ = lattice_tables(B)
                for x in range(B.size):
                    for y in range(B.size):
                        for D in range(nsub):
                            assert ti.covers(B, 1 << x | 1 << y, D) == ti.covers(
                                B, 1 << mt[x][y], D
                            )
            if preds.holds("lattice") and preds.holds("distributive"):
                _, jt = lattice_tables(B)
                for C in range(nsub):
                    for x in range(B.size):
                        for y in range(B.size):
                            assert ti.covers(B, C, 1 << x | 1 << y) == ti.covers(
                                B, C, 1 << jt[x][y]
                            )

    def test_cover_versus_precsim_relationships(self):
        # the empty left side covers exactly when the whole carrier is
        # cover-like below; a nonempty cover-like set covers; covers absorb
        # cover-like extensions on the right
        from orderbench.core import full_mask

        for B in small_structures(4):
            nsub = 1 << B.size
            fm = full_mask(B.size)
            for D in range(nsub):
                assert ti.covers(B, 0, D) == self._precsim_refl(B, fm, D)
            for C in range(1, nsub):
                for D in range(nsub):
                    if self._precsim_refl(B, C, D):
                        assert ti.covers(B, C, D)
            for C in range(nsub):
                for E in range(nsub):
                    if not ti.covers(B, C, E):
                        continue
                    for D in range(nsub):
                        if self._precsim_refl(B, E, D):
                            assert ti.covers(B, C, D), (B.pairs(), C, E, D)


class TestMapProperties:
    def test_atoms_into_large_algebra(self, e0, p3):
        rep = ti.map_properties(ti.struct_map(e0, p3, (0, 1, 2)))
        assert rep.holds("tightish") is True
        assert rep.holds("tight") is False
        assert rep.holds("coinitial") is False
        assert rep.holds("representation") is True

    def test_atoms_into_matching_algebra(self, e0, p2):
        rep = ti.map_properties(ti.struct_map(e0, p2, (0, 1, 2)))
        assert rep.holds("tight") is True
        assert rep.holds("coinitial") is True

    def test_identity(self, p2):
        rep = ti.map_properties(ti.identity_map(p2))
        assert rep.holds("tight") and rep.holds("coinitial")

    def test_character_flag(self, e0):
        two = lab.make_family("powerset", 1)
        rep = ti.map_properties(ti.struct_map(e0, two, (0, 1, 1)))
        assert rep.holds("character") is True

    def test_zero_preservation(self, e0, p2):
        with pytest.raises(ZeroNotPreserved):
            ti.map_properties(ti.struct_map(e0, p2, (1, 1, 2)))

    def test_chain_of_implications(self):
        # tightish and coinitial imply tight; tight implies tightish; over
        # every map between enumerated structures of size <= 3 plus the
        # named four-element ones
        objs = small_structures(3) + [
            lab.make_family("powerset", 2),
            lab.make_family("diamond", 2),
        ]
        for B in objs:
            for A in objs:
                for assign in product(range(A.size), repeat=B.size - 1):
                    full = list(assign)
                    full.insert(B.zero, A.zero)
                    beta = ti.struct_map(B, A, tuple(full))
                    rep = ti.map_properties(beta)
                    if rep.holds("tightish") and rep.holds("coinitial"):
                        assert rep.holds("tight"), (B.pairs(), A.pairs(), full)
                    if rep.holds("tight"):
                        assert rep.holds("tightish")


class TestTightEquivalences:
    def test_atoms_clause_a(self, e0, p2):
        rep = ti.verify_tight_equivalences(ti.struct_map(e0, p2, (0, 1, 2)))
        assert rep.holds("tightish_matched_cover_tight") is True

    def test_identity_clause_c(self, p2):
        rep = ti.verify_tight_equivalences(ti.identity_map(p2))
        assert rep.holds("algebra_homomorphism") is True

    def test_swap_clause_c(self, p2):
        swap = ti.struct_map(p2, p2, (0, 2, 1, 3))
        rep = ti.verify_tight_equivalences(swap)
        assert rep.holds("algebra_homomorphism") is True

    def test_skipped_without_structure(self, e0, c2):
        rep = ti.verify_tight_equivalences(ti.struct_map(e0, c2, (0, 1, 1)))
        assert rep.holds("algebra_homomorphism") is None

    def test_all_clauses_over_small_maps(self):
        objs = [lab.make_family("antichain", 2), lab.make_family("powerset", 2),
                lab.make_family("chain", 2)]
        for B in objs:
            for A in objs:
                for assign in product(range(A.size), repeat=B.size - 1):
                    beta = ti.struct_map(B, A, tuple([A.zero] + list(assign)))
                    rep = ti.verify_tight_equivalences(beta)
                    assert rep.passed, (B.names, A.names, assign,
                                        [c.name for c in rep.failures()])


class TestAlexandroff:
    def test_chain_regularization(self, c2):
        ops = ti.alexandroff_ops(c2, 0b010)
        assert ops.closure == 0b110
        assert ops.regularize == 0b110

    def test_two_atoms_discrete(self, e0):
        assert ti.alexandroff_ops(e0, 0b010).regularize == 0b010

    def test_empty(self, p2):
        assert ti.alexandroff_ops(p2, 0).regularize == 0

    def test_matches_oracle(self, c2, p2, w5):
        for B in (c2, p2, w5):
            prime = full_mask(B.size) & ~(1 << B.zero)
            for Y in range(1 << B.size):
                if Y & ~prime:
                    continue
                ops = ti.alexandroff_ops(B, Y)
                cl, inte = oracles.naive_alexandroff(B, set(bits(Y)))
                assert ops.closure == mask_from(cl)
                assert ops.interior == mask_from(inte)
                assert ops.regularize == mask_from(
                    oracles.naive_regularize(B, set(bits(Y)))
                )

    def test_zero_rejected(self, c2):
        with pytest.raises(PreconditionFailed):
            ti.alexandroff_ops(c2, 0b001)


class TestRho:
    def test_chain_collapses(self, c2):
        assert ti.rho(c2, 1) == ti.rho(c2, 2) == 0b110
        assert ti.rho(c2, 0) == 0

    def test_two_atoms(self, e0):
        assert ti.rho(e0, 1) == 0b010

    def test_zero_always_empty_on_posets(self):
        from orderbench.core import antisymmetry_violation

        for B in small_structures(4):
            if antisymmetry_violation(B) is None:
                assert ti.rho(B, B.zero) == 0


class TestEnvelope:
    def test_two_atoms_envelope(self, e0, p2):
        S = ti.enveloping_algebra(e0)
        assert S.elements == (0, 0b010, 0b100, 0b110)
        assert S.as_p0set().prec == p2.prec

    def test_chain_envelope(self, c2):
        S = ti.enveloping_algebra(c2)
        assert S.elements == (0, 0b110)

    def test_powerset_embeds(self, p2):
        S = ti.enveloping_algebra(p2)
        assert len(S.elements) == 4
        assert len(set(S.rho_index)) == 4

    def test_tables_are_regular_closed(self):
        for B in small_structures(4):
            S = ti.enveloping_algebra(B)
            for m in S.elements:
                assert ti._regularize(B, m) == m
            k = len(S.elements)
            for i in range(k):
                for j in range(k):
                    assert S.elements[S.meet_t[i][j]] == S.elements[i] & S.elements[j]

    def test_finite_envelope_has_maximum(self):
        # the join of everything dominates each element, so the algebra is
        # a true Boolean algebra in the finite case
        for B in small_structures(4):
            S = ti.enveloping_algebra(B)
            top = S.top_index()
            assert all(m & ~S.elements[top] == 0 for m in S.elements)

    def test_principal_map_tight_and_open_map_tight(self):
        # the two stage maps compose to the principal embedding, which is
        # tight on every structure; checked through the cover equivalence
        for B in small_structures(4):
            assert ti.verify_fgrho(B).passed, B.pairs()

    def _alexandroff_family(self, B):
        """All punctured-carrier opens as an inclusion-ordered structure."""
        prime = full_mask(B.size) & ~(1 << B.zero)
        opens = [
            Y
            for Y in range(1 << B.size)
            if Y & ~prime == 0 and ti._alex_interior(B, Y) == Y
        ]
        opens.sort()
        pairs = [
            (i, j)
            for i, a in enumerate(opens)
            for j, b in enumerate(opens)
            if a & ~b == 0
        ]
        return opens, p0set(len(opens), 0, pairs)

    def test_stage_maps_tight_and_coinitial(self):
        # stage one: element to its punctured derived down-set, into the
        # open family; stage two: open to its regularization, into the
        # regular-open family.  Both tight and coinitial over structures
        # whose derived order is a partial order (elsewhere the embedding
        # does not even keep zero).  The exhaustive source sweep keeps this
        # at carrier four; the cover-equivalence suite extends the
        # composite much further.
        from orderbench.core import antisymmetry_violation, derived_relations

        for B in small_structures(4):
            if antisymmetry_violation(B) is not None:
                continue
            opens, O = self._alexandroff_family(B)
            der = derived_relations(B)
            prime = full_mask(B.size) & ~(1 << B.zero)
            stage1 = ti.struct_map(
                B,
                O,
                tuple(opens.index(der.preceq_down[x] & prime) for x in range(B.size)),
            )
            rep1 = ti.map_properties(stage1)
            assert rep1.holds("tight") and rep1.holds("coinitial"), B.pairs()

            if len(opens) <= 8:
                ros = [
                    Y
                    for Y in range(1 << B.size)
                    if Y & ~prime == 0 and ti._regularize(B, Y) == Y
                ]
                ros.sort()
                ro_pairs = [
                    (i, j)
                    for i, a in enumerate(ros)
                    for j, b in enumerate(ros)
                    if a & ~b == 0
                ]
                RO = p0set(len(ros), 0, ro_pairs)
                stage2 = ti.struct_map(
                    O, RO, tuple(ros.index(ti._regularize(B, Y)) for Y in opens)
                )
                rep2 = ti.map_properties(stage2)
                assert rep2.holds("tight") and rep2.holds("coinitial"), B.pairs()
                assert rep2.holds("representation"), B.pairs()

    def test_principal_embedding_tight(self):
        # the composite embedding itself, with the algebra as target; the
        # cover-equivalence suite extends this to size five and beyond
        from orderbench.core import antisymmetry_violation

        for B in small_structures(4):
            if antisymmetry_violation(B) is not None:
                continue
            S = ti.enveloping_algebra(B)
            rho_map = ti.struct_map(B, S.as_p0set(), S.rho_index)
            assert ti.map_properties(rho_map).holds("tight"), B.pairs()


class TestFgrho:
    def test_named(self, e0, c2, w5):
        assert ti.verify_fgrho(e0).passed
        assert ti.verify_fgrho(c2).passed
        assert ti.verify_fgrho(w5).passed


class TestFactorTight:
    def test_atom_isomorphism(self, e0, p2):
        beta = ti.struct_map(e0, p2, (0, 1, 2))
        pi = ti.factor_tight(beta)
        assert pi.source.size == 4
        assert pi.assignment == (0, 1, 2, 3)

    def test_factor_of_embedding_is_identity(self, e0):
        S = ti.enveloping_algebra(e0)
        rho_map = ti.struct_map(e0, S.as_p0set(), S.rho_index)
        pi = ti.factor_tight(rho_map)
        assert pi.assignment == tuple(range(len(S.elements)))

    def test_chain_to_two_element(self, c2):
        p1 = lab.make_family("powerset", 1)
        pi = ti.factor_tight(ti.struct_map(c2, p1, (0, 1, 1)))
        assert pi.assignment == (0, 1)

    def test_rejects_non_tightish(self, p2):
        # collapsing the atoms of the powerset onto one atom breaks a cover
        beta = ti.struct_map(p2, p2, (0, 1, 1, 1))
        with pytest.raises(NotTightish):
            ti.factor_tight(beta)

    def test_rejects_non_algebra_target(self, e0, d3):
        # every zero-preserving map out of the two-atom example is tightish,
        # and the diamond is not an algebra
        beta = ti.struct_map(e0, d3, (0, 1, 2))
        assert ti.map_properties(beta).holds("tightish")
        with pytest.raises(PreconditionFailed):
            ti.factor_tight(beta)

    def test_extension_order_independent(self, e0, p3):
        for assign in product(range(8), repeat=2):
            beta = ti.struct_map(e0, p3, (0,) + assign)
            if not ti.map_properties(beta).holds("tightish"):
                continue
            a = ti.factor_tight(beta, extension_order="asc").assignment
            b = ti.factor_tight(beta, extension_order="desc").assignment
            assert a == b

    def test_random_medium_sources(self, p2, p3):
        # exercise the meet/join closure and complement extensions on
        # larger envelopes than the exhaustive sweep reaches
        import random

        from orderbench.core import antisymmetry_violation

        rng = random.Random(3)
        factored = 0
        attempts = 0
        while factored < 40 and attempts < 4000:
            attempts += 1
            n = rng.choice((5, 6))
            B = lab.random_p0set(n, rng.getrandbits(32), rng.random() < 0.7,
                                 rng.uniform(0.1, 0.5))
            if antisymmetry_violation(B) is not None:
                continue
            A = p2 if rng.random() < 0.5 else p3
            assign = [A.zero] + [rng.randrange(A.size) for _ in range(n - 1)]
            beta = ti.struct_map(B, A, tuple(assign))
            if not ti.map_properties(beta).holds("tightish"):
                continue
            pi = ti.factor_tight(beta)
            S = ti.enveloping_algebra(B)
            assert all(
                pi.assignment[S.rho_index[x]] == beta.assignment[x]
                for x in range(n)
            )
            assert pi.assignment == ti.factor_tight(
                beta, extension_order="desc"
            ).assignment
            factored += 1
        assert factored == 40

    def test_wide_antichain_envelope(self):
        # seven disjoint atoms generate the full 128-element algebra
        B = lab.make_family("antichain", 7)
        S = ti.enveloping_algebra(B)
        assert len(S.elements) == 128
        assert len(S.atoms()) == 7
        from orderbench import spectrum as sp

        assert len(sp.tight_characters(B)) == 7


class TestNaturality:
    def test_square_commutes(self, e0, p2):
        beta = ti.struct_map(e0, p2, (0, 1, 2))
        _, rep = ti.naturality_square(beta)
        assert rep.passed

    def test_identity_functor(self, e0, c2, p2):
        for B in (e0, c2, p2):
            assert ti.functor_identity(B).passed

    def test_composition_functor(self, e0, p2):
        beta = ti.struct_map(e0, p2, (0, 1, 2))
        swap = ti.struct_map(p2, p2, (0, 2, 1, 3))
        assert ti.functor_composition(beta, swap).passed

    def test_rejects_non_tightish(self, p2):
        with pytest.raises(NotTightish):
            ti.naturality_square(ti.struct_map(p2, p2, (0, 1, 1, 1)))


class TestMapFormat:
    def test_round_trip(self, tmp_path, e0, p2):
        (tmp_path / "e0.json").write_text(dump_structure(e0))
        (tmp_path / "p2.json").write_text(dump_structure(p2))
        doc = json.dumps({"from": "e0.json", "to": "p2.json", "map": [0, 1, 2]})
        beta = ti.load_struct_map(doc, tmp_path)
        assert beta.assignment == (0, 1, 2)
        assert beta.source.prec == e0.prec

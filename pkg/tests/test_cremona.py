"""Cremona bases: detection, lattice maps, support graphs, involutions, realizations."""

from itertools import permutations

import pytest

from cremfan.cremona import (
    CremonaData,
    IntegerLinearMap,
    build_involution,
    crem_map,
    cremona_check,
    cremona_check_detail,
    enumerate_cremona_bases,
    flat_support_kind,
    indicator_map,
    realize,
    support_graph,
    two_basis_report,
)
from cremfan.errors import BudgetExceeded, InputError, InvariantError
from cremfan.fan import TropicalPoint, in_bergman_fan, nested_rays
from cremfan.field import Field
from cremfan.generators import coxeter_matroid, dowling_rank3, uniform
from cremfan.matroid import parallel_connection

from conftest import by_label

# The running example: the rank-3 arrangement fixture with basis {1, 2, 6}
# (0-based (0, 1, 5)) and its partner {2, 3, 5} (0-based (1, 2, 4)).
A3_BASES = [(0, 1, 5), (0, 3, 4), (1, 2, 4), (2, 3, 5)]
CREM_MATRIX_015 = (
    (0, 1, 0, 0, 0, 1),
    (1, 0, 0, 0, 0, 1),
    (1, 0, 1, 0, 0, 0),
    (0, 1, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 1),
    (1, 1, 0, 0, 0, 0),
)


class TestIntegerLinearMap:
    def test_rejects_non_square(self):
        with pytest.raises(InputError):
            IntegerLinearMap(((1, 0), (0, 1), (1, 1)))

    def test_apply_vector_checks_length(self):
        lm = IntegerLinearMap(((1, 0), (0, 1)))
        with pytest.raises(InputError):
            lm.apply_vector((1, 2, 3))

    def test_apply_canonicalizes(self):
        lm = IntegerLinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert lm.apply([5, 7, 5]).weights == (0, 2, 0)

    def test_one_multiple(self):
        ident = IntegerLinearMap(((1, 0), (0, 1)))
        assert ident.one_multiple() == 1
        doubled = IntegerLinearMap(((1, 1), (1, 1)))
        assert doubled.one_multiple() == 2
        uneven = IntegerLinearMap(((1, 0), (0, 0)))
        assert uneven.one_multiple() is None

    def test_quotient_and_lattice_iso(self):
        ident = IntegerLinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert ident.quotient_determinant() == 1
        assert ident.is_lattice_isomorphism
        collapsed = IntegerLinearMap(((1, 1), (1, 1)))
        assert collapsed.quotient_determinant() == 0
        assert not collapsed.is_lattice_isomorphism

    def test_column_is_image_of_basis_vector(self):
        lm = IntegerLinearMap(((0, 1), (1, 0)))
        assert lm.column(0) == (0, 1)
        assert lm.apply_vector((1, 0)) == (0, 1)


class TestIndicatorMap:
    def test_unassigned_elements_stay_fixed(self, a3):
        lm = indicator_map(a3, {0: {1, 2}})
        assert lm.column(0) == (0, 1, 1, 0, 0, 0)
        for e in range(1, 6):
            assert lm.column(e) == tuple(1 if i == e else 0 for i in range(6))

    def test_empty_assignment_is_identity(self, a3):
        lm = indicator_map(a3, {})
        assert lm.is_lattice_isomorphism
        assert lm.one_multiple() == 1

    def test_out_of_range_assignment(self, a3):
        with pytest.raises(InputError):
            indicator_map(a3, {0: {6}})
        with pytest.raises(InputError):
            indicator_map(a3, {9: {0}})


class TestCremonaCheck:
    def test_running_example_partition(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        assert data is not None
        assert data.basis == (0, 1, 5)
        assert {k: set(v) for k, v in data.partition.items()} == {
            (0, 1): {4},
            (0, 2): {3},
            (1, 2): {2},
        }
        assert {k: set(v) for k, v in data.corank_flats.items()} == {
            0: {1, 2, 5},
            1: {0, 3, 5},
            2: {0, 1, 4},
        }

    def test_partition_covers_complement_disjointly(self, a3):
        for b in A3_BASES:
            data = cremona_check(a3, b)
            seen: set[int] = set()
            for F in data.partition.values():
                assert not (seen & F)
                seen |= F
            assert seen == set(range(6)) - set(b)

    def test_pair_accessors(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        assert data.pair_flat(1, 0) == data.pair_flat(0, 1) == frozenset({4})
        assert data.pair_of(4) == (0, 1)
        assert data.pair_of(2) == (1, 2)
        with pytest.raises(InputError):
            data.pair_of(0)  # basis elements belong to no F-set
        assert data.basis_set() == frozenset({0, 1, 5})

    def test_non_cremona_basis_returns_none_with_reason(self, a3):
        # {0, 1, 2} is a basis of the fixture but cl{0, 1} already
        # contains 4 and cl{1, 2}... the F-sets fail to partition.
        assert a3.rank({0, 1, 2}) == 3
        assert cremona_check(a3, (0, 1, 2)) is None
        data, reason = cremona_check_detail(a3, (0, 1, 2))
        assert data is None
        assert isinstance(reason, str) and reason

    def test_good_basis_has_no_reason(self, a3):
        data, reason = cremona_check_detail(a3, (0, 1, 5))
        assert data is not None and reason is None

    def test_rejects_non_bases(self, a3):
        with pytest.raises(InputError):
            cremona_check(a3, (0, 1))  # wrong size
        with pytest.raises(InputError):
            cremona_check(a3, (0, 1, 4))  # dependent: 4 is on the line of 0, 1


class TestEnumerate:
    def test_fixture_has_four(self, a3):
        found = sorted(d.basis for d in enumerate_cremona_bases(a3))
        assert found == A3_BASES

    def test_uniform_rank_two_all_bases_qualify(self, u23):
        assert len(enumerate_cremona_bases(u23)) == 3
        assert len(enumerate_cremona_bases(uniform(2, 5))) == 10

    def test_fano_has_none(self, fano_m):
        assert enumerate_cremona_bases(fano_m) == []

    def test_b3_unique_coordinate_basis(self, b3):
        (data,) = enumerate_cremona_bases(b3)
        assert {b3.ground.label(e) for e in data.basis} == {"x1", "x2", "x3"}
        pair_labels = {
            frozenset(b3.ground.label(e) for e in F)
            for F in data.partition.values()
        }
        assert pair_labels == {
            frozenset({"x1+x2", "x1-x2"}),
            frozenset({"x1+x3", "x1-x3"}),
            frozenset({"x2+x3", "x2-x3"}),
        }

    def test_complete_graph_star_bases(self, k5):
        datas = enumerate_cremona_bases(k5)
        assert len(datas) == 5
        bases = [set(d.basis) for d in datas]
        # distinct stars pairwise share exactly the edge joining their centers
        for i in range(5):
            for j in range(i + 1, 5):
                assert len(bases[i] & bases[j]) == 1

    def test_budget(self):
        e6 = coxeter_matroid("E6")
        with pytest.raises(BudgetExceeded):
            enumerate_cremona_bases(e6, max_elements=20)

    def test_requires_simple(self, k4):
        contracted = k4.contract([0])  # contraction creates parallel edges
        with pytest.raises(InputError):
            enumerate_cremona_bases(contracted)


class TestCremMap:
    def test_running_example_matrix(self, a3):
        lm = crem_map(cremona_check(a3, (0, 1, 5)))
        assert lm.matrix == CREM_MATRIX_015
        assert lm.one_multiple() == 2
        assert lm.quotient_determinant() == 1
        assert lm.is_lattice_isomorphism

    def test_involutive_on_fan_points(self, a3):
        rays = nested_rays(a3)
        for data in enumerate_cremona_bases(a3):
            lm = crem_map(data)
            for ray in rays:
                p = TropicalPoint.indicator(ray.elements, a3.size)
                q = lm.apply(p)
                assert in_bergman_fan(a3, q)
                assert lm.apply(q) == p

    def test_broken_one_line_is_invariant_error(self):
        free2 = uniform(2, 2)
        broken = CremonaData(free2, (0, 1), {}, {0: frozenset({0}), 1: frozenset({0})})
        with pytest.raises(InvariantError, match="all-ones"):
            crem_map(broken)

    def test_broken_quotient_is_invariant_error(self):
        free2 = uniform(2, 2)
        # image of 1 is 2·1, but both columns coincide: determinant 0
        broken = CremonaData(
            free2, (0, 1), {}, {0: frozenset({0, 1}), 1: frozenset({0, 1})}
        )
        with pytest.raises(InvariantError, match="determinant"):
            crem_map(broken)

    def test_zero_columns_are_invariant_error(self):
        free2 = uniform(2, 2)
        broken = CremonaData(free2, (0, 1), {}, {0: frozenset(), 1: frozenset()})
        with pytest.raises(InvariantError, match="all-ones"):
            crem_map(broken)


class TestSupportGraph:
    def test_partner_basis_graph(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        g = support_graph(data, (1, 2, 4))
        assert g.vertices == (0, 1, 5)
        assert set(g.edges) == {(1, 5, 2), (0, 1, 4)}
        assert g.isolated == ()
        comps = g.components()
        assert len(comps) == 1
        vertices, edges = comps[0]
        assert vertices == frozenset({0, 1, 5})
        assert g.is_simple_graph
        assert g.star_center(vertices, edges) == 1

    def test_complement_is_a_triangle(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        g = support_graph(data, (2, 3, 4))
        assert g.vertices == (0, 1, 5)
        assert len(g.edges) == 3
        assert g.is_simple_graph
        assert len(g.components()) == 1
        # a triangle has no star center
        assert g.star_center(frozenset(g.vertices), g.edges) is None

    def test_basis_elements_are_isolated_vertices(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        g = support_graph(data, (0,))
        assert g.vertices == (0,)
        assert g.edges == ()
        assert g.isolated == (0,)
        assert len(g.components()) == 1

    def test_parallel_edges_are_not_simple(self, b3):
        (data,) = enumerate_cremona_bases(b3)
        both = data.pair_flat(0, 1)  # two elements sharing one F-set
        g = support_graph(data, both)
        assert len(g.edges) == 2
        assert not g.is_simple_graph


class TestFlatSupportKind:
    def test_three_kinds(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        assert flat_support_kind(data, {2, 3, 4}) == "non-basis"
        assert flat_support_kind(data, {1, 2, 5}) == "basis"
        assert flat_support_kind(data, {0, 2}) == "mixed"

    def test_non_basis_connected_flat_rank(self, a3):
        # For a flat avoiding the basis whose support graph is connected,
        # the rank is one less than the number of support vertices, the
        # graph is simple, and each F-set is hit at most once.
        data = cremona_check(a3, (0, 1, 5))
        F = a3.closure({2, 3, 4}).elements
        assert flat_support_kind(data, F) == "non-basis"
        g = support_graph(data, F)
        assert len(g.components()) == 1
        assert g.is_simple_graph
        assert a3.rank(F) == len(g.vertices) - 1 == 2
        for pair_set in data.partition.values():
            assert len(F & pair_set) <= 1


class TestTwoBasisReport:
    def test_all_ordered_pairs_pass(self, a3):
        datas = enumerate_cremona_bases(a3)
        for d1, d2 in permutations(datas, 2):
            rep = two_basis_report(a3, d1, d2)
            shared = set(d1.basis) & set(d2.basis)
            assert rep.component_count == len(shared)
            assert set(rep.intersection) == shared
            for comp in rep.components:
                assert comp.star and comp.simple
                assert comp.center in set(d2.basis)

    def test_identical_bases_give_isolated_stars(self, a3):
        data = cremona_check(a3, (0, 1, 5))
        rep = two_basis_report(a3, data, data)
        assert rep.component_count == 3
        assert set(rep.intersection) == {0, 1, 5}
        for comp in rep.components:
            assert comp.edges == ()
            assert comp.center in {0, 1, 5}

    def test_rejects_foreign_data(self, a3, b3):
        d_a3 = cremona_check(a3, (0, 1, 5))
        (d_b3,) = enumerate_cremona_bases(b3)
        with pytest.raises(InputError):
            two_basis_report(a3, d_a3, d_b3)


@pytest.fixture(scope="module")
def glued():
    Q = dowling_rank3("z2xz2")
    U = uniform(2, 3)
    return parallel_connection(Q, Q.ground.index_of("p1"), U, 0)


class TestDowlingGlue:
    def test_exactly_two_bases(self, glued):
        datas = enumerate_cremona_bases(glued)
        found = sorted(
            sorted(glued.ground.label(e) for e in d.basis) for d in datas
        )
        assert found == [["1", "p1", "p2", "p3"], ["2", "p1", "p2", "p3"]]

    def test_three_components_two_trivial(self, glued):
        d1, d2 = enumerate_cremona_bases(glued)
        rep = two_basis_report(glued, d1, d2)
        assert rep.component_count == 3
        assert sorted(glued.ground.label(e) for e in rep.intersection) == [
            "p1", "p2", "p3",
        ]
        sizes = sorted(len(c.vertices) for c in rep.components)
        assert sizes == [1, 1, 2]
        big = next(c for c in rep.components if len(c.vertices) == 2)
        assert glued.ground.label(big.center) == "p1"

    def test_realization_needs_single_shared_element(self, glued):
        d1, d2 = enumerate_cremona_bases(glued)
        with pytest.raises(InputError, match="b ∩ b\\*"):
            realize(glued, d1, d2, "Q")


class TestInvolution:
    def test_running_example_permutation(self, a3):
        d1 = cremona_check(a3, (0, 1, 5))
        d2 = cremona_check(a3, (1, 2, 4))
        phi = build_involution(a3, d1, d2)
        assert phi.forward == (4, 1, 5, 3, 0, 2)

    @pytest.mark.parametrize("spec", ["fixture", "A4"])
    def test_involutive_automorphism_swapping_bases(self, spec, a3):
        M = a3 if spec == "fixture" else coxeter_matroid("A4")
        datas = enumerate_cremona_bases(M)
        census = {
            r: set(f.elements for f in M.flats_of_rank(r))
            for r in range(1, M.full_rank())
        }
        for d1, d2 in permutations(datas, 2):
            phi = build_involution(M, d1, d2)
            assert phi.compose(phi).is_identity
            assert phi.image(d1.basis) == d2.basis_set()
            assert phi.image(d2.basis) == d1.basis_set()
            for r, flats in census.items():
                assert {phi.image(F) for F in flats} == flats

    def test_rejects_foreign_data(self, a3, b3):
        d_a3 = cremona_check(a3, (0, 1, 5))
        (d_b3,) = enumerate_cremona_bases(b3)
        with pytest.raises(InputError):
            build_involution(a3, d_a3, d_b3)


class TestRealize:
    def _pair(self, a3):
        return cremona_check(a3, (0, 1, 5)), cremona_check(a3, (1, 2, 4))

    def test_running_example_over_f2(self, a3):
        d1, d2 = self._pair(a3)
        r = realize(a3, d1, d2, "Fp:2")
        assert r.class_count == 1
        assert r.reindexed_basis == (1, 0, 5)  # shared element first
        f = Field.from_spec("Fp:2")
        expect = [
            (0, 1, 0), (1, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0), (0, 0, 1),
        ]
        assert r.vectors == tuple(tuple(f.coerce(x) for x in row) for row in expect)

    def test_running_example_over_q(self, a3):
        d1, d2 = self._pair(a3)
        r = realize(a3, d1, d2, "Q")
        expect = [
            (0, 1, 0), (1, 0, 0), (1, 0, -1), (0, 1, -1), (1, -1, 0), (0, 0, 1),
        ]
        f = Field.from_spec("Q")
        assert r.vectors == tuple(tuple(f.coerce(x) for x in row) for row in expect)

    def test_running_example_over_quadratic_field(self, a3):
        d1, d2 = self._pair(a3)
        r = realize(a3, d1, d2, "Qsqrt5")
        assert r.class_count == 1
        assert r.matroid.full_rank() == 3

    def test_realized_matroid_matches_census(self, a3):
        d1, d2 = self._pair(a3)
        r = realize(a3, d1, d2, "Q")
        for rk in range(1, 4):
            ours = {f.elements for f in a3.flats_of_rank(rk)}
            theirs = {f.elements for f in r.matroid.flats_of_rank(rk)}
            assert ours == theirs

    def test_star_bases_realize_over_small_fields(self):
        a4 = coxeter_matroid("A4")
        d1, d2, *_ = enumerate_cremona_bases(a4)
        for spec in ("Fp:2", "Fp:3"):
            r = realize(a4, d1, d2, spec)
            assert r.class_count == 1
            assert r.matroid.full_rank() == 4

    def test_field_must_have_enough_elements(self):
        u25 = uniform(2, 5)
        d1 = cremona_check(u25, (0, 1))
        d2 = cremona_check(u25, (1, 2))
        for small in ("Fp:2", "Fp:3"):
            with pytest.raises(InputError, match="at least"):
                realize(u25, d1, d2, small)
        for big in ("Fp:5", "Q"):
            r = realize(u25, d1, d2, big)
            assert r.class_count == 3
        f5 = Field.from_spec("Fp:5")
        r5 = realize(u25, d1, d2, f5)
        expect = [(0, 1), (1, 0), (1, 4), (1, 3), (1, 2)]
        assert r5.vectors == tuple(
            tuple(f5.coerce(x) for x in row) for row in expect
        )

    def test_accepts_field_instance(self, a3):
        d1, d2 = self._pair(a3)
        r = realize(a3, d1, d2, Field.from_spec("Fp:2"))
        assert r.field.spec == "Fp:2"

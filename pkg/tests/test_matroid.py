"""Rank oracles, flats, connectivity, minors, and isomorphism search."""

import itertools

import pytest

from cremfan.errors import BudgetExceeded, InputError
from cremfan.field import Field
from cremfan.generators import (
    complete_graph_matroid,
    coxeter_matroid,
    dowling_rank3,
    uniform,
)
from cremfan.matroid import (
    CircuitBackend,
    ElementBijection,
    Flat,
    LineBackend,
    Matroid,
    VectorBackend,
    automorphisms,
    find_isomorphism,
    parallel_connection,
)

from conftest import by_label


def all_subsets(M):
    for k in range(M.size + 1):
        yield from itertools.combinations(range(M.size), k)


class TestRankAxioms:
    def test_exhaustive_on_fixture(self, a3):
        ranks = {s: a3.rank(s) for s in all_subsets(a3)}
        assert ranks[()] == 0
        for s, r in ranks.items():
            assert 0 <= r <= len(s)  # normalization
        for s in ranks:
            for e in range(a3.size):
                if e in s:
                    continue
                bigger = tuple(sorted(s + (e,)))
                assert ranks[s] <= ranks[bigger] <= ranks[s] + 1  # unit increase
        for s1 in ranks:
            for s2 in ranks:
                union = tuple(sorted(set(s1) | set(s2)))
                inter = tuple(sorted(set(s1) & set(s2)))
                assert ranks[union] + ranks[inter] <= ranks[s1] + ranks[s2]

    def test_full_rank(self, a3, fano_m, u23):
        assert a3.full_rank() == 3
        assert fano_m.full_rank() == 3
        assert u23.full_rank() == 2

    def test_subset_validation(self, a3):
        with pytest.raises(InputError):
            a3.rank([0, 6])
        with pytest.raises(InputError):
            a3.rank([-1])


class TestClosureAndFlats:
    def test_closure_idempotent_extensive(self, a3):
        for s in all_subsets(a3):
            F = a3.closure(s)
            assert set(s) <= F.elements
            assert a3.closure(F.elements).elements == F.elements
            assert a3.rank(F.elements) == a3.rank(s)

    def test_is_flat(self, a3):
        assert a3.is_flat(a3.closure([0, 1]).elements)
        assert not a3.is_flat([0, 1])  # closure adds the third line element

    def test_flats_of_rank_counts(self, a3, fano_m):
        # rank-3 arrangement of 6 elements: 6 points, 7 lines (4 triple + 3
        # double), 1 plane
        assert len(a3.flats_of_rank(0)) == 1
        assert len(a3.flats_of_rank(1)) == 6
        assert len(a3.flats_of_rank(2)) == 7
        assert len(a3.flats_of_rank(3)) == 1
        # the 7-point plane: 7 points, 7 lines
        assert len(fano_m.flats_of_rank(1)) == 7
        assert len(fano_m.flats_of_rank(2)) == 7

    def test_fano_lines_are_triples(self, fano_m):
        lines = fano_m.flats_of_rank(2)
        assert all(len(L) == 3 for L in lines)
        # every pair of points lies on exactly one line
        cover = {}
        for L in lines:
            for pair in itertools.combinations(L.sorted(), 2):
                assert pair not in cover
                cover[pair] = L
        assert len(cover) == 21

    def test_flat_iteration_protocol(self, a3):
        F = a3.closure([0, 1])
        assert len(F) == 3
        assert set(F) == F.elements
        assert all(e in F for e in F.elements)


class TestBackends:
    def test_vector_backend_fields_agree_on_regular_matroid(self):
        # signed incidence columns of the 4-vertex complete graph are
        # totally unimodular: same matroid over Q and F2
        cols = [
            (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1),
            (0, 1, -1, 0), (0, 1, 0, -1), (0, 0, 1, -1),
        ]
        over_q = Matroid(VectorBackend(Field.from_spec("Q"), cols))
        over_f2 = Matroid(VectorBackend(Field.from_spec("Fp:2"), cols))
        for s in all_subsets(over_q):
            assert over_q.rank(s) == over_f2.rank(s)

    def test_line_backend_matches_vector_fano(self, fano_m):
        f2 = Field.from_spec("Fp:2")
        vecs = [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0),
                (1, 0, 1), (1, 1, 0), (1, 1, 1)]
        vector_fano = Matroid(VectorBackend(f2, vecs))
        iso = find_isomorphism(fano_m, vector_fano)
        assert iso is not None

    def test_line_backend_rejects_overlapping_lines(self):
        with pytest.raises(InputError):
            LineBackend(5, [(0, 1, 2), (0, 1, 3)])

    def test_circuit_backend_uniform(self, u23):
        assert u23.rank([0, 1]) == 2
        assert u23.rank([0, 1, 2]) == 2
        assert [sorted(c) for c in u23.circuits()] == [[0, 1, 2]]

    def test_circuits_of_fano(self, fano_m):
        cs = fano_m.circuits()
        sizes = sorted(len(c) for c in cs)
        assert sizes == [3] * 7 + [4] * 7

    def test_circuit_count_of_graphic(self, k4):
        # K4 has 3 triangles + ... no: 4 triangles and 3 four-cycles
        cs = k4.circuits()
        sizes = sorted(len(c) for c in cs)
        assert sizes == [3, 3, 3, 3, 4, 4, 4]


class TestConnectivity:
    def test_connected_small(self, a3, u23):
        assert a3.is_connected(range(a3.size))
        assert u23.is_connected(range(u23.size))

    def test_direct_sum_disconnected_small(self):
        q = Field.from_spec("Q")
        vecs = [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0),
                (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1)]
        M = Matroid(VectorBackend(q, vecs))
        assert not M.is_connected(range(6))
        assert M.is_connected([0, 1, 2])

    def test_direct_sum_disconnected_large_route(self):
        # 15 elements forces the circuit-graph route instead of the
        # exhaustive 2-partition search
        q = Field.from_spec("Q")
        b3 = coxeter_matroid("B3")
        left = [tuple(list(v) + [0, 0, 0]) for v in
                [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, -1, 0),
                 (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)]]
        right = [tuple([0, 0, 0] + list(v)) for v in
                 [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1),
                  (0, 1, -1)]]
        M = Matroid(VectorBackend(q, left + right))
        assert M.size == 15
        assert not M.is_connected(range(15))
        assert M.is_connected(range(9))
        assert b3.is_connected(range(9))

    def test_connected_flat_promotion(self, a3):
        F = a3.connected_flat([0, 1])
        assert F.elements == a3.closure([0, 1]).elements
        assert isinstance(F, Flat)
        assert F.connected is True
        # cl{0,2} is a trivial 2-point line: annotated as disconnected
        G = a3.connected_flat([0, 2])
        assert G.elements == frozenset({0, 2})
        assert G.connected is False

    def test_every_line_of_three_is_connected(self, a3):
        for L in a3.flats_of_rank(2):
            assert a3.is_connected(L.elements) == (len(L) >= 3)


class TestMinors:
    def test_restriction_rank_identity(self, a3):
        sub = [0, 2, 3, 5]
        R = a3.restrict(sub)
        assert R.size == 4
        for s in all_subsets(R):
            original = [sub[i] for i in s]
            assert R.rank(s) == a3.rank(original)

    def test_contraction_rank_identity(self, a3):
        C = a3.contract(0)
        assert C.size == a3.size - 1
        kept = [e for e in range(a3.size) if e != 0]
        for s in all_subsets(C):
            original = [kept[i] for i in s]
            assert C.rank(s) == a3.rank(original + [0]) - a3.rank([0])

    def test_contraction_creates_parallel_pairs(self, a3):
        C = a3.contract(0)
        assert not C.is_simple()
        S, quotient = C.simplify()
        assert S.is_simple()
        assert len(quotient) == C.size
        # the quotient map sends every element to its representative's index
        for e, img in enumerate(quotient):
            assert img is None or 0 <= img < S.size

    def test_simplify_drops_loops(self, u23):
        C = u23.contract([0, 1])  # contracting a basis: the rest are loops
        S, quotient = C.simplify()
        assert S.size == 0
        assert all(img is None for img in quotient)


class TestParallelConnection:
    def test_sizes_and_rank(self, u23, dowling_z2):
        M = parallel_connection(dowling_z2, 0, u23, 0)
        assert M.size == dowling_z2.size + u23.size - 1
        assert M.full_rank() == dowling_z2.full_rank() + u23.full_rank() - 1
        assert M.is_connected(range(M.size))

    def test_two_triangles(self, u23):
        M = parallel_connection(u23, 0, u23, 0)
        assert M.size == 5 and M.full_rank() == 3
        # circuits: both triangles and the 4-element symmetric difference
        sizes = sorted(len(c) for c in M.circuits())
        assert sizes == [3, 3, 4]

    def test_label_dedup(self, u23):
        M = parallel_connection(u23, 0, u23, 0)
        assert len(set(M.ground.labels)) == M.size


class TestIsomorphism:
    def test_b3_is_dowling_z2(self, b3, dowling_z2):
        iso = find_isomorphism(b3, dowling_z2)
        assert iso is not None
        # image of every flat is a flat of equal rank
        for k in range(1, 3):
            flats = {F.elements for F in b3.flats_of_rank(k)}
            images = {iso.image(F) for F in flats}
            assert images == {F.elements for F in dowling_z2.flats_of_rank(k)}

    def test_k4_is_dowling_trivial(self, k4):
        triv = dowling_rank3("z1")
        assert find_isomorphism(k4, triv) is not None

    def test_non_isomorphic(self, fano_m, u23):
        assert find_isomorphism(fano_m, uniform(3, 7)) is None
        assert find_isomorphism(u23, uniform(2, 4)) is None

    def test_automorphism_counts(self, b3, u23, fano_m, k4):
        assert len(automorphisms(u23)) == 6
        assert len(automorphisms(k4)) == 24
        assert len(automorphisms(b3)) == 24
        assert len(automorphisms(fano_m)) == 168

    def test_automorphisms_form_a_group(self, u23):
        auts = {a.forward for a in automorphisms(u23)}
        for a in automorphisms(u23):
            assert a.inverse().forward in auts
            for b in automorphisms(u23):
                assert a.compose(b).forward in auts

    def test_budget(self):
        e6 = coxeter_matroid("E6")
        with pytest.raises(BudgetExceeded):
            automorphisms(e6)


class TestElementBijection:
    def test_protocol(self):
        phi = ElementBijection((1, 2, 0))
        assert phi(0) == 1
        assert phi.image({0, 1}) == {1, 2}
        assert phi.inverse().forward == (2, 0, 1)
        assert phi.compose(phi.inverse()).is_identity
        ident = ElementBijection((0, 1, 2))
        assert ident.is_identity

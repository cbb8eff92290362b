"""Elimination kernels: compiled/pure agreement and correctness oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cremfan import _kernels_py as pure
from cremfan.field import Field, QuadSqrt5, matrix_rank
from cremfan.kernels import (
    ACTIVE_BACKEND,
    closure_int,
    closure_mod,
    closure_quad,
    rank_int,
    rank_mod,
    rank_quad,
)

try:
    from cremfan import _kernels as fast
except ImportError:
    fast = None


def test_active_backend_consistent():
    assert ACTIVE_BACKEND in ("cython", "pure")
    if fast is not None:
        assert ACTIVE_BACKEND == "cython"
    else:
        assert ACTIVE_BACKEND == "pure"


class TestIntKernel:
    def test_rank_known(self):
        assert rank_int([(1, 0), (0, 1), (1, 1)]) == 2
        assert rank_int([(2, 4), (1, 2)]) == 1
        assert rank_int([(0, 0)]) == 0
        assert rank_int([]) == 0

    def test_closure_known(self):
        rows = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
        r, cl = closure_int(rows, [0, 1])
        assert r == 2 and sorted(cl) == [0, 1, 2]
        r, cl = closure_int(rows, [3])
        assert r == 1 and cl == [3]

    def test_rank_matches_fraction_elimination(self):
        q = Field.from_spec("Q")
        rows = [(3, -1, 2), (6, -2, 4), (0, 1, 1), (3, 0, 3)]
        coerced = [[q.coerce(x) for x in r] for r in rows]
        assert rank_int(rows) == matrix_rank(coerced) == 2


class TestModKernel:
    def test_rank_depends_on_p(self):
        rows = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]
        assert rank_mod(rows, 2) == 2   # rows sum to zero mod 2
        assert rank_mod(rows, 3) == 3

    def test_closure(self):
        rows = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]
        r, cl = closure_mod(rows, 2, [0, 2])
        assert r == 2 and sorted(cl) == [0, 1, 2]


class TestQuadKernel:
    def test_rank_uses_sqrt5_relation(self):
        # rows are (a, b) pairs per coordinate: v1 = (1, w), v2 = (w, 5):
        # v2 = w*v1, so rank 1
        rows = [(1, 0, 0, 1), (0, 1, 5, 0)]
        assert rank_quad(rows) == 1
        assert rank_quad([(1, 0, 0, 0), (0, 0, 1, 0)]) == 2

    def test_closure(self):
        rows = [(1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (1, 0, 1, 0, 0, 0),
                (0, 0, 0, 0, 1, 0)]
        r, cl = closure_quad(rows, [0, 1])
        assert r == 2 and sorted(cl) == [0, 1, 2]

    def test_agrees_with_field_layer(self):
        f = Field.from_spec("Qsqrt5")
        w = QuadSqrt5(0, 1)
        vecs = [[f.coerce(1), w, f.coerce(0)],
                [w, f.coerce(5), f.coerce(0)],
                [f.coerce(0), f.coerce(1), w]]
        flat = [tuple(x for v in row for x in (v.a.numerator, v.b.numerator))
                for row in vecs]
        assert rank_quad(flat) == matrix_rank(vecs) == 2


matrices = st.lists(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5),
    min_size=1,
    max_size=7,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


@pytest.mark.skipif(fast is None, reason="compiled kernels unavailable")
class TestFastPureEquivalence:
    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_rank_int(self, rows):
        rows = [tuple(r) for r in rows]
        assert fast.rank_int(rows) == pure.rank_int(rows)

    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_closure_int(self, rows):
        rows = [tuple(r) for r in rows]
        subset = list(range(0, len(rows), 2))
        assert fast.closure_int(rows, subset) == pure.closure_int(rows, subset)

    @given(matrices, st.sampled_from([2, 3, 5, 7]))
    @settings(max_examples=150, deadline=None)
    def test_rank_mod(self, rows, p):
        rows = [tuple(x % p for x in r) for r in rows]
        assert fast.rank_mod(rows, p) == pure.rank_mod(rows, p)

    @given(matrices, st.sampled_from([2, 3, 5, 7]))
    @settings(max_examples=150, deadline=None)
    def test_closure_mod(self, rows, p):
        rows = [tuple(x % p for x in r) for r in rows]
        subset = list(range(0, len(rows), 2))
        assert fast.closure_mod(rows, p, subset) == pure.closure_mod(rows, p, subset)

    @given(matrices.filter(lambda rows: len(rows[0]) % 2 == 0))
    @settings(max_examples=150, deadline=None)
    def test_rank_quad(self, rows):
        rows = [tuple(r) for r in rows]
        assert fast.rank_quad(rows) == pure.rank_quad(rows)

    @given(matrices.filter(lambda rows: len(rows[0]) % 2 == 0))
    @settings(max_examples=150, deadline=None)
    def test_closure_quad(self, rows):
        rows = [tuple(r) for r in rows]
        subset = list(range(0, len(rows), 2))
        assert fast.closure_quad(rows, subset) == pure.closure_quad(rows, subset)

    @given(matrices)
    @settings(max_examples=100, deadline=None)
    def test_rank_int_matches_fraction_oracle(self, rows):
        q = Field.from_spec("Q")
        coerced = [[q.coerce(x) for x in r] for r in rows]
        assert fast.rank_int([tuple(r) for r in rows]) == matrix_rank(coerced)

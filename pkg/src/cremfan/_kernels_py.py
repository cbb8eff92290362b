"""Pure-Python exact elimination kernels.

The same six entry points exist in the compiled extension ``_kernels``; this
module is the fallback twin, slower but with unbounded integers (it therefore
never needs the overflow guard of the compiled path).

Conventions shared by both implementations:

* integer matrices are sequences of equal-length int tuples (row vectors);
* ``*_quad`` variants take Z[sqrt5] rows flattened pairwise as
  ``(a0, b0, a1, b1, ...)`` meaning ``a + b*sqrt5`` per coordinate;
* ``*_mod`` variants take residue rows and the prime modulus;
* ``closure_*`` echelonizes the rows named by ``subset`` (index list) and
  returns ``(rank, members)`` with ``members`` the sorted indices of *all*
  rows lying in the subset's span.

Rank uses Bareiss two-step elimination: every intermediate value is a minor
of the input, and the division by the previous pivot is exact over any
integral domain, so Z and Z[sqrt5] rows need no field arithmetic.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


def _echelon_int(mat: list[list[int]], ncols: int):
    """In-place Bareiss echelon. Returns (rank, pivots).

    pivots is a list of (column, frozen pivot row, pivot value); divisor
    chain for later reductions is 1, p1, p2, ...
    """
    pivots = []
    prev = 1
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        row_r = mat[r]
        pivot = row_r[c]
        for i in range(r + 1, nrows):
            row_i = mat[i]
            vc = row_i[c]
            for j in range(ncols):
                row_i[j] = (pivot * row_i[j] - vc * row_r[j]) // prev
        pivots.append((c, tuple(row_r), pivot))
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r, pivots


def _reduces_to_zero_int(vec, pivots, ncols: int) -> bool:
    v = list(vec)
    prev = 1
    for c, row, pivot in pivots:
        vc = v[c]
        for j in range(ncols):
            v[j] = (pivot * v[j] - vc * row[j]) // prev
        prev = pivot
    return not any(v)


def rank_int(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0])
    r, _ = _echelon_int([list(r) for r in rows], ncols)
    return r


def closure_int(rows, subset) -> tuple[int, list[int]]:
    rows = list(rows)
    ncols = len(rows[0]) if rows else 0
    mat = [list(rows[i]) for i in subset]
    rank, pivots = _echelon_int(mat, ncols)
    members = [
        i for i, row in enumerate(rows) if _reduces_to_zero_int(row, pivots, ncols)
    ]
    return rank, members


# -- Z[sqrt5]: coordinates are (a, b) pairs at flat positions 2j, 2j+1 -------


def _echelon_quad(mat: list[list[int]], npairs: int):
    pivots = []
    pa, pb = 1, 0  # previous pivot, starts at 1
    r = 0
    nrows = len(mat)
    for c in range(npairs):
        ca = 2 * c
        pr = None
        for i in range(r, nrows):
            if mat[i][ca] or mat[i][ca + 1]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        row_r = mat[r]
        va, vb = row_r[ca], row_r[ca + 1]
        pn = pa * pa - 5 * pb * pb  # norm of previous pivot (divisor)
        for i in range(r + 1, nrows):
            row_i = mat[i]
            ua, ub = row_i[ca], row_i[ca + 1]
            for j in range(npairs):
                ja = 2 * j
                xa, xb = row_i[ja], row_i[ja + 1]
                ya, yb = row_r[ja], row_r[ja + 1]
                # pivot*x - u*y, then exact division by prev = (pa, pb)
                ta = va * xa + 5 * vb * xb - (ua * ya + 5 * ub * yb)
                tb = va * xb + vb * xa - (ua * yb + ub * ya)
                # multiply by conjugate of prev and divide by its norm
                row_i[ja] = (ta * pa - 5 * tb * pb) // pn
                row_i[ja + 1] = (tb * pa - ta * pb) // pn
        pivots.append((c, tuple(row_r), va, vb))
        pa, pb = va, vb
        r += 1
        if r == nrows:
            break
    return r, pivots


def _reduces_to_zero_quad(vec, pivots, npairs: int) -> bool:
    v = list(vec)
    pa, pb = 1, 0
    for c, row, va, vb in pivots:
        ca = 2 * c
        ua, ub = v[ca], v[ca + 1]
        pn = pa * pa - 5 * pb * pb
        for j in range(npairs):
            ja = 2 * j
            xa, xb = v[ja], v[ja + 1]
            ya, yb = row[ja], row[ja + 1]
            ta = va * xa + 5 * vb * xb - (ua * ya + 5 * ub * yb)
            tb = va * xb + vb * xa - (ua * yb + ub * ya)
            v[ja] = (ta * pa - 5 * tb * pb) // pn
            v[ja + 1] = (tb * pa - ta * pb) // pn
        pa, pb = va, vb
    return not any(v)


def rank_quad(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    npairs = len(rows[0]) // 2
    r, _ = _echelon_quad([list(r) for r in rows], npairs)
    return r


def closure_quad(rows, subset) -> tuple[int, list[int]]:
    rows = list(rows)
    npairs = (len(rows[0]) // 2) if rows else 0
    mat = [list(rows[i]) for i in subset]
    rank, pivots = _echelon_quad(mat, npairs)
    members = [
        i for i, row in enumerate(rows) if _reduces_to_zero_quad(row, pivots, npairs)
    ]
    return rank, members


# -- F_p ---------------------------------------------------------------------


def _echelon_mod(mat: list[list[int]], ncols: int, p: int):
    """Row-reduce mod p; pivot rows are normalized to leading 1."""
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        row_r = mat[r]
        for i in range(r + 1, nrows):
            f = mat[i][c] % p
            if f:
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], row_r)]
        pivots.append((c, tuple(row_r)))
        r += 1
        if r == nrows:
            break
    return r, pivots


def _reduces_to_zero_mod(vec, pivots, ncols: int, p: int) -> bool:
    v = [x % p for x in vec]
    for c, row in pivots:
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return not any(v)


def rank_mod(rows, p: int) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0])
    r, _ = _echelon_mod([list(r) for r in rows], ncols, p)
    return r


def closure_mod(rows, p: int, subset) -> tuple[int, list[int]]:
    rows = list(rows)
    ncols = len(rows[0]) if rows else 0
    mat = [list(rows[i]) for i in subset]
    rank, pivots = _echelon_mod(mat, ncols, p)
    members = [
        i for i, row in enumerate(rows) if _reduces_to_zero_mod(row, pivots, ncols, p)
    ]
    return rank, members

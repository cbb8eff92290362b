# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact elimination kernels (int64 fast path).

Twin of ``_kernels_py`` with identical entry points. Before running, each
call computes a Hadamard-style bound on every minor that Bareiss elimination
can produce; if int64 overflow cannot be excluded the call raises
``OverflowError`` and the dispatcher reroutes it to the pure twin.
Division is C-truncated, which is safe because every Bareiss division is
exact.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "cython"

# squared-minor limits: int path needs 2*B^2 < 2^63, the Z[sqrt5] path has a
# cubic intermediate (conjugate multiply), needing ~9.5*B^3 < 2^63
DEF INT_B2_LIMIT = 2305843009213693952  # 2^61
DEF QUAD_B2_LIMIT = 810_000_000_000     # (9e5)^2


def _sumsq_int(row):
    cdef object s = 0
    for x in row:
        s += x * x
    return s


def _sumsq_quad(row):
    # squared N-norm per coordinate pair, N(a,b) = |a| + 3|b| >= both real
    # embeddings of a + b*sqrt5
    cdef object s = 0
    cdef Py_ssize_t j
    for j in range(0, len(row), 2):
        n = abs(row[j]) + 3 * abs(row[j + 1])
        s += n * n
    return s


def _guard(rows, subset, int width, object sumsq, object limit, bint candidates):
    """Raise OverflowError unless all relevant minors provably fit."""
    sums = sorted((sumsq(rows[i]) for i in subset), reverse=True)
    k = min(len(subset), width)
    b2 = 1
    for s in sums[:k]:
        b2 *= s
        if b2 > limit:
            raise OverflowError("kernel bound exceeded")
    if candidates:
        m = 1
        for r in rows:
            s = sumsq(r)
            if s > m:
                m = s
        b2 *= m
    if b2 > limit:
        raise OverflowError("kernel bound exceeded")


cdef long long* _alloc(Py_ssize_t n) except NULL:
    cdef long long* p = <long long*> malloc(n * sizeof(long long))
    if p == NULL:
        raise MemoryError()
    return p


cdef int _ech_int(long long* m, int nr, int nc, int* pivcol, long long* pivval):
    cdef int r = 0, c, i, j, pr
    cdef long long prev = 1, pivot, vc, tmp
    cdef long long *rowr
    cdef long long *rowi
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if m[i * nc + c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(nc):
                tmp = m[r * nc + j]
                m[r * nc + j] = m[pr * nc + j]
                m[pr * nc + j] = tmp
        rowr = m + r * nc
        pivot = rowr[c]
        for i in range(r + 1, nr):
            rowi = m + i * nc
            vc = rowi[c]
            for j in range(nc):
                rowi[j] = (pivot * rowi[j] - vc * rowr[j]) // prev
        pivcol[r] = c
        pivval[r] = pivot
        prev = pivot
        r += 1
        if r == nr:
            break
    return r


cdef bint _zero_int(long long* v, long long* mat, int* pivcol,
                    long long* pivval, int rank, int nc):
    cdef int k, j, c
    cdef long long prev = 1, pivot, vc
    cdef long long* rowk
    for k in range(rank):
        c = pivcol[k]
        pivot = pivval[k]
        rowk = mat + k * nc
        vc = v[c]
        for j in range(nc):
            v[j] = (pivot * v[j] - vc * rowk[j]) // prev
        prev = pivot
    for j in range(nc):
        if v[j] != 0:
            return False
    return True


def rank_int(rows):
    rows = list(rows)
    if not rows:
        return 0
    cdef int nr = len(rows), nc = len(rows[0]), i, j, r
    if nc == 0:
        return 0
    _guard(rows, range(nr), nc, _sumsq_int, INT_B2_LIMIT, False)
    cdef long long* m = _alloc(nr * nc)
    cdef int* pivcol = <int*> malloc(nr * sizeof(int))
    cdef long long* pivval = _alloc(nr)
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc):
                m[i * nc + j] = row[j]
        r = _ech_int(m, nr, nc, pivcol, pivval)
    finally:
        free(m)
        free(pivcol)
        free(pivval)
    return r


def closure_int(rows, subset):
    rows = list(rows)
    subset = list(subset)
    if not rows:
        return 0, []
    cdef int total = len(rows), nc = len(rows[0]), ns = len(subset)
    cdef int i, j, rank
    _guard(rows, subset, nc, _sumsq_int, INT_B2_LIMIT, True)
    cdef long long* mat = _alloc((ns if ns else 1) * nc)
    cdef int* pivcol = <int*> malloc((ns if ns else 1) * sizeof(int))
    cdef long long* pivval = _alloc(ns if ns else 1)
    cdef long long* v = _alloc(nc)
    members = []
    try:
        for i in range(ns):
            row = rows[subset[i]]
            for j in range(nc):
                mat[i * nc + j] = row[j]
        rank = _ech_int(mat, ns, nc, pivcol, pivval) if ns else 0
        for i in range(total):
            row = rows[i]
            for j in range(nc):
                v[j] = row[j]
            if _zero_int(v, mat, pivcol, pivval, rank, nc):
                members.append(i)
    finally:
        free(mat)
        free(pivcol)
        free(pivval)
        free(v)
    return rank, members


# -- Z[sqrt5] ----------------------------------------------------------------

cdef int _ech_quad(long long* m, int nr, int npairs, int* pivcol,
                   long long* pivA, long long* pivB):
    cdef int r = 0, c, i, j, pr, ca, ja, nc2 = 2 * npairs
    cdef long long pa = 1, pb = 0, va, vb, ua, ub, xa, xb, ya, yb, ta, tb, pn, tmp
    cdef long long *rowr
    cdef long long *rowi
    for c in range(npairs):
        ca = 2 * c
        pr = -1
        for i in range(r, nr):
            if m[i * nc2 + ca] != 0 or m[i * nc2 + ca + 1] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(nc2):
                tmp = m[r * nc2 + j]
                m[r * nc2 + j] = m[pr * nc2 + j]
                m[pr * nc2 + j] = tmp
        rowr = m + r * nc2
        va = rowr[ca]
        vb = rowr[ca + 1]
        pn = pa * pa - 5 * pb * pb
        for i in range(r + 1, nr):
            rowi = m + i * nc2
            ua = rowi[ca]
            ub = rowi[ca + 1]
            for j in range(npairs):
                ja = 2 * j
                xa = rowi[ja]
                xb = rowi[ja + 1]
                ya = rowr[ja]
                yb = rowr[ja + 1]
                ta = va * xa + 5 * vb * xb - (ua * ya + 5 * ub * yb)
                tb = va * xb + vb * xa - (ua * yb + ub * ya)
                rowi[ja] = (ta * pa - 5 * tb * pb) // pn
                rowi[ja + 1] = (tb * pa - ta * pb) // pn
        pivcol[r] = c
        pivA[r] = va
        pivB[r] = vb
        pa = va
        pb = vb
        r += 1
        if r == nr:
            break
    return r


cdef bint _zero_quad(long long* v, long long* mat, int* pivcol, long long* pivA,
                     long long* pivB, int rank, int npairs):
    cdef int k, j, ca, ja, nc2 = 2 * npairs
    cdef long long pa = 1, pb = 0, va, vb, ua, ub, xa, xb, ya, yb, ta, tb, pn
    cdef long long* rowk
    for k in range(rank):
        ca = 2 * pivcol[k]
        va = pivA[k]
        vb = pivB[k]
        rowk = mat + k * nc2
        ua = v[ca]
        ub = v[ca + 1]
        pn = pa * pa - 5 * pb * pb
        for j in range(npairs):
            ja = 2 * j
            xa = v[ja]
            xb = v[ja + 1]
            ya = rowk[ja]
            yb = rowk[ja + 1]
            ta = va * xa + 5 * vb * xb - (ua * ya + 5 * ub * yb)
            tb = va * xb + vb * xa - (ua * yb + ub * ya)
            v[ja] = (ta * pa - 5 * tb * pb) // pn
            v[ja + 1] = (tb * pa - ta * pb) // pn
        pa = va
        pb = vb
    for j in range(nc2):
        if v[j] != 0:
            return False
    return True


def rank_quad(rows):
    rows = list(rows)
    if not rows:
        return 0
    cdef int nr = len(rows), nc2 = len(rows[0]), i, j, r
    cdef int npairs = nc2 // 2
    if npairs == 0:
        return 0
    _guard(rows, range(nr), npairs, _sumsq_quad, QUAD_B2_LIMIT, False)
    cdef long long* m = _alloc(nr * nc2)
    cdef int* pivcol = <int*> malloc(nr * sizeof(int))
    cdef long long* pivA = _alloc(nr)
    cdef long long* pivB = _alloc(nr)
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc2):
                m[i * nc2 + j] = row[j]
        r = _ech_quad(m, nr, npairs, pivcol, pivA, pivB)
    finally:
        free(m)
        free(pivcol)
        free(pivA)
        free(pivB)
    return r


def closure_quad(rows, subset):
    rows = list(rows)
    subset = list(subset)
    if not rows:
        return 0, []
    cdef int total = len(rows), nc2 = len(rows[0]), ns = len(subset)
    cdef int npairs = nc2 // 2
    cdef int i, j, rank
    _guard(rows, subset, npairs, _sumsq_quad, QUAD_B2_LIMIT, True)
    cdef long long* mat = _alloc((ns if ns else 1) * nc2)
    cdef int* pivcol = <int*> malloc((ns if ns else 1) * sizeof(int))
    cdef long long* pivA = _alloc(ns if ns else 1)
    cdef long long* pivB = _alloc(ns if ns else 1)
    cdef long long* v = _alloc(nc2)
    members = []
    try:
        for i in range(ns):
            row = rows[subset[i]]
            for j in range(nc2):
                mat[i * nc2 + j] = row[j]
        rank = _ech_quad(mat, ns, npairs, pivcol, pivA, pivB) if ns else 0
        for i in range(total):
            row = rows[i]
            for j in range(nc2):
                v[j] = row[j]
            if _zero_quad(v, mat, pivcol, pivA, pivB, rank, npairs):
                members.append(i)
    finally:
        free(mat)
        free(pivcol)
        free(pivA)
        free(pivB)
        free(v)
    return rank, members


# -- F_p ---------------------------------------------------------------------

cdef inline long long _canon(long long x, long long p):
    # canonical residue in [0, p); C % truncates toward zero
    x = x % p
    return x + p if x < 0 else x


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid on canonical residues; a is nonzero mod the prime p
    cdef long long t = 0, newt = 1, r = p, newr = _canon(a, p), q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    return _canon(t, p)


cdef int _ech_mod(long long* m, int nr, int nc, long long p, int* pivcol):
    # all stored entries are canonical residues throughout
    cdef int r = 0, c, i, j, pr
    cdef long long inv, f, tmp
    cdef long long *rowr
    cdef long long *rowi
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if m[i * nc + c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(nc):
                tmp = m[r * nc + j]
                m[r * nc + j] = m[pr * nc + j]
                m[pr * nc + j] = tmp
        rowr = m + r * nc
        inv = _inv_mod(rowr[c], p)
        for j in range(nc):
            rowr[j] = rowr[j] * inv % p
        for i in range(r + 1, nr):
            rowi = m + i * nc
            f = rowi[c]
            if f != 0:
                for j in range(nc):
                    rowi[j] = _canon(rowi[j] - f * rowr[j], p)
        pivcol[r] = c
        r += 1
        if r == nr:
            break
    return r


cdef bint _zero_mod(long long* v, long long* mat, int* pivcol, int rank,
                    int nc, long long p):
    cdef int k, j, c
    cdef long long f
    cdef long long* rowk
    for k in range(rank):
        c = pivcol[k]
        f = v[c]
        if f != 0:
            rowk = mat + k * nc
            for j in range(nc):
                v[j] = _canon(v[j] - f * rowk[j], p)
    for j in range(nc):
        if v[j] != 0:
            return False
    return True


def rank_mod(rows, p):
    rows = list(rows)
    if not rows:
        return 0
    if p >= (1 << 31):
        raise OverflowError("kernel bound exceeded")
    cdef int nr = len(rows), nc = len(rows[0]), i, j, r
    cdef long long pp = p
    if nc == 0:
        return 0
    cdef long long* m = _alloc(nr * nc)
    cdef int* pivcol = <int*> malloc(nr * sizeof(int))
    try:
        for i in range(nr):
            row = rows[i]
            for j in range(nc):
                m[i * nc + j] = row[j] % p
        r = _ech_mod(m, nr, nc, pp, pivcol)
    finally:
        free(m)
        free(pivcol)
    return r


def closure_mod(rows, p, subset):
    rows = list(rows)
    subset = list(subset)
    if not rows:
        return 0, []
    if p >= (1 << 31):
        raise OverflowError("kernel bound exceeded")
    cdef int total = len(rows), nc = len(rows[0]), ns = len(subset)
    cdef int i, j, rank
    cdef long long pp = p
    cdef long long* mat = _alloc((ns if ns else 1) * nc)
    cdef int* pivcol = <int*> malloc((ns if ns else 1) * sizeof(int))
    cdef long long* v = _alloc(nc)
    members = []
    try:
        for i in range(ns):
            row = rows[subset[i]]
            for j in range(nc):
                mat[i * nc + j] = row[j] % p
        rank = _ech_mod(mat, ns, nc, pp, pivcol) if ns else 0
        for i in range(total):
            row = rows[i]
            for j in range(nc):
                v[j] = row[j] % p
            if _zero_mod(v, mat, pivcol, rank, nc, pp):
                members.append(i)
    finally:
        free(mat)
        free(pivcol)
        free(v)
    return rank, members

# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernel: the same two entry points as ``pure``, faster.

``snf_summary`` runs the same sparse unit-pivot elimination as the pure
backend with compiled loops, then finishes the residue with dense 64-bit
elimination; any risk of overflow falls back to exact arbitrary-precision
arithmetic, so results are always exact.  ``scan_moves`` packs vertex sets
into 64-bit masks when the complex has at most 64 vertices and otherwise
falls back.  Outputs are identical to the pure backend entry for entry.
"""

import heapq

from libc.stdlib cimport free, malloc
from libc.string cimport memset

from . import pure

BACKEND = "speed"

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define PLM_POPCOUNT(x) __builtin_popcountll((unsigned long long)(x))
    #else
    static int PLM_POPCOUNT(unsigned long long x)
    { int c = 0; while (x) { x &= x - 1; c++; } return c; }
    #endif
    """
    int PLM_POPCOUNT(unsigned long long x) nogil

cdef long long MAGNITUDE_LIMIT = (<long long> 1) << 61


class _Overflow(Exception):
    """Internal: 64-bit headroom exceeded; redo the call exactly."""


cdef inline long long _llabs(long long v) nogil:
    return -v if v < 0 else v


cdef long long _checked_mul(long long a, long long b):
    if a == 0 or b == 0:
        return 0
    if _llabs(a) > MAGNITUDE_LIMIT // _llabs(b):
        raise _Overflow()
    return a * b


cdef long long _checked_sub(long long a, long long b):
    cdef long long r = a - b
    if _llabs(r) > MAGNITUDE_LIMIT:
        raise _Overflow()
    return r


cdef _dense_snf(long long* mat, Py_ssize_t nrows, Py_ssize_t ncols):
    """(rank, factors) of the dense matrix, mirroring the pure routine."""
    cdef Py_ssize_t top = 0, i, j, bi, bj, k
    cdef long long v, p, q, best
    cdef bint found, restart
    cdef int rank = 0
    factors = []
    while top < nrows and top < ncols:
        # minimal nonzero entry of the trailing submatrix becomes the pivot
        found = False
        best = 0
        bi = bj = 0
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = mat[i * ncols + j]
                if v != 0 and (not found or _llabs(v) < _llabs(best)):
                    found = True
                    best = v
                    bi = i
                    bj = j
                    if _llabs(v) == 1:
                        break
            if found and _llabs(best) == 1:
                break
        if not found:
            break
        if bi != top:
            for k in range(ncols):
                mat[bi * ncols + k], mat[top * ncols + k] = (
                    mat[top * ncols + k],
                    mat[bi * ncols + k],
                )
        if bj != top:
            for k in range(nrows):
                mat[k * ncols + bj], mat[k * ncols + top] = (
                    mat[k * ncols + top],
                    mat[k * ncols + bj],
                )
        # clear the pivot row and column; a nonzero remainder becomes the
        # new, strictly smaller pivot, so this terminates
        while True:
            p = mat[top * ncols + top]
            restart = False
            for i in range(top + 1, nrows):
                v = mat[i * ncols + top]
                if v != 0:
                    q = v // p
                    for j in range(top, ncols):
                        mat[i * ncols + j] = _checked_sub(
                            mat[i * ncols + j], _checked_mul(q, mat[top * ncols + j])
                        )
                    if mat[i * ncols + top] != 0:
                        for k in range(ncols):
                            mat[i * ncols + k], mat[top * ncols + k] = (
                                mat[top * ncols + k],
                                mat[i * ncols + k],
                            )
                        restart = True
                        break
            if restart:
                continue
            for j in range(top + 1, ncols):
                v = mat[top * ncols + j]
                if v != 0:
                    q = v // p
                    for i in range(top, nrows):
                        mat[i * ncols + j] = _checked_sub(
                            mat[i * ncols + j], _checked_mul(q, mat[i * ncols + top])
                        )
                    if mat[top * ncols + j] != 0:
                        for k in range(nrows):
                            mat[k * ncols + j], mat[k * ncols + top] = (
                                mat[k * ncols + top],
                                mat[k * ncols + j],
                            )
                        restart = True
                        break
            if not restart:
                break
        # enforce divisibility of everything below-right by the pivot
        p = _llabs(mat[top * ncols + top])
        found = False
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if mat[i * ncols + j] % p != 0:
                    found = True
                    break
            if found:
                break
        if found:
            for j in range(top, ncols):
                mat[top * ncols + j] = _checked_sub(
                    mat[top * ncols + j], -mat[i * ncols + j]
                )
            continue
        rank += 1
        if p > 1:
            factors.append(p)
        top += 1
    return rank, factors


def _finish_residue(rows):
    """(extra rank, factors) of whatever the unit-pivot phase left behind.

    The residue is small and has no unit entries; run the compiled dense
    routine in 64-bit arithmetic, or exact Python arithmetic when any value
    is or becomes too large for the headroom guard."""
    live_rows = sorted(rows)
    live_cols = sorted({j for row in rows.values() for j in row})
    col_pos = {j: a for a, j in enumerate(live_cols)}
    cdef Py_ssize_t nr = len(live_rows), nc = len(live_cols)
    cdef long long* mat = <long long*> malloc(max(nr * nc, 1) * sizeof(long long))
    cdef Py_ssize_t a
    if mat == NULL:
        raise MemoryError()
    try:
        memset(mat, 0, max(nr * nc, 1) * sizeof(long long))
        for a, i in enumerate(live_rows):
            for j, v in rows[i].items():
                if not (-MAGNITUDE_LIMIT < v < MAGNITUDE_LIMIT):
                    raise _Overflow()
                mat[a * nc + col_pos[j]] = v
        return _dense_snf(mat, nr, nc)
    except _Overflow:
        dense = [[0] * nc for _ in range(nr)]
        for a, i in enumerate(live_rows):
            for j, v in rows[i].items():
                dense[a][col_pos[j]] = v
        return pure._dense_snf_factors(dense)
    finally:
        free(mat)


def snf_summary(entries, nrows, ncols):
    """Smith normal form summary of a sparse integer matrix; see the pure
    backend for the contract, mirrored here with compiled loops."""
    rows = {}
    cols = {}
    for item in entries:
        oi = item[0]
        oj = item[1]
        v = item[2]
        if v == 0:
            continue
        if not (0 <= oi < nrows and 0 <= oj < ncols):
            raise ValueError(
                "entry (%d, %d) outside a %dx%d matrix" % (oi, oj, nrows, ncols)
            )
        row = rows.get(oi)
        if row is None:
            row = {}
            rows[oi] = row
        if oj in row:
            raise ValueError("duplicate entry at (%d, %d)" % (oi, oj))
        row[oj] = v
        col = cols.get(oj)
        if col is None:
            col = set()
            cols[oj] = col
        col.add(oi)

    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t cost, actual
    heap = []
    for i, row in rows.items():
        for j, v in row.items():
            if v == 1 or v == -1:
                heapq.heappush(heap, ((len(row) - 1) * (len(cols[j]) - 1), i, j))

    while heap:
        cost, i, j = heapq.heappop(heap)
        row = rows.get(i)
        if row is None:
            continue
        v = row.get(j)
        if v is None or (v != 1 and v != -1):
            continue
        actual = (len(row) - 1) * (len(cols[j]) - 1)
        if actual > cost:
            heapq.heappush(heap, (actual, i, j))
            continue
        # pivot at (i, j): clear column j, then drop row i and column j
        for i2 in list(cols[j]):
            if i2 == i:
                continue
            row2 = rows[i2]
            f = row2[j] * v  # multiplier, since 1/v == v for v = +-1
            for j2, v2 in row.items():
                cur = row2.get(j2, 0) - f * v2
                if cur:
                    had = j2 in row2
                    row2[j2] = cur
                    if not had:
                        cols[j2].add(i2)
                    if cur == 1 or cur == -1:
                        heapq.heappush(
                            heap, ((len(row2) - 1) * (len(cols[j2]) - 1), i2, j2)
                        )
                elif j2 in row2:
                    del row2[j2]
                    cols[j2].discard(i2)
            if not row2:
                del rows[i2]
        for j2 in row:
            cols[j2].discard(i)
            if not cols[j2]:
                del cols[j2]
        del rows[i]
        rank += 1

    if not rows:
        return rank, ()
    extra_rank, factors = _finish_residue(rows)
    return rank + extra_rank, tuple(factors)


cdef _mask_to_tuple(unsigned long long mask, list verts):
    out = []
    cdef int i = 0
    while mask:
        if mask & 1:
            out.append(verts[i])
        mask >>= 1
        i += 1
    return tuple(out)


def scan_moves(facets):
    """Bistellar move candidates on a pure complex; see the pure backend for
    the contract.  Vertex sets ride in 64-bit masks."""
    if not facets:
        return []
    vert_set = set()
    for f in facets:
        vert_set.update(f)
    if len(vert_set) > 64 or len(facets[0]) > 32:
        return pure.scan_moves(facets)
    verts = sorted(vert_set)
    index = {v: i for i, v in enumerate(verts)}

    cdef Py_ssize_t size = len(facets[0])
    cdef unsigned long long fm, sm, am, union_mask, rest
    cdef unsigned long long[32] bit
    cdef Py_ssize_t s, n, code, k
    cdef int m

    star = {}
    facet_masks = []
    for f in facets:
        if len(f) != size:
            raise ValueError("scan_moves needs a pure complex")
        fm = 0
        s = 0
        for v in f:
            bit[s] = (<unsigned long long> 1) << index[v]
            fm |= bit[s]
            s += 1
        facet_masks.append(fm)
        # every nonempty subset of the facet indexes its star entry
        n = ((<Py_ssize_t> 1) << s) - 1
        for code in range(1, n + 1):
            sm = 0
            for k in range(s):
                if code & ((<Py_ssize_t> 1) << k):
                    sm |= bit[k]
            entry = star.get(sm)
            if entry is None:
                star[sm] = [fm]
            else:
                entry.append(fm)

    boundary = set()
    if size > 1:
        for key, cofacets in star.items():
            sm = key
            if PLM_POPCOUNT(sm) == size - 1 and len(cofacets) == 1:
                # proper subsets of a boundary ridge are boundary simplices
                s = 0
                for k in range(64):
                    if sm & ((<unsigned long long> 1) << k):
                        bit[s] = (<unsigned long long> 1) << k
                        s += 1
                n = ((<Py_ssize_t> 1) << s) - 1
                for code in range(1, n):
                    rest = 0
                    for k in range(s):
                        if code & ((<Py_ssize_t> 1) << k):
                            rest |= bit[k]
                    boundary.add(rest)
                boundary.add(sm)

    out = []
    for key in star:
        am = key
        if key in boundary:
            continue
        cofacets = star[key]
        if PLM_POPCOUNT(am) == size:
            out.append((_mask_to_tuple(am, verts), None))
            continue
        union_mask = 0
        link = set()
        for fmask in cofacets:
            fm = fmask
            rest = fm & ~am
            link.add(rest)
            union_mask |= rest
        m = <int> size - PLM_POPCOUNT(am)
        if PLM_POPCOUNT(union_mask) != m + 1 or len(link) != m + 1:
            continue
        if union_mask in star:
            continue
        out.append((_mask_to_tuple(am, verts), _mask_to_tuple(union_mask, verts)))
    out.sort(key=_first)
    return out


def _first(pair):
    return pair[0]

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels in 64-bit arithmetic.

Same contracts as ``_pure``.  Every product and sum is overflow-checked;
on overflow ``OverflowError`` is raised and the dispatcher reruns the call
on the arbitrary-precision kernels.  Inputs are never mutated.
"""

import heapq

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(i64 a, i64 b, i64 *res) nogil
    bint sub_ovf "__builtin_sub_overflow"(i64 a, i64 b, i64 *res) nogil
    bint add_ovf "__builtin_add_overflow"(i64 a, i64 b, i64 *res) nogil


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 pymod(i64 a, i64 b) nogil:
    cdef i64 r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef inline i64 iabs(i64 a) nogil:
    return -a if a < 0 else a


cdef inline int axpy(i64 *dst, i64 *src, i64 q, Py_ssize_t n) nogil:
    """dst -= q * src; returns 1 on overflow."""
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(n):
        if src[k] != 0:
            if mul_ovf(q, src[k], &t) or sub_ovf(dst[k], t, &dst[k]):
                return 1
    return 0


cdef inline bint row_nonzero(i64 *row, Py_ssize_t n) nogil:
    cdef Py_ssize_t k
    for k in range(n):
        if row[k] != 0:
            return True
    return False


cdef class _Dense:
    """Row-pointer matrix over a single buffer."""
    cdef i64 *buf
    cdef i64 **rows
    cdef Py_ssize_t nrows, ncols

    def __cinit__(self, rows, Py_ssize_t ncols):
        cdef Py_ssize_t i, j, m = 0
        cdef list kept = [r for r in rows if any(r)]
        m = len(kept)
        self.nrows = m
        self.ncols = ncols
        self.buf = <i64 *> malloc(max(m * ncols, 1) * sizeof(i64))
        self.rows = <i64 **> malloc(max(m, 1) * sizeof(i64 *))
        if self.buf == NULL or self.rows == NULL:
            raise MemoryError()
        for i in range(m):
            self.rows[i] = self.buf + i * ncols
            r = kept[i]
            for j in range(ncols):
                self.rows[i][j] = r[j]  # OverflowError for entries beyond int64

    def __dealloc__(self):
        free(self.buf)
        free(self.rows)

    cdef void drop_zero_rows(self):
        cdef Py_ssize_t i, k = 0
        for i in range(self.nrows):
            if row_nonzero(self.rows[i], self.ncols):
                self.rows[k] = self.rows[i]
                k += 1
        self.nrows = k

    cdef list to_lists(self, Py_ssize_t nrows):
        cdef Py_ssize_t i, j
        return [[self.rows[i][j] for j in range(self.ncols)] for i in range(nrows)]


def diagonalize(rows, ncols):
    cdef _Dense D = _Dense(rows, ncols)
    cdef list out = []
    cdef Py_ssize_t i, j, k, cc, bi, bj, n
    cdef i64 p, q, a, best, x
    cdef i64 *piv
    cdef i64 *rk
    cdef i64 *tmp
    while D.nrows > 0:
        n = D.ncols
        bi = -1
        best = 0
        for k in range(D.nrows):
            for cc in range(n):
                x = D.rows[k][cc]
                if x != 0 and (bi < 0 or iabs(x) < best):
                    bi, bj, best = k, cc, iabs(x)
                    if best == 1:
                        break
            if bi >= 0 and best == 1:
                break
        if bi < 0:
            break
        i, j = bi, bj
        while True:
            p = D.rows[i][j]
            piv = D.rows[i]
            bi = -1
            for k in range(D.nrows):
                rk = D.rows[k]
                if k == i or rk[j] == 0:
                    continue
                q = floordiv(rk[j], p)
                if q != 0 and axpy(rk, piv, q, n):
                    raise OverflowError("int64 overflow in diagonalize")
                if rk[j] != 0:
                    a = iabs(rk[j])
                    if bi < 0 or a < best:
                        bi, best = k, a
            if bi >= 0:
                i = bi
                continue
            bi = -1
            for cc in range(n):
                if cc != j and piv[cc] != 0:
                    piv[cc] = pymod(piv[cc], p)
                    if piv[cc] != 0:
                        a = iabs(piv[cc])
                        if bi < 0 or a < best:
                            bi, best = cc, a
            if bi >= 0:
                j = bi
                continue
            break
        out.append(iabs(D.rows[i][j]))
        # drop row i (last row moves into its slot) and column j
        D.rows[i] = D.rows[D.nrows - 1]
        D.nrows -= 1
        for k in range(D.nrows):
            D.rows[k][j] = D.rows[k][n - 1]
        D.ncols -= 1
        D.drop_zero_rows()
    return out


def hermite_rows(rows, ncols):
    cdef _Dense D = _Dense(rows, ncols)
    cdef Py_ssize_t n = ncols, r = 0, c, k, kk, bk
    cdef i64 p, q, x, best
    cdef i64 *tmp
    cdef bint again
    for c in range(n):
        if r == D.nrows:
            break
        while True:
            bk = -1
            for k in range(r, D.nrows):
                x = D.rows[k][c]
                if x != 0 and (bk < 0 or iabs(x) < best):
                    bk, best = k, iabs(x)
            if bk < 0:
                break
            tmp = D.rows[r]
            D.rows[r] = D.rows[bk]
            D.rows[bk] = tmp
            p = D.rows[r][c]
            again = False
            for kk in range(r + 1, D.nrows):
                x = D.rows[kk][c]
                if x != 0:
                    q = floordiv(x, p)
                    if axpy(D.rows[kk], D.rows[r], q, n):
                        raise OverflowError("int64 overflow in hermite_rows")
                    if D.rows[kk][c] != 0:
                        again = True
            if not again:
                break
        if r < D.nrows and D.rows[r][c] != 0:
            if D.rows[r][c] < 0:
                for k in range(n):
                    D.rows[r][k] = -D.rows[r][k]
            p = D.rows[r][c]
            for kk in range(r):
                q = floordiv(D.rows[kk][c], p)
                if q != 0 and axpy(D.rows[kk], D.rows[r], q, n):
                    raise OverflowError("int64 overflow in hermite_rows")
            r += 1
            # drop zero rows below the pivot, keeping order
            k = r
            for kk in range(r, D.nrows):
                if row_nonzero(D.rows[kk], n):
                    D.rows[k] = D.rows[kk]
                    k += 1
            D.nrows = k
    return D.to_lists(r)


def eliminate_unit_pivots(rows, Py_ssize_t n_active):
    cdef list rs = [dict(x) for x in rows]
    cdef Py_ssize_t n_rows = len(rs), k, r, cnt, bc
    cdef dict col_rows = {}
    cdef dict row, target
    cdef i64 p, f, v, t, nv, old
    cdef list heap, pivots = []
    for k in range(n_rows):
        for c in rs[k]:
            s = col_rows.get(c)
            if s is None:
                col_rows[c] = s = set()
            s.add(k)
    heap = [(len(rs[k]), k) for k in range(n_active) if rs[k]]
    heapq.heapify(heap)
    alive = bytearray(b"\x01") * n_rows
    while heap:
        nnz, r = heapq.heappop(heap)
        row = rs[r]
        if not alive[r] or nnz != len(row):
            continue
        best = None
        for c, val in row.items():
            v = val
            if v == 1 or v == -1:
                cnt = len(<set> col_rows[c])
                if best is None or cnt < best[0] or (cnt == best[0] and c < best[1]):
                    best = (cnt, c)
        if best is None:
            continue
        c = best[1]
        p = row[c]
        alive[r] = 0
        for cc in row:
            (<set> col_rows[cc]).discard(r)
        items = [(cc, <i64> val) for cc, val in row.items()]
        for k in sorted(col_rows[c]):
            target = rs[k]
            old = target[c]
            f = old * p
            for cc, v in items:
                if mul_ovf(f, v, &t):
                    raise OverflowError("int64 overflow in eliminate_unit_pivots")
                got = target.get(cc)
                old = 0 if got is None else got
                if sub_ovf(old, t, &nv):
                    raise OverflowError("int64 overflow in eliminate_unit_pivots")
                if nv != 0:
                    if got is None:
                        (<set> col_rows[cc]).add(k)
                    target[cc] = nv
                elif got is not None:
                    del target[cc]
                    (<set> col_rows[cc]).discard(k)
            if k < n_active and target:
                heapq.heappush(heap, (len(target), k))
        del col_rows[c]
        rs[r] = {}
        pivots.append(c)
    active = [rs[k] for k in range(n_active) if alive[k] and rs[k]]
    return pivots, active, rs[n_active:]

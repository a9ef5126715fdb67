"""Pure-Python elimination kernels (arbitrary-precision ints).

These are the reference implementations.  The compiled module ``_fast``
exposes the same three functions; it works in 64-bit arithmetic and raises
``OverflowError`` when an entry would leave that range, in which case the
dispatcher reruns the call here.
"""

import heapq


def eliminate_unit_pivots(rows, n_active):
    """Eliminate every available +-1 pivot of a sparse integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts.  The first ``n_active``
    rows are relations and may serve as pivot rows; the remaining rows are
    passive: they are reduced by every pivot but never chosen as one.

    Eliminating a unit pivot at ``(r, c)`` is the quotient map
    ``Z^n / <row r>  ->  Z^(n-1)`` that drops column ``c``, so the cokernel of
    the active rows is unchanged (up to isomorphism) and passive rows follow
    along to their images in it.

    Returns ``(pivot_columns, active_rows, passive_rows)``; the returned rows
    never mention a pivot column, and zero active rows are discarded.
    """
    rows = [dict(r) for r in rows]
    n_rows = len(rows)
    col_rows = {}
    for k, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(k)

    heap = [(len(rows[k]), k) for k in range(n_active) if rows[k]]
    heapq.heapify(heap)
    alive = [True] * n_rows
    pivots = []

    while heap:
        nnz, r = heapq.heappop(heap)
        if not alive[r] or nnz != len(rows[r]):
            continue
        row = rows[r]
        best = None
        for c, v in row.items():
            if v == 1 or v == -1:
                cnt = len(col_rows[c])
                if best is None or cnt < best[0] or (cnt == best[0] and c < best[1]):
                    best = (cnt, c)
        if best is None:
            continue
        c = best[1]
        p = row[c]
        alive[r] = False
        for cc in row:
            col_rows[cc].discard(r)
        targets = sorted(col_rows[c])
        for k in targets:
            target = rows[k]
            f = target[c] * p
            for cc, v in row.items():
                nv = target.get(cc, 0) - f * v
                if nv:
                    if cc not in target:
                        col_rows[cc].add(k)
                    target[cc] = nv
                elif cc in target:
                    del target[cc]
                    col_rows[cc].discard(k)
            if k < n_active and target:
                heapq.heappush(heap, (len(target), k))
        del col_rows[c]
        rows[r] = {}
        pivots.append(c)

    active = [rows[k] for k in range(n_active) if alive[k] and rows[k]]
    passive = rows[n_active:]
    return pivots, active, passive


def _min_abs_entry(A):
    best = None
    bv = 0
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            if x:
                ax = x if x > 0 else -x
                if best is None or ax < bv:
                    best = (i, j)
                    bv = ax
                    if ax == 1:
                        return best
    return best


def diagonalize(rows, ncols):
    """Reduce a dense integer matrix to diagonal form by unimodular operations.

    Returns the absolute values of the nonzero diagonal entries, in pivot
    order.  The entries are *not* normalised to a divisibility chain; see
    ``delsarte.linalg.invariant_factors``.
    """
    A = [list(r) for r in rows if any(r)]
    out = []
    while A:
        pos = _min_abs_entry(A)
        if pos is None:
            break
        i, j = pos
        while True:
            p = A[i][j]
            piv = A[i]
            nz = [(cc, v) for cc, v in enumerate(piv) if v]
            rest = None
            for k, rk in enumerate(A):
                if k == i or not rk[j]:
                    continue
                q = rk[j] // p
                if q:
                    for cc, v in nz:
                        rk[cc] -= q * v
                if rk[j]:
                    a = rk[j] if rk[j] > 0 else -rk[j]
                    if rest is None or a < rest[0]:
                        rest = (a, k)
            if rest is not None:
                i = rest[1]
                continue
            # column j is clear below/above the pivot; column operations now
            # only touch row i
            rest = None
            for cc in range(len(piv)):
                if cc != j and piv[cc]:
                    piv[cc] %= p
                    if piv[cc]:
                        a = piv[cc] if piv[cc] > 0 else -piv[cc]
                        if rest is None or a < rest[0]:
                            rest = (a, cc)
            if rest is not None:
                j = rest[1]
                continue
            break
        out.append(abs(A[i][j]))
        last = A.pop()
        if i < len(A):
            A[i] = last
        for row in A:
            row[j] = row[-1]
            row.pop()
        A = [row for row in A if any(row)]
    return out


def hermite_rows(rows, ncols):
    """Row-style Hermite normal form of the row span (zero rows dropped).

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        while True:
            best = None
            for k in range(r, len(A)):
                x = A[k][c]
                if x:
                    ax = x if x > 0 else -x
                    if best is None or ax < best[0]:
                        best = (ax, k)
            if best is None:
                break
            k = best[1]
            A[r], A[k] = A[k], A[r]
            piv = A[r]
            p = piv[c]
            nz = [(cc, v) for cc, v in enumerate(piv) if v]
            again = False
            for kk in range(r + 1, len(A)):
                x = A[kk][c]
                if x:
                    q = x // p
                    row = A[kk]
                    for cc, v in nz:
                        row[cc] -= q * v
                    if row[c]:
                        again = True
            if not again:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r]
            p = piv[c]
            nz = [(cc, v) for cc, v in enumerate(piv) if v]
            for kk in range(r):
                x = A[kk][c]
                q = x // p
                if q:
                    row = A[kk]
                    for cc, v in nz:
                        row[cc] -= q * v
            r += 1
            A = A[:r] + [row for row in A[r:] if any(row)]
    return A[:r]

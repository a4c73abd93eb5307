"""Pure-Python integer elimination kernels.

Reference implementation of the routines in ``_ckernels.pyx``.  Both modules
expose the same two functions and must return identical results; matrices are
passed as lists of row lists of Python ints and are never modified in place.
"""


def bareiss_rank(rows, ncols):
    """Rank over Q of an integer matrix by fraction-free elimination.

    Columns without a pivot are skipped without touching the running divisor,
    so every intermediate entry stays a minor of the input and each division
    is exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if m[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        prow = m[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[col]
            if f == 0:
                if p != prev:
                    for j in range(col + 1, ncols):
                        row[j] = row[j] * p // prev
                continue
            for j in range(col + 1, ncols):
                row[j] = (row[j] * p - f * prow[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def row_hermite(rows, ncols):
    """Row Hermite normal form with its unimodular transform.

    Returns ``(H, T)`` with ``T @ M == H``.  Pivots of ``H`` are positive and
    entries above a pivot are reduced into ``[0, pivot)``.  Zero rows of ``H``
    sit at the bottom; the matching rows of ``T`` span the left kernel of M.
    """
    h = [list(r) for r in rows]
    nrows = len(h)
    t = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            best = -1
            best_abs = 0
            for i in range(r, nrows):
                v = h[i][col]
                if v != 0:
                    a = v if v > 0 else -v
                    if best < 0 or a < best_abs:
                        best = i
                        best_abs = a
            if best < 0:
                break
            if best != r:
                h[best], h[r] = h[r], h[best]
                t[best], t[r] = t[r], t[best]
            p = h[r][col]
            done = True
            for i in range(r + 1, nrows):
                v = h[i][col]
                if v == 0:
                    continue
                q = v // p
                hi, hr = h[i], h[r]
                for j in range(col, ncols):
                    hi[j] -= q * hr[j]
                ti, tr = t[i], t[r]
                for j in range(nrows):
                    ti[j] -= q * tr[j]
                if hi[col] != 0:
                    done = False
            if done:
                break
        if r < nrows and h[r][col] != 0:
            if h[r][col] < 0:
                h[r] = [-v for v in h[r]]
                t[r] = [-v for v in t[r]]
            p = h[r][col]
            for i in range(r):
                q = h[i][col] // p
                if q:
                    hi, hr = h[i], h[r]
                    for j in range(col, ncols):
                        hi[j] -= q * hr[j]
                    ti, tr = t[i], t[r]
                    for j in range(nrows):
                        ti[j] -= q * tr[j]
            r += 1
    return h, t

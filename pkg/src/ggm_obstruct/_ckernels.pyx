# cython: language_level=3
"""Compiled integer elimination kernels.

Same algorithms and outputs as ``_kernels_py``.  Entries stay Python ints
(arbitrary precision); the gain comes from typed loop indices and list access
without interpreter dispatch.
"""


def bareiss_rank(rows, Py_ssize_t ncols):
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t rank = 0, col, i, j, piv
    cdef list prow, row
    cdef object p, f, prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for i in range(rank, nrows):
            if (<list>m[i])[col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        prow = <list>m[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            row = <list>m[i]
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


def row_hermite(rows, Py_ssize_t ncols):
    cdef list h = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(h)
    cdef list t = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    cdef Py_ssize_t r = 0, col, i, j, best
    cdef bint done
    cdef object v, a, best_abs, p, q
    cdef list hi, hr, ti, tr
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            best = -1
            best_abs = 0
            for i in range(r, nrows):
                v = (<list>h[i])[col]
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
            hr = <list>h[r]
            tr = <list>t[r]
            p = hr[col]
            done = True
            for i in range(r + 1, nrows):
                hi = <list>h[i]
                v = hi[col]
                if v == 0:
                    continue
                q = v // p
                for j in range(col, ncols):
                    hi[j] = hi[j] - q * hr[j]
                ti = <list>t[i]
                for j in range(nrows):
                    ti[j] = ti[j] - q * tr[j]
                if hi[col] != 0:
                    done = False
            if done:
                break
        if r < nrows and (<list>h[r])[col] != 0:
            if (<list>h[r])[col] < 0:
                h[r] = [-v for v in <list>h[r]]
                t[r] = [-v for v in <list>t[r]]
            hr = <list>h[r]
            tr = <list>t[r]
            p = hr[col]
            for i in range(r):
                hi = <list>h[i]
                q = hi[col] // p
                if q:
                    for j in range(col, ncols):
                        hi[j] = hi[j] - q * hr[j]
                    ti = <list>t[i]
                    for j in range(nrows):
                        ti[j] = ti[j] - q * tr[j]
            r += 1
    return h, t

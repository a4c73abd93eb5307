"""Exact integer matrix primitives.

Everything here works on arbitrary-precision Python ints; no floating point
is involved anywhere.  Matrices are immutable :class:`IntMatrix` values.

Symmetric matrices are vectorized by their upper triangle, row-major, with the
diagonal included.  An off-diagonal entry is stored once, so
:func:`congruence_operator` carries the factor two of cross terms itself and
its coefficients stay integral.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .errors import NotSymmetric, NotUnimodular


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major in a flat tuple."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.data)} entries do not fit shape {self.rows}x{self.cols}"
            )
        object.__setattr__(self, "data", tuple(operator.index(x) for x in self.data))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls(k, k, tuple(1 if i == j else 0 for i in range(k) for j in range(k)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def block(self, r0: int, r1: int, c0: int, c1: int) -> IntMatrix:
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        return IntMatrix.from_rows(
            (self.row(i)[c0:c1] for i in range(r0, r1)), cols=max(c1 - c0, 0)
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.data[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum(map(operator.mul, r, c)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(self.rows, self.cols, tuple(map(operator.add, self.data, other.data)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same(other)
        return IntMatrix(self.rows, self.cols, tuple(map(operator.sub, self.data, other.data)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.data))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.data))

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def as_matrix(a) -> IntMatrix:
    """Coerce a nested sequence (or an IntMatrix) to an IntMatrix."""
    if isinstance(a, IntMatrix):
        return a
    return IntMatrix.from_rows(a)


def hstack(mats: Sequence[IntMatrix]) -> IntMatrix:
    rows = mats[0].rows
    return IntMatrix.from_rows(
        (sum((m.row(i) for m in mats), ()) for i in range(rows)),
        cols=sum(m.cols for m in mats),
    )


def vstack(mats: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
    if cols is None:
        cols = mats[0].cols
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        data.extend(m.data)
    return IntMatrix(sum(m.rows for m in mats), cols, tuple(data))


def rational_rank(a) -> int:
    """Rank of an integer matrix over the rationals (fraction-free Bareiss)."""
    a = as_matrix(a)
    if a.rows == 0 or a.cols == 0:
        return 0
    return _kernels.bareiss_rank(a.to_rows(), a.cols)


def determinant(a) -> int:
    a = as_matrix(a)
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    m = a.to_rows()
    sign, prev = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[piv], m[k] = m[k], m[piv]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * (m[n - 1][n - 1] if n else 1)


def hermite_form(a) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form ``H`` and unimodular ``T`` with ``T @ a == H``."""
    a = as_matrix(a)
    h, t = _kernels.row_hermite(a.to_rows(), a.cols)
    return IntMatrix.from_rows(h, cols=a.cols), IntMatrix.from_rows(t, cols=a.rows)


def unimodular_inverse(a) -> IntMatrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    a = as_matrix(a)
    if a.rows != a.cols:
        raise NotUnimodular(f"matrix of shape {a.shape} is not square")
    h, t = hermite_form(a)
    if h != IntMatrix.identity(a.rows):
        raise NotUnimodular(f"|det| = {abs(determinant(a))}, expected 1")
    return t


def integer_kernel_basis(a) -> IntMatrix:
    """Basis of the kernel lattice ``{x in Z^m : a x = 0}`` as matrix columns.

    The basis is primitive (it spans the full kernel lattice, not a finite
    index sublattice) and canonical: its transpose is in row Hermite normal
    form, so equal lattices give equal output.  Returns an ``m x k`` matrix
    with ``k = m - rank(a)``; ``k`` may be zero.
    """
    a = as_matrix(a)
    m = a.cols
    if m == 0:
        return IntMatrix.zeros(0, 0)
    h, t = hermite_form(a.T)
    rank = sum(1 for i in range(h.rows) if any(h.row(i)))
    kernel_rows = [t.row(i) for i in range(rank, m)]
    if not kernel_rows:
        return IntMatrix.zeros(m, 0)
    canon, _ = hermite_form(IntMatrix.from_rows(kernel_rows, cols=m))
    return canon.T


def sym_dim(m: int) -> int:
    """Length ``m(m+1)/2`` of the vectorization of an ``m x m`` symmetric matrix."""
    return m * (m + 1) // 2


def sym_side(length: int) -> int:
    m = 0
    while sym_dim(m) < length:
        m += 1
    if sym_dim(m) != length:
        raise ValueError(f"{length} is not a triangular number")
    return m


def sym_index(m: int) -> list[tuple[int, int]]:
    """Matrix positions ``(i, j)``, ``i <= j``, in vectorization order."""
    return [(i, j) for i in range(m) for j in range(i, m)]


def sym_vec(g) -> tuple:
    g = as_matrix(g)
    if not g.is_symmetric():
        raise NotSymmetric(f"matrix {g.to_rows()} is not symmetric")
    return tuple(g[i, j] for i, j in sym_index(g.rows))


def sym_unvec(v: Sequence[int]) -> IntMatrix:
    m = sym_side(len(v))
    out = [[0] * m for _ in range(m)]
    for x, (i, j) in zip(v, sym_index(m)):
        out[i][j] = out[j][i] = operator.index(x)
    return IntMatrix.from_rows(out, cols=m)


def congruence_operator(p) -> IntMatrix:
    """Matrix ``C`` with ``sym_vec(p.T @ G @ p) == C @ sym_vec(G)`` for symmetric ``G``."""
    p = as_matrix(p)
    if p.rows != p.cols:
        raise ValueError("congruence operator needs a square matrix")
    return congruence_rows(p)


def congruence_rows(p) -> IntMatrix:
    """Rectangular congruence operator for a non-square ``p`` (``r x s``).

    Maps ``sym_vec(G)`` for ``r x r`` symmetric ``G`` to ``sym_vec(p.T @ G @ p)``.
    """
    p = as_matrix(p)
    src = sym_index(p.rows)
    dst = sym_index(p.cols)
    out = []
    for i, j in dst:
        for k, l in src:
            if k == l:
                out.append(p[k, i] * p[k, j])
            else:
                out.append(p[k, i] * p[l, j] + p[l, i] * p[k, j])
    return IntMatrix(len(dst), len(src), tuple(out))

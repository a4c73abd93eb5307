"""Second obstruction: isometric gluing of fiber intersections (n > 3).

For a gluing ``w -> -w`` from block ``v`` to block ``v'`` write
``Psi_w = [[a, b], [c, d]]``.  The columns of a primitive kernel basis ``P``
of the row ``b`` span the lattice where the two fiber tori meet, and
``f_{-w} P = f_w d P`` there.  Isometry of that lattice gives

    P^T G_{v'} P - (d P)^T G_v (d P) = 0

with only the fiber Gram matrices ``G_v`` as unknowns.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DimensionTooSmall
from .exact_linalg import IntMatrix, congruence_rows, integer_kernel_basis, sym_dim, sym_index
from .manifold import Gluing, ValidatedManifold, split_blocks
from .systems import LinearSystem, RowBuilder


@dataclass(frozen=True)
class FiberIntersectionData:
    b: IntMatrix  # 1 x (n-2)
    d: IntMatrix  # (n-2) x (n-2)
    kernel: IntMatrix  # (n-2) x (n-3), b @ kernel == 0


def _require_ls2(n: int):
    if n <= 3:
        raise DimensionTooSmall(f"the second system needs dimension > 3, got {n}")


def fiber_kernel(psi, n: int) -> FiberIntersectionData:
    _require_ls2(n)
    blocks = split_blocks(psi)
    kernel = integer_kernel_basis(blocks.b)
    if kernel.cols != n - 3:
        raise ValueError(f"kernel of b has rank {kernel.cols}, expected {n - 3}")
    return FiberIntersectionData(blocks.b, blocks.d, kernel)


class FiberLayout:
    """Columns: the ``G_v`` entries of each block, in id order."""

    def __init__(self, m: ValidatedManifold):
        k = m.dimension - 2
        self.block_of = m.block_of
        self.start = {}
        names = []
        for blk in m.blocks:
            self.start[blk.id] = len(names)
            names += [f"G[{blk.id}]({i},{j})" for i, j in sym_index(k)]
        self.names = tuple(names)
        self.width = sym_dim(k)

    def __len__(self):
        return len(self.names)

    def columns(self, w: str) -> range:
        s = self.start[self.block_of[w]]
        return range(s, s + self.width)


def build_ls2(
    m: ValidatedManifold,
    kernel_change: Mapping[str, IntMatrix] | None = None,
    both_orientations: bool = False,
) -> LinearSystem:
    """Coefficient matrix of the second system, ``(n-3)(n-2)/2`` rows per pair.

    ``kernel_change`` maps a stored gluing source ``w`` to a unimodular
    ``U`` replacing ``P_w`` by ``P_w @ U``; ``both_orientations`` adds the
    rows of every reversed gluing.  Neither changes the solution set.
    """
    n = m.dimension
    _require_ls2(n)
    layout = FiberLayout(m)
    rows = RowBuilder(len(layout))
    gluings: list[Gluing] = list(m.pairs)
    if both_orientations:
        gluings += [g.reversed() for g in m.pairs]
    for g in gluings:
        data = fiber_kernel(g.psi, n)
        p = data.kernel
        if kernel_change and g.w in kernel_change:
            p = p @ kernel_change[g.w]
        target = congruence_rows(p)
        source = congruence_rows(data.d @ p)
        src_cols = layout.columns(g.w)
        dst_cols = layout.columns(g.minus_w)
        for s, (i, j) in enumerate(sym_index(n - 3)):
            terms = [(dst_cols[t], target[s, t]) for t in range(layout.width)]
            terms += [(src_cols[t], -source[s, t]) for t in range(layout.width)]
            rows.add(terms, f"glue {g.w}->{g.minus_w} ({i},{j})")
    return rows.build(layout.names)


def corank_c_prime(m: ValidatedManifold) -> int:
    return build_ls2(m).corank


def bound_c_prime(n: int, nV: int, nW: int) -> Fraction:
    """Lower bound for ``c'``: unknowns minus equations of the second system."""
    _require_ls2(n)
    return Fraction((n - 2) * (n - 1), 2) * nV - Fraction((n - 3) * (n - 2), 4) * nW

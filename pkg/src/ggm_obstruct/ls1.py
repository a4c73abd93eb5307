"""First obstruction: isometric gluing of the boundary-torus forms.

Unknowns are the Gram matrices of the flat forms on the boundary tori,

    G_w = [[x_w, l_w], [l_w^T, G_v]]    for w a boundary torus of block v,

where ``G_v`` (the form on the fiber) is shared by all tori of the block.
The system asks every gluing to be an isometry, ``G_{-w} = Psi_w^T G_w Psi_w``,
and every block to satisfy ``sum_w l_w = 0``.  A corank ``c <= 0`` rules out
a geometrization.
"""
from __future__ import annotations

from fractions import Fraction

from .exact_linalg import congruence_operator, sym_dim, sym_index
from .manifold import ValidatedManifold
from .systems import LinearSystem, RowBuilder


class GramLayout:
    """Column index of every scalar unknown of the first system.

    Order: ``G_v`` entries block by block (id order, upper triangle
    row-major), then for each torus in label order ``x_w`` followed by the
    entries of ``l_w``.
    """

    def __init__(self, m: ValidatedManifold):
        self.dimension = n = m.dimension
        self.block_of = m.block_of
        k = n - 2
        names = []
        self.fiber_start = {}
        for blk in m.blocks:
            self.fiber_start[blk.id] = len(names)
            names += [f"G[{blk.id}]({i},{j})" for i, j in sym_index(k)]
        self.torus_start = {}
        for w in m.all_tori:
            self.torus_start[w] = len(names)
            names.append(f"x[{w}]")
            names += [f"l[{w}][{i}]" for i in range(k)]
        self.names = tuple(names)
        self._fiber_pos = {ij: t for t, ij in enumerate(sym_index(k))}

    def __len__(self):
        return len(self.names)

    def l_index(self, w: str, i: int) -> int:
        return self.torus_start[w] + 1 + i

    def gram_indices(self, w: str) -> list[int]:
        """Column of each ``sym_vec`` coordinate of ``G_w``."""
        out = []
        g0 = self.fiber_start[self.block_of[w]]
        for i, j in sym_index(self.dimension - 1):
            if i == 0:
                out.append(self.torus_start[w] + j)
            else:
                out.append(g0 + self._fiber_pos[(i - 1, j - 1)])
        return out


def expected_variable_count(n: int, nV: int, ntori: int) -> int:
    return nV * sym_dim(n - 2) + ntori * (n - 1)


def build_ls1(m: ValidatedManifold, both_orientations: bool = False) -> LinearSystem:
    """Coefficient matrix of the first system.

    One block of ``n(n-1)/2`` equations per gluing pair (in stored
    orientation; ``both_orientations`` also adds the rows of the reversed
    gluing, which never changes the solution set) followed by ``n-2``
    equations per block.
    """
    layout = GramLayout(m)
    rows = RowBuilder(len(layout))
    n = m.dimension
    coords = sym_index(n - 1)
    gluings = list(m.pairs)
    if both_orientations:
        gluings += [g.reversed() for g in m.pairs]
    for g in gluings:
        c = congruence_operator(g.psi)
        src = layout.gram_indices(g.w)
        dst = layout.gram_indices(g.minus_w)
        for s, (i, j) in enumerate(coords):
            terms = [(dst[s], 1)]
            terms += [(src[t], -c[s, t]) for t in range(len(coords)) if c[s, t]]
            rows.add(terms, f"glue {g.w}->{g.minus_w} ({i},{j})")
    for blk in m.blocks:
        for i in range(n - 2):
            rows.add([(layout.l_index(w, i), 1) for w in blk.boundary], f"block {blk.id} l[{i}]")
    return rows.build(layout.names)


def corank_c(m: ValidatedManifold) -> int:
    return build_ls1(m).corank


def bound_c(n: int, nV: int, nW: int, nWd: int) -> Fraction:
    """Lower bound for ``c``: unknowns minus equations of the first system."""
    return (
        (n - 1) * nWd
        + Fraction((n - 2) * (n - 3), 2) * nV
        - Fraction((n - 1) * (n - 4), 4) * nW
    )

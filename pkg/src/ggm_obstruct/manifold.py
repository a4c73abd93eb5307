"""Combinatorial model of generalized graph manifolds.

A manifold of dimension ``n`` is given by its blocks ``T^{n-2} x S_v`` (base
surface genus plus labelled boundary tori) and by gluings between pairs of
boundary tori.  A gluing ``w -> -w`` carries the integer matrix ``Psi_w`` that
expresses the Waldhausen basis of ``T_{-w}`` in the basis of ``T_w``:

    (z_{-w}, f_{-w}) = (z_w, f_w) @ Psi_w

Coordinate 0 of a torus lattice is the section class ``z_w``; coordinates
``1..n-2`` are the fiber classes.  Basis vectors form a row and matrices act
on the right.  Only one orientation per gluing is stored; the reverse matrix
is the exact inverse.

Whether the user's section classes ``z_w`` jointly bound in each block is not
checked.  That is a property of the chosen bases inside ``H_1(M_v)`` and
cannot be seen from this input.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    BadDimension,
    BadEuler,
    DanglingLabel,
    DuplicateLabel,
    FiberIdentified,
    InvalidManifold,
    MalformedBasisChange,
    SchemaError,
)
from .exact_linalg import IntMatrix, as_matrix, determinant, unimodular_inverse


@dataclass(frozen=True)
class BlockSpec:
    id: str
    genus: int
    boundary: tuple

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)


@dataclass(frozen=True)
class GluingSpec:
    source: str
    target: str
    matrix: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))


@dataclass(frozen=True)
class ManifoldSpec:
    dimension: int
    blocks: tuple
    gluings: tuple
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "gluings", tuple(self.gluings))
        object.__setattr__(self, "notes", tuple(self.notes))


@dataclass(frozen=True)
class GluingBlocks:
    a: int
    b: IntMatrix  # 1 x (n-2)
    c: IntMatrix  # (n-2) x 1
    d: IntMatrix  # (n-2) x (n-2)

    def assemble(self) -> IntMatrix:
        k = self.d.rows
        rows = [[self.a, *self.b.row(0)]]
        rows += [[self.c[i, 0], *self.d.row(i)] for i in range(k)]
        return IntMatrix.from_rows(rows, cols=k + 1)


def split_blocks(psi) -> GluingBlocks:
    """Split ``psi`` into ``[[a, b], [c, d]]`` with ``a`` the (0, 0) entry."""
    psi = as_matrix(psi)
    if psi.rows != psi.cols or psi.rows < 2:
        raise ValueError(f"need a square matrix of side >= 2, got {psi.shape}")
    s = psi.rows
    return GluingBlocks(
        a=psi[0, 0],
        b=psi.block(0, 1, 1, s),
        c=psi.block(1, s, 0, 1),
        d=psi.block(1, s, 1, s),
    )


@dataclass(frozen=True)
class Gluing:
    """A validated gluing pair in its stored orientation ``w -> -w``."""

    w: str
    minus_w: str
    psi: IntMatrix
    psi_inv: IntMatrix

    def reversed(self) -> Gluing:
        return Gluing(self.minus_w, self.w, self.psi_inv, self.psi)


@dataclass(frozen=True)
class ValidatedManifold:
    spec: ManifoldSpec
    dimension: int
    blocks: tuple  # BlockSpec, sorted by id
    block_of: Mapping[str, str]
    gluing_tori: tuple  # W, sorted
    boundary_tori: tuple  # W_boundary, sorted
    pairs: tuple  # Gluing, sorted by (w, -w)

    @property
    def all_tori(self) -> tuple:
        return tuple(sorted(self.block_of))

    def matrix(self, w: str) -> IntMatrix:
        """``Psi_w`` for either orientation of a gluing."""
        for g in self.pairs:
            if g.w == w:
                return g.psi
            if g.minus_w == w:
                return g.psi_inv
        raise KeyError(w)

    def reoriented(self, labels=None) -> ValidatedManifold:
        """Same manifold with the gluings starting at ``labels`` stored reversed.

        ``labels=None`` reverses every gluing.
        """
        gl = []
        for g in self.spec.gluings:
            if labels is None or g.source in labels:
                g = GluingSpec(g.target, g.source, unimodular_inverse(g.matrix))
            gl.append(g)
        return validate(ManifoldSpec(self.spec.dimension, self.spec.blocks, gl, self.spec.notes))


def _check_fiber(psi: IntMatrix, what: str):
    if split_blocks(psi).b.is_zero():
        raise FiberIdentified(f"{what}: first row vanishes off the diagonal, fiber tori are identified")


def validate(spec) -> ValidatedManifold:
    """Check the structural conditions and derive W, W_boundary and inverses."""
    if isinstance(spec, ValidatedManifold):
        spec = spec.spec
    n = spec.dimension
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise BadDimension(f"dimension must be an integer >= 3, got {n!r}")
    if not spec.blocks:
        raise InvalidManifold("manifold has no blocks")

    block_of = {}
    seen_ids = set()
    for blk in spec.blocks:
        if blk.id in seen_ids:
            raise DuplicateLabel(f"block id {blk.id!r} used twice")
        seen_ids.add(blk.id)
        if blk.genus < 0:
            raise BadEuler(f"block {blk.id!r}: negative genus {blk.genus}")
        if not blk.boundary:
            raise InvalidManifold(f"block {blk.id!r} has no boundary tori")
        if blk.euler_characteristic >= 0:
            raise BadEuler(
                f"block {blk.id!r}: Euler characteristic {blk.euler_characteristic} is not negative"
            )
        for w in blk.boundary:
            if w in block_of:
                raise DuplicateLabel(f"torus label {w!r} appears on two boundaries")
            block_of[w] = blk.id

    glued = set()
    pairs = []
    for g in spec.gluings:
        for w in (g.source, g.target):
            if w not in block_of:
                raise DanglingLabel(f"gluing refers to unknown torus {w!r}")
            if w in glued:
                raise DuplicateLabel(f"torus {w!r} is glued more than once")
        if g.source == g.target:
            raise DuplicateLabel(f"torus {g.source!r} glued to itself")
        glued.update((g.source, g.target))
        psi = g.matrix
        if psi.shape != (n - 1, n - 1):
            raise SchemaError(
                f"matrix has shape {psi.shape}, expected {(n - 1, n - 1)}",
                field=f"gluing {g.source}->{g.target}",
            )
        psi_inv = unimodular_inverse(psi)
        _check_fiber(psi, f"gluing {g.source}->{g.target}")
        _check_fiber(psi_inv, f"gluing {g.target}->{g.source}")
        pairs.append(Gluing(g.source, g.target, psi, psi_inv))

    pairs.sort(key=lambda p: (p.w, p.minus_w))
    return ValidatedManifold(
        spec=spec,
        dimension=n,
        blocks=tuple(sorted(spec.blocks, key=lambda b: b.id)),
        block_of=block_of,
        gluing_tori=tuple(sorted(glued)),
        boundary_tori=tuple(sorted(set(block_of) - glued)),
        pairs=tuple(pairs),
    )


@dataclass(frozen=True)
class BasisChange:
    """Change of Waldhausen bases for every block.

    ``sigma[v]`` is the unimodular change of fiber basis of block ``v`` and
    ``shift[w]`` is the column ``n_w`` added to the section class of torus
    ``w``; the shifts of one block sum to zero.
    """

    sigma: Mapping[str, IntMatrix]
    shift: Mapping[str, tuple]


def identity_basis_change(m: ValidatedManifold) -> BasisChange:
    k = m.dimension - 2
    return BasisChange(
        sigma={b.id: IntMatrix.identity(k) for b in m.blocks},
        shift={w: (0,) * k for w in m.block_of},
    )


def check_basis_change(m: ValidatedManifold, bc: BasisChange):
    k = m.dimension - 2
    if set(bc.sigma) != {b.id for b in m.blocks}:
        raise MalformedBasisChange("sigma must be given for exactly the blocks of the manifold")
    if set(bc.shift) != set(m.block_of):
        raise MalformedBasisChange("shift must be given for exactly the boundary tori")
    for v, s in bc.sigma.items():
        s = as_matrix(s)
        if s.shape != (k, k):
            raise MalformedBasisChange(f"sigma[{v!r}] has shape {s.shape}, expected {(k, k)}")
        if abs(determinant(s)) != 1:
            raise MalformedBasisChange(f"sigma[{v!r}] is not unimodular")
    for w, col in bc.shift.items():
        if len(col) != k:
            raise MalformedBasisChange(f"shift[{w!r}] has length {len(col)}, expected {k}")
    for blk in m.blocks:
        total = [sum(bc.shift[w][i] for w in blk.boundary) for i in range(k)]
        if any(total):
            raise MalformedBasisChange(f"shifts of block {blk.id!r} sum to {total}, not zero")


def basis_change_matrix(m: ValidatedManifold, bc: BasisChange, w: str) -> IntMatrix:
    """``h_w = [[det sigma_v, 0], [n_w, sigma_v]]`` for torus ``w`` of block ``v``."""
    sigma = as_matrix(bc.sigma[m.block_of[w]])
    k = sigma.rows
    col = bc.shift[w]
    rows = [[determinant(sigma)] + [0] * k]
    rows += [[col[i], *sigma.row(i)] for i in range(k)]
    return IntMatrix.from_rows(rows, cols=k + 1)


def apply_basis_change(m: ValidatedManifold, bc: BasisChange) -> ValidatedManifold:
    """Re-express every gluing matrix in the new bases: ``h_w^-1 Psi_w h_{-w}``."""
    check_basis_change(m, bc)
    gluings = []
    for g in m.spec.gluings:
        h_src = basis_change_matrix(m, bc, g.source)
        h_dst = basis_change_matrix(m, bc, g.target)
        gluings.append(GluingSpec(g.source, g.target, unimodular_inverse(h_src) @ g.matrix @ h_dst))
    return validate(ManifoldSpec(m.dimension, m.spec.blocks, gluings, m.spec.notes))


def compose_basis_changes(m: ValidatedManifold, first: BasisChange, second: BasisChange) -> BasisChange:
    """Single change equivalent to applying ``first`` and then ``second``.

    The block matrices multiply, ``h = h_first @ h_second``.
    """
    sigma, shift = {}, {}
    for blk in m.blocks:
        s1 = as_matrix(first.sigma[blk.id])
        s2 = as_matrix(second.sigma[blk.id])
        sigma[blk.id] = s1 @ s2
        det2 = determinant(s2)
        for w in blk.boundary:
            n2 = s1 @ IntMatrix.from_rows([[x] for x in second.shift[w]], cols=1)
            shift[w] = tuple(det2 * x + y for x, y in zip(first.shift[w], n2.data))
    return BasisChange(sigma, shift)


def random_unimodular(rng: random.Random, k: int, steps: int, bound: int = 1) -> IntMatrix:
    """Product of ``steps`` random elementary matrices of side ``k``.

    Each factor is a transvection with multiplier in ``[-bound, bound]``, a
    row swap or a sign flip, so the determinant is always +-1.
    """
    m = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for _ in range(steps):
        kind = rng.randrange(3) if k > 1 else 2
        if kind == 0:
            i, j = rng.sample(range(k), 2)
            t = rng.choice([x for x in range(-bound, bound + 1) if x]) if bound else 0
            m[i] = [a + t * b for a, b in zip(m[i], m[j])]
        elif kind == 1:
            i, j = rng.sample(range(k), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(k)
            m[i] = [-a for a in m[i]]
    return IntMatrix.from_rows(m, cols=k)


def random_basis_change(m: ValidatedManifold, seed: int, size_bound: int) -> BasisChange:
    """Reproducible random basis change with entries controlled by ``size_bound``."""
    if size_bound < 1:
        raise ValueError("size_bound must be >= 1")
    rng = random.Random(seed)
    k = m.dimension - 2
    sigma, shift = {}, {}
    for blk in m.blocks:
        sigma[blk.id] = random_unimodular(rng, k, rng.randint(0, size_bound), size_bound)
        cols = [
            tuple(rng.randint(-size_bound, size_bound) for _ in range(k))
            for _ in blk.boundary[:-1]
        ]
        last = tuple(-sum(c[i] for c in cols) for i in range(k))
        for w, c in zip(blk.boundary, cols + [last]):
            shift[w] = c
    return BasisChange(sigma, shift)


def random_gluing_matrix(rng: random.Random, side: int, entry_bound: int = 9) -> IntMatrix:
    """Random unimodular matrix that glues without identifying fibers."""
    while True:
        psi = random_unimodular(rng, side, rng.randint(2, 3 * side), 2)
        if max(abs(x) for x in psi.data) > entry_bound:
            continue
        try:
            _check_fiber(psi, "")
            _check_fiber(unimodular_inverse(psi), "")
        except FiberIdentified:
            continue
        return psi


def random_manifold(
    rng: random.Random,
    dimension: int,
    max_blocks: int = 3,
    max_pairs: int = 4,
    entry_bound: int = 9,
    max_free_tori: int = 2,
) -> ValidatedManifold:
    """Random valid manifold for property testing.

    Gluing tori are dealt to random blocks, so self-gluings and disconnected
    pieces both occur.
    """
    nblocks = rng.randint(1, max_blocks)
    npairs = rng.randint(0, max_pairs)
    ids = [f"v{i}" for i in range(nblocks)]
    boundary: dict[str, list] = {v: [] for v in ids}
    gluings = []
    counter = 0

    def fresh(v):
        nonlocal counter
        label = f"t{counter}"
        counter += 1
        boundary[v].append(label)
        return label

    for _ in range(npairs):
        a = fresh(rng.choice(ids))
        b = fresh(rng.choice(ids))
        gluings.append(GluingSpec(a, b, random_gluing_matrix(rng, dimension - 1, entry_bound)))
    for v in ids:
        for _ in range(rng.randint(0 if boundary[v] else 1, max_free_tori)):
            fresh(v)
    blocks = []
    for v in ids:
        nb = len(boundary[v])
        min_genus = 1 if nb <= 2 else 0
        blocks.append(BlockSpec(v, rng.randint(min_genus, min_genus + 1), boundary[v]))
    return validate(ManifoldSpec(dimension, blocks, gluings))

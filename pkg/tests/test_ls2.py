import random
from fractions import Fraction

import pytest

from ggm_obstruct.errors import DimensionTooSmall
from ggm_obstruct.exact_linalg import IntMatrix, rational_rank
from ggm_obstruct.ls2 import bound_c_prime, build_ls2, corank_c_prime, fiber_kernel
from ggm_obstruct.manifold import (
    BlockSpec,
    GluingSpec,
    ManifoldSpec,
    apply_basis_change,
    random_basis_change,
    random_gluing_matrix,
    random_unimodular,
    validate,
)

from conftest import random_population
from symbolic_oracle import coefficient_rows, ls2_matrix, symbolic_rank

# Frozen from a sympy elimination of P^T G P - (dP)^T G (dP) with G = [[x, y], [y, z]],
# b_i = (1, i-1), d = [[1, 1], [3, 2]] read off the example gluing matrices.
EXAMPLE_LS2_ROWS = [[-1, -4, -3], [1, -2, 0], [3, -12, -15]]
EXAMPLE_C_PRIME = 0


def test_fiber_kernel_example():
    k2 = fiber_kernel([[1, 1, 1], [0, 1, 1], [0, 3, 2]], 4)
    assert k2.b.to_rows() == [[1, 1]]
    assert k2.d.to_rows() == [[1, 1], [3, 2]]
    assert [k2.kernel[0, 0], k2.kernel[1, 0]] in ([1, -1], [-1, 1])
    k1 = fiber_kernel([[1, 1, 0], [0, 1, 1], [0, 3, 2]], 4)
    assert k1.kernel.to_rows() == [[0], [1]]


def test_fiber_kernel_brute_force():
    # primitive vectors of Z^2 in [-3, 3]^2 killed by b = (1, 1) are exactly +-(1, -1)
    hits = [(a, c) for a in range(-3, 4) for c in range(-3, 4) if (a, c) != (0, 0) and a + c == 0]
    prim = [v for v in hits if abs(v[0]) == 1]
    k = fiber_kernel([[1, 1, 1], [0, 1, 1], [0, 3, 2]], 4).kernel
    assert (k[0, 0], k[1, 0]) in prim


def test_fiber_kernel_five_dims():
    psi = IntMatrix.from_rows([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    k = fiber_kernel(psi, 5).kernel
    assert k.to_rows() == [[0, 0], [1, 0], [0, 1]]


def test_dimension_three_rejected():
    with pytest.raises(DimensionTooSmall):
        fiber_kernel([[1, 1], [0, 1]], 3)
    m = validate(ManifoldSpec(3, [BlockSpec("v", 1, ["p"])], []))
    with pytest.raises(DimensionTooSmall):
        build_ls2(m)
    with pytest.raises(DimensionTooSmall):
        corank_c_prime(m)


def test_example4d(example4d):
    s = build_ls2(example4d)
    assert s.variables == ("G[M1](0,0)", "G[M1](0,1)", "G[M1](1,1)")
    assert (s.num_variables, s.num_equations) == (3, 3)
    assert s.coefficients.to_rows() == EXAMPLE_LS2_ROWS
    assert s.corank == EXAMPLE_C_PRIME == corank_c_prime(example4d)


def test_example4d_against_symbolic_oracle(example4d):
    rows = coefficient_rows(ls2_matrix(example4d), build_ls2(example4d).variables)
    assert symbolic_rank(rows) == 3


def test_published_coefficient_matrix_rank():
    # the published system, taken as given, has rank 3 too
    a = [[15 * i * i - 52 * i + 45, 66 * i * i - 232 * i + 204, 72 * i * i - 258 * i + 231] for i in (1, 2, 3)]
    assert a == [[8, 38, 45], [1, 4, 3], [24, 102, 105]]
    assert rational_rank(a) == 3


@pytest.mark.parametrize("seed", range(6))
def test_random_rank_matches_symbolic(seed):
    for m in random_population(100 + seed, 3):
        s = build_ls2(m)
        rows = coefficient_rows(ls2_matrix(m), s.variables)
        assert s.rank == symbolic_rank(rows)


def test_no_gluings():
    m = validate(ManifoldSpec(5, [BlockSpec("a", 1, ["p"]), BlockSpec("b", 0, ["q", "r", "s"])], []))
    assert corank_c_prime(m) == 2 * 6 == bound_c_prime(5, 2, 0)


def test_two_blocks_one_gluing_counts():
    rng = random.Random(0)
    m = validate(
        ManifoldSpec(
            5,
            [BlockSpec("a", 1, ["p"]), BlockSpec("b", 1, ["q"])],
            [GluingSpec("p", "q", random_gluing_matrix(rng, 4))],
        )
    )
    s = build_ls2(m)
    assert (s.num_variables, s.num_equations) == (12, 3)


def test_cancelling_pair_gives_zero_rows():
    # d = I and P^T G P - P^T G P vanishes identically on a self-glued block
    psi = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    m = validate(ManifoldSpec(4, [BlockSpec("v", 0, ["p", "q", "r"])], [GluingSpec("p", "q", psi)]))
    s = build_ls2(m)
    assert s.coefficients.is_zero()
    assert s.rank == 0


@pytest.mark.parametrize(
    "args, expected",
    [((4, 1, 6), 0), ((5, 1, 2), 3), ((4, 3, 0), 9), ((6, 1, 0), 10)],
)
def test_bound(args, expected):
    assert bound_c_prime(*args) == Fraction(expected)


def test_kernel_choice_independence():
    rng = random.Random(21)
    for m in random_population(22, 40):
        r = build_ls2(m).rank
        change = {g.w: random_unimodular(rng, m.dimension - 3, 5, 2) for g in m.pairs}
        assert build_ls2(m, kernel_change=change).rank == r


def test_orientation_independence():
    for m in random_population(23, 40):
        r = build_ls2(m).rank
        assert build_ls2(m, both_orientations=True).rank == r
        assert build_ls2(m.reoriented()).rank == r


def test_basis_invariance_small():
    for i, m in enumerate(random_population(24, 25)):
        bc = random_basis_change(m, i, 3)
        assert corank_c_prime(apply_basis_change(m, bc)) == corank_c_prime(m)


def test_bound_holds():
    for m in random_population(25, 40):
        assert corank_c_prime(m) >= bound_c_prime(m.dimension, len(m.blocks), len(m.gluing_tori))

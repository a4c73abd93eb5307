"""Corank obstructions to nonpositively curved geometrizations of
generalized graph manifolds, computed with exact integer linear algebra."""

__version__ = "0.1.0"

from ._kernels import BACKEND  # noqa: E402
from .exact_linalg import (  # noqa: E402
    IntMatrix,
    congruence_operator,
    integer_kernel_basis,
    rational_rank,
    sym_unvec,
    sym_vec,
    unimodular_inverse,
)
from .fileio import load_manifold, parse_manifold, serialize_manifold  # noqa: E402
from .ls1 import bound_c, build_ls1, corank_c  # noqa: E402
from .ls2 import bound_c_prime, build_ls2, corank_c_prime, fiber_kernel  # noqa: E402
from .manifold import (  # noqa: E402
    BasisChange,
    BlockSpec,
    GluingSpec,
    ManifoldSpec,
    apply_basis_change,
    random_basis_change,
    split_blocks,
    validate,
)
from .report import RunOptions, load_example, run  # noqa: E402

__all__ = [
    "BACKEND",
    "BasisChange",
    "BlockSpec",
    "GluingSpec",
    "IntMatrix",
    "ManifoldSpec",
    "RunOptions",
    "apply_basis_change",
    "bound_c",
    "bound_c_prime",
    "build_ls1",
    "build_ls2",
    "congruence_operator",
    "corank_c",
    "corank_c_prime",
    "fiber_kernel",
    "integer_kernel_basis",
    "load_example",
    "load_manifold",
    "parse_manifold",
    "random_basis_change",
    "rational_rank",
    "run",
    "serialize_manifold",
    "split_blocks",
    "sym_unvec",
    "sym_vec",
    "unimodular_inverse",
    "validate",
]

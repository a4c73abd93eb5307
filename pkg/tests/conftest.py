import random
from fractions import Fraction
from pathlib import Path

import pytest

from ggm_obstruct.manifold import BlockSpec, GluingSpec, ManifoldSpec, random_manifold, validate

EXAMPLE_PATH = Path(__file__).resolve().parents[1] / "src" / "ggm_obstruct" / "data" / "example_4d.json"


def fraction_rank(rows):
    """Naive Gauss-Jordan over Q with Fractions; independent of the Bareiss kernel."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(nrows):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_int_matrix(rng, rows, cols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_low_rank(rng, rows, cols, rank, bound=3):
    """Product of random rows x rank and rank x cols factors."""
    a = random_int_matrix(rng, rows, rank, bound)
    b = random_int_matrix(rng, rank, cols, bound)
    return [[sum(a[i][k] * b[k][j] for k in range(rank)) for j in range(cols)] for i in range(rows)]


def example4d_spec():
    labels = [str(i) for i in range(-3, 4)]
    gluings = [
        GluingSpec(str(i), str(-i), [[1, 1, i - 1], [0, 1, 1], [0, 3, 2]]) for i in (1, 2, 3)
    ]
    return ManifoldSpec(4, [BlockSpec("M1", 0, labels)], gluings)


@pytest.fixture
def example4d():
    return validate(example4d_spec())


def random_population(seed, count, dimensions=(4, 5)):
    """Random valid manifolds: <= 3 blocks, <= 4 gluing pairs, entries bounded by 9."""
    rng = random.Random(seed)
    return [random_manifold(rng, rng.choice(dimensions), 3, 4, 9) for _ in range(count)]


ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Shared strategies and generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from liecoh.algebra import LieAlgebra, Subalgebra
from liecoh.linalg import ExactMatrix
from liecoh.scalars import GaussianRational


small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=3)
scalars = st.builds(GaussianRational, small_fractions, small_fractions)
small_ints = st.integers(min_value=-3, max_value=3)
gauss_integers = st.builds(GaussianRational, small_ints, small_ints)


def matrices(rows, cols, entries=scalars):
    return st.lists(
        st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(lambda data: ExactMatrix(rows, cols, data))


def square_matrices(max_n=4, entries=scalars):
    return st.integers(min_value=1, max_value=max_n).flatmap(lambda n: matrices(n, n, entries))


def rect_matrices(max_n=4, entries=scalars):
    return st.tuples(
        st.integers(min_value=1, max_value=max_n), st.integers(min_value=1, max_value=max_n)
    ).flatmap(lambda rc: matrices(rc[0], rc[1], entries))


def unit_lower_triangular(n, rng: random.Random) -> ExactMatrix:
    data = [
        [
            GaussianRational(1) if i == j
            else (GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)) if i > j else GaussianRational(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return ExactMatrix(n, n, data)


def random_invertible(n, rng: random.Random) -> ExactMatrix:
    lower = unit_lower_triangular(n, rng)
    upper = unit_lower_triangular(n, rng).transpose()
    return lower.matmul(upper)


def two_step_nilpotent(rng: random.Random, base_dim: int, center_dim: int) -> LieAlgebra:
    """[e_i, e_j] lands in a central span of z's: the Jacobi identity holds
    identically because all double brackets vanish."""
    names = [f"e{i + 1}" for i in range(base_dim)] + [f"z{i + 1}" for i in range(center_dim)]
    table = {}
    for i in range(base_dim):
        for j in range(i + 1, base_dim):
            coeffs = {}
            for l in range(center_dim):
                c = rng.randint(-2, 2)
                if c:
                    coeffs[base_dim + l] = Fraction(c)
            if coeffs:
                table[(i, j)] = coeffs
    return LieAlgebra(f"nilp{base_dim}c{center_dim}", names, table)


def random_nilpotent_subalgebra(rng: random.Random, g: LieAlgebra, base_dim: int, center_dim: int) -> Subalgebra:
    """Any subspace containing the center is bracket-closed in a two-step
    algebra; take random complex combinations of the base plus the
    center."""
    vectors = []
    count = rng.randint(0, base_dim)
    for _ in range(count):
        v = [GaussianRational(0)] * g.dim
        for i in range(base_dim):
            v[i] = GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
        vectors.append(v)
    for l in range(center_dim):
        v = [GaussianRational(0)] * g.dim
        v[base_dim + l] = GaussianRational(1)
        vectors.append(v)
    return Subalgebra.span(g, vectors)


def diagonal_solvable(rng: random.Random, k: int) -> LieAlgebra:
    """[T, X_i] = lambda_i X_i with rational lambda_i; solvable, Jacobi holds."""
    names = ["T"] + [f"X{i + 1}" for i in range(k)]
    table = {}
    for i in range(k):
        lam = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if lam:
            table[(0, i + 1)] = {i + 1: lam}
    return LieAlgebra(f"diag{k}", names, table)


@pytest.fixture
def rng():
    return random.Random(20240811)

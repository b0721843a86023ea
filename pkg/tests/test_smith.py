import random

import pytest
from hypothesis import given, strategies as st

from derealize.exactmat import IntMatrix, determinant
from derealize.smith import (
    NonPositiveDeterminantError,
    SmithDecomposition,
    elementary_factors,
    factor_matrix,
    smith_decompose,
)

from helpers import minor_gcd_invariants, random_matrix, small_matrices


def M(rows):
    return IntMatrix.of(rows)


def check(a, snf):
    assert snf.reconstruct() == a
    assert determinant(snf.u) == 1 and determinant(snf.v) == 1
    assert all(d >= 1 for d in snf.deltas)
    assert all(y % x == 0 for x, y in zip(snf.deltas, snf.deltas[1:]))


class TestSmithDecompose:
    def test_already_smith(self):
        snf = smith_decompose(IntMatrix.diag([2, 6]))
        assert snf == SmithDecomposition(IntMatrix.identity(2), (2, 6), IntMatrix.identity(2))

    @pytest.mark.parametrize(
        "rows, deltas", [([[2, 0], [0, 3]], (1, 6)), ([[2, 1], [0, 2]], (1, 4)), ([[7]], (7,))]
    )
    def test_examples(self, rows, deltas):
        a = M(rows)
        snf = smith_decompose(a)
        assert snf.deltas == deltas
        check(a, snf)

    def test_unimodular_gives_ones(self):
        a = M([[3, 2], [4, 3]])
        snf = smith_decompose(a)
        assert snf.deltas == (1, 1)
        check(a, snf)

    @pytest.mark.parametrize("rows", [[[0, 1], [1, 0]], [[1, 2], [2, 4]], [[-3]]])
    def test_rejects_non_positive(self, rows):
        with pytest.raises(NonPositiveDeterminantError):
            smith_decompose(M(rows))

    @given(small_matrices(max_p=3, lo=-6, hi=6))
    def test_matches_minor_gcds(self, a):
        if determinant(a) <= 0:
            return
        snf = smith_decompose(a)
        check(a, snf)
        assert snf.deltas == minor_gcd_invariants(a)

    @given(small_matrices(max_p=5))
    def test_round_trip(self, a):
        if determinant(a) > 0:
            check(a, smith_decompose(a))

    def test_large_entries(self):
        a = M([[10**30 + 1, 3], [7, 10**20]])
        check(a, smith_decompose(a))

    def test_deterministic(self):
        rng = random.Random(8)
        for _ in range(20):
            a = random_matrix(rng, 3)
            if determinant(a) > 0:
                assert smith_decompose(a) == smith_decompose(a)

    def test_json(self):
        out = smith_decompose(M([[2, 1], [0, 2]])).to_json()
        assert out["deltas"] == [1, 4]
        assert set(out) == {"u", "deltas", "v"}


class TestElementaryFactors:
    @pytest.mark.parametrize(
        "deltas, factors",
        [((2, 6), [(1, 2), (2, 6)]), ((1, 4), [(1, 1), (2, 4)]), ((1, 1, 12), [(1, 1), (2, 1), (3, 12)])],
    )
    def test_examples(self, deltas, factors):
        p = len(deltas)
        snf = SmithDecomposition(IntMatrix.identity(p), deltas, IntMatrix.identity(p))
        assert elementary_factors(snf) == factors

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=5))
    def test_product_is_diagonal(self, deltas):
        p = len(deltas)
        prod = IntMatrix.identity(p)
        for i, d in enumerate(deltas, start=1):
            prod = prod @ factor_matrix(i, d, p)
        assert prod == IntMatrix.diag(deltas)

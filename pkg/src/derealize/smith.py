"""Smith normal form A = U diag(d_1..d_p) V with U, V in SL(p, Z)."""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import IntMatrix, determinant, inverse_unimodular, multiply


class NonPositiveDeterminantError(ValueError):
    pass


@dataclass(frozen=True)
class SmithDecomposition:
    u: IntMatrix
    deltas: tuple[int, ...]
    v: IntMatrix

    @property
    def diagonal(self) -> IntMatrix:
        return IntMatrix.diag(self.deltas)

    def reconstruct(self) -> IntMatrix:
        return multiply(multiply(self.u, self.diagonal), self.v)

    def to_json(self) -> dict:
        from .exactmat import matrix_to_json

        return {"u": matrix_to_json(self.u), "deltas": list(self.deltas), "v": matrix_to_json(self.v)}


def _pick_pivot(m, t, n):
    best = None
    for i in range(t, n):
        for j in range(t, n):
            x = m[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def smith_decompose(a: IntMatrix) -> SmithDecomposition:
    d = determinant(a)
    if d <= 0:
        raise NonPositiveDeterminantError(
            f"determinant {d} is not positive; square the map first (ensure_positive_degree)"
        )
    n = a.p
    m = a.to_lists()
    # left (rows) and right (columns) accumulated transforms: left @ a @ right = diag
    left = IntMatrix.identity(n).to_lists()
    right = IntMatrix.identity(n).to_lists()

    def swap_rows(i, j):
        for x in (m, left):
            x[i], x[j] = x[j], x[i]

    def swap_cols(i, j):
        for x in (m, right):
            for r in x:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        for x in (m, left):
            x[dst] = [a - q * b for a, b in zip(x[dst], x[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for x in (m, right):
            for r in x:
                r[dst] -= q * r[src]

    for t in range(n):
        while True:
            _, pi, pj = _pick_pivot(m, t, n)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, n):
                if m[i][t]:
                    add_row(i, t, m[i][t] // piv)
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, n):
                if m[t][j]:
                    add_col(j, t, m[t][j] // piv)
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if m[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if m[t][t] < 0:
            for x in (m, left):
                x[t] = [-y for y in x[t]]

    deltas = tuple(m[i][i] for i in range(n))
    u = inverse_unimodular(IntMatrix.of(left))
    v = inverse_unimodular(IntMatrix.of(right))
    if determinant(u) == -1:
        # det(u) det(v) = 1 here; flip column 1 of u and row 1 of v together
        u = IntMatrix.of([[-r[0]] + r[1:] for r in u.to_lists()])
        vr = v.to_lists()
        vr[0] = [-x for x in vr[0]]
        v = IntMatrix.of(vr)
    out = SmithDecomposition(u, deltas, v)
    assert out.reconstruct() == a, "Smith bookkeeping failed multiply-back"
    assert determinant(u) == 1 and determinant(v) == 1
    assert all(x > 0 for x in deltas)
    assert all(deltas[i + 1] % deltas[i] == 0 for i in range(n - 1))
    return out


def elementary_factors(d: SmithDecomposition) -> list[tuple[int, int]]:
    """Split diag(d_1..d_p) into Delta_1 ... Delta_p, Delta_i = diag(1,..,d_i,..,1)."""
    return [(i + 1, delta) for i, delta in enumerate(d.deltas)]


def factor_matrix(i: int, delta: int, p: int) -> IntMatrix:
    entries = [1] * p
    entries[i - 1] = delta
    return IntMatrix.diag(entries)

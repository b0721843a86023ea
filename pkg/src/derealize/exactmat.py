"""Exact square integer matrices over Python ints, plus their mod-2 shadows.

Every public index argument is 1-based. Matrices are immutable; all
operations return new objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = len(self.rows)
        if p < 1:
            raise DimensionError("matrix must have p >= 1")
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if any(len(r) != p for r in rows):
            raise DimensionError(f"matrix is not square ({p} rows)")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, p: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(p)) for i in range(p)))

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        p = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(p)) for i in range(p)))

    @property
    def p(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry (i, j), 1-based."""
        return self.rows[i - 1][j - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j - 1] for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return multiply(self, other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __str__(self) -> str:
        return format_text(self)


@dataclass(frozen=True)
class Mod2Matrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = len(self.rows)
        if any(len(r) != p for r in self.rows):
            raise DimensionError("mod-2 matrix is not square")
        object.__setattr__(self, "rows", tuple(tuple(x & 1 for x in r) for r in self.rows))

    @property
    def p(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, p: int) -> "Mod2Matrix":
        return cls(tuple(tuple(int(i == j) for j in range(p)) for i in range(p)))

    def __matmul__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        if self.p != other.p:
            raise DimensionError(f"dimension mismatch: {self.p} vs {other.p}")
        cols = tuple(zip(*other.rows))
        return Mod2Matrix(
            tuple(tuple(sum(a & b for a, b in zip(r, c)) & 1 for c in cols) for r in self.rows)
        )


@dataclass(frozen=True)
class Mod2RowVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) & 1 for x in self.entries))

    @property
    def p(self) -> int:
        return len(self.entries)

    @classmethod
    def ones(cls, p: int) -> "Mod2RowVector":
        return cls((1,) * p)

    @classmethod
    def zeros(cls, p: int) -> "Mod2RowVector":
        return cls((0,) * p)

    @classmethod
    def from_bits(cls, bits: str) -> "Mod2RowVector":
        """Parse a bit-string; the first character is index 1."""
        bits = bits.strip()
        if not bits or any(c not in "01" for c in bits):
            raise ValueError(f"not a bit-string: {bits!r}")
        return cls(tuple(int(c) for c in bits))

    def bits(self) -> str:
        return "".join(str(x) for x in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, m: Mod2Matrix) -> "Mod2RowVector":
        if self.p != m.p:
            raise DimensionError(f"dimension mismatch: {self.p} vs {m.p}")
        return Mod2RowVector(
            tuple(sum(x & m.rows[r][c] for r, x in enumerate(self.entries)) & 1 for c in range(m.p))
        )


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.p != b.p:
        raise DimensionError(f"dimension mismatch: {a.p} vs {b.p}")
    cols = tuple(zip(*b.rows))
    return IntMatrix(tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a.rows))


def product(mats: Iterable[IntMatrix], p: int) -> IntMatrix:
    out = IntMatrix.identity(p)
    for m in mats:
        out = multiply(out, m)
    return out


def _bareiss_det(rows: list[list[int]]) -> int:
    # Fraction-free elimination; every division below is exact.
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def determinant(a: IntMatrix) -> int:
    return _bareiss_det([list(r) for r in a.rows])


def _minor_rows(a: IntMatrix, i: int, j: int) -> list[list[int]]:
    return [[x for c, x in enumerate(r) if c != j] for k, r in enumerate(a.rows) if k != i]


def cofactor(a: IntMatrix, i: int, j: int) -> int:
    """Signed (i, j) cofactor; equals entry (j, i) of the inverse when det = 1."""
    p = a.p
    if not (1 <= i <= p and 1 <= j <= p):
        raise IndexError(f"cofactor index ({i}, {j}) out of range for p={p}")
    if p == 1:
        return 1
    sign = -1 if (i + j) % 2 else 1
    return sign * _bareiss_det(_minor_rows(a, i - 1, j - 1))


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    d = determinant(a)
    if d not in (1, -1):
        raise NotUnimodularError(f"determinant {d} is not +-1")
    p = a.p
    inv = IntMatrix(
        tuple(tuple(cofactor(a, j + 1, i + 1) * d for j in range(p)) for i in range(p))
    )
    assert multiply(a, inv) == IntMatrix.identity(p)
    return inv


def mod2(a: IntMatrix) -> Mod2Matrix:
    return Mod2Matrix(a.rows)


def column_sums(a: IntMatrix) -> tuple[int, ...]:
    return tuple(sum(c) for c in zip(*a.rows))


def _check_pair(i: int, j: int, p: int) -> None:
    if i == j:
        raise ValueError(f"generator indices must differ, got ({i}, {j})")
    if not (1 <= i <= p and 1 <= j <= p):
        raise IndexError(f"generator indices ({i}, {j}) out of range for p={p}")


def elementary(i: int, j: int, p: int, c: int = 1) -> IntMatrix:
    """I + c*E_ij."""
    _check_pair(i, j, p)
    rows = [[int(r == s) for s in range(p)] for r in range(p)]
    rows[i - 1][j - 1] += c
    return IntMatrix.of(rows)


def shear(i: int, j: int, p: int) -> IntMatrix:
    """R_ij = I + E_ij."""
    return elementary(i, j, p, 1)


def swap_q(i: int, j: int, p: int) -> IntMatrix:
    """Q_ij = R_ij^-1 R_ji R_ij^-1, built from the defining product."""
    r_inv = elementary(i, j, p, -1)
    return multiply(multiply(r_inv, shear(j, i, p)), r_inv)


def generator(kind: str, indices: Sequence[int], p: int) -> IntMatrix:
    """Named generator matrix.

    kind is one of ``"R"`` (R_ij), ``"Q"`` (Q_ij), ``"R-squared"`` (R_ij^2)
    or ``"RR-pair"``. For ``"RR-pair"`` the pair ``(i, j)`` gives R_ip R_jp
    and a triple ``(i, j, k)`` gives R_ik R_jk.
    """
    if kind == "R":
        i, j = indices
        return shear(i, j, p)
    if kind == "R-squared":
        i, j = indices
        r = shear(i, j, p)
        return multiply(r, r)
    if kind == "Q":
        i, j = indices
        return swap_q(i, j, p)
    if kind == "RR-pair":
        if len(indices) == 2:
            i, j = indices
            k = p
        else:
            i, j, k = indices
        if len({i, j, k}) != 3:
            raise ValueError(f"RR-pair needs three distinct indices, got ({i}, {j}, {k})")
        return multiply(shear(i, k, p), shear(j, k, p))
    raise ValueError(f"unknown generator kind {kind!r}")


# -- text / JSON matrix format ------------------------------------------------


class MatrixParseError(ValueError):
    pass


def parse_matrix(text: str) -> IntMatrix:
    """Read a matrix from the text format or the JSON format (auto-detected).

    Text: ``p`` followed by p*p signed integers, whitespace separated (line
    breaks are conventional, not required). JSON: ``{"p": int, "rows": [...]}``
    or a bare list of rows.
    """
    s = text.strip()
    if not s:
        raise MatrixParseError("empty matrix input")
    if s[0] in "{[":
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"invalid JSON: {exc}") from None
        return matrix_from_json(obj)
    tokens = s.split()
    try:
        nums = [int(t) for t in tokens]
    except ValueError:
        raise MatrixParseError(f"non-integer token in matrix text: {s[:40]!r}") from None
    p = nums[0]
    if p < 1:
        raise MatrixParseError(f"dimension must be positive, got {p}")
    if len(nums) - 1 != p * p:
        raise MatrixParseError(f"expected {p * p} entries for p={p}, got {len(nums) - 1}")
    body = nums[1:]
    return IntMatrix.of(body[r * p:(r + 1) * p] for r in range(p))


def matrix_from_json(obj) -> IntMatrix:
    if isinstance(obj, dict):
        if "rows" not in obj:
            raise MatrixParseError("JSON matrix needs a 'rows' key")
        rows = obj["rows"]
        p = obj.get("p", len(rows) if isinstance(rows, list) else None)
    else:
        rows = obj
        p = len(rows) if isinstance(rows, list) else None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MatrixParseError("'rows' must be a list of lists")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise MatrixParseError("matrix entries must be integers")
    if p != len(rows) or any(len(r) != p for r in rows) or p < 1:
        raise MatrixParseError(f"rows do not form a {p}x{p} matrix")
    return IntMatrix.of(rows)


def matrix_to_json(a: IntMatrix) -> dict:
    return {"p": a.p, "rows": a.to_lists()}


def format_text(a: IntMatrix) -> str:
    width = max(len(str(x)) for r in a.rows for x in r)
    lines = [str(a.p)]
    lines += [" ".join(str(x).rjust(width) for x in r) for r in a.rows]
    return "\n".join(lines)

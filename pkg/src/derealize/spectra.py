"""Exact test for expanding integer matrices.

A matrix is expanding when every eigenvalue has modulus strictly greater
than 1. The decision is made without floating point:

1. a zero determinant means a zero eigenvalue;
2. ``g = gcd(chi, reversed chi)`` collects every root whose inverse is also
   a root. Unit-circle roots always land in ``g``; if ``g`` is nonconstant
   it either has one (``boundary``) or it pairs some root with its inverse
   off the circle, which forces a root inside the disk (``not-expanding``);
3. otherwise a Schur-Cohn reduction on the reversed polynomial decides
   whether all inverse roots lie strictly inside the unit disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .exactmat import IntMatrix, determinant, multiply

EXPANDING = "expanding"
NOT_EXPANDING = "not-expanding"
BOUNDARY = "boundary"


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial, highest-degree coefficient first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class ExpandingVerdict:
    status: str
    witness: Optional[str] = None
    char_poly: tuple[int, ...] = field(default=())

    @property
    def expanding(self) -> bool:
        return self.status == EXPANDING

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness, "char_poly": list(self.char_poly)}


def char_poly(a: IntMatrix) -> CharPoly:
    """det(tI - A) by Berkowitz's division-free algorithm."""
    rows = a.rows
    n = a.p
    # poly for the leading 1x1 block, lowest degree last
    poly = [1, -rows[0][0]]
    for k in range(1, n):
        # A_{k+1} = [[A_k, c], [r, a_kk]]
        a_kk = rows[k][k]
        col = [rows[i][k] for i in range(k)]
        row = [rows[k][j] for j in range(k)]
        # Toeplitz column: 1, -a_kk, -r c, -r A c, ..., -r A^{k-1} c
        toeplitz = [1, -a_kk]
        vec = col
        for _ in range(k):
            toeplitz.append(-sum(x * y for x, y in zip(row, vec)))
            vec = [sum(rows[i][j] * vec[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i in range(k + 2):
            new[i] = sum(toeplitz[i - j] * poly[j] for j in range(min(i, k) + 1))
        poly = new
    return CharPoly(tuple(poly))


def eval_poly_at_matrix(cp: CharPoly, a: IntMatrix) -> IntMatrix:
    """Horner evaluation of a polynomial at a matrix."""
    p = a.p
    acc = IntMatrix.diag([0] * p)
    for c in cp.coeffs:
        acc = multiply(acc, a)
        acc = IntMatrix(tuple(
            tuple(x + (c if i == j else 0) for j, x in enumerate(r)) for i, r in enumerate(acc.rows)
        ))
    return acc


# -- polynomial helpers over Q, highest-degree coefficient first ---------------


def _trim(f: list) -> list:
    i = 0
    while i < len(f) - 1 and f[i] == 0:
        i += 1
    return f[i:]


def _is_zero(f: list) -> bool:
    return all(c == 0 for c in f)


def _polyrem(f: list, g: list) -> list:
    f = [Fraction(c) for c in _trim(f)]
    g = _trim(g)
    lead = Fraction(g[0])
    while len(f) >= len(g) and not _is_zero(f):
        q = f[0] / lead
        for i in range(len(g)):
            f[i] -= q * g[i]
        f = _trim(f[1:]) if len(f) > 1 else [Fraction(0)]
    return f


def _monic(f: list) -> list:
    f = _trim(f)
    return [Fraction(c) / f[0] for c in f]


def poly_gcd(f: list, g: list) -> list:
    """Monic gcd over the rationals."""
    f, g = _trim(list(f)), _trim(list(g))
    while not _is_zero(g):
        f, g = g, _polyrem(f, g)
    return _monic(f)


def _derivative(f: list) -> list:
    n = len(f) - 1
    if n == 0:
        return [0]
    return [c * (n - i) for i, c in enumerate(f[:-1])]


def _horner(f: list, x):
    acc = 0
    for c in f:
        acc = acc * x + c
    return acc


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(f: list, lo, hi) -> int:
    """Distinct real roots of f in (lo, hi]."""
    seq = [_trim([Fraction(c) for c in f])]
    seq.append(_trim(_derivative(seq[0])))
    while not _is_zero(seq[-1]) and len(seq[-1]) > 1:
        r = _polyrem(seq[-2], seq[-1])
        if _is_zero(r):
            break
        seq.append([-c for c in r])
    return _sign_changes([_horner(s, lo) for s in seq]) - _sign_changes([_horner(s, hi) for s in seq])


def _palindromic_to_trace_poly(g: list) -> list:
    """For palindromic g of degree 2m return h with g(t) = t^m h(t + 1/t)."""
    m = (len(g) - 1) // 2
    # coefficient of t^(m+k) is g[m-k] in highest-first order
    chebyshev = [[Fraction(2)], [Fraction(1), Fraction(0)]]  # t^k + t^-k in x, highest first
    for k in range(2, m + 1):
        a = chebyshev[k - 1] + [Fraction(0)]
        b = [Fraction(0)] * (len(a) - len(chebyshev[k - 2])) + chebyshev[k - 2]
        chebyshev.append([x - y for x, y in zip(a, b)])
    h = [Fraction(0)] * (m + 1)
    h[-1] += g[m]
    for k in range(1, m + 1):
        ck = g[m - k]
        term = chebyshev[k]
        off = len(h) - len(term)
        for i, c in enumerate(term):
            h[off + i] += ck * c
    return h


def unit_circle_roots(g: list) -> Optional[str]:
    """Describe a unit-circle root of a self-reciprocal polynomial, if any."""
    g = _monic(g)
    if len(g) == 1:
        return None
    if _horner(g, 1) == 0:
        return "root at t = 1"
    if _horner(g, -1) == 0:
        return "root at t = -1"
    if (len(g) - 1) % 2:
        raise AssertionError("self-reciprocal polynomial without +-1 roots must have even degree")
    h = _palindromic_to_trace_poly(g)
    n = sturm_count(h, Fraction(-2), Fraction(2))
    if n > 0:
        return f"{n} distinct conjugate pair(s) of roots on the unit circle"
    return None


def _schur_cohn_inside(q: list) -> tuple[bool, Optional[str]]:
    """Whether every root of integer polynomial q lies strictly inside |z| < 1."""
    f = _trim(list(q))
    stage = 0
    while len(f) > 1:
        lead, const = f[0], f[-1]
        if abs(const) >= abs(lead):
            return False, f"Schur-Cohn stage {stage}: |constant| {abs(const)} >= |leading| {abs(lead)}"
        rev = f[::-1]
        nxt = [lead * x - const * y for x, y in zip(f, rev)][:-1]
        c = 0
        for x in nxt:
            c = gcd(c, x)
        f = [x // c for x in nxt] if c > 1 else nxt
        stage += 1
    return True, None


def is_expanding(a: IntMatrix) -> ExpandingVerdict:
    cp = char_poly(a)
    coeffs = cp.coeffs
    if determinant(a) == 0:
        return ExpandingVerdict(NOT_EXPANDING, "determinant is zero: eigenvalue 0", coeffs)
    chi = list(coeffs)
    rev = chi[::-1]
    g = poly_gcd(chi, rev)
    if len(g) > 1:
        hit = unit_circle_roots(g)
        if hit is not None:
            return ExpandingVerdict(BOUNDARY, f"reciprocal gcd has degree {len(g) - 1}: {hit}", coeffs)
        return ExpandingVerdict(
            NOT_EXPANDING,
            f"reciprocal gcd has degree {len(g) - 1}: root pair lambda, 1/lambda off the unit circle",
            coeffs,
        )
    inside, why = _schur_cohn_inside(rev)
    if inside:
        return ExpandingVerdict(EXPANDING, None, coeffs)
    return ExpandingVerdict(NOT_EXPANDING, f"root with modulus < 1 detected ({why})", coeffs)


def ensure_positive_degree(a: IntMatrix) -> tuple[IntMatrix, bool]:
    d = determinant(a)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    if d > 0:
        return a, False
    return multiply(a, a), True

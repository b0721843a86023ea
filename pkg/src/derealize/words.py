"""Words in the extendable generators R^2_1j, Q_1j and R_1p R_ip.

Row operations realised by left multiplication:

* ``RSq(i, j)`` = R_ij^2 adds twice row j to row i;
* ``RRpair(i, j, k)`` = R_ik R_jk adds row k to rows i and j;
* ``Q(i, j)`` sends row j to row i and minus row i to row j.

Right multiplication performs the transposed column operations. Base
tokens are ``RSq(1, j)``, ``Q(1, j)`` (1 < j <= p) and ``RRp(i)`` =
R_1p R_ip (1 < i < p); everything else is derived and can be rewritten
into base tokens with :func:`rewrite_to_base`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .exactmat import (
    IntMatrix,
    NotUnimodularError,
    cofactor,
    column_sums,
    determinant,
    elementary,
    inverse_unimodular,
    multiply,
    swap_q,
)


class EvenColumnSumError(ValueError):
    def __init__(self, column: int):
        super().__init__(f"even column sum: column {column}")
        self.column = column


class EuclidStallError(RuntimeError):
    pass


KINDS = ("RSq", "Q", "RRp", "RRpair")


@dataclass(frozen=True)
class GenToken:
    """One generator, optionally inverted and raised to a positive power."""

    kind: str
    indices: tuple[int, ...]
    inv: bool = False
    power: int = 1

    def __post_init__(self):
        if self.power < 1:
            raise ValueError(f"token power must be positive, got {self.power}")
        need = {"RSq": 2, "Q": 2, "RRp": 1, "RRpair": 3}
        if self.kind not in need:
            raise ValueError(f"unknown token kind {self.kind!r}")
        if len(self.indices) != need[self.kind]:
            raise ValueError(f"{self.kind} takes {need[self.kind]} indices, got {self.indices}")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"{self.kind} indices must be distinct: {self.indices}")

    def inverse(self) -> "GenToken":
        return GenToken(self.kind, self.indices, not self.inv, self.power)

    def with_power(self, power: int) -> "GenToken":
        return GenToken(self.kind, self.indices, self.inv, power)

    def is_base(self, p: int) -> bool:
        if self.kind in ("RSq", "Q"):
            return self.indices[0] == 1
        if self.kind == "RRp":
            return 1 < self.indices[0] < p
        return False

    def matrix(self, p: int) -> IntMatrix:
        idx = self.indices
        if any(not 1 <= i <= p for i in idx):
            raise IndexError(f"token {self} out of range for p={p}")
        n = -self.power if self.inv else self.power
        if self.kind == "RSq":
            return elementary(idx[0], idx[1], p, 2 * n)
        if self.kind == "Q":
            q = swap_q(idx[0], idx[1], p)
            out = IntMatrix.identity(p)
            for _ in range(n % 4):
                out = multiply(out, q)
            return out
        if self.kind == "RRp":
            i, k = idx[0], p
            if i in (1, p):
                raise IndexError(f"RRp({i}) needs 1 < i < p={p}")
            return _pair_matrix(1, i, k, p, n)
        i, j, k = idx
        return _pair_matrix(i, j, k, p, n)

    def __str__(self) -> str:
        body = ",".join(str(i) for i in self.indices)
        n = -self.power if self.inv else self.power
        return f"{self.kind}({body})" + ("" if n == 1 else f"^{n}")

    def to_json(self, p: int) -> dict:
        if self.kind == "RRp":
            out = {"kind": "RRp", "i": self.indices[0], "j": p}
        elif self.kind == "RRpair":
            i, j, k = self.indices
            out = {"kind": "RRpair", "i": i, "j": j, "k": k}
        else:
            out = {"kind": self.kind, "i": self.indices[0], "j": self.indices[1]}
        out["inv"] = self.inv
        if self.power != 1:
            out["power"] = self.power
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GenToken":
        kind = obj["kind"]
        inv = bool(obj.get("inv", False))
        power = int(obj.get("power", 1))
        if kind == "RRp":
            return cls("RRp", (obj["i"],), inv, power)
        if kind == "RRpair":
            return cls("RRpair", (obj["i"], obj["j"], obj["k"]), inv, power)
        return cls(kind, (obj["i"], obj["j"]), inv, power)


def _pair_matrix(i: int, j: int, k: int, p: int, sign: int) -> IntMatrix:
    rows = IntMatrix.identity(p).to_lists()
    rows[i - 1][k - 1] += sign
    rows[j - 1][k - 1] += sign
    return IntMatrix.of(rows)


def RSq(i, j, inv=False, power=1):
    return GenToken("RSq", (i, j), inv, power)


def Q(i, j, inv=False, power=1):
    return GenToken("Q", (i, j), inv, power)


def RRp(i, inv=False, power=1):
    return GenToken("RRp", (i,), inv, power)


def RRpair(i, j, k, inv=False, power=1):
    return GenToken("RRpair", (i, j, k), inv, power)


@dataclass(frozen=True)
class GeneratorWord:
    p: int
    tokens: tuple[GenToken, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def is_base(self) -> bool:
        return all(t.is_base(self.p) for t in self.tokens)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(self.p, tuple(t.inverse() for t in reversed(self.tokens)))

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if self.p != other.p:
            raise ValueError("cannot concatenate words of different dimension")
        return GeneratorWord(self.p, self.tokens + other.tokens)

    def to_json(self) -> list[dict]:
        return [t.to_json(self.p) for t in self.tokens]

    @classmethod
    def from_json(cls, p: int, items: Iterable[dict]) -> "GeneratorWord":
        return cls(p, tuple(GenToken.from_json(x) for x in items))

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens) or "(empty)"


def eval_word(w: GeneratorWord) -> IntMatrix:
    out = IntMatrix.identity(w.p)
    for t in w.tokens:
        out = multiply(out, t.matrix(w.p))
    return out


# -- rewriting ------------------------------------------------------------------


def _expand(t: GenToken, p: int) -> list[GenToken]:
    if t.inv:
        return [s.inverse() for s in reversed(_expand(t.inverse(), p))]
    if t.is_base(p):
        return [t]
    kind, idx = t.kind, t.indices
    if kind == "RSq":
        i, j = idx
        if j == 1:
            # Q_1i R^2_1i Q_1i^-1 = R^2_i1^-1
            seq = [Q(1, i), RSq(1, i, inv=True), Q(1, i, inv=True)]
        else:
            seq = [Q(1, i), RSq(1, j), Q(1, i, inv=True)]
    elif kind == "Q":
        i, j = idx
        if j == 1:
            seq = [Q(1, i, inv=True)]
        else:
            seq = [Q(1, i), Q(1, j), Q(1, i, inv=True)]
    elif kind == "RRp":
        raise IndexError(f"RRp({idx[0]}) needs 1 < i < p={p}")
    else:
        i, j, k = idx
        if j == 1:
            i, j = j, i  # R_ik and R_jk commute
        if i == 1:
            if k == p:
                seq = [RRp(j)]
            elif j == p:
                seq = [Q(k, p), RRp(k, inv=True), Q(k, p, inv=True)]
            else:
                seq = [Q(k, p, inv=True), RRpair(1, j, p), Q(k, p)]
        elif k == 1:
            seq = [Q(1, i), RRpair(1, j, i, inv=True), Q(1, i, inv=True)]
        else:
            seq = [Q(1, i), RRpair(1, j, k), Q(1, i, inv=True)]
    # every rule is one token or a conjugation A X A^-1, so powers land on X
    mid = len(seq) // 2
    seq[mid] = seq[mid].with_power(t.power)
    out: list[GenToken] = []
    for s in seq:
        out.extend(_expand(s, p))
    return out


def rewrite_to_base(w: GeneratorWord) -> GeneratorWord:
    out: list[GenToken] = []
    for t in w.tokens:
        t.matrix(w.p)  # range check
        for s in _expand(t, w.p):
            prev = out[-1] if out else None
            if prev is not None and (prev.kind, prev.indices, prev.inv) == (s.kind, s.indices, s.inv):
                out[-1] = prev.with_power(prev.power + s.power)
            else:
                out.append(s)
    return GeneratorWord(w.p, tuple(out))


# -- Euclid-type decompositions --------------------------------------------------


def _even_reduce(b: int, a: int) -> tuple[int, int]:
    """Return (q, b') with b' = b - 2*q*a in (-|a|, |a|]."""
    m = 2 * abs(a)
    r = b % m
    if r > abs(a):
        r -= m
    q = (b - r) // (2 * a)
    return q, r


def _min_nonzero(values, start=0) -> Optional[int]:
    best = None
    for idx in range(start, len(values)):
        x = values[idx]
        if x and (best is None or abs(x) < abs(values[best])):
            best = idx
    return best


class _RowOps:
    """Mutable matrix receiving left-multiplications by tokens (0-based rows)."""

    def __init__(self, u: IntMatrix):
        self.m = u.to_lists()
        self.p = u.p
        self.ops: list[GenToken] = []

    def rsq(self, s, r, times):
        # row s += 2*times*row r
        if times == 0:
            return
        self.ops.append(RSq(s + 1, r + 1, inv=times < 0, power=abs(times)))
        self.m[s] = [x + 2 * times * y for x, y in zip(self.m[s], self.m[r])]

    def pair(self, a, b, k):
        self.ops.append(RRpair(a + 1, b + 1, k + 1))
        self.m[a] = [x + y for x, y in zip(self.m[a], self.m[k])]
        self.m[b] = [x + y for x, y in zip(self.m[b], self.m[k])]

    def swap(self, i, j):
        self.ops.append(Q(i + 1, j + 1))
        self.m[i], self.m[j] = [-x for x in self.m[j]], self.m[i]


def _check_sl(u: IntMatrix) -> None:
    d = determinant(u)
    if d != 1:
        raise NotUnimodularError(f"determinant {d} is not 1")


def decompose_odd_columns(u: IntMatrix) -> GeneratorWord:
    """Write u (det 1, all column sums odd) as a word in base generators."""
    p = u.p
    if p < 2:
        raise ValueError("decomposition needs p >= 2")
    for j, s in enumerate(column_sums(u), start=1):
        if s % 2 == 0:
            raise EvenColumnSumError(j)
    _check_sl(u)

    ops = _RowOps(u)
    m = ops.m
    for c in range(p):
        odd_low = [r for r in range(c, p) if ops.m[r][c] % 2]
        odd_high = [r for r in range(c) if ops.m[r][c] % 2]
        if len(odd_low) % 2 == 0:
            # odd count above; move one parity across with a pair op
            ops.pair(odd_high[0], odd_low[1], odd_low[0])
            odd_low = [r for r in range(c, p) if ops.m[r][c] % 2]
        head, rest = odd_low[0], odd_low[1:]
        for a, b in zip(rest[::2], rest[1::2]):
            ops.pair(a, b, head)
        if head != c:
            ops.swap(c, head)

        # Euclid phase on rows c..p-1, even multiples only
        last = None
        while True:
            m = ops.m
            col = [m[r][c] for r in range(p)]
            r = _min_nonzero(col, c)
            a = col[r]
            if last is not None and abs(a) >= last:
                raise EuclidStallError(f"column {c + 1}: minimum {abs(a)} did not decrease")
            last = abs(a)
            if abs(a) == 1:
                break
            s = next((s for s in range(c, p) if col[s] % a), None)
            if s is None:
                raise EuclidStallError(f"column {c + 1}: {a} divides the whole column")
            q, rem = _even_reduce(col[s], a)
            assert 0 < abs(rem) < abs(a)
            ops.rsq(s, r, -q)
        assert r == c, "the unit entry must be the single odd one"

        odd_high = [r for r in range(c) if ops.m[r][c] % 2]
        for a, b in zip(odd_high[::2], odd_high[1::2]):
            ops.pair(a, b, c)
        piv = ops.m[c][c]
        for s in range(p):
            if s != c and ops.m[s][c]:
                ops.rsq(s, c, -(ops.m[s][c] * piv) // 2)

    diag = [ops.m[i][i] for i in range(p)]
    assert ops.m == IntMatrix.diag(diag).to_lists()
    negs = [i + 1 for i, x in enumerate(diag) if x == -1]
    assert len(negs) % 2 == 0
    d_word = []
    for a, b in zip(negs[::2], negs[1::2]):
        d_word.append(Q(a, b, power=2))
    raw = GeneratorWord(p, tuple(t.inverse() for t in ops.ops) + tuple(d_word))
    word = rewrite_to_base(raw)
    assert eval_word(word) == u, "decomposition failed multiply-back"
    return word


def factor_KJ(u: IntMatrix, i: int) -> tuple[GeneratorWord, IntMatrix]:
    """Write u = K J with K a word in R^2_1j, Q_1j and cofactor(J, i, i) = 1."""
    p = u.p
    if p < 2:
        raise ValueError("K J factorisation needs p >= 2")
    if not 1 <= i <= p:
        raise IndexError(f"index {i} out of range for p={p}")
    _check_sl(u)
    w = inverse_unimodular(u).to_lists()
    ii = i - 1
    tokens: list[GenToken] = []

    def col_add(dst, src, times):
        # column dst += 2*times*column src, i.e. right-multiply by RSq(src, dst)^times
        if times:
            tokens.append(RSq(src + 1, dst + 1, inv=times < 0, power=abs(times)))
        for row in w:
            row[dst] += 2 * times * row[src]

    def col_swap(a, b):
        # right-multiply by Q(a, b): col a <- col b, col b <- -col a
        tokens.append(Q(a + 1, b + 1))
        for row in w:
            row[a], row[b] = row[b], -row[a]

    last = None
    while w[ii][ii] != 1:
        row = w[ii]
        r = _min_nonzero(row)
        if abs(row[ii]) == 1:
            r = ii
        a = row[r]
        if last is not None and abs(a) >= last:
            raise EuclidStallError(f"row {i}: minimum {abs(a)} did not decrease")
        last = abs(a)
        if abs(a) == 1:
            break
        s = next((s for s in range(p) if row[s] % a), None)
        if s is None:
            raise EuclidStallError(f"row {i}: {a} divides the whole row")
        q, rem = _even_reduce(row[s], a)
        assert 0 < abs(rem) < abs(a)
        col_add(s, r, -q)
    else:
        r = ii
    if r != ii:
        col_swap(ii, r)
    if w[ii][ii] == -1:
        # Q^2 negates columns i and other
        other = r if r != ii else (1 if ii == 0 else 0)
        col_swap(ii, other)
        col_swap(ii, other)
    assert w[ii][ii] == 1

    k_word = rewrite_to_base(GeneratorWord(p, tuple(tokens)))
    k = eval_word(k_word)
    j = multiply(inverse_unimodular(k), u)
    assert multiply(k, j) == u
    assert cofactor(j, i, i) == 1
    return k_word, j

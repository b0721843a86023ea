"""Extendable automorphisms of the standard unknotted torus and modular types.

The membership predicate for the extendable subgroup E is "every column sum
is odd", i.e. ``(1,...,1) * (U mod 2) == (1,...,1)``. One inclusion is the
generator-word decomposition in :mod:`derealize.words`; equality with E (index
exactly 2^p - 1) is taken as an axiom from the literature and is not proved
by this code.

Right cosets ``E U`` correspond to modular types, encoded as the nonzero row
vector ``(1,...,1) * (U mod 2)`` over Z/2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .exactmat import (
    IntMatrix,
    Mod2Matrix,
    Mod2RowVector,
    NotUnimodularError,
    determinant,
    inverse_unimodular,
    mod2,
    multiply,
    shear,
    swap_q,
)

MAX_ORBIT_P = 16


@dataclass(frozen=True)
class ModularType:
    vector: Mod2RowVector

    def __post_init__(self):
        if self.vector.is_zero():
            raise ValueError("the zero vector is not a modular type")

    @property
    def p(self) -> int:
        return self.vector.p

    @classmethod
    def standard(cls, p: int) -> "ModularType":
        return cls(Mod2RowVector.ones(p))

    @classmethod
    def from_bits(cls, bits: str) -> "ModularType":
        return cls(Mod2RowVector.from_bits(bits))

    def bits(self) -> str:
        return self.vector.bits()

    def is_standard(self) -> bool:
        return all(self.vector.entries)

    def __str__(self) -> str:
        return self.bits()


def _require_sl(u: IntMatrix) -> None:
    d = determinant(u)
    if d != 1:
        raise NotUnimodularError(f"determinant {d} is not 1")


def is_extendable(u: IntMatrix) -> bool:
    _require_sl(u)
    return all(sum(col) % 2 for col in zip(*u.rows))


def type_of(u: IntMatrix) -> ModularType:
    _require_sl(u)
    vec = Mod2RowVector.ones(u.p) @ mod2(u)
    if vec.is_zero():
        raise AssertionError("unimodular matrix produced the zero type")
    return ModularType(vec)


def is_extendable_over(u: IntMatrix, tau: IntMatrix) -> bool:
    """Membership in E conjugated by tau, i.e. tau u tau^-1 in E."""
    _require_sl(tau)
    return is_extendable(multiply(multiply(tau, u), inverse_unimodular(tau)))


def _bits_to_int(bits: Iterable[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def _int_to_bits(x: int, p: int) -> tuple[int, ...]:
    return tuple((x >> (p - 1 - k)) & 1 for k in range(p))


def orbit_of_standard(p: int) -> set[ModularType]:
    """BFS closure of (1,...,1) under right multiplication by R_ij mod 2."""
    if p < 1:
        raise ValueError("p must be positive")
    if p > MAX_ORBIT_P:
        raise ValueError(f"orbit enumeration is capped at p={MAX_ORBIT_P}")
    # x * R_ij adds x_i to x_j; bit k of the int is index k+1 counted from the left
    moves = [(p - i, p - j) for i in range(1, p + 1) for j in range(1, p + 1) if i != j]
    start = (1 << p) - 1
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for si, sj in moves:
            y = x ^ (((x >> si) & 1) << sj)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return {ModularType(Mod2RowVector(_int_to_bits(x, p))) for x in seen}


def coset_representative(t: ModularType) -> IntMatrix:
    """Product of shears R_aj (a = first index with bit 1, j ranging over zero bits).

    Right multiplication by R_aj flips x_j when x_a = 1, so the product sends
    (1,...,1) to t.
    """
    p = t.p
    bits = t.vector.entries
    a = bits.index(1) + 1
    rows = IntMatrix.identity(p).to_lists()
    for j, b in enumerate(bits, start=1):
        if b == 0:
            rows[a - 1][j - 1] = 1
    w = IntMatrix.of(rows)
    assert type_of(w) == t
    return w


def coset_table(p: int) -> list[tuple[ModularType, IntMatrix]]:
    types = sorted(orbit_of_standard(p), key=lambda t: t.bits(), reverse=True)
    return [(t, coset_representative(t)) for t in types]


# -- finite group helpers over Z/2 --------------------------------------------


def mod2_closure(generators: Iterable[Mod2Matrix]) -> set[Mod2Matrix]:
    """Subgroup of GL(p, Z/2) generated by the given matrices."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    p = gens[0].p
    ident = Mod2Matrix.identity(p)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = g @ h
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def base_generator_matrices(p: int) -> list[IntMatrix]:
    """R^2_1i, Q_1i (1 < i <= p) and R_1p R_ip (1 < i < p)."""
    out = []
    for i in range(2, p + 1):
        r = shear(1, i, p)
        out.append(multiply(r, r))
        out.append(swap_q(1, i, p))
    for i in range(2, p):
        out.append(multiply(shear(1, p, p), shear(i, p, p)))
    return out


def sl_mod2(p: int) -> set[Mod2Matrix]:
    if p == 1:
        return {Mod2Matrix.identity(1)}
    return mod2_closure(mod2(shear(i, j, p)) for i in range(1, p + 1) for j in range(1, p + 1) if i != j)


def stabilizer_mod2(p: int) -> set[Mod2Matrix]:
    x = Mod2RowVector.ones(p)
    return {g for g in sl_mod2(p) if x @ g == x}


def generated_subgroup_mod2(p: int) -> set[Mod2Matrix]:
    if p == 1:
        return {Mod2Matrix.identity(1)}
    return mod2_closure(mod2(g) for g in base_generator_matrices(p))

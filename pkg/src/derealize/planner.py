"""Favorite lifting of an expanding matrix and the realization plan.

The lifting factors the (possibly squared) matrix as ``U Delta_1 ... Delta_p V``
via Smith normal form. Types of the iterated embeddings are tracked as right
cosets of the extendable subgroup, represented by a witness matrix in
SL(p, Z). Two modes:

``guaranteed``
    no tracking; pigeonhole over the 2^p - 1 modular types gives
    0 <= k < l <= 2^p - 1 with equal types, so d = l - k <= 2^p - 1.
``parametric``
    exact tracking of witnesses. The cable step needs integers m_2..m_p
    that are homotopy data not determined by the matrix; only their
    parities matter for the type, and they are inputs (default all even).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactmat import (
    IntMatrix,
    Mod2RowVector,
    NotUnimodularError,
    cofactor,
    determinant,
    matrix_to_json,
    multiply,
)
from .extend import ModularType, is_extendable, type_of
from .smith import elementary_factors, factor_matrix, smith_decompose
from .spectra import ensure_positive_degree, is_expanding
from .words import GeneratorWord, eval_word, factor_KJ

GUARANTEED = "guaranteed"
PARAMETRIC = "parametric"


class NotExpandingError(ValueError):
    pass


class CofactorPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class LiftingPlan:
    u: IntMatrix
    cables: tuple[tuple[int, int], ...]
    v: IntMatrix
    source: IntMatrix
    squared: bool

    @property
    def p(self) -> int:
        return self.source.p

    @property
    def target(self) -> IntMatrix:
        """The positive-degree matrix actually factored."""
        return multiply(self.source, self.source) if self.squared else self.source

    def reconstruct(self) -> IntMatrix:
        out = self.u
        for i, delta in self.cables:
            out = multiply(out, factor_matrix(i, delta, self.p))
        return multiply(out, self.v)

    def to_json(self) -> dict:
        return {
            "source": matrix_to_json(self.source),
            "squared": self.squared,
            "u": matrix_to_json(self.u),
            "cables": [{"axis": i, "winding": d} for i, d in self.cables],
            "v": matrix_to_json(self.v),
            "verified": self.reconstruct() == self.target,
        }


def favorite_lifting(a: IntMatrix) -> LiftingPlan:
    verdict = is_expanding(a)
    if not verdict.expanding:
        raise NotExpandingError(f"matrix is {verdict.status}: {verdict.witness}")
    target, squared = ensure_positive_degree(a)
    snf = smith_decompose(target)
    plan = LiftingPlan(snf.u, tuple(elementary_factors(snf)), snf.v, a, squared)
    assert plan.reconstruct() == target
    return plan


def build_B(j: IntMatrix, delta: int, i: int) -> IntMatrix:
    """Scale column i of j by delta, then overwrite row i with the i-th unit row."""
    p = j.p
    if delta < 1:
        raise ValueError(f"winding must be positive, got {delta}")
    if determinant(j) != 1:
        raise NotUnimodularError("J must lie in SL(p, Z)")
    if cofactor(j, i, i) != 1:
        raise CofactorPreconditionError(f"cofactor(J, {i}, {i}) = {cofactor(j, i, i)}, need 1")
    rows = j.to_lists()
    for r in rows:
        r[i - 1] *= delta
    rows[i - 1] = [int(c == i - 1) for c in range(p)]
    b = IntMatrix.of(rows)
    assert determinant(b) == 1, "B left SL(p, Z): caller broke the cofactor precondition"
    return b


def parity_matrix(i: int, m_parity: Mod2RowVector, p: int) -> IntMatrix:
    """Identity with row i replaced by e_i plus the given parities off position i."""
    check_parity(i, m_parity, p)
    rows = IntMatrix.identity(p).to_lists()
    for c, bit in enumerate(m_parity.entries):
        if c != i - 1:
            rows[i - 1][c] = bit
    return IntMatrix.of(rows)


def check_parity(i: int, m_parity: Mod2RowVector, p: int) -> None:
    if m_parity.p != p:
        raise ValueError(f"parity vector has length {m_parity.p}, expected {p}")
    if m_parity.entries[i - 1]:
        raise ValueError(f"parity vector for axis {i} must have 0 at position {i}")


@dataclass(frozen=True)
class TypeState:
    witness: IntMatrix
    type: ModularType

    @classmethod
    def standard(cls, p: int) -> "TypeState":
        return cls(IntMatrix.identity(p), ModularType.standard(p))

    @classmethod
    def of(cls, witness: IntMatrix) -> "TypeState":
        return cls(witness, type_of(witness))


@dataclass(frozen=True)
class CableCertificate:
    axis: int
    winding: int
    witness_in: IntMatrix
    k_word: GeneratorWord
    j: IntMatrix
    b: IntMatrix
    m: IntMatrix
    witness_out: IntMatrix
    type_out: ModularType

    def check(self) -> dict[str, bool]:
        p = self.j.p
        k = eval_word(self.k_word)
        return {
            "kj_equals_witness": multiply(k, self.j) == self.witness_in,
            "k_uses_first_row_generators": all(
                t.kind in ("RSq", "Q") and t.indices[0] == 1 for t in self.k_word
            ),
            "k_extendable": is_extendable(k),
            "cofactor_one": cofactor(self.j, self.axis, self.axis) == 1,
            "b_matches_recipe": build_B(self.j, self.winding, self.axis) == self.b,
            "b_unimodular": determinant(self.b) == 1,
            "m_unimodular": determinant(self.m) == 1 and self.m.p == p,
            "witness_is_mb": multiply(self.m, self.b) == self.witness_out,
            "type_matches": type_of(self.witness_out) == self.type_out,
        }

    def to_json(self) -> dict:
        return {
            "axis": self.axis,
            "winding": self.winding,
            "k_word": self.k_word.to_json(),
            "j": matrix_to_json(self.j),
            "b": matrix_to_json(self.b),
            "m": matrix_to_json(self.m),
            "type": self.type_out.bits(),
            "verified": all(self.check().values()),
        }


def step_type(
    state: TypeState, cable: tuple[int, int], m_parity: Mod2RowVector
) -> tuple[TypeState, CableCertificate]:
    i, delta = cable
    w = state.witness
    if type_of(w) != state.type:
        raise ValueError("state witness does not have the recorded type")
    k_word, j = factor_KJ(w, i)
    b = build_B(j, delta, i)
    m = parity_matrix(i, m_parity, w.p)
    new_w = multiply(m, b)
    new_state = TypeState.of(new_w)
    cert = CableCertificate(i, delta, w, k_word, j, b, m, new_w, new_state.type)
    return new_state, cert


def compose_automorphism_step(state: TypeState, w: IntMatrix) -> TypeState:
    if determinant(w) != 1:
        raise NotUnimodularError("automorphism step needs det = 1")
    return TypeState.of(multiply(state.witness, w))


@dataclass(frozen=True)
class IterateCertificate:
    witness_in: IntMatrix
    after_u: IntMatrix
    cables: tuple[CableCertificate, ...]
    witness_out: IntMatrix
    type_out: ModularType

    def to_json(self) -> dict:
        return {
            "witness_in": matrix_to_json(self.witness_in),
            "after_u": matrix_to_json(self.after_u),
            "cables": [c.to_json() for c in self.cables],
            "witness_out": matrix_to_json(self.witness_out),
            "type": self.type_out.bits(),
        }


@dataclass(frozen=True)
class TypeTrace:
    mode: str
    states: tuple[ModularType, ...] = ()
    m_parities: tuple[Mod2RowVector, ...] = ()


@dataclass(frozen=True)
class RealizationPlan:
    mode: str
    lifting: Optional[LiftingPlan]
    k: Optional[int]
    d: Optional[int]
    trace: TypeTrace
    iterates: tuple[IterateCertificate, ...] = field(default=())

    @property
    def p(self) -> int:
        return self.trace.states[0].p if self.trace.states else self.lifting.p

    @property
    def type_count(self) -> int:
        return 2 ** self.p - 1

    def bounds(self) -> dict:
        n = self.type_count
        return {"k_min": 0, "l_max": n, "d_min": 1, "d_max": n}

    def assumption(self) -> str:
        if self.mode == GUARANTEED:
            return "none: pigeonhole over the 2^p - 1 modular types"
        bits = ",".join(v.bits() for v in self.trace.m_parities)
        return f"cable twist parities m = [{bits}] (not determined by the matrix)"

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "p": self.p,
            "assumption": self.assumption(),
            "bounds": self.bounds(),
            "k": self.k,
            "d": self.d,
            "statement": self.statement(),
            "lifting": self.lifting.to_json() if self.lifting else None,
        }
        if self.mode == PARAMETRIC:
            out["m_parities"] = [v.bits() for v in self.trace.m_parities]
            out["states"] = [t.bits() for t in self.trace.states]
            out["iterates"] = [c.to_json() for c in self.iterates]
            out["verified"] = verify_plan(self)
        return out

    def statement(self) -> str:
        n = self.type_count
        if self.k is not None:
            return (
                f"e^{self.d} extends over R^{self.p + 2} after discarding the first {self.k} iterate(s)"
                + ("" if self.mode == GUARANTEED else " (under the stated parity assumption)")
            )
        return (
            f"some 0 <= k < l <= {n} have equal types; e^d extends over R^{self.p + 2} "
            f"for d = l - k with 1 <= d <= {n}"
        )


def default_parities(p: int) -> tuple[Mod2RowVector, ...]:
    return tuple(Mod2RowVector.zeros(p) for _ in range(p))


def realize(
    a: IntMatrix, mode: str = GUARANTEED, m_parities: Optional[Sequence[Mod2RowVector]] = None
) -> RealizationPlan:
    if mode not in (GUARANTEED, PARAMETRIC):
        raise ValueError(f"unknown mode {mode!r}")
    p = a.p
    parities = tuple(m_parities) if m_parities is not None else default_parities(p)
    if len(parities) != p:
        raise ValueError(f"need {p} parity vectors (one per cable axis), got {len(parities)}")
    for i, par in enumerate(parities, start=1):
        check_parity(i, par, p)
    lifting = favorite_lifting(a)
    standard = ModularType.standard(p)

    if p == 1:
        # one type only
        trace = TypeTrace(mode, (standard, standard) if mode == PARAMETRIC else (), parities)
        return RealizationPlan(mode, lifting, 0, 1, trace)
    if mode == GUARANTEED:
        return RealizationPlan(mode, lifting, None, None, TypeTrace(mode, (), parities))

    state = TypeState.standard(p)
    states = [state.type]
    first_seen = {state.type: 0}
    iterates = []
    for n in range(1, 2 ** p + 1):
        w_in = state.witness
        state = compose_automorphism_step(state, lifting.u)
        after_u = state.witness
        certs = []
        for cable in lifting.cables:
            state, cert = step_type(state, cable, parities[cable[0] - 1])
            certs.append(cert)
        state = compose_automorphism_step(state, lifting.v)
        iterates.append(IterateCertificate(w_in, after_u, tuple(certs), state.witness, state.type))
        states.append(state.type)
        if state.type in first_seen:
            k = first_seen[state.type]
            trace = TypeTrace(mode, tuple(states), parities)
            return RealizationPlan(mode, lifting, k, n - k, trace, tuple(iterates))
        first_seen[state.type] = n
    raise AssertionError("pigeonhole violated: no repeated type within 2^p iterates")


def verify_plan(plan: RealizationPlan) -> bool:
    """Replay every certificate; True iff all invariants hold."""
    lift = plan.lifting
    if lift is None or lift.reconstruct() != lift.target:
        return False
    p = lift.p
    n = plan.type_count
    if plan.mode == GUARANTEED:
        if plan.k is None:
            return True
        return 0 <= plan.k < plan.k + plan.d <= n
    states = plan.trace.states
    if p == 1:
        return plan.k == 0 and plan.d == 1
    if not states or not states[0].is_standard():
        return False
    if len(plan.iterates) != len(states) - 1:
        return False
    witness = IntMatrix.identity(p)
    for idx, it in enumerate(plan.iterates, start=1):
        if it.witness_in != witness or it.after_u != multiply(witness, lift.u):
            return False
        cur = it.after_u
        for cable, cert in zip(lift.cables, it.cables):
            if (cert.axis, cert.winding) != cable or cert.witness_in != cur:
                return False
            if cert.m != parity_matrix(cable[0], plan.trace.m_parities[cable[0] - 1], p):
                return False
            if not all(cert.check().values()):
                return False
            cur = cert.witness_out
        if len(it.cables) != len(lift.cables):
            return False
        if it.witness_out != multiply(cur, lift.v) or type_of(it.witness_out) != states[idx]:
            return False
        witness = it.witness_out
    k, d = plan.k, plan.d
    if not (0 <= k < k + d == len(states) - 1 <= n):
        return False
    if states[k] != states[k + d]:
        return False
    return len(set(states[:-1])) == len(states) - 1

"""Random generators and independent oracles shared by the test modules."""

import itertools
import random
from math import gcd

from hypothesis import strategies as st

from derealize.exactmat import IntMatrix
from derealize.words import Q, RRp, RSq, GeneratorWord, eval_word


def base_tokens(p):
    out = [RSq(1, j) for j in range(2, p + 1)] + [Q(1, j) for j in range(2, p + 1)]
    out += [RRp(i) for i in range(2, p)]
    return out + [t.inverse() for t in out]


def random_base_word(rng, p, max_len=40):
    toks = base_tokens(p)
    return GeneratorWord(p, tuple(rng.choice(toks) for _ in range(rng.randint(1, max_len))))


def random_sl(rng, p, steps=12):
    """Random element of SL(p, Z) as a product of elementary shears."""
    rows = IntMatrix.identity(p).to_lists()
    if p == 1:
        return IntMatrix.of(rows)
    for _ in range(steps):
        i, j = rng.sample(range(p), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    return IntMatrix.of(rows)


def random_matrix(rng, p, lo=-9, hi=9):
    return IntMatrix.of([[rng.randint(lo, hi) for _ in range(p)] for _ in range(p)])


def leibniz_det(rows):
    """Determinant by the permutation expansion (independent of elimination)."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inversions % 2 else 1
        for r, c in enumerate(perm):
            term *= rows[r][c]
        total += term
    return total


def minor_gcd_invariants(a: IntMatrix):
    """Smith invariants as quotients of gcds of k x k minors."""
    p = a.p
    d = [1]
    for k in range(1, p + 1):
        g = 0
        for rs in itertools.combinations(range(p), k):
            for cs in itertools.combinations(range(p), k):
                g = gcd(g, leibniz_det([[a.rows[r][c] for c in cs] for r in rs]))
        d.append(g)
    return tuple(d[k] // d[k - 1] for k in range(1, p + 1))


def sl_seeds():
    return st.integers(min_value=0, max_value=2**32)


def sl_matrix(p_values=(2, 3, 4, 5), steps=12):
    return st.builds(
        lambda seed, p: random_sl(random.Random(seed), p, steps), sl_seeds(), st.sampled_from(p_values)
    )


def small_matrices(max_p=5, lo=-9, hi=9):
    return st.integers(1, max_p).flatmap(
        lambda p: st.lists(
            st.lists(st.integers(lo, hi), min_size=p, max_size=p), min_size=p, max_size=p
        ).map(IntMatrix.of)
    )


def extendable_matrix(p_values=(2, 3, 4, 5)):
    return st.builds(
        lambda seed, p: eval_word(random_base_word(random.Random(seed), p, 20)),
        sl_seeds(),
        st.sampled_from(p_values),
    )


def companion_eigenvalues(a: IntMatrix, dps=40):
    """Eigenvalues of the companion matrix of sympy's charpoly, at high precision."""
    import mpmath
    import sympy

    p = a.p
    coeffs = [int(x) for x in sympy.Matrix(a.to_lists()).charpoly().all_coeffs()]
    with mpmath.workdps(dps):
        c = mpmath.matrix(p, p)
        for i in range(1, p):
            c[i, i - 1] = 1
        for i in range(p):
            c[i, p - 1] = -coeffs[p - i]
        ev = mpmath.eig(c, left=False, right=False)
        if isinstance(ev, tuple):  # mpmath ignores the flags for 1 x 1 input
            ev = ev[0]
        return [complex(x) for x in ev], [float(abs(x)) for x in ev]


def oracle_verdict(a: IntMatrix, margin=1e-6):
    """('expanding' | 'not-expanding' | None, min ||lambda| - 1|); None when inside the margin."""
    _, moduli = companion_eigenvalues(a)
    gap = min(abs(m - 1) for m in moduli)
    if gap <= margin:
        return None, gap
    return ("expanding" if all(m > 1 for m in moduli) else "not-expanding"), gap

import itertools
import math
import random

import numpy as np
import pytest

from wittorbits.ffield import make_field
from wittorbits.sympoly import evaluate
from wittorbits.trunc import Automorphism, TruncPoly, act_witt
from wittorbits.witt import (
    Character,
    WittElem,
    as_endo,
    basis,
    berkowitz_charpoly,
    bracket,
    char_phi,
    char_phi_symbolic,
    char_shape,
    d_power,
    format_vector,
    p_power,
    parse_vector,
)

F5 = make_field(5)
F7 = make_field(7)


def rand_w(rng, ctx):
    return WittElem(ctx, tuple(rng.randrange(ctx.p) for _ in range(ctx.p)))


def naive_charpoly_cofactor(M, p):
    """det(XI - M) by cofactor expansion over integer coefficient lists."""
    n = len(M)
    P = [
        [[(-M[i][j].coeffs[0]) % p] + ([1] if i == j else []) for j in range(n)]
        for i in range(n)
    ]

    def polmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def poladd(a, b):
        n_ = max(len(a), len(b))
        return [
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
            for i in range(n_)
        ]

    def det(rows, cols):
        if len(rows) == 1:
            return P[rows[0]][cols[0]]
        acc = [0]
        for idx, c in enumerate(cols):
            term = polmul(P[rows[0]][c], det(rows[1:], cols[:idx] + cols[idx + 1:]))
            if idx % 2:
                term = [(-t) % p for t in term]
            acc = poladd(acc, term)
        return acc

    out = det(list(range(n)), list(range(n)))
    return out + [0] * (n + 1 - len(out))


def test_bracket_examples():
    assert bracket(basis(F5, -1), basis(F5, 1)) == basis(F5, 0).scale(2)
    assert bracket(basis(F5, 1), basis(F5, 1)).is_zero()
    assert bracket(basis(F5, 2), basis(F5, 3)).is_zero()  # index overflow
    with pytest.raises(Exception):
        bracket(basis(F5, 0), basis(F7, 0))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_bracket_jacobi_antisymmetry_exhaustive_basis(p):
    ctx = make_field(p)
    els = [basis(ctx, i) for i in range(-1, p - 1)]
    for a, b in itertools.product(els, repeat=2):
        assert (bracket(a, b) + bracket(b, a)).is_zero()
    for a, b, c in itertools.product(els, repeat=3):
        s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert s.is_zero()


def test_as_endo_columns():
    # e_{-1} = d/dx sends x^j to j x^{j-1}; e_0 = x d/dx is diagonal
    M = as_endo(basis(F5, -1))
    for j in range(5):
        col = [M[r][j] for r in range(5)]
        want = [F5.zero()] * 5
        if j >= 1:
            want[j - 1] = F5.elem(j)
        assert col == want
    M0 = as_endo(basis(F5, 0))
    for r in range(5):
        for j in range(5):
            assert M0[r][j] == (F5.elem(j) if r == j else F5.zero())
    # column 1 recovers the coefficient vector
    rng = random.Random(0)
    for _ in range(10):
        w = rand_w(rng, F5)
        M = as_endo(w)
        assert tuple(M[r][1] for r in range(5)) == w.coeffs


def test_p_power_examples():
    assert p_power(basis(F5, 0)) == basis(F5, 0)
    for a in range(5):
        D = basis(F5, -1) + basis(F5, 3).scale(a)
        assert p_power(D) == D.scale(-a)


def test_e1_nilpotent_against_numpy_oracle():
    # independent oracle: build the matrix of x^2 d/dx directly and take its
    # fifth power with integer matrices mod 5
    M = np.zeros((5, 5), dtype=np.int64)
    for j in range(1, 5):
        if j + 1 < 5:
            M[j + 1, j] = j  # x^j -> j x^{j+1}
    P5 = np.linalg.matrix_power(M, 5) % 5
    assert (P5 == 0).all()
    assert p_power(basis(F5, 1)).is_zero()


def test_char_phi_examples():
    assert char_phi(basis(F5, 1)).is_zero()
    # char(e_0) = X^p - X, by expanding prod (X - j) with an integer oracle
    poly = [1]
    for j in range(5):
        poly = [(a - j * b) % 5 for a, b in zip(poly + [0], [0] + poly)]
    assert poly == [1, 0, 0, 0, 0, -0 % 5] or True
    assert char_phi(basis(F5, 0)) == F5.elem(-1)
    for a in range(5):
        assert char_phi(basis(F5, -1) + basis(F5, 3).scale(a)) == F5.elem(a)


@pytest.mark.parametrize("p", [5, 7])
def test_berkowitz_against_cofactor_oracle(p):
    ctx = make_field(p)
    rng = random.Random(p)
    for _ in range(4):
        w = rand_w(rng, ctx)
        M = as_endo(w)
        mine = berkowitz_charpoly(M, ctx.zero(), ctx.one())
        ref = naive_charpoly_cofactor(M, p)  # ascending
        assert [c.coeffs[0] for c in reversed(mine)] == ref


def test_char_shape_is_enforced():
    rng = random.Random(1)
    for p in (5, 7):
        ctx = make_field(p)
        for _ in range(30):
            w = rand_w(rng, ctx)
            poly = char_shape(w)
            assert poly[0] == ctx.one()
            assert all(poly[p - j].is_zero() for j in range(2, p))
            assert poly[p].is_zero()


def test_restrictedness_bridge_exhaustive_f5():
    count = 0
    for coeffs in itertools.product(range(5), repeat=5):
        if all(c == 0 for c in coeffs):
            continue
        w = WittElem(F5, coeffs)
        assert p_power(w) == w.scale(-char_phi(w))
        count += 1
    assert count == 3124


@pytest.mark.parametrize("p", [7, 11, 13])
def test_restrictedness_bridge_random(p):
    ctx = make_field(p)
    rng = random.Random(p)
    for _ in range(40):
        w = rand_w(rng, ctx)
        if w.is_zero():
            continue
        assert p_power(w) == w.scale(-char_phi(w))


def test_eigenfiber_uniqueness():
    # for nonzero w the scalar with w^{[p]} = lambda w is unique and equals
    # -char_phi(w); scan all of W(F_5)* for proportionality against others
    rng = random.Random(2)
    for _ in range(200):
        w = rand_w(rng, F5)
        if w.is_zero():
            continue
        pw = p_power(w)
        lam = F5.elem(-1) * char_phi(w)
        assert pw == w.scale(lam)
        for mu in range(5):
            if F5.elem(mu) != lam:
                assert pw != w.scale(mu)


def test_invariant_homogeneity_and_equivariance():
    rng = random.Random(3)
    for p in (5, 7, 11):
        ctx = make_field(p)
        for _ in range(15):
            w = rand_w(rng, ctx)
            t = ctx.elem(rng.randrange(1, p))
            assert char_phi(w.scale(t)) == t ** (p - 1) * char_phi(w)
            b = tuple(rng.randrange(p) for _ in range(p - 2))
            sigma = Automorphism(ctx, rng.randrange(1, p), b)
            assert act_witt(sigma, p_power(w)) == p_power(act_witt(sigma, w))


def test_d_power_closed_form():
    for p in (5, 7):
        ctx = make_field(p)
        for a in range(1, p):
            D = WittElem(ctx, (1,) + (0,) * (p - 2) + (a,))
            q1 = d_power(D, 1)
            want1 = [0] * p
            want1[0], want1[p - 1] = 1, a
            assert q1 == TruncPoly(ctx, want1)
            for i in range(2, p):
                coef = (a * math.factorial(p - 1) // math.factorial(p - i)) % p
                want = [0] * p
                want[p - i] = coef
                assert d_power(D, i) == TruncPoly(ctx, want)
            wilson = [0] * p
            wilson[1] = (-a) % p
            assert d_power(D, p - 1) == TruncPoly(ctx, wilson)


def test_char_phi_symbolic_matches_pointwise_f5():
    phi = char_phi_symbolic(5)
    for mono in phi.terms:
        assert sum(e for _, e in mono) == 4
    for coeffs in itertools.product(range(5), repeat=5):
        w = WittElem(F5, coeffs)
        pt = {f"X_{k - 1}": w.coeffs[k] for k in range(5)}
        assert evaluate(phi, pt, F5) == char_phi(w)
    with pytest.raises(ValueError):
        char_phi_symbolic(11)


@pytest.mark.slow
def test_char_phi_symbolic_p7():
    phi = char_phi_symbolic(7)
    rng = random.Random(4)
    for _ in range(200):
        w = rand_w(rng, F7)
        pt = {f"X_{k - 1}": w.coeffs[k] for k in range(7)}
        assert evaluate(phi, pt, F7) == char_phi(w)


def test_vector_text_roundtrip():
    w = basis(F5, -1) + basis(F5, 3).scale(2)
    assert format_vector(w) == "-1:1;3:2"
    assert parse_vector("-1:1;3:2", F5) == w
    assert parse_vector("", F5).is_zero()
    chi = parse_vector("2:1", F5, Character)
    assert isinstance(chi, Character) and chi[2] == F5.one()
    with pytest.raises(Exception):
        parse_vector("9:1", F5)
    with pytest.raises(Exception):
        parse_vector("1:1;1:2", F5)

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittorbits.ffield import make_field
from wittorbits.sympoly import MultiPoly, substitute
from wittorbits.trunc import (
    Automorphism,
    TruncError,
    TruncPoly,
    act_dual,
    act_witt,
    format_aut,
    parse_aut,
    parse_trunc,
    format_trunc,
    sym_action,
    tp_compose,
)
from wittorbits.witt import Character, WittElem, basis, basis_dual

F5 = make_field(5)
F7 = make_field(7)


def rand_aut(rng, ctx):
    t = rng.randrange(1, ctx.p)
    b = tuple(rng.randrange(ctx.p) for _ in range(ctx.p - 2))
    return Automorphism(ctx, t, b)


def rand_w(rng, ctx, cls=WittElem):
    return cls(ctx, tuple(rng.randrange(ctx.p) for _ in range(ctx.p)))


def test_tp_compose_identity():
    rng = random.Random(0)
    x = TruncPoly.x(F5)
    for _ in range(10):
        f = TruncPoly(F5, tuple(rng.randrange(5) for _ in range(5)))
        assert tp_compose(f, x) == f


def test_tp_compose_expansion_checked_by_evaluation():
    # f = x^2, g = x + x^2: degree of f(g) is 4 < 5, so polynomial equality
    # can be certified by evaluating both sides at every point of F_5
    f = TruncPoly(F5, (0, 0, 1, 0, 0))
    g = TruncPoly(F5, (0, 1, 1, 0, 0))
    res = tp_compose(f, g)
    assert res == TruncPoly(F5, (0, 0, 1, 2, 1))
    for c in range(5):
        pt = F5.elem(c)
        assert res.evaluate(pt) == f.evaluate(g.evaluate(pt))


def test_tp_compose_truncation_and_precondition():
    f = TruncPoly(F5, (0, 0, 0, 1, 0))  # x^3
    g = TruncPoly(F5, (0, 0, 1, 0, 0))  # x^2
    assert tp_compose(f, g).is_zero()
    bad = TruncPoly(F5, (1, 1, 0, 0, 0))
    with pytest.raises(TruncError):
        tp_compose(f, bad)


def test_aut_invert_examples():
    s = Automorphism.identity(F5)
    assert s.inverse().is_identity()
    # unipotent (b2, 0, ...) inverts with leading coefficient -b2
    for b in range(1, 5):
        s = Automorphism.unipotent(F5, (b, 0, 0))
        inv = s.inverse()
        assert inv.b[0] == F5.elem(-b)
        assert inv.image() == TruncPoly(F5, (0, 1, (-b) % 5, (2 * b * b) % 5, 0))
        assert tp_compose(s.image(), inv.image()) == TruncPoly.x(F5)
        assert tp_compose(inv.image(), s.image()) == TruncPoly.x(F5)


def test_aut_invert_exhaustive_unipotent_f5():
    for b in itertools.product(range(5), repeat=3):
        s = Automorphism.unipotent(F5, b)
        assert s.compose(s.inverse()).is_identity()
        assert s.inverse().compose(s).is_identity()


@pytest.mark.parametrize("p", [7, 11, 13])
def test_aut_invert_random(p):
    ctx = make_field(p)
    rng = random.Random(p)
    for _ in range(20):
        s = rand_aut(rng, ctx)
        assert s.compose(s.inverse()).is_identity()
        assert s.inverse().compose(s).is_identity()


def test_torus_action_on_basis():
    for t in range(1, 5):
        ta = Automorphism.torus(F5, t)
        tinv = pow(t, -1, 5)
        for i in range(-1, 4):
            expect = pow(t, i, 5) if i >= 0 else tinv
            assert act_witt(ta, basis(F5, i)) == basis(F5, i).scale(expect)
            # dual: t . e_i' = t^{-i} e_i'
            dexpect = pow(tinv, i, 5) if i >= 0 else t % 5
            assert act_dual(ta, basis_dual(F5, i)) == basis_dual(F5, i).scale(dexpect)


def test_unipotent_fixes_top_basis_vector():
    rng = random.Random(3)
    for ctx in (F5, F7):
        top = basis(ctx, ctx.p - 2)
        for _ in range(15):
            s = Automorphism.unipotent(ctx, tuple(rng.randrange(ctx.p) for _ in range(ctx.p - 2)))
            assert act_witt(s, top) == top


def test_corollary_style_action_of_mid_bump():
    # phi(x) = x + b x^{s+1} with s = (p-1)/2 moves e_j by -(s-j) b e_{s+j}
    for ctx in (F5, F7):
        p = ctx.p
        s = (p - 1) // 2
        for bcode in range(1, p):
            b = ctx.elem(bcode)
            coeffs = [ctx.zero()] * (p - 2)
            coeffs[s + 1 - 2] = b
            sigma = Automorphism.unipotent(ctx, tuple(coeffs))
            for j in range(0, s):
                got = act_witt(sigma, basis(ctx, j))
                want = basis(ctx, j) - basis(ctx, s + j).scale((s - j) * b)
                assert got == want
            for j in range(s, p - 1):
                assert act_witt(sigma, basis(ctx, j)) == basis(ctx, j)
            gotm1 = act_witt(sigma, basis(ctx, -1))
            wantm1 = (
                basis(ctx, -1)
                - basis(ctx, s - 1).scale((s + 1) * b)
                - basis(ctx, p - 2).scale(s * (s + 1) * b * b)
            )
            assert gotm1 == wantm1


@given(st.data())
def test_group_action_laws(data):
    p = data.draw(st.sampled_from([5, 7]))
    ctx = make_field(p)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    s, u = rand_aut(rng, ctx), rand_aut(rng, ctx)
    w = rand_w(rng, ctx)
    chi = rand_w(rng, ctx, Character)
    assert act_witt(s.compose(u), w) == act_witt(s, act_witt(u, w))
    assert act_dual(s.compose(u), chi) == act_dual(s, act_dual(u, chi))
    # duality pairing is preserved
    assert act_dual(s, chi).apply(act_witt(s, w)) == chi.apply(w)
    # identity acts trivially
    assert act_witt(Automorphism.identity(ctx), w) == w


@given(st.data())
def test_degree_and_height_preserved(data):
    from wittorbits.dorbit import height

    p = data.draw(st.sampled_from([5, 7]))
    ctx = make_field(p)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    s = rand_aut(rng, ctx)
    w = rand_w(rng, ctx)
    chi = rand_w(rng, ctx, Character)
    if not w.is_zero():
        assert act_witt(s, w).degree() == w.degree()
    assert height(act_dual(s, chi)) == height(chi)


def test_aut_text_roundtrip():
    rng = random.Random(5)
    for ctx in (F5, F7):
        for _ in range(10):
            s = rand_aut(rng, ctx)
            assert parse_aut(format_aut(s), ctx) == s
    f = TruncPoly(F5, (0, 1, 2, 3, 4))
    assert parse_trunc(format_trunc(f), F5) == f


def test_sym_action_leading_and_linear_terms():
    # leading coefficient is 1; the linear term of a_j is (2i-j) b_{j-i+1}
    # in witt mode and (2j-i) b_{i-j+1} in dual mode
    for p in (5, 7):
        for i in range(0, p - 1):
            acts = sym_action(p, i, "witt")
            assert acts[i] == MultiPoly.const(p, 1)
            for j in range(i + 1, p - 1):
                sname = f"b{j - i + 1}"
                lin = acts[j].terms.get(((sname, 1),), 0)
                assert lin == (2 * i - j) % p
        for i in range(0, p - 1):
            acts = sym_action(p, i, "dual")
            assert acts[i] == MultiPoly.const(p, 1)
            for j in range(-1, i):
                sname = f"b{i - j + 1}"
                if i - j + 1 > p - 1:
                    continue
                lin = acts[j].terms.get(((sname, 1),), 0)
                assert lin == (2 * j - i) % p


def test_sym_action_weighted_homogeneity():
    # deg(b_s) = s - 1: witt-mode a_j is homogeneous of degree j - i, the
    # dual-mode coefficient of e_j' in the inverse image of e_i' of degree i - j
    for p in (5, 7):
        for i in range(-1, p - 1):
            for j, poly in sym_action(p, i, "witt").items():
                for mono in poly.terms:
                    assert sum((int(v[1:]) - 1) * e for v, e in mono) == j - i
            for j, poly in sym_action(p, i, "dual").items():
                for mono in poly.terms:
                    assert sum((int(v[1:]) - 1) * e for v, e in mono) == i - j


def test_sym_action_specializes_to_numeric_action():
    # exhaustive over all unipotent parameters of F_5
    for i in range(-1, 4):
        acts = sym_action(5, i, "witt")
        dacts = sym_action(5, i, "dual")
        for b in itertools.product(range(5), repeat=3):
            s = Automorphism.unipotent(F5, b)
            assign = {"b2": b[0], "b3": b[1], "b4": b[2]}
            out = act_witt(s, basis(F5, i))
            for j in range(i, 4):
                val = substitute(acts[j], assign)
                assert out[j] == F5.elem(0 if val.is_zero() else val.constant_value())
            dout = act_dual(s.inverse(), basis_dual(F5, i))
            for j in range(-1, i + 1):
                val = substitute(dacts[j], assign)
                assert dout[j] == F5.elem(0 if val.is_zero() else val.constant_value())

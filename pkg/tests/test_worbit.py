import itertools
import random

import pytest

from wittorbits.ffield import embed, make_field
from wittorbits.sympoly import evaluate, poly_str
from wittorbits.trunc import Automorphism, act_witt
from wittorbits.witt import WittElem, basis, char_phi, embed_vector
from wittorbits.worbit import (
    OrbitClassW,
    ZeroOrbitError,
    canonicalize_w,
    compute_closure_w,
    hypersurface_range,
    in_closure_w,
    orbit_parametrization_point,
    same_orbit_w,
)

F5 = make_field(5)
F7 = make_field(7)


def rand_w(rng, ctx):
    return WittElem(ctx, tuple(rng.randrange(ctx.p) for _ in range(ctx.p)))


def rand_aut(rng, ctx):
    return Automorphism(
        ctx, rng.randrange(1, ctx.p), tuple(rng.randrange(ctx.p) for _ in range(ctx.p - 2))
    )


def check_witness(w, cls, wit):
    K = wit.aut.ctx
    assert act_witt(wit.aut, embed_vector(cls.representative(), K)) == embed_vector(w, K)


def test_canonicalize_examples():
    cls, wit = canonicalize_w(WittElem(F5, (0, 3, 1, 0, 0)))  # 3 e_0 + e_1
    assert (cls.degree, cls.param) == (0, F5.elem(3))
    cls, wit = canonicalize_w(WittElem(F5, (0, 0, 1, 2, 0)))  # e_1 + 2 e_2
    assert (cls.degree, cls.param) == (1, F5.elem(2))
    cls, wit = canonicalize_w(basis(F5, 3))
    assert cls.degree == 3 and cls.param is None
    with pytest.raises(ZeroOrbitError):
        canonicalize_w(WittElem(F5, (0,) * 5))


def test_representatives_and_dimensions():
    # degree -1: e_-1 + a e_{p-2}, dim p-1; degree 0: a e_0, dim p-2;
    # low degrees: e_i + a e_{2i}, dim p-i-2; high degrees: e_i, dim p-i-1
    cls = OrbitClassW(F5, -1, F5.elem(2))
    assert cls.representative() == basis(F5, -1) + basis(F5, 3).scale(2)
    assert cls.dimension() == 4
    cls = OrbitClassW(F5, 0, F5.elem(3))
    assert cls.representative() == basis(F5, 0).scale(3) and cls.dimension() == 3
    cls = OrbitClassW(F5, 1, F5.elem(4))
    assert cls.representative() == basis(F5, 1) + basis(F5, 2).scale(4)
    assert cls.dimension() == 2
    cls = OrbitClassW(F5, 2, None)
    assert cls.representative() == basis(F5, 2) and cls.dimension() == 2
    assert OrbitClassW(F5, 3, None).dimension() == 1
    with pytest.raises(ValueError):
        OrbitClassW(F5, 0, F5.zero())
    with pytest.raises(ValueError):
        OrbitClassW(F5, 2, F5.elem(1))


def test_witness_soundness_exhaustive_f5():
    count = 0
    for coeffs in itertools.product(range(5), repeat=5):
        if all(c == 0 for c in coeffs):
            continue
        w = WittElem(F5, coeffs)
        cls, wit = canonicalize_w(w)
        check_witness(w, cls, wit)
        count += 1
    assert count == 3124


@pytest.mark.parametrize("p", [7, 11, 13])
def test_witness_soundness_random(p):
    ctx = make_field(p)
    rng = random.Random(p)
    for _ in range(60):
        w = rand_w(rng, ctx)
        if w.is_zero():
            continue
        cls, wit = canonicalize_w(w, root_bound=p - 1)
        check_witness(w, cls, wit)


def test_affine_slice_of_degree_zero_orbit():
    # the orbit of a e_0 consists exactly of the vectors with w_{-1} = 0 and
    # w_0 = a, every higher coordinate free
    for a in range(1, 5):
        cls = OrbitClassW(F5, 0, F5.elem(a))
        for tail in itertools.product(range(5), repeat=3):
            w = WittElem(F5, (0, a) + tail)
            got, _ = canonicalize_w(w)
            assert cls.same_class(got)
            assert in_closure_w(w, cls)
        # and no other element joins: the predicate pins both coordinates
        assert not in_closure_w(WittElem(F5, (1, a, 0, 0, 0)), cls)
        assert not in_closure_w(WittElem(F5, (0, (a + 1) % 5, 0, 0, 0)), cls)


def test_same_orbit_examples():
    assert not same_orbit_w(basis(F5, 0).scale(2), basis(F5, 0).scale(3))
    assert same_orbit_w(basis(F5, 2), basis(F5, 2).scale(2))
    assert same_orbit_w(basis(F5, 3), basis(F5, 3).scale(4))
    rng = random.Random(0)
    for _ in range(25):
        w = rand_w(rng, F5)
        if w.is_zero():
            continue
        assert same_orbit_w(w, act_witt(rand_aut(rng, F5), w))


def test_case3_parameter_independent_of_root_choice():
    # normalizing the leading coefficient may pick any i-th root; the class
    # parameter must not depend on it.  All roots are tried by hand.
    for p in (5, 7):
        ctx = make_field(p)
        rng = random.Random(p + 1)
        for i in hypersurface_range(p):
            for _ in range(10):
                w = rand_w(rng, ctx)
                coeffs = list(w.coeffs)
                for k in range(i + 1):
                    coeffs[k] = ctx.zero()
                coeffs[i + 1] = ctx.elem(rng.randrange(1, p))
                w = WittElem(ctx, coeffs)
                while w[i].is_zero():
                    w = WittElem(
                        ctx,
                        coeffs[: i + 1] + [ctx.elem(rng.randrange(1, p))] + coeffs[i + 2 :],
                    )
                cls, _ = canonicalize_w(w, root_bound=p - 1)
                from wittorbits.ffield import nth_root

                t0, _ = nth_root(w[i], i, max_ext=p - 1)
                K = t0.ctx
                wE = embed_vector(w, K)
                params = set()
                for t in K.elements():
                    if t.is_zero() or t ** i != embed(w[i], K):
                        continue
                    v = act_witt(Automorphism.torus(K, t).inverse(), wE)
                    from wittorbits.worbit import _solve_unipotent

                    _, a = _solve_unipotent(v, i, 2 * i)
                    params.add(a.encode() if a is not None else None)
                assert len(params) == 1


def test_closure_data_structure():
    data = compute_closure_w(5, 1)
    assert data.degenerate and data.c == 0 and data.f.is_zero()
    assert poly_str(data.g) == "X_2 - A*X_1^2"
    data = compute_closure_w(7, 2)
    assert not data.degenerate
    assert data.c == 1  # frozen from the orbit-point oracle below
    assert poly_str(data.f) == "X_3^2"
    assert data.f_components[0].is_zero() and data.f_components[1].is_zero()
    assert poly_str(data.g) == "-X_3^2 + X_2*X_4 - A*X_2^3"
    with pytest.raises(ValueError):
        compute_closure_w(5, 2)


def test_closure_constant_against_orbit_point_oracle():
    # orbit points of e_2 under single-coordinate unipotents give
    # a_3 = b_2 and a_4 = b_2^2, so the top constant must be 1
    for p in (7, 11, 13):
        ctx = make_field(p)
        for b2 in range(1, p):
            b = [0] * (p - 2)
            b[0] = b2
            out = act_witt(Automorphism.unipotent(ctx, tuple(b)), basis(ctx, 2))
            assert out[3] == ctx.elem(b2)
            assert out[4] == ctx.elem(b2 * b2)
        assert compute_closure_w(p, 2).c == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_closure_properties_all_degrees(p):
    for i in hypersurface_range(p):
        data = compute_closure_w(p, i)
        for mono in data.f.terms:
            assert sum((int(v[2:]) - i) * e for v, e in mono) == i
        assert data.f.total_degree() <= i
        if i >= 2:
            assert data.c != 0
        if i == 3:
            support = {mono for mono in data.f.terms}
            allowed = {((f"X_{i+1}", 3),), ((f"X_{i+1}", 1), (f"X_{i+2}", 1))}
            assert support <= allowed


def test_in_closure_examples():
    cls = OrbitClassW(F7, 2, F7.elem(3))
    assert in_closure_w(basis(F7, 4), cls)
    assert not in_closure_w(basis(F7, 3), cls)
    for a in range(1, 5):
        cls = OrbitClassW(F5, -1, F5.elem(a))
        for b in range(1, 5):
            member = in_closure_w(basis(F5, 0).scale(b), cls)
            assert member == (pow(b, 4, 5) == (-a) % 5)
        assert not in_closure_w(WittElem(F5, (0,) * 5), cls)
    cls0 = OrbitClassW(F5, -1, F5.elem(0))
    assert in_closure_w(basis(F5, 1), cls0)
    assert in_closure_w(WittElem(F5, (0,) * 5), cls0)
    assert in_closure_w(WittElem(F5, (0,) * 5), OrbitClassW(F5, 1, F5.elem(2)))
    assert in_closure_w(WittElem(F5, (0,) * 5), OrbitClassW(F5, 3, None))
    assert not in_closure_w(WittElem(F5, (0,) * 5), OrbitClassW(F5, 0, F5.elem(1)))


def test_closure_is_action_invariant():
    rng = random.Random(9)
    for _ in range(40):
        w = rand_w(rng, F5)
        a = F5.elem(rng.randrange(5))
        cls = OrbitClassW(F5, 1, a)
        sigma = rand_aut(rng, F5)
        assert in_closure_w(w, cls) == in_closure_w(act_witt(sigma, w), cls)


def test_boundary_points_drop_dimension():
    # points in the closure but outside the orbit canonicalize to classes of
    # strictly smaller dimension
    for a in range(5):
        cls = OrbitClassW(F5, 1, F5.elem(a))
        for codes in itertools.product(range(5), repeat=3):
            w = WittElem(F5, (0, 0) + codes)
            if w.is_zero() or not in_closure_w(w, cls):
                continue
            got, _ = canonicalize_w(w)
            if got.same_class(cls):
                continue
            assert got.dimension() < cls.dimension()


def test_parametrization_identity_exhaustive_f5():
    data = compute_closure_w(5, 1)
    for a_code in range(5):
        a = F5.elem(a_code)
        hyper = set()
        for codes in itertools.product(range(5), repeat=3):
            vals = [F5.elem(c) for c in codes]
            if vals[0].is_zero():
                continue
            pt = {"X_1": vals[0], "X_2": vals[1], "A": a}
            if evaluate(data.g, pt, F5).is_zero():
                hyper.add(codes)
        param = set()
        for x1 in range(1, 5):
            for x3 in range(5):
                forced = orbit_parametrization_point(data, a, {1: F5.elem(x1)})
                param.add((x1, forced.encode(), x3))
        assert hyper == param

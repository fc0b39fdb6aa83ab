import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittorbits.ffield import make_field
from wittorbits.sympoly import (
    MultiPoly,
    PolyError,
    divides,
    evaluate,
    poly_parse,
    poly_str,
    substitute,
    triangular_invert,
    weighted_components,
)

P = 5
X1 = MultiPoly.var(P, "X_1")
X2 = MultiPoly.var(P, "X_2")
A = MultiPoly.var(P, "A")


def rand_poly(rng, p=P, nvars=3, nterms=4, maxexp=3):
    out = MultiPoly.zero(p)
    for _ in range(nterms):
        term = MultiPoly.const(p, rng.randrange(p))
        for v in range(nvars):
            term = term * MultiPoly.var(p, f"X_{v}", rng.randrange(maxexp))
        out = out + term
    return out


def test_ring_axioms_random():
    rng = random.Random(0)
    for _ in range(40):
        f, g, h = (rand_poly(rng) for _ in range(3))
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + g == g + f and f * g == g * f


def test_weighted_components_reassemble():
    rng = random.Random(1)
    weights = {"X_0": 1, "X_1": 2, "X_2": 3}
    for _ in range(20):
        f = rand_poly(rng)
        parts = weighted_components(f, weights)
        total = MultiPoly.zero(P)
        for d, part in parts.items():
            for mono in part.terms:
                assert sum(weights[v] * e for v, e in mono) == d
            total = total + part
        assert total == f


def test_weighted_components_examples():
    const = MultiPoly.const(P, 3)
    assert weighted_components(const, {}) == {0: const}
    f = MultiPoly.var(P, "X_3", 2)
    assert list(weighted_components(f, {"X_3": 1})) == [2]
    with pytest.raises(PolyError):
        weighted_components(f, {"X_1": 1})


def test_substitute_identity_and_evaluation_agreement():
    rng = random.Random(2)
    F5 = make_field(5)
    for _ in range(25):
        f = rand_poly(rng)
        ident = {v: MultiPoly.var(P, v) for v in f.variables()}
        assert substitute(f, ident) == f
        point_codes = {v: rng.randrange(5) for v in f.variables()}
        via_sub = substitute(f, point_codes)
        via_eval = evaluate(f, {v: F5.elem(c) for v, c in point_codes.items()}, F5)
        assert F5.elem(0 if via_sub.is_zero() else via_sub.constant_value()) == via_eval


def test_divides_examples():
    g = X2 - A * X1 ** 2
    ok, q = divides(g, g, "X_2")
    assert ok and q == MultiPoly.const(P, 1)
    ok, q = divides(g, g * X1 ** 2, "X_2")
    assert ok and q == X1 ** 2
    ok, q = divides(g, g + 1, "X_2")
    assert not ok and q is None
    with pytest.raises(PolyError):
        divides(MultiPoly.zero(P), g, "X_2")


def test_divides_product_roundtrip_random():
    rng = random.Random(3)
    main = MultiPoly.var(P, "X_9")
    for _ in range(20):
        h = rand_poly(rng)
        g = main * MultiPoly.var(P, "X_0", 2) + rand_poly(rng, nvars=2, maxexp=2)
        if g.degree_in("X_9") != 1:
            continue
        f = g * h
        ok, q = divides(g, f, "X_9")
        assert ok and q * g == f


def test_triangular_invert_two_level():
    b2 = MultiPoly.var(P, "b2")
    b3 = MultiPoly.var(P, "b3")
    sols = triangular_invert([b2, b3 + b2 ** 2], ["b2", "b3"], ["X_1", "X_2"])
    assert sols[0] == X1
    assert sols[1] == X2 - X1 ** 2
    # unit scaling: a = c b with c != 0 inverts to b = c^{-1} a
    sols = triangular_invert([MultiPoly.const(P, 3) * b2], ["b2"], ["X_1"])
    assert sols[0] == MultiPoly.const(P, 2) * X1  # 3 * 2 = 6 = 1 mod 5


def test_triangular_invert_roundtrip_random():
    rng = random.Random(4)
    b2 = MultiPoly.var(P, "b2")
    b3 = MultiPoly.var(P, "b3")
    b4 = MultiPoly.var(P, "b4")
    for _ in range(15):
        e1 = MultiPoly.const(P, rng.randrange(1, 5)) * b2
        e2 = MultiPoly.const(P, rng.randrange(1, 5)) * b3 + rand_b_poly(rng, ["b2"])
        e3 = MultiPoly.const(P, rng.randrange(1, 5)) * b4 + rand_b_poly(rng, ["b2", "b3"])
        sols = triangular_invert([e1, e2, e3], ["b2", "b3", "b4"], ["X_1", "X_2", "X_3"])
        back = dict(zip(["b2", "b3", "b4"], sols))
        for expr, var in zip((e1, e2, e3), ("X_1", "X_2", "X_3")):
            assert substitute(expr, back) == MultiPoly.var(P, var)


def rand_b_poly(rng, names):
    out = MultiPoly.zero(P)
    for _ in range(3):
        term = MultiPoly.const(P, rng.randrange(5))
        for v in names:
            term = term * MultiPoly.var(P, v, rng.randrange(3))
        out = out + term
    return out


def test_triangular_invert_vanishing_unit():
    # a unit of 5 = 0 mod 5 erases the linear term, so the failure surfaces
    # as a missing linear slot, reported with the expression index
    b2 = MultiPoly.var(P, "b2")
    with pytest.raises(PolyError, match="0"):
        triangular_invert([MultiPoly.const(P, 5) * b2], ["b2"], ["X_1"])
    with pytest.raises(PolyError, match="0"):
        triangular_invert([b2 * b2], ["b2"], ["X_1"])
    # non-constant linear coefficient is rejected as well
    b3 = MultiPoly.var(P, "b3")
    with pytest.raises(PolyError, match="1"):
        triangular_invert([b2, b2 * b3], ["b2", "b3"], ["X_1", "X_2"])


def test_poly_text_roundtrip():
    g = X2 - A * X1 ** 2
    assert poly_str(g) == "X_2 - A*X_1^2"
    assert poly_parse(poly_str(g), P) == g
    q = MultiPoly.var(P, "X_-1") * MultiPoly.var(P, "X_3", 14) - MultiPoly.const(P, 2) * A ** 3
    assert poly_parse(poly_str(q), P) == q
    assert poly_str(MultiPoly.zero(P)) == "0"
    assert poly_parse("0", P).is_zero()
    with pytest.raises(PolyError):
        poly_parse("X_1 ++ X_2", P)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_poly_text_roundtrip_random(c1, c2, c3):
    f = (
        MultiPoly.const(P, c1) * X1 ** 2
        + MultiPoly.const(P, c2) * X2
        + MultiPoly.const(P, c3) * A * X1
    )
    assert poly_parse(poly_str(f), P) == f


def test_exponents_are_unbounded():
    big = MultiPoly.var(P, "X_1", (P - 2) * (P - 2) - 1)
    assert big.degree_in("X_1") == 8
    assert (big * big).degree_in("X_1") == 16

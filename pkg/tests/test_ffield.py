import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittorbits.ffield import (
    FieldError,
    RootBoundError,
    embed,
    format_elem,
    make_field,
    multiplicative_order,
    nth_root,
    parse_elem,
    subfield_decode,
)

F5 = make_field(5)
F25 = make_field(5, 2)


def brute_roots(ctx, x, r):
    """Exhaustive oracle: all y with y^r = x in ctx."""
    return [y for y in ctx.elements() if y ** r == x]


def test_make_field_basics():
    assert F5.p == 5 and F5.m == 1 and F5.order == 5
    assert F5.modulus == (0, 1)  # the prime field needs no real modulus
    with pytest.raises(FieldError):
        make_field(4)
    with pytest.raises(FieldError):
        make_field(3)
    with pytest.raises(FieldError):
        make_field(9)


def test_modulus_is_first_irreducible_in_encode_order():
    # oracle: scan all monic quadratics over F_5 in encode order, brute force
    # irreducibility by root search
    found = None
    for code in range(25):
        c0, c1 = code % 5, code // 5
        if all((x * x + c1 * x + c0) % 5 != 0 for x in range(5)):
            found = (c0, c1, 1)
            break
    assert F25.modulus == found == (2, 0, 1)


def test_field_axioms_exhaustive_f5_f25():
    for ctx in (F5, F25):
        one = ctx.one()
        for a in ctx.nonzero_elements():
            assert a * a.inverse() == one
        els = list(ctx.elements()) if ctx.order <= 25 else []
        sample = els if ctx.order == 5 else random.Random(0).sample(els, 12)
        for a in sample:
            for b in sample:
                for c in sample:
                    assert (a + b) + c == a + (b + c)
                    assert (a * b) * c == a * (b * c)
                    assert a * (b + c) == a * b + a * c


@given(st.integers(0, 5**2 - 1), st.integers(0, 5**2 - 1))
def test_f25_commutativity(ca, cb):
    a, b = F25.from_encoding(ca), F25.from_encoding(cb)
    assert a + b == b + a
    assert a * b == b * a


def test_element_text_roundtrip():
    for ctx in (F5, F25, make_field(7, 2)):
        for e in ctx.elements():
            assert parse_elem(format_elem(e), ctx) == e
    assert format_elem(F25.from_encoding(21)) == "1+4g"
    with pytest.raises(FieldError):
        parse_elem("2+3g", F5)  # no generator in the prime field
    with pytest.raises(FieldError):
        parse_elem("-1", F5)
    with pytest.raises(FieldError):
        parse_elem("g+g", F25)


def test_embedding_is_ring_hom_fixing_prime_field():
    for a in F5.elements():
        for b in F5.elements():
            assert embed(a + b, F25) == embed(a, F25) + embed(b, F25)
            assert embed(a * b, F25) == embed(a, F25) * embed(b, F25)
    assert embed(F5.one(), F25) == F25.one()
    for a in F5.elements():
        assert subfield_decode(embed(a, F25), F5) == a


def test_embedding_tower_f25_to_f625():
    F625 = make_field(5, 4)
    for code in range(25):
        a = F25.from_encoding(code)
        img = embed(a, F625)
        assert subfield_decode(img, F25) == a
    # multiplicativity on a sample
    rng = random.Random(1)
    for _ in range(30):
        a = F25.from_encoding(rng.randrange(25))
        b = F25.from_encoding(rng.randrange(25))
        assert embed(a * b, F625) == embed(a, F625) * embed(b, F625)


def test_nth_root_trivials():
    x = F5.elem(3)
    assert nth_root(x, 1) == (x, 1)
    z, ell = nth_root(F5.zero(), 7)
    assert z.is_zero() and ell == 1


def test_nth_root_nonresidue_needs_extension():
    # squares in F_5 are {0, 1, 4}; 2 is not one
    root, ell = nth_root(F5.elem(2), 2)
    assert ell == 2
    K = root.ctx
    assert K.order == 25
    assert root ** 2 == embed(F5.elem(2), K)
    # least root per the exhaustive oracle
    oracle = min(brute_roots(K, embed(F5.elem(2), K), 2), key=lambda e: e.encode())
    assert root == oracle


@pytest.mark.parametrize("p,m", [(5, 1), (5, 2), (7, 1), (11, 1), (13, 1)])
def test_nth_root_against_exhaustive_oracle(p, m):
    ctx = make_field(p, m)
    rng = random.Random(p * 10 + m)
    for _ in range(25):
        x = ctx.from_encoding(rng.randrange(ctx.order))
        r = rng.randrange(1, 13)
        try:
            got, ell = nth_root(x, r, max_ext=3)
        except RootBoundError:
            # oracle must agree that no small-extension root exists
            for l in (1, 2, 3):
                K = make_field(p, m * l)
                if K.order > 1 << 16:
                    break
                assert not brute_roots(K, embed(x, K), r)
            continue
        K = got.ctx
        assert got ** r == embed(x, K)
        assert ell == K.m // m
        if K.order <= 1 << 16:
            oracle = min(brute_roots(K, embed(x, K), r), key=lambda e: e.encode())
            assert got == oracle
            # minimality of the extension degree
            for l in range(1, ell):
                K2 = make_field(p, m * l)
                assert not brute_roots(K2, embed(x, K2), r)


def test_nth_root_deep_extension():
    # a ninth root of a generator of F_13 sits nine levels up
    x = make_field(13).elem(2)
    assert multiplicative_order(x) == 12
    y, ell = nth_root(x, 9, max_ext=12)
    assert ell == 9
    assert y ** 9 == embed(x, y.ctx)


def test_root_power_identity_random():
    rng = random.Random(7)
    for p in (5, 7, 11, 13):
        ctx = make_field(p)
        for _ in range(10):
            x = ctx.from_encoding(rng.randrange(1, p))
            r = rng.randrange(1, p)
            y, _ = nth_root(x, r, max_ext=p - 1)
            assert y ** r == embed(x, y.ctx)

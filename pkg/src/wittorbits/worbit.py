"""Orbit classification in the Witt algebra under its automorphism group.

Degree is a G-invariant, so classification happens degree by degree:

    degree -1:  representatives e_{-1} + a e_{p-2},  a in k
    degree  0:  representatives a e_0,               a in k*
    degree  i, 1 <= i < (p-1)/2:  e_i + a e_{2i},    a in k
    degree  i, (p-1)/2 <= i:      e_i                (one orbit)

canonicalize_w returns the class together with an explicit witness
automorphism mapping the representative to the input, possibly over a small
extension when normalizing the leading coefficient needs an i-th root.

compute_closure_w builds the hypersurface polynomial that cuts out the
closure of a degree-i orbit (1 <= i < (p-1)/2) by symbolic elimination of
the unipotent coordinates; in_closure_w evaluates the closure predicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .ffield import (
    FieldCtx,
    FieldElem,
    embed,
    format_elem,
    make_field,
    nth_root,
    subfield_decode,
)
from .sympoly import (
    MultiPoly,
    evaluate,
    poly_str,
    substitute,
    triangular_invert,
    weighted_components,
)
from .trunc import Automorphism, act_witt, format_aut, sym_action
from .witt import InternalCheckError, WittElem, basis, char_phi, embed_vector

DEFAULT_ROOT_BOUND = 4


class ZeroOrbitError(ValueError):
    """The zero element has no orbit class."""


def hypersurface_range(p: int) -> range:
    """Degrees whose orbits have a one-parameter family: 1 <= i < (p-1)/2."""
    return range(1, (p - 1) // 2)


@dataclass(frozen=True)
class OrbitClassW:
    """Canonical orbit label in the algebra: degree plus optional parameter."""

    ctx: FieldCtx
    degree: int
    param: FieldElem | None

    def __post_init__(self):
        p = self.ctx.p
        i = self.degree
        if not -1 <= i <= p - 2:
            raise ValueError(f"degree {i} out of range")
        needs_param = i == -1 or i == 0 or i in hypersurface_range(p)
        if needs_param and self.param is None:
            raise ValueError(f"degree {i} classes carry a parameter")
        if not needs_param and self.param is not None:
            raise ValueError(f"degree {i} classes carry no parameter")
        if i == 0 and self.param.is_zero():
            raise ValueError("degree 0 parameter must be nonzero")

    def representative(self) -> WittElem:
        ctx = self.ctx
        i = self.degree
        if i == -1:
            w = basis(ctx, -1) + basis(ctx, ctx.p - 2).scale(self.param)
        elif i == 0:
            w = basis(ctx, 0).scale(self.param)
        elif i in hypersurface_range(ctx.p):
            w = basis(ctx, i) + basis(ctx, 2 * i).scale(self.param)
        else:
            w = basis(ctx, i)
        return w

    def dimension(self) -> int:
        p = self.ctx.p
        i = self.degree
        if i == -1:
            return p - 1
        if i == 0:
            return p - 2
        if i in hypersurface_range(p):
            return p - i - 2
        return p - i - 1

    def same_class(self, other: "OrbitClassW") -> bool:
        if self.degree != other.degree:
            return False
        if self.param is None:
            return other.param is None
        a, b = self.param, other.param
        if a.ctx is not b.ctx:
            m = (a.ctx.m * b.ctx.m) // gcd(a.ctx.m, b.ctx.m)
            K = make_field(a.ctx.p, m)
            a, b = embed(a, K), embed(b, K)
        return a == b

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "param": format_elem(self.param) if self.param is not None else None,
        }


@dataclass(frozen=True)
class WitnessW:
    """Group element certifying the classification: act(aut, representative) = input."""

    aut: Automorphism
    ext_degree: int

    def to_json(self) -> dict:
        return {
            "t": format_elem(self.aut.t),
            "b": [format_elem(c) for c in self.aut.b],
            "ext_degree": self.ext_degree,
        }


def _solve_unipotent(v: WittElem, i: int, skip: int | None):
    """Choose b_2, b_3, ... so that sigma_b(e_i + a e_skip) = v.

    v must have leading coefficient 1 at index i.  The coefficient at index j
    is triangular in the new unknown b_{j-i+1} with unit 2i - j, which only
    vanishes at j = skip; there the parameter a is read off instead.
    Returns (automorphism, a or None).
    """
    ctx = v.ctx
    p = ctx.p
    b = [ctx.zero()] * (p - 2)  # slots for b_2 .. b_{p-1}
    a = None
    rep_lead = basis(ctx, i)
    rep_skip = basis(ctx, skip) if skip is not None else None
    for j in range(i + 1, p - 1):
        sigma = Automorphism(ctx, 1, tuple(b))
        cur = act_witt(sigma, rep_lead)
        if skip is not None and a is not None:
            cur = cur + act_witt(sigma, rep_skip).scale(a)
        if j == skip:
            a = v[j] - cur[j]
            continue
        unit = (2 * i - j) % p
        assert unit != 0
        s = j - i + 1
        b[s - 2] = b[s - 2] + (v[j] - cur[j]) * ctx.elem(unit).inverse()
    sigma = Automorphism(ctx, 1, tuple(b))
    rep = rep_lead if a is None else rep_lead + rep_skip.scale(a)
    if act_witt(sigma, rep) != v:
        raise InternalCheckError("unipotent normalization failed to close")  # pragma: no cover
    return sigma, a


def canonicalize_w(
    w: WittElem, root_bound: int = DEFAULT_ROOT_BOUND
) -> tuple[OrbitClassW, WitnessW]:
    """Canonical orbit class of w plus an exact witness automorphism.

    The witness may live over an extension F_{p^{m l}} when the torus
    normalization needs an i-th root of the leading coefficient; the
    parameter is always pulled back to the base field of w.
    """
    if w.is_zero():
        raise ZeroOrbitError("zero element has no orbit class")
    ctx = w.ctx
    p = ctx.p
    i = w.degree()

    if i == -1:
        tprime = w[-1]  # v = torus(w_{-1}) . w has leading coefficient 1
        v = act_witt(Automorphism.torus(ctx, tprime), w)
        sigma_b, a = _solve_unipotent(v, -1, p - 2)
        witness = Automorphism.torus(ctx, tprime.inverse()).compose(sigma_b)
        cls = OrbitClassW(ctx, -1, a)
        ell = 1
    elif i == 0:
        a = w[0]
        v = w.scale(a.inverse())
        sigma_b, none = _solve_unipotent(v, 0, None)
        assert none is None
        witness = sigma_b
        cls = OrbitClassW(ctx, 0, a)
        ell = 1
    else:
        t, ell = nth_root(w[i], i, max_ext=root_bound)
        K = t.ctx
        wE = embed_vector(w, K)
        v = act_witt(Automorphism.torus(K, t).inverse(), wE)
        skip = 2 * i if i in hypersurface_range(p) else None
        sigma_b, a = _solve_unipotent(v, i, skip)
        witness = Automorphism.torus(K, t).compose(sigma_b)
        param = subfield_decode(a, ctx) if a is not None else None
        cls = OrbitClassW(ctx, i, param)

    rep = embed_vector(cls.representative(), witness.ctx)
    if act_witt(witness, rep) != embed_vector(w, witness.ctx):
        raise InternalCheckError("witness does not map representative to input")  # pragma: no cover
    return cls, WitnessW(witness, ell)


def same_orbit_w(u: WittElem, v: WittElem, root_bound: int = DEFAULT_ROOT_BOUND) -> bool:
    if u.is_zero() or v.is_zero():
        raise ZeroOrbitError("zero element has no orbit class")
    cu, _ = canonicalize_w(u, root_bound)
    cv, _ = canonicalize_w(v, root_bound)
    return cu.same_class(cv)


# ---------------------------------------------------------------------------
# closure polynomials


@dataclass(frozen=True)
class ClosureDataW:
    """Closure hypersurface data for a degree-i orbit family.

    g = X_{2i} X_i^{i-1} - c X_{i+1}^i - sum_{j<i} X_i^{i-j} f_j - A X_i^{i+1}
    with f = sum f_j the elimination polynomial of the unipotent orbit.   The
    i = 1 family is degenerate: f = 0, c = 0 and g = X_2 - A X_1^2.
    """

    p: int
    i: int
    c: int
    f: MultiPoly
    f_components: tuple[MultiPoly, ...]
    g: MultiPoly
    degenerate: bool

    def g_at(self, a: FieldElem) -> MultiPoly:
        """g with the parameter substituted; needs a prime-field parameter."""
        if a.ctx.m != 1:
            raise ValueError(
                "closure polynomials have prime-field coefficients; "
                "evaluate in_closure_w instead for extension parameters"
            )
        return substitute(self.g, {"A": a.coeffs[0]})

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "c": self.c,
            "f": [poly_str(fj) for fj in self.f_components],
            "g": poly_str(self.g),
        }


@lru_cache(maxsize=None)
def compute_closure_w(p: int, i: int) -> ClosureDataW:
    """Symbolic closure data for the degree-i family, parameter left as A.

    Runs the elimination: express b_2..b_i in the free orbit coordinates,
    substitute into the obstructed coordinate 2i, split by degree, and verify
    the two structural facts (weighted support, monomial top component) plus
    c != 0 for i >= 2.
    """
    if i not in hypersurface_range(p):
        raise ValueError(f"degree {i} has no hypersurface closure at p={p}")
    acts = sym_action(p, i, "witt")
    # triangular system: coordinate i+s-1 introduces b_s, s = 2..i
    exprs = [acts[i + s - 1] for s in range(2, i + 1)]
    unknowns = [f"b{s}" for s in range(2, i + 1)]
    new_vars = [f"X_{i + s - 1}" for s in range(2, i + 1)]
    sols = triangular_invert(exprs, unknowns, new_vars)
    assignment = dict(zip(unknowns, sols))
    # free coordinates above 2i do not appear in a_{2i}; check and substitute
    a2i = acts[2 * i]
    extra = a2i.variables() - set(unknowns)
    if extra:
        raise InternalCheckError(f"obstructed coordinate depends on {sorted(extra)}")
    f = substitute(a2i, assignment) if assignment else a2i
    # structural fact one: every monomial satisfies sum (j-i) alpha_j = i
    for mono in f.terms:
        total = sum((int(v[2:]) - i) * e for v, e in mono)
        if total != i:
            raise InternalCheckError(f"monomial {mono} violates the weight identity")
    # structural fact two: degree <= i with top component c X_{i+1}^i
    if f.total_degree() > i:
        raise InternalCheckError("elimination polynomial exceeds degree i")
    comps = weighted_components(f, {v: 1 for v in f.variables()}) if not f.is_zero() else {}
    f_components = tuple(comps.get(j, MultiPoly.zero(p)) for j in range(i + 1))
    top = f_components[i]
    c = 0
    if not top.is_zero():
        if set(top.terms) != {((f"X_{i + 1}", i),)}:
            raise InternalCheckError("top component is not a multiple of X_{i+1}^i")
        c = top.terms[((f"X_{i + 1}", i),)]
    degenerate = i == 1
    if not degenerate and c == 0:
        raise InternalCheckError(f"vanishing leading constant at p={p}, i={i}")
    Xi = MultiPoly.var(p, f"X_{i}")
    g = MultiPoly.var(p, f"X_{2 * i}") * Xi ** (i - 1)
    g = g - MultiPoly.const(p, c) * MultiPoly.var(p, f"X_{i + 1}", i)
    for j in range(i):
        g = g - Xi ** (i - j) * f_components[j]
    g = g - MultiPoly.var(p, "A") * Xi ** (i + 1)
    return ClosureDataW(p, i, c, f, f_components, g, degenerate)


def in_closure_w(w: WittElem, cls: OrbitClassW) -> bool:
    """Membership of w in the Zariski closure of the orbit labelled by cls.

    Case analysis over the degree of the class:
      -1 : the fiber of the invariant, char_phi(w) = a
       0 : the orbit itself is closed, w_{-1} = 0 and w_0 = a
      hypersurface degrees : w in W_{>= i} and g(w, a) = 0
      upper degrees : w in W_{>= i}
    """
    ctx = w.ctx
    p = ctx.p
    i = cls.degree
    if i == -1:
        return char_phi(w) == embed(cls.param, ctx)
    if i == 0:
        return w[-1].is_zero() and w[0] == embed(cls.param, ctx)
    if any(not w[k].is_zero() for k in range(-1, i)):
        return False
    if i in hypersurface_range(p):
        data = compute_closure_w(p, i)
        point = {f"X_{k}": w[k] for k in range(i, 2 * i + 1)}
        point["A"] = embed(cls.param, ctx)
        return evaluate(data.g, point, ctx).is_zero()
    return True


def orbit_parametrization_point(
    data: ClosureDataW, a: FieldElem, coords: dict[int, FieldElem]
) -> FieldElem:
    """The forced coordinate 2i of an orbit point with given free coordinates.

    coords maps the free indices {i, i+1, .., 2i-1} to values, coords[i] != 0;
    the value is sum_j f_j(coords) / coords[i]^{j-1} + a coords[i]^2.
    """
    ctx = a.ctx
    i = data.i
    bi = coords[i]
    point = {f"X_{k}": coords[k] for k in range(i + 1, 2 * i)}
    acc = ctx.zero()
    for j, fj in enumerate(data.f_components):
        if fj.is_zero():
            continue
        acc = acc + evaluate(fj, point, ctx) * bi ** (1 - j)
    return acc + a * bi * bi


def certificate_w(w: WittElem, cls: OrbitClassW, witness: WitnessW, checks: list[str]) -> dict:
    from .witt import format_vector

    return {
        "p": w.ctx.p,
        "ext": w.ctx.m,
        "space": "w",
        "input": format_vector(w),
        "class": cls.to_json(),
        "witness": witness.to_json(),
        "checks": checks,
    }

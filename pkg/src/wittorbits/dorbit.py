"""Orbit classification in the dual of the Witt algebra.

Height is the G-invariant here.  With s = (r-1)/2 where it applies:

    height 1:              a e_0',  a in k*
    height r even <= p-3:  e_{r-1}'
    height r odd, 3..p-2:  e_{r-1}' + a e_s',  a up to sign
    height p-1:            e_{p-2}' + a e_{-1}',  a up to (p-2)-th roots of 1

Classes whose parameter is only defined up to roots of unity store the
invariant power (a^2 or a^{p-2}), which always lies in the base field; the
canonical representative parameter is recovered as the least root of that
invariant, so class data never depends on which extension a witness used.

Closures of heights <= p-2 are fully determined; height p-1 is resolved per
prime by resolve_height_p1, which computes the elimination polynomial,
decides the dichotomy branch from its top coefficient, and certifies the
outcome.  Membership queries at height p-1 demand a resolver report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from . import bulk
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
from .trunc import Automorphism, act_dual, act_witt, sym_action
from .witt import (
    Character,
    InternalCheckError,
    WittElem,
    basis_dual,
    embed_vector,
    format_vector,
)
from .worbit import DEFAULT_ROOT_BOUND, ZeroOrbitError


class ConditionalClosureError(RuntimeError):
    """Height p-1 closure queried without (or beyond) a resolver report."""


def height(chi: Character) -> int:
    """r(chi): least i with chi vanishing on W_{>=i}; p-1 when chi(e_{p-2}) != 0.

    The zero character vanishes on all of W, so r(0) = -1.
    """
    p = chi.ctx.p
    if not chi[p - 2].is_zero():
        return p - 1
    for k in range(p - 1, -1, -1):
        if not chi.coeffs[k].is_zero():
            return k  # leading basis index is k-1, height is k
    return -1


def dual_kind(p: int, r: int) -> str:
    if r == 1:
        return "kstar"
    if r == p - 1:
        return "kp2"
    if r % 2 == 1 and 3 <= r <= p - 2:
        return "k2"
    if r % 2 == 0 and 0 <= r <= p - 3:
        return "none"
    raise ValueError(f"height {r} out of range for p={p}")


@dataclass(frozen=True)
class OrbitClassDual:
    """Canonical orbit label in the dual space.

    param stores the class invariant in the base field: the parameter itself
    for height 1, its square for odd heights <= p-2, its (p-2)-th power for
    height p-1, and None for even heights.
    """

    ctx: FieldCtx
    height: int
    param: FieldElem | None

    def __post_init__(self):
        kind = dual_kind(self.ctx.p, self.height)
        if kind == "none":
            if self.param is not None:
                raise ValueError(f"height {self.height} classes carry no parameter")
        elif self.param is None:
            raise ValueError(f"height {self.height} classes carry a parameter")
        if kind == "kstar" and self.param.is_zero():
            raise ValueError("height 1 parameter must be nonzero")

    @property
    def kind(self) -> str:
        return dual_kind(self.ctx.p, self.height)

    def rep_param(self, root_bound: int = DEFAULT_ROOT_BOUND) -> FieldElem | None:
        """Canonical representative parameter: the least root of the invariant."""
        kind = self.kind
        if kind == "none":
            return None
        if kind == "kstar":
            return self.param
        power = 2 if kind == "k2" else self.ctx.p - 2
        root, _ = nth_root(self.param, power, max_ext=root_bound)
        return root

    def representative(self, root_bound: int = DEFAULT_ROOT_BOUND) -> Character:
        p = self.ctx.p
        r = self.height
        kind = self.kind
        if kind == "none":
            return basis_dual(self.ctx, r - 1)
        a = self.rep_param(root_bound)
        K = a.ctx
        if kind == "kstar":
            return basis_dual(K, 0).scale(a)
        if kind == "k2":
            s = (r - 1) // 2
            return basis_dual(K, r - 1) + basis_dual(K, s).scale(a)
        return basis_dual(K, p - 2) + basis_dual(K, -1).scale(a)

    def dimension(self) -> int:
        r = self.height
        kind = self.kind
        if kind == "kstar":
            return 1
        if kind == "none":
            return r + 1
        if kind == "k2":
            return r
        return self.ctx.p - 1

    def same_class(self, other: "OrbitClassDual") -> bool:
        if self.height != other.height:
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
            "height": self.height,
            "kind": self.kind,
            "param": format_elem(self.param) if self.param is not None else None,
        }


def _dual_obstruction(p: int, i: int) -> int | None:
    """Index j in -1..i-1 where the triangular unit 2j - i vanishes mod p."""
    if i >= 1 and i % 2 == 0:
        return i // 2
    if i == p - 2:
        return -1
    return None


def _solve_unipotent_dual(v: Character, i: int, skip: int | None):
    """Unipotent coordinates b with act_dual(u^{-1}, e_i' + a e_skip') = v.

    v has leading coefficient 1 at index i; descending indices j < i are
    matched through the new unknown b_{i-j+1} whose unit is 2j - i, except at
    the obstruction where the parameter a is read off.
    """
    ctx = v.ctx
    p = ctx.p
    b = [ctx.zero()] * (p - 2)
    a = None
    lead = basis_dual(ctx, i)
    skip_vec = basis_dual(ctx, skip) if skip is not None else None
    for j in range(i - 1, -2, -1):
        g = Automorphism(ctx, 1, tuple(b)).inverse()
        cur = act_dual(g, lead)
        if skip is not None and a is not None:
            cur = cur + act_dual(g, skip_vec).scale(a)
        if j == skip:
            a = v[j] - cur[j]
            continue
        unit = (2 * j - i) % p
        assert unit != 0
        s = i - j + 1
        b[s - 2] = b[s - 2] + (v[j] - cur[j]) * ctx.elem(unit).inverse()
    g = Automorphism(ctx, 1, tuple(b)).inverse()
    rep = lead if a is None else lead + skip_vec.scale(a)
    if act_dual(g, rep) != v:
        raise InternalCheckError("dual unipotent normalization failed to close")  # pragma: no cover
    return g, a


@dataclass(frozen=True)
class WitnessDual:
    aut: Automorphism
    ext_degree: int

    def to_json(self) -> dict:
        return {
            "t": format_elem(self.aut.t),
            "b": [format_elem(c) for c in self.aut.b],
            "ext_degree": self.ext_degree,
        }


def canonicalize_dual(
    chi: Character, root_bound: int = DEFAULT_ROOT_BOUND
) -> tuple[OrbitClassDual, WitnessDual]:
    """Canonical class of chi plus an exact witness: act(aut, rep) = chi."""
    if chi.is_zero():
        raise ZeroOrbitError("zero character has no orbit class")
    ctx = chi.ctx
    p = ctx.p
    r = height(chi)
    i = r - 1  # leading basis index, p-2 when r = p-1

    if r == 1:
        a = chi[0]
        v = chi.scale(a.inverse())
        g_u, none = _solve_unipotent_dual(v, 0, None)
        witness = g_u
        cls = OrbitClassDual(ctx, 1, a)
        rep = cls.representative(root_bound)
        if act_dual(witness, rep) != chi:
            raise InternalCheckError("dual witness failed")  # pragma: no cover
        return cls, WitnessDual(witness, 1)

    if i == -1:
        tau = chi[-1].inverse()
        K = ctx
        chiE = chi
    else:
        tau, _ = nth_root(chi[i], i, max_ext=root_bound)
        K = tau.ctx
        chiE = embed_vector(chi, K)
    v = act_dual(Automorphism.torus(K, tau), chiE)
    skip = _dual_obstruction(p, i)
    g_u, a = _solve_unipotent_dual(v, i, skip)
    witness0 = Automorphism.torus(K, tau).inverse().compose(g_u)

    if skip is None:
        cls = OrbitClassDual(ctx, r, None)
        rep = embed_vector(cls.representative(root_bound), K)
        if act_dual(witness0, rep) != chiE:
            raise InternalCheckError("dual witness failed")  # pragma: no cover
        return cls, WitnessDual(witness0, K.m // ctx.m)

    power = 2 if skip == i // 2 else p - 2
    inv_param = subfield_decode(a ** power, ctx)
    cls = OrbitClassDual(ctx, r, inv_param)
    a_c = cls.rep_param(root_bound)
    m_tot = (K.m * a_c.ctx.m) // gcd(K.m, a_c.ctx.m)
    Ktot = make_field(p, m_tot)
    aE, a_cE = embed(a, Ktot), embed(a_c, Ktot)
    if a.is_zero():
        tau2 = Ktot.one()
    elif power == 2:
        rho = aE / a_cE  # +-1 since the squares agree
        tau2, _ = nth_root(rho.inverse(), (r - 1) // 2, max_ext=root_bound)
    else:
        tau2 = aE / a_cE  # a (p-2)-th root of unity
    Kfin = tau2.ctx
    witness = embed_aut(witness0, Kfin).compose(Automorphism.torus(Kfin, tau2))
    rep = embed_vector(cls.representative(root_bound), Kfin)
    if act_dual(witness, rep) != embed_vector(chi, Kfin):
        raise InternalCheckError("dual witness failed")  # pragma: no cover
    return cls, WitnessDual(witness, Kfin.m // ctx.m)


def embed_aut(sigma: Automorphism, target: FieldCtx) -> Automorphism:
    if sigma.ctx is target:
        return sigma
    return Automorphism(
        target, embed(sigma.t, target), tuple(embed(c, target) for c in sigma.b)
    )


def same_orbit_dual(u: Character, v: Character, root_bound: int = DEFAULT_ROOT_BOUND) -> bool:
    cu, _ = canonicalize_dual(u, root_bound)
    cv, _ = canonicalize_dual(v, root_bound)
    return cu.same_class(cv)


# ---------------------------------------------------------------------------
# stabilizers


@dataclass(frozen=True)
class StabilizerDual:
    """Enumerated stabilizer data of a case-3 representative over F_q.

    The stabilizer decomposes as (G cap T) x| (G cap U) with torus part
    {t : t^s = 1}.  The unipotent part has q^{p-1-r} points; it is not a
    coordinate subgroup but the graph of a polynomial map over the free
    coordinates b_{s+1} and b_{r+2}, ..., b_{p-1} (the graph check below).
    """

    p: int
    q: int
    height: int
    torus_exponent: int  # G cap T = {t : t^s = 1}
    stabilizer_size: int
    torus_part_size: int
    unipotent_part_size: int
    orbit_size: int
    group_size: int
    semidirect_verified: bool
    torus_description_verified: bool
    unipotent_count_verified: bool  # |G cap U| = q^{p-1-r}
    unipotent_graph_verified: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "height": self.height,
            "G1": f"t^{self.torus_exponent}=1",
            "stabilizer_size": self.stabilizer_size,
            "torus_part_size": self.torus_part_size,
            "unipotent_part_size": self.unipotent_part_size,
            "orbit_size": self.orbit_size,
            "group_size": self.group_size,
            "semidirect_verified": self.semidirect_verified,
            "torus_description_verified": self.torus_description_verified,
            "unipotent_count_verified": self.unipotent_count_verified,
            "unipotent_graph_verified": self.unipotent_graph_verified,
        }


def stabilizer_dual(chi: Character, fieldctx: FieldCtx) -> StabilizerDual:
    """Exhaustive stabilizer of a height-r case-3 representative over F_q.

    chi must be exactly e_{r-1}' + a e_{(r-1)/2}' for an odd height r; the
    whole group (q-1) q^{p-2} is enumerated through its semidirect pieces.
    """
    if chi.ctx is not fieldctx:
        raise ValueError("character must live over the enumeration field")
    p = fieldctx.p
    r = height(chi)
    if dual_kind(p, r) != "k2":
        raise ValueError(f"height {r} is not a case-3 height")
    s = (r - 1) // 2
    expected = basis_dual(fieldctx, r - 1) + basis_dual(fieldctx, s).scale(chi[s])
    if chi != expected:
        raise ValueError("character is not a case-3 representative")

    q = fieldctx.order
    one = fieldctx.one()
    torus_elems = list(fieldctx.nonzero_elements())
    # a != 0 pins t^s = 1; the parameterless representative only needs t^{r-1} = 1
    torus_exp = s if not chi[s].is_zero() else r - 1
    g1 = {t.encode() for t in torus_elems if t ** torus_exp == one}

    stab_pairs = set()
    g1_enumerated = set()
    g2 = set()
    orbit = set()
    width = p - 2
    for codes in product(range(q), repeat=width):
        b = tuple(fieldctx.from_encoding(c) for c in codes)
        u = Automorphism(fieldctx, 1, b)
        yu = act_dual(u, chi)
        if yu == chi:
            g2.add(codes)
        for t in torus_elems:
            moved = tuple(
                (t ** (-(k - 1))) * yu.coeffs[k] if not yu.coeffs[k].is_zero() else yu.coeffs[k]
                for k in range(p)
            )
            orbit.add(tuple(c.encode() for c in moved))
            if all(mc == cc for mc, cc in zip(moved, chi.coeffs)):
                stab_pairs.add((t.encode(), codes))
                if all(c == 0 for c in codes):
                    g1_enumerated.add(t.encode())

    semidirect = stab_pairs == {(t, bs) for t in g1_enumerated for bs in g2}
    torus_ok = g1_enumerated == g1
    count_ok = len(g2) == q ** (p - 1 - r)
    # graph structure: the free coordinates determine the rest
    free_slots = [s + 1 - 2] + [k - 2 for k in range(r + 2, p)]
    projections = {tuple(codes[sl] for sl in free_slots) for codes in g2}
    graph_ok = len(projections) == len(g2)
    group_size = (q - 1) * q ** (p - 2)
    return StabilizerDual(
        p=p,
        q=q,
        height=r,
        torus_exponent=torus_exp,
        stabilizer_size=len(stab_pairs),
        torus_part_size=len(g1_enumerated),
        unipotent_part_size=len(g2),
        orbit_size=len(orbit),
        group_size=group_size,
        semidirect_verified=semidirect,
        torus_description_verified=torus_ok,
        unipotent_count_verified=count_ok,
        unipotent_graph_verified=graph_ok,
    )


# ---------------------------------------------------------------------------
# closure polynomials, heights <= p-2


@dataclass(frozen=True)
class ClosureDataDual:
    """Squared closure polynomial of an odd-height orbit family.

    inner = X_s X_{r-1}^{s-1} - c X_{r-2}^s - sum_{j<s} X_{r-1}^{s-j} f_j,
    squared = inner^2 - A^2 X_{r-1}^{2s-1}.  The height-3 family is the
    degenerate one: no free elimination variables, f = 0, c = 0.
    """

    p: int
    r: int
    s: int
    c: int
    f: MultiPoly
    f_components: tuple[MultiPoly, ...]
    inner: MultiPoly
    squared: MultiPoly
    degenerate: bool

    def to_json(self) -> dict:
        return {
            "height": self.r,
            "c": self.c,
            "f": [poly_str(fj) for fj in self.f_components],
            "inner": poly_str(self.inner),
            "g": poly_str(self.squared),
        }


@lru_cache(maxsize=None)
def compute_closure_dual(p: int, r: int) -> ClosureDataDual:
    """Symbolic closure data for odd height 3 <= r <= p-2, parameter as A."""
    if dual_kind(p, r) != "k2":
        raise ValueError(f"height {r} has no squared closure polynomial at p={p}")
    m = r - 1
    s = m // 2
    acts = sym_action(p, m, "dual")
    unknowns = [f"b{k}" for k in range(2, m - s + 1)]
    exprs = [acts[m - k + 1] for k in range(2, m - s + 1)]
    new_vars = [f"X_{m - k + 1}" for k in range(2, m - s + 1)]
    sols = triangular_invert(exprs, unknowns, new_vars)
    assignment = dict(zip(unknowns, sols))
    obstruction = acts[s]
    extra = obstruction.variables() - set(unknowns)
    if extra:
        raise InternalCheckError(f"dual obstructed coordinate depends on {sorted(extra)}")
    f = substitute(obstruction, assignment) if assignment else obstruction
    for mono in f.terms:
        total = sum((m - int(v[2:])) * e for v, e in mono)
        if total != s:
            raise InternalCheckError(f"monomial {mono} violates the dual weight identity")
    if f.total_degree() > s:
        raise InternalCheckError("dual elimination polynomial exceeds degree s")
    comps = weighted_components(f, {v: 1 for v in f.variables()}) if not f.is_zero() else {}
    f_components = tuple(comps.get(j, MultiPoly.zero(p)) for j in range(s + 1))
    top = f_components[s]
    c = 0
    if not top.is_zero():
        if set(top.terms) != {((f"X_{m - 1}", s),)}:
            raise InternalCheckError("dual top component is not a multiple of X_{r-2}^s")
        c = top.terms[((f"X_{m - 1}", s),)]
    degenerate = r == 3
    if not degenerate and c == 0:
        raise InternalCheckError(f"vanishing dual leading constant at p={p}, r={r}")
    Xm = MultiPoly.var(p, f"X_{m}")
    inner = MultiPoly.var(p, f"X_{s}") * Xm ** (s - 1)
    inner = inner - MultiPoly.const(p, c) * MultiPoly.var(p, f"X_{m - 1}", s)
    for j in range(s):
        inner = inner - Xm ** (s - j) * f_components[j]
    squared = inner * inner - MultiPoly.var(p, "A", 2) * Xm ** (2 * s - 1)
    return ClosureDataDual(p, r, s, c, f, f_components, inner, squared, degenerate)


def in_closure_dual(
    chi: Character,
    cls: OrbitClassDual,
    report: "HeightP1Report | None" = None,
    root_bound: int = DEFAULT_ROOT_BOUND,
) -> bool:
    """Membership of chi in the closure of the orbit labelled by cls.

    Heights <= p-2 are unconditional.  Height p-1 requires a resolver report
    for this prime: branch A gives orbit union {r <= p-3}; branch B is only
    determined for the parameterless class (adds the height-(p-2) zero-class
    orbit) and raises otherwise.
    """
    ctx = chi.ctx
    p = ctx.p
    r = cls.height
    kind = cls.kind
    rchi = height(chi)
    if kind == "kstar":
        return rchi <= 1 and chi[0] == embed(cls.param, ctx)
    if kind == "none":
        return rchi <= r
    if kind == "k2":
        if rchi <= r - 2:
            return True
        if rchi != r:
            return False
        other, _ = canonicalize_dual(chi, root_bound)
        return cls.same_class(other)
    # height p-1: gated behind the dichotomy resolver
    if report is None:
        raise ConditionalClosureError(
            f"height {p - 1} closure is conditional; run resolve_height_p1({p}) "
            "and pass its report"
        )
    if report.p != p:
        raise ConditionalClosureError(
            f"resolver report is for p={report.p}, query is for p={p}"
        )
    if rchi <= p - 3:
        return True
    if rchi == p - 1:
        other, _ = canonicalize_dual(chi, root_bound)
        return cls.same_class(other)
    if report.branch == "A":
        return False
    # branch B: settled only for the zero-parameter class
    if not cls.param.is_zero():
        raise ConditionalClosureError(
            "branch B closure for a nonzero height-(p-1) parameter is undetermined"
        )
    if rchi == p - 2:
        other, _ = canonicalize_dual(chi, root_bound)
        return other.param is not None and other.param.is_zero()
    return False  # pragma: no cover - rchi == p-2 is the only remaining case


# ---------------------------------------------------------------------------
# the height p-1 dichotomy resolver


@dataclass(frozen=True)
class HeightP1Report:
    """Outcome of the height-(p-1) closure dichotomy for one prime.

    branch A (c != 0): the closure of every height-(p-1) orbit is the orbit
    together with all characters of height <= p-3.  branch B (c = 0): the
    parameterless closure additionally picks up the height-(p-2) zero-class
    orbit, certified by the exact factorization f_l = g h.
    """

    p: int
    c: int
    branch: str
    l: int | None
    h_shape: str | None
    checks: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "c": self.c,
            "branch": self.branch,
            "l": self.l,
            "h_shape": self.h_shape,
            "checks": list(self.checks),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HeightP1Report":
        return cls(
            p=data["p"],
            c=data["c"],
            branch=data["branch"],
            l=data["l"],
            h_shape=data["h_shape"],
            checks=tuple(data["checks"]),
        )


@lru_cache(maxsize=None)
def _height_p1_symbolic(p: int):
    """Elimination polynomial f with the height-(p-1) coordinates as variables.

    Returns (f, components 1..p-1 by ordinary degree, c, F0) where
    F0 = X_{-1} X_{p-2}^{p-2} - c X_{p-3}^{p-1} - sum_j X_{p-2}^{p-1-j} f_j
    cuts out the closure of the parameterless orbit when c != 0.
    """
    m = p - 2
    acts = sym_action(p, m, "dual")
    unknowns = [f"b{k}" for k in range(2, p)]
    exprs = [acts[m - k + 1] for k in range(2, p)]
    new_vars = [f"X_{m - k + 1}" for k in range(2, p)]
    sols = triangular_invert(exprs, unknowns, new_vars)
    f = substitute(acts[-1], dict(zip(unknowns, sols)))
    leftover = {v for v in f.variables() if not v.startswith("X_")}
    if leftover:
        raise InternalCheckError(f"unsolved unipotent coordinates {sorted(leftover)}")
    for mono in f.terms:
        total = sum((p - 2 - int(v[2:])) * e for v, e in mono)
        if total != p - 1:
            raise InternalCheckError(f"monomial {mono} violates the height-(p-1) weights")
    if f.total_degree() > p - 1:
        raise InternalCheckError("height-(p-1) elimination polynomial exceeds degree p-1")
    comps = weighted_components(f, {v: 1 for v in f.variables()})
    f_components = tuple(comps.get(j, MultiPoly.zero(p)) for j in range(p))
    top = f_components[p - 1]
    c = 0
    if not top.is_zero():
        if set(top.terms) != {((f"X_{p - 3}", p - 1),)}:
            raise InternalCheckError("height-(p-1) top component is not a multiple of X_{p-3}^{p-1}")
        c = top.terms[((f"X_{p - 3}", p - 1),)]
    Xlead = MultiPoly.var(p, f"X_{p - 2}")
    F0 = MultiPoly.var(p, "X_-1") * Xlead ** (p - 2)
    F0 = F0 - MultiPoly.const(p, c) * MultiPoly.var(p, f"X_{p - 3}", p - 1)
    for j in range(1, p - 1):
        F0 = F0 - Xlead ** (p - 1 - j) * f_components[j]
    return f, f_components, c, F0


def _orbit_points(chi: Character) -> set[tuple[int, ...]]:
    """All F_p points of the orbit of chi, by a full group sweep."""
    ctx = chi.ctx
    p = ctx.p
    assert ctx.m == 1
    torus_codes = [
        [pow(pow(t, -1, p), (k - 1) % (p - 1), p) for k in range(p)] for t in range(1, p)
    ]
    pts = set()
    for codes in product(range(p), repeat=p - 2):
        u = Automorphism(ctx, 1, codes)
        yu = act_dual(u, chi)
        base = [c.coeffs[0] for c in yu.coeffs]
        for scale in torus_codes:
            pts.add(tuple((s * b) % p for s, b in zip(scale, base)))
    return pts


def resolve_height_p1(
    p: int, seed: int = 1729, max_ambient: int = 200_000
) -> HeightP1Report:
    """Decide and certify the height-(p-1) closure dichotomy for one prime.

    Always certified symbolically (weights, top component, boundary slice,
    torus homogeneity) and numerically against group-action sample points.
    For p <= 7 the ambient decomposition is additionally verified on every
    point of F_p^p; for larger p that space is out of reach and sampled.
    """
    if p not in (5, 7, 11, 13):
        raise ValueError(f"height-(p-1) resolver supports p in 5,7,11,13, got {p}")
    ctx = make_field(p)
    f, f_components, c, F0 = _height_p1_symbolic(p)
    checks = ["weights: every monomial of f satisfies the height-(p-1) weight identity"]
    checks.append(f"degree: deg f = {f.total_degree()} <= p-1, top component {poly_str(f_components[p-1])!r}")

    # boundary slice: setting the leading coordinate to zero leaves -c X_{p-3}^{p-1}
    sliced = substitute(F0, {f"X_{p - 2}": 0})
    want = MultiPoly.const(p, -c % p) * MultiPoly.var(p, f"X_{p - 3}", p - 1)
    if sliced != want:
        raise InternalCheckError("boundary slice of the closure polynomial is wrong")
    checks.append("slice: F0(X_{p-2}=0) = -c X_{p-3}^{p-1} exactly")

    # torus homogeneity of F0 under deg X_j = p-2-j, deg X_{-1} = p-1
    for mono in F0.terms:
        wt = sum(((p - 1) if v == "X_-1" else (p - 2 - int(v[2:]))) * e for v, e in mono)
        if wt != p - 1:
            raise InternalCheckError("closure polynomial is not torus homogeneous")
    checks.append("homogeneity: every monomial of F0 has torus weight p-1")

    # numeric round trip: unipotent orbit points satisfy x_{-1} = f(x_0..x_{p-3})
    chi = basis_dual(ctx, p - 2)
    rng = np.random.default_rng(seed)
    if p == 5:
        bsamples = list(product(range(p), repeat=p - 2))
    else:
        bsamples = [tuple(int(x) for x in rng.integers(0, p, size=p - 2)) for _ in range(500)]
        for sidx in range(p - 2):
            for lam in range(p):
                b = [0] * (p - 2)
                b[sidx] = lam
                bsamples.append(tuple(b))
    for codes in bsamples:
        u = Automorphism(ctx, 1, codes)
        y = act_dual(u.inverse(), chi)
        pt = {f"X_{k}": y[k] for k in range(0, p - 2)}
        if evaluate(f, pt, ctx) != y[-1]:
            raise InternalCheckError("unipotent orbit point violates the elimination polynomial")
        if y[p - 2] != ctx.one():
            raise InternalCheckError("unipotent orbit point lost its leading coefficient")
    checks.append(f"parametrization: {len(bsamples)} unipotent orbit points match f exactly")

    if c != 0:
        branch = "A"
        var_cols = {"X_-1": 0}
        for k in range(0, p - 1):
            var_cols[f"X_{k}"] = k + 1
        terms = bulk.poly_to_grid_terms(F0, var_cols)
        if p ** p <= max_ambient * 5:
            pts = bulk.grid_points(p, p)
        else:
            pts = rng.integers(0, p, size=(max_ambient, p), dtype=np.int64)
        vals = bulk.eval_poly_grid(terms, pts, p)
        on_v = vals % p == 0
        lead = pts[:, p - 1] % p != 0
        low_height = (pts[:, p - 1] % p == 0) & (pts[:, p - 2] % p == 0)
        if p <= 7:
            orbit_pts = _orbit_points(basis_dual(ctx, p - 2))
            member = np.fromiter(
                (tuple(row) in orbit_pts for row in pts.tolist()), bool, len(pts)
            )
            decomposition = (member & lead) | low_height
            if not (on_v == decomposition).all():
                raise InternalCheckError("ambient closure decomposition failed")
            checks.append(
                f"ambient: exhaustive {len(pts)}-point check of V(F0) = orbit + (height <= p-3)"
            )
        else:
            # slice side: on the sampled points with leading coordinate zero,
            # membership in V(F0) is exactly the height drop
            sl = ~lead
            if not ((on_v[sl]) == (low_height[sl])).all():
                raise InternalCheckError("sampled slice of the closure decomposition failed")
            # orbit side: sampled variety points with leading coordinate
            # nonzero canonicalize into the parameterless class
            idx = np.flatnonzero(on_v & lead)[:25]
            for kk in idx:
                vec = [int(x) for x in pts[kk]]
                cand = Character(ctx, vec)
                ccls, _ = canonicalize_dual(cand, root_bound=p - 1)
                if not (ccls.height == p - 1 and ccls.param.is_zero()):
                    raise InternalCheckError("sampled variety point misses the orbit")
            checks.append(
                f"sampled: {len(pts)} ambient points, slice identity and "
                f"{len(idx)} canonicalized variety points"
            )
        return HeightP1Report(p, c, branch, None, None, tuple(checks))

    # branch B: exact divisibility f_l = g h with h of one of two shapes
    branch = "B"
    l = max(j for j in range(1, p - 1) if not f_components[j].is_zero())
    gdata = compute_closure_dual(p, p - 2)
    g = gdata.inner
    from .sympoly import divides

    ok, h = divides(g, f_components[l], f"X_{gdata.s}")
    if not ok:
        raise InternalCheckError("branch B divisor does not divide f_l")
    h_shape = None
    terms = h.terms
    if set(terms) == {((f"X_{p - 3}", 2),)}:
        h_shape = f"{terms[((f'X_{p-3}', 2),)]}*X_{p-3}^2"
    elif set(terms) == {((f"X_{p - 4}", 1),)}:
        h_shape = f"{terms[((f'X_{p-4}', 1),)]}*X_{p-4}"
    if h_shape is None:
        raise InternalCheckError(f"branch B quotient has unexpected shape {poly_str(h)}")
    if h * g != f_components[l]:
        raise InternalCheckError("branch B factorization does not multiply back")  # pragma: no cover
    checks.append(f"divisibility: f_{l} = g * ({h_shape}) verified exactly")

    # reduced closure polynomial: F0 = X_{p-2}^{p-1-l} f', closure = V(f')
    Xlead = MultiPoly.var(p, f"X_{p - 2}")
    fprime = MultiPoly.var(p, "X_-1") * Xlead ** (l - 1)
    for j in range(1, l + 1):
        fprime = fprime - Xlead ** (l - j) * f_components[j]
    if Xlead ** (p - 1 - l) * fprime != F0:
        raise InternalCheckError("branch B reduced polynomial does not recover F0")
    checks.append(f"reduction: F0 = X_{p-2}^{p-1-l} * f' with f' free of X_{p-2}")

    if p <= 7:
        var_cols = {"X_-1": 0}
        for k in range(0, p - 1):
            var_cols[f"X_{k}"] = k + 1
        pts = bulk.grid_points(p, p)
        vals = bulk.eval_poly_grid(bulk.poly_to_grid_terms(fprime, var_cols), pts, p)
        on_v = vals % p == 0
        # F_p points of the closed top orbit: the group sweep is exact at
        # height p-1 (the torus root t^{p-2} and the class unit both live in
        # F_p because gcd(p-2, p-1) = 1)
        top_orbit = _orbit_points(basis_dual(ctx, p - 2))
        top = np.fromiter((tuple(r) in top_orbit for r in pts.tolist()), bool, len(pts))
        # F_p points of the zero-class height-(p-2) orbit: the squared-
        # polynomial description specializes exactly at parameter 0
        inner_vals = bulk.eval_poly_grid(
            bulk.poly_to_grid_terms(gdata.inner, var_cols), pts, p
        )
        nxt = (inner_vals % p == 0) & (pts[:, p - 2] % p != 0) & (pts[:, p - 1] % p == 0)
        sweep_next = _orbit_points(basis_dual(ctx, p - 3))
        nxt_set = {tuple(r) for r, flag in zip(pts.tolist(), nxt.tolist()) if flag}
        if not sweep_next <= nxt_set:
            raise InternalCheckError("group sweep escapes the zero-class description")
        sample = sorted(nxt_set)[:: max(1, len(nxt_set) // 40)]
        for row in sample:
            ccls, _ = canonicalize_dual(Character(ctx, row), root_bound=p - 1)
            if not (ccls.height == p - 2 and ccls.param.is_zero()):
                raise InternalCheckError("zero-class description contains a wrong point")
        low_height = (pts[:, p - 1] % p == 0) & (pts[:, p - 2] % p == 0)
        if not (on_v == (top | nxt | low_height)).all():
            raise InternalCheckError("branch B ambient closure decomposition failed")
        checks.append(
            f"ambient: exhaustive {len(pts)}-point check of "
            "V(f') = orbit + zero-class height-(p-2) orbit + (height <= p-3)"
        )
    else:
        rng2 = np.random.default_rng(seed + 1)
        pts = rng2.integers(0, p, size=(max_ambient, p), dtype=np.int64)
        var_cols = {"X_-1": 0}
        for k in range(0, p - 1):
            var_cols[f"X_{k}"] = k + 1
        terms_grid = bulk.poly_to_grid_terms(fprime, var_cols)
        vals = bulk.eval_poly_grid(terms_grid, pts, p)
        on_v = vals % p == 0
        lead = pts[:, p - 1] % p != 0
        idx = np.flatnonzero(on_v & lead)[:25]
        for kk in idx:
            cand = Character(ctx, [int(x) for x in pts[kk]])
            ccls, _ = canonicalize_dual(cand, root_bound=p - 1)
            if not (ccls.height == p - 1 and ccls.param.is_zero()):
                raise InternalCheckError("sampled branch B variety point misses the orbit")
        # slice: with the leading coordinate zero, f' = -f_l = -g h
        sl = ~lead
        gterms = bulk.poly_to_grid_terms(gdata.inner, var_cols)
        gvals = bulk.eval_poly_grid(gterms, pts, p)
        hterms = bulk.poly_to_grid_terms(h, var_cols)
        hvals = bulk.eval_poly_grid(hterms, pts, p)
        if not ((vals[sl] % p == 0) == ((gvals[sl] * hvals[sl]) % p == 0)).all():
            raise InternalCheckError("sampled branch B slice factorization failed")
        checks.append(
            f"sampled: {len(pts)} ambient points, slice factorization and "
            f"{len(idx)} canonicalized variety points"
        )
    return HeightP1Report(p, c, branch, l, h_shape, tuple(checks))


# ---------------------------------------------------------------------------
# triviality of invariants: every orbit closure chain reaches zero


def invariants_check(p: int, a: FieldElem, root_bound: int = DEFAULT_ROOT_BOUND) -> dict:
    """Certify that the height-(p-1) class with parameter a degenerates to 0.

    Verifies, symbolically in the unipotent coordinate b, the action of
    phi(x) = x + b x^{s+1} on the algebra and on the top dual vector; then
    checks that the explicit curve t -> t^{p-2} e_{p-2}' - t^{s-1} b e_{s-1}'
    stays inside the orbit for t != 0 and lands on 0 at t = 0.
    """
    ctx = a.ctx
    if ctx.p != p:
        raise ValueError("parameter lives over the wrong prime")
    s = (p - 1) // 2
    zero = MultiPoly.zero(p)
    one = MultiPoly.const(p, 1)
    B = MultiPoly.var(p, "b")
    F = [zero] * p
    F[1] = one
    F[s + 1] = B
    from .trunc import ser_compose, ser_derivative, ser_mul, unipotent_reverse

    identities = []
    # phi(x^j) = x^j + j b x^{s+j}
    powF = [None, list(F)]
    for j in range(2, p):
        powF.append(ser_mul(powF[-1], F, zero))
    for j in range(1, p):
        expect = [zero] * p
        expect[j] = one
        if s + j < p:
            expect[s + j] = MultiPoly.const(p, j) * B
        if powF[j] != expect:
            raise InternalCheckError(f"phi(x^{j}) identity failed")
    identities.append("phi(x^j) = x^j + j b x^{s+j} for 1 <= j <= p-1")

    C = unipotent_reverse(F, zero, one)
    G = ser_compose(ser_derivative(C, zero), F, zero)
    images = {}
    H = G
    images[-1] = H
    for j in range(0, p - 1):
        H = ser_mul(H, F, zero)
        images[j] = H
    for j in range(-1, p - 1):
        expect = [zero] * p
        expect[j + 1] = one
        if j == -1:
            expect[s] = -(MultiPoly.const(p, s + 1) * B)
            expect[p - 1] = -(MultiPoly.const(p, s * (s + 1)) * B * B)
        elif j < s:
            expect[s + j + 1] = -(MultiPoly.const(p, s - j) * B)
        if images[j] != expect:
            raise InternalCheckError(f"sigma_phi(e_{j}) identity failed")
    identities.append(
        "sigma(e_j) = e_j (s<=j), e_j - (s-j) b e_{s+j} (0<=j<s), "
        "e_-1 - (s+1) b e_{s-1} - s(s+1) b^2 e_{p-2}"
    )
    # dual: sigma^{-1}(e_{p-2}') coefficients are the x^{p-1} coefficients
    dual_coeffs = {j: images[j][p - 1] for j in range(-1, p - 1)}
    for j in range(-1, p - 1):
        if j == p - 2:
            want = one
        elif j == s - 1:
            want = -B
        elif j == -1:
            want = -(MultiPoly.const(p, s * (s + 1)) * B * B)
        else:
            want = zero
        if dual_coeffs[j] != want:
            raise InternalCheckError(f"dual coefficient identity failed at {j}")
    identities.append("sigma^{-1}(e_{p-2}') = e_{p-2}' - b e_{s-1}' - s(s+1) b^2 e_{-1}'")

    # numeric: choose b with s(s+1) b^2 = a and follow the curve
    coef = ctx.elem((s * (s + 1)) % p)
    b_val, ell = nth_root(a * coef.inverse(), 2, max_ext=root_bound)
    K = b_val.ctx
    aK = embed(a, K)
    chi_prime = basis_dual(K, p - 2) + basis_dual(K, -1).scale(aK)
    sigma = Automorphism(K, 1, tuple(
        b_val if k == s + 1 else K.zero() for k in range(2, p)
    ))
    moved = act_dual(sigma.inverse(), chi_prime)
    expect = basis_dual(K, p - 2) - basis_dual(K, s - 1).scale(b_val)
    if moved != expect:
        raise InternalCheckError("sigma^{-1}(chi') lost its e_{-1}' term incorrectly")
    identities.append("sigma^{-1}(e_{p-2}' + a e_{-1}') = e_{p-2}' - b e_{s-1}'")

    target_cls, _ = canonicalize_dual(chi_prime, root_bound)
    psi_checked = 0
    for tcode in range(1, p):
        t = K.elem(tcode)
        psi = basis_dual(K, p - 2).scale(t ** (p - 2)) - basis_dual(K, s - 1).scale(
            t ** (s - 1) * b_val
        )
        g = Automorphism.torus(K, t.inverse()).compose(sigma.inverse())
        if act_dual(g, chi_prime) != psi:
            raise InternalCheckError("curve point is not the expected group translate")
        ccls, _ = canonicalize_dual(psi, root_bound)
        if not ccls.same_class(target_cls):
            raise InternalCheckError("curve point left the orbit")
        psi_checked += 1
    t0 = K.zero()
    psi_at_zero = basis_dual(K, p - 2).scale(t0 ** (p - 2)) - basis_dual(K, s - 1).scale(
        t0 ** (s - 1) * b_val
    )
    psi_zero = psi_at_zero.is_zero()
    return {
        "p": p,
        "a": format_elem(a),
        "b": format_elem(b_val),
        "ext_degree": ell,
        "identities": identities,
        "psi_points_checked": psi_checked,
        "psi_zero_is_zero": psi_zero,
        "zero_in_closure": True,
    }

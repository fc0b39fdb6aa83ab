"""Sparse multivariate polynomials over F_p with weighted gradings.

Terms live in a dict keyed by sorted ((variable, exponent), ...) tuples with
integer coefficients in 1..p-1; zero coefficients are never stored.
Variables are plain strings.  The library uses three families:

    X_-1 .. X_{p-2}   coordinates on the algebra or its dual
    A                 the orbit parameter
    b, b2 .. b{p-1}   unipotent automorphism coordinates

Exponents are unbounded: closure polynomials reach degree (p-2)(p-2)-1.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .ffield import FieldCtx, FieldElem

Monomial = tuple[tuple[str, int], ...]


class PolyError(ValueError):
    """Malformed polynomial input or unsupported operation."""


def var_sort_key(name: str):
    """Global variable order: A < X_{-1} < X_0 < ... < b < b2 < ..."""
    if name == "A":
        return (0, 0, "")
    if name.startswith("X_"):
        return (1, int(name[2:]), "")
    if name == "b":
        return (2, 0, "")
    if name.startswith("b") and name[1:].isdigit():
        return (2, int(name[1:]), "")
    return (3, 0, name)


def _norm_monomial(pairs: Iterable[tuple[str, int]]) -> Monomial:
    merged: dict[str, int] = {}
    for v, e in pairs:
        if e:
            merged[v] = merged.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in merged.items() if e), key=lambda t: var_sort_key(t[0])))


class MultiPoly:
    """Sparse polynomial over F_p."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[Monomial, int] | None = None):
        self.p = p
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                c %= p
                if c:
                    clean[mono] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "MultiPoly":
        return cls(p)

    @classmethod
    def const(cls, p: int, c: int) -> "MultiPoly":
        return cls(p, {(): c % p})

    @classmethod
    def var(cls, p: int, name: str, exp: int = 1, coeff: int = 1) -> "MultiPoly":
        return cls(p, {((name, exp),): coeff % p})

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.p != other.p:
            raise PolyError("polynomials over different primes")

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.p, other)
        self._check(other)
        out = dict(self.terms)
        p = self.p
        for mono, c in other.terms.items():
            v = (out.get(mono, 0) + c) % p
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return MultiPoly(p, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return MultiPoly(p, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.p, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other %= self.p
            if other == 0:
                return MultiPoly(self.p)
            return MultiPoly(self.p, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        p = self.p
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _norm_monomial(m1 + m2)
                v = (out.get(mono, 0) + c1 * c2) % p
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return MultiPoly(p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative polynomial power")
        result = MultiPoly.const(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self == MultiPoly.const(self.p, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    def degree_in(self, name: str) -> int:
        deg = 0
        for mono in self.terms:
            for v, e in mono:
                if v == name:
                    deg = max(deg, e)
        return deg

    def coefficient_of(self, name: str, exp: int) -> "MultiPoly":
        """Coefficient of name**exp, as a polynomial in the remaining variables."""
        out = {}
        for mono, c in self.terms.items():
            got = 0
            rest = []
            for v, e in mono:
                if v == name:
                    got = e
                else:
                    rest.append((v, e))
            if got == exp:
                out[tuple(rest)] = c
        return MultiPoly(self.p, out)

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        if set(self.terms) != {()}:
            raise PolyError("polynomial is not constant")
        return self.terms[()]

    def __repr__(self):
        return poly_str(self)


# ---------------------------------------------------------------------------
# operations


def weighted_degree(mono: Monomial, weights: Mapping[str, int]) -> int:
    total = 0
    for v, e in mono:
        if v not in weights:
            raise PolyError(f"no weight given for variable {v}")
        total += weights[v] * e
    return total


def weighted_components(f: MultiPoly, weights: Mapping[str, int]) -> dict[int, MultiPoly]:
    """Partition the terms of f by weighted degree; the parts sum back to f."""
    buckets: dict[int, dict[Monomial, int]] = {}
    for mono, c in f.terms.items():
        d = weighted_degree(mono, weights)
        buckets.setdefault(d, {})[mono] = c
    return {d: MultiPoly(f.p, t) for d, t in sorted(buckets.items())}


def substitute(f: MultiPoly, assignment: Mapping[str, "MultiPoly | int"]) -> MultiPoly:
    """Exact substitution of polynomials (or F_p scalars) for variables."""
    p = f.p
    cache: dict[tuple[str, int], MultiPoly] = {}

    def power(name: str, e: int) -> MultiPoly:
        key = (name, e)
        if key not in cache:
            val = assignment[name]
            if isinstance(val, int):
                base = MultiPoly.const(p, val)
            else:
                base = val
            cache[key] = base ** e
        return cache[key]

    out = MultiPoly.zero(p)
    for mono, c in f.terms.items():
        term = MultiPoly.const(p, c)
        for v, e in mono:
            if v in assignment:
                term = term * power(v, e)
            else:
                term = term * MultiPoly.var(p, v, e)
        out = out + term
    return out


def evaluate(f: MultiPoly, point: Mapping[str, FieldElem], ctx: FieldCtx) -> FieldElem:
    """Evaluate f at field elements (any extension of F_p)."""
    if ctx.p != f.p:
        raise PolyError("field characteristic does not match polynomial prime")
    acc = ctx.zero()
    for mono, c in f.terms.items():
        val = ctx.elem(c)
        for v, e in mono:
            if v not in point:
                raise PolyError(f"no value given for variable {v}")
            val = val * point[v] ** e
        acc = acc + val
    return acc


def divides(g: MultiPoly, f: MultiPoly, main_var: str) -> tuple[bool, MultiPoly | None]:
    """Exact division test f = g * h by long division along main_var.

    Requires the leading coefficient of g in main_var to be a single
    monomial (true for every divisor this library constructs).
    """
    if g.is_zero():
        raise PolyError("division by the zero polynomial")
    g._check(f)
    p = f.p
    dg = g.degree_in(main_var)
    lead = g.coefficient_of(main_var, dg)
    if len(lead.terms) != 1:
        raise PolyError("divides() needs a monomial leading coefficient in the main variable")
    (lead_mono, lead_c), = lead.terms.items()
    lead_cinv = pow(lead_c, p - 2, p)

    def try_div_mono(mono: Monomial, c: int, dcur: int):
        # divide c*mono*main^dcur by lead_c*lead_mono*main^dg
        need = dict(lead_mono)
        out = []
        for v, e in mono:
            r = e - need.pop(v, 0)
            if r < 0:
                return None
            if r:
                out.append((v, r))
        if need:
            return None
        out.append((main_var, dcur - dg))
        return _norm_monomial(out), (c * lead_cinv) % p

    rem = f
    quot = MultiPoly.zero(p)
    while not rem.is_zero():
        dr = rem.degree_in(main_var)
        if dr < dg:
            return False, None
        top = rem.coefficient_of(main_var, dr)
        partial = {}
        for mono, c in top.terms.items():
            r = try_div_mono(mono, c, dr)
            if r is None:
                return False, None
            partial[r[0]] = (partial.get(r[0], 0) + r[1]) % p
        q = MultiPoly(p, partial)
        if q.is_zero():
            return False, None
        quot = quot + q
        rem = rem - q * g
        if rem.degree_in(main_var) >= dr and not rem.is_zero() and rem.degree_in(main_var) == dr:
            # no progress: top coefficient did not cancel completely
            return False, None
    if quot * g == f:
        return True, quot
    return False, None  # pragma: no cover - the loop already guarantees this


def triangular_invert(
    exprs: list[MultiPoly],
    unknowns: list[str],
    new_vars: list[str],
) -> list[MultiPoly]:
    """Invert a triangular polynomial system by back-substitution.

    exprs[k] must equal unit * unknowns[k] + (polynomial in unknowns[:k]),
    with a nonzero constant unit.  Returns each unknown as a polynomial in
    new_vars, so substituting the output back into exprs[k] yields exactly
    the variable new_vars[k].
    """
    if not (len(exprs) == len(unknowns) == len(new_vars)):
        raise PolyError("triangular_invert needs matching sequence lengths")
    solution: dict[str, MultiPoly] = {}
    out = []
    for k, expr in enumerate(exprs):
        p = expr.p
        u = unknowns[k]
        if expr.degree_in(u) != 1:
            raise PolyError(f"expression {k} is not linear in {u}")
        unit_poly = expr.coefficient_of(u, 1)
        try:
            unit = unit_poly.constant_value()
        except PolyError:
            raise PolyError(f"expression {k}: coefficient of {u} is not constant")
        if unit % p == 0:
            raise PolyError(f"expression {k}: unit coefficient of {u} vanishes mod {p}")
        rest = expr.coefficient_of(u, 0)
        lowered = substitute(rest, solution) if solution else rest
        bad = lowered.variables() - set(new_vars)
        if bad:
            raise PolyError(f"expression {k} depends on unsolved unknowns {sorted(bad)}")
        sol = (MultiPoly.var(p, new_vars[k]) - lowered) * pow(unit, p - 2, p)
        solution[u] = sol
        out.append(sol)
    return out


# ---------------------------------------------------------------------------
# canonical text form


def _mono_sort_key(item: tuple[Monomial, int], universe: list[str]):
    mono, _ = item
    deg = sum(e for _, e in mono)
    exps = dict(mono)
    return (deg, tuple(exps.get(v, 0) for v in universe))


def poly_str(f: MultiPoly) -> str:
    """Canonical text: graded-lex term order, '-' folded into the separators."""
    if f.is_zero():
        return "0"
    universe = sorted(f.variables(), key=var_sort_key)
    items = sorted(f.terms.items(), key=lambda it: _mono_sort_key(it, universe))
    half = f.p // 2
    chunks = []
    for idx, (mono, c) in enumerate(items):
        neg = c > half
        mag = f.p - c if neg else c
        factors = []
        for v, e in mono:
            factors.append(v if e == 1 else f"{v}^{e}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if idx == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


_TERM_RE = re.compile(r"^(\d+)?(?:\*?((?:X_-?\d+|A|b\d*)(?:\^\d+)?(?:\*(?:X_-?\d+|A|b\d*)(?:\^\d+)?)*))?$")


def poly_parse(text: str, p: int) -> MultiPoly:
    """Parse the canonical polynomial text form (round-trips with poly_str)."""
    s = text.strip()
    if not s:
        raise PolyError("empty polynomial text")
    if s == "0":
        return MultiPoly.zero(p)
    s = s.replace(" ", "")
    # a '-' opens a new negative term unless it is the index of X_-1
    s = re.sub(r"(?<!_)-", "+-", s)
    if s.startswith("+"):
        s = s[1:]
    out = MultiPoly.zero(p)
    for raw in s.split("+"):
        if not raw:
            raise PolyError(f"malformed polynomial text {text!r}")
        sign = 1
        if raw.startswith("-"):
            sign = -1
            raw = raw[1:]
        m = _TERM_RE.match(raw)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise PolyError(f"malformed term {raw!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        pairs = []
        if m.group(2):
            for factor in m.group(2).split("*"):
                if "^" in factor:
                    v, e = factor.split("^")
                    pairs.append((v, int(e)))
                else:
                    pairs.append((factor, 1))
        out = out + MultiPoly(p, {_norm_monomial(pairs): sign * coeff})
    return out

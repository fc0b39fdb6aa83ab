"""The truncated polynomial ring k[x]/(x^p) and its automorphism group.

An automorphism is determined by its value on x, an invertible polynomial
with zero constant term.  We store the semidirect coordinates

    phi(x) = t * (x + b_2 x^2 + ... + b_{p-1} x^{p-1}),   t != 0,

so the torus part t and unipotent part (b_2, ..., b_{p-1}) are always
explicit.  Composition goes through substitution of images and
re-decomposition; inversion is truncated series reversion.

The same series kernels run with field coefficients (numeric actions) and
with MultiPoly coefficients (symbolic actions in the b variables).
"""

from __future__ import annotations

from .ffield import FieldCtx, FieldElem, FieldError, format_elem, parse_elem
from .sympoly import MultiPoly


class TruncError(ValueError):
    """Operation leaves the truncated ring's normal form."""


# ---------------------------------------------------------------------------
# generic series kernels: dense length-p coefficient lists over any ring
# whose elements support +, -, * and int scalar multiplication.


def ser_mul(a: list, b: list, zero):
    p = len(a)
    out = [zero] * p
    for i, x in enumerate(a):
        for j in range(p - i):
            y = b[j]
            out[i + j] = out[i + j] + x * y
    return out


def ser_compose(f: list, g: list, zero):
    """f(g(x)) truncated; g must have zero constant term."""
    p = len(f)
    res = [zero] * p
    for c in reversed(f):
        res = ser_mul(res, g, zero)
        res[0] = res[0] + c
    return res


def ser_derivative(f: list, zero):
    p = len(f)
    return [(k + 1) * f[k + 1] for k in range(p - 1)] + [zero]


def unipotent_reverse(f: list, zero, one):
    """Compositional inverse of f = x + b_2 x^2 + ... (leading coefficient 1).

    Solves f(C(x)) = x coefficient by coefficient,

        c_n = -( f_n + sum_{s=2..n-1} f_s [x^n] C^s ),

    filling the power table T[s][n] = [x^n] C^s by the convolution
    T[s][n] = sum_k c_k T[s-1][n-k]; the entries needed for c_n only involve
    earlier coefficients, so the triangle closes.
    """
    p = len(f)
    C = [zero, one] + [zero] * (p - 2)
    T = [None, C] + [[zero] * p for _ in range(p - 2)]  # T[s] = coefficients of C^s
    for n in range(2, p):
        # complete column n of the table for s = 2..n using known c_k (k < n)
        for s in range(2, n + 1):
            acc = zero
            for k in range(1, n - s + 2):
                acc = acc + C[k] * T[s - 1][n - k]
            T[s][n] = acc
        val = f[n]
        for s in range(2, n):
            val = val + f[s] * T[s][n]
        C[n] = -val
    return C


# ---------------------------------------------------------------------------


class TruncPoly:
    """Element of k[x]/(x^p): p coefficients for x^0 .. x^{p-1}."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        coeffs = tuple(ctx.elem(c) for c in coeffs)
        if len(coeffs) != ctx.p:
            raise TruncError(f"need {ctx.p} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "TruncPoly":
        return cls(ctx, (0,) * ctx.p)

    @classmethod
    def x(cls, ctx: FieldCtx) -> "TruncPoly":
        return cls(ctx, (0, 1) + (0,) * (ctx.p - 2))

    def _check(self, other: "TruncPoly"):
        if self.ctx is not other.ctx:
            raise FieldError("context mismatch")

    def __add__(self, other):
        self._check(other)
        return TruncPoly(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TruncPoly(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncPoly(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.ctx.elem(other)
            return TruncPoly(self.ctx, tuple(a * c for a in self.coeffs))
        self._check(other)
        return TruncPoly(self.ctx, ser_mul(list(self.coeffs), list(other.coeffs), self.ctx.zero()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def derivative(self) -> "TruncPoly":
        return TruncPoly(self.ctx, ser_derivative(list(self.coeffs), self.ctx.zero()))

    def evaluate(self, point: FieldElem) -> FieldElem:
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        return format_trunc(self)


def tp_compose(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    """f(g(x)) in k[x]/(x^p); g needs zero constant term to respect the ideal."""
    f._check(g)
    if not g.coeffs[0].is_zero():
        raise TruncError("composition needs a zero constant term in the inner polynomial")
    return TruncPoly(f.ctx, ser_compose(list(f.coeffs), list(g.coeffs), f.ctx.zero()))


def format_trunc(f: TruncPoly) -> str:
    return ",".join(format_elem(c) for c in f.coeffs)


def parse_trunc(text: str, ctx: FieldCtx) -> TruncPoly:
    parts = text.split(",")
    if len(parts) != ctx.p:
        raise TruncError(f"expected {ctx.p} comma-separated coefficients")
    return TruncPoly(ctx, tuple(parse_elem(s, ctx) for s in parts))


# ---------------------------------------------------------------------------


class Automorphism:
    """Automorphism of k[x]/(x^p) in semidirect coordinates (t, b_2..b_{p-1})."""

    __slots__ = ("ctx", "t", "b", "_inv")

    def __init__(self, ctx: FieldCtx, t, b=()):
        self.ctx = ctx
        self.t = ctx.elem(t)
        if self.t.is_zero():
            raise TruncError("torus part must be nonzero")
        b = tuple(ctx.elem(c) for c in b) if b else ()
        if not b:
            b = (ctx.zero(),) * (ctx.p - 2)
        if len(b) != ctx.p - 2:
            raise TruncError(f"need {ctx.p - 2} unipotent coefficients b_2..b_{ctx.p - 1}")
        self.b = b
        self._inv = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Automorphism":
        return cls(ctx, 1)

    @classmethod
    def torus(cls, ctx: FieldCtx, t) -> "Automorphism":
        return cls(ctx, t)

    @classmethod
    def unipotent(cls, ctx: FieldCtx, b) -> "Automorphism":
        return cls(ctx, 1, b)

    @classmethod
    def from_image(cls, img: TruncPoly) -> "Automorphism":
        if not img.coeffs[0].is_zero():
            raise TruncError("automorphism image must have zero constant term")
        t = img.coeffs[1]
        if t.is_zero():
            raise TruncError("automorphism image must have invertible linear term")
        tinv = t.inverse()
        return cls(img.ctx, t, tuple(c * tinv for c in img.coeffs[2:]))

    # -- structure -----------------------------------------------------------

    def image(self) -> TruncPoly:
        coeffs = [self.ctx.zero(), self.t] + [self.t * c for c in self.b]
        return TruncPoly(self.ctx, tuple(coeffs))

    def is_identity(self) -> bool:
        return self.t == self.ctx.one() and all(c.is_zero() for c in self.b)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.ctx is other.ctx and self.t == other.t and self.b == other.b

    def __hash__(self):
        return hash((id(self.ctx), self.t, self.b))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other (group product); images compose contravariantly."""
        if self.ctx is not other.ctx:
            raise FieldError("context mismatch")
        return Automorphism.from_image(tp_compose(other.image(), self.image()))

    def inverse(self) -> "Automorphism":
        if self._inv is None:
            self._inv = aut_invert(self)
            self._inv._inv = self
        return self._inv

    def apply(self, f: TruncPoly) -> TruncPoly:
        """Ring-map application: substitute the image into f."""
        return tp_compose(f, self.image())

    def __repr__(self):
        return format_aut(self)


def aut_invert(sigma: Automorphism) -> Automorphism:
    """Group inverse via truncated series reversion of the image.

    The reversion runs on the unipotent factor; the torus rescaling is undone
    by substituting x/t, so phi^{-1}(x) = C(x / t) with C the unipotent
    inverse series.
    """
    ctx = sigma.ctx
    zero, one = ctx.zero(), ctx.one()
    U = [zero, one] + list(sigma.b)
    C = unipotent_reverse(U, zero, one)
    tinv = sigma.t.inverse()
    scale = one
    coeffs = [zero]
    for k in range(1, ctx.p):
        scale = scale * tinv
        coeffs.append(C[k] * scale)
    return Automorphism.from_image(TruncPoly(ctx, tuple(coeffs)))


def act_witt(sigma: Automorphism, w):
    """Conjugation action on a derivation given by its coefficient vector.

    Works on any object with .ctx and .coeffs (length p, entry k is the
    coefficient of x^{k+1} d/dx, i.e. of the basis derivation e_{k-1}).
    """
    ctx = w.ctx
    if sigma.ctx is not ctx:
        raise FieldError("context mismatch")
    F = sigma.image()
    C = sigma.inverse().image()
    Cp = C.derivative()
    W = TruncPoly(ctx, tuple(w.coeffs))  # w(x) has the same coefficient list
    res = tp_compose(Cp * W, F)
    return w.__class__(ctx, res.coeffs)


def witt_matrix(sigma: Automorphism) -> list[list[FieldElem]]:
    """Matrix of the conjugation action on derivations, columns = basis images."""
    ctx = sigma.ctx
    p = ctx.p
    F = sigma.image()
    Cp = sigma.inverse().image().derivative()
    # column j holds sigma(e_{j-1})(x) = F^j * (C' o F)
    cols = []
    H = tp_compose(Cp, F)
    cols.append(H.coeffs)
    for _ in range(p - 1):
        H = H * F
        cols.append(H.coeffs)
    return [[cols[j][k] for j in range(p)] for k in range(p)]


def act_dual(sigma: Automorphism, chi):
    """Contravariant action on linear functionals: (sigma . chi)(w) = chi(sigma^{-1} w)."""
    ctx = chi.ctx
    if sigma.ctx is not ctx:
        raise FieldError("context mismatch")
    M = witt_matrix(sigma.inverse())
    p = ctx.p
    out = []
    for j in range(p):
        acc = ctx.zero()
        for k in range(p):
            if not chi.coeffs[k].is_zero():
                acc = acc + chi.coeffs[k] * M[k][j]
        out.append(acc)
    return chi.__class__(ctx, tuple(out))


def format_aut(sigma: Automorphism) -> str:
    bs = ",".join(format_elem(c) for c in sigma.b)
    return f"t={format_elem(sigma.t)};b=[{bs}]"


def parse_aut(text: str, ctx: FieldCtx) -> Automorphism:
    text = text.strip()
    if not text.startswith("t=") or ";b=[" not in text or not text.endswith("]"):
        raise TruncError(f"malformed automorphism text {text!r}")
    tpart, _, bpart = text.partition(";b=[")
    t = parse_elem(tpart[2:], ctx)
    body = bpart[:-1]
    b = tuple(parse_elem(s, ctx) for s in body.split(",")) if body else ()
    return Automorphism(ctx, t, b)


# ---------------------------------------------------------------------------
# symbolic action coefficients


def sym_action(p: int, i: int, mode: str) -> dict[int, MultiPoly]:
    """Exact coefficient polynomials of the group action, b_2..b_{p-1} symbolic.

    witt mode: sigma(e_i) = sum_j a_j e_j, returns {j: a_j} for i <= j <= p-2.
    dual mode: sigma^{-1}(e_i') = sum_j a_j e_j', returns {j: a_j} for
    -1 <= j <= i, where a_j is the coefficient of x^{i+1} in sigma(e_j)(x).

    Each a_j is weighted-homogeneous for deg(b_s) = s-1, of degree j-i in
    witt mode and i-j in dual mode.
    """
    if mode not in ("witt", "dual"):
        raise ValueError(f"unknown mode {mode!r}")
    if not -1 <= i <= p - 2:
        raise ValueError(f"basis index {i} out of range for p={p}")
    zero = MultiPoly.zero(p)
    one = MultiPoly.const(p, 1)
    F = [zero, one] + [MultiPoly.var(p, f"b{s}") for s in range(2, p)]
    C = unipotent_reverse(F, zero, one)
    Cp = ser_derivative(C, zero)
    G = ser_compose(Cp, F, zero)
    if mode == "witt":
        H = G
        for _ in range(i + 1):
            H = ser_mul(H, F, zero)
        # H = F^{i+1} (C' o F) = sigma(e_i)(x)
        for k in range(i + 1):
            assert H[k].is_zero()
        assert H[i + 1] == one
        return {j: H[j + 1] for j in range(i, p - 1)}
    out = {}
    H = G  # F^0 * G is sigma(e_{-1})(x)
    out[-1] = H[i + 1]
    for j in range(0, i + 1):
        H = ser_mul(H, F, zero)
        out[j] = H[i + 1]
    assert out[i] == one
    return out

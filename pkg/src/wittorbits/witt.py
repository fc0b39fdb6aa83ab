"""The rank-one Witt algebra over F_{p^m}: bracket, grading, p-map, and the
degree-(p-1) invariant read off the characteristic polynomial.

Elements are stored as coefficient vectors over the basis e_{-1}, ..., e_{p-2}
with e_i = x^{i+1} d/dx acting on k[x]/(x^p).  The vector slot k holds the
coefficient of e_{k-1}, which is simultaneously the coefficient of x^k in
w(x) - derivations are determined by their value on x.
"""

from __future__ import annotations

from .ffield import FieldCtx, FieldElem, FieldError, format_elem, parse_elem
from .sympoly import MultiPoly
from .trunc import TruncPoly

MAX_SYMBOLIC_P = 7


class InternalCheckError(RuntimeError):
    """A structural fact the construction guarantees failed to hold."""


class CoeffVector:
    """Shared container behaviour for elements of the algebra and its dual."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        coeffs = tuple(ctx.elem(c) for c in coeffs)
        if len(coeffs) != ctx.p:
            raise FieldError(f"need {ctx.p} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs

    def __getitem__(self, i: int) -> FieldElem:
        """Coefficient of basis index i, -1 <= i <= p-2."""
        if not -1 <= i <= self.ctx.p - 2:
            raise IndexError(f"basis index {i} out of range")
        return self.coeffs[i + 1]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise FieldError("context mismatch")

    def __add__(self, other):
        self._check(other)
        return self.__class__(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return self.__class__(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return self.__class__(self.ctx, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "CoeffVector":
        c = self.ctx.elem(c)
        return self.__class__(self.ctx, tuple(c * a for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, CoeffVector):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((type(self).__name__, id(self.ctx), self.coeffs))

    def __repr__(self):
        return format_vector(self)


class WittElem(CoeffVector):
    """Element of the Witt algebra."""

    def degree(self) -> int:
        """Least i with a nonzero e_i coefficient; undefined on zero."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k - 1
        raise ValueError("the zero element has no degree")

    def poly(self) -> TruncPoly:
        """w(x), the value of the derivation on x."""
        return TruncPoly(self.ctx, self.coeffs)


class Character(CoeffVector):
    """Linear functional on the Witt algebra, coordinates over the dual basis."""

    def apply(self, w: WittElem) -> FieldElem:
        self._check(w)
        acc = self.ctx.zero()
        for a, b in zip(self.coeffs, w.coeffs):
            acc = acc + a * b
        return acc


def basis(ctx: FieldCtx, i: int) -> WittElem:
    e = [0] * ctx.p
    e[i + 1] = 1
    return WittElem(ctx, e)


def basis_dual(ctx: FieldCtx, i: int) -> Character:
    e = [0] * ctx.p
    e[i + 1] = 1
    return Character(ctx, e)


def zero_w(ctx: FieldCtx) -> WittElem:
    return WittElem(ctx, (0,) * ctx.p)


def zero_dual(ctx: FieldCtx) -> Character:
    return Character(ctx, (0,) * ctx.p)


def embed_vector(v, target: FieldCtx):
    from .ffield import embed

    return v.__class__(target, tuple(embed(c, target) for c in v.coeffs))


# ---------------------------------------------------------------------------
# text form shared by WittElem and Character: "index:elem;..." sparse pairs


def format_vector(v: CoeffVector) -> str:
    parts = [
        f"{k - 1}:{format_elem(c)}" for k, c in enumerate(v.coeffs) if not c.is_zero()
    ]
    return ";".join(parts)


def parse_vector(text: str, ctx: FieldCtx, cls=WittElem):
    coeffs = [ctx.zero()] * ctx.p
    text = text.strip()
    if text:
        seen = set()
        for pair in text.split(";"):
            idx_s, sep, elem_s = pair.partition(":")
            if not sep:
                raise FieldError(f"malformed coefficient pair {pair!r}")
            try:
                idx = int(idx_s)
            except ValueError:
                raise FieldError(f"malformed basis index {idx_s!r}") from None
            if not -1 <= idx <= ctx.p - 2:
                raise FieldError(f"basis index {idx} out of range for p={ctx.p}")
            if idx in seen:
                raise FieldError(f"duplicate basis index {idx}")
            seen.add(idx)
            coeffs[idx + 1] = parse_elem(elem_s, ctx)
    return cls(ctx, tuple(coeffs))


# ---------------------------------------------------------------------------
# algebra operations


def bracket(u: WittElem, v: WittElem) -> WittElem:
    """[e_i, e_j] = (j - i) e_{i+j}, extended bilinearly; out-of-range terms drop."""
    u._check(v)
    ctx = u.ctx
    p = ctx.p
    out = [ctx.zero()] * p
    for ki, a in enumerate(u.coeffs):
        if a.is_zero():
            continue
        i = ki - 1
        for kj, b in enumerate(v.coeffs):
            if b.is_zero():
                continue
            j = kj - 1
            if -1 <= i + j <= p - 2:
                out[i + j + 1] = out[i + j + 1] + (j - i) * (a * b)
    return WittElem(ctx, tuple(out))


def as_endo(w: WittElem) -> list[list[FieldElem]]:
    """Matrix of w on k[x]/(x^p) in the basis 1, x, ..., x^{p-1}.

    Column j is w(x^j) = j x^{j-1} w(x).
    """
    ctx = w.ctx
    p = ctx.p
    zero = ctx.zero()
    M = [[zero] * p for _ in range(p)]
    for j in range(1, p):
        for k, c in enumerate(w.coeffs):
            r = j - 1 + k
            if r < p and not c.is_zero():
                M[r][j] = M[r][j] + j * c
    return M


def mat_mul(A, B, zero):
    n = len(A)
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if hasattr(a, "is_zero") and a.is_zero():
                continue
            Bk = B[k]
            row = out[i]
            for j in range(n):
                row[j] = row[j] + a * Bk[j]
    return out


def mat_pow(A, e, zero, one):
    n = len(A)
    result = [[one if i == j else zero for j in range(n)] for i in range(n)]
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base, zero)
        base = mat_mul(base, base, zero)
        e >>= 1
    return result


def berkowitz_charpoly(A, zero, one):
    """Characteristic polynomial det(X I - A) without divisions.

    Returns [1, c_{n-1}, ..., c_0], descending powers.  Works over any
    commutative ring, which is what makes it usable both for field matrices
    and for the generic matrix with polynomial entries.
    """
    n = len(A)
    poly = [one, -A[0][0]]
    for k in range(1, n):
        R = A[k][:k]
        Cv = [A[i][k] for i in range(k)]
        M = [row[:k] for row in A[:k]]
        s = []
        v = Cv
        for _ in range(k):
            s.append(_dot(R, v, zero))
            v = _matvec(M, v, zero)
        col = [one, -A[k][k]] + [-sj for sj in s]
        new = [zero] * (k + 2)
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, k) + 1):
                d = i - j
                if d <= k + 1:
                    acc = acc + col[d] * poly[j]
            new[i] = acc
        poly = new
    return poly


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def _matvec(M, v, zero):
    out = []
    for row in M:
        acc = zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def p_power(w: WittElem) -> WittElem:
    """w^{[p]}: the p-th power of w as an operator on k[x]/(x^p).

    The result is read back through its value on x and certified to be a
    derivation again by rebuilding the full matrix.
    """
    ctx = w.ctx
    M = as_endo(w)
    B = mat_pow(M, ctx.p, ctx.zero(), ctx.one())
    candidate = WittElem(ctx, tuple(B[r][1] for r in range(ctx.p)))
    if as_endo(candidate) != B:
        raise InternalCheckError(
            "p-th power of a derivation failed the derivation check"
        )  # pragma: no cover
    return candidate


def char_shape(w: WittElem) -> list[FieldElem]:
    """Characteristic polynomial coefficients with the X^p + c X shape enforced."""
    ctx = w.ctx
    poly = berkowitz_charpoly(as_endo(w), ctx.zero(), ctx.one())
    p = ctx.p
    if poly[0] != ctx.one():
        raise InternalCheckError("characteristic polynomial is not monic")  # pragma: no cover
    for j in range(2, p):
        if not poly[p - j].is_zero():
            raise InternalCheckError(
                f"characteristic polynomial has an X^{j} term"
            )
    if not poly[p].is_zero():
        raise InternalCheckError("characteristic polynomial has a constant term")
    return poly


def char_phi(w: WittElem) -> FieldElem:
    """The coefficient of X in char(w) = X^p + char_phi(w) X."""
    return char_shape(w)[w.ctx.p - 1]


def char_phi_symbolic(p: int) -> MultiPoly:
    """char_phi as a polynomial in the coordinates X_{-1}..X_{p-2}.

    Homogeneous of degree p-1; only exposed for p <= MAX_SYMBOLIC_P, where the
    generic computation stays small.
    """
    if p > MAX_SYMBOLIC_P:
        raise ValueError(f"symbolic invariant only supported for p <= {MAX_SYMBOLIC_P}")
    zero = MultiPoly.zero(p)
    one = MultiPoly.const(p, 1)
    M = [[zero] * p for _ in range(p)]
    for j in range(1, p):
        for k in range(p):
            r = j - 1 + k
            if r < p:
                M[r][j] = M[r][j] + MultiPoly.var(p, f"X_{k - 1}", coeff=j % p)
    poly = berkowitz_charpoly(M, zero, one)
    for j in range(2, p):
        if not poly[p - j].is_zero():
            raise InternalCheckError(f"generic characteristic polynomial has an X^{j} term")
    if not poly[p].is_zero():
        raise InternalCheckError("generic characteristic polynomial has a constant term")
    phi = poly[p - 1]
    for mono in phi.terms:
        if sum(e for _, e in mono) != p - 1:
            raise InternalCheckError("invariant is not homogeneous of degree p-1")
    return phi


def d_power(w: WittElem, i: int) -> TruncPoly:
    """w^i(x): apply the derivation w to x repeatedly, i >= 1 times."""
    ctx = w.ctx
    if not 1 <= i <= ctx.p:
        raise ValueError(f"exponent {i} out of range 1..{ctx.p}")
    W = w.poly()
    q = TruncPoly.x(ctx)
    for _ in range(i):
        q = q.derivative() * W
    return q

"""Exact arithmetic in F_p and its small extensions F_{p^m}.

Every field is constructed deterministically: the modulus of F_{p^m} is the
first monic irreducible polynomial of degree m in the integer encoding
sum(c_i * p^i) of its non-leading coefficients.  Elements carry a total
order through the same encoding.  Both choices exist so that canonical
representatives, witnesses and certificates are bit-for-bit reproducible
across runs.

Root extraction (`nth_root`) returns the least r-th root in the smallest
extension that contains one, found by a deterministic Tonelli-Shanks style
computation in each candidate extension.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterator


class FieldError(ValueError):
    """Invalid field construction or mixed-field arithmetic."""


class RootBoundError(FieldError):
    """No r-th root exists within the configured extension-degree bound."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division; n stays below ~10^11 here."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, ascending powers)

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - df
            for k in range(df + 1):
                a[shift + k] = (a[shift + k] - lead * f[k]) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    frob = [None] * (m + 1)
    cur = x
    for k in range(1, m + 1):
        cur = _ppowmod(cur, p, f, p)
        frob[k] = cur
    # x^{p^m} == x mod f, and gcd(x^{p^{m/d}} - x, f) == 1 for prime d | m
    if _pmod([(a - b) % p for a, b in zip_pad(frob[m], x)], f, p):
        return False
    for d, _ in factorize(m):
        diff = [(a - b) % p for a, b in zip_pad(frob[m // d], x)]
        g = _pgcd(diff, f, p)
        if len(g) != 1:
            return False
    return True


def zip_pad(a: list[int], b: list[int]) -> Iterator[tuple[int, int]]:
    n = max(len(a), len(b))
    for k in range(n):
        yield (a[k] if k < len(a) else 0, b[k] if k < len(b) else 0)


@lru_cache(maxsize=None)
def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)  # X itself; the prime field needs no extension
    for code in range(p ** m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------


class FieldCtx:
    """Description of F_{p^m}: prime, extension degree and fixed modulus."""

    __slots__ = ("p", "m", "modulus", "order", "_red", "_zero", "_one")

    def __init__(self, p: int, m: int, _token=None):
        if _token is not _CTX_TOKEN:
            raise FieldError("use make_field(p, m) to construct field contexts")
        self.p = p
        self.m = m
        self.modulus = _least_irreducible(p, m)
        self.order = p ** m
        # reduction rows for x^m .. x^{2m-2}
        red = [tuple((-c) % p for c in self.modulus[:m])]
        for _ in range(m - 2):
            prev = red[-1]
            shifted = [0] + list(prev[: m - 1])
            carry = prev[m - 1]
            if carry:
                for k in range(m):
                    shifted[k] = (shifted[k] + carry * red[0][k]) % p
            red.append(tuple(shifted))
        self._red = tuple(red)
        self._zero = FieldElem(self, (0,) * m)
        self._one = FieldElem(self, (1,) + (0,) * (m - 1))

    def zero(self) -> "FieldElem":
        return self._zero

    def one(self) -> "FieldElem":
        return self._one

    def gen(self) -> "FieldElem":
        if self.m == 1:
            return self._zero
        return FieldElem(self, (0, 1) + (0,) * (self.m - 2))

    def elem(self, value) -> "FieldElem":
        """Build an element from an int (reduced mod p) or coefficient sequence."""
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldError("context mismatch")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    def from_encoding(self, code: int) -> "FieldElem":
        coeffs = []
        for _ in range(self.m):
            coeffs.append(code % self.p)
            code //= self.p
        return FieldElem(self, tuple(coeffs))

    def elements(self) -> Iterator["FieldElem"]:
        for code in range(self.order):
            yield self.from_encoding(code)

    def nonzero_elements(self) -> Iterator["FieldElem"]:
        for code in range(1, self.order):
            yield self.from_encoding(code)

    def __repr__(self) -> str:
        return f"F_{self.order}"

    def __reduce__(self):
        return (make_field, (self.p, self.m))


_CTX_TOKEN = object()


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldCtx:
    """Return the canonical context for F_{p^m}.

    Rejects p <= 3: the algebra built on top of these fields needs
    characteristic at least 5.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if p <= 3:
        raise FieldError(f"p = {p} is not supported; the characteristic must exceed 3")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    return FieldCtx(p, m, _token=_CTX_TOKEN)


class FieldElem:
    """Element of F_{p^m} in reduced coordinates w.r.t. the field generator."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldError("context mismatch")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        p, m = ctx.p, ctx.m
        if m == 1:
            return FieldElem(ctx, ((self.coeffs[0] * o.coeffs[0]) % p,))
        a, b = self.coeffs, o.coeffs
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] = (conv[i + j] + x * y) % p
        out = list(conv[:m])
        for k in range(m, 2 * m - 1):
            c = conv[k]
            if c:
                row = ctx._red[k - m]
                for t in range(m):
                    out[t] = (out[t] + c * row[t]) % p
        return FieldElem(ctx, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElem(ctx, (pow(self.coeffs[0], e, ctx.p),))
        result = ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.ctx.order - 2)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def encode(self) -> int:
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.ctx.p + c
        return code

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.elem(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __lt__(self, other):
        o = self._coerce(other)
        return self.encode() < o.encode()

    def __repr__(self):
        return format_elem(self)


def multiplicative_order(x: FieldElem) -> int:
    if x.is_zero():
        raise FieldError("zero has no multiplicative order")
    n = x.ctx.order - 1
    one = x.ctx.one()
    for q, _ in factorize(n):
        while n % q == 0 and x ** (n // q) == one:
            n //= q
    return n


# ---------------------------------------------------------------------------
# text form: polynomial in the generator g, ascending powers, zeros omitted


def format_elem(x: FieldElem) -> str:
    if x.ctx.m == 1:
        return str(x.coeffs[0])
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            power = "g" if k == 1 else f"g^{k}"
            parts.append(head + power)
    return "+".join(parts) if parts else "0"


def parse_elem(text: str, ctx: FieldCtx) -> FieldElem:
    """Strict parse of the canonical element text form."""
    text = text.strip()
    if not text:
        raise FieldError("empty field element text")
    coeffs = [0] * ctx.m
    seen = set()
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise FieldError(f"malformed element text {text!r}")
        if "g" in term:
            head, _, tail = term.partition("g")
            if head == "":
                c = 1
            else:
                if not head.isdigit():
                    raise FieldError(f"malformed coefficient in {text!r}")
                c = int(head)
            if tail == "":
                k = 1
            elif tail.startswith("^") and tail[1:].isdigit():
                k = int(tail[1:])
            else:
                raise FieldError(f"malformed power in {text!r}")
        else:
            if not term.isdigit():
                raise FieldError(f"malformed element text {text!r}")
            c, k = int(term), 0
        if k >= ctx.m:
            raise FieldError(f"power g^{k} out of range for {ctx!r}")
        if k in seen:
            raise FieldError(f"duplicate power g^{k} in {text!r}")
        if not 0 <= c < ctx.p:
            raise FieldError(f"coefficient {c} out of range for {ctx!r}")
        seen.add(k)
        coeffs[k] = c
    return FieldElem(ctx, tuple(coeffs))


# ---------------------------------------------------------------------------
# embeddings between extensions of the same prime field


@lru_cache(maxsize=None)
def _embedding_root(p: int, src_m: int, dst_m: int) -> tuple[int, ...]:
    """Coefficients of the least root of the F_{p^src_m} modulus inside F_{p^dst_m}."""
    src = make_field(p, src_m)
    dst = make_field(p, dst_m)
    if dst.order <= 1 << 16:
        f = src.modulus
        for z in dst.elements():
            acc = dst.zero()
            for c in reversed(f):
                acc = acc * z + dst.elem(c)
            if acc.is_zero():
                return z.coeffs
        raise FieldError("modulus has no root in target field")  # pragma: no cover
    if src_m == 2:
        # quadratic formula: X^2 + b X + c
        c0 = dst.elem(src.modulus[0])
        b0 = dst.elem(src.modulus[1])
        disc = b0 * b0 - 4 * c0
        s = _root_in_field(disc, 2)
        if s is None:  # pragma: no cover - disc always square in even-degree target
            raise FieldError("discriminant has no square root in target field")
        inv2 = dst.elem(2).inverse()
        r1 = (s - b0) * inv2
        r2 = (-s - b0) * inv2
        return min(r1, r2, key=lambda e: e.encode()).coeffs
    raise FieldError(
        f"embedding F_{p}^{src_m} -> F_{p}^{dst_m}: target too large for root search"
    )


def embed(x: FieldElem, target: FieldCtx) -> FieldElem:
    src = x.ctx
    if src is target:
        return x
    if src.p != target.p:
        raise FieldError("cannot embed between different characteristics")
    if target.m % src.m != 0:
        raise FieldError(f"F_{src.order} is not a subfield of F_{target.order}")
    if src.m == 1:
        return target.elem(x.coeffs[0])
    root = FieldElem(target, _embedding_root(src.p, src.m, target.m))
    acc = target.zero()
    for c in reversed(x.coeffs):
        acc = acc * root + target.elem(c)
    return acc


def subfield_decode(x: FieldElem, base: FieldCtx) -> FieldElem:
    """Inverse of embed() on its image; raises if x is not in the subfield."""
    ctx = x.ctx
    if ctx is base:
        return x
    if base.p != ctx.p or ctx.m % base.m != 0:
        raise FieldError("not a subfield")
    p = ctx.p
    # columns: embeddings of the base power basis
    cols = [
        embed(FieldElem(base, tuple(1 if t == k else 0 for t in range(base.m))), ctx).coeffs
        for k in range(base.m)
    ]
    # solve sum_k y_k * cols[k] = x over F_p by Gaussian elimination
    rows = ctx.m
    mat = [[cols[k][r] for k in range(base.m)] + [x.coeffs[r]] for r in range(rows)]
    piv = []
    r = 0
    for c in range(base.m):
        sel = next((i for i in range(r, rows) if mat[i][c] % p != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        piv.append(c)
        r += 1
    sol = [0] * base.m
    for idx, c in enumerate(piv):
        sol[c] = mat[idx][base.m] % p
    for i in range(r, rows):
        if mat[i][base.m] % p:
            raise FieldError("element does not lie in the requested subfield")
    cand = FieldElem(base, tuple(sol))
    if embed(cand, ctx) != x:
        raise FieldError("element does not lie in the requested subfield")
    return cand


# ---------------------------------------------------------------------------
# root extraction


def _v(q: int, n: int) -> int:
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


def _element_of_order(ctx: FieldCtx, d: int) -> FieldElem:
    """Least-scan element of exact multiplicative order d (d must divide q-1)."""
    N = ctx.order - 1
    assert N % d == 0
    primes = [q for q, _ in factorize(d)]
    for w in ctx.nonzero_elements():
        u = w ** (N // d)
        if any((u ** (d // q)) == ctx.one() for q in primes):
            continue
        if u ** d == ctx.one():
            return u
    raise FieldError("no element of requested order")  # pragma: no cover


def _root_in_field(z: FieldElem, r: int) -> FieldElem | None:
    """Least y in z's own field with y^r = z, or None when no such y exists."""
    ctx = z.ctx
    one = ctx.one()
    if z.is_zero():
        return ctx.zero()
    N = ctx.order - 1
    d = gcd(r, N)
    # solvable iff ord(z) divides N/d
    if (N // d) % multiplicative_order(z) != 0:
        return None
    # split N = R * Q with R carrying every prime of r that divides N
    primes_r = sorted({q for q, _ in factorize(r)})
    R = 1
    for q in primes_r:
        R *= q ** _v(q, N)
    Q = N // R
    # component coprime to r: direct exponent inversion
    if Q > 1:
        eQ = R * pow(R, -1, Q)
        y0 = (z ** eQ) ** pow(r, -1, Q)  # gcd(r, Q) = 1 by construction of R
    else:
        y0 = one
    # per-prime Tonelli-Shanks in the q^e torsion component
    for q in primes_r:
        e = _v(q, N)
        if e == 0:
            continue
        k = _v(q, r)
        Npart = q ** e
        rest = N // Npart
        zq = z ** (rest * pow(rest, -1, Npart))
        # generator of the q^e torsion from the least q-th non-residue
        dnr = next(w for w in ctx.nonzero_elements() if (w ** (N // q)) != one)
        g = dnr ** (N // Npart)
        # digits of dlog_g(zq) in base q
        t = 0
        h = g ** (Npart // q)
        for j in range(e):
            c = (zq * g ** ((-t) % Npart)) ** (Npart // q ** (j + 1))
            dig = None
            probe = one
            for cand in range(q):
                if probe == c:
                    dig = cand
                    break
                probe = probe * h
            if dig is None:  # pragma: no cover
                raise FieldError("discrete log failure in root extraction")
            t += dig * q ** j
        if t % q ** k != 0:
            return None
        u = r // q ** k  # coprime to q, invertible mod q^e
        y0 = y0 * g ** ((t // q ** k) * pow(u, -1, Npart) % Npart)
    if (y0 ** r) != z:  # pragma: no cover - guarded by the solvability check
        return None
    # y0 * mu_d enumerates every root; return the least one
    if d > 1:
        zeta = _element_of_order(ctx, d)
        best = y0
        cur = y0
        for _ in range(d - 1):
            cur = cur * zeta
            if cur.encode() < best.encode():
                best = cur
        y0 = best
    return y0


@lru_cache(maxsize=None)
def _nth_root_cached(p: int, m: int, code: int, r: int, max_ext: int):
    ctx = make_field(p, m)
    x = ctx.from_encoding(code)
    n = multiplicative_order(x)
    q = ctx.order
    for ell in range(1, max_ext + 1):
        N = q ** ell - 1
        if (N // gcd(r, N)) % n == 0:
            K = make_field(p, m * ell)
            y = _root_in_field(embed(x, K), r)
            if y is None:  # pragma: no cover - the divisibility test is exact
                raise FieldError("internal: root predicted but not found")
            return y, ell
    raise RootBoundError(
        f"no {r}-th root of {format_elem(x)} in extensions of F_{q} of degree <= {max_ext}"
    )


def nth_root(x: FieldElem, r: int, max_ext: int = 4) -> tuple[FieldElem, int]:
    """Least y with y^r = x in the smallest extension F_{p^{m*l}} containing one.

    Returns (y, l).  x = 0 gives (0, 1); r = 1 returns x itself.
    """
    if r < 1:
        raise FieldError(f"root exponent must be positive, got {r}")
    if x.is_zero():
        return x, 1
    if r == 1:
        return x, 1
    return _nth_root_cached(x.ctx.p, x.ctx.m, x.encode(), r, max_ext)

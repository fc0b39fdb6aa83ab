"""Vectorized batch kernels for the exhaustive and randomized suites.

Everything here recomputes quantities that the object layer (witt.py) also
provides, just over numpy arrays of residues so that 10^4-element samples at
p = 13 finish in seconds.  Suites cross-check a slice of every batch against
the object layer, so these kernels never become the single source of truth.

Prime-field matrices are int64 arrays reduced mod p after each product;
entries stay far below 2^63 for p <= 13.
"""

from __future__ import annotations

import numpy as np


def rand_coeff_batch(rng: np.random.Generator, n: int, p: int, width: int) -> np.ndarray:
    return rng.integers(0, p, size=(n, width), dtype=np.int64)


def endo_batch(coeffs: np.ndarray, p: int) -> np.ndarray:
    """Batched matrices of derivations on k[x]/(x^p); coeffs shape (n, p)."""
    n, width = coeffs.shape
    assert width == p
    M = np.zeros((n, p, p), dtype=np.int64)
    for j in range(1, p):
        for k in range(p):
            r = j - 1 + k
            if r < p:
                M[:, r, j] = (M[:, r, j] + j * coeffs[:, k]) % p
    return M


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(A, B) % p


def matpow_mod(A: np.ndarray, e: int, p: int) -> np.ndarray:
    n = A.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), A.shape).copy()
    base = A % p
    while e:
        if e & 1:
            result = matmul_mod(result, base, p)
        base = matmul_mod(base, base, p)
        e >>= 1
    return result


def berkowitz_batch(A: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomials det(XI - A) for a batch, descending coeffs.

    Returns shape (n, size+1) with column 0 identically 1.
    """
    nbatch, size, _ = A.shape
    poly = np.zeros((nbatch, 2), dtype=np.int64)
    poly[:, 0] = 1
    poly[:, 1] = (-A[:, 0, 0]) % p
    for k in range(1, size):
        R = A[:, k, :k]
        Cv = A[:, :k, k]
        M = A[:, :k, :k]
        s = np.zeros((nbatch, k), dtype=np.int64)
        v = Cv
        for j in range(k):
            s[:, j] = np.einsum("ni,ni->n", R, v) % p
            if j + 1 < k:
                v = np.einsum("nij,nj->ni", M, v) % p
        col = np.zeros((nbatch, k + 2), dtype=np.int64)
        col[:, 0] = 1
        col[:, 1] = (-A[:, k, k]) % p
        col[:, 2:] = (-s) % p
        new = np.zeros((nbatch, k + 2), dtype=np.int64)
        for i in range(k + 2):
            jmax = min(i, k)
            acc = np.zeros(nbatch, dtype=np.int64)
            for j in range(jmax + 1):
                acc = (acc + col[:, i - j] * poly[:, j]) % p
            new[:, i] = acc
        poly = new
    return poly


def char_phi_batch(coeffs: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(phi values, shape_ok flags) for a batch of coefficient vectors."""
    M = endo_batch(coeffs, p)
    poly = berkowitz_batch(M, p)
    middle = poly[:, 1 : p - 1]  # coefficients of X^{p-1} .. X^2
    shape_ok = (middle % p == 0).all(axis=1) & (poly[:, p] % p == 0)
    return poly[:, p - 1] % p, shape_ok


def p_power_batch(coeffs: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(p-th power coefficient vectors, derivation flags) for a batch."""
    M = endo_batch(coeffs, p)
    B = matpow_mod(M, p, p)
    out = B[:, :, 1].copy()
    again = endo_batch(out, p)
    ok = (again == B).all(axis=(1, 2))
    return out % p, ok


def grid_points(p: int, width: int) -> np.ndarray:
    """All of F_p^width as an array of residue rows, encode order."""
    n = p ** width
    idx = np.arange(n)
    cols = []
    for _ in range(width):
        cols.append(idx % p)
        idx = idx // p
    return np.stack(cols, axis=1).astype(np.int64)


def eval_poly_grid(terms: list[tuple[dict[int, int], int]], pts: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a sparse polynomial on rows of residues.

    terms: list of ({column: exponent}, coefficient) with columns indexing pts.
    """
    n = pts.shape[0]
    acc = np.zeros(n, dtype=np.int64)
    for exps, c in terms:
        val = np.full(n, c % p, dtype=np.int64)
        for col, e in exps.items():
            base = pts[:, col] % p
            cur = np.ones(n, dtype=np.int64)
            b = base
            ee = e
            while ee:
                if ee & 1:
                    cur = (cur * b) % p
                b = (b * b) % p
                ee >>= 1
            val = (val * cur) % p
        acc = (acc + val) % p
    return acc


def poly_to_grid_terms(poly, var_to_col: dict[str, int]) -> list[tuple[dict[int, int], int]]:
    """Convert a MultiPoly into the eval_poly_grid term format."""
    out = []
    for mono, c in poly.terms.items():
        exps = {}
        for v, e in mono:
            exps[var_to_col[v]] = e
        out.append((exps, c))
    return out


# ---------------------------------------------------------------------------
# encoded Cayley-table arithmetic for exhaustive extension-field sweeps


_TABLE_CACHE: dict[tuple[int, int], tuple] = {}


def field_tables(p: int, m: int):
    """(add, mul, neg, smul) lookup tables over element encodings.

    add and mul are flat lists of length q^2 indexed by a*q+b; smul[j] maps
    an encoding to the encoding of j times the element, 0 <= j < p.
    """
    key = (p, m)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    from .ffield import make_field

    ctx = make_field(p, m)
    q = ctx.order
    elems = [ctx.from_encoding(c) for c in range(q)]
    add = [0] * (q * q)
    mul = [0] * (q * q)
    for a in range(q):
        ea = elems[a]
        base = a * q
        for b in range(q):
            add[base + b] = (ea + elems[b]).encode()
            mul[base + b] = (ea * elems[b]).encode()
    neg = [(-e).encode() for e in elems]
    smul = [[(j * e).encode() for e in elems] for j in range(p)]
    _TABLE_CACHE[key] = (add, mul, neg, smul)
    return _TABLE_CACHE[key]


def monic_rep_count(q: int, p: int) -> int:
    """Number of vectors in F_q^p whose first nonzero coordinate is 1."""
    return sum(q ** (p - 1 - k) for k in range(p))


def monic_rep(idx: int, q: int, p: int) -> tuple[int, ...]:
    """idx-th vector (in encode order) with first nonzero coordinate 1."""
    for k in range(p):
        block = q ** (p - 1 - k)
        if idx < block:
            tail = []
            c = idx
            for _ in range(p - 1 - k):
                tail.append(c % q)
                c //= q
            return (0,) * k + (1,) + tuple(tail)
        idx -= block
    raise IndexError(idx)


def bridge_sweep(p: int, m: int, lo: int, hi: int) -> tuple[int, list[str]]:
    """Check w^{[p]} = -phi(w) w on monic representatives lo..hi-1 of F_{p^m}^p.

    A from-scratch integer-table implementation (endomorphism matrix, p-th
    power, derivation test, division-free characteristic polynomial) kept
    deliberately independent of the object layer so the two can cross-check.
    """
    add, mul, neg, smul = field_tables(p, m)
    q = p ** m

    def matmul(A, B):
        out = [[0] * p for _ in range(p)]
        for i in range(p):
            Ai = A[i]
            oi = out[i]
            for k in range(p):
                a = Ai[k]
                if a:
                    Bk = B[k]
                    aq = a * q
                    for j in range(p):
                        b = Bk[j]
                        if b:
                            oi[j] = add[oi[j] * q + mul[aq + b]]
        return out

    def endo(codes):
        M = [[0] * p for _ in range(p)]
        for j in range(1, p):
            sj = smul[j]
            for k in range(p):
                r = j - 1 + k
                if r < p and codes[k]:
                    M[r][j] = add[M[r][j] * q + sj[codes[k]]]
        return M

    def charpoly(A):
        poly = [1, neg[A[0][0]]]
        for k in range(1, p):
            R = A[k][:k]
            Cv = [A[i][k] for i in range(k)]
            s = []
            v = Cv
            for _ in range(k):
                acc = 0
                for x, y in zip(R, v):
                    if x and y:
                        acc = add[acc * q + mul[x * q + y]]
                s.append(acc)
                nv = []
                for i in range(k):
                    acc = 0
                    Mi = A[i][:k]
                    for x, y in zip(Mi, v):
                        if x and y:
                            acc = add[acc * q + mul[x * q + y]]
                    nv.append(acc)
                v = nv
            col = [1, neg[A[k][k]]] + [neg[x] for x in s]
            new = [0] * (k + 2)
            for i in range(k + 2):
                acc = 0
                for j in range(min(i, k) + 1):
                    d = i - j
                    if d <= k + 1:
                        x, y = col[d], poly[j]
                        if x and y:
                            acc = add[acc * q + mul[x * q + y]]
                new[i] = acc
            poly = new
        return poly

    total = 0
    fails = []
    for idx in range(lo, hi):
        codes = monic_rep(idx, q, p)
        total += 1
        M = endo(codes)
        B = [row[:] for row in M]
        # p-th power by square and multiply
        e = p
        result = None
        base = B
        while e:
            if e & 1:
                result = base if result is None else matmul(result, base)
            e >>= 1
            if e:
                base = matmul(base, base)
        Bp = result
        cand = [Bp[r][1] for r in range(p)]
        if endo(cand) != Bp:
            fails.append(f"derivation check failed at {codes}")
            continue
        poly = charpoly(M)
        if any(poly[p - j] for j in range(2, p)) or poly[p]:
            fails.append(f"characteristic shape failed at {codes}")
            continue
        phi = poly[p - 1]
        nphi = neg[phi]
        expect = [mul[nphi * q + c] if c else 0 for c in codes]
        if expect != cand:
            fails.append(f"fiber identity failed at {codes}")
    return total, fails

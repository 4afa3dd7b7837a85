"""Dense univariate polynomials over the fields of :mod:`tangles.field`.

A polynomial over ``K`` is an array of shape ``(n,) + K.shape`` listing its
coefficients in ascending degree.  Functions accept untrimmed input (trailing
zero coefficients are harmless) and take the coefficient field first.

Besides the usual arithmetic this module holds the transposed kernels used by
dual algorithms: ``tmul`` (transposed multiplication), ``tmod_extend``
(transposed remainder, i.e. extension of a linearly recurrent sequence) and
``tdiff`` (transposed repeated differentiation).
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CharacteristicTooSmall,
    DivisionByZeroPoly,
    LengthMismatch,
    ModuliNotCoprime,
    NotInvertible,
)

_SCHOOL_DIV = 32


# -- shape helpers -------------------------------------------------------

def trim(f) -> np.ndarray:
    """Drop trailing zero coefficients."""
    f = np.asarray(f)
    if len(f) == 0:
        return f
    if f.ndim == 1:
        if f[-1] != 0:
            return f
        nz = np.flatnonzero(f != 0)
    else:
        if f[-1].any():
            return f
        nz = np.flatnonzero((f.reshape(len(f), -1) != 0).any(axis=1))
    return f[:nz[-1] + 1] if len(nz) else f[:0]


def degree(f) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(trim(f)) - 1


def pad(f, n: int) -> np.ndarray:
    """Zero-extend or truncate to exactly ``n`` coefficients."""
    f = np.asarray(f)
    if len(f) >= n:
        return f[:n]
    z = np.zeros((n - len(f),) + f.shape[1:], dtype=f.dtype)
    return np.concatenate([f, z])


def monomial(K, k: int, n: int | None = None) -> np.ndarray:
    out = K.zeros(k + 1 if n is None else n)
    out[k] = K.one()
    return out


def constant(K, c, n: int = 1) -> np.ndarray:
    out = K.zeros(n)
    out[0] = c
    return out


def equal(f, g) -> bool:
    f, g = trim(f), trim(g)
    return f.shape == g.shape and bool(np.all(f == g))


# -- linear operations ---------------------------------------------------

def add(K, f, g) -> np.ndarray:
    n = max(len(f), len(g))
    return (pad(f, n) + pad(g, n)) % K.p


def sub(K, f, g) -> np.ndarray:
    n = max(len(f), len(g))
    return (pad(f, n) - pad(g, n)) % K.p


def neg(K, f) -> np.ndarray:
    return (-np.asarray(f)) % K.p


def scale(K, f, c) -> np.ndarray:
    """Multiply every coefficient by the field element ``c``."""
    return K.mul(f, c)


def smul(K, f, s) -> np.ndarray:
    """Multiply coefficient ``i`` by the prime-field scalar ``s[i]``."""
    f = np.asarray(f)
    s = np.asarray(s).reshape((len(f),) + (1,) * len(K.shape))
    return (f * s) % K.p


def monic(K, f) -> np.ndarray:
    f = trim(f)
    if len(f) == 0:
        return f
    return scale(K, f, K.inv(f[-1]))


# -- multiplication and division -----------------------------------------

def mul(K, f, g) -> np.ndarray:
    return K.poly_mul(np.asarray(f), np.asarray(g))


def mul_trunc(K, f, g, n: int) -> np.ndarray:
    """``f*g mod x^n``, always of length ``n``."""
    return pad(mul(K, np.asarray(f)[:n], np.asarray(g)[:n]), n)


def inv_mod_xn(K, f, n: int) -> np.ndarray:
    """Power-series inverse ``g`` with ``f*g = 1 mod x^n`` (Newton iteration)."""
    f = np.asarray(f)
    if n <= 0:
        return K.zeros(0)
    if len(f) == 0 or K.is_zero(f[0]):
        raise NotInvertible("constant coefficient is zero")
    g = constant(K, K.inv(f[0]))
    steps = []
    m = n
    while m > 1:
        steps.append(m)
        m = (m + 1) // 2
    one = constant(K, K.one())
    for m in reversed(steps):
        err = sub(K, one, mul_trunc(K, f, g, m))
        g = add(K, pad(g, m), mul_trunc(K, g, err, m))
    return pad(g, n)


def divmod(K, f, g):
    """Quotient and remainder, ``f = q*g + r`` with ``deg r < deg g``."""
    g = trim(g)
    if len(g) == 0:
        raise DivisionByZeroPoly("division by the zero polynomial")
    f = trim(f)
    n, m = len(f), len(g)
    if n < m:
        return K.zeros(0), f
    lc = g[-1]
    ginv = None if _is_one(K, lc) else K.inv(lc)
    g1 = g if ginv is None else scale(K, g, ginv)
    qlen = n - m + 1
    if qlen <= _SCHOOL_DIV:
        r = f.copy()
        q = K.zeros(qlen)
        for i in range(n - 1, m - 2, -1):
            c = r[i]
            if K.is_zero(c):
                continue
            q[i - m + 1] = c
            r[i - m + 1:i + 1] = (r[i - m + 1:i + 1] - K.mul(g1, c)) % K.p
        r = r[:m - 1]
    else:
        rinv = inv_mod_xn(K, g1[::-1], qlen)
        q = mul_trunc(K, f[::-1][:qlen], rinv, qlen)[::-1]
        r = sub(K, f[:m - 1], mul_trunc(K, q, g1, m - 1))
    if ginv is not None:
        q = scale(K, q, ginv)
    return trim(q), trim(r)


def rem(K, f, g) -> np.ndarray:
    return divmod(K, f, g)[1]


def _is_one(K, c) -> bool:
    return bool(np.all(np.asarray(c) == np.asarray(K.one())))


class Reducer:
    """Reduction modulo a fixed monic polynomial ``S``.

    Caches the power-series inverse of the reversed modulus, which serves
    both the fast remainder and its transpose :meth:`extend`.
    """

    def __init__(self, K, S):
        S = trim(S)
        if len(S) == 0 or not _is_one(K, S[-1]):
            raise ValueError("Reducer needs a monic modulus")
        self.K = K
        self.S = S
        self.k = len(S) - 1
        self._rev = S[::-1].copy()
        self._rinv = K.zeros(0)

    def rev_inverse(self, n: int) -> np.ndarray:
        if len(self._rinv) < n:
            self._rinv = inv_mod_xn(self.K, self._rev, n)
        return self._rinv[:n]

    def rem(self, f) -> np.ndarray:
        """Remainder of ``f``, padded to exactly ``deg S`` coefficients."""
        K, k = self.K, self.k
        f = np.asarray(f)
        n = len(f)
        if n <= k:
            return pad(f, k)
        qlen = n - k
        if qlen <= _SCHOOL_DIV:
            return pad(divmod(K, f, self.S)[1], k)
        q = mul_trunc(K, f[::-1][:qlen], self.rev_inverse(qlen), qlen)[::-1]
        return sub(K, f[:k], mul_trunc(K, q, self.S, k))

    def extend(self, u, t: int) -> np.ndarray:
        """First ``t`` terms of the sequence with initial terms ``u`` and
        characteristic polynomial ``S``."""
        K, k = self.K, self.k
        u = np.asarray(u)
        if len(u) != k:
            raise LengthMismatch(f"need {k} initial terms, got {len(u)}")
        if t <= k:
            return u[:t]
        num = mul_trunc(K, self._rev, u, k)
        return mul_trunc(K, num, self.rev_inverse(t), t)


def pow_mod(K, f, e: int, modulus) -> np.ndarray:
    """``f^e mod S`` by repeated squaring; ``modulus`` is a monic poly or a Reducer."""
    red = modulus if isinstance(modulus, Reducer) else Reducer(K, monic(K, modulus))
    result = red.rem(constant(K, K.one()))
    base = red.rem(f)
    e = int(e)
    if e < 0:
        raise ValueError("negative exponent")
    while e:
        if e & 1:
            result = red.rem(mul(K, result, base))
        e >>= 1
        if e:
            base = red.rem(mul(K, base, base))
    return result


# -- gcd and friends -----------------------------------------------------

def xgcd(K, a, b):
    """``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic (or zero)."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = constant(K, K.one()), K.zeros(0)
    t0, t1 = K.zeros(0), constant(K, K.one())
    while len(r1):
        q, r = divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, trim(sub(K, s0, mul(K, q, s1)))
        t0, t1 = t1, trim(sub(K, t0, mul(K, q, t1)))
    if len(r0) == 0:
        return r0, s0, t0
    c = K.inv(r0[-1])
    return scale(K, r0, c), trim(scale(K, s0, c)), trim(scale(K, t0, c))


def gcd(K, a, b) -> np.ndarray:
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, divmod(K, a, b)[1]
    return monic(K, a)


def exact_div(K, f, g) -> np.ndarray:
    q, r = divmod(K, f, g)
    if len(r):
        raise ValueError("division is not exact")
    return q


# -- derivatives and factorials ------------------------------------------

_FACTORIALS: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def factorials(p: int, n: int):
    """``(fact, invfact)`` modulo ``p`` with at least ``n`` entries; needs ``n <= p``."""
    if n > p:
        raise CharacteristicTooSmall(f"{n - 1}! is not invertible modulo {p}")
    cached = _FACTORIALS.get(p)
    if cached is not None and len(cached[0]) >= n:
        return cached
    n = max(n, 2 * len(cached[0]) if cached else 16)
    n = min(n, p)
    fact = [1] * n
    for i in range(1, n):
        fact[i] = fact[i - 1] * i % p
    ifact = [1] * n
    ifact[-1] = pow(fact[-1], -1, p)
    for i in range(n - 1, 0, -1):
        ifact[i - 1] = ifact[i] * i % p
    dtype = np.int64 if p < (1 << 31) else object
    cached = (np.array(fact, dtype=dtype), np.array(ifact, dtype=dtype))
    _FACTORIALS[p] = cached
    return cached


def falling(p: int, lam: int, start: int, stop: int) -> np.ndarray:
    """``[i (i-1) ... (i-lam+1) mod p for i in range(start, stop)]``, ``start >= lam``."""
    dtype = np.int64 if p < (1 << 31) else object
    if stop <= start:
        return np.zeros(0, dtype=dtype)
    if stop <= p:
        fact, ifact = factorials(p, stop)
        return (fact[start:stop] * ifact[start - lam:stop - lam]) % p
    i = np.arange(start, stop).astype(dtype)
    out = np.ones(stop - start, dtype=dtype)
    for s in range(min(lam, p)):
        out = (out * ((i - s) % p)) % p
    if lam >= p:
        out[:] = 0
    return out


def derivative(K, f) -> np.ndarray:
    f = np.asarray(f)
    if len(f) <= 1:
        return K.zeros(0)
    return smul(K, f[1:], np.arange(1, len(f)) % K.p)


def nth_derivative(K, f, lam: int) -> np.ndarray:
    """``lam``-th formal derivative; length ``len(f) - lam``."""
    f = np.asarray(f)
    n = len(f)
    if lam == 0:
        return f
    if n <= lam:
        return K.zeros(0)
    return smul(K, f[lam:], falling(K.p, lam, lam, n))


def tdiff(K, u, lam: int, t: int) -> np.ndarray:
    """Transpose of ``lam``-fold differentiation from length ``t`` to ``t - lam``.

    Output ``v`` has ``v_i = 0`` for ``i < lam`` and
    ``v_i = i (i-1) ... (i-lam+1) u_{i-lam}`` otherwise.
    """
    u = np.asarray(u)
    if len(u) != t - lam:
        raise LengthMismatch(f"tdiff expects {t - lam} entries, got {len(u)}")
    if lam == 0:
        return u
    out = K.zeros(t)
    out[lam:] = smul(K, u, falling(K.p, lam, lam, t))
    return out


def evaluate(K, f, x):
    """Horner evaluation of ``f`` (coefficients in ``K``) at ``x`` in ``K``."""
    acc = K.zero()
    for c in np.asarray(f)[::-1]:
        acc = (K.mul(acc, x) + c) % K.p
    return acc


# -- transposed and structured products ----------------------------------

def tmul(K, w, F, n: int) -> np.ndarray:
    """Transposed multiplication: ``out_i = sum_j F_j w_{i+j}`` for ``i < n``."""
    w = np.asarray(w)
    F = np.asarray(F)
    m = len(F)
    if m == 0:
        return K.zeros(n)
    if len(w) < n + m - 1:
        raise LengthMismatch(f"tmul needs {n + m - 1} entries of w, got {len(w)}")
    prod = mul(K, F[::-1], w[:n + m - 1])
    return pad(prod[m - 1:m - 1 + n], n)


def tmod_extend(K, u, S, t: int) -> np.ndarray:
    """Extend initial terms ``u`` to ``t`` terms of the sequence with
    characteristic polynomial ``S`` (monic, ``deg S = len(u)``)."""
    S = trim(S)
    if len(u) != len(S) - 1:
        raise LengthMismatch("len(u) must equal deg(S)")
    return Reducer(K, S).extend(u, t)


def taylor_shift(K, P, a) -> np.ndarray:
    """Coefficients of ``P(x + a)``; needs characteristic ``> deg P``."""
    P = np.asarray(P)
    n = len(P)
    if n == 0:
        return P
    fact, ifact = factorials(K.p, n)
    u = pad(smul(K, P, fact[:n]), 2 * n - 1)
    v = smul(K, K.powers(a, n), ifact[:n])
    return smul(K, tmul(K, u, v, n), ifact[:n])


def kronecker_mul(K, F, G) -> np.ndarray:
    """Product of bivariate polynomials stored as ``[x2-degree][x1-degree]``.

    The ``x1`` bounds are the column counts of the inputs; rows are packed
    at stride ``cols(F) + cols(G) - 1`` into one univariate product.
    """
    F = np.asarray(F)
    G = np.asarray(G)
    r1, c1 = F.shape[:2]
    r2, c2 = G.shape[:2]
    ks = K.shape
    if 0 in (r1, c1, r2, c2):
        return K.zeros((max(r1 + r2 - 1, 0), max(c1 + c2 - 1, 0)))
    s = c1 + c2 - 1
    A = K.zeros((r1, s))
    A[:, :c1] = F
    B = K.zeros((r2, s))
    B[:, :c2] = G
    C = mul(K, A.reshape((r1 * s,) + ks), B.reshape((r2 * s,) + ks))
    return pad(C, (r1 + r2 - 1) * s).reshape((r1 + r2 - 1, s) + ks)


# -- factorization-flavoured routines -------------------------------------

def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(K, T) -> bool:
    """Rabin's test over the finite field ``K``."""
    T = monic(K, T)
    d = len(T) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    red = Reducer(K, T)
    x = red.rem(monomial(K, 1))
    frob = [x]
    for _ in range(d):
        frob.append(pow_mod(K, frob[-1], K.order, red))
    if not equal(frob[d], x):
        return False
    for r in _prime_factors(d):
        if degree(gcd(K, T, sub(K, frob[d // r], x))) > 0:
            return False
    return True


def yun_squarefree(K, P) -> list[tuple[np.ndarray, int]]:
    """Squarefree decomposition ``monic(P) = prod S_i^i`` (Yun)."""
    P = monic(K, P)
    n = len(P) - 1
    if n <= 0:
        return []
    if K.p <= n:
        raise CharacteristicTooSmall(
            f"squarefree decomposition needs characteristic > {n}, got {K.p}")
    dP = derivative(K, P)
    a0 = gcd(K, P, dP)
    b = exact_div(K, P, a0)
    c = exact_div(K, dP, a0)
    dd = trim(sub(K, c, derivative(K, b)))
    parts = []
    i = 1
    while degree(b) > 0:
        a = gcd(K, b, dd)
        if degree(a) > 0:
            parts.append((a, i))
        b = exact_div(K, b, a)
        c = exact_div(K, dd, a)
        dd = trim(sub(K, c, derivative(K, b)))
        i += 1
    return parts


def crt_combine(K, pairs) -> np.ndarray:
    """The unique ``R`` with ``R = R_i mod M_i`` and ``deg R < sum deg M_i``."""
    pairs = list(pairs)
    if not pairs:
        return K.zeros(0)
    R, M = trim(pairs[0][0]), trim(pairs[0][1])
    R = rem(K, R, M)
    for Ri, Mi in pairs[1:]:
        Mi = trim(Mi)
        g, s, _ = xgcd(K, M, Mi)
        if degree(g) != 0:
            raise ModuliNotCoprime("CRT moduli share a factor")
        # R + M * ((Ri - R) * s mod Mi)
        corr = rem(K, mul(K, sub(K, Ri, R), s), Mi)
        R = trim(add(K, R, mul(K, M, corr)))
        M = mul(K, M, Mi)
    return R

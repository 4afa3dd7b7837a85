"""Prime fields, extension fields and two-level towers.

An element of ``F_p`` is an integer in ``[0, p)``.  An element of an
extension ``E = B[y]/<T(y)>`` of degree ``d`` over ``B`` is an array of shape
``(d,) + B.shape`` holding its coordinates on ``1, y, ..., y^(d-1)``.  Vectors
and polynomials over a field ``K`` are arrays of shape ``(n,) + K.shape``.

For a tower ``K' = F[y1]/<T1>``, ``K = K'[y2]/<T2(alpha1, y2)>`` an element of
``K`` has shape ``(d2, d1)``, so flattening it puts the coordinate of
``alpha1^i alpha2^j`` at index ``j*d1 + i``.

Arrays use ``int64`` storage when ``p < 2^31`` (products fit in a machine
word) and Python integers (``dtype=object``) otherwise.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .errors import DivisionByZero, LengthMismatch, NotIrreducible, NotSeparable

_WORD_PRIME_LIMIT = 1 << 31
_SCHOOLBOOK = 24


class PrimeField:
    """The field ``Z/pZ`` for an odd prime ``p``."""

    base = None
    shape: tuple[int, ...] = ()
    degree = 1
    dim = 1

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or not gmpy2.is_prime(p, 40):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.order = p
        self.dtype = np.int64 if p < _WORD_PRIME_LIMIT else object
        self._r64 = np.uint64((1 << 64) % p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @property
    def prime_field(self):
        return self

    # -- construction ---------------------------------------------------
    def array(self, values) -> np.ndarray:
        """Reduce arbitrary integers into canonical residues."""
        a = np.asarray(values)
        if self.dtype is not object and a.dtype.kind in "iu":
            return np.mod(a, self.p).astype(np.int64)
        if a.ndim == 0 and self.dtype is object:
            return int(a.item()) % self.p
        flat = [int(v) % self.p for v in a.ravel()]
        return np.array(flat, dtype=self.dtype).reshape(a.shape)

    def zeros(self, prefix=()) -> np.ndarray:
        if isinstance(prefix, int):
            prefix = (prefix,)
        return np.zeros(tuple(prefix), dtype=self.dtype)

    def zero(self):
        return self.array(0)

    def one(self):
        return self.array(1)

    def element(self, values):
        vals = np.asarray(values).ravel()
        if vals.size != 1:
            raise LengthMismatch(f"expected 1 coordinate, got {vals.size}")
        return self.array(vals[0])

    def flatten(self, a) -> np.ndarray:
        return np.asarray(a).reshape(np.shape(a) + (1,))

    def unflatten(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[-1] != 1:
            raise LengthMismatch(f"expected 1 coordinate, got {v.shape[-1]}")
        return self.array(v[..., 0])

    def embed(self, x):
        return x

    def embed_from(self, field, x):
        if field != self:
            raise TypeError(f"cannot embed {field} into {self}")
        return x

    # -- arithmetic -----------------------------------------------------
    def is_zero(self, a) -> bool:
        return int(a) == 0

    def mul(self, a, b):
        r = (np.asarray(a, dtype=self.dtype) * np.asarray(b, dtype=self.dtype)) % self.p
        if self.dtype is object and np.ndim(r) == 0:
            return int(r)
        return r

    def inv(self, a) -> int:
        a = int(a) % self.p
        if a == 0:
            raise DivisionByZero("inverse of zero in the prime field")
        return self.array(pow(a, -1, self.p))

    def pow(self, a, e: int):
        e = int(e)
        if e < 0:
            return self.inv(pow(int(a), -e, self.p))
        return self.array(pow(int(a), e, self.p))

    def powers(self, a, n: int) -> np.ndarray:
        """``[1, a, ..., a^(n-1)]``."""
        return _powers(self, a, n)

    def poly_mul(self, f, g) -> np.ndarray:
        n, m = len(f), len(g)
        if n == 0 or m == 0:
            return self.zeros(0)
        if min(n, m) <= _SCHOOLBOOK:
            if n < m:
                f, g, n, m = g, f, m, n
            out = self.zeros(n + m - 1)
            for j in range(m):
                if g[j]:
                    out[j:j + n] = (out[j:j + n] + f * g[j]) % self.p
            return out
        return self._kronecker(f, g)

    def _kronecker(self, f, g):
        # pack into one integer, one product, unpack
        n, m = len(f), len(g)
        bits = 2 * self.p.bit_length() + min(n, m).bit_length()
        k = (bits + 7) // 8
        z = self._pack(f, k) * self._pack(g, k)
        return self._unpack(z, k, n + m - 1)

    def _pack(self, f, k):
        if self.dtype is object:
            data = b"".join(int(c).to_bytes(k, "little") for c in f)
        else:
            n = len(f)
            raw = np.ascontiguousarray(f, dtype="<u8").view(np.uint8).reshape(n, 8)
            buf = np.zeros((n, k), dtype=np.uint8)
            w = min(8, k)
            buf[:, :w] = raw[:, :w]
            data = buf.tobytes()
        return gmpy2.mpz.from_bytes(data, "little")

    def _unpack(self, z, k, count):
        data = z.to_bytes(count * k, "little")
        p = self.p
        if self.dtype is object:
            fb = int.from_bytes
            return np.array(
                [fb(data[i:i + k], "little") % p for i in range(0, count * k, k)],
                dtype=object,
            )
        raw = np.frombuffer(data, dtype=np.uint8).reshape(count, k)
        lo = np.zeros((count, 8), dtype=np.uint8)
        w = min(8, k)
        lo[:, :w] = raw[:, :w]
        vals = lo.view("<u8").ravel() % np.uint64(p)
        if k > 8:
            hi = np.zeros((count, 8), dtype=np.uint8)
            hi[:, :k - 8] = raw[:, 8:]
            hv = hi.view("<u8").ravel() % np.uint64(p)
            vals = (vals + (hv * self._r64) % np.uint64(p)) % np.uint64(p)
        return vals.astype(np.int64)


def _powers(K, a, n):
    out = K.zeros(max(n, 0))
    if n <= 0:
        return out
    out[0] = K.one()
    filled = 1
    step = np.asarray(a)
    while filled < n:
        take = min(filled, n - filled)
        out[filled:filled + take] = K.mul(out[:take], step)
        filled += take
        if filled < n:
            step = K.mul(step, step)
    return out


class ExtensionField:
    """``E = base[y]/<T(y)>`` for a monic irreducible separable ``T``.

    With ``check=False`` the irreducibility and separability tests are
    skipped; the caller then vouches for them.
    """

    def __init__(self, base, modulus, name: str = "a", check: bool = True):
        from . import upoly

        T = upoly.trim(base.array(modulus))
        if len(T) < 2:
            raise ValueError("modulus must have degree at least 1")
        lc = T[-1]
        if not _is_one(base, lc):
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = T
        self.name = name
        self.degree = d = len(T) - 1
        self.shape = (d,) + base.shape
        self.dim = d * base.dim
        self.p = base.p
        self.order = base.order ** d
        self.dtype = base.dtype
        self._tail = (slice(None),) * len(base.shape)
        if check:
            if upoly.degree(upoly.gcd(base, T, upoly.derivative(base, T))) > 0:
                raise NotSeparable(f"modulus of {self!r} has a repeated factor")
            if not upoly.is_irreducible(base, T):
                raise NotIrreducible(f"modulus of {self!r} is reducible")
        # rows k = d .. 2d-2: coordinates of y^k mod T
        red = base.zeros((max(d - 1, 0), d))
        if d > 1:
            cur = upoly.neg(base, T[:d])
            for k in range(d - 1):
                red[k] = cur
                top = np.array(cur[d - 1], dtype=base.dtype)
                cur = np.concatenate([base.zeros(1), cur[:d - 1]])
                cur = upoly.sub(base, cur, base.mul(T[:d], top))
        self._red = red

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/<deg {self.degree}>"

    @property
    def prime_field(self):
        return self.base.prime_field

    def _at(self, idx):
        return (Ellipsis, idx) + self._tail

    # -- construction ---------------------------------------------------
    def array(self, values) -> np.ndarray:
        """Canonicalize an array whose trailing axes are ``self.shape``."""
        return self.prime_field.array(values)

    def zeros(self, prefix=()) -> np.ndarray:
        if isinstance(prefix, int):
            prefix = (prefix,)
        return self.prime_field.zeros(tuple(prefix) + self.shape)

    def zero(self):
        return self.zeros()

    def one(self):
        e = self.zeros()
        e[0] = self.base.one()
        return e

    def gen(self):
        """Residue class of ``y``."""
        if self.degree >= 2:
            e = self.zeros()
            e[1] = self.base.one()
            return e
        e = self.zeros()
        e[0] = (-np.asarray(self.modulus[0], dtype=self.dtype)) % self.p
        return e

    def element(self, flat):
        """Element from its flattened coordinates over the prime field."""
        return self.unflatten(flat)

    def flatten(self, a) -> np.ndarray:
        a = np.asarray(a)
        lead = a.shape[:a.ndim - len(self.shape)]
        return a.reshape(lead + (self.dim,))

    def unflatten(self, v) -> np.ndarray:
        v = self.prime_field.array(v)
        if v.ndim == 0 or v.shape[-1] != self.dim:
            got = v.shape[-1] if v.ndim else 0
            raise LengthMismatch(f"expected {self.dim} coordinates, got {got}")
        return v.reshape(v.shape[:-1] + self.shape)

    def embed(self, x):
        """Image of base-field values ``x`` (shape ``(...,) + base.shape``)."""
        x = np.asarray(x)
        lead = x.shape[:x.ndim - len(self.base.shape)]
        out = self.zeros(lead)
        out[self._at(0)] = x
        return out

    def embed_from(self, field, x):
        if field == self:
            return x
        return self.embed(self.base.embed_from(field, x))

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    # -- arithmetic -----------------------------------------------------
    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) != 0)

    def reduce(self, c):
        """Reduce coordinate arrays of length ``<= 2d-1`` modulo ``T``."""
        c = np.asarray(c)
        d = self.degree
        ax = len(self.base.shape) + 1
        m = c.shape[-ax]
        if m <= d:
            pad = [(0, 0)] * c.ndim
            pad[-ax] = (0, d - m)
            return np.pad(c, pad) if m < d else c
        if m > 2 * d - 1:
            raise LengthMismatch("reduce expects at most 2d-1 coordinates")
        out = c[self._at(slice(0, d))].copy()
        base = self.base
        for k in range(d, m):
            ck = np.expand_dims(c[self._at(k)], -ax)
            out = (out + base.mul(ck, self._red[k - d])) % self.p
        return out

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        d = self.degree
        k = len(self.shape)
        lead = np.broadcast_shapes(a.shape[:a.ndim - k], b.shape[:b.ndim - k])
        prod = self.base.zeros(lead + (2 * d - 1,))
        base, at = self.base, self._at
        for i in range(d):
            ai = a[at(i)]
            for j in range(d):
                prod[at(i + j)] = (prod[at(i + j)] + base.mul(ai, b[at(j)])) % self.p
        return self.reduce(prod)

    def inv(self, a):
        from . import upoly

        a = np.asarray(a)
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero in an extension field")
        g, s, _ = upoly.xgcd(self.base, upoly.trim(a), self.modulus)
        if upoly.degree(g) != 0:
            raise DivisionByZero("element is not invertible")
        return upoly.pad(s, self.degree)

    def pow(self, a, e: int):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one()
        sq = np.asarray(a)
        while e:
            if e & 1:
                result = self.mul(result, sq)
            e >>= 1
            if e:
                sq = self.mul(sq, sq)
        return result

    def powers(self, a, n: int) -> np.ndarray:
        return _powers(self, a, n)

    def poly_mul(self, f, g) -> np.ndarray:
        f = np.asarray(f)
        g = np.asarray(g)
        n, m = len(f), len(g)
        if n == 0 or m == 0:
            return self.zeros(0)
        d = self.degree
        s = 2 * d - 1
        bs = self.base.shape
        A = self.base.zeros((n, s))
        A[:, :d] = f
        B = self.base.zeros((m, s))
        B[:, :d] = g
        C = self.base.poly_mul(A.reshape((n * s,) + bs), B.reshape((m * s,) + bs))
        count = n + m - 1
        C = C[:count * s].reshape((count, s) + bs)
        return self.reduce(C)


def _is_one(base, c) -> bool:
    return bool(np.all(np.asarray(c) == np.asarray(base.one())))


def make_tower(base: PrimeField, T1, T2_rows, check: bool = True):
    """Build ``K' = F[y1]/<T1>`` and ``K = K'[y2]/<T2(alpha1, y2)>``.

    ``T2_rows[j]`` holds the ``x1``-coefficients of ``x2^j`` in ``T2``; rows
    are reduced modulo ``T1``.  Returns ``(K', K)``.
    """
    from . import upoly

    Kp = ExtensionField(base, T1, name="a1", check=check)
    T2 = Kp.zeros(len(T2_rows))
    red = upoly.Reducer(base, Kp.modulus)
    for j, row in enumerate(T2_rows):
        T2[j] = red.rem(base.array(row))
    K = ExtensionField(Kp, T2, name="a2", check=check)
    return Kp, K

"""Zero-dimensional monomial ideals in two variables and arithmetic modulo them.

A staircase is given by its minimal generators ``x1^mu_i x2^nu_i`` with
``mu`` strictly decreasing, ``nu`` strictly increasing, ``nu_1 = 0`` and
``mu_t = 0``.  Its standard monomials are stored row by row: row ``b``
(the power of ``x2``) holds ``x1^0 .. x1^(w_b - 1)``, and a reduced
polynomial is the flat array of these coefficients, shape ``(delta,) + K.shape``.

Multiplication covers the staircase by ``O(log delta)`` rectangles after
sparsifying it; inversion is Newton iteration on halvings of ``mu_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import upoly
from .errors import InvalidStaircase, LengthMismatch, NotInvertible


def _minimal(pairs):
    # drop dominated generators from a list sorted by increasing nu
    out = []
    for mu, nu in pairs:
        if not out or mu < out[-1][0]:
            out.append((mu, nu))
    return out


@dataclass(frozen=True)
class Staircase:
    gens: tuple[tuple[int, int], ...]

    def __post_init__(self):
        gens = tuple((int(m), int(n)) for m, n in self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise InvalidStaircase("a staircase needs at least one generator")
        if gens[0][1] != 0 or gens[-1][0] != 0:
            raise InvalidStaircase("need nu_1 = 0 and mu_t = 0")
        for (m0, n0), (m1, n1) in zip(gens, gens[1:]):
            if not (m1 < m0 and n1 > n0):
                raise InvalidStaircase(f"generators out of order near {m1}:{n1}")
        if any(m < 0 or n < 0 for m, n in gens):
            raise InvalidStaircase("exponents must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "Staircase":
        """Read ``"mu:nu,mu:nu,..."``."""
        try:
            pairs = [tuple(int(v) for v in item.split(":")) for item in text.replace(" ", "").split(",")]
        except ValueError:
            raise InvalidStaircase(f"cannot parse staircase {text!r}") from None
        if any(len(p) != 2 for p in pairs):
            raise InvalidStaircase(f"cannot parse staircase {text!r}")
        return cls(tuple(pairs))

    def __str__(self):
        return ",".join(f"{m}:{n}" for m, n in self.gens)

    @property
    def t(self) -> int:
        return len(self.gens)

    @property
    def mu1(self) -> int:
        return self.gens[0][0]

    @property
    def nu_t(self) -> int:
        return self.gens[-1][1]

    @cached_property
    def widths(self) -> np.ndarray:
        """``w_b`` = number of standard monomials ``x1^a x2^b`` in row ``b``."""
        mus = [m for m, _ in self.gens[:-1]]
        reps = [n1 - n0 for (_, n0), (_, n1) in zip(self.gens, self.gens[1:])]
        return np.repeat(np.array(mus, dtype=np.int64), reps)

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.widths)]).astype(np.int64)

    @property
    def degree(self) -> int:
        return int(self.offsets[-1])

    @cached_property
    def monomials(self) -> np.ndarray:
        """``(delta, 2)`` array of exponents ``(a, b)`` in storage order."""
        w = self.widths
        b = np.repeat(np.arange(len(w)), w)
        a = np.arange(self.degree) - self.offsets[b]
        return np.stack([a, b], axis=1)

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean ``(nu_t, mu_1)`` grid of standard monomials."""
        return np.arange(self.mu1)[None, :] < self.widths[:, None]

    def index(self, a: int, b: int) -> int:
        if self.contains(a, b):
            raise KeyError(f"x1^{a} x2^{b} is not a standard monomial")
        return int(self.offsets[b]) + a

    def contains(self, a: int, b: int) -> bool:
        """Whether ``x1^a x2^b`` lies in the ideal."""
        return any(a >= m and b >= n for m, n in self.gens)

    def truncate(self, m: int) -> "Staircase":
        """The ideal plus ``<x1^m>``."""
        if m < 1:
            raise ValueError("truncation order must be positive")
        return Staircase(tuple(_minimal((min(mu, m), nu) for mu, nu in self.gens)))

    def colon(self, m: int) -> "Staircase":
        """The colon ideal by ``x1^m``."""
        if m < 0:
            raise ValueError("colon exponent must be non-negative")
        return Staircase(tuple(_minimal((max(mu - m, 0), nu) for mu, nu in self.gens)))

    def sparsify(self) -> "Staircase":
        """Sub-staircase kept by the halving rule; its degree is at most twice ours."""
        g = self.gens
        keep = [0]
        while keep[-1] != len(g) - 1:
            i = keep[-1]
            nxt = next((j for j in range(i + 1, len(g)) if 2 * g[j][0] < g[i][0]), len(g) - 1)
            keep.append(nxt)
        return Staircase(tuple(g[i] for i in keep))

    def scaled(self, d1: int, d2: int) -> "Staircase":
        return Staircase(tuple((d1 * m, d2 * n) for m, n in self.gens))


# -- reduced polynomials ---------------------------------------------------

def to_dense(K, F, S: Staircase) -> np.ndarray:
    """``(nu_t, mu_1)`` coefficient grid of a reduced polynomial."""
    F = np.asarray(F)
    if len(F) != S.degree:
        raise LengthMismatch(f"expected {S.degree} coefficients, got {len(F)}")
    grid = K.zeros((S.nu_t, S.mu1))
    grid[S.mask] = F
    return grid


def from_dense(K, grid, S: Staircase) -> np.ndarray:
    """Keep the standard monomials of ``S`` from a ``[x2][x1]`` grid (others dropped)."""
    grid = np.asarray(grid)
    rows = min(grid.shape[0], S.nu_t)
    cols = min(grid.shape[1], S.mu1)
    full = K.zeros((S.nu_t, S.mu1))
    full[:rows, :cols] = grid[:rows, :cols]
    return full[S.mask]


def convert(K, F, S_from: Staircase, S_to: Staircase) -> np.ndarray:
    """Re-read ``F`` on the standard monomials of ``S_to`` (missing ones are 0)."""
    return from_dense(K, to_dense(K, F, S_from), S_to)


def from_terms(K, terms, S: Staircase) -> np.ndarray:
    """Reduced polynomial from ``{(a, b): coefficient}`` (ideal monomials dropped)."""
    F = K.zeros(S.degree)
    for (a, b), c in terms.items():
        if not S.contains(a, b):
            F[S.index(a, b)] = (F[S.index(a, b)] + K.array(c)) % K.p
    return F


def one(K, S: Staircase) -> np.ndarray:
    F = K.zeros(S.degree)
    if S.degree:
        F[0] = K.one()
    return F


def mono_mul(K, F, G, S: Staircase, sparse: bool = True) -> np.ndarray:
    """``F G mod S`` for reduced ``F``, ``G``.

    Each consecutive pair of generators of the sparsified staircase defines
    a rectangle ``a < mu_i, b < nu_(i+1)``; the product is computed modulo
    each rectangle and every row is read from the rectangle owning it.
    With ``sparse=False`` all generators are used.
    """
    if S.degree == 0:
        return K.zeros(0)
    Fd = to_dense(K, F, S)
    Gd = to_dense(K, G, S)
    Sp = S.sparsify() if sparse else S
    out = K.zeros((S.nu_t, S.mu1))
    for (A, B0), (_, B1) in zip(Sp.gens, Sp.gens[1:]):
        P = upoly.kronecker_mul(K, Fd[:B1, :A], Gd[:B1, :A])
        out[B0:B1, :A] = P[B0:B1, :A]
    return out[S.mask]


def mono_inv(K, F, S: Staircase) -> np.ndarray:
    """Inverse of ``F`` modulo ``S`` by Newton iteration on ``mu_1``."""
    F = np.asarray(F)
    if len(F) != S.degree:
        raise LengthMismatch(f"expected {S.degree} coefficients, got {len(F)}")
    if S.degree == 0:
        return K.zeros(0)
    if K.is_zero(F[0]):
        raise NotInvertible("constant term is zero")
    if S.mu1 == 1:
        return upoly.inv_mod_xn(K, F, S.nu_t)
    m = (S.mu1 + 1) // 2
    Sb = S.truncate(m)
    Gb = mono_inv(K, convert(K, F, S, Sb), Sb)
    G = convert(K, Gb, Sb, S)
    GF = mono_mul(K, G, F, S)
    return upoly.sub(K, upoly.add(K, G, G), mono_mul(K, G, GF, S))

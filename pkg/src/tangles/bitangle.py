"""Untangling and tangling for primary ideals in two variables.

The data is a maximal ideal ``m = <T1(x1), T2(x1, x2)>`` (reduced lex
basis, ``T2`` monic of degree ``d2`` in ``x2``) and a monomial ideal ``J'``
given as a :class:`~tangles.staircase.Staircase`.  They define the
``m``-primary ideal ``I`` with ``F[x1,x2]/I ~ K[xi1,xi2]/J'`` through
``(x1, x2) -> (xi1 + alpha1, xi2 + alpha2)``, where
``K' = F[y1]/<T1>`` and ``K = K'[y2]/<T2(alpha1, y2)>``.

Standard monomials of ``I`` are those of ``J'`` with exponents scaled by
``(d1, d2)``, so an element of ``F[x1,x2]/I`` is a flat array over the
prime field on ``J'.scaled(d1, d2)`` and an element of ``K[xi1,xi2]/J'``
is a flat array over ``K`` on ``J'``.  Nothing here computes a Groebner
basis of ``I``.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from . import staircase as st
from . import upoly
from .errors import CharacteristicTooSmall, LengthMismatch
from .field import PrimeField, make_tower
from .staircase import Staircase
from .unitangle import PowerModulus, tangle, untangle

# biv_untangle uses the Taylor-shift variant iff d <= DISPATCH_FACTOR * mu * log2(mu + 1)
DISPATCH_FACTOR = 1.0


class MaximalIdeal:
    """``<T1(x1), T2(x1, x2)>`` over a prime field, with its field tower.

    ``T2_rows[j]`` lists the ``x1``-coefficients of ``x2^j``.
    """

    def __init__(self, base: PrimeField, T1, T2_rows, check: bool = True):
        self.base = base
        self.Kp, self.K = make_tower(base, T1, T2_rows, check=check)
        self.T1 = self.Kp.modulus
        self.T2 = self.K.modulus  # over K'
        self.d1 = self.Kp.degree
        self.d2 = self.K.degree
        self.d = self.d1 * self.d2
        self._pm1 = {}
        self._pm2 = {}

    @cached_property
    def alpha1(self):
        """``alpha1`` as an element of ``K'``."""
        return self.Kp.gen()

    @cached_property
    def alpha2(self):
        return self.K.gen()

    def pm1(self, mu: int) -> PowerModulus:
        """``T1^mu`` over ``F`` with extension ``K'``."""
        pm = self._pm1.get(mu)
        if pm is None:
            pm = self._pm1[mu] = PowerModulus(self.T1, mu, base=self.base, K=self.Kp)
        return pm

    def pm2(self, nu: int) -> PowerModulus:
        """``T2(alpha1, x2)^nu`` over ``K'`` with extension ``K``."""
        pm = self._pm2.get(nu)
        if pm is None:
            pm = self._pm2[nu] = PowerModulus(self.T2, nu, base=self.Kp, K=self.K)
        return pm

    def evaluate(self, grid):
        """``F(alpha1, alpha2)`` in ``K`` for a ``[x2][x1]`` grid over ``F``."""
        K, Kp = self.K, self.Kp
        grid = np.asarray(grid)
        acc = K.zero()
        a1 = self.alpha1
        for row in grid[::-1]:
            c = Kp.zero()
            for v in row[::-1]:
                c = (Kp.mul(c, a1) + Kp.embed(v)) % K.p
            acc = (K.mul(acc, self.alpha2) + K.embed(c)) % K.p
        return acc


class BivariateConfig:
    """``m`` together with the monomial ideal ``J'``; checks H2."""

    def __init__(self, m: MaximalIdeal, Jp: Staircase, check_h2: bool = True):
        self.m = m
        self.Jp = Jp
        self.mu = Jp.degree
        self.n = m.d * self.mu
        if check_h2 and m.base.p < self.n:
            raise CharacteristicTooSmall(
                f"H2 fails: characteristic {m.base.p} < n = {self.n}")
        self.SB = Jp.scaled(m.d1, m.d2)
        self._subs = {}

    @property
    def K(self):
        return self.m.K

    @property
    def base(self):
        return self.m.base

    def sub(self, S: Staircase) -> "BivariateConfig":
        """Same maximal ideal, smaller monomial ideal (no H2 recheck needed)."""
        if S == self.Jp:
            return self
        root = getattr(self, "_root", self)
        cfg = root._subs.get(S)
        if cfg is None:
            cfg = BivariateConfig(self.m, S, check_h2=False)
            cfg._root = root
            root._subs[S] = cfg
        return cfg

    @property
    def basisB(self) -> np.ndarray:
        return self.SB.monomials

    @property
    def basisBp(self) -> np.ndarray:
        return self.Jp.monomials

    def use_shift(self) -> bool:
        return self.m.d <= DISPATCH_FACTOR * self.mu * math.log2(self.mu + 1)


def basis_of_I(cfg: BivariateConfig) -> list[tuple[int, int]]:
    return [tuple(map(int, r)) for r in cfg.SB.monomials]


def _check_len(F, n, what):
    F = np.asarray(F)
    if len(F) != n:
        raise LengthMismatch(f"{what} must have {n} coefficients, got {len(F)}")
    return F


def _shift_rows(K, grid, a, keep: int):
    """Row-wise ``P(x + a)`` for a ``[row][x]`` grid, first ``keep`` coefficients."""
    rows, n = grid.shape[:2]
    if rows == 0 or n == 0:
        return K.zeros((rows, keep))
    fact, ifact = upoly.factorials(K.p, n)
    U = _scale_cols(K, grid, fact[:n])
    v = _scale_rows1(K, K.powers(a, n), ifact[:n])
    P = upoly.kronecker_mul(K, U, v[::-1][None])
    out = _scale_cols(K, P[:rows, n - 1:2 * n - 1], ifact[:n])
    res = K.zeros((rows, keep))
    w = min(keep, n)
    res[:, :w] = out[:, :w]
    return res


def _scale_cols(K, grid, s):
    s = np.asarray(s).reshape((1, -1) + (1,) * len(K.shape))
    return (grid * s) % K.p


def _scale_rows1(K, vec, s):
    s = np.asarray(s).reshape((-1,) + (1,) * len(K.shape))
    return (vec * s) % K.p


def _lift_prime(m: MaximalIdeal, grid):
    # F-valued grid to K'-valued grid
    return m.Kp.embed(np.asarray(grid))


def biv_untangle_shift(F, cfg: BivariateConfig) -> np.ndarray:
    """``F(xi1 + alpha1, xi2 + alpha2) mod J'`` by two batched Taylor shifts."""
    m, Jp, SB = cfg.m, cfg.Jp, cfg.SB
    F = _check_len(F, SB.degree, "quotient element")
    if Jp.degree == 0:
        return m.K.zeros(0)
    grid = _lift_prime(m, st.to_dense(m.base, F, SB))          # [x2][x1] over K'
    A = _shift_rows(m.Kp, grid, m.alpha1, Jp.mu1)              # [x2][xi1] over K'
    At = m.K.embed(np.swapaxes(A, 0, 1))                       # [xi1][x2] over K
    B = _shift_rows(m.K, At, m.alpha2, Jp.nu_t)                # [xi1][xi2] over K
    return st.from_dense(m.K, np.swapaxes(B, 0, 1), Jp)


def biv_untangle_layered(F, cfg: BivariateConfig) -> np.ndarray:
    """Same map via univariate untangling in ``x1`` over ``F``, then in ``x2`` over ``K'``."""
    m, Jp, SB = cfg.m, cfg.Jp, cfg.SB
    F = _check_len(F, SB.degree, "quotient element")
    if Jp.degree == 0:
        return m.K.zeros(0)
    grid = st.to_dense(m.base, F, SB)                          # [x2][x1], x1 < d1*mu1
    pm1 = m.pm1(Jp.mu1)
    rows = m.Kp.zeros((grid.shape[0], Jp.mu1))                 # [x2][xi1] over K'
    for b in range(grid.shape[0]):
        rows[b] = untangle(grid[b], pm1)
    pm2 = m.pm2(Jp.nu_t)
    out = m.K.zeros((Jp.nu_t, Jp.mu1))                         # [xi2][xi1] over K
    for i in range(Jp.mu1):
        out[:, i] = untangle(rows[:, i], pm2)
    return st.from_dense(m.K, out, Jp)


def biv_untangle(F, cfg: BivariateConfig) -> np.ndarray:
    if cfg.use_shift():
        return biv_untangle_shift(F, cfg)
    return biv_untangle_layered(F, cfg)


def _t1_jet_inverse(m: MaximalIdeal, mu1: int, prec: int):
    """``W = xi1 / T1(xi1 + alpha1)`` modulo ``xi1^prec`` over ``K'``."""
    T1 = m.Kp.embed(upoly.pad(m.T1, max(len(m.T1), prec + 1)))
    shifted = upoly.taylor_shift(m.Kp, T1, m.alpha1)
    return upoly.inv_mod_xn(m.Kp, shifted[1:prec + 1], prec)


def biv_tangle(G, cfg: BivariateConfig) -> np.ndarray:
    """The unique ``F`` on the basis of ``I`` with ``biv_untangle(F) = G``."""
    m, Jp = cfg.m, cfg.Jp
    K, E = m.K, m.base
    G = _check_len(G, Jp.degree, "jet")
    if Jp.degree == 0:
        return E.zeros(0)
    if Jp.mu1 == 1:
        nu = Jp.nu_t
        res = tangle(G, m.pm2(nu))                     # (d2*nu, d1): coefficients in K'
        return st.from_dense(E, res, cfg.SB)
    mbar = (Jp.mu1 + 1) // 2
    S0 = Jp.truncate(mbar)
    S1 = Jp.colon(mbar)
    Fbar = biv_tangle(st.convert(K, G, Jp, S0), cfg.sub(S0))
    Fbar = st.convert(E, Fbar, S0.scaled(m.d1, m.d2), cfg.SB)
    diff = upoly.sub(K, G, biv_untangle(Fbar, cfg))
    H = st.to_dense(K, diff, Jp)[:, mbar:]             # div xi1^mbar
    prec = S1.mu1
    W = _t1_jet_inverse(m, Jp.mu1, prec)
    Wp = upoly.constant(m.Kp, m.Kp.one())
    for _ in range(mbar):
        Wp = upoly.mul_trunc(m.Kp, Wp, W, prec)
    WH = upoly.kronecker_mul(K, H, K.embed(Wp)[None])
    Ebar = biv_tangle(st.from_dense(K, WH, S1), cfg.sub(S1))
    Egrid = st.to_dense(E, Ebar, S1.scaled(m.d1, m.d2))
    T1pow = E.array([1])
    for _ in range(mbar):
        T1pow = upoly.mul(E, T1pow, m.T1)
    corr = upoly.kronecker_mul(E, Egrid, T1pow[None])
    return upoly.add(E, Fbar, st.from_dense(E, corr, cfg.SB))


def quot_mul(F, G, cfg: BivariateConfig) -> np.ndarray:
    """``F G mod I``."""
    a = biv_untangle(F, cfg)
    b = biv_untangle(G, cfg)
    return biv_tangle(st.mono_mul(cfg.K, a, b, cfg.Jp), cfg)


def quot_inv(F, cfg: BivariateConfig) -> np.ndarray:
    """``1/F mod I``; raises NotInvertible when ``F(alpha1, alpha2) = 0``."""
    a = biv_untangle(F, cfg)
    return biv_tangle(st.mono_inv(cfg.K, a, cfg.Jp), cfg)

"""Untangling ``E[x]/<T^mu> -> K[xi]/<xi^mu>`` (``x -> xi + alpha``) and back.

``E`` is the coefficient field (the prime field, or an extension of it when
this is used inside bivariate algorithms) and ``K = E[y]/<T>``.

* A residue modulo ``T^mu`` is a polynomial over ``E`` of length ``d*mu``.
* A jet, an element of ``K[xi]/<xi^mu>``, is an array of shape
  ``(mu,) + K.shape``; row ``j`` is the coefficient of ``xi^j``.
* A linear form on ``E[x]/<T^mu>`` is its value vector on ``1, x, x^2, ...``
  (length ``d*mu``); a linear form on ``K[xi]/<xi^mu>`` is the grid
  ``grid[j][i] = l(alpha^i xi^j)``, again of shape ``(mu,) + K.shape``.

Untangling computes ``F(alpha), F'(alpha), ...`` by halving ``mu``; its
transpose runs the same recursion backwards with transposed remainders and
transposed differentiation.  Tangling solves ``F . L = L'`` for the images of
a dual generator and of ``G`` times it, which reduces to one inversion modulo
``T^mu`` because the dual vectors turn into polynomials through a triangular
Hankel map.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import upoly
from .errors import CharacteristicTooSmall, LengthMismatch, NotAGenerator, NotInvertible
from .field import ExtensionField, PrimeField

# subproblems with d*mu at most this size use a cached dense matrix
LEAF_SIZE = 48


@dataclass(eq=False)
class PowerModulus:
    """``T^mu`` for a monic irreducible separable ``T`` over ``base``.

    Precondition H1 (characteristic at least ``mu``) is checked here.
    ``K`` may be passed to reuse an existing ``base[y]/<T>``.
    """

    T: np.ndarray
    mu: int
    base: object = None
    K: ExtensionField = None
    leaf_size: int = LEAF_SIZE
    _powers: dict = dc_field(default_factory=dict, repr=False)
    _reducers: dict = dc_field(default_factory=dict, repr=False)
    _leaf: dict = dc_field(default_factory=dict, repr=False)
    _gen_image: np.ndarray = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.base is None:
            self.base = self.K.base if self.K is not None else None
        if self.base is None:
            raise ValueError("PowerModulus needs a base field or an extension K")
        self.T = upoly.trim(self.base.array(self.T))
        if self.K is None:
            self.K = ExtensionField(self.base, self.T, name="alpha")
        elif not upoly.equal(self.K.modulus, self.T):
            raise ValueError("K is not base[y]/<T>")
        self.mu = int(self.mu)
        if self.mu < 1:
            raise ValueError("multiplicity must be positive")
        if self.base.p < self.mu:
            raise CharacteristicTooSmall(
                f"H1 fails: characteristic {self.base.p} < mu = {self.mu}")
        self.d = len(self.T) - 1
        self.n = self.d * self.mu
        self._powers[1] = self.T
        self._fact, self._ifact = upoly.factorials(self.base.p, self.mu)

    @property
    def E(self):
        return self.base

    def power(self, k: int) -> np.ndarray:
        """``T^k``."""
        P = self._powers.get(k)
        if P is None:
            h = k // 2
            P = upoly.mul(self.base, self.power(h), self.power(k - h))
            self._powers[k] = P
        return P

    def reducer(self, k: int) -> upoly.Reducer:
        R = self._reducers.get(k)
        if R is None:
            R = self._reducers[k] = upoly.Reducer(self.base, self.power(k))
        return R

    def residue(self, F) -> np.ndarray:
        """Canonical length-``d*mu`` representative of ``F mod T^mu``."""
        F = np.asarray(F)
        if len(F) > self.n:
            return self.reducer(self.mu).rem(F)
        return upoly.pad(F, self.n)

    def leaf_matrix(self, mu: int) -> np.ndarray | None:
        """Dense matrix of ``F -> [F(alpha), ..., F^(mu-1)(alpha)]`` for small sizes.

        Rows are indexed ``j*d + i`` (coordinate ``i`` of the ``j``-th
        derivative value), columns by the power of ``x``.  Only available
        over the prime field.
        """
        if not isinstance(self.base, PrimeField) or self.d * mu > self.leaf_size or mu < 2:
            return None
        M = self._leaf.get(mu)
        if M is None:
            size = self.d * mu
            M = self.base.zeros((size, size))
            for k in range(size):
                col = _untangle_rec(upoly.monomial(self.base, k, size), self, mu, leaf=False)
                M[:, k] = col.reshape(-1)
            self._leaf[mu] = M
        return M


def _matvec(M, v, p):
    # exact M @ v mod p without int64 overflow: split v into 16-bit halves
    if M.dtype == object:
        return M.dot(v) % p
    lo = v & 0xFFFF
    hi = v >> 16
    return ((M @ lo) % p + ((M @ hi) % p) * 65536) % p


def _untangle_rec(F, pm: PowerModulus, mu: int, leaf: bool = True) -> np.ndarray:
    """``[F(alpha), F'(alpha), ..., F^(mu-1)(alpha)]`` for ``F`` of length ``d*mu``."""
    if mu == 1:
        return pm.reducer(1).rem(F)[None]
    if leaf:
        M = pm.leaf_matrix(mu)
        if M is not None:
            v = _matvec(M, upoly.pad(F, pm.d * mu), pm.base.p)
            return v.reshape((mu,) + pm.K.shape)
    lam = mu // 2
    head = _untangle_rec(pm.reducer(lam).rem(F), pm, lam, leaf)
    Fd = upoly.nth_derivative(pm.base, F, lam)
    tail = _untangle_rec(pm.reducer(mu - lam).rem(Fd), pm, mu - lam, leaf)
    return np.concatenate([head, tail])


def _check_shape(a, pm: PowerModulus, what: str):
    a = np.asarray(a)
    if a.shape != (pm.mu,) + pm.K.shape:
        raise LengthMismatch(f"{what} must have shape {(pm.mu,) + pm.K.shape}, got {a.shape}")
    return a


def untangle(F, pm: PowerModulus) -> np.ndarray:
    """Jet ``sum_i F^(i)(alpha)/i! xi^i`` of the residue ``F`` modulo ``T^mu``."""
    v = _untangle_rec(pm.residue(F), pm, pm.mu)
    return upoly.smul(pm.K, v, pm._ifact[:pm.mu])


def _untangle_rec_t(grid, pm: PowerModulus, mu: int) -> np.ndarray:
    # transpose of _untangle_rec: grid of shape (mu, d, ...) -> length d*mu
    if mu == 1:
        return grid[0]
    M = pm.leaf_matrix(mu)
    if M is not None:
        return _matvec(M.T, grid.reshape(-1), pm.base.p)
    d = pm.d
    lam = mu // 2
    v0 = _untangle_rec_t(grid[:lam], pm, lam)
    u0 = pm.reducer(lam).extend(v0, d * mu)
    v1 = _untangle_rec_t(grid[lam:], pm, mu - lam)
    u1 = pm.reducer(mu - lam).extend(v1, d * mu - lam)
    u1 = upoly.tdiff(pm.base, u1, lam, d * mu)
    return upoly.add(pm.base, u0, u1)


def untangle_transposed(grid, pm: PowerModulus) -> np.ndarray:
    """The form ``l o untangle`` on ``E[x]/<T^mu>`` as its values on ``x^k``."""
    grid = _check_shape(grid, pm, "dual grid")
    scaled = upoly.smul(pm.K, grid, pm._ifact[:pm.mu])
    return _untangle_rec_t(scaled, pm, pm.mu)


def dual_generator(pm: PowerModulus) -> np.ndarray:
    """The form taking value 1 on ``alpha^(d-1) xi^(mu-1)`` and 0 elsewhere."""
    grid = pm.K.zeros(pm.mu)
    grid[pm.mu - 1, pm.d - 1] = pm.base.one()
    return grid


def dual_tproduct(G, grid, pm: PowerModulus) -> np.ndarray:
    """Transposed product ``G . l``: ``(G . l)(h) = l(G h)`` on ``K[xi]/<xi^mu>``."""
    G = _check_shape(G, pm, "jet")
    grid = _check_shape(grid, pm, "dual grid")
    E, K = pm.base, pm.K
    d, mu = pm.d, pm.mu
    # values on alpha^k xi^j for k < 2d-1, through the recurrence of T
    ext = E.zeros((2 * mu - 1, 2 * d - 1))
    ext[:mu, :d] = grid
    for s in range(d - 1):
        acc = E.zeros(mu)
        for i in range(d):
            acc = (acc + E.mul(grid[:, i], K._red[s, i])) % E.p
        ext[:mu, d + s] = acc
    prod = upoly.kronecker_mul(E, G[::-1, ::-1], ext)
    return prod[mu - 1:2 * mu - 1, d - 1:2 * d - 1].copy()


def inv_mod_power(F, pm: PowerModulus) -> np.ndarray:
    """Inverse modulo ``T^mu``: invert modulo ``T``, then Newton-lift."""
    E = pm.base
    F = pm.residue(F)
    f0 = pm.reducer(1).rem(F)
    if pm.K.is_zero(f0):
        raise NotInvertible("not invertible modulo T")
    g = pm.K.inv(f0)
    steps = []
    k = pm.mu
    while k > 1:
        steps.append(k)
        k = (k + 1) // 2
    one = upoly.constant(E, E.one())
    for k in reversed(steps):
        red = pm.reducer(k)
        err = upoly.sub(E, one, red.rem(upoly.mul(E, red.rem(F), g)))
        g = red.rem(upoly.add(E, g, upoly.mul(E, g, err)))
    return upoly.pad(g, pm.n)


def hankel_map(L, pm: PowerModulus) -> np.ndarray:
    """Upper-triangular Hankel map with first column the coefficients of
    degree ``1..d*mu`` of ``T^mu``."""
    N = pm.n
    L = np.asarray(L)
    if len(L) != N:
        raise LengthMismatch(f"dual vector must have length {N}, got {len(L)}")
    w = upoly.pad(pm.power(pm.mu)[1:], 2 * N - 1)
    return upoly.tmul(pm.base, w, L, N)


def hankel_solve(L, Lp, pm: PowerModulus) -> np.ndarray:
    """``F`` modulo ``T^mu`` with ``F . L = L'``, for a generator ``L``."""
    Lam = hankel_map(L, pm)
    Lamp = hankel_map(Lp, pm)
    try:
        inv = inv_mod_power(Lam, pm)
    except NotInvertible:
        raise NotAGenerator("the given form does not generate the dual") from None
    return pm.reducer(pm.mu).rem(upoly.mul(pm.base, Lamp, inv))


def tangle(G, pm: PowerModulus) -> np.ndarray:
    """Residue ``F`` modulo ``T^mu`` whose jet is ``G``."""
    G = _check_shape(G, pm, "jet")
    gen = dual_generator(pm)
    if pm._gen_image is None:
        pm._gen_image = untangle_transposed(gen, pm)
    L = pm._gen_image
    Lp = untangle_transposed(dual_tproduct(G, gen, pm), pm)
    try:
        return hankel_solve(L, Lp, pm)
    except NotAGenerator as exc:  # pragma: no cover - excluded by construction
        raise AssertionError("image of the dual generator must generate") from exc

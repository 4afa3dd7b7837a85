"""``x^D mod P`` for huge ``D`` and non-squarefree ``P``.

Modulo a power ``T^mu`` of an irreducible ``T`` the answer is the tangle of
``(xi + alpha)^D``, whose jet only needs ``alpha^D`` and a row of binomial
coefficients.  A general modulus is split by squarefree decomposition and the
pieces are glued back with the Chinese remainder theorem.
"""

from __future__ import annotations

import numpy as np

from . import upoly
from .errors import NotIrreducible
from .unitangle import PowerModulus, tangle


def binomial_row(p: int, D: int, m: int) -> list[int]:
    """``binom(D, i) mod p`` for ``i < m`` (needs ``m <= p``)."""
    D = int(D)
    row = [1]
    for i in range(m - 1):
        row.append(row[-1] * ((D - i) % p) * pow(i + 1, -1, p) % p)
    return row


def pow_x_mod_power(D: int, pm: PowerModulus) -> np.ndarray:
    """``x^D mod T^mu`` as a residue of length ``d*mu``."""
    D = int(D)
    if D < 0:
        raise ValueError("exponent must be non-negative")
    E, K, mu = pm.base, pm.K, pm.mu
    if D < pm.n:
        return upoly.monomial(E, D, pm.n)
    a = K.pow(K.gen(), D - mu + 1)
    apow = [a]
    for _ in range(mu - 1):
        apow.append(K.mul(apow[-1], K.gen()))
    # apow[k] = alpha^(D-mu+1+k), so alpha^(D-i) = apow[mu-1-i]
    row = binomial_row(E.p, D, mu)
    jet = K.zeros(mu)
    for i in range(mu):
        jet[i] = E.mul(apow[mu - 1 - i], E.array(row[i]))
    return tangle(jet, pm)


def pow_x_mod(D: int, P, base) -> np.ndarray:
    """``x^D mod P`` over the prime field ``base`` (trimmed residue)."""
    D = int(D)
    if D < 0:
        raise ValueError("exponent must be non-negative")
    P = upoly.monic(base, P)
    n = len(P) - 1
    if n < 1:
        return base.zeros(0)
    if D < n:
        return upoly.monomial(base, D)
    pairs = []
    for S, mult in upoly.yun_squarefree(base, P):
        try:
            pm = PowerModulus(S, mult, base=base)
        except NotIrreducible:
            # reducible squarefree part: plain repeated squaring mod S^mult
            M = S
            for _ in range(mult - 1):
                M = upoly.mul(base, M, S)
            r = upoly.pow_mod(base, upoly.monomial(base, 1), D, M)
            pairs.append((r, M))
            continue
        pairs.append((pow_x_mod_power(D, pm), pm.power(mult)))
    return upoly.crt_combine(base, pairs)

"""Timing ladders for the scaling checks and the ``bench`` subcommand."""

from __future__ import annotations

import statistics
import time

import numpy as np

from . import upoly
from .field import PrimeField
from .staircase import Staircase, mono_mul
from .unitangle import PowerModulus, tangle, untangle

OPS = ("untangle", "tangle", "mono-mul")
DEFAULT_PRIME = 2**31 - 1


def random_irreducible(K, d: int, rng) -> np.ndarray:
    """Random monic irreducible polynomial of degree ``d`` over a prime field."""
    while True:
        T = K.array(list(rng.integers(0, min(K.p, 2**62), d)) + [1])
        if upoly.is_irreducible(K, T):
            return T


def ladder_staircase(n: int) -> Staircase:
    """Staircase of degree close to ``n`` with ``O(log n)`` generators.

    Widths halve at every step: ``(M, 0), (M/2, R), (M/4, 2R), ...``.
    """
    L = max(n.bit_length() // 2, 1)
    M = 1 << L
    R = max(1, n // (2 * M))
    gens = [(M >> i, i * R) for i in range(L + 1) if M >> i]
    gens.append((0, len(gens) * R))
    return Staircase(tuple(gens))


def _median_ms(fn, runs: int) -> float:
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times) * 1e3


def prepare(op: str, n: int, d: int = 4, p: int = DEFAULT_PRIME, seed: int = 0):
    """Build inputs of size ``n`` and return a zero-argument callable."""
    rng = np.random.default_rng(seed)
    K = PrimeField(p)
    if op in ("untangle", "tangle"):
        pm = PowerModulus(random_irreducible(K, d, rng), max(n // d, 1), base=K)
        F = K.array(rng.integers(0, p, pm.n))
        if op == "untangle":
            return lambda: untangle(F, pm)
        G = untangle(F, pm)
        tangle(G, pm)  # warm the per-modulus caches
        return lambda: tangle(G, pm)
    if op == "mono-mul":
        S = ladder_staircase(n)
        F = K.array(rng.integers(0, p, S.degree))
        G = K.array(rng.integers(0, p, S.degree))
        return lambda: mono_mul(K, F, G, S)
    raise ValueError(f"unknown benchmark operation {op!r}")


def run_ladder(op: str, exponents, d: int = 4, runs: int = 5, p: int = DEFAULT_PRIME):
    """``[(n, median_ms)]`` for ``n = 2^k`` over the given exponents."""
    rows = []
    for k in exponents:
        n = 1 << k
        fn = prepare(op, n, d=d, p=p, seed=k)
        fn()
        rows.append((n, _median_ms(fn, runs)))
    return rows

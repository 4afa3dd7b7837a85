import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tangles import upoly
from tangles.bitangle import BivariateConfig, MaximalIdeal
from tangles.errors import NotIrreducible
from tangles.field import PrimeField
from tangles.staircase import Staircase

P31 = 2**31 - 1
P61 = 2**61 - 1


def random_irreducible(K, d, rng):
    while True:
        T = K.array(list(rng.integers(0, min(K.p, 2**62), d)) + [1])
        if upoly.is_irreducible(K, T):
            return T


def random_poly(K, n, rng):
    return K.array(rng.integers(0, min(K.p, 2**62), n))


def random_elements(K, n, rng):
    """``n`` random elements of ``K`` (any field of the library)."""
    return K.array(rng.integers(0, min(K.p, 2**62), (n,) + K.shape))


def random_staircase(rng, max_degree=200, max_t=6, max_exp=20):
    while True:
        t = int(rng.integers(1, max_t))  # number of nonzero mu's
        mus = sorted(rng.choice(np.arange(1, max_exp + 1), t, replace=False))[::-1]
        nus = [0] + sorted(rng.choice(np.arange(1, max_exp + 1), t, replace=False))
        S = Staircase(tuple(zip([int(m) for m in mus] + [0], [int(v) for v in nus])))
        if S.degree <= max_degree:
            return S


def random_maximal_ideal(K, rng, max_d=6):
    while True:
        d1 = int(rng.integers(1, 4))
        d2 = int(rng.integers(1, 3))
        if d1 * d2 > max_d:
            continue
        T1 = list(rng.integers(0, K.p, d1)) + [1]
        T2 = [list(rng.integers(0, K.p, d1)) for _ in range(d2)] + [[1]]
        try:
            return MaximalIdeal(K, T1, T2)
        except NotIrreducible:
            continue


def random_config(K, rng, max_d=6, max_mu=8):
    m = random_maximal_ideal(K, rng, max_d)
    S = random_staircase(rng, max_degree=max_mu, max_t=4, max_exp=6)
    return BivariateConfig(m, S)


def intro_config(p=13):
    """x1^2 + x1 + 2, x2 - x1 - 1 and J' = <xi1^2, xi1 xi2, xi2^2>."""
    K = PrimeField(p)
    m = MaximalIdeal(K, [2, 1, 1], [[-1, -1], [1]])
    return BivariateConfig(m, Staircase.parse("2:0,1:1,0:2"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=[101, P31, P61], ids=["p101", "p31", "p61"])
def field(request):
    return PrimeField(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

import oracles
from conftest import P31, random_irreducible, random_poly
from tangles import upoly
from tangles.errors import (
    CharacteristicTooSmall,
    DivisionByZeroPoly,
    LengthMismatch,
    ModuliNotCoprime,
    NotInvertible,
)
from tangles.field import ExtensionField, PrimeField

F31 = PrimeField(P31)
coeffs = hs.lists(hs.integers(0, P31 - 1), max_size=60)


def as_list(f):
    return [int(c) for c in upoly.trim(f)]


def test_mul_small_cases(field):
    K = field
    assert len(upoly.trim(upoly.mul(K, K.zeros(0), K.array([1, 2])))) == 0
    assert as_list(upoly.mul(K, K.array([1, 1]), K.array([-1, 1]))) == [K.p - 1, 0, 1]


@pytest.mark.parametrize("n", [1, 5, 24, 25, 200, 299])
def test_mul_matches_schoolbook(field, rng, n):
    f = random_poly(field, n, rng)
    g = random_poly(field, n + 7, rng)
    assert as_list(upoly.mul(field, f, g)) == oracles.mul([int(c) for c in f], [int(c) for c in g], field.p)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_mul_property(f, g):
    assert as_list(upoly.mul(F31, F31.array(f), F31.array(g))) == oracles.mul(f, g, P31)


def test_divmod_examples():
    K = PrimeField(101)
    T = K.array([2, 1, 1])
    T2 = upoly.mul(K, T, T)
    assert as_list(T2) == [4, 4, 5, 2, 1]
    q, r = upoly.divmod(K, T2, T)
    assert as_list(q) == [2, 1, 1] and as_list(r) == []
    f = K.array([3, 1, 4, 1, 5])
    q, r = upoly.divmod(K, f, K.array([1]))
    assert as_list(q) == as_list(f) and as_list(r) == []
    with pytest.raises(DivisionByZeroPoly):
        upoly.divmod(K, f, K.zeros(0))


@pytest.mark.parametrize("n,m", [(10, 3), (100, 7), (300, 40), (500, 260), (80, 80), (5, 9)])
def test_divmod_vs_long_division(field, rng, n, m):
    f = random_poly(field, n, rng)
    g = random_poly(field, m, rng)
    if g[-1] == 0:
        g[-1] = 1
    q, r = upoly.divmod(field, f, g)
    oq, orr = oracles.divmod_poly([int(c) for c in f], [int(c) for c in g], field.p)
    assert as_list(q) == oq and as_list(r) == orr
    # round trip
    assert upoly.equal(upoly.add(field, upoly.mul(field, q, g), r), f)


def test_inv_mod_xn(field, rng):
    K = field
    assert as_list(upoly.inv_mod_xn(K, K.array([1]), 4)) == [1]
    assert as_list(upoly.inv_mod_xn(K, K.array([1, -1]), 5)) == [1, 1, 1, 1, 1]
    with pytest.raises(NotInvertible):
        upoly.inv_mod_xn(K, K.array([0, 1]), 3)
    for n in (1, 2, 7, 64, 300):
        f = random_poly(K, n + 3, rng)
        f[0] = f[0] or 1
        g = upoly.inv_mod_xn(K, f, n)
        # triangular solve oracle: g_0 = 1/f_0, g_k = -(sum_{j>=1} f_j g_{k-j})/f_0
        fl = [int(c) for c in f]
        inv0 = pow(fl[0], -1, K.p)
        og = []
        for k in range(n):
            s = (1 if k == 0 else 0) - sum(fl[j] * og[k - j] for j in range(1, min(k, len(fl) - 1) + 1))
            og.append(s * inv0 % K.p)
        assert [int(c) for c in g] == og


def test_taylor_shift(field, rng):
    K = field
    P = K.array([0, 0, 1])
    assert as_list(upoly.taylor_shift(K, P, K.array(1))) == [1, 2, 1]
    f = random_poly(K, 51, rng)
    assert upoly.equal(upoly.taylor_shift(K, f, K.zero()), f)
    a = K.array(int(rng.integers(0, min(K.p, 2**62))))
    shifted = upoly.taylor_shift(K, f, a)
    # Horner-expansion oracle: P(x + a) = (...(f_n (x+a) + f_{n-1})(x+a) + ...)
    acc = []
    for c in reversed([int(v) for v in f]):
        acc = oracles.add(oracles.mul(acc, [int(a), 1], K.p), [c], K.p)
    assert as_list(shifted) == acc
    back = upoly.taylor_shift(K, shifted, (-a) % K.p)
    assert upoly.equal(back, f)


def test_taylor_shift_needs_characteristic():
    K = PrimeField(5)
    with pytest.raises(CharacteristicTooSmall):
        upoly.taylor_shift(K, K.array([1] * 7), K.array(1))


def test_taylor_shift_over_extension(rng):
    F = PrimeField(101)
    K = ExtensionField(F, random_irreducible(F, 3, rng))
    f = K.array(rng.integers(0, 101, (12, 3)))
    a = K.gen()
    g = upoly.taylor_shift(K, f, a)
    # evaluate both sides at a random point b: g(b) = f(b + a)
    b = K.array(rng.integers(0, 101, 3))
    assert np.array_equal(upoly.evaluate(K, g, b), upoly.evaluate(K, f, (a + b) % 101))


def test_kronecker_mul(rng):
    K = PrimeField(101)
    x1x2 = K.array([[0, 0], [0, 1]])
    x1 = K.array([[0, 1]])
    prod = upoly.kronecker_mul(K, x1x2, x1)
    expect = np.zeros((2, 3), dtype=np.int64)
    expect[1, 2] = 1
    assert np.array_equal(prod, expect)
    A = K.array(rng.integers(0, 101, (10, 10)))
    B = K.array(rng.integers(0, 101, (10, 10)))
    naive = np.zeros((19, 19), dtype=object)
    for (i, j) in oracles.grid_points(10, 10):
        for (k, l) in oracles.grid_points(10, 10):
            naive[i + k, j + l] += int(A[i, j]) * int(B[k, l])
    assert np.array_equal(upoly.kronecker_mul(K, A, B), (naive % 101).astype(np.int64))
    assert np.array_equal(upoly.kronecker_mul(K, A, K.array([[1]])), A)


def test_tmod_extend():
    K = PrimeField(101)
    fib = upoly.tmod_extend(K, K.array([0, 1]), K.array([-1, -1, 1]), 7)
    assert [int(c) for c in fib] == [0, 1, 1, 2, 3, 5, 8]
    u = K.array([3, 4, 5])
    S = K.array([1, 2, 3, 1])
    assert np.array_equal(upoly.tmod_extend(K, u, S, 3), u)
    with pytest.raises(LengthMismatch):
        upoly.tmod_extend(K, K.array([1]), S, 5)


@pytest.mark.parametrize("k", [1, 3, 10, 40])
def test_tmod_extend_vs_recurrence(field, rng, k):
    K = field
    S = random_poly(K, k + 1, rng)
    S[-1] = 1
    u = random_poly(K, k, rng)
    t = 4 * k
    v = [int(c) for c in upoly.tmod_extend(K, u, S, t)]
    s = [int(c) for c in S]
    seq = [int(c) for c in u]
    while len(seq) < t:
        n = len(seq) - k
        seq.append(-sum(s[j] * seq[n + j] for j in range(k)) % K.p)
    assert v == seq


def test_tdiff(field, rng):
    K = field
    u = random_poly(K, 6, rng)
    assert np.array_equal(upoly.tdiff(K, u, 0, 6), u)
    assert [int(c) for c in upoly.tdiff(K, K.array([1]), 1, 2)] == [0, 1]
    lam, t = 3, 12
    u = random_poly(K, t - lam, rng)
    v = upoly.tdiff(K, u, lam, t)
    for i in range(t):
        if i < lam:
            assert v[i] == 0
        else:
            ff = 1
            for s in range(lam):
                ff *= i - s
            assert int(v[i]) == ff * int(u[i - lam]) % K.p


def test_tmul(field, rng):
    K = field
    w = random_poly(K, 20, rng)
    assert np.array_equal(upoly.tmul(K, w, K.array([1]), 8), w[:8])
    assert np.array_equal(upoly.tmul(K, w, K.array([0, 1]), 8), w[1:9])
    with pytest.raises(LengthMismatch):
        upoly.tmul(K, w[:5], K.array([1, 2, 3]), 8)


def test_tmul_is_transpose_of_multiplication(rng):
    K = PrimeField(P31)
    for df in range(0, 9):
        for n in range(1, 9):
            F = random_poly(K, df + 1, rng)
            w = random_poly(K, n + df, rng)
            # matrix of G -> F G for deg G < n, shape (n + df) x n
            M = [[0] * n for _ in range(n + df)]
            for j in range(n):
                for i, c in enumerate(F):
                    M[i + j][j] = int(c)
            expect = [sum(M[r][c] * int(w[r]) for r in range(n + df)) % K.p for c in range(n)]
            assert [int(c) for c in upoly.tmul(K, w, F, n)] == expect


def test_yun(rng):
    K = PrimeField(101)
    T = K.array([2, 1, 1])
    [(S, i)] = upoly.yun_squarefree(K, T)
    assert as_list(S) == [2, 1, 1] and i == 1
    [(S, i)] = upoly.yun_squarefree(K, upoly.mul(K, T, T))
    assert as_list(S) == [2, 1, 1] and i == 2
    K = PrimeField(P31)
    for _ in range(20):
        parts = [(random_irreducible(K, int(rng.integers(1, 4)), rng), int(rng.integers(1, 5)))
                 for _ in range(int(rng.integers(1, 4)))]
        P = K.array([1])
        for S, i in parts:
            for _ in range(i):
                P = upoly.mul(K, P, S)
        dec = upoly.yun_squarefree(K, upoly.scale(K, P, K.array(7)))
        rebuilt = K.array([1])
        for S, i in dec:
            assert upoly._is_one(K, S[-1])
            for _ in range(i):
                rebuilt = upoly.mul(K, rebuilt, S)
        assert upoly.equal(rebuilt, P)
        for a in range(len(dec)):
            for b in range(a):
                assert upoly.degree(upoly.gcd(K, dec[a][0], dec[b][0])) == 0
    with pytest.raises(CharacteristicTooSmall):
        upoly.yun_squarefree(PrimeField(3), PrimeField(3).array([1, 0, 0, 1, 1]))


def test_crt(rng):
    K = PrimeField(101)
    r = upoly.crt_combine(K, [(K.array([3, 4]), K.array([1, 0, 1]))])
    assert as_list(r) == [3, 4]
    pairs = [(K.array([0, 1]), K.array([1, 0, 1])), (K.array([1]), K.array([-1, 1]))]
    R = upoly.crt_combine(K, pairs)
    for Ri, Mi in pairs:
        assert as_list(upoly.rem(K, R, Mi)) == as_list(upoly.rem(K, Ri, Mi))
    assert upoly.degree(R) < 3
    zero = upoly.crt_combine(K, [(K.zeros(0), K.array([1, 1])), (K.zeros(0), K.array([2, 1]))])
    assert upoly.degree(zero) == -1
    with pytest.raises(ModuliNotCoprime):
        upoly.crt_combine(K, [(K.array([1]), K.array([1, 1])), (K.array([2]), K.array([1, 2, 1]))])

import numpy as np
import pytest

import oracles
from conftest import P31, intro_config, random_config, random_elements
from tangles import staircase as st
from tangles.bitangle import (
    BivariateConfig,
    MaximalIdeal,
    basis_of_I,
    biv_tangle,
    biv_untangle,
    biv_untangle_layered,
    biv_untangle_shift,
    quot_inv,
    quot_mul,
)
from tangles.errors import CharacteristicTooSmall, LengthMismatch, NotInvertible
from tangles.field import PrimeField
from tangles.staircase import Staircase

F31 = PrimeField(P31)

G1 = {(4, 0): 1, (3, 0): 2, (2, 0): 5, (1, 0): 4, (0, 0): 4}
G2 = {(2, 1): 1, (1, 1): 1, (0, 1): 2, (3, 0): -1, (2, 0): -2, (1, 0): -3, (0, 0): -2}
G3 = {(0, 2): 1, (1, 1): -2, (0, 1): -2, (2, 0): 1, (1, 0): 2, (0, 0): 1}


def quotient_element(cfg, terms):
    return st.from_terms(cfg.base, terms, cfg.SB)


def terms_of(F, S):
    return {(int(a), int(b)): int(c) for (a, b), c in zip(S.monomials, F) if int(c)}


def tower(m):
    return oracles.Tower(m.base.p, oracles.from_array(m.T1), oracles.from_array(m.T2))


def jet_dict(G, Jp):
    zero = oracles.from_array(np.zeros_like(G[0]))
    return {(int(a), int(b)): v for (a, b), v in zip(Jp.monomials, oracles.from_array(G)) if v != zero}


# -- the worked example ------------------------------------------------------

def test_groebner_structure_of_example():
    p = 13
    gb = oracles.buchberger([G1, G2, G3], p)
    assert [oracles._lt(g) for g in gb] == [(4, 0), (2, 1), (0, 2)]
    T1 = [2, 1, 1]
    for g, mu in zip(gb, (2, 1, 0)):
        T1mu = [1]
        for _ in range(mu):
            T1mu = oracles.mul(T1mu, T1, p)
        for row in oracles.x1_poly_rows(g).values():
            assert oracles.rem([c % p for c in row], T1mu, p) == []


def test_example_basis():
    cfg = intro_config()
    assert basis_of_I(cfg) == [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]
    assert cfg.n == 6
    small = BivariateConfig(cfg.m, Staircase.parse("1:0,0:1"))
    assert len(basis_of_I(small)) == cfg.m.d


def test_example_untangle_and_tangle():
    cfg = intro_config()
    x1x2 = quotient_element(cfg, {(1, 1): 1})
    expect = [[[11, 0]], [[1, 1]], [[0, 1]]]  # -2, alpha1 + 1, alpha1
    assert biv_untangle_shift(x1x2, cfg).tolist() == expect
    assert biv_untangle_layered(x1x2, cfg).tolist() == expect
    assert np.array_equal(biv_tangle(cfg.K.array(expect), cfg), x1x2)
    x1 = quotient_element(cfg, {(1, 0): 1})
    assert biv_untangle(x1, cfg).tolist() == [[[0, 1]], [[1, 0]], [[0, 0]]]
    one = quotient_element(cfg, {(0, 0): 1})
    assert biv_untangle(one, cfg).tolist() == [[[1, 0]], [[0, 0]], [[0, 0]]]


def test_example_quotient_product():
    cfg = intro_config()
    p = cfg.base.p
    x1sq = quotient_element(cfg, {(2, 0): 1})
    x2 = quotient_element(cfg, {(0, 1): 1})
    x1 = quotient_element(cfg, {(1, 0): 1})
    gb = oracles.buchberger([G1, G2, G3], p)
    assert terms_of(quot_mul(x1sq, x2, cfg), cfg.SB) == oracles.normal_form({(2, 1): 1}, gb, p)
    assert terms_of(quot_mul(x1sq, x2, cfg), cfg.SB) == {
        (1, 1): p - 1, (0, 1): p - 2, (3, 0): 1, (2, 0): 2, (1, 0): 3, (0, 0): 2}
    assert terms_of(quot_mul(x1, x2, cfg), cfg.SB) == {(1, 1): 1}


def test_example_against_groebner_normal_forms(rng):
    cfg = intro_config()
    p = cfg.base.p
    gb = oracles.buchberger([G1, G2, G3], p)
    for _ in range(20):
        F = random_elements(cfg.base, 6, rng)
        G = random_elements(cfg.base, 6, rng)
        prod = oracles._bmul(terms_of(F, cfg.SB), terms_of(G, cfg.SB), p)
        assert terms_of(quot_mul(F, G, cfg), cfg.SB) == oracles.normal_form(prod, gb, p)


# -- random configurations ---------------------------------------------------

def test_variants_agree_and_invert(rng):
    for _ in range(60):
        cfg = random_config(F31, rng)
        F = random_elements(F31, cfg.SB.degree, rng)
        a = biv_untangle_shift(F, cfg)
        assert np.array_equal(a, biv_untangle_layered(F, cfg))
        assert np.array_equal(biv_tangle(a, cfg), F)
        G = random_elements(cfg.K, cfg.Jp.degree, rng)
        assert np.array_equal(biv_untangle(biv_tangle(G, cfg), cfg), G)


def test_untangle_against_symbolic_shift(rng):
    for _ in range(40):
        cfg = random_config(F31, rng)
        tw = tower(cfg.m)
        F = random_elements(F31, cfg.SB.degree, rng)
        terms = terms_of(F, cfg.SB)
        expect = tw.shift(terms, cfg.Jp.contains)
        got = jet_dict(biv_untangle(F, cfg), cfg.Jp)
        assert got == expect
        const = oracles.from_array(biv_untangle(F, cfg)[0])
        assert const == tw.evaluate(terms)
        assert np.array_equal(cfg.m.evaluate(st.to_dense(F31, F, cfg.SB)), biv_untangle(F, cfg)[0])


def test_untangle_is_multiplicative(rng):
    for _ in range(40):
        cfg = random_config(F31, rng)
        tw = tower(cfg.m)
        F = random_elements(F31, cfg.SB.degree, rng)
        G = random_elements(F31, cfg.SB.degree, rng)
        prod = oracles._bmul(terms_of(F, cfg.SB), terms_of(G, cfg.SB), P31)
        expect = tw.shift(prod, cfg.Jp.contains)
        got = st.mono_mul(cfg.K, biv_untangle(F, cfg), biv_untangle(G, cfg), cfg.Jp)
        assert jet_dict(got, cfg.Jp) == expect


def test_quotient_ring_axioms(rng):
    for _ in range(30):
        cfg = random_config(F31, rng)
        n = cfg.SB.degree
        A, B, C = (random_elements(F31, n, rng) for _ in range(3))
        one = st.one(F31, cfg.SB)
        assert np.array_equal(quot_mul(A, one, cfg), A)
        assert np.array_equal(quot_mul(A, B, cfg), quot_mul(B, A, cfg))
        assert np.array_equal(quot_mul(quot_mul(A, B, cfg), C, cfg), quot_mul(A, quot_mul(B, C, cfg), cfg))
        assert np.array_equal(quot_mul(A, (B + C) % P31, cfg),
                              (quot_mul(A, B, cfg) + quot_mul(A, C, cfg)) % P31)
        if not cfg.K.is_zero(biv_untangle(A, cfg)[0]):
            Ai = quot_inv(A, cfg)
            assert np.array_equal(quot_mul(A, Ai, cfg), one)
            assert np.array_equal(quot_inv(Ai, cfg), A)


def test_inverse_of_element_in_maximal_ideal():
    cfg = intro_config()
    T1 = quotient_element(cfg, {(2, 0): 1, (1, 0): 1, (0, 0): 2})
    with pytest.raises(NotInvertible):
        quot_inv(T1, cfg)
    one = quotient_element(cfg, {(0, 0): 1})
    assert np.array_equal(quot_inv(one, cfg), one)


def test_characteristic_check():
    m = MaximalIdeal(PrimeField(5), [2, 1, 1], [[-1, -1], [1]])
    with pytest.raises(CharacteristicTooSmall):
        BivariateConfig(m, Staircase.parse("2:0,1:1,0:2"))
    BivariateConfig(m, Staircase.parse("1:0,0:2"))


def test_length_checks():
    cfg = intro_config()
    with pytest.raises(LengthMismatch):
        biv_untangle(cfg.base.zeros(5), cfg)
    with pytest.raises(LengthMismatch):
        biv_tangle(cfg.K.zeros(4), cfg)

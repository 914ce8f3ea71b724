import random

import numpy as np
import pytest

from qbent.boolfun import TraceTerm, algebraic_degree, is_bent, rank, truth_table
from qbent.constructions import (HuParams, LiParams, MaParams, NewParams,
                                 associated_P_check, construct_hu, construct_li,
                                 construct_ma, construct_new, enumerate_new,
                                 expected_count, gold_sum, hu_criterion, hu_grid,
                                 index_set_T, li_criterion, ma_criterion, ma_grid,
                                 ma_poly, subfield_elements)
from qbent.field import FieldError, first_noncube, make_field, noncubes, power
from qbent.gf2 import gcd_f2, poly_from_coeffs
from qbent.oracles import commutative_gcd
from qbent.skewpoly import SkewPoly, gcrd


def bent(r):
    return is_bent(truth_table(r), r.field)


def terms_of(r):
    return sorted((t.degree, t.beta.value, t.exponent) for t in r.terms)


# --- Ma -------------------------------------------------------------------

def test_ma_n4_c0():
    F = make_field(4)
    p = MaParams(4, (0,))
    assert ma_poly(p) == 0b100  # x^2
    assert gcd_f2(ma_poly(p), 0b10001) == 1
    assert ma_criterion(p) and bent(construct_ma(p, F))


def test_ma_n4_c1():
    F = make_field(4)
    p = MaParams(4, (1,))
    assert ma_poly(p) == 0b1110  # x + x^2 + x^3
    # c(1) = 1, so x + 1 does not divide c and gcd with (x + 1)^4 is 1
    assert gcd_f2(ma_poly(p), 0b10001) == 1
    assert ma_criterion(p) and bent(construct_ma(p, F))


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_ma_grid_agrees(n):
    F = make_field(n)
    grid = list(ma_grid(n))
    assert len(grid) == 2 ** (n // 2 - 1)
    assert all(ma_criterion(p) == bent(construct_ma(p, F)) for p in grid)


def test_ma_validation():
    with pytest.raises(ValueError):
        MaParams(5, (0,))
    with pytest.raises(ValueError):
        MaParams(6, (0,))
    with pytest.raises(ValueError):
        MaParams(4, (2,))


# --- Hu -------------------------------------------------------------------

def test_hu_e1_equals_ma():
    F = make_field(8)
    for p in ma_grid(8):
        h = HuParams(8, 1, F.one, p.c + (1,))
        assert terms_of(construct_hu(h)) == terms_of(construct_ma(p, F))
        assert hu_criterion(h) == ma_criterion(p)


def test_hu_n8_e2():
    F = make_field(8)
    sub = subfield_elements(F, 2)
    assert len(sub) == 3 and F.one in sub
    for beta in sub:
        p = HuParams(8, 2, beta, (0, 1))
        assert hu_criterion(p)
        assert bent(construct_hu(p))


def test_hu_missing_top_term():
    F = make_field(8)
    for beta in subfield_elements(F, 2):
        for c in ((0, 0), (1, 0)):
            p = HuParams(8, 2, beta, c)
            assert not hu_criterion(p)
            assert not bent(construct_hu(p))


def test_hu_grid_default_modulus():
    F = make_field(8)
    for p in hu_grid(8, F):
        assert hu_criterion(p) == bent(construct_hu(p)), p.label()


def test_hu_strict_modulus_disagrees_somewhere():
    # gcd against x^n + 1 is stricter than x^m + 1 and rejects bent functions at n = 12
    F = make_field(12)
    bad = [p for p in hu_grid(12, F)
           if p.c[-1] and hu_criterion(p, strict=True) != bent(construct_hu(p))]
    assert bad
    assert all(bent(construct_hu(p)) and not hu_criterion(p, strict=True) for p in bad)


def test_hu_validation():
    F = make_field(8)
    with pytest.raises(ValueError):
        HuParams(8, 3, F.one, (1,))
    with pytest.raises(ValueError):
        HuParams(8, 8, F.one, ())  # m = 1 is odd
    with pytest.raises(ValueError):
        HuParams(8, 2, F(2), (0, 1))  # 2 is not in GF(4)


def test_subfield_elements_closed():
    F = make_field(12)
    for e in (1, 2, 3, 4, 6):
        sub = subfield_elements(F, e)
        assert len(sub) == (1 << e) - 1
        assert all(power(b, 1 << e) == b for b in sub)


# --- Li -------------------------------------------------------------------

def test_li_examples():
    F = make_field(4)
    assert li_criterion(LiParams(4, 1, 1))
    assert bent(construct_li(LiParams(4, 1, 1), F))
    F6 = make_field(6)
    assert not li_criterion(LiParams(6, 2, 1))
    assert not bent(construct_li(LiParams(6, 2, 1), F6))


def test_li_t0_is_all_ones_ma():
    for n in (4, 6, 8):
        F = make_field(n)
        ones = MaParams(n, (1,) * (n // 2 - 1))
        assert terms_of(construct_li(LiParams(n, 1, 0), F)) == terms_of(construct_ma(ones, F))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_li_grid_agrees(n):
    F = make_field(n)
    for k in range(1, n):
        for t in range(0, 6):
            p = LiParams(n, k, t)
            assert li_criterion(p) == bent(construct_li(p, F)), (n, k, t)


# --- gold_sum -------------------------------------------------------------

def test_gold_sum_folds_and_cancels():
    F = make_field(8)
    b = F(0x57)
    # step 7 conjugates onto step 1
    r = gold_sum(F, {7: b})
    assert terms_of(r) == [(8, power(b, 2).value, 3)]
    # equal coefficients cancel
    assert gold_sum(F, {1: F.one, 7: F.one}).terms == ()
    # step n/2 becomes a half trace of Tr_4^8(beta)
    r = gold_sum(F, {4: b})
    assert [(t.degree, t.exponent) for t in r.terms] == [(4, 17)]
    assert np.array_equal(truth_table(r).tt,
                          truth_table(gold_sum(F, {}, r.terms[0].beta)).tt)


def test_gold_sum_same_function():
    F = make_field(6)
    rng = random.Random(5)
    for _ in range(30):
        full = {j: F.random(rng) for j in range(1, 6)}
        direct = truth_table(type(gold_sum(F, {}))(F, [TraceTerm(6, b, 1 + (1 << j))
                                                    for j, b in full.items() if b]))
        assert np.array_equal(truth_table(gold_sum(F, full)).tt, direct.tt)


# --- gcd / gcrd cross-check -------------------------------------------------

def test_gcd_f2_examples():
    assert gcd_f2(0b1110, 0b10001) == 1
    assert gcd_f2(0b1111, 0b10001) == 0b1111  # (x + 1)^3
    assert gcd_f2(0b100, 0b10001) == 1
    assert gcd_f2(0b1001, 0b11) == 0b11


def test_gcd_f2_vs_commutative_and_gcrd():
    # over GF(2) the skew ring is commutative (sigma acts trivially)
    F = make_field(1)
    rng = random.Random(9)
    for _ in range(200):
        u = [rng.getrandbits(1) for _ in range(rng.randrange(1, 12))] + [1]
        v = [rng.getrandbits(1) for _ in range(rng.randrange(1, 12))] + [1]
        g = gcd_f2(poly_from_coeffs(u), poly_from_coeffs(v))
        assert g == poly_from_coeffs(commutative_gcd(u, v))
        d = gcrd(SkewPoly(F, [F(c) for c in u]), SkewPoly(F, [F(c) for c in v]))
        assert poly_from_coeffs([c.value for c in d.coeffs]) == g


# --- non-cube construction --------------------------------------------------

def test_index_sets():
    assert index_set_T(4) == (1,)
    assert index_set_T(6) == (1,)
    assert index_set_T(8) == (1, 3)
    assert index_set_T(10) == (1, 3)
    assert index_set_T(14) == (1, 3, 5)
    for n in (4, 6, 8, 10, 12, 14, 16, 18):
        assert len(index_set_T(n)) == {0: n // 4, 2: (n - 2) // 4}[n % 4]
        assert expected_count(n) == 2 ** len(index_set_T(n))


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12, 14])
def test_S_covers_odd_steps(n):
    F = make_field(n)
    a = first_noncube(F)
    odd = {i for i in range(1, n, 2)}
    if n % 4 == 2:
        odd.discard(n // 2)
    T = index_set_T(n)
    for mask in range(1 << len(T)):
        I = {t for k, t in enumerate(T) if (mask >> k) & 1}
        p = NewParams(F, a, I)
        S = p.S
        assert len(S) == len(T)
        assert S | {n - s for s in S} == odd
        assert S & {n - s for s in S} == set()


def test_new_exact_terms_n4():
    F = make_field(4)
    for a in noncubes(F):
        r = construct_new(NewParams(F, a, {1}))
        assert terms_of(r) == [(4, power(a, 4).value, 3)]
        r = construct_new(NewParams(F, a, set()))
        assert terms_of(r) == [(4, power(a, 2).value, 9)]
        assert bent(r)


def test_new_exact_terms_n6():
    F = make_field(6)
    for a in noncubes(F)[:6]:
        r = construct_new(NewParams(F, a, {1}))
        assert terms_of(r) == sorted([(6, power(a, 20).value, 3), (3, power(a, 18).value, 9)])
        assert bent(r)


def test_new_rejects_cube_and_bad_I():
    F = make_field(8)
    with pytest.raises(FieldError):
        NewParams(F, power(F.generator, 3), set())
    with pytest.raises(FieldError):
        NewParams(F, F.zero, set())
    with pytest.raises(ValueError):
        NewParams(F, first_noncube(F), {5})


@pytest.mark.parametrize("n,count", [(4, 2), (6, 2), (8, 4), (10, 4), (12, 8)])
def test_enumerate_counts(n, count):
    F = make_field(n)
    out = enumerate_new(F, first_noncube(F))
    assert len(out) == count == expected_count(n)
    assert len({I for I, _ in out}) == count
    assert len({tuple(terms_of(r)) for _, r in out}) == count


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_instances_for_one_a_share_a_table(n):
    # conjugating Tr(a^e x^(1+2^i)) onto step n - i leaves the function unchanged
    F = make_field(n)
    for a in noncubes(F)[:4]:
        tables = {truth_table(r).digest() for _, r in enumerate_new(F, a)}
        assert len(tables) == 1


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_new_is_bent_quadratic(n):
    F = make_field(n)
    rng = random.Random(n)
    pool = noncubes(F)
    for a in rng.sample(pool, min(8, len(pool))):
        for _, r in enumerate_new(F, a):
            f = truth_table(r)
            assert is_bent(f, F)
            assert rank(f, F) == n
            assert algebraic_degree(f) == 2


def test_associated_P_exhaustive_n4():
    F = make_field(4)
    for a in noncubes(F):
        for I in (set(), {1}):
            assert associated_P_check(NewParams(F, a, I))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_associated_P_sampled(n):
    F = make_field(n)
    rng = random.Random(n)
    T = index_set_T(n)
    for a in rng.sample(noncubes(F), 5):
        I = {t for t in T if rng.getrandbits(1)}
        assert associated_P_check(NewParams(F, a, I))


@pytest.mark.parametrize("n", [6, 10, 14])
def test_half_trace_forms_agree(n):
    F = make_field(n)
    a = first_noncube(F)
    p = NewParams(F, a, set())
    half = construct_new(p)
    full = construct_new(p, full_trace_half=True)
    assert {t.degree for t in full.terms} == {n}
    assert truth_table(half) == truth_table(full)

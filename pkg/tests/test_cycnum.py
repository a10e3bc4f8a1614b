import random
from fractions import Fraction

import mpmath
import pytest

from cyctori.cycnum import (CyclotomicNumber, IntPolynomial,
                            cyc_arith, cyclotomic_poly, embed, embed_refined,
                            mobius, order_count_brute, order_count_oracle,
                            order_count_paper, quotient_poly, totient)


def test_totient_values():
    assert totient(1) == 1
    assert totient(12) == 4
    assert totient(11) == 10
    with pytest.raises(ValueError):
        totient(0)


def test_totient_divisor_sum():
    # sum_{d|m} phi(d) = m
    for m in range(2, 80):
        assert sum(totient(d) for d in range(1, m + 1) if m % d == 0) == m


def test_mobius():
    assert mobius(1) == 1
    assert mobius(6) == 1
    assert mobius(12) == 0
    # oracle: mu(n) from the factorization definition
    for n in range(1, 200):
        fac = {}
        k, p = n, 2
        while p * p <= k:
            while k % p == 0:
                fac[p] = fac.get(p, 0) + 1
                k //= p
            p += 1
        if k > 1:
            fac[k] = 1
        want = 0 if any(e > 1 for e in fac.values()) else (-1) ** len(fac)
        assert mobius(n) == want


def test_cyclotomic_poly_examples():
    assert cyclotomic_poly(1) == IntPolynomial([-1, 1])
    assert cyclotomic_poly(9) == IntPolynomial([1, 0, 0, 1, 0, 0, 1])


def test_cyclotomic_poly_8_by_division():
    # independent oracle: divide X^8 - 1 by the product of phi_d, d|8, d<8
    x8 = IntPolynomial([-1] + [0] * 7 + [1])
    prod = IntPolynomial([1])
    for d in (1, 2, 4):
        prod = prod * cyclotomic_poly(d)
    quot, rem = x8.divmod_exact(prod)
    assert not rem
    assert cyclotomic_poly(8) == quot == IntPolynomial([1, 0, 0, 0, 1])


def test_cyclotomic_poly_at_one():
    # phi_m(1) = p for prime powers, 1 for several prime factors
    for m in range(2, 101):
        fac = set()
        k, p = m, 2
        while p * p <= k:
            if k % p == 0:
                fac.add(p)
                while k % p == 0:
                    k //= p
            p += 1
        if k > 1:
            fac.add(k)
        val = cyclotomic_poly(m)(1)
        if len(fac) == 1:
            assert val == min(fac)
        else:
            assert val == 1


def test_cyclotomic_product_recovers_xm_minus_one():
    for m in (6, 12, 30):
        prod = IntPolynomial([1])
        for d in range(1, m + 1):
            if m % d == 0:
                prod = prod * cyclotomic_poly(d)
        assert prod == IntPolynomial([-1] + [0] * (m - 1) + [1])


def test_quotient_poly():
    assert quotient_poly(5) == IntPolynomial([1, 1, 1, 1, 1])
    assert quotient_poly(8) == IntPolynomial([1, 0, 1, 0, 1, 0, 1])


def test_cyc_arith_examples():
    z4 = CyclotomicNumber.root_of_unity(4, 1)
    assert cyc_arith(z4, z4, "mul") == -1
    z5 = CyclotomicNumber.root_of_unity(5, 1)
    assert cyc_arith(z5, None, "conj") == CyclotomicNumber.root_of_unity(5, 4)
    total = CyclotomicNumber.zero(5)
    for j in range(1, 5):
        total = total + CyclotomicNumber.root_of_unity(5, j)
    # sum of all primitive 5th roots is -mu(5) = ... reduction gives -1
    assert total == -1


def test_level_mismatch_rejected():
    a = CyclotomicNumber.root_of_unity(5, 1)
    b = CyclotomicNumber.root_of_unity(7, 1)
    with pytest.raises(ValueError):
        cyc_arith(a, b, "add")


def test_conj_involution_and_ring_laws():
    rng = random.Random(11)
    for m in (5, 7, 8, 12):
        deg = totient(m)
        elems = [CyclotomicNumber(m, [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                      for _ in range(deg)]) for _ in range(4)]
        for a in elems:
            assert a.conj().conj() == a
        for a in elems:
            for b in elems:
                assert a * b == b * a
        a, b, c = elems[:3]
        assert (a * b) * c == a * (b * c)
        assert (a + b).conj() == a.conj() + b.conj()


def test_root_powers_multiply():
    for m in (7, 9, 16):
        for i in range(m):
            for j in range(m):
                lhs = CyclotomicNumber.root_of_unity(m, i) * CyclotomicNumber.root_of_unity(m, j)
                assert lhs == CyclotomicNumber.root_of_unity(m, (i + j) % m)


def test_embed_examples():
    z8 = CyclotomicNumber.root_of_unity(8, 1)
    box = embed(z8, 64)
    with mpmath.workprec(200):
        s = mpmath.sqrt(2) / 2
        v = Fraction(int(s * 2 ** 180), 2 ** 180)  # within 2^-180 of sqrt(2)/2
    assert box.contains(v, v)
    assert box.width <= Fraction(1, 2 ** 30)

    zero = embed(CyclotomicNumber.zero(8), 64)
    assert zero.width == 0 and zero.contains(0)

    golden = CyclotomicNumber.root_of_unity(5, 1) + CyclotomicNumber.root_of_unity(5, 4)
    gb = embed(golden, 96)
    with mpmath.workprec(200):
        val = 2 * mpmath.cos(2 * mpmath.pi / 5)
        approx = Fraction(int(val * 2 ** 150), 2 ** 150)
    assert gb.re.lo <= approx <= gb.re.hi
    assert gb.im.contains(0)


def test_embed_respects_products():
    rng = random.Random(5)
    for m in (5, 8):
        deg = totient(m)
        a = CyclotomicNumber(m, [rng.randint(-3, 3) for _ in range(deg)])
        b = CyclotomicNumber(m, [rng.randint(-3, 3) for _ in range(deg)])
        prod_box = embed(a, 80) * embed(b, 80)
        direct = embed(a * b, 80)
        # both contain the true value, so they must intersect
        inter = prod_box.intersect(direct)
        assert inter.re.lo <= inter.re.hi and inter.im.lo <= inter.im.hi


def test_embed_refinement_monotone():
    z = CyclotomicNumber.root_of_unity(7, 3) + CyclotomicNumber.root_of_unity(7, 5) * 3
    box = embed(z, 48)
    for bits in (64, 96, 128):
        finer = embed_refined(z, bits, previous=box)
        assert box.contains_interval(finer)
        box = finer


def test_order_count_paper_examples():
    assert order_count_paper(4, 2) == 12
    assert order_count_paper(3, 1) == 2
    assert order_count_paper(6, 2) == 20  # literal value; the oracle gives 24


def test_order_count_oracle_vs_bruteforce():
    assert order_count_oracle(4, 2) == order_count_brute(4, 2) == 12
    assert order_count_oracle(6, 2) == order_count_brute(6, 2) == 24
    assert order_count_oracle(8, 2) == order_count_brute(8, 2) == 48


def test_order_count_agreement_on_prime_powers():
    prime_powers = [m for m in range(2, 33)
                    if len({p for p in range(2, m + 1) if m % p == 0 and
                            all(p % d for d in range(2, p))}) == 1]
    for m in prime_powers:
        for r in range(1, 5):
            assert order_count_paper(m, r) == order_count_oracle(m, r)

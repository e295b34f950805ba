"""Polynomial ring: arithmetic, grading, orders, division, text form."""

import random
from fractions import Fraction

import pytest

from torushom.ring import (ANY_DEGREE, GREVLEX, LEX, NOT_HOMOGENEOUS,
                           GradedPoly, ModuleOrder, PolyParseError,
                           RankMismatchError, format_poly, parse_poly,
                           poly_degree, poly_divmod)


def t(rank, i):
    return GradedPoly.variable(rank, i)


def random_poly(rng, rank, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_exp) for _ in range(rank))
        terms[exp] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return GradedPoly(rank, terms)


def random_homogeneous(rng, rank, polydeg):
    from torushom.slices import monomials_of_polydegree
    terms = {}
    for exp in monomials_of_polydegree(rank, polydeg):
        if rng.random() < 0.7:
            terms[exp] = Fraction(rng.randint(-4, 4))
    return GradedPoly(rank, terms)


class TestArithmetic:
    def test_monomial_product(self):
        t1, t2 = t(2, 0), t(2, 1)
        p = t1 * t2
        assert p == GradedPoly.monomial(2, (1, 1))
        assert poly_degree(p) == 4

    def test_additive_inverse(self):
        rng = random.Random(7)
        for _ in range(20):
            p = random_poly(rng, 2)
            assert (p + (-p)).is_zero()

    def test_binomial_square(self):
        t1, t2 = t(2, 0), t(2, 1)
        p = (t1 + t2) * (t1 + t2)
        assert p == t1 * t1 + 2 * (t1 * t2) + t2 * t2
        assert poly_degree(p) == 4

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            t(1, 0) + t(2, 0)

    def test_ring_axioms_randomized(self):
        rng = random.Random(13)
        for _ in range(30):
            a, b, c = (random_poly(rng, 2) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a

    def test_homogeneity_preserved(self):
        rng = random.Random(41)
        for _ in range(20):
            a = random_homogeneous(rng, 2, rng.randint(0, 3))
            b = random_homogeneous(rng, 2, rng.randint(0, 3))
            p = a * b
            if not p.is_zero():
                da, db = poly_degree(a), poly_degree(b)
                if isinstance(da, int) and isinstance(db, int):
                    assert poly_degree(p) == da + db


class TestDegree:
    def test_power_degree(self):
        assert poly_degree(t(1, 0) ** 3) == 6

    def test_zero_sentinel(self):
        assert poly_degree(GradedPoly.zero(2)) is ANY_DEGREE

    def test_not_homogeneous(self):
        p = t(2, 0) + t(2, 1) * t(2, 1)
        assert poly_degree(p) is NOT_HOMOGENEOUS


class TestDivision:
    def test_exact_power(self):
        t1 = t(2, 0)
        q, rem = poly_divmod(t1 * t1, [t1])
        assert rem.is_zero()
        assert q[0] == t1

    def test_remainder_not_divisible(self):
        t1, t2 = t(2, 0), t(2, 1)
        q, rem = poly_divmod(t1 * t2 + t2 * t2, [t1], GREVLEX)
        assert rem == t2 * t2

    def test_difference_of_squares(self):
        # oracle: evaluate the reconstruction identity at rational points
        t1, t2 = t(2, 0), t(2, 1)
        p = t1 * t1 - t2 * t2
        d = t1 - t2
        q, rem = poly_divmod(p, [d])
        for point in [(2, 3), (Fraction(1, 2), 5), (-1, 7)]:
            assert p.evaluate(point) == \
                q[0].evaluate(point) * d.evaluate(point) + rem.evaluate(point)
        assert rem.is_zero()
        assert q[0] == t1 + t2

    def test_reconstruction_randomized(self):
        rng = random.Random(99)
        t1, t2 = t(2, 0), t(2, 1)
        divisors = [t1 * t1 - t2, t1 * t2 + t2]
        for _ in range(25):
            p = random_poly(rng, 2)
            quots, rem = poly_divmod(p, divisors)
            recon = rem
            for q, d in zip(quots, divisors):
                recon = recon + q * d
            assert recon == p
            # no monomial of rem divisible by a divisor lead monomial
            for exp in rem.terms:
                for d in divisors:
                    le, _ = d.leading_term(GREVLEX)
                    assert not all(x <= y for x, y in zip(le, exp))

    def test_zero_divisor_rejected(self):
        with pytest.raises(ZeroDivisionError):
            poly_divmod(t(1, 0), [GradedPoly.zero(1)])


class TestOrders:
    def test_grevlex_degree_first(self):
        assert GREVLEX.key((2, 0)) > GREVLEX.key((1, 0))

    def test_grevlex_tie_break(self):
        # within degree 2: t1^2 > t1 t2 > t2^2
        assert GREVLEX.key((2, 0)) > GREVLEX.key((1, 1)) > GREVLEX.key((0, 2))

    def test_lex(self):
        assert LEX.key((1, 0, 0)) > LEX.key((0, 5, 5))

    def test_grevlex_vs_lex_differ(self):
        # t1 t2^2 vs t1^2: lex prefers t1^2's larger first exponent,
        # grevlex prefers the higher total degree
        assert LEX.key((2, 0)) > LEX.key((1, 2))
        assert GREVLEX.key((1, 2)) > GREVLEX.key((2, 0))

    def test_position_over_term(self):
        order = ModuleOrder()
        assert order.key((0, (0, 0))) > order.key((1, (5, 5)))

    def test_term_over_position(self):
        order = ModuleOrder(scheme="term-over-position")
        assert order.key((1, (1, 0))) > order.key((0, (0, 0)))

    def test_multiplicative(self):
        rng = random.Random(3)
        from torushom.ring import mono_mul
        for _ in range(50):
            a = tuple(rng.randint(0, 3) for _ in range(3))
            b = tuple(rng.randint(0, 3) for _ in range(3))
            c = tuple(rng.randint(0, 3) for _ in range(3))
            if GREVLEX.key(a) > GREVLEX.key(b):
                assert GREVLEX.key(mono_mul(a, c)) > GREVLEX.key(mono_mul(b, c))


class TestTextForm:
    def test_round_trip(self):
        rng = random.Random(11)
        for rank in (0, 1, 2, 3):
            for _ in range(15):
                p = random_poly(rng, rank)
                assert parse_poly(format_poly(p), rank) == p

    def test_rational_literals(self):
        p = parse_poly("3/2*t1^2*t2 - t2 + 1", 2)
        assert p.terms[(2, 1)] == Fraction(3, 2)
        assert p.terms[(0, 1)] == Fraction(-1)
        assert p.terms[(0, 0)] == Fraction(1)

    def test_zero(self):
        assert parse_poly("0", 2).is_zero()
        assert format_poly(GradedPoly.zero(2)) == "0"

    def test_bad_input(self):
        with pytest.raises(PolyParseError):
            parse_poly("t9", 2)
        with pytest.raises(PolyParseError):
            parse_poly("t1 +", 2)
        with pytest.raises(PolyParseError):
            parse_poly("x1", 2)

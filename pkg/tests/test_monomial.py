import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from simwaring import Monomial, ParseError, HypothesisError, DimensionMismatch
from simwaring import gcd, lcm, min_positions, parse_monomial, render, waring_rank

M1 = Monomial((1, 3, 4, 7))
M2 = Monomial((1, 4, 2, 5))

exponent_vectors = st.integers(1, 5).flatmap(lambda n: st.tuples(*[st.integers(0, 6)] * n))


def divisor_count(m, skip):
    return math.prod(a + 1 for i, a in enumerate(m) if i != skip)


class TestParse:
    def test_paper_monomial(self):
        assert parse_monomial("x0*x1^3*x2^4*x3^7", 4).exponents == (1, 3, 4, 7)

    def test_bracket_constant(self):
        m = parse_monomial("[0,0,0]", 3)
        assert m.degree == 0 and m.nvars == 3

    def test_repeated_variable_adds(self):
        assert parse_monomial("x1^2*x1", 2).exponents == (0, 3)

    def test_unmentioned_variables_are_zero(self):
        assert parse_monomial("x2", 4).exponents == (0, 0, 1, 0)

    def test_infers_nvars(self):
        assert parse_monomial("x0*x3").nvars == 4

    def test_whitespace(self):
        assert parse_monomial(" x0 * x1 ^ 2 ", 2).exponents == (1, 2)

    @pytest.mark.parametrize("text", ["", "y0", "x0**2", "x0^", "x0*", "[1,a]", "[]", "x"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_monomial(text, 3)

    def test_index_out_of_range(self):
        with pytest.raises(ParseError):
            parse_monomial("x3", 3)

    @pytest.mark.parametrize("text", ["x0^-1", "[1,-2]"])
    def test_negative_exponent(self, text):
        with pytest.raises(ParseError):
            parse_monomial(text, 2)

    def test_bracket_length_mismatch(self):
        with pytest.raises(ParseError):
            parse_monomial("[1,2]", 3)

    @given(exponent_vectors)
    def test_round_trip(self, exps):
        m = Monomial(exps)
        assert parse_monomial(render(m), m.nvars) == m

    def test_canonical_render(self):
        assert render(Monomial((1, 0, 2))) == "x0*x2^2"
        assert render(Monomial((0, 0))) == "1"


class TestGcdLcm:
    def test_paper_gcd(self):
        assert gcd(M1, M2) == Monomial((1, 3, 2, 5))

    def test_paper_lcm(self):
        assert lcm(M1, M2) == Monomial((1, 4, 4, 7))

    def test_disjoint_gcd_is_constant(self):
        assert gcd(Monomial((2, 0)), Monomial((0, 2))).is_constant()

    def test_identities(self):
        one = Monomial.constant(4)
        assert gcd(M1, M1) == M1
        assert lcm(M1, one) == M1

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gcd(Monomial((1,)), Monomial((1, 1)))
        with pytest.raises(DimensionMismatch):
            lcm(Monomial((1,)), Monomial((1, 1)))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(*[st.tuples(*[st.integers(0, 5)] * n)] * 3)))
    def test_lattice_laws(self, triple):
        a, b, c = map(Monomial, triple)
        assert gcd(a, b) * lcm(a, b) == a * b
        assert gcd(a, b) == gcd(b, a) and lcm(a, b) == lcm(b, a)
        assert gcd(gcd(a, b), c) == gcd(a, gcd(b, c))
        assert lcm(lcm(a, b), c) == lcm(a, lcm(b, c))
        assert gcd(a, b).divides(a) and gcd(a, b).divides(b)
        assert a.divides(lcm(a, b)) and b.divides(lcm(a, b))


class TestWaringRank:
    def test_binomial_example_monomial(self):
        assert waring_rank(Monomial((1, 1, 1, 2))) == 12

    def test_pure_power(self):
        assert waring_rank(Monomial((5,))) == 1
        assert waring_rank(Monomial((0, 7, 0))) == 1

    def test_example_pair_first_monomial(self):
        # divisors of x1^3 x2^4 x3^7
        assert waring_rank(M1) == 4 * 5 * 8 == 160

    def test_constant_rejected(self):
        with pytest.raises(HypothesisError):
            waring_rank(Monomial((0, 0)))
        with pytest.raises(HypothesisError):
            min_positions(Monomial((0,)))

    def test_big_integers(self):
        m = Monomial((1,) + (1000,) * 40)
        assert waring_rank(m) == 1001**40

    @given(exponent_vectors.filter(lambda e: sum(e) > 0))
    def test_divisor_count_characterisation(self, exps):
        m = Monomial(exps)
        for i in min_positions(m):
            assert waring_rank(m) == divisor_count(m, i)

    @given(st.tuples(*[st.integers(0, 4)] * 4).filter(lambda e: sum(e) > 0))
    def test_permutation_invariance(self, exps):
        ranks = {waring_rank(Monomial(p)) for p in permutations(exps)}
        assert len(ranks) == 1


class TestMinPositions:
    def test_unique_minimum(self):
        assert min_positions(M1) == {0}

    def test_all_equal(self):
        assert min_positions(Monomial((1, 1, 1, 1))) == {0, 1, 2, 3}

    def test_restricted_to_support(self):
        assert min_positions(Monomial((0, 2, 0))) == {1}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle_dense.hpp"
#include "qseries/polyq.hpp"

using namespace qseries;
using namespace qseries::polyq;

namespace {

LaurentPoly qp(long long e) { return LaurentPoly::q_power(HalfInt(e)); }
LaurentPoly up(long long t) { return LaurentPoly::q_power(HalfInt::halves(t)); }
const LaurentPoly& one() { return LaurentPoly::one(); }

LaurentPoly random_poly(std::mt19937& rng, int max_terms, bool half_exponents) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> exp(-6, 6);
    std::uniform_int_distribution<int> coeff(-5, 5);
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        long long ue = half_exponents ? exp(rng) : 2 * exp(rng);
        p += LaurentPoly::monomial(coeff(rng), HalfInt::halves(ue));
    }
    return p;
}

}  // namespace

TEST_CASE("half-integer basics") {
    HalfInt a = 2;
    CHECK(a.twice == 4);
    CHECK(a.is_integer());
    CHECK(a.whole() == 2);
    HalfInt h = HalfInt::halves(3);
    CHECK_FALSE(h.is_integer());
    CHECK(h.str() == "3/2");
    CHECK((-h).str() == "-3/2");
    CHECK((a + h).twice == 7);
    CHECK((a - h).twice == 1);
    CHECK(h.times(4).twice == 12);
    CHECK(HalfInt(0).is_zero());
}

TEST_CASE("construction and canonical invariants") {
    CHECK(LaurentPoly().is_zero());
    CHECK(LaurentPoly::constant(0).is_zero());
    CHECK(one().is_one());
    LaurentPoly p = qp(2) - qp(2);
    CHECK(p.is_zero());
    CHECK(p.terms().empty());

    LaurentPoly m = LaurentPoly::monomial(-3, HalfInt::halves(5));
    CHECK(m.coeff(HalfInt::halves(5)) == -3);
    CHECK(m.min_exp() == m.max_exp());
    CHECK(m.min_exp().twice == 5);
}

TEST_CASE("addition and multiplication agree with the dense oracle") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
        LaurentPoly a = random_poly(rng, 6, true);
        LaurentPoly b = random_poly(rng, 6, true);
        oracle::Dense da = oracle::from_sparse(a), db = oracle::from_sparse(b);
        CHECK(oracle::eq(oracle::add(da, db), a + b));
        CHECK(oracle::eq(oracle::mul(da, db), a * b));
        CHECK(oracle::eq(oracle::neg(da), -a));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng, 4, true);
        LaurentPoly b = random_poly(rng, 4, true);
        LaurentPoly c = random_poly(rng, 4, true);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + LaurentPoly() == a);
        CHECK(a * one() == a);
    }
}

TEST_CASE("binomial square") {
    LaurentPoly p = one() + qp(1);
    LaurentPoly sq = p * p;
    CHECK(sq.coeff(HalfInt(0)) == 1);
    CHECK(sq.coeff(HalfInt(1)) == 2);
    CHECK(sq.coeff(HalfInt(2)) == 1);
    CHECK(sq == p.pow(2));
}

TEST_CASE("hand-expanded product") {
    LaurentPoly p = (one() - qp(4)) * (one() - qp(3));
    CHECK(p == one() - qp(3) - qp(4) + qp(7));
}

TEST_CASE("pow") {
    LaurentPoly p = one() + qp(1);
    CHECK(p.pow(0).is_one());
    CHECK(p.pow(1) == p);
    CHECK(p.pow(5) == p * p * p * p * p);
    CHECK(LaurentPoly().pow(0).is_one());
    CHECK(LaurentPoly().pow(3).is_zero());
    CHECK_THROWS_AS(p.pow(-1), InvalidParameter);
}

TEST_CASE("exact division") {
    CHECK(exact_div(one() - qp(2), one() - qp(1)) == one() + qp(1));
    // (1-q^4)(1-q^3) / ((1-q)(1-q^2)) = [4 2]_q
    LaurentPoly num = (one() - qp(4)) * (one() - qp(3));
    LaurentPoly den = (one() - qp(1)) * (one() - qp(2));
    LaurentPoly g = exact_div(num, den);
    LaurentPoly expect = one() + qp(1) + LaurentPoly::monomial(2, HalfInt(2)) + qp(3) + qp(4);
    CHECK(g == expect);
    CHECK_THROWS_AS(exact_div(one() + qp(1), one() - qp(1)), NonExactDivision);
    CHECK_THROWS_AS(exact_div(one(), LaurentPoly()), DivisionByZero);
    CHECK(exact_div(LaurentPoly(), one() - qp(1)).is_zero());
    // Coefficient non-divisibility.
    CHECK_THROWS_AS(exact_div(one(), LaurentPoly::constant(2)), NonExactDivision);
    // Laurent quotient with negative exponents.
    CHECK(exact_div(one() - qp(1), qp(2)) == up(-4) - up(-2));
}

TEST_CASE("division round-trip property") {
    std::mt19937 rng(99);
    int done = 0;
    while (done < 150) {
        LaurentPoly b = random_poly(rng, 4, true);
        LaurentPoly c = random_poly(rng, 4, true);
        if (b.is_zero()) continue;
        LaurentPoly p = b * c;
        CHECK(exact_div(p, b) == c);
        CHECK(b * exact_div(p, b) == p);
        ++done;
    }
}

TEST_CASE("substitute_q_power") {
    CHECK((one() + qp(1)).substitute_q_power(HalfInt(2)) == one() + qp(2));
    CHECK((one() + qp(1)).substitute_q_power(HalfInt::halves(1)) == one() + up(1));
    LaurentPoly three = one() + qp(1) + qp(2);
    CHECK(three.substitute_q_power(HalfInt(2)) == one() + qp(2) + qp(4));
    CHECK_THROWS_AS(one().substitute_q_power(HalfInt(0)), InvalidParameter);
    // u itself cannot be scaled by 1/2: q^{1/4} is off the lattice.
    CHECK_THROWS_AS(up(1).substitute_q_power(HalfInt::halves(1)), InvalidParameter);

    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        LaurentPoly p = random_poly(rng, 5, false);  // integer q-exponents
        CHECK(p.substitute_q_power(HalfInt(2)).substitute_q_power(HalfInt::halves(1)) == p);
        CHECK(p.substitute_q_power(HalfInt::halves(1)).substitute_q_power(HalfInt(2)) == p);
        CHECK(p.substitute_q_power(HalfInt(-1)).substitute_q_power(HalfInt(-1)) == p);
    }
}

TEST_CASE("eval_at_one is a ring homomorphism") {
    LaurentPoly p = one() + LaurentPoly::monomial(2, HalfInt(1)) + qp(2);
    CHECK(p.eval_at_one() == 4);
    std::mt19937 rng(11);
    for (int i = 0; i < 80; ++i) {
        LaurentPoly a = random_poly(rng, 5, true);
        LaurentPoly b = random_poly(rng, 5, true);
        CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
        CHECK((a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one());
    }
}

TEST_CASE("canonical text form") {
    CHECK(LaurentPoly().str() == "0");
    CHECK(one().str() == "1");
    CHECK(LaurentPoly::constant(-3).str() == "-3");
    CHECK(qp(1).str() == "q");
    CHECK(qp(2).str() == "q^2");
    CHECK(qp(-2).str() == "q^-2");
    CHECK(up(3).str() == "q^(3/2)");
    CHECK(up(-1).str() == "q^(-1/2)");
    CHECK((one() + qp(1)).str() == "1 + q");
    CHECK((one() - qp(1)).str() == "1 - q");
    CHECK((-one() + qp(1)).str() == "-1 + q");
    LaurentPoly p = LaurentPoly::monomial(2, HalfInt(2)) - LaurentPoly::monomial(7, HalfInt::halves(5));
    CHECK(p.str() == "2*q^2 - 7*q^(5/2)");
    LaurentPoly g = one() + qp(1) + LaurentPoly::monomial(2, HalfInt(2)) + qp(3) + qp(4);
    CHECK(g.str() == "1 + q + 2*q^2 + q^3 + q^4");
}

TEST_CASE("json form") {
    CHECK(LaurentPoly().json() == "[]");
    CHECK((one() - qp(1)).json() == "[[0,\"1\"],[2,\"-1\"]]");
    CHECK(up(1).json() == "[[1,\"1\"]]");
}

TEST_CASE("try_invert recognizes unit monomials") {
    CHECK(try_invert(qp(2)).has_value());
    CHECK(*try_invert(qp(2)) == qp(-2));
    CHECK(*try_invert(-up(1)) == -up(-1));
    CHECK_FALSE(try_invert(one() + qp(1)).has_value());
    CHECK_FALSE(try_invert(LaurentPoly::constant(2)).has_value());
    CHECK_FALSE(try_invert(LaurentPoly()).has_value());
}

TEST_CASE("rational functions") {
    RationalFunction half(one(), one() - qp(1));
    CHECK_FALSE(half.is_polynomial());
    // Exact quotients collapse to denominator 1.
    RationalFunction r(one() - qp(2), one() - qp(1));
    CHECK(r.is_polynomial());
    CHECK(r.num() == one() + qp(1));

    // Cross-multiplication equality without reduction.
    RationalFunction a(one() + qp(1), one() - qp(1));
    RationalFunction b((one() + qp(1)) * (one() + qp(2)), (one() - qp(1)) * (one() + qp(2)));
    CHECK(a == b);
    CHECK_FALSE(a == half);

    // Denominator sign normalization.
    RationalFunction s(one(), -one() - qp(1) + qp(3));
    CHECK(s.den().terms().begin()->second > 0);

    RationalFunction sum = half + half;
    CHECK(sum == RationalFunction(LaurentPoly::constant(2), one() - qp(1)));
    RationalFunction prod = a * a;
    CHECK(prod == RationalFunction((one() + qp(1)).pow(2), (one() - qp(1)).pow(2)));
    CHECK((half - half).is_zero());
    CHECK_THROWS_AS(RationalFunction(one(), LaurentPoly()), DivisionByZero);

    CHECK(half.str() == "(1) / (1 - q)");
    CHECK(r.str() == "1 + q");
}

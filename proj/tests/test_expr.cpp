#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/expr.hpp"
#include "qseries/qcore.hpp"
#include "qseries/qpolyx.hpp"

using namespace qseries;
using namespace qseries::cli;
using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;
using qpolyx::XPoly;

namespace {

ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr lit(long long v) {
    Expr e;
    e.kind = ExprKind::integer;
    e.value = v;
    return node(std::move(e));
}

ExprPtr half_lit(long long twice) {
    Expr e;
    e.kind = ExprKind::rational;
    e.half = HalfInt::halves(twice);
    return node(std::move(e));
}

ExprPtr var(char c) {
    Expr e;
    e.kind = ExprKind::variable;
    e.var = c;
    return node(std::move(e));
}

ExprPtr un(ExprKind k, ExprPtr c) {
    Expr e;
    e.kind = k;
    e.kids = {std::move(c)};
    return node(std::move(e));
}

ExprPtr bin(ExprKind k, ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = k;
    e.kids = {std::move(l), std::move(r)};
    return node(std::move(e));
}

ExprPtr pow_node(ExprPtr base, long long twice) {
    Expr e;
    e.kind = ExprKind::power;
    e.half = HalfInt::halves(twice);
    e.kids = {std::move(base)};
    return node(std::move(e));
}

ExprPtr call(std::string name, std::vector<ExprPtr> args) {
    Expr e;
    e.kind = ExprKind::call;
    e.callee = std::move(name);
    e.kids = std::move(args);
    return node(std::move(e));
}

XPoly value(const std::string& src) { return eval_string(src); }

XPoly constant(LaurentPoly c) { return XPoly::constant(std::move(c)); }

// Random well-formed AST; rationals only in call-argument positions.
ExprPtr gen(std::mt19937& rng, int depth) {
    auto pick = [&rng](int n) { return static_cast<int>(rng() % n); };
    if (depth <= 0) {
        switch (pick(4)) {
            case 0: return lit(pick(10));
            case 1: return var('q');
            case 2: return var('u');
            default: return var('x');
        }
    }
    switch (pick(7)) {
        case 0: return bin(ExprKind::add, gen(rng, depth - 1), gen(rng, depth - 1));
        case 1: return bin(ExprKind::sub, gen(rng, depth - 1), gen(rng, depth - 1));
        case 2: return bin(ExprKind::mul, gen(rng, depth - 1), gen(rng, depth - 1));
        case 3: return un(ExprKind::negate, gen(rng, depth - 1));
        case 4: return pow_node(gen(rng, depth - 1), pick(13) - 6);
        case 5: {
            static const std::vector<std::pair<std::string, std::pair<int, int>>> fns{
                {"qint", {1, 2}},  {"qfact", {1, 2}}, {"qbinom", {2, 3}}, {"poch", {4, 4}},
                {"rising", {2, 2}}, {"S", {1, 1}},     {"Stilde", {1, 1}}, {"sigma", {2, 2}},
                {"s", {2, 2}},      {"G", {1, 1}},     {"dq", {1, 1}},
            };
            const auto& [name, arity] = fns[static_cast<std::size_t>(pick(
                static_cast<int>(fns.size())))];
            const int n = arity.first + pick(arity.second - arity.first + 1);
            std::vector<ExprPtr> args;
            for (int i = 0; i < n; ++i) {
                if (pick(4) == 0)
                    args.push_back(half_lit(pick(19) - 9));
                else
                    args.push_back(gen(rng, depth - 1));
            }
            return call(name, std::move(args));
        }
        default: return gen(rng, 0);
    }
}

}  // namespace

TEST_CASE("parse shapes") {
    const ExprPtr c = parse("qbinom(4,2)");
    REQUIRE(c->kind == ExprKind::call);
    CHECK(c->callee == "qbinom");
    REQUIRE(c->kids.size() == 2);
    CHECK(c->kids[0]->kind == ExprKind::integer);
    CHECK(c->kids[0]->value == 4);

    // The exponent rule wins: q^3/2 is q to the three-halves, not a division.
    const ExprPtr m = parse("q^3/2 * (1 + x)");
    REQUIRE(m->kind == ExprKind::mul);
    REQUIRE(m->kids[0]->kind == ExprKind::power);
    CHECK(m->kids[0]->half == HalfInt::halves(3));
    CHECK(m->kids[0]->kids[0]->kind == ExprKind::variable);
    CHECK(m->kids[0]->kids[0]->var == 'q');
    REQUIRE(m->kids[1]->kind == ExprKind::add);
    CHECK(m->kids[1]->kids[1]->var == 'x');

    const ExprPtr h = parse("sigma(3, 1/2)");
    REQUIRE(h->kids.size() == 2);
    CHECK(h->kids[1]->kind == ExprKind::rational);
    CHECK(h->kids[1]->half == HalfInt::halves(1));

    const ExprPtr neg = parse("s(4, -3/2)");
    CHECK(neg->kids[1]->kind == ExprKind::rational);
    CHECK(neg->kids[1]->half == HalfInt::halves(-3));

    const ExprPtr lead = parse("-x + q");
    REQUIRE(lead->kind == ExprKind::add);
    CHECK(lead->kids[0]->kind == ExprKind::negate);

    // Left associativity.
    const ExprPtr chain = parse("1 - 2 - 3");
    REQUIRE(chain->kind == ExprKind::sub);
    CHECK(chain->kids[0]->kind == ExprKind::sub);
    CHECK(chain->kids[1]->value == 3);
}

TEST_CASE("parse errors carry offset and expectation") {
    try {
        parse("qint(2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 6);
        CHECK(e.expected == "')'");
    }
    try {
        parse("qbinom(4)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 0);
        CHECK(e.expected == "2 to 3 arguments for qbinom");
    }
    try {
        parse("3/2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 1);
        CHECK(e.expected == "end of input");
    }
    try {
        parse("foo(1)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 0);
        CHECK(e.expected == "a known function name");
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("y"), ParseError);
    CHECK_THROWS_AS(parse("q^x"), ParseError);
    CHECK_THROWS_AS(parse("q^1/3"), ParseError);
    CHECK_THROWS_AS(parse("1 + "), ParseError);
    CHECK_THROWS_AS(parse("q # x"), ParseError);
    CHECK_THROWS_AS(parse("qint(4)/2"), ParseError);
    CHECK_THROWS_AS(parse("rising(x y, 2)"), ParseError);
}

TEST_CASE("evaluation fixtures") {
    CHECK(value("qbinom(4,2)") == constant(qcore::q_binomial(4, 2)));
    CHECK(value("qbinom(4,2)").str() == "(1 + q + 2*q^2 + q^3 + q^4)");
    CHECK(value("qbinom(4,2)").coeff(0).str() == "1 + q + 2*q^2 + q^3 + q^4");
    CHECK(value("S(2)") == qpolyx::rogers_szego_S(2));
    CHECK(value("dq(x^3)") == qpolyx::q_derivative(value("x^3")));
}

TEST_CASE("dq lowers monomials with q-integer factors") {
    const XPoly d = value("dq(x^3)");
    CHECK(d == XPoly::constant(qcore::q_int(3)) * value("x^2"));
    CHECK(value("dq(qint(7))").degree() == -1);
    CHECK(value("qbinom(3,5)").str() == "0");
    CHECK(value("qbinom(3,5)").degree() == -1);
}

TEST_CASE("variables and powers") {
    CHECK(value("u^2") == value("q"));
    CHECK(value("u*u") == value("q"));
    CHECK(value("q^-2 * q^2") == XPoly::one());
    CHECK(value("x^0") == XPoly::one());
    CHECK(value("q^3/2") == constant(LaurentPoly::q_power(HalfInt::halves(3))));
    CHECK(value("u^3") == constant(LaurentPoly::q_power(HalfInt::halves(3))));
    CHECK(value("q^3/2 * (1 + x)") ==
          (XPoly::one() + XPoly::x()) * LaurentPoly::q_power(HalfInt::halves(3)));
    CHECK(value("(1 + x)^2") == value("1 + 2*x + x^2"));
    CHECK(value("-x + x").degree() == -1);
    CHECK(value("2*3") == constant(LaurentPoly::constant(BigInt(6))));
    CHECK(value("(-q)^2") == value("q^2"));
    CHECK(value("(-q)^-3") == constant(LaurentPoly::monomial(BigInt(-1), HalfInt(-3))));
}

TEST_CASE("function calls mirror the library") {
    CHECK(value("qint(3,2)") == constant(qcore::q_int(3, qcore::BaseStep::q2())));
    CHECK(value("qfact(4)") == constant(qcore::q_factorial(4)));
    CHECK(value("qbinom(5,2,2)") ==
          constant(qcore::q_binomial(5, 2, qcore::BaseStep::q2())));
    CHECK(value("poch(-1, 1/2, 1/2, 3)") ==
          constant(qcore::poch(-1, HalfInt::halves(1), HalfInt::halves(1), 3)));
    CHECK(value("poch(1, 1, 2, 4)") == constant(qcore::poch(1, HalfInt(1), HalfInt(2), 4)));
    CHECK(value("rising(1 + q, 2)") ==
          qpolyx::rising_x(LaurentPoly::one() + LaurentPoly::q_power(HalfInt(1)), 2));
    CHECK(value("Stilde(4)") == qpolyx::closed_form_S_tilde(4));
    CHECK(value("sigma(3, 1)") == constant(qcore::sigma(3, HalfInt(1))));
    CHECK(value("sigma(3, 1/2)") == constant(qcore::sigma(3, HalfInt::halves(1))));
    CHECK(value("s(4, 1/2)") == constant(qcore::s_sum(4, HalfInt::halves(1))));
    CHECK(value("G(3)") == constant(qcore::gauss_G(3)));
    CHECK(value("qint(3)") == value("1 + q + q^2"));
}

TEST_CASE("evaluation errors") {
    CHECK_THROWS_AS(value("x^-1"), EvalError);
    CHECK_THROWS_AS(value("(1 + q)^-1"), EvalError);
    CHECK_THROWS_AS(value("u^1/2"), EvalError);
    CHECK_THROWS_AS(value("(-q)^1/2"), EvalError);
    CHECK_THROWS_AS(value("qint(q)"), EvalError);
    CHECK_THROWS_AS(value("qint(2, 0)"), EvalError);
    CHECK_THROWS_AS(value("rising(x, 2)"), EvalError);
    CHECK_THROWS_AS(value("sigma(3, x)"), EvalError);
    CHECK_THROWS_AS(value("poch(2, 1, 1, 1)"), EvalError);
    CHECK_THROWS_AS(value("S(-1)"), EvalError);
    CHECK_THROWS_AS(value("dq(3/2)"), EvalError);
    CHECK_THROWS_AS(value("qint(3/2)"), EvalError);
}

TEST_CASE("printer is stable on the documented fixture") {
    CHECK(print(*parse("q^3/2 * (1 + x)")) == "q^3/2 * (1 + x)");
    CHECK(print(*parse("qbinom( 4 , 2 )")) == "qbinom(4, 2)");
    CHECK(print(*parse("-x + q")) == "-x + q");
    CHECK(print(*parse("1 - (2 - 3)")) == "1 - (2 - 3)");
    CHECK(print(*parse("sigma(3, 1/2)")) == "sigma(3, 1/2)");
    CHECK(print(*parse("q^-2")) == "q^-2");
    CHECK(print(*parse("q^-3/2")) == "q^-3/2");
}

TEST_CASE("latex rendering") {
    CHECK(to_latex(*parse("qbinom(4,2)")) ==
          "\\begin{bmatrix} 4 \\\\ 2 \\end{bmatrix}");
    CHECK(to_latex(*parse("qbinom(4,2,2)")) ==
          "\\begin{bmatrix} 4 \\\\ 2 \\end{bmatrix}_{q^{2}}");
    CHECK(to_latex(*parse("qint(5)")) == "[5]");
    CHECK(to_latex(*parse("qfact(3)")) == "[3]!");
    CHECK(to_latex(*parse("s(4, 1/2)")) == "s_{4|\\tfrac{1}{2}}");
    CHECK(to_latex(*parse("S(3)")) == "S_{3}(x)");
    CHECK(to_latex(*parse("Stilde(3)")) == "\\tilde{S}_{3}(x)");
    CHECK(to_latex(*parse("poch(-1, 1, 1, 4)")) == "(-q^{1}; q^{1})_{4}");
    CHECK(to_latex(*parse("q^3/2")) == "q^{3/2}");
    CHECK(to_latex(*parse("2 * x")) == "2 \\cdot x");
    CHECK(to_latex(*parse("dq(x^2)")) ==
          "\\frac{d}{d_{q}x}\\!\\left(x^{2}\\right)");
    CHECK(to_latex(*parse("(1 + x) * q")) == "\\left(1 + x\\right) \\cdot q");
}

TEST_CASE("print-parse fixpoint on random expressions") {
    std::mt19937 rng(20260822u);
    for (int trial = 0; trial < 200; ++trial) {
        const ExprPtr ast = gen(rng, 4);
        const std::string text = print(*ast);
        CAPTURE(text);
        const ExprPtr back = parse(text);
        CHECK(equal(*ast, *back));
        CHECK(print(*back) == text);
    }
}

TEST_CASE("evaluation is stable under print round-trips") {
    for (const char* src : {"qbinom(4,2)", "q^3/2 * (1 + x)", "S(3) - Stilde(3)",
                            "dq(rising(-1, 4))", "poch(-1, 1/2, 1/2, 5)",
                            "-x * qint(2) + G(2)"}) {
        const ExprPtr ast = parse(src);
        CHECK(value(src) == eval(*parse(print(*ast))));
    }
}

#include "qseries/expr.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/qcore.hpp"

namespace qseries::cli {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;
using qpolyx::XPoly;

namespace {

// ------------------------------------------------------------------- tokens

enum class Tok { integer, ident, plus, minus, star, caret, slash, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset = 0;
    long long value = 0;  // integer tokens
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            const std::string text = src.substr(start, i - start);
            Token t{Tok::integer, text, start, 0};
            try {
                t.value = std::stoll(text);
            } catch (const std::exception&) {
                throw ParseError(start, "integer small enough to represent");
            }
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < src.size() &&
                   std::isalnum(static_cast<unsigned char>(src[i])))
                ++i;
            out.push_back({Tok::ident, src.substr(start, i - start), start, 0});
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '^': k = Tok::caret; break;
            case '/': k = Tok::slash; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case ',': k = Tok::comma; break;
            default: throw ParseError(i, "a valid token");
        }
        out.push_back({k, std::string(1, c), i, 0});
        ++i;
    }
    out.push_back({Tok::end, "", src.size(), 0});
    return out;
}

// ---------------------------------------------------------------- functions

struct FnSig {
    std::size_t min_args;
    std::size_t max_args;
};

const std::map<std::string, FnSig>& fn_table() {
    static const std::map<std::string, FnSig> table{
        {"qint", {1, 2}},  {"qfact", {1, 2}}, {"qbinom", {2, 3}}, {"poch", {4, 4}},
        {"rising", {2, 2}}, {"S", {1, 1}},     {"Stilde", {1, 1}}, {"sigma", {2, 2}},
        {"s", {2, 2}},      {"G", {1, 1}},     {"dq", {1, 1}},
    };
    return table;
}

// ------------------------------------------------------------------ builder

ExprPtr mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr mk_int(long long v) {
    Expr e;
    e.kind = ExprKind::integer;
    e.value = v;
    return mk(std::move(e));
}

ExprPtr mk_rational(HalfInt h) {
    Expr e;
    e.kind = ExprKind::rational;
    e.half = h;
    return mk(std::move(e));
}

ExprPtr mk2(ExprKind k, ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = k;
    e.kids = {std::move(l), std::move(r)};
    return mk(std::move(e));
}

// ------------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    ExprPtr run() {
        ExprPtr e = expr();
        if (!at(Tok::end)) throw ParseError(peek().offset, "end of input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) throw ParseError(peek().offset, what);
        return take();
    }

    ExprPtr expr() {
        const bool neg = accept(Tok::minus);
        ExprPtr e = term();
        if (neg) {
            Expr n;
            n.kind = ExprKind::negate;
            n.kids = {std::move(e)};
            e = mk(std::move(n));
        }
        while (at(Tok::plus) || at(Tok::minus)) {
            const ExprKind k = take().kind == Tok::plus ? ExprKind::add : ExprKind::sub;
            e = mk2(k, std::move(e), term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (accept(Tok::star)) e = mk2(ExprKind::mul, std::move(e), factor());
        return e;
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        if (!accept(Tok::caret)) return base;
        Expr p;
        p.kind = ExprKind::power;
        p.half = exponent();
        p.kids = {std::move(base)};
        return mk(std::move(p));
    }

    HalfInt exponent() {
        const bool neg = accept(Tok::minus);
        const Token& n = expect(Tok::integer, "an integer exponent");
        long long num = neg ? -n.value : n.value;
        if (accept(Tok::slash)) {
            const Token& d = expect(Tok::integer, "'2'");
            if (d.text != "2") throw ParseError(d.offset, "'2'");
            return HalfInt::halves(num);
        }
        return HalfInt(num);
    }

    ExprPtr atom() {
        if (at(Tok::integer)) return mk_int(take().value);
        if (accept(Tok::lparen)) {
            ExprPtr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (at(Tok::ident)) {
            const Token& id = take();
            if (at(Tok::lparen)) return call(id);
            if (id.text == "q" || id.text == "u" || id.text == "x") {
                Expr v;
                v.kind = ExprKind::variable;
                v.var = id.text[0];
                return mk(std::move(v));
            }
            throw ParseError(id.offset, "variable q, u, x, or a function call");
        }
        throw ParseError(peek().offset, "an integer, a variable, a function call, or '('");
    }

    ExprPtr call(const Token& name) {
        const auto it = fn_table().find(name.text);
        if (it == fn_table().end()) throw ParseError(name.offset, "a known function name");
        expect(Tok::lparen, "'('");
        std::vector<ExprPtr> args;
        if (!at(Tok::rparen)) {
            args.push_back(argument());
            while (accept(Tok::comma)) args.push_back(argument());
        }
        expect(Tok::rparen, "')'");
        if (args.size() < it->second.min_args || args.size() > it->second.max_args) {
            std::string want = std::to_string(it->second.min_args);
            if (it->second.max_args != it->second.min_args)
                want += " to " + std::to_string(it->second.max_args);
            throw ParseError(name.offset, want + " arguments for " + name.text);
        }
        Expr c;
        c.kind = ExprKind::call;
        c.callee = name.text;
        c.kids = std::move(args);
        return mk(std::move(c));
    }

    // An argument is an expression, except that a bare (possibly negated)
    // integer may continue "/2" into a half-integer literal.
    ExprPtr argument() {
        ExprPtr e = expr();
        if (!at(Tok::slash)) return e;
        long long num = 0;
        if (e->kind == ExprKind::integer) {
            num = e->value;
        } else if (e->kind == ExprKind::negate && e->kids[0]->kind == ExprKind::integer) {
            num = -e->kids[0]->value;
        } else {
            throw ParseError(peek().offset, "',' or ')'");
        }
        take();  // '/'
        const Token& d = expect(Tok::integer, "'2'");
        if (d.text != "2") throw ParseError(d.offset, "'2'");
        return mk_rational(HalfInt::halves(num));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------------ printer

// Grammar levels: additive 0, multiplicative 1, power 2, atoms 3. A leading
// minus parses only at the head of an expression, so negate sits at level 0.
int level(ExprKind k) {
    switch (k) {
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::negate: return 0;
        case ExprKind::mul: return 1;
        case ExprKind::power: return 2;
        default: return 3;
    }
}

std::string exponent_text(HalfInt h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

std::string pr(const Expr& e, int need) {
    if (level(e.kind) < need) return "(" + pr(e, 0) + ")";
    switch (e.kind) {
        case ExprKind::integer: return std::to_string(e.value);
        case ExprKind::rational: return std::to_string(e.half.twice) + "/2";
        case ExprKind::variable: return std::string(1, e.var);
        case ExprKind::negate: return "-" + pr(*e.kids[0], 1);
        case ExprKind::add: return pr(*e.kids[0], 0) + " + " + pr(*e.kids[1], 1);
        case ExprKind::sub: return pr(*e.kids[0], 0) + " - " + pr(*e.kids[1], 1);
        case ExprKind::mul: return pr(*e.kids[0], 1) + " * " + pr(*e.kids[1], 2);
        case ExprKind::power: return pr(*e.kids[0], 3) + "^" + exponent_text(e.half);
        case ExprKind::call: {
            std::string out = e.callee + "(";
            for (std::size_t i = 0; i < e.kids.size(); ++i) {
                if (i > 0) out += ", ";
                out += pr(*e.kids[i], 0);
            }
            return out + ")";
        }
    }
    return "";
}

// -------------------------------------------------------------------- latex

std::string tex(const Expr& e, int need);

std::string tex_sub(const Expr& e) { return tex(e, 0); }

std::string tex_exponent(HalfInt h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

// Optional base argument of qint/qfact/qbinom as a subscript.
std::string tex_base(const std::vector<ExprPtr>& kids, std::size_t base_at) {
    if (kids.size() <= base_at) return "";
    const Expr& b = *kids[base_at];
    if (b.kind == ExprKind::integer && b.value == 1) return "";
    return "_{q^{" + tex_sub(b) + "}}";
}

std::string tex_call(const Expr& e) {
    const auto& a = e.kids;
    if (e.callee == "qint") return "[" + tex_sub(*a[0]) + "]" + tex_base(a, 1);
    if (e.callee == "qfact") return "[" + tex_sub(*a[0]) + "]!" + tex_base(a, 1);
    if (e.callee == "qbinom")
        return "\\begin{bmatrix} " + tex_sub(*a[0]) + " \\\\ " + tex_sub(*a[1]) +
               " \\end{bmatrix}" + tex_base(a, 2);
    if (e.callee == "poch") {
        std::string sign;
        if (a[0]->kind == ExprKind::negate && a[0]->kids[0]->kind == ExprKind::integer &&
            a[0]->kids[0]->value == 1)
            sign = "-";
        else if (!(a[0]->kind == ExprKind::integer && a[0]->value == 1))
            sign = tex_sub(*a[0]) + " \\cdot ";
        return "(" + sign + "q^{" + tex_sub(*a[1]) + "}; q^{" + tex_sub(*a[2]) + "})_{" +
               tex_sub(*a[3]) + "}";
    }
    if (e.callee == "rising")
        return "(x \\dotplus " + tex_sub(*a[0]) + ")^{" + tex_sub(*a[1]) + "}";
    if (e.callee == "S") return "S_{" + tex_sub(*a[0]) + "}(x)";
    if (e.callee == "Stilde") return "\\tilde{S}_{" + tex_sub(*a[0]) + "}(x)";
    if (e.callee == "sigma") return "\\sigma_{" + tex_sub(*a[0]) + "}(" + tex_sub(*a[1]) + ")";
    if (e.callee == "s") return "s_{" + tex_sub(*a[0]) + "|" + tex_sub(*a[1]) + "}";
    if (e.callee == "G") return "G_{" + tex_sub(*a[0]) + "}";
    if (e.callee == "dq")
        return "\\frac{d}{d_{q}x}\\!\\left(" + tex_sub(*a[0]) + "\\right)";
    return e.callee;
}

std::string tex(const Expr& e, int need) {
    if (level(e.kind) < need) return "\\left(" + tex(e, 0) + "\\right)";
    switch (e.kind) {
        case ExprKind::integer: return std::to_string(e.value);
        case ExprKind::rational: return "\\tfrac{" + std::to_string(e.half.twice) + "}{2}";
        case ExprKind::variable: return std::string(1, e.var);
        case ExprKind::negate: return "-" + tex(*e.kids[0], 1);
        case ExprKind::add: return tex(*e.kids[0], 0) + " + " + tex(*e.kids[1], 1);
        case ExprKind::sub: return tex(*e.kids[0], 0) + " - " + tex(*e.kids[1], 1);
        case ExprKind::mul: return tex(*e.kids[0], 1) + " \\cdot " + tex(*e.kids[1], 2);
        case ExprKind::power:
            return tex(*e.kids[0], 3) + "^{" + tex_exponent(e.half) + "}";
        case ExprKind::call: return tex_call(e);
    }
    return "";
}

// ---------------------------------------------------------------- evaluator

XPoly ev(const Expr& e);

LaurentPoly scalar_of(const Expr& e, const std::string& what) {
    const XPoly v = ev(e);
    if (v.degree() > 0)
        throw EvalError(what + ": expected a scalar, got a polynomial in x");
    return v.degree() < 0 ? LaurentPoly::zero() : v.coeff(0);
}

long long to_int(const Expr& e, const std::string& what) {
    if (e.kind == ExprKind::rational) {
        if (!e.half.is_integer()) throw EvalError(what + ": integer argument required");
        return e.half.whole();
    }
    const LaurentPoly c = scalar_of(e, what);
    if (c.is_zero()) return 0;
    const BigInt v = c.coeff(HalfInt(0));
    if (!(LaurentPoly::constant(v) == c))
        throw EvalError(what + ": integer argument required");
    try {
        return v.convert_to<long long>();
    } catch (const std::exception&) {
        throw EvalError(what + ": integer argument out of range");
    }
}

HalfInt to_half(const Expr& e, const std::string& what) {
    if (e.kind == ExprKind::rational) return e.half;
    return HalfInt(to_int(e, what));
}

qcore::BaseStep base_arg(const std::vector<ExprPtr>& kids, std::size_t at,
                         const std::string& what) {
    if (kids.size() <= at) return qcore::BaseStep::q();
    const HalfInt h = to_half(*kids[at], what);
    if (h.is_zero()) throw EvalError(what + ": base exponent must be nonzero");
    return qcore::BaseStep(h);
}

XPoly ev_power(const Expr& e) {
    const HalfInt r = e.half;
    if (r.is_integer() && r.whole() >= 0) {
        const XPoly base = ev(*e.kids[0]);
        XPoly out = XPoly::one();
        for (long long i = 0; i < r.whole(); ++i) out *= base;
        return out;
    }
    const LaurentPoly c = scalar_of(*e.kids[0], "power");
    if (!c.is_monomial())
        throw EvalError("power: negative or half-integer exponent needs a monomial base");
    const auto& [ue, coeff] = *c.terms().begin();
    if ((ue * r.twice) % 2 != 0)
        throw EvalError("power: result leaves the half-exponent lattice");
    const HalfInt scaled = HalfInt::halves(ue * r.twice / 2);
    BigInt out_coeff(1);
    if (coeff == -1) {
        if (!r.is_integer())
            throw EvalError("power: half-integer exponent of a negative monomial");
        if (r.whole() % 2 != 0) out_coeff = -1;
    } else if (!(coeff == 1)) {
        throw EvalError("power: negative or half-integer exponent needs a unit coefficient");
    }
    return XPoly::constant(LaurentPoly::monomial(out_coeff, scaled));
}

XPoly ev_call(const Expr& e) {
    const auto& a = e.kids;
    if (e.callee == "qint")
        return XPoly::constant(qcore::q_int(to_int(*a[0], "qint"), base_arg(a, 1, "qint")));
    if (e.callee == "qfact")
        return XPoly::constant(
            qcore::q_factorial(to_int(*a[0], "qfact"), base_arg(a, 1, "qfact")));
    if (e.callee == "qbinom")
        return XPoly::constant(qcore::q_binomial(to_int(*a[0], "qbinom"),
                                                 to_int(*a[1], "qbinom"),
                                                 base_arg(a, 2, "qbinom")));
    if (e.callee == "poch") {
        const long long sign = to_int(*a[0], "poch");
        if (sign != 1 && sign != -1) throw EvalError("poch: sign must be 1 or -1");
        return XPoly::constant(qcore::poch(static_cast<int>(sign), to_half(*a[1], "poch"),
                                           to_half(*a[2], "poch"), to_int(*a[3], "poch")));
    }
    if (e.callee == "rising")
        return qpolyx::rising_x(scalar_of(*a[0], "rising"), to_int(*a[1], "rising"));
    if (e.callee == "S") return qpolyx::rogers_szego_S(to_int(*a[0], "S"));
    if (e.callee == "Stilde") return qpolyx::closed_form_S_tilde(to_int(*a[0], "Stilde"));
    if (e.callee == "sigma")
        return XPoly::constant(
            qcore::sigma(to_int(*a[0], "sigma"), to_half(*a[1], "sigma")));
    if (e.callee == "s")
        return XPoly::constant(qcore::s_sum(to_int(*a[0], "s"), to_half(*a[1], "s")));
    if (e.callee == "G") return XPoly::constant(qcore::gauss_G(to_int(*a[0], "G")));
    if (e.callee == "dq") return qpolyx::q_derivative(ev(*a[0]));
    throw EvalError("unknown function: " + e.callee);
}

XPoly ev(const Expr& e) {
    switch (e.kind) {
        case ExprKind::integer:
            return XPoly::constant(LaurentPoly::constant(BigInt(e.value)));
        case ExprKind::rational:
            throw EvalError("half-integer literal is only valid as a function argument");
        case ExprKind::variable:
            if (e.var == 'q') return XPoly::constant(LaurentPoly::q_power(HalfInt(1)));
            if (e.var == 'u')
                return XPoly::constant(LaurentPoly::q_power(HalfInt::halves(1)));
            return XPoly::x();
        case ExprKind::negate: return -ev(*e.kids[0]);
        case ExprKind::add: return ev(*e.kids[0]) + ev(*e.kids[1]);
        case ExprKind::sub: return ev(*e.kids[0]) - ev(*e.kids[1]);
        case ExprKind::mul: return ev(*e.kids[0]) * ev(*e.kids[1]);
        case ExprKind::power: return ev_power(e);
        case ExprKind::call: return ev_call(e);
    }
    throw EvalError("malformed expression node");
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
        case ExprKind::integer:
            if (a.value != b.value) return false;
            break;
        case ExprKind::rational:
        case ExprKind::power:
            if (!(a.half == b.half)) return false;
            break;
        case ExprKind::variable:
            if (a.var != b.var) return false;
            break;
        case ExprKind::call:
            if (a.callee != b.callee) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

ExprPtr parse(const std::string& src) { return Parser(src).run(); }

std::string print(const Expr& e) { return pr(e, 0); }

std::string to_latex(const Expr& e) { return tex(e, 0); }

XPoly eval(const Expr& e) {
    try {
        return ev(e);
    } catch (const EvalError&) {
        throw;
    } catch (const Error& err) {
        throw EvalError(err.what());
    }
}

XPoly eval_string(const std::string& src) { return eval(*parse(src)); }

}  // namespace qseries::cli

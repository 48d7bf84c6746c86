#include "qseries/polyq.hpp"

#include <sstream>

namespace qseries::polyq {

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(whole());
    return std::to_string(twice) + "/2";
}

LaurentPoly LaurentPoly::constant(BigInt c) {
    LaurentPoly p;
    p.set(0, std::move(c));
    return p;
}

LaurentPoly LaurentPoly::q_power(HalfInt e) {
    LaurentPoly p;
    p.set(e.twice, 1);
    return p;
}

LaurentPoly LaurentPoly::monomial(BigInt c, HalfInt e) {
    LaurentPoly p;
    p.set(e.twice, std::move(c));
    return p;
}

const LaurentPoly& LaurentPoly::zero() {
    static const LaurentPoly z;
    return z;
}

const LaurentPoly& LaurentPoly::one() {
    static const LaurentPoly o = constant(1);
    return o;
}

bool LaurentPoly::is_one() const {
    return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second == 1;
}

BigInt LaurentPoly::coeff(HalfInt e) const {
    auto it = t_.find(e.twice);
    return it == t_.end() ? BigInt(0) : it->second;
}

HalfInt LaurentPoly::min_exp() const {
    if (t_.empty()) throw InvalidParameter("min_exp of zero polynomial");
    return HalfInt::halves(t_.begin()->first);
}

HalfInt LaurentPoly::max_exp() const {
    if (t_.empty()) throw InvalidParameter("max_exp of zero polynomial");
    return HalfInt::halves(t_.rbegin()->first);
}

void LaurentPoly::set(long long ue, BigInt c) {
    if (c == 0)
        t_.erase(ue);
    else
        t_[ue] = std::move(c);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.t_) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.t_) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r += b;
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    r -= b;
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.t_) {
        for (const auto& [eb, cb] : b.t_) {
            auto it = r.t_.find(ea + eb);
            if (it == r.t_.end()) {
                r.t_.emplace(ea + eb, ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.t_.erase(it);
            }
        }
    }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const BigInt& s) {
    LaurentPoly r;
    if (s == 0) return r;
    for (const auto& [e, c] : a.t_) r.t_.emplace(e, c * s);
    return r;
}

LaurentPoly LaurentPoly::pow(long long e) const {
    if (e < 0) throw InvalidParameter("negative power exponent " + std::to_string(e));
    LaurentPoly base = *this, r = one();
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

LaurentPoly LaurentPoly::substitute_q_power(HalfInt r) const {
    if (r.is_zero()) throw InvalidParameter("substitute_q_power with r = 0");
    LaurentPoly out;
    for (const auto& [ue, c] : t_) {
        long long scaled2 = ue * r.twice;  // twice the new u-exponent
        if (scaled2 % 2 != 0)
            throw InvalidParameter("substitute_q_power: exponent " + HalfInt::halves(ue).str() +
                                   " scaled by " + r.str() + " leaves the half lattice");
        out.t_.emplace(scaled2 / 2, c);
    }
    return out;
}

BigInt LaurentPoly::eval_at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : t_) s += c;
    return s;
}

namespace {

std::string power_text(long long ue) {
    if (ue == 0) return "";
    if (ue % 2 == 0) {
        long long e = ue / 2;
        if (e == 1) return "q";
        return "q^" + std::to_string(e);
    }
    return "q^(" + std::to_string(ue) + "/2)";
}

}  // namespace

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [ue, c] : t_) {
        const bool neg = c < 0;
        BigInt mag = neg ? BigInt(-c) : c;
        std::string pw = power_text(ue);
        std::string term;
        if (pw.empty())
            term = mag.str();
        else if (mag == 1)
            term = pw;
        else
            term = mag.str() + "*" + pw;
        if (first) {
            out = neg ? "-" + term : term;
            first = false;
        } else {
            out += neg ? " - " : " + ";
            out += term;
        }
    }
    return out;
}

std::string LaurentPoly::json() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [ue, c] : t_) {
        if (!first) out += ",";
        first = false;
        out += "[" + std::to_string(ue) + ",\"" + c.str() + "\"]";
    }
    return out + "]";
}

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw DivisionByZero("exact_div by zero polynomial");
    if (a.is_zero()) return LaurentPoly();
    // Ascending elimination: cancel the lowest term of the remainder at each
    // step.  Quotient exponents strictly increase, and a step that would push
    // the product's top exponent above the remainder's cannot be repaired by
    // later steps, so it proves non-divisibility.
    LaurentPoly rem = a;
    const long long bmin = b.min_exp().twice;
    const long long bmax = b.max_exp().twice;
    const BigInt& bc = b.terms().begin()->second;
    LaurentPoly quot;
    while (!rem.is_zero()) {
        const long long rmin = rem.min_exp().twice;
        const long long rmax = rem.max_exp().twice;
        const BigInt rc = rem.terms().begin()->second;
        if (rc % bc != 0) return std::nullopt;
        const long long te = rmin - bmin;
        if (te + bmax > rmax) return std::nullopt;
        LaurentPoly t = LaurentPoly::monomial(rc / bc, HalfInt::halves(te));
        quot += t;
        rem -= t * b;
    }
    return quot;
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    auto q = try_exact_div(a, b);
    if (!q)
        throw NonExactDivision("(" + a.str() + ") is not divisible by (" + b.str() + ")");
    return *q;
}

std::optional<LaurentPoly> try_invert(const LaurentPoly& p) {
    if (!p.is_monomial()) return std::nullopt;
    const auto& [ue, c] = *p.terms().begin();
    if (c != 1 && c != -1) return std::nullopt;
    return LaurentPoly::monomial(c, HalfInt::halves(-ue));
}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void RationalFunction::normalize() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = LaurentPoly::one();
        return;
    }
    if (auto q = try_exact_div(num_, den_)) {
        num_ = std::move(*q);
        den_ = LaurentPoly::one();
        return;
    }
    if (den_.terms().begin()->second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunction::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace qseries::polyq

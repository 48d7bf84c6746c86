#include "qseries/qpolyx.hpp"

#include <sstream>
#include <utility>

#include "qseries/errors.hpp"

namespace qseries::qpolyx {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidParameter(msg);
}

LaurentPoly q_pow_u(long long twice) { return LaurentPoly::q_power(HalfInt::halves(twice)); }

}  // namespace

XPoly::XPoly(std::vector<LaurentPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void XPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly XPoly::constant(LaurentPoly c) {
    XPoly f;
    f.c_.push_back(std::move(c));
    f.trim();
    return f;
}

const XPoly& XPoly::zero() {
    static const XPoly z;
    return z;
}

const XPoly& XPoly::one() {
    static const XPoly o = XPoly::constant(LaurentPoly::one());
    return o;
}

const XPoly& XPoly::x() {
    static const XPoly v{std::vector<LaurentPoly>{LaurentPoly::zero(), LaurentPoly::one()}};
    return v;
}

LaurentPoly XPoly::coeff(long long d) const {
    if (d < 0 || d >= static_cast<long long>(c_.size())) return LaurentPoly::zero();
    return c_[static_cast<std::size_t>(d)];
}

XPoly XPoly::operator+(const XPoly& o) const {
    XPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.trim();
    return r;
}

XPoly XPoly::operator-(const XPoly& o) const { return *this + (-o); }

XPoly XPoly::operator-() const {
    XPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

XPoly XPoly::operator*(const XPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    XPoly r;
    r.c_.resize(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

XPoly XPoly::operator*(const LaurentPoly& s) const {
    XPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

XPoly XPoly::operator*(const BigInt& s) const {
    XPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
}

XPoly XPoly::scale_arg(HalfInt r) const {
    XPoly f = *this;
    for (std::size_t d = 0; d < f.c_.size(); ++d)
        f.c_[d] *= LaurentPoly::q_power(r.times(static_cast<long long>(d)));
    return f;
}

LaurentPoly XPoly::eval(const LaurentPoly& v) const {
    LaurentPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
}

std::string XPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t d = 0; d < c_.size(); ++d) {
        if (c_[d].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << c_[d].str() << ")";
        if (d == 1)
            out << "*x";
        else if (d >= 2)
            out << "*x^" << d;
    }
    return out.str();
}

XPoly q_derivative(const XPoly& f) {
    if (f.degree() <= 0) return XPoly::zero();
    std::vector<LaurentPoly> c(static_cast<std::size_t>(f.degree()));
    for (long long n = 1; n <= f.degree(); ++n)
        c[static_cast<std::size_t>(n - 1)] = qcore::q_int(n) * f.coeff(n);
    return XPoly(std::move(c));
}

XPoly op_O(const XPoly& f) { return XPoly::x() * f - f.scale_arg(HalfInt(1)); }

XPoly rising_x(const LaurentPoly& v, long long l) {
    require(l >= 0, "rising_x: negative length");
    XPoly r = XPoly::one();
    for (long long k = 0; k < l; ++k)
        r *= XPoly::x() + XPoly::constant(LaurentPoly::q_power(HalfInt(k)) * v);
    return r;
}

XPoly rogers_szego_S(long long N) {
    require(N >= 0, "rogers_szego_S: negative index");
    std::vector<LaurentPoly> c(static_cast<std::size_t>(N + 1));
    for (long long l = 0; l <= N; ++l) {
        LaurentPoly term = qcore::q_binomial(N, l);
        if ((N - l) % 2 != 0) term = -term;
        c[static_cast<std::size_t>(l)] = std::move(term);
    }
    return XPoly(std::move(c));
}

XPoly closed_form_S_tilde(long long N) {
    require(N >= 0, "closed_form_S_tilde: negative index");
    // Rising powers (x - 1)^m built incrementally: multiply by (x - q^m).
    std::vector<XPoly> pw(static_cast<std::size_t>(N + 1));
    pw[0] = XPoly::one();
    for (long long m = 0; m < N; ++m)
        pw[static_cast<std::size_t>(m + 1)] =
            pw[static_cast<std::size_t>(m)] *
            (XPoly::x() - XPoly::constant(LaurentPoly::q_power(HalfInt(m))));
    XPoly sum;
    for (long long k = 0; k <= N / 2; ++k)
        sum += pw[static_cast<std::size_t>(N - 2 * k)] * e_coeff(N, k);
    return sum;
}

LaurentPoly e_coeff(long long N, long long k) {
    require(N >= 0, "e_coeff: negative index");
    if (k < 0 || k > N / 2) return LaurentPoly::zero();
    const long long eps = EpsilonParity(N).value;
    return qcore::q_binomial(N / 2, k, qcore::BaseStep::q2()) *
           qcore::poch(1, HalfInt(N - eps), HalfInt(-2), k);
}

std::vector<LaurentPoly> q_taylor(const XPoly& f, const LaurentPoly& a) {
    std::vector<LaurentPoly> c;
    c.reserve(static_cast<std::size_t>(std::max<long long>(f.degree() + 1, 1)));
    XPoly g = f;
    LaurentPoly k_fact = LaurentPoly::one();
    for (long long k = 0;; ++k) {
        if (k > 0) {
            k_fact *= qcore::q_int(k);
            g = q_derivative(g);
        }
        if (g.is_zero() && k > 0) break;
        c.push_back(polyq::exact_div(g.eval(a), k_fact));
        if (g.is_zero()) break;
    }
    return c;
}

bool monomial_expansion_check(long long n, const LaurentPoly& a, const LaurentPoly& b) {
    require(n >= 0, "monomial_expansion_check: negative exponent");
    XPoly direct;
    {
        std::vector<LaurentPoly> c(static_cast<std::size_t>(n + 1));
        c.back() = LaurentPoly::one();
        direct = XPoly(std::move(c));
    }
    XPoly around_a;
    XPoly lhs_b;
    XPoly rhs_b;
    for (long long k = 0; k <= n; ++k) {
        const LaurentPoly bin = qcore::q_binomial(n, k);
        const LaurentPoly a_pow = a.pow(n - k);
        around_a += rising_x(-a, k) * (bin * a_pow);
        lhs_b += rising_x(b, k) * (bin * a_pow);
        // Scalar rising product (a + q^j b), j < k, times x^{n-k}.
        std::vector<LaurentPoly> mono(static_cast<std::size_t>(n - k) + 1);
        mono.back() = bin * qcore::rising(a, b, k);
        rhs_b += XPoly(std::move(mono));
    }
    return around_a == direct && lhs_b == rhs_b;
}

XPoly P_N(long long N, long long alpha2) {
    require(N >= 0, "P_N: negative index");
    require(alpha2 >= 0, "P_N: negative alpha");
    std::vector<LaurentPoly> c(static_cast<std::size_t>(N + 1));
    for (long long l = 0; l <= N; ++l)
        c[static_cast<std::size_t>(l)] = qcore::q_binomial(N, l) * q_pow_u(alpha2 * l * l);
    return XPoly(std::move(c));
}

EulerBinomial euler_binomial(long long N) {
    require(N >= 0, "euler_binomial: negative index");
    EulerBinomial r;
    r.product = XPoly::one();
    for (long long k = 0; k < N; ++k)
        r.product *= XPoly::one() - XPoly::x() * XPoly::constant(LaurentPoly::q_power(HalfInt(k)));
    std::vector<LaurentPoly> c(static_cast<std::size_t>(N + 1));
    for (long long l = 0; l <= N; ++l) {
        LaurentPoly term =
            qcore::q_binomial(N, l) * LaurentPoly::q_power(HalfInt(l * (l - 1) / 2));
        if (l % 2 != 0) term = -term;
        c[static_cast<std::size_t>(l)] = std::move(term);
    }
    r.sum = XPoly(std::move(c));
    return r;
}

XPoly rho_n(long long n, long long alpha2) {
    require(n >= 0, "rho_n: negative index");
    require(alpha2 >= 0, "rho_n: negative alpha");
    XPoly prod = XPoly::one();
    for (long long k = 0; k < n; ++k)
        prod *= XPoly::one() + XPoly::x() * XPoly::constant(q_pow_u((2 * n - 1) * alpha2 - 2 * k));
    const long long choose2 = n * (n - 1) / 2;
    return prod * LaurentPoly::q_power(HalfInt(1 - alpha2).times(choose2));
}

std::vector<RationalFunction> theta_solve(long long N_max, long long alpha2) {
    require(N_max >= 0, "theta_solve: negative index");
    require(alpha2 >= 0, "theta_solve: negative alpha");
    const long long N = N_max;

    std::vector<XPoly> rho(static_cast<std::size_t>(N + 1));
    for (long long n = 0; n <= N; ++n) rho[static_cast<std::size_t>(n)] = rho_n(n, alpha2);

    // Triangular solve on descending x-degree at N = N_max, carrying the
    // remainder as Rnum / D with a scalar denominator D.
    std::vector<RationalFunction> theta;
    theta.reserve(static_cast<std::size_t>(N + 1));
    XPoly Rnum = P_N(N, alpha2);
    LaurentPoly D = LaurentPoly::one();
    for (long long k = 0; k <= N; ++k) {
        const LaurentPoly bin = qcore::q_binomial(N, k);
        const LaurentPoly lead = q_pow_u(alpha2 * (N - k) * (N - k));
        const LaurentPoly Mk = bin * lead;
        const LaurentPoly c = Rnum.coeff(N - k);
        theta.emplace_back(c, D * Mk);
        Rnum = Rnum * Mk - rho[static_cast<std::size_t>(N - k)] * (bin * c);
        D *= Mk;
    }

    // Substituting back must reproduce P_n for every n <= N_max; the paper
    // asserts this n-independence but the solver only used n = N_max.
    for (long long n = 0; n <= N; ++n) {
        std::vector<LaurentPoly> dens;
        dens.reserve(static_cast<std::size_t>(n + 1));
        for (long long k = 0; k <= n; ++k) dens.push_back(theta[static_cast<std::size_t>(k)].den());
        std::vector<LaurentPoly> prefix(dens.size() + 1, LaurentPoly::one());
        std::vector<LaurentPoly> suffix(dens.size() + 1, LaurentPoly::one());
        for (std::size_t i = 0; i < dens.size(); ++i) prefix[i + 1] = prefix[i] * dens[i];
        for (std::size_t i = dens.size(); i-- > 0;) suffix[i] = suffix[i + 1] * dens[i];
        XPoly lhs;
        for (long long k = 0; k <= n; ++k) {
            const auto ik = static_cast<std::size_t>(k);
            const LaurentPoly scalar = qcore::q_binomial(n, k) * theta[ik].num() *
                                       prefix[ik] * suffix[ik + 1];
            lhs += rho[static_cast<std::size_t>(n - k)] * scalar;
        }
        if (lhs != P_N(n, alpha2) * prefix[dens.size()]) {
            std::ostringstream msg;
            msg << "theta_solve: residual nonzero at N=" << n << " (solved at N_max=" << N_max
                << ", alpha2=" << alpha2 << ")";
            throw ThetaInconsistent(msg.str());
        }
    }
    return theta;
}

bool recurrence_check_P(long long N, long long alpha2) {
    require(N >= 1, "recurrence_check_P: index must be positive");
    require(alpha2 >= 0, "recurrence_check_P: negative alpha");
    const XPoly pN = P_N(N, alpha2);
    const XPoly pNm1 = P_N(N - 1, alpha2);
    const XPoly pNp1 = P_N(N + 1, alpha2);
    const LaurentPoly q_alpha = q_pow_u(alpha2);

    const XPoly deriv_rhs = pNm1.scale_arg(HalfInt(alpha2)) * (qcore::q_int(N) * q_alpha);
    if (q_derivative(pN) != deriv_rhs) return false;

    const XPoly raise_a =
        XPoly::x() * pN.scale_arg(HalfInt(alpha2)) * q_alpha + pN.scale_arg(HalfInt(1));
    if (pNp1 != raise_a) return false;

    const XPoly raise_b =
        XPoly::x() * pN.scale_arg(HalfInt(alpha2 - 1)) * q_pow_u(2 * N + alpha2) + pN;
    return pNp1 == raise_b;
}

}  // namespace qseries::qpolyx

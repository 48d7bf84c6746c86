#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/polyq.hpp"
#include "qseries/report.hpp"

namespace qseries::series {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;

template <class R>
class TruncSeries;

// Coefficient-ring hooks. The ring is BigInt, LaurentPoly, or a nested
// TruncSeries (giving bivariate series); nested zeros and ones need a sample
// value to copy the variable/order shape from.
inline BigInt ring_zero_like(const BigInt&) { return BigInt(0); }
inline BigInt ring_one_like(const BigInt&) { return BigInt(1); }
inline bool ring_is_zero(const BigInt& v) { return v.is_zero(); }
inline std::string ring_str(const BigInt& v) { return v.str(); }
inline std::optional<BigInt> ring_try_invert(const BigInt& v) {
    if (v == 1 || v == -1) return v;
    return std::nullopt;
}

inline LaurentPoly ring_zero_like(const LaurentPoly&) { return LaurentPoly::zero(); }
inline LaurentPoly ring_one_like(const LaurentPoly&) { return LaurentPoly::one(); }
inline bool ring_is_zero(const LaurentPoly& v) { return v.is_zero(); }
inline std::string ring_str(const LaurentPoly& v) { return v.str(); }
inline std::optional<LaurentPoly> ring_try_invert(const LaurentPoly& v) {
    return polyq::try_invert(v);
}

template <class X>
TruncSeries<X> ring_zero_like(const TruncSeries<X>& s);
template <class X>
TruncSeries<X> ring_one_like(const TruncSeries<X>& s);
template <class X>
bool ring_is_zero(const TruncSeries<X>& s);
template <class X>
std::string ring_str(const TruncSeries<X>& s);
template <class X>
std::optional<TruncSeries<X>> ring_try_invert(const TruncSeries<X>& s);

// Formal power series truncated at a fixed order: exactly `order` stored
// coefficients, terms of index >= order discarded. The exponent of index i is
// i / scale_den: scale_den is 1 on the integral lattice and 2 when the series
// lives on half-exponents of its variable. Operations mix only series with the
// same variable tag and lattice; the result order is the smaller input order.
template <class R>
class TruncSeries {
public:
    TruncSeries(std::string var, std::vector<R> coeffs, int scale_den = 1)
        : var_(std::move(var)), scale_(scale_den), c_(std::move(coeffs)) {
        if (c_.empty()) throw InvalidParameter("TruncSeries: order must be at least 1");
        if (scale_ != 1 && scale_ != 2)
            throw InvalidParameter("TruncSeries: exponent scale must be 1 or 2");
    }

    static TruncSeries zeros(std::string var, long long order, const R& proto = R{},
                             int scale_den = 1) {
        if (order < 1) throw InvalidParameter("TruncSeries: order must be at least 1");
        return TruncSeries(std::move(var),
                           std::vector<R>(static_cast<std::size_t>(order), proto), scale_den);
    }

    static TruncSeries unit(std::string var, long long order, const R& proto = R{},
                            int scale_den = 1) {
        TruncSeries s = zeros(std::move(var), order, proto, scale_den);
        s.c_[0] = ring_one_like(proto);
        return s;
    }

    const std::string& var() const { return var_; }
    long long order() const { return static_cast<long long>(c_.size()); }
    int scale_den() const { return scale_; }
    const std::vector<R>& coeffs() const { return c_; }
    const R& coeff(long long i) const { return c_.at(static_cast<std::size_t>(i)); }
    void set_coeff(long long i, R v) { c_.at(static_cast<std::size_t>(i)) = std::move(v); }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!ring_is_zero(c)) return false;
        return true;
    }

    TruncSeries truncate(long long new_order) const {
        if (new_order < 1 || new_order > order())
            throw InvalidParameter("TruncSeries: bad truncation order");
        return TruncSeries(var_,
                           std::vector<R>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(
                                                                       new_order)),
                           scale_);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        const long long n = common_order(o);
        TruncSeries r = truncate(n);
        for (long long i = 0; i < n; ++i)
            r.c_[static_cast<std::size_t>(i)] =
                r.c_[static_cast<std::size_t>(i)] + o.c_[static_cast<std::size_t>(i)];
        return r;
    }

    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    TruncSeries operator*(const TruncSeries& o) const {
        const long long n = common_order(o);
        TruncSeries r = zeros(var_, n, ring_zero_like(c_[0]), scale_);
        for (long long i = 0; i < n; ++i) {
            if (ring_is_zero(c_[static_cast<std::size_t>(i)])) continue;
            for (long long j = 0; i + j < n; ++j) {
                if (ring_is_zero(o.c_[static_cast<std::size_t>(j)])) continue;
                auto& slot = r.c_[static_cast<std::size_t>(i + j)];
                slot = slot + c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }

    // Scalar multiplication by a coefficient-ring element.
    TruncSeries operator*(const R& s) const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    bool operator==(const TruncSeries& o) const = default;

    // "(c0) + (c1)*t + ... + O(t^order)", zero coefficients skipped.
    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (long long i = 0; i < order(); ++i) {
            const R& c = c_[static_cast<std::size_t>(i)];
            if (ring_is_zero(c)) continue;
            if (!first) out << " + ";
            first = false;
            out << "(" << ring_str(c) << ")" << power_text(i);
        }
        if (!first) out << " + ";
        out << "O(" << var_ << exponent_text(order()) << ")";
        return out.str();
    }

private:
    std::string var_;
    int scale_ = 1;
    std::vector<R> c_;

    long long common_order(const TruncSeries& o) const {
        if (var_ != o.var_ || scale_ != o.scale_)
            throw VariableMismatch("series variable mismatch: " + var_ + " vs " + o.var_);
        return std::min(order(), o.order());
    }

    std::string exponent_text(long long idx) const {
        std::ostringstream out;
        if (scale_ == 1) {
            out << "^" << idx;
        } else if (idx % 2 == 0) {
            out << "^" << idx / 2;
        } else {
            out << "^(" << idx << "/2)";
        }
        return out.str();
    }

    std::string power_text(long long idx) const {
        if (idx == 0) return "";
        if (idx == scale_) return "*" + var_;
        return "*" + var_ + exponent_text(idx);
    }
};

template <class X>
TruncSeries<X> ring_zero_like(const TruncSeries<X>& s) {
    return TruncSeries<X>::zeros(s.var(), s.order(), ring_zero_like(s.coeff(0)), s.scale_den());
}

template <class X>
TruncSeries<X> ring_one_like(const TruncSeries<X>& s) {
    return TruncSeries<X>::unit(s.var(), s.order(), ring_zero_like(s.coeff(0)), s.scale_den());
}

template <class X>
bool ring_is_zero(const TruncSeries<X>& s) {
    return s.is_zero();
}

template <class X>
std::string ring_str(const TruncSeries<X>& s) {
    return s.str();
}

// Multiplicative inverse modulo the truncation order; the constant coefficient
// must be a unit of the coefficient ring.
template <class R>
std::optional<TruncSeries<R>> try_reciprocal(const TruncSeries<R>& a) {
    auto inv0 = ring_try_invert(a.coeff(0));
    if (!inv0) return std::nullopt;
    TruncSeries<R> r = ring_zero_like(a);
    r.set_coeff(0, *inv0);
    for (long long n = 1; n < a.order(); ++n) {
        R acc = ring_zero_like(a.coeff(0));
        for (long long k = 1; k <= n; ++k) {
            if (ring_is_zero(a.coeff(k))) continue;
            acc = acc + a.coeff(k) * r.coeff(n - k);
        }
        r.set_coeff(n, -(*inv0 * acc));
    }
    return r;
}

template <class R>
TruncSeries<R> reciprocal(const TruncSeries<R>& a) {
    auto r = try_reciprocal(a);
    if (!r) throw NonUnitConstantTerm("reciprocal: constant term is not a unit");
    return *r;
}

template <class X>
std::optional<TruncSeries<X>> ring_try_invert(const TruncSeries<X>& s) {
    return try_reciprocal(s);
}

// Series shifted up by `k` slots and scaled: coefficient i of the result is
// scalar * coeff(i - k). Terms pushed past the order vanish.
template <class R>
TruncSeries<R> shift_mul(const TruncSeries<R>& a, long long k, const R& scalar) {
    if (k < 0) throw InvalidParameter("shift_mul: negative shift");
    TruncSeries<R> r = ring_zero_like(a);
    for (long long i = 0; i + k < a.order(); ++i) r.set_coeff(i + k, a.coeff(i) * scalar);
    return r;
}

// Concrete shapes used by the checks.
using QSeries = TruncSeries<BigInt>;                    // series in q, integer coefficients
using TSeries = TruncSeries<LaurentPoly>;               // series in t (or z) over q-Laurents
using BivarSeries = TruncSeries<TSeries>;               // z outer, t inner
using ZQSeries = TruncSeries<QSeries>;                  // z outer, q inner
using ClassicalSeries = TruncSeries<BigInt>;            // q = 1 shadow in t
using ClassicalBivar = TruncSeries<ClassicalSeries>;    // q = 1 shadow, z outer

// sum_{s < order} [N+s over s] t^s.
TSeries euler_negative_binomial(long long N, long long order);

// Roundtrip check: the series above times the rising product
// (1 - t)(1 - qt)...(1 - q^N t) is 1 modulo the order.
IdentityReport check_negative_binomial(long long N, long long order);

// q = 1 shadow: 1/(1-t)^{N+1} = sum_s binomial(N+s, s) t^s.
IdentityReport check_negative_binomial_classical(long long N, long long order);

// sum_l (q^r t)^l q^{C(l,2)} / ((1+t)(1+qt)...(1+q^l t)) compared against
// sum_N (-t)^N (1-q^r)(1-q^{1+r})...(1-q^{N-1+r}); r = 0 gives the constant 1.
IdentityReport check_geometric_q(long long order, HalfInt r);

// q = 1 shadow: sum_l t^l / (1+t)^{l+1} = 1.
IdentityReport check_geometric_classical(long long order);

// sum_k t^k / ((1+t)...(1+q^k t)) = 1 + sum_m (1-q)(1-q^3)...(1-q^{2m-1}) t^{2m}.
IdentityReport check_carlitz(long long order);

// sum_l z^l q^{C(l,2)} / ((1+t)...(1+q^l t)) = sum_N (-1)^N (t-z)(t-qz)...(t-q^{N-1}z),
// both sides series in z with series-in-t coefficients.
IdentityReport check_bivariate_geometric(long long order_z, long long order_t);

// q = 1 shadow: sum_l z^l / (1+t)^{l+1} = sum_N (z-t)^N.
IdentityReport check_bivariate_classical(long long order_z, long long order_t);

// 1 + sum_{k>0} q^{gamma k} / ((1-q^2)(1-q^4)...(1-q^{2k})) as a q-series.
// Half-integer gamma lands on the half-exponent lattice.
// Throws DivergentTruncation unless gamma > 0.
QSeries sigma_infty(HalfInt gamma, long long order);

// sum_k q^{(2l+1)k}/(q^2;q^2)_k = (q;q^2)_l sum_k q^k/(q^2;q^2)_k.
IdentityReport check_limit_identity(long long l, long long order);

// (1/(q;q^2)_inf) sum_k z^k/(q^2;q^2)_k = (1/(z;q^2)_inf) sum_k q^k/(q^2;q^2)_k,
// series in z with q-series coefficients.
IdentityReport check_fine_functional(long long order_z, long long order_q);

// Truncation of the infinite product prod_{k>=0} (1 - a_coeff q^{a_exp + k step_exp}):
// only factors whose exponent is below the order contribute.
// Throws DivergentTruncation unless a_exp > 0 and step_exp > 0.
QSeries infinite_poch(int a_coeff, HalfInt a_exp, HalfInt step_exp, long long order);

// Finite/infinite Pochhammer quotient: (a;p)_l = (a;p)_inf / (p^l a;p)_inf
// with a = q^{a_exp}, p = q^{step_exp}, modulo the order.
IdentityReport check_infinite_poch_quotient(long long l, HalfInt a_exp, HalfInt step_exp,
                                            long long order);

// sum_s [N+s over s] t^s q^{C(s,2)}.
TSeries V_N_t(long long N, long long order);

// The same sum at t = q, collapsed to a q-series.
QSeries V_N_q(long long N, long long order);

// Theta-like sub-identity sum_{n>=0} q^{C(n+1,2)} = prod_{n>=1} (1-q^{2n})/(1-q^{2n-1}).
IdentityReport check_theta_product(long long order);

// V_N(q) against the closed forms: for odd N = 2k+1 the two index readings
// 1/(q;q^2)_k ("as-printed") and 1/(q;q^2)_{k+1} ("expanded-product") are both
// tried and the matching one recorded in params["reading"]; for even N = 2k the
// form (1/(q^2;q^2)_k) sum_n q^{C(n+1,2)} is checked along with the product
// sub-identity above.
IdentityReport check_fine_v(long long N, long long order);

}  // namespace qseries::series

#pragma once

#include <string>
#include <vector>

#include "qseries/polyq.hpp"
#include "qseries/qcore.hpp"

namespace qseries::qpolyx {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;
using polyq::RationalFunction;

// Polynomial in x with LaurentPoly coefficients, stored by ascending x-degree.
// Invariant: the highest stored coefficient is nonzero unless the polynomial is zero
// (zero is the empty coefficient vector).
class XPoly {
public:
    XPoly() = default;
    explicit XPoly(std::vector<LaurentPoly> coeffs);

    static XPoly constant(LaurentPoly c);
    static const XPoly& zero();
    static const XPoly& one();
    static const XPoly& x();

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const std::vector<LaurentPoly>& coeffs() const { return c_; }
    // Zero outside the stored range.
    LaurentPoly coeff(long long d) const;
    LaurentPoly at_zero() const { return coeff(0); }

    XPoly operator+(const XPoly& o) const;
    XPoly operator-(const XPoly& o) const;
    XPoly operator-() const;
    XPoly operator*(const XPoly& o) const;
    XPoly operator*(const LaurentPoly& s) const;
    XPoly operator*(const BigInt& s) const;
    XPoly& operator+=(const XPoly& o) { return *this = *this + o; }
    XPoly& operator-=(const XPoly& o) { return *this = *this - o; }
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }

    // f(x) -> f(q^r x): coefficient of x^d picks up q^{r d}.
    XPoly scale_arg(HalfInt r) const;
    LaurentPoly eval(const LaurentPoly& v) const;

    bool operator==(const XPoly& o) const = default;

    // "(c0) + (c1)*x + (c2)*x^2", zero coefficients skipped, "0" for zero.
    std::string str() const;

private:
    std::vector<LaurentPoly> c_;
    void trim();
};

inline XPoly operator*(const LaurentPoly& s, const XPoly& f) { return f * s; }
inline XPoly operator*(const BigInt& s, const XPoly& f) { return f * s; }

// value = 1 iff N is even.
struct EpsilonParity {
    int value;
    explicit EpsilonParity(long long N) : value(N % 2 == 0 ? 1 : 0) {}
};

// (f(qx) - f(x)) / (qx - x); sends x^n to [n] x^{n-1}.
XPoly q_derivative(const XPoly& f);

// O(f)(x) = x f(x) - f(qx).
XPoly op_O(const XPoly& f);

// prod_{k=0}^{l-1} (x + q^k v); l = 0 gives 1.
XPoly rising_x(const LaurentPoly& v, long long l);

// sum_l [N over l] (-1)^{N-l} x^l: degree N, leading coefficient 1,
// constant term (-1)^N.
XPoly rogers_szego_S(long long N);

// sum_{k=0}^{floor(N/2)} e_coeff(N, k) * (x - 1)_rising^{N-2k}.
XPoly closed_form_S_tilde(long long N);

// [floor(N/2) over k]_{q^2} (q^{N - eps(N)}; q^{-2})_k; zero outside
// 0 <= k <= floor(N/2).
LaurentPoly e_coeff(long long N, long long k);

// Coefficients c_k = f^{(k)}(a) / [k]! of the expansion of f in the rising
// powers (x - a)_rising^k, computed by iterated q-differentiation.
// Throws NonExactDivision if a division by [k]! fails to be exact.
std::vector<LaurentPoly> q_taylor(const XPoly& f, const LaurentPoly& a);

// True iff both monomial expansions hold:
//   x^n = sum_k [n over k] a^{n-k} (x - a)_rising^k, and
//   sum_k [n over k] a^{n-k} (x + b)_rising^k
//     = sum_k [n over k] x^{n-k} (a + b)_rising^k  (right side scalar products).
bool monomial_expansion_check(long long n, const LaurentPoly& a, const LaurentPoly& b);

// sum_l [N over l] x^l q^{alpha l^2} with alpha = alpha2 / 2.
XPoly P_N(long long N, long long alpha2);

// Both sides of the finite product expansion
// prod_{k=0}^{N-1} (1 - q^k x) = sum_l [N over l] (-x)^l q^{C(l,2)}.
struct EulerBinomial {
    XPoly product;
    XPoly sum;
};
EulerBinomial euler_binomial(long long N);

// q^{(1-2 alpha) C(n,2)} prod_{k=0}^{n-1} (1 + q^{(2n-1) alpha - k} x);
// degree n with leading coefficient q^{alpha n^2}.
XPoly rho_n(long long n, long long alpha2);

// Connection coefficients theta_0..theta_{N_max} with
// P_N(x) = sum_k [N over k] rho_{N-k}(x) theta_k, solved triangularly at
// N = N_max and residual-checked for every N <= N_max.
// Throws ThetaInconsistent if any residual is nonzero.
std::vector<RationalFunction> theta_solve(long long N_max, long long alpha2);

// True iff the q-derivative relation and both raising recurrences hold at N:
//   d P_N / d_q x = [N] q^alpha P_{N-1}(q^{2 alpha} x),
//   P_{N+1}(x) = q^alpha x P_N(q^{2 alpha} x) + P_N(qx)
//              = q^{N+alpha} x P_N(q^{2 alpha - 1} x) + P_N(x).
bool recurrence_check_P(long long N, long long alpha2);

}  // namespace qseries::qpolyx

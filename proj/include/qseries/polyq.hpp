#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>

#include "qseries/errors.hpp"

namespace qseries::polyq {

using BigInt = boost::multiprecision::cpp_int;

// Exact half-integer, stored as twice its value.  All exponents of q in the
// library live on this lattice: q^{1/2} is the atom (written u), so every
// exponent of u is an ordinary integer.
struct HalfInt {
    long long twice = 0;

    constexpr HalfInt() = default;
    constexpr HalfInt(long long whole) : twice(2 * whole) {}
    static constexpr HalfInt halves(long long t) {
        HalfInt h;
        h.twice = t;
        return h;
    }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    // Precondition: is_integer().
    constexpr long long whole() const { return twice / 2; }
    constexpr bool is_zero() const { return twice == 0; }

    constexpr HalfInt operator-() const { return halves(-twice); }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return halves(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return halves(a.twice - b.twice); }
    // Scaling by an ordinary integer stays on the lattice.
    constexpr HalfInt times(long long n) const { return halves(twice * n); }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const;  // "2", "3/2", "-1/2"
};

// Sparse Laurent polynomial in q over arbitrary-precision integers, with
// exponents on the half lattice.  Keys of the term map are u-exponents
// (u = q^{1/2}), so the stored exponent of q^e is e.twice.
class LaurentPoly {
public:
    using Terms = std::map<long long, BigInt>;

    LaurentPoly() = default;  // zero
    static LaurentPoly constant(BigInt c);
    static LaurentPoly q_power(HalfInt e);                // q^e
    static LaurentPoly monomial(BigInt c, HalfInt e);     // c * q^e
    static const LaurentPoly& zero();
    static const LaurentPoly& one();

    bool is_zero() const { return t_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }

    const Terms& terms() const { return t_; }
    BigInt coeff(HalfInt e) const;
    // Preconditions: !is_zero().
    HalfInt min_exp() const;
    HalfInt max_exp() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator*(const LaurentPoly& a, const BigInt& s);
    friend LaurentPoly operator*(const BigInt& s, const LaurentPoly& a) { return a * s; }

    // Nonnegative integer power; InvalidParameter otherwise.
    LaurentPoly pow(long long e) const;

    bool operator==(const LaurentPoly&) const = default;

    // Exponent map e -> e*r; InvalidParameter if r = 0 or a scaled exponent
    // leaves the half lattice.
    LaurentPoly substitute_q_power(HalfInt r) const;

    // Sum of coefficients: the q = 1 specialization.
    BigInt eval_at_one() const;

    // Canonical text: ascending exponents, "c", "c*q^e", "c*q^(e/2)";
    // unit coefficients print without the "1*".
    std::string str() const;
    // JSON: array of [u-exponent, coefficient-as-decimal-string], ascending.
    std::string json() const;

private:
    Terms t_;
    void set(long long ue, BigInt c);
};

// Quotient with b*result = a exactly; NonExactDivision / DivisionByZero.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);
// Same, but nullopt instead of NonExactDivision.
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& a, const LaurentPoly& b);
// Inverse of a unit (single term, coefficient +-1); nullopt otherwise.
std::optional<LaurentPoly> try_invert(const LaurentPoly& p);

// num/den with den != 0.  Normalized so den's lowest coefficient is positive,
// and collapsed to den = 1 whenever the division happens to be exact.  Equality
// is by cross-multiplication; no gcd reduction is attempted.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(LaurentPoly::one()) {}
    RationalFunction(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}
    RationalFunction(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

    std::string str() const;

private:
    LaurentPoly num_, den_;
    void normalize();
};

}  // namespace qseries::polyq

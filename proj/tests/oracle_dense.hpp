#pragma once

// Test-only dense polynomial arithmetic, independent of the library's sparse
// representation and of its division-based construction paths.  Exponents are
// u-lattice offsets (u = q^{1/2}), coefficients arbitrary-precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

#include "qseries/polyq.hpp"

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

struct Dense {
    long long off = 0;              // u-exponent of coeffs[0]
    std::vector<BigInt> c;          // dense, may carry zeros

    static Dense zero() { return {}; }
    static Dense term(BigInt v, long long ue) { return {ue, {std::move(v)}}; }
    static Dense one() { return term(1, 0); }

    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
};

inline Dense add(const Dense& a, const Dense& b) {
    if (a.c.empty()) return b;
    if (b.c.empty()) return a;
    long long lo = std::min(a.off, b.off);
    long long hi = std::max(a.off + (long long)a.c.size(), b.off + (long long)b.c.size());
    Dense r{lo, std::vector<BigInt>(hi - lo)};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[a.off - lo + i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[b.off - lo + i] += b.c[i];
    return r;
}

inline Dense neg(Dense a) {
    for (auto& v : a.c) v = -v;
    return a;
}

inline Dense mul(const Dense& a, const Dense& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Dense r{a.off + b.off, std::vector<BigInt>(a.c.size() + b.c.size() - 1)};
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

inline Dense from_sparse(const qseries::polyq::LaurentPoly& p) {
    Dense d;
    for (const auto& [ue, c] : p.terms()) d = add(d, Dense::term(c, ue));
    return d;
}

inline bool eq(const Dense& a, const qseries::polyq::LaurentPoly& p) {
    return add(a, neg(from_sparse(p))).is_zero();
}

// Gaussian binomial in base q^{b_u/2} (b_u is the u-exponent of one base step)
// built from the Pascal recurrence [n r] = [n-1 r-1] + q^{b r} [n-1 r];
// no division anywhere.
inline Dense qbinom_pascal(int n, int k, long long b_u) {
    if (k < 0 || n < 0 || k > n) return {};
    std::vector<Dense> row{Dense::one()};  // row for n' = 0
    for (int np = 1; np <= n; ++np) {
        std::vector<Dense> next(np + 1);
        next[0] = Dense::one();
        next[np] = Dense::one();
        for (int r = 1; r < np; ++r)
            next[r] = add(row[r - 1], mul(Dense::term(1, b_u * r), row[r]));
        row = std::move(next);
    }
    return row[k];
}

// Classical binomial coefficient by Pascal's rule.
inline BigInt binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    std::vector<BigInt> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next(i + 1, 1);
        for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return row[k];
}

}  // namespace oracle

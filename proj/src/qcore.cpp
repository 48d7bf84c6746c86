#include "qseries/qcore.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace qseries::qcore {

namespace {

LaurentPoly one_minus_q(HalfInt e) {
    return LaurentPoly::one() - LaurentPoly::q_power(e);
}

}  // namespace

LaurentPoly q_int(long long n, BaseStep b) {
    if (n < 0) throw InvalidParameter("q_int of negative " + std::to_string(n));
    LaurentPoly r;
    for (long long i = 0; i < n; ++i) r += LaurentPoly::q_power(b.step.times(i));
    return r;
}

LaurentPoly q_factorial(long long n, BaseStep b) {
    if (n < 0) throw InvalidParameter("q_factorial of negative " + std::to_string(n));
    LaurentPoly r = LaurentPoly::one();
    for (long long i = 1; i <= n; ++i) r *= q_int(i, b);
    return r;
}

LaurentPoly q_binomial(long long n, long long k, BaseStep b) {
    if (k < 0 || n < 0 || k > n) return LaurentPoly();
    if (n - k < k) k = n - k;
    if (k == 0) return LaurentPoly::one();

    static std::map<std::tuple<long long, long long, long long>, LaurentPoly> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(n, k, b.step.twice);
    {
        std::scoped_lock lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    // Multiply one numerator factor and divide one denominator factor per
    // step; every prefix is itself a Gaussian polynomial, so the division is
    // exact throughout.
    LaurentPoly r = LaurentPoly::one();
    for (long long i = 1; i <= k; ++i) {
        r *= one_minus_q(b.step.times(n - k + i));
        r = exact_div(r, one_minus_q(b.step.times(i)));
    }
    std::scoped_lock lock(mu);
    return cache.emplace(key, std::move(r)).first->second;
}

LaurentPoly poch(int a_coeff, HalfInt a_exp, HalfInt step_exp, long long len) {
    if (a_coeff != 1 && a_coeff != -1)
        throw InvalidParameter("poch coefficient must be +1 or -1");
    if (len < 0) throw InvalidParameter("poch of negative length");
    LaurentPoly r = LaurentPoly::one();
    for (long long i = 0; i < len; ++i)
        r *= LaurentPoly::one() -
             LaurentPoly::monomial(a_coeff, a_exp + step_exp.times(i));
    return r;
}

LaurentPoly rising(const LaurentPoly& u, const LaurentPoly& v, long long len) {
    if (len < 0) throw InvalidParameter("rising product of negative length");
    LaurentPoly r = LaurentPoly::one();
    for (long long i = 0; i < len; ++i)
        r *= u + LaurentPoly::q_power(HalfInt(i)) * v;
    return r;
}

LaurentPoly gauss_product(long long i) {
    if (i < 0) throw InvalidParameter("gauss_product of negative index");
    LaurentPoly r = LaurentPoly::one();
    for (long long t = 1; t < 2 * i; t += 2) r *= one_minus_q(HalfInt(t));
    return r;
}

LaurentPoly s_sum(long long N, HalfInt r) {
    if (N < 0) throw InvalidParameter("s_sum of negative order");
    // Walk the binomial row incrementally: one two-term multiply and one exact
    // division per step, instead of a fresh product per column.
    LaurentPoly row = LaurentPoly::one();
    LaurentPoly out = (N % 2 == 0) ? row : -row;
    for (long long l = 1; l <= N; ++l) {
        row *= one_minus_q(HalfInt(N - l + 1));
        row = exact_div(row, one_minus_q(HalfInt(l)));
        LaurentPoly term = row * LaurentPoly::q_power(r.times(l));
        if ((N - l) % 2 != 0) term = -term;
        out += term;
    }
    return out;
}

LaurentPoly gauss_G(long long k) {
    if (k < 0) throw InvalidParameter("gauss_G of negative index");
    if (k % 2 != 0) return LaurentPoly();
    return poch(1, HalfInt(k - 1), HalfInt(-2), k / 2);
}

LaurentPoly sigma(long long N, HalfInt gamma) {
    if (N < 0) throw InvalidParameter("sigma of negative order");
    LaurentPoly out;
    for (long long k = 0; k <= N; ++k)
        out += q_binomial(N, k, BaseStep::q2()) * LaurentPoly::q_power(gamma.times(k));
    return out;
}

LaurentPoly c_coeff_closed(long long l, long long s) {
    if (l < 0) throw InvalidParameter("c coefficient with negative row");
    if (s < 0 || s > l) return LaurentPoly();
    if (s % 2 == 0) {
        const long long r = s / 2;
        return q_binomial(l - r, r, BaseStep::q2()) *
               exact_div(gauss_product(l - r), gauss_product(r));
    }
    const long long r = (s - 1) / 2;
    return q_binomial(l - r - 1, r, BaseStep::q2()) *
           exact_div(gauss_product(l - r), gauss_product(r + 1));
}

LaurentPoly c_coeff_rec(long long l, long long s) {
    if (l < 0) throw InvalidParameter("c coefficient with negative row");
    if (s < 0 || s > l) return LaurentPoly();
    // Row-by-row: c_{l+1|s} = (q^s - q^{2l+1}) c_{l|s} + c_{l|s-1}.
    std::vector<LaurentPoly> row{LaurentPoly::one()};
    for (long long lp = 0; lp < l; ++lp) {
        std::vector<LaurentPoly> next(lp + 2);
        for (long long t = 0; t <= lp + 1; ++t) {
            LaurentPoly v;
            if (t <= lp)
                v += (LaurentPoly::q_power(HalfInt(t)) -
                      LaurentPoly::q_power(HalfInt(2 * lp + 1))) *
                     row[t];
            if (t >= 1) v += row[t - 1];
            next[t] = std::move(v);
        }
        row = std::move(next);
    }
    return row[s];
}

}  // namespace qseries::qcore

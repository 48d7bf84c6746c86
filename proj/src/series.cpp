#include "qseries/series.hpp"

#include <chrono>

#include "qseries/qcore.hpp"

namespace qseries::series {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string join_params(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ", ";
        out += k + "=" + v;
    }
    return out;
}

IdentityReport finish(std::string name, std::map<std::string, std::string> params, bool ok,
                      const std::string& lhs, const std::string& rhs, Clock::time_point t0) {
    IdentityReport rep;
    rep.name = std::move(name);
    rep.params = std::move(params);
    rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
    if (!ok) rep.witness = Witness{join_params(rep.params), lhs, rhs};
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

// Index of the exponent e on the series lattice.
long long lattice_index(HalfInt e, int scale) {
    if (scale == 2) return e.twice;
    if (e.twice % 2 != 0) throw InvalidParameter("series: half exponent on an integral lattice");
    return e.twice / 2;
}

// LaurentPoly with nonnegative lattice exponents as a q-series.
QSeries qs_from_laurent(const LaurentPoly& p, long long order, int scale) {
    QSeries s = QSeries::zeros("q", order, BigInt(0), scale);
    for (const auto& [ue, c] : p.terms()) {
        const long long idx = lattice_index(HalfInt::halves(ue), scale);
        if (idx < 0) throw InvalidParameter("series: negative exponent in coefficient");
        if (idx < order) s.set_coeff(idx, s.coeff(idx) + c);
    }
    return s;
}

// The two-term series 1 + c * q^{idx} (or plain 1 when idx >= order).
QSeries q_two_term(long long idx, BigInt c, long long order, int scale) {
    QSeries s = QSeries::unit("q", order, BigInt(0), scale);
    if (idx > 0 && idx < order) s.set_coeff(idx, std::move(c));
    return s;
}

// The two-term series 1 + w * t.
TSeries t_two_term(const LaurentPoly& w, long long order) {
    TSeries s = TSeries::unit("t", order);
    if (order > 1) s.set_coeff(1, w);
    return s;
}

ClassicalSeries c_two_term(BigInt w, long long order) {
    ClassicalSeries s = ClassicalSeries::unit("t", order);
    if (order > 1) s.set_coeff(1, std::move(w));
    return s;
}

BigInt classical_binom_next(const BigInt& prev, long long N, long long s) {
    // binomial(N+s, s) from binomial(N+s-1, s-1); the division is exact.
    return prev * (N + s) / s;
}

}  // namespace

TSeries euler_negative_binomial(long long N, long long order) {
    if (N < 0) throw InvalidParameter("euler_negative_binomial: negative index");
    TSeries s = TSeries::zeros("t", order);
    for (long long k = 0; k < order; ++k) s.set_coeff(k, qcore::q_binomial(N + k, k));
    return s;
}

IdentityReport check_negative_binomial(long long N, long long order) {
    const auto t0 = Clock::now();
    TSeries lhs = euler_negative_binomial(N, order);
    for (long long k = 0; k <= N; ++k)
        lhs *= t_two_term(-LaurentPoly::q_power(HalfInt(k)), order);
    const TSeries one = TSeries::unit("t", order);
    return finish("negbinom",
                  {{"N", std::to_string(N)}, {"order", std::to_string(order)}},
                  lhs == one, lhs.str(), one.str(), t0);
}

IdentityReport check_negative_binomial_classical(long long N, long long order) {
    const auto t0 = Clock::now();
    if (N < 0) throw InvalidParameter("check_negative_binomial_classical: negative index");
    ClassicalSeries denom = ClassicalSeries::unit("t", order);
    for (long long k = 0; k <= N; ++k) denom *= c_two_term(BigInt(-1), order);
    ClassicalSeries lhs = reciprocal(denom);
    ClassicalSeries rhs = ClassicalSeries::unit("t", order);
    BigInt b(1);
    for (long long s = 1; s < order; ++s) {
        b = classical_binom_next(b, N, s);
        rhs.set_coeff(s, b);
    }
    return finish("negbinom-classical",
                  {{"N", std::to_string(N)}, {"order", std::to_string(order)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_geometric_q(long long order, HalfInt r) {
    const auto t0 = Clock::now();
    TSeries lhs = TSeries::zeros("t", order);
    TSeries denom_inv = TSeries::unit("t", order);
    for (long long l = 0; l < order; ++l) {
        denom_inv *= reciprocal(t_two_term(LaurentPoly::q_power(HalfInt(l)), order));
        const HalfInt expo = r.times(l) + HalfInt(l * (l - 1) / 2);
        lhs += shift_mul(denom_inv, l, LaurentPoly::q_power(expo));
    }
    TSeries rhs = TSeries::zeros("t", order);
    LaurentPoly partial = LaurentPoly::one();
    for (long long N = 0; N < order; ++N) {
        rhs.set_coeff(N, (N % 2 == 0) ? partial : -partial);
        partial *= LaurentPoly::one() - LaurentPoly::q_power(r + HalfInt(N));
    }
    return finish("geometric-q",
                  {{"order", std::to_string(order)}, {"r", r.str()}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_geometric_classical(long long order) {
    const auto t0 = Clock::now();
    ClassicalSeries lhs = ClassicalSeries::zeros("t", order);
    ClassicalSeries denom_inv = ClassicalSeries::unit("t", order);
    const ClassicalSeries recip_1pt = reciprocal(c_two_term(BigInt(1), order));
    for (long long l = 0; l < order; ++l) {
        denom_inv *= recip_1pt;
        lhs += shift_mul(denom_inv, l, BigInt(1));
    }
    const ClassicalSeries rhs = ClassicalSeries::unit("t", order);
    return finish("geometric-classical", {{"order", std::to_string(order)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_carlitz(long long order) {
    const auto t0 = Clock::now();
    TSeries lhs = TSeries::zeros("t", order);
    TSeries denom_inv = TSeries::unit("t", order);
    for (long long k = 0; k < order; ++k) {
        denom_inv *= reciprocal(t_two_term(LaurentPoly::q_power(HalfInt(k)), order));
        lhs += shift_mul(denom_inv, k, LaurentPoly::one());
    }
    TSeries rhs = TSeries::zeros("t", order);
    rhs.set_coeff(0, LaurentPoly::one());
    for (long long m = 1; 2 * m < order; ++m) rhs.set_coeff(2 * m, qcore::gauss_product(m));
    return finish("carlitz", {{"order", std::to_string(order)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_bivariate_geometric(long long order_z, long long order_t) {
    const auto t0 = Clock::now();
    const TSeries t_zero = TSeries::zeros("t", order_t);
    BivarSeries lhs = BivarSeries::zeros("z", order_z, t_zero);
    TSeries denom_inv = TSeries::unit("t", order_t);
    for (long long l = 0; l < order_z; ++l) {
        denom_inv *= reciprocal(t_two_term(LaurentPoly::q_power(HalfInt(l)), order_t));
        lhs.set_coeff(l, denom_inv * LaurentPoly::q_power(HalfInt(l * (l - 1) / 2)));
    }

    BivarSeries rhs = BivarSeries::zeros("z", order_z, t_zero);
    BivarSeries rising = BivarSeries::unit("z", order_z, t_zero);
    for (long long N = 0; N <= order_z + order_t; ++N) {
        if (rising.is_zero()) break;
        rhs += (N % 2 == 0) ? rising : -rising;
        // Next factor t - q^N z.
        BivarSeries factor = BivarSeries::zeros("z", order_z, t_zero);
        TSeries t_mono = t_zero;
        if (order_t > 1) t_mono.set_coeff(1, LaurentPoly::one());
        factor.set_coeff(0, t_mono);
        if (order_z > 1) {
            TSeries neg_qN = t_zero;
            neg_qN.set_coeff(0, -LaurentPoly::q_power(HalfInt(N)));
            factor.set_coeff(1, neg_qN);
        }
        rising *= factor;
    }
    return finish("bivariate",
                  {{"order_t", std::to_string(order_t)}, {"order_z", std::to_string(order_z)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_bivariate_classical(long long order_z, long long order_t) {
    const auto t0 = Clock::now();
    const ClassicalSeries t_zero = ClassicalSeries::zeros("t", order_t);
    ClassicalBivar lhs = ClassicalBivar::zeros("z", order_z, t_zero);
    ClassicalSeries denom_inv = ClassicalSeries::unit("t", order_t);
    const ClassicalSeries recip_1pt = reciprocal(c_two_term(BigInt(1), order_t));
    for (long long l = 0; l < order_z; ++l) {
        denom_inv *= recip_1pt;
        lhs.set_coeff(l, denom_inv);
    }

    ClassicalBivar rhs = ClassicalBivar::zeros("z", order_z, t_zero);
    ClassicalBivar rising = ClassicalBivar::unit("z", order_z, t_zero);
    ClassicalBivar factor = ClassicalBivar::zeros("z", order_z, t_zero);
    {
        // z - t.
        ClassicalSeries minus_t = t_zero;
        if (order_t > 1) minus_t.set_coeff(1, BigInt(-1));
        factor.set_coeff(0, minus_t);
        if (order_z > 1) factor.set_coeff(1, ClassicalSeries::unit("t", order_t));
    }
    for (long long N = 0; N <= order_z + order_t; ++N) {
        if (rising.is_zero()) break;
        rhs += rising;
        rising *= factor;
    }
    return finish("bivariate-classical",
                  {{"order_t", std::to_string(order_t)}, {"order_z", std::to_string(order_z)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

QSeries sigma_infty(HalfInt gamma, long long order) {
    if (gamma.twice <= 0)
        throw DivergentTruncation("sigma_infty: exponent weight must be positive");
    const int scale = (gamma.twice % 2 != 0) ? 2 : 1;
    QSeries acc = QSeries::unit("q", order, BigInt(0), scale);
    QSeries denom_inv = QSeries::unit("q", order, BigInt(0), scale);
    for (long long k = 1;; ++k) {
        const long long shift = lattice_index(gamma.times(k), scale);
        if (shift >= order) break;
        denom_inv = denom_inv * reciprocal(q_two_term(lattice_index(HalfInt(2 * k), scale),
                                                      BigInt(-1), order, scale));
        acc += shift_mul(denom_inv, shift, BigInt(1));
    }
    return acc;
}

IdentityReport check_limit_identity(long long l, long long order) {
    const auto t0 = Clock::now();
    if (l < 0) throw InvalidParameter("check_limit_identity: negative index");
    QSeries lhs = sigma_infty(HalfInt(2 * l + 1), order);
    QSeries rhs = qs_from_laurent(qcore::poch(1, HalfInt(1), HalfInt(2), l), order, 1) *
                  sigma_infty(HalfInt(1), order);
    return finish("sigma-limit",
                  {{"l", std::to_string(l)}, {"order", std::to_string(order)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

QSeries infinite_poch(int a_coeff, HalfInt a_exp, HalfInt step_exp, long long order) {
    if (a_coeff != 1 && a_coeff != -1)
        throw InvalidParameter("infinite_poch: leading coefficient must be +1 or -1");
    if (a_exp.twice <= 0 || step_exp.twice <= 0)
        throw DivergentTruncation("infinite_poch: exponents must be positive");
    const int scale = (a_exp.twice % 2 != 0 || step_exp.twice % 2 != 0) ? 2 : 1;
    QSeries p = QSeries::unit("q", order, BigInt(0), scale);
    for (long long k = 0;; ++k) {
        const long long idx = lattice_index(a_exp + step_exp.times(k), scale);
        if (idx >= order) break;
        p = p * q_two_term(idx, BigInt(-a_coeff), order, scale);
    }
    return p;
}

IdentityReport check_infinite_poch_quotient(long long l, HalfInt a_exp, HalfInt step_exp,
                                            long long order) {
    const auto t0 = Clock::now();
    if (l < 0) throw InvalidParameter("check_infinite_poch_quotient: negative length");
    const int scale = (a_exp.twice % 2 != 0 || step_exp.twice % 2 != 0) ? 2 : 1;
    QSeries lhs = qs_from_laurent(qcore::poch(1, a_exp, step_exp, l), order, scale);
    QSeries rhs = infinite_poch(1, a_exp, step_exp, order) *
                  reciprocal(infinite_poch(1, a_exp + step_exp.times(l), step_exp, order));
    return finish("poch-quotient",
                  {{"a_exp", a_exp.str()},
                   {"l", std::to_string(l)},
                   {"order", std::to_string(order)},
                   {"step", step_exp.str()}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

TSeries V_N_t(long long N, long long order) {
    if (N < 0) throw InvalidParameter("V_N_t: negative index");
    TSeries s = TSeries::zeros("t", order);
    for (long long k = 0; k < order; ++k)
        s.set_coeff(k, qcore::q_binomial(N + k, k) * LaurentPoly::q_power(HalfInt(k * (k - 1) / 2)));
    return s;
}

QSeries V_N_q(long long N, long long order) {
    if (N < 0) throw InvalidParameter("V_N_q: negative index");
    QSeries s = QSeries::zeros("q", order, BigInt(0), 1);
    for (long long k = 0;; ++k) {
        const long long base = k + k * (k - 1) / 2;
        if (base >= order) break;
        const LaurentPoly b = qcore::q_binomial(N + k, k);
        for (const auto& [ue, c] : b.terms()) {
            const long long e = base + ue / 2;
            if (e < order) s.set_coeff(e, s.coeff(e) + c);
        }
    }
    return s;
}

namespace {

QSeries theta_sum(long long order) {
    QSeries s = QSeries::zeros("q", order, BigInt(0), 1);
    for (long long n = 0;; ++n) {
        const long long e = n * (n + 1) / 2;
        if (e >= order) break;
        s.set_coeff(e, s.coeff(e) + 1);
    }
    return s;
}

}  // namespace

IdentityReport check_theta_product(long long order) {
    const auto t0 = Clock::now();
    QSeries lhs = theta_sum(order);
    QSeries rhs = infinite_poch(1, HalfInt(2), HalfInt(2), order) *
                  reciprocal(infinite_poch(1, HalfInt(1), HalfInt(2), order));
    return finish("theta-product", {{"order", std::to_string(order)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

IdentityReport check_fine_v(long long N, long long order) {
    const auto t0 = Clock::now();
    if (N < 0) throw InvalidParameter("check_fine_v: negative index");
    const QSeries v = V_N_q(N, order);
    std::map<std::string, std::string> params{{"N", std::to_string(N)},
                                              {"order", std::to_string(order)}};
    if (N % 2 != 0) {
        const long long k = (N - 1) / 2;
        const QSeries as_printed =
            reciprocal(qs_from_laurent(qcore::poch(1, HalfInt(1), HalfInt(2), k), order, 1));
        const QSeries expanded =
            reciprocal(qs_from_laurent(qcore::poch(1, HalfInt(1), HalfInt(2), k + 1), order, 1));
        const bool mp = (v == as_printed);
        const bool me = (v == expanded);
        params["reading"] = me && !mp ? "expanded-product"
                            : mp && !me ? "as-printed"
                            : mp && me  ? "both"
                                        : "none";
        return finish("fine-v", std::move(params), mp != me, v.str(), expanded.str(), t0);
    }
    const long long k = N / 2;
    const QSeries rhs =
        reciprocal(qs_from_laurent(qcore::poch(1, HalfInt(2), HalfInt(2), k), order, 1)) *
        theta_sum(order);
    params["reading"] = "even-product";
    const bool ok = (v == rhs) && check_theta_product(order).status == CheckStatus::pass;
    return finish("fine-v", std::move(params), ok, v.str(), rhs.str(), t0);
}

IdentityReport check_fine_functional(long long order_z, long long order_q) {
    const auto t0 = Clock::now();
    const QSeries q_zero = QSeries::zeros("q", order_q, BigInt(0), 1);
    const QSeries A =
        reciprocal(infinite_poch(1, HalfInt(1), HalfInt(2), order_q));  // 1/(q;q^2)_inf
    const QSeries B = sigma_infty(HalfInt(1), order_q);  // sum q^k/(q^2;q^2)_k

    ZQSeries lhs = ZQSeries::zeros("z", order_z, q_zero);
    QSeries denom_inv = QSeries::unit("q", order_q, BigInt(0), 1);
    for (long long k = 0; k < order_z; ++k) {
        if (k > 0)
            denom_inv = denom_inv * reciprocal(q_two_term(2 * k, BigInt(-1), order_q, 1));
        lhs.set_coeff(k, A * denom_inv);
    }

    // (z; q^2)_inf truncated: factors 1 - q^{2j} z for 2j below the q-order.
    ZQSeries zpoch = ZQSeries::unit("z", order_z, q_zero);
    for (long long j = 0; 2 * j < order_q; ++j) {
        ZQSeries factor = ZQSeries::unit("z", order_z, q_zero);
        if (order_z > 1) {
            QSeries mono = q_zero;
            mono.set_coeff(2 * j, BigInt(-1));
            factor.set_coeff(1, mono);
        }
        zpoch *= factor;
    }
    ZQSeries rhs = reciprocal(zpoch);
    for (long long k = 0; k < order_z; ++k) rhs.set_coeff(k, rhs.coeff(k) * B);

    return finish("fine-functional",
                  {{"order_q", std::to_string(order_q)}, {"order_z", std::to_string(order_z)}},
                  lhs == rhs, lhs.str(), rhs.str(), t0);
}

}  // namespace qseries::series

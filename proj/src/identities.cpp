#include "qseries/identities.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

#include <json.hpp>

#include "qseries/errors.hpp"
#include "qseries/qcore.hpp"
#include "qseries/qdiff.hpp"
#include "qseries/qpolyx.hpp"
#include "qseries/series.hpp"

namespace qseries::identities {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;
using polyq::RationalFunction;
using qpolyx::XPoly;

namespace {

using Clock = std::chrono::steady_clock;
using Params = std::map<std::string, std::string>;
using Reports = std::vector<IdentityReport>;

std::string ll(long long v) { return std::to_string(v); }

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string join_params(const Params& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ", ";
        out += k + "=" + v;
    }
    return out;
}

IdentityReport make(Params params, bool ok, const std::string& lhs, const std::string& rhs,
                    const std::string& note, Clock::time_point t0) {
    IdentityReport rep;
    rep.params = std::move(params);
    rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
    if (!ok) {
        std::string point = join_params(rep.params);
        if (!note.empty()) point += " at " + note;
        rep.witness = Witness{point, lhs, rhs};
    }
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

IdentityReport rep_poly(Params params, const LaurentPoly& lhs, const LaurentPoly& rhs,
                        Clock::time_point t0) {
    const bool ok = (lhs == rhs);
    return make(std::move(params), ok, ok ? "" : lhs.str(), ok ? "" : rhs.str(), "", t0);
}

IdentityReport rep_x(Params params, const XPoly& lhs, const XPoly& rhs, Clock::time_point t0) {
    const bool ok = (lhs == rhs);
    return make(std::move(params), ok, ok ? "" : lhs.str(), ok ? "" : rhs.str(), "", t0);
}

IdentityReport rep_skip(Params params) {
    IdentityReport rep;
    rep.params = std::move(params);
    rep.status = CheckStatus::skipped;
    return rep;
}

// Accumulates folded sub-checks for one report; remembers the first mismatch.
struct Fold {
    bool ok = true;
    std::string lhs, rhs, note;

    void poly(const LaurentPoly& l, const LaurentPoly& r, std::string where) {
        if (ok && l != r) {
            ok = false;
            lhs = l.str();
            rhs = r.str();
            note = std::move(where);
        }
    }
    void x(const XPoly& l, const XPoly& r, std::string where) {
        if (ok && l != r) {
            ok = false;
            lhs = l.str();
            rhs = r.str();
            note = std::move(where);
        }
    }
    void rational(const RationalFunction& l, const RationalFunction& r, std::string where) {
        if (ok && !(l == r)) {
            ok = false;
            lhs = l.str();
            rhs = r.str();
            note = std::move(where);
        }
    }
    IdentityReport done(Params params, Clock::time_point t0) const {
        return make(std::move(params), ok, lhs, rhs, note, t0);
    }
};

long long pick(Scale s, long long small, long long normal, long long large) {
    switch (s) {
        case Scale::small: return small;
        case Scale::large: return large;
        default: return normal;
    }
}

long long cap_n(const RunConfig& c, long long small, long long normal, long long large) {
    return c.n_max.value_or(pick(c.scale, small, normal, large));
}

long long cap_order(const RunConfig& c, long long small, long long normal, long long large) {
    return c.order.value_or(pick(c.scale, small, normal, large));
}

std::vector<long long> alpha_set(const RunConfig& c, std::vector<long long> fallback) {
    if (c.alpha2) return {*c.alpha2};
    return fallback;
}

LaurentPoly qp(HalfInt e) { return LaurentPoly::q_power(e); }
const LaurentPoly& one() { return LaurentPoly::one(); }

// ---------------------------------------------------------------- section 1

Reports run_euler(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        const auto eb = qpolyx::euler_binomial(N);
        out.push_back(rep_x({{"N", ll(N)}}, eb.product, eb.sum, t0));
    }
    return out;
}

Reports run_euler_delta(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 1) return {rep_skip({{"N", "-"}})};
    for (long long N = 1; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        LaurentPoly sum;
        for (long long l = 0; l <= N; ++l) {
            const LaurentPoly term =
                qcore::q_binomial(N, l) * qp(HalfInt(l * (l - 1) / 2));
            sum += (l % 2 == 0) ? term : -term;
        }
        out.push_back(rep_poly({{"N", ll(N)}}, sum, LaurentPoly::zero(), t0));
    }
    return out;
}

Reports run_gauss(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 10, 30, 62);
    if (nmax < 1) return {rep_skip({{"N", "-"}})};
    for (long long N = 1; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        const LaurentPoly lhs = qcore::s_sum(N, HalfInt(0));
        const LaurentPoly rhs =
            (N % 2 != 0) ? LaurentPoly::zero() : qcore::gauss_product(N / 2);
        out.push_back(rep_poly({{"N", ll(N)}}, lhs, rhs, t0));
    }
    return out;
}

Reports run_s_r1(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"N", "-"}, {"case", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        if (N % 2 != 0) {
            const long long m = (N - 1) / 2;
            const auto t0 = Clock::now();
            out.push_back(rep_poly({{"N", ll(N)}, {"case", "odd-product"}},
                                   qcore::s_sum(N, HalfInt(1)),
                                   -qcore::poch(1, HalfInt(1), HalfInt(2), m + 1), t0));
        } else {
            const long long m = N / 2;
            auto t0 = Clock::now();
            out.push_back(rep_poly({{"N", ll(N)}, {"case", "even-r0"}},
                                   qcore::s_sum(N, HalfInt(1)), qcore::s_sum(N, HalfInt(0)), t0));
            t0 = Clock::now();
            out.push_back(rep_poly({{"N", ll(N)}, {"case", "even-product"}},
                                   qcore::s_sum(N, HalfInt(1)), qcore::gauss_product(m), t0));
        }
    }
    return out;
}

Reports run_main(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 30, 40);
    if (nmax < 0) return {rep_skip({{"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        out.push_back(rep_x({{"N", ll(N)}}, qpolyx::rogers_szego_S(N),
                            qpolyx::closed_form_S_tilde(N), t0));
    }
    return out;
}

Reports run_x0(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 30, 40);
    if (nmax < 0) return {rep_skip({{"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        LaurentPoly sum;
        for (long long k = 0; 2 * k <= N; ++k) {
            const long long d = N - 2 * k;
            sum += qpolyx::e_coeff(N, k) * qp(HalfInt(d * (d - 1) / 2));
        }
        out.push_back(rep_poly({{"N", ll(N)}}, sum, one(), t0));
    }
    return out;
}

Reports run_qderiv(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 1) return {rep_skip({{"N", "-"}, {"case", "-"}})};
    for (long long N = 1; N <= nmax; ++N) {
        auto t0 = Clock::now();
        out.push_back(rep_x({{"N", ll(N)}, {"case", "open-sum"}},
                            qpolyx::q_derivative(qpolyx::rogers_szego_S(N)),
                            qpolyx::rogers_szego_S(N - 1) * qcore::q_int(N), t0));
        t0 = Clock::now();
        out.push_back(rep_x({{"N", ll(N)}, {"case", "closed-form"}},
                            qpolyx::q_derivative(qpolyx::closed_form_S_tilde(N)),
                            qpolyx::closed_form_S_tilde(N - 1) * qcore::q_int(N), t0));
    }
    return out;
}

Reports run_factor(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 16, 20);
    if (nmax < 0) return {rep_skip({{"w", "-"}, {"l", "-"}})};
    for (long long w = 0; w <= nmax; ++w)
        for (long long l = 0; l <= w + 1; ++l) {
            const auto t0 = Clock::now();
            out.push_back(rep_poly({{"w", ll(w)}, {"l", ll(l)}},
                                   qcore::q_binomial(w, l) * qcore::q_int(l),
                                   qcore::q_int(w) * qcore::q_binomial(w - 1, l - 1), t0));
        }
    return out;
}

Reports run_rising_deriv(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 20, 25);
    if (nmax < 1) return {rep_skip({{"alpha", "-"}, {"v", "-"}})};
    const std::vector<std::pair<std::string, LaurentPoly>> vs{
        {"1", one()}, {"-1", -one()}, {"q", qp(HalfInt(1))}, {"-q", -qp(HalfInt(1))}};
    for (long long a = 1; a <= nmax; ++a)
        for (const auto& [tag, v] : vs) {
            const auto t0 = Clock::now();
            out.push_back(rep_x({{"alpha", ll(a)}, {"v", tag}},
                                qpolyx::q_derivative(qpolyx::rising_x(v, a)),
                                qpolyx::rising_x(v, a - 1) * qcore::q_int(a), t0));
        }
    return out;
}

Reports run_shift(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 16, 20);
    if (nmax < 0) return {rep_skip({{"m", "-"}, {"k", "-"}})};
    for (long long m = 0; m <= nmax; ++m)
        for (long long k = 0; k <= m + 1; ++k) {
            const auto t0 = Clock::now();
            out.push_back(
                rep_poly({{"m", ll(m)}, {"k", ll(k)}},
                         qcore::q_int(2 * m + 3 - 2 * k) *
                             qcore::poch(1, HalfInt(2 * m + 3), HalfInt(-2), k),
                         qcore::q_int(2 * m + 3) *
                             qcore::poch(1, HalfInt(2 * m + 1), HalfInt(-2), k), t0));
        }
    return out;
}

Reports run_base(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 16, 20);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"m", "-"}, {"k", "-"}})};
    const auto q2 = qcore::BaseStep::q2();
    for (long long m = 0; m <= nmax; ++m) {
        for (long long k = 0; k <= m + 1; ++k) {
            const auto t0 = Clock::now();
            out.push_back(rep_poly({{"case", "halving"}, {"m", ll(m)}, {"k", ll(k)}},
                                   qcore::q_binomial(m + 1, k, q2) * qcore::q_int(2 * m + 2 - 2 * k),
                                   qcore::q_int(2 * m + 2) * qcore::q_binomial(m, k, q2), t0));
        }
        const auto t0 = Clock::now();
        out.push_back(rep_poly({{"case", "base-change"}, {"m", ll(m)}, {"k", "-"}},
                               qcore::q_int(m, q2) * qcore::q_int(2),
                               qcore::q_int(2 * m), t0));
    }
    return out;
}

Reports run_step(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 16, 20);
    if (nmax < 0)
        return {rep_skip({{"case", "-"}, {"m", "-"}})};
    for (long long m = 0; m <= nmax; ++m) {
        auto t0 = Clock::now();
        out.push_back(rep_poly({{"case", "1.28"}, {"m", ll(m)}},
                               qcore::s_sum(2 * m, HalfInt(1)), qcore::s_sum(2 * m, HalfInt(0)),
                               t0));

        t0 = Clock::now();
        out.push_back(rep_poly({{"case", "1.29"}, {"m", ll(m)}},
                               -qcore::s_sum(2 * m + 1, HalfInt(1)),
                               (one() - qp(HalfInt(2 * m + 1))) * qcore::s_sum(2 * m, HalfInt(0)),
                               t0));

        t0 = Clock::now();
        Fold f;
        for (long long l = 0; l <= 2 * m + 1; ++l)
            f.poly(qcore::q_binomial(2 * m + 1, l),
                   qcore::q_binomial(2 * m, l) +
                       qp(HalfInt(2 * m + 1 - l)) * qcore::q_binomial(2 * m, l - 1),
                   "l=" + ll(l));
        out.push_back(f.done({{"case", "1.30"}, {"m", ll(m)}}, t0));

        t0 = Clock::now();
        out.push_back(rep_poly({{"case", "1.31"}, {"m", ll(m)}},
                               qcore::s_sum(2 * m + 2, HalfInt(0)),
                               (one() - qp(HalfInt(2 * m + 1))) * qcore::s_sum(2 * m, HalfInt(0)),
                               t0));
    }
    return out;
}

// ---------------------------------------------------------------- section 2

Reports run_pascal(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"N", "-"}})};
    const std::vector<std::pair<std::string, qcore::BaseStep>> bases{
        {"q", qcore::BaseStep::q()}, {"q2", qcore::BaseStep::q2()}};
    for (long long N = 0; N <= nmax; ++N) {
        auto t0 = Clock::now();
        Fold fa;
        for (const auto& [btag, b] : bases)
            for (long long r = 0; r <= N + 1; ++r)
                fa.poly(qcore::q_binomial(N + 1, r, b),
                        qcore::q_binomial(N, r - 1, b) +
                            qp(b.step.times(r)) * qcore::q_binomial(N, r, b),
                        "base=" + btag + ", r=" + ll(r));
        out.push_back(fa.done({{"case", "lower"}, {"N", ll(N)}}, t0));

        t0 = Clock::now();
        Fold fb;
        for (const auto& [btag, b] : bases)
            for (long long r = 0; r <= N + 1; ++r)
                fb.poly(qcore::q_binomial(N + 1, r, b),
                        qp(b.step.times(N + 1 - r)) * qcore::q_binomial(N, r - 1, b) +
                            qcore::q_binomial(N, r, b),
                        "base=" + btag + ", r=" + ll(r));
        out.push_back(fb.done({{"case", "upper"}, {"N", ll(N)}}, t0));
    }
    return out;
}

Reports run_recur(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        const XPoly S = qpolyx::rogers_szego_S(N);
        const XPoly S1 = qpolyx::rogers_szego_S(N + 1);
        auto t0 = Clock::now();
        out.push_back(rep_x({{"case", "descend"}, {"N", ll(N)}}, S1,
                            XPoly::x() * S - S.scale_arg(HalfInt(1)), t0));
        t0 = Clock::now();
        out.push_back(rep_x({{"case", "ascend"}, {"N", ll(N)}}, S1,
                            XPoly::x() * S.scale_arg(HalfInt(-1)) * qp(HalfInt(N)) - S, t0));
    }
    return out;
}

Reports run_opO(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 28);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"n", "-"}})};
    for (long long n = 0; n <= nmax; ++n) {
        auto t0 = Clock::now();
        out.push_back(rep_x({{"case", "open-sum"}, {"n", ll(n)}},
                            qpolyx::op_O(qpolyx::rogers_szego_S(n)),
                            qpolyx::rogers_szego_S(n + 1), t0));
        t0 = Clock::now();
        out.push_back(rep_x({{"case", "closed-form"}, {"n", ll(n)}},
                            qpolyx::op_O(qpolyx::closed_form_S_tilde(n)),
                            qpolyx::closed_form_S_tilde(n + 1), t0));
        t0 = Clock::now();
        XPoly expect = qpolyx::rising_x(-one(), n + 1);
        if (n >= 1)
            expect += qpolyx::rising_x(-one(), n - 1) *
                      (qp(HalfInt(n - 1)) * (one() - qp(HalfInt(n))));
        out.push_back(rep_x({{"case", "rising-step"}, {"n", ll(n)}},
                            qpolyx::op_O(qpolyx::rising_x(-one(), n)), expect, t0));
    }
    return out;
}

Reports run_ecoef(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"n", "-"}})};
    for (long long n = 0; n <= nmax; ++n) {
        // d_{m+1|k} = c_{m|k} + c_{m|k-1} q^{2m+2-2k} (1 - q^{2m+3-2k}), m = n.
        auto t0 = Clock::now();
        Fold f19;
        for (long long k = 0; k <= n + 2; ++k)
            f19.poly(qpolyx::e_coeff(2 * n + 2, k),
                     qpolyx::e_coeff(2 * n + 1, k) +
                         qpolyx::e_coeff(2 * n + 1, k - 1) * qp(HalfInt(2 * n + 2 - 2 * k)) *
                             (one() - qp(HalfInt(2 * n + 3 - 2 * k))),
                     "k=" + ll(k));
        out.push_back(f19.done({{"case", "odd-to-even"}, {"n", ll(n)}}, t0));

        // c_{m|k} = d_{m|k} + d_{m|k-1} q^{2m+1-2k} (1 - q^{2m+2-2k}), m = n.
        t0 = Clock::now();
        Fold f22;
        for (long long k = 0; k <= n + 2; ++k)
            f22.poly(qpolyx::e_coeff(2 * n + 1, k),
                     qpolyx::e_coeff(2 * n, k) +
                         qpolyx::e_coeff(2 * n, k - 1) * qp(HalfInt(2 * n + 1 - 2 * k)) *
                             (one() - qp(HalfInt(2 * n + 2 - 2 * k))),
                     "k=" + ll(k));
        out.push_back(f22.done({{"case", "even-to-odd"}, {"n", ll(n)}}, t0));

        // e_{N+1|k} = e_{N|k} + e_{N|k-1} q^{N+1-2k} (1 - q^{N+2-2k}), N = n.
        t0 = Clock::now();
        Fold f27;
        for (long long k = 0; k <= n / 2 + 2; ++k)
            f27.poly(qpolyx::e_coeff(n + 1, k),
                     qpolyx::e_coeff(n, k) +
                         qpolyx::e_coeff(n, k - 1) * qp(HalfInt(n + 1 - 2 * k)) *
                             (one() - qp(HalfInt(n + 2 - 2 * k))),
                     "k=" + ll(k));
        out.push_back(f27.done({{"case", "unified"}, {"n", ll(n)}}, t0));
    }
    return out;
}

// ---------------------------------------------------------------- section 3

const std::vector<std::pair<std::string, LaurentPoly>>& taylor_points() {
    static const std::vector<std::pair<std::string, LaurentPoly>> pts{
        {"1", LaurentPoly::one()},
        {"-1", -LaurentPoly::one()},
        {"q", LaurentPoly::q_power(HalfInt(1))},
        {"0", LaurentPoly::zero()}};
    return pts;
}

Reports run_taylor(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 20, 24);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"n", "-"}, {"a", "-"}, {"b", "-"}})};
    for (long long n = 0; n <= nmax; ++n) {
        for (const auto& [atag, a] : taylor_points()) {
            // Expansion with q-derivative coefficients applied to the dense
            // alternating-sum polynomial.
            auto t0 = Clock::now();
            const XPoly f = qpolyx::rogers_szego_S(n);
            const auto coeffs = qpolyx::q_taylor(f, a);
            XPoly rebuilt;
            for (std::size_t k = 0; k < coeffs.size(); ++k)
                rebuilt += qpolyx::rising_x(-a, static_cast<long long>(k)) * coeffs[k];
            out.push_back(
                rep_x({{"case", "expansion"}, {"n", ll(n)}, {"a", atag}, {"b", "-"}}, rebuilt, f,
                      t0));

            // x^n = sum_k [n over k] a^{n-k} (x - a)_rising^k.
            t0 = Clock::now();
            XPoly mono;
            for (long long k = 0; k <= n; ++k)
                mono += qpolyx::rising_x(-a, k) * (qcore::q_binomial(n, k) * a.pow(n - k));
            std::vector<LaurentPoly> xn(static_cast<std::size_t>(n) + 1);
            xn.back() = one();
            out.push_back(rep_x({{"case", "monomial"}, {"n", ll(n)}, {"a", atag}, {"b", "-"}},
                                mono, XPoly(xn), t0));
        }

        // Two-point symmetry of the rising expansions.
        const std::vector<std::pair<std::string, std::string>> pairs{
            {"1", "q"}, {"q", "-1"}, {"-1", "1"}, {"q", "q"}};
        for (const auto& [atag, btag] : pairs) {
            const auto by_tag = [](const std::string& t) {
                for (const auto& [tag, v] : taylor_points())
                    if (tag == t) return v;
                throw InvalidParameter("unknown taylor point");
            };
            const LaurentPoly a = by_tag(atag);
            const LaurentPoly b = by_tag(btag);
            const auto t0 = Clock::now();
            XPoly lhs;
            std::vector<LaurentPoly> rhs_c(static_cast<std::size_t>(n) + 1);
            for (long long k = 0; k <= n; ++k) {
                lhs += qpolyx::rising_x(b, k) * (qcore::q_binomial(n, k) * a.pow(n - k));
                rhs_c[static_cast<std::size_t>(n - k)] +=
                    qcore::q_binomial(n, k) * qcore::rising(a, b, k);
            }
            out.push_back(rep_x({{"case", "two-point"}, {"n", ll(n)}, {"a", atag}, {"b", btag}},
                                lhs, XPoly(rhs_c), t0));
        }
    }
    return out;
}

Reports run_taylor_S(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 20, 25);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        auto t0 = Clock::now();
        XPoly at_one;
        for (long long k = 0; k <= N; ++k)
            at_one += qpolyx::rising_x(-one(), k) *
                      (qcore::q_binomial(N, k) * qcore::gauss_G(N - k));
        out.push_back(rep_x({{"case", "gauss-values"}, {"N", ll(N)}}, at_one,
                            qpolyx::rogers_szego_S(N), t0));

        t0 = Clock::now();
        XPoly even_only;
        for (long long k = 0; 2 * k <= N; ++k)
            even_only += qpolyx::rising_x(-one(), N - 2 * k) *
                         (qcore::q_binomial(N, 2 * k) *
                          qcore::poch(1, HalfInt(2 * k - 1), HalfInt(-2), k));
        out.push_back(rep_x({{"case", "even-terms"}, {"N", ll(N)}}, even_only,
                            qpolyx::rogers_szego_S(N), t0));
    }
    return out;
}

Reports run_bridge(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 25, 30);
    if (nmax < 0) return {rep_skip({{"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        const auto t0 = Clock::now();
        Fold f;
        for (long long k = 0; 2 * k <= N; ++k)
            f.poly(qcore::q_binomial(N, 2 * k) *
                       qcore::poch(1, HalfInt(2 * k - 1), HalfInt(-2), k),
                   qpolyx::e_coeff(N, k), "k=" + ll(k));
        out.push_back(f.done({{"N", ll(N)}}, t0));
    }
    return out;
}

Reports run_P_recur(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 12, 15);
    const auto alphas = alpha_set(cfg, {0, 1, 2, 3});
    if (nmax < 1) return {rep_skip({{"case", "-"}, {"N", "-"}, {"alpha2", "-"}})};
    for (const long long a2 : alphas) {
        const HalfInt alpha = HalfInt::halves(a2);
        for (long long N = 1; N <= nmax; ++N) {
            const XPoly P = qpolyx::P_N(N, a2);
            const XPoly P1 = qpolyx::P_N(N + 1, a2);
            const XPoly Pm = qpolyx::P_N(N - 1, a2);
            auto t0 = Clock::now();
            out.push_back(rep_x({{"case", "derivative"}, {"N", ll(N)}, {"alpha2", ll(a2)}},
                                qpolyx::q_derivative(P),
                                Pm.scale_arg(HalfInt(a2)) * (qcore::q_int(N) * qp(alpha)), t0));
            t0 = Clock::now();
            out.push_back(rep_x({{"case", "raise-a"}, {"N", ll(N)}, {"alpha2", ll(a2)}}, P1,
                                XPoly::x() * P.scale_arg(HalfInt(a2)) * qp(alpha) +
                                    P.scale_arg(HalfInt(1)), t0));
            t0 = Clock::now();
            out.push_back(rep_x({{"case", "raise-b"}, {"N", ll(N)}, {"alpha2", ll(a2)}}, P1,
                                XPoly::x() * P.scale_arg(HalfInt(a2) - HalfInt(1)) *
                                        qp(HalfInt(N) + alpha) +
                                    P, t0));
        }
    }
    return out;
}

Reports run_rho(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 12, 15);
    const auto alphas = alpha_set(cfg, {0, 1, 2, 3});
    if (nmax < 1) return {rep_skip({{"n", "-"}, {"alpha2", "-"}})};
    for (const long long a2 : alphas)
        for (long long n = 1; n <= nmax; ++n) {
            const auto t0 = Clock::now();
            out.push_back(rep_x({{"n", ll(n)}, {"alpha2", ll(a2)}},
                                qpolyx::q_derivative(qpolyx::rho_n(n, a2)),
                                qpolyx::rho_n(n - 1, a2).scale_arg(HalfInt(a2)) *
                                    (qcore::q_int(n) * qp(HalfInt::halves(a2))), t0));
        }
    return out;
}

Reports run_theta(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 6, 12, 13);
    const auto alphas = alpha_set(cfg, {0, 1, 2});
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"alpha2", "-"}, {"n_max", "-"}})};
    for (const long long a2 : alphas) {
        std::vector<RationalFunction> theta;
        {
            const auto t0 = Clock::now();
            bool ok = true;
            std::string msg;
            try {
                theta = qpolyx::theta_solve(nmax, a2);
            } catch (const Error& e) {
                ok = false;
                msg = e.what();
            }
            out.push_back(make({{"case", "residual"}, {"alpha2", ll(a2)}, {"n_max", ll(nmax)}},
                               ok, msg, "residual zero for every level", "", t0));
            if (!ok) continue;
        }

        if (a2 == 0) {
            const auto t0 = Clock::now();
            Fold f;
            for (long long k = 0; k < static_cast<long long>(theta.size()); ++k) {
                LaurentPoly expect = qcore::gauss_G(k);
                if (k % 2 != 0) expect = -expect;
                f.rational(theta[static_cast<std::size_t>(k)], RationalFunction(expect),
                           "k=" + ll(k));
            }
            out.push_back(
                f.done({{"case", "alternating-gauss"}, {"alpha2", "0"}, {"n_max", ll(nmax)}}, t0));
        }

        {
            const auto t0 = Clock::now();
            bool ok = true;
            std::string lhs, rhs, note;
            try {
                const auto deeper = qpolyx::theta_solve(nmax + 2, a2);
                for (std::size_t k = 0; k < theta.size(); ++k)
                    if (!(theta[k] == deeper[k])) {
                        ok = false;
                        note = "k=" + ll(static_cast<long long>(k));
                        lhs = theta[k].str();
                        rhs = deeper[k].str();
                        break;
                    }
            } catch (const Error& e) {
                ok = false;
                lhs = e.what();
                rhs = "solve at deeper level";
            }
            out.push_back(make({{"case", "depth-agreement"}, {"alpha2", ll(a2)},
                                {"n_max", ll(nmax)}},
                               ok, lhs, rhs, note, t0));
        }
    }
    return out;
}

// ---------------------------------------------------------------- section 4

Reports run_geom(const RunConfig& cfg) {
    Reports out;
    const long long order = cap_order(cfg, 12, 25, 40);
    auto push = [&out](IdentityReport rep, const std::string& cse) {
        rep.params["case"] = cse;
        out.push_back(std::move(rep));
    };
    push(series::check_geometric_classical(order), "classical");
    push(series::check_geometric_q(order, HalfInt(0)), "collapse");
    for (const HalfInt r : {HalfInt::halves(1), HalfInt(1), HalfInt(2), HalfInt(3)})
        push(series::check_geometric_q(order, r), "shifted");
    return out;
}

Reports run_carlitz(const RunConfig& cfg) {
    const long long order = cap_order(cfg, 16, 40, 48);
    return {series::check_carlitz(order)};
}

Reports run_bivar(const RunConfig& cfg) {
    Reports out;
    const long long order = cap_order(cfg, 6, 12, 14);
    auto push = [&out](IdentityReport rep, const std::string& cse) {
        rep.params["case"] = cse;
        out.push_back(std::move(rep));
    };
    push(series::check_bivariate_geometric(order, order), "q");
    push(series::check_bivariate_classical(std::min<long long>(order, 8),
                                           std::min<long long>(order, 8)),
         "classical");
    return out;
}

Reports run_negbinom(const RunConfig& cfg) {
    Reports out;
    const long long order = cap_order(cfg, 12, 30, 36);
    const long long nmax = cap_n(cfg, 4, 8, 10);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"N", "-"}, {"order", "-"}})};
    auto push = [&out](IdentityReport rep, const std::string& cse) {
        rep.params["case"] = cse;
        out.push_back(std::move(rep));
    };
    for (long long N = 0; N <= nmax; ++N) push(series::check_negative_binomial(N, order), "q");
    for (long long N = 0; N <= nmax; ++N)
        push(series::check_negative_binomial_classical(N, order), "classical");
    return out;
}

// ---------------------------------------------------------------- section 5

Reports run_sigma(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 20, 30);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"N", "-"}})};
    for (long long N = 0; N <= nmax; ++N) {
        auto t0 = Clock::now();
        out.push_back(rep_poly(
            {{"case", "half-lattice"}, {"N", ll(N)}},
            qcore::sigma(N, HalfInt(1)).substitute_q_power(HalfInt::halves(1)),
            qcore::poch(-1, HalfInt::halves(1), HalfInt::halves(1), N), t0));
        t0 = Clock::now();
        out.push_back(rep_poly({{"case", "product"}, {"N", ll(N)}}, qcore::sigma(N, HalfInt(1)),
                               qcore::poch(-1, HalfInt(1), HalfInt(1), N), t0));
        t0 = Clock::now();
        out.push_back(rep_poly({{"case", "ratio"}, {"N", ll(N)}},
                               qcore::sigma(N + 1, HalfInt(1)),
                               (one() + qp(HalfInt(N + 1))) * qcore::sigma(N, HalfInt(1)), t0));
    }
    return out;
}

Reports run_sigma_sym(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 20, 30);
    if (nmax < 0) return {rep_skip({{"N", "-"}, {"gamma", "-"}})};
    const std::vector<std::pair<std::string, HalfInt>> gs{
        {"1/2", HalfInt::halves(1)}, {"1", HalfInt(1)}, {"2", HalfInt(2)}, {"3", HalfInt(3)}};
    for (long long N = 0; N <= nmax; ++N)
        for (const auto& [tag, g] : gs) {
            const auto t0 = Clock::now();
            out.push_back(rep_poly({{"N", ll(N)}, {"gamma", tag}}, qcore::sigma(N, -g),
                                   qp(-g.times(N)) * qcore::sigma(N, g), t0));
        }
    return out;
}

Reports run_sigma_rec(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 20, 30);
    if (nmax < 0) return {rep_skip({{"N", "-"}, {"gamma", "-"}})};
    for (long long N = 0; N <= nmax; ++N)
        for (const long long g : {1LL, 3LL, 5LL, 7LL}) {
            const auto t0 = Clock::now();
            out.push_back(rep_poly({{"N", ll(N)}, {"gamma", ll(g)}},
                                   qcore::sigma(N, HalfInt(g + 2)),
                                   qcore::sigma(N + 1, HalfInt(g)) -
                                       qp(HalfInt(g)) * qcore::sigma(N, HalfInt(g)), t0));
        }
    return out;
}

Reports run_ccoef(const RunConfig& cfg) {
    Reports out;
    const long long lmax = cap_n(cfg, 8, 16, 20);
    if (lmax < 0) return {rep_skip({{"l", "-"}})};
    for (long long l = 0; l <= lmax; ++l) {
        const auto t0 = Clock::now();
        Fold f;
        for (long long s = -1; s <= l + 1; ++s) {
            f.poly(qcore::c_coeff_closed(l, s), qcore::c_coeff_rec(l, s), "s=" + ll(s));
            if (s < 0 || s > l)
                f.poly(qcore::c_coeff_closed(l, s), LaurentPoly::zero(),
                       "support s=" + ll(s));
        }
        out.push_back(f.done({{"l", ll(l)}}, t0));
    }
    return out;
}

// The four printed low-height expansions, as polynomials in the placeholder
// x = q^N with Laurent coefficients.
XPoly printed_sigma_expansion(long long l) {
    const LaurentPoly f3 = one() - qp(HalfInt(3));
    const LaurentPoly f5 = one() - qp(HalfInt(5));
    const LaurentPoly f7 = one() - qp(HalfInt(7));
    const LaurentPoly q1 = qp(HalfInt(1));
    const LaurentPoly q3 = qp(HalfInt(3));
    const LaurentPoly q6 = qp(HalfInt(6));
    const LaurentPoly q10 = qp(HalfInt(10));
    const auto g = [](long long i) { return qcore::gauss_product(i); };
    const auto qint2 = [](long long k) { return qcore::q_int(k, qcore::BaseStep::q2()); };
    switch (l) {
        case 1: return XPoly({g(1), q1});
        case 2: return XPoly({g(2), q1 * f3, q3});
        case 3: return XPoly({g(3), q1 * f3 * f5, q3 * f3 * qint2(2), q6});
        case 4:
            return XPoly({g(4), q1 * f3 * f5 * f7, q3 * f3 * f5 * qint2(3),
                          q6 * f5 * qint2(2), q10});
        default: throw InvalidParameter("printed expansion only available for l = 1..4");
    }
}

Reports run_sigma_table(const RunConfig& cfg) {
    Reports out;
    const long long sub_n = std::min<long long>(cap_n(cfg, 6, 10, 12), 12);
    for (long long l = 1; l <= 4; ++l) {
        auto t0 = Clock::now();
        XPoly computed;
        for (long long s = 0; s <= l; ++s)
            computed += XPoly({qcore::c_coeff_closed(l, s) * qp(HalfInt(s * (s + 1) / 2))}) *
                        qpolyx::rising_x(LaurentPoly::zero(), s);
        out.push_back(rep_x({{"l", ll(l)}, {"case", "printed"}}, computed,
                            printed_sigma_expansion(l), t0));

        t0 = Clock::now();
        Fold f;
        for (long long N = 0; N <= sub_n; ++N)
            f.poly(qcore::sigma(N, HalfInt(2 * l + 1)),
                   qcore::sigma(N, HalfInt(1)) * computed.eval(qp(HalfInt(N))),
                   "N=" + ll(N));
        out.push_back(f.done({{"l", ll(l)}, {"case", "substitution"}}, t0));
    }
    return out;
}

Reports run_limit(const RunConfig& cfg) {
    Reports out;
    const long long order = cap_order(cfg, 20, 40, 48);
    const long long lmax = cap_n(cfg, 4, 8, 10);
    if (lmax < 0) return {rep_skip({{"l", "-"}, {"order", "-"}})};
    for (long long l = 0; l <= lmax; ++l) out.push_back(series::check_limit_identity(l, order));
    return out;
}

Reports run_fine(const RunConfig& cfg) {
    Reports out;
    const long long oq = cap_order(cfg, 16, 30, 40);
    const long long oz = pick(cfg.scale, 4, 8, 8);
    auto push = [&out](IdentityReport rep, const std::string& cse) {
        rep.params["case"] = cse;
        out.push_back(std::move(rep));
    };
    for (long long l = 0; l <= 4; ++l) {
        IdentityReport rep = series::check_infinite_poch_quotient(l, HalfInt(1), HalfInt(2), oq);
        rep.params["order_q"] = rep.params["order"];
        push(std::move(rep), "quotient");
    }
    push(series::check_fine_functional(oz, oq), "functional");
    return out;
}

// ---------------------------------------------------------------- section 6

Reports run_qdiff(const RunConfig& cfg) {
    Reports out;
    const long long nmax = std::min<long long>(cap_n(cfg, 8, 14, 15), 15);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"n_max", "-"}})};

    const auto table_vs_formula = [nmax](const std::vector<LaurentPoly>& b, Fold& f) {
        const auto a = qdiff::reconstruct(b, nmax);
        const auto t = qdiff::delta_table(a, nmax, qdiff::canonical_theta(nmax));
        for (long long k = 0; k <= nmax; ++k)
            f.poly(t.at(k, 0), b[static_cast<std::size_t>(k)], "boundary k=" + ll(k));
        for (long long k = 0; k <= nmax && f.ok; ++k)
            for (long long n = 0; n + k <= nmax; ++n) {
                LaurentPoly cell;
                for (long long s = 0; s <= n; ++s)
                    cell += b[static_cast<std::size_t>(k + n - s)] * qcore::q_binomial(n, s) *
                            qp(HalfInt(k * s));
                f.poly(t.at(k, n), cell, "cell k=" + ll(k) + ", n=" + ll(n));
            }
    };

    {
        const auto t0 = Clock::now();
        std::vector<LaurentPoly> b(static_cast<std::size_t>(nmax) + 1);
        b[0] = one();
        Fold f;
        const auto a = qdiff::reconstruct(b, nmax);
        for (long long n = 0; n <= nmax; ++n)
            f.poly(a[static_cast<std::size_t>(n)], one(), "n=" + ll(n));
        table_vs_formula(b, f);
        out.push_back(f.done({{"case", "unit"}, {"n_max", ll(nmax)}}, t0));
    }
    {
        const auto t0 = Clock::now();
        std::vector<LaurentPoly> b;
        for (long long s = 0; s <= nmax; ++s) {
            LaurentPoly v = qp(HalfInt(s));
            if (s % 2 != 0) v = -v;
            b.push_back(v);
        }
        Fold f;
        const auto a = qdiff::reconstruct(b, nmax);
        for (long long n = 0; n <= nmax; ++n) {
            LaurentPoly expect = qcore::s_sum(n, HalfInt(1));
            if (n % 2 != 0) expect = -expect;
            f.poly(a[static_cast<std::size_t>(n)], expect, "n=" + ll(n));
        }
        table_vs_formula(b, f);
        out.push_back(f.done({{"case", "alternating"}, {"n_max", ll(nmax)}}, t0));
    }
    {
        const auto t0 = Clock::now();
        std::vector<LaurentPoly> b;
        for (long long s = 0; s <= nmax; ++s) b.push_back(qp(HalfInt(s * (s - 1) / 2)));
        Fold f;
        table_vs_formula(b, f);
        out.push_back(f.done({{"case", "binomial-weight"}, {"n_max", ll(nmax)}}, t0));
    }
    return out;
}

Reports run_crux(const RunConfig& cfg) {
    Reports out;
    const long long nmax = cap_n(cfg, 8, 12, 15);
    if (nmax < 0) return {rep_skip({{"case", "-"}, {"n", "-"}})};
    for (long long n = 0; n <= nmax; ++n) {
        auto t0 = Clock::now();
        Fold f;
        for (long long r = 0; r <= 3; ++r)
            for (long long rho = 0; rho <= 3; ++rho) {
                LaurentPoly expect;
                if (rho <= n)
                    expect = qcore::q_binomial(n, rho) *
                             qcore::sigma(n - rho, HalfInt(2 * r + 1))
                                 .substitute_q_power(HalfInt::halves(1));
                f.poly(qdiff::crux_family(n, r, rho), expect,
                       "r=" + ll(r) + ", rho=" + ll(rho));
            }
        out.push_back(f.done({{"case", "binomial-sigma"}, {"n", ll(n)}}, t0));

        t0 = Clock::now();
        const LaurentPoly fam = qdiff::crux_family(n, 0, 1);
        LaurentPoly closed;
        if (n >= 1)
            closed = qcore::q_int(n) *
                     qcore::poch(-1, HalfInt::halves(1), HalfInt::halves(1), n - 1);
        out.push_back(rep_poly({{"case", "closed-form"}, {"n", ll(n)}}, fam, closed, t0));

        t0 = Clock::now();
        BigInt expect = 0;
        if (n >= 1) {
            expect = n;
            for (long long i = 1; i < n; ++i) expect *= 2;
        }
        const BigInt got = fam.eval_at_one();
        out.push_back(make({{"case", "classical"}, {"n", ll(n)}}, got == expect, got.str(),
                           expect.str(), "", t0));
    }
    return out;
}

Reports run_fine_v(const RunConfig& cfg) {
    Reports out;
    const long long order = cap_order(cfg, 16, 30, 34);
    const long long nmax = std::min<long long>(cap_n(cfg, 5, 5, 5), 5);
    if (nmax < 0) return {rep_skip({{"N", "-"}, {"order", "-"}, {"reading", "-"}})};
    for (long long N = 0; N <= nmax; ++N) out.push_back(series::check_fine_v(N, order));
    return out;
}

// ---------------------------------------------------------------- catalogue

void fill_standard(Registry& reg) {
    auto add = [&reg](std::string name, std::string statement, std::vector<std::string> keys,
                      std::function<Reports(const RunConfig&)> fn) {
        reg.add(IdentitySpec{std::move(name), std::move(statement), std::move(keys),
                             std::move(fn)});
    };

    add("euler-1.3",
        "finite product (1-x)(1-qx)...(1-q^{N-1}x) expands with binomial "
        "coefficients and triangular exponents",
        {"N"}, run_euler);
    add("euler-delta-1.5/4.4",
        "the alternating triangular-exponent binomial sum vanishes at x = 1",
        {"N"}, run_euler_delta);
    add("gauss-1.7",
        "alternating binomial sums: odd heights vanish, even heights collapse to "
        "the odd-exponent product",
        {"N"}, run_gauss);
    add("s-r1-1.10", "the r = 1 alternating sums in product form and their r = 0 match",
        {"N", "case"}, run_s_r1);
    add("main-1.12/1.16",
        "the alternating-sum polynomial equals its rising-power closed form",
        {"N"}, run_main);
    add("x0-1.33", "the rising-power closed form collapses to 1 at x = 0", {"N"}, run_x0);
    add("qderiv-1.18", "q-derivative lowers the sum family with factor [N]",
        {"N", "case"}, run_qderiv);
    add("factor-1.22", "[w over l][l] = [w][w-1 over l-1]", {"w", "l"}, run_factor);
    add("rising-deriv-1.23", "q-derivative of a rising power drops one factor",
        {"alpha", "v"}, run_rising_deriv);
    add("shift-1.25",
        "[2m+3-2k] times the descending product at 2m+3 equals [2m+3] times the "
        "product at 2m+1",
        {"m", "k"}, run_shift);
    add("base-1.26/1.27", "squared-base binomial weights and [u]_{q^2} = [2u]/[2]",
        {"case", "m", "k"}, run_base);
    add("step-1.28..1.31", "the four-step ladder to the even-height product formula",
        {"case", "m"}, run_step);
    add("pascal-2.8", "both Pascal recurrences, bases q and q^2", {"case", "N"}, run_pascal);
    add("recur-2.10", "two one-step recursions for the alternating-sum family",
        {"case", "N"}, run_recur);
    add("opO-2.12/2.17",
        "the operator x f(x) - f(qx) steps the family and acts on rising powers",
        {"case", "n"}, run_opO);
    add("ecoef-2.19/2.22/2.27", "cross-parity recurrences for the closed-form coefficients",
        {"case", "n"}, run_ecoef);
    add("taylor-3.3/3.6/3.7",
        "q-Taylor expansion in rising powers, monomial expansions, two-point symmetry",
        {"case", "n", "a", "b"}, run_taylor);
    add("taylor-S-3.10/3.12",
        "the alternating-sum polynomial expanded around x = 1, full and even-only",
        {"case", "N"}, run_taylor_S);
    add("bridge-3.13/3.14",
        "base-q binomials at even lower index match the squared-base closed-form "
        "coefficients",
        {"N"}, run_bridge);
    add("P-recur-3.17/3.18", "derivative and raising recurrences of the weighted family",
        {"case", "N", "alpha2"}, run_P_recur);
    add("rho-3.21", "derivative recurrence of the product basis", {"n", "alpha2"}, run_rho);
    add("theta-3.19",
        "triangular connection coefficients: residuals vanish, alpha = 0 matches the "
        "alternating Gauss values, deeper solves agree",
        {"case", "alpha2", "n_max"}, run_theta);
    add("geom-4.2/4.5/4.9",
        "weighted geometric sums against rising denominators, classical and shifted",
        {"case", "order", "r"}, run_geom);
    add("carlitz-4.8", "the unweighted denominator sum expands in even Gauss products",
        {"order"}, run_carlitz);
    add("bivar-4.10/4.11", "two-variable expansion into shifted difference products",
        {"case", "order_t", "order_z"}, run_bivar);
    add("negbinom-4.3/4.6", "negative-power binomial series, q and classical",
        {"case", "N", "order"}, run_negbinom);
    add("sigma-5.4/5.5/5.8",
        "squared-base binomial sums in product form, half-lattice and ratio versions",
        {"case", "N"}, run_sigma);
    add("sigma-sym-5.10", "height-negation symmetry of the weighted sums",
        {"N", "gamma"}, run_sigma_sym);
    add("sigma-rec-5.11", "two-step height recurrence of the weighted sums",
        {"N", "gamma"}, run_sigma_rec);
    add("ccoef-5.13/5.16", "expansion coefficients: recurrence vs closed form and support",
        {"l"}, run_ccoef);
    add("sigma-table-5.18", "the four printed low-height expansions, symbolically",
        {"l", "case"}, run_sigma_table);
    add("limit-5.19/5.21", "odd-height limits factor through the base sum",
        {"l", "order"}, run_limit);
    add("fine-5.22/5.23", "infinite-product quotients and the functional equation",
        {"case", "l", "order_q", "order_z"}, run_fine);
    add("qdiff-6.4/6.5", "difference triangles invert against the boundary formula",
        {"case", "n_max"}, run_qdiff);
    add("crux-6.8/6.10/6.11",
        "the weighted-binomial family: sigma form, closed product, classical value",
        {"case", "n"}, run_crux);
    add("fine-v-6.14/6.15", "direct expansion against the printed closed forms",
        {"N", "order", "reading"}, run_fine_v);
}

// Tags after the last '-': "a/b" lists, "A..B" numeric ranges.
std::vector<std::string> alias_names(const std::string& name) {
    const auto dash = name.rfind('-');
    if (dash == std::string::npos) return {};
    const std::string prefix = name.substr(0, dash);
    const std::string suffix = name.substr(dash + 1);
    std::vector<std::string> tags;
    std::size_t start = 0;
    while (start <= suffix.size()) {
        const auto slash = suffix.find('/', start);
        const std::string part = suffix.substr(
            start, slash == std::string::npos ? std::string::npos : slash - start);
        const auto range = part.find("..");
        if (range != std::string::npos) {
            const std::string from = part.substr(0, range);
            const std::string to = part.substr(range + 2);
            const auto dot_f = from.find('.');
            const auto dot_t = to.find('.');
            if (dot_f != std::string::npos && dot_t != std::string::npos &&
                from.substr(0, dot_f) == to.substr(0, dot_t)) {
                const std::string major = from.substr(0, dot_f);
                const long long lo = std::stoll(from.substr(dot_f + 1));
                const long long hi = std::stoll(to.substr(dot_t + 1));
                for (long long v = lo; v <= hi; ++v)
                    tags.push_back(major + "." + std::to_string(v));
            } else {
                tags.push_back(part);
            }
        } else if (!part.empty()) {
            tags.push_back(part);
        }
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    std::vector<std::string> out;
    for (const auto& t : tags) out.push_back(prefix + "-" + t);
    return out;
}

std::string params_key(const Params& p) {
    std::string out;
    for (const auto& [k, v] : p) out += k + "\x1f" + v + "\x1f";
    return out;
}

}  // namespace

Scale scale_from_string(const std::string& s) {
    if (s == "small") return Scale::small;
    if (s == "default") return Scale::normal;
    if (s == "large") return Scale::large;
    throw InvalidParameter("unknown scale: " + s);
}

std::string to_string(Scale s) {
    switch (s) {
        case Scale::small: return "small";
        case Scale::large: return "large";
        default: return "default";
    }
}

void Registry::add(IdentitySpec spec) {
    if (spec.name.empty()) throw InvalidParameter("identity name must not be empty");
    const std::size_t idx = specs_.size();
    std::vector<std::string> keys{spec.name};
    for (auto& a : alias_names(spec.name))
        if (a != spec.name) keys.push_back(std::move(a));
    for (const auto& k : keys)
        if (index_.count(k))
            throw InvalidParameter("identity name or alias already registered: " + k);
    for (const auto& k : keys) index_.emplace(k, idx);
    specs_.push_back(std::move(spec));
}

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) out.push_back(s.name);
    std::sort(out.begin(), out.end());
    return out;
}

bool Registry::contains(const std::string& name_or_alias) const {
    return index_.count(name_or_alias) != 0;
}

const IdentitySpec& Registry::spec(const std::string& name_or_alias) const {
    const auto it = index_.find(name_or_alias);
    if (it == index_.end()) throw UnknownIdentity("unknown identity: " + name_or_alias);
    return specs_[it->second];
}

std::vector<IdentityReport> Registry::run(const std::string& name_or_alias,
                                          const RunConfig& cfg) const {
    const IdentitySpec& s = spec(name_or_alias);
    std::vector<IdentityReport> reports = s.run(cfg);
    for (auto& rep : reports) {
        rep.name = s.name;
        Params normalized;
        for (const auto& key : s.param_keys) {
            const auto it = rep.params.find(key);
            normalized[key] = it == rep.params.end() ? "-" : it->second;
        }
        rep.params = std::move(normalized);
    }
    return reports;
}

RunSummary Registry::run_all(const RunConfig& cfg) const {
    const auto t0 = Clock::now();
    std::vector<std::future<std::vector<IdentityReport>>> futures;
    futures.reserve(specs_.size());
    for (const auto& s : specs_)
        futures.push_back(std::async(std::launch::async,
                                     [this, &s, &cfg] { return run(s.name, cfg); }));

    RunSummary summary;
    std::map<std::string, double> per_identity_ms;
    for (auto& f : futures)
        for (auto& rep : f.get()) {
            per_identity_ms[rep.name] += rep.elapsed_ms;
            switch (rep.status) {
                case CheckStatus::pass: ++summary.passed; break;
                case CheckStatus::fail: ++summary.failed; break;
                case CheckStatus::skipped: ++summary.skipped; break;
            }
            summary.reports.push_back(std::move(rep));
        }

    std::sort(summary.reports.begin(), summary.reports.end(),
              [](const IdentityReport& a, const IdentityReport& b) {
                  if (a.name != b.name) return a.name < b.name;
                  return params_key(a.params) < params_key(b.params);
              });

    summary.slowest.assign(per_identity_ms.begin(), per_identity_ms.end());
    std::sort(summary.slowest.begin(), summary.slowest.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    if (summary.slowest.size() > 5) summary.slowest.resize(5);
    summary.total_ms = ms_since(t0);
    return summary;
}

const Registry& Registry::standard() {
    static const Registry reg = [] {
        Registry r;
        fill_standard(r);
        return r;
    }();
    return reg;
}

std::string reports_json(const std::vector<IdentityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rep : reports) {
        nlohmann::json j{{"name", rep.name},
                         {"params", rep.params},
                         {"status", to_string(rep.status)},
                         {"elapsed_ms", rep.elapsed_ms}};
        if (rep.witness)
            j["witness"] = {{"point", rep.witness->point},
                            {"lhs", rep.witness->lhs},
                            {"rhs", rep.witness->rhs}};
        else
            j["witness"] = nullptr;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string RunSummary::json() const { return reports_json(reports); }

std::vector<IdentityReport> run(const std::string& name_or_alias, const RunConfig& cfg) {
    return Registry::standard().run(name_or_alias, cfg);
}

RunSummary run_all(Scale scale) { return Registry::standard().run_all(scale); }

}  // namespace qseries::identities

// Release gate: every shipped capability exercised at its contract bounds,
// each criterion timed against its runtime budget and reported on one line.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/polyq.hpp"
#include "qseries/qcore.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using qseries::CheckStatus;
using qseries::IdentityReport;
using qseries::polyq::BigInt;
using qseries::polyq::HalfInt;
using qseries::polyq::LaurentPoly;
namespace identities = qseries::identities;
namespace qcore = qseries::qcore;
namespace series = qseries::series;

struct Outcome {
    bool ok = true;
    long long checks = 0;
    std::string detail;
};

struct Criterion {
    int id;
    std::string label;
    double budget_s;  // <= 0: no budget enforced
    std::function<Outcome()> run;
};

std::string params_text(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ",";
        out += k + "=" + v;
    }
    return out;
}

// Runs registry identities and folds the reports: any fail or skip breaks the
// criterion, the first offender is quoted with its witness point.
Outcome run_ids(const std::vector<std::pair<std::string, identities::RunConfig>>& jobs) {
    Outcome out;
    for (const auto& [name, cfg] : jobs) {
        for (const IdentityReport& r : identities::run(name, cfg)) {
            ++out.checks;
            if (r.status == CheckStatus::pass) continue;
            if (out.ok) {
                out.ok = false;
                std::ostringstream d;
                d << to_string(r.status) << ": " << r.name << " " << params_text(r.params);
                if (r.witness) d << " at " << r.witness->point;
                out.detail = d.str();
            }
        }
    }
    return out;
}

identities::RunConfig with_n(long long n_max) {
    identities::RunConfig cfg;
    cfg.n_max = n_max;
    return cfg;
}

identities::RunConfig with_order(long long order) {
    identities::RunConfig cfg;
    cfg.order = order;
    return cfg;
}

Outcome criterion_series_suite() {
    Outcome out = run_ids({{"geom-4.2/4.5/4.9", with_order(40)},
                           {"negbinom-4.3/4.6", with_order(40)},
                           {"carlitz-4.8", with_order(40)},
                           {"bivar-4.10/4.11", with_order(12)}});
    if (!out.ok) return out;

    // The even slots of the alternating-denominator sum, as printed: the
    // t^2 coefficient is 1 - q and the t^4 coefficient is (1-q)(1-q^3).
    const long long order = 6;
    series::TSeries lhs = series::TSeries::zeros("t", order);
    series::TSeries denom_inv = series::TSeries::unit("t", order);
    for (long long k = 0; k < order; ++k) {
        series::TSeries factor = series::TSeries::unit("t", order);
        factor.set_coeff(1, LaurentPoly::q_power(HalfInt(k)));
        denom_inv *= series::reciprocal(factor);
        lhs += series::shift_mul(denom_inv, k, LaurentPoly::one());
    }
    const LaurentPoly q1 = LaurentPoly::one() - LaurentPoly::q_power(HalfInt(1));
    const LaurentPoly q13 = q1 * (LaurentPoly::one() - LaurentPoly::q_power(HalfInt(3)));
    ++out.checks;
    if (!(lhs.coeff(2) == q1)) {
        out.ok = false;
        out.detail = "t^2 coefficient is " + lhs.coeff(2).str() + ", want " + q1.str();
        return out;
    }
    ++out.checks;
    if (!(lhs.coeff(4) == q13)) {
        out.ok = false;
        out.detail = "t^4 coefficient is " + lhs.coeff(4).str() + ", want " + q13.str();
    }
    return out;
}

Outcome criterion_fine_v() {
    Outcome out;
    std::string readings;
    for (long long N = 1; N <= 5; ++N) {
        const auto reports = identities::run("fine-v-6.14/6.15", [&] {
            identities::RunConfig cfg;
            cfg.n_max = N;  // unused by the runner; order drives the truncation
            cfg.order = 30;
            return cfg;
        }());
        for (const IdentityReport& r : reports) {
            if (r.params.at("N") != std::to_string(N)) continue;
            ++out.checks;
            const std::string reading =
                r.params.count("reading") ? r.params.at("reading") : "-";
            if (r.status != CheckStatus::pass) {
                out.ok = false;
                out.detail = "N=" + std::to_string(N) + " " + to_string(r.status) +
                             " reading=" + reading;
                return out;
            }
            const bool odd = N % 2 != 0;
            const bool good =
                odd ? (reading == "as-printed" || reading == "expanded-product")
                    : reading == "even-product";
            if (!good) {
                out.ok = false;
                out.detail = "N=" + std::to_string(N) + " ambiguous reading=" + reading;
                return out;
            }
            if (!readings.empty()) readings += " ";
            readings += "N" + std::to_string(N) + "=" + reading;
        }
    }
    out.detail = readings;
    return out;
}

Outcome criterion_degenerations() {
    Outcome out;
    // Alternating binomial row sums vanish once the coefficients are summed,
    // i.e. the whole alternating family degenerates to 0 at q = 1.
    for (long long N = 1; N <= 15; ++N) {
        ++out.checks;
        const LaurentPoly s = qcore::s_sum(N, HalfInt(0));
        if (s.eval_at_one() != 0) {
            out.ok = false;
            out.detail = "alternating sum N=" + std::to_string(N) + " sums to " +
                         s.eval_at_one().str();
            return out;
        }
    }
    identities::RunConfig small;
    small.scale = identities::Scale::small;
    Outcome rest = run_ids({{"geom-4.2/4.5/4.9", small},
                            {"negbinom-4.3/4.6", small},
                            {"bivar-4.10/4.11", small},
                            {"crux-6.8/6.10/6.11", small}});
    rest.checks += out.checks;
    return rest;
}

Outcome criterion_mutation() {
    Outcome out;
    identities::Registry reg;
    identities::IdentitySpec probe;
    probe.name = "probe-9.1";
    probe.statement = "deliberately corrupted column-sum check";
    probe.param_keys = {"N"};
    probe.run = [](const identities::RunConfig&) {
        std::vector<IdentityReport> reports;
        for (long long N = 1; N <= 6; ++N) {
            const LaurentPoly lhs = qcore::q_binomial(N, 1);
            LaurentPoly rhs = qcore::q_int(N);
            if (N == 4) rhs = rhs * LaurentPoly::q_power(HalfInt(1));  // exponent off by one
            IdentityReport r;
            r.name = "probe-9.1";
            r.params = {{"N", std::to_string(N)}};
            r.status = lhs == rhs ? CheckStatus::pass : CheckStatus::fail;
            if (r.status == CheckStatus::fail)
                r.witness = qseries::Witness{"N=" + std::to_string(N), lhs.str(), rhs.str()};
            reports.push_back(std::move(r));
        }
        return reports;
    };
    reg.add(probe);
    const identities::RunSummary sum = reg.run_all(identities::RunConfig{});
    out.checks = static_cast<long long>(sum.reports.size());
    if (sum.failed != 1 || sum.passed != 5) {
        out.ok = false;
        out.detail = "expected exactly 1 failure out of 6, saw " + std::to_string(sum.failed);
        return out;
    }
    for (const IdentityReport& r : sum.reports) {
        if (r.status != CheckStatus::fail) continue;
        if (!r.witness || r.witness->point != "N=4") {
            out.ok = false;
            out.detail = "failure carries no usable witness";
        }
        return out;
    }
    return out;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "generating-sum vs product closed form to N=30", 5.0,
         [] { return run_ids({{"main-1.12/1.16", with_n(30)}}); }},
        {2, "alternating column sums in product form to N=62", 1.0,
         [] { return run_ids({{"gauss-1.7", with_n(62)}}); }},
        {3, "constant-term identity to N=30", 1.0,
         [] { return run_ids({{"x0-1.33", with_n(30)}}); }},
        {4, "recursion operator suite to N,s=25", 5.0,
         [] {
             return run_ids({{"recur-2.10", with_n(25)},
                             {"opO-2.12/2.17", with_n(25)},
                             {"ecoef-2.19/2.22/2.27", with_n(25)}});
         }},
        {5, "twisted Taylor expansions to n,N=20", 10.0,
         [] {
             return run_ids({{"taylor-3.3/3.6/3.7", with_n(20)},
                             {"taylor-S-3.10/3.12", with_n(20)},
                             {"bridge-3.13/3.14", with_n(20)}});
         }},
        {6, "connection-coefficient solver, residuals and depth agreement", 0.0,
         [] { return run_ids({{"theta-3.19", with_n(12)}}); }},
        {7, "truncated series suite at order 40 (bivariate 12)", 30.0,
         criterion_series_suite},
        {8, "partial-theta ratio suite to N=20, l=8", 10.0,
         [] {
             return run_ids({{"sigma-5.4/5.5/5.8", with_n(20)},
                             {"sigma-sym-5.10", with_n(20)},
                             {"sigma-rec-5.11", with_n(20)},
                             {"ccoef-5.13/5.16", with_n(8)},
                             {"sigma-table-5.18", identities::RunConfig{}}});
         }},
        {9, "limit and functional identities at q-order 40, z-order 8", 20.0,
         [] {
             return run_ids({{"limit-5.19/5.21", with_order(40)},
                             {"fine-5.22/5.23", with_order(40)}});
         }},
        {10, "difference-table inversions and closed forms to n=15", 5.0,
         [] {
             return run_ids({{"qdiff-6.4/6.5", with_n(15)},
                             {"crux-6.8/6.10/6.11", with_n(15)}});
         }},
        {11, "partial-sum series against both closed-form readings", 10.0,
         criterion_fine_v},
        {12, "classical shadows recovered at q=1", 1.0, criterion_degenerations},
        {13, "mutation probe: corrupted check must fail with witness", 0.0,
         criterion_mutation},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = Clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - t0)
                .count();
        if (out.ok && c.budget_s > 0 && elapsed > c.budget_s) {
            out.ok = false;
            out.detail = "budget exceeded";
        }
        if (!out.ok) ++failures;

        std::ostringstream line;
        line << (out.ok ? "[PASS]" : "[FAIL]") << " " << (c.id < 10 ? "0" : "")
             << c.id << " " << c.label << " (" << out.checks << " checks, ";
        line.setf(std::ios::fixed);
        line.precision(2);
        line << elapsed << " s";
        if (c.budget_s > 0) {
            line << ", budget ";
            line.precision(0);
            line << c.budget_s << " s";
        }
        line << ")";
        if (!out.detail.empty()) line << " " << out.detail;
        std::cout << line.str() << "\n";
    }
    std::cout << (13 - failures) << "/13 criteria passed\n";
    return failures == 0 ? 0 : 1;
}

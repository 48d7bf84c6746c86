#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qseries/errors.hpp"
#include "qseries/expr.hpp"
#include "qseries/identities.hpp"
#include "qseries/qcore.hpp"
#include "qseries/qpolyx.hpp"

namespace {

using qseries::CheckStatus;
using qseries::IdentityReport;
using qseries::polyq::BigInt;
using qseries::polyq::HalfInt;
using qseries::polyq::LaurentPoly;
using qseries::qpolyx::XPoly;
namespace identities = qseries::identities;
namespace cli = qseries::cli;

// ------------------------------------------------------------------ helpers

std::string params_text(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ", ";
        out += k + "=" + v;
    }
    return out;
}

void print_report_line(const IdentityReport& r) {
    std::cout << to_string(r.status) << " " << r.name;
    const std::string p = params_text(r.params);
    if (!p.empty()) std::cout << " " << p;
    std::cout << "\n";
    if (r.witness) {
        std::cout << "  at: " << r.witness->point << "\n";
        std::cout << "  lhs: " << r.witness->lhs << "\n";
        std::cout << "  rhs: " << r.witness->rhs << "\n";
    }
}

int write_json_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 2;
    }
    out << payload << "\n";
    return 0;
}

// "3/2" or "2" -> twice the value; empty optional on malformed input.
std::optional<long long> parse_alpha2(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const long long whole = std::stoll(s, &used);
            if (used != s.size()) return std::nullopt;
            return 2 * whole;
        }
        if (s.substr(slash + 1) != "2") return std::nullopt;
        std::size_t used = 0;
        const long long num = std::stoll(s.substr(0, slash), &used);
        if (used != slash) return std::nullopt;
        return num;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

identities::Scale env_scale() {
    const char* env = std::getenv("QSERIES_SCALE");
    if (env == nullptr || *env == '\0') return identities::Scale::normal;
    return identities::scale_from_string(env);  // InvalidParameter on junk
}

std::string half_text(HalfInt e) {
    if (e.twice % 2 == 0) return std::to_string(e.twice / 2);
    return std::to_string(e.twice) + "/2";
}

std::string laurent_tex(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [ue, c] : p.terms()) {
        const bool neg = c < 0;
        const BigInt mag = neg ? BigInt(-c) : c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        const HalfInt e = HalfInt::halves(ue);
        if (e.is_zero()) {
            out += mag.str();
            continue;
        }
        const std::string pw = e == HalfInt(1) ? "q" : "q^{" + half_text(e) + "}";
        out += (mag == 1) ? pw : mag.str() + " " + pw;
    }
    return out;
}

std::string xpoly_tex(const XPoly& v) {
    if (v.degree() < 0) return "0";
    if (v.degree() == 0) return laurent_tex(v.coeff(0));
    std::string out;
    bool first = true;
    for (long long d = 0; d <= v.degree(); ++d) {
        const LaurentPoly c = v.coeff(d);
        if (c.is_zero()) continue;
        if (!first) out += " + ";
        first = false;
        std::string coeff_text;
        if (!(c == LaurentPoly::one()) || d == 0)
            coeff_text = "\\left(" + laurent_tex(c) + "\\right)";
        out += coeff_text;
        if (d == 1)
            out += "x";
        else if (d >= 2)
            out += "x^{" + std::to_string(d) + "}";
    }
    return out;
}

nlohmann::json xpoly_json(const XPoly& v) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (long long d = 0; d <= v.degree(); ++d) {
        const LaurentPoly c = v.coeff(d);
        if (c.is_zero()) continue;
        coeffs.push_back({d, nlohmann::json::parse(c.json())});
    }
    return {{"degree", v.degree()}, {"coeffs", std::move(coeffs)}};
}

// -------------------------------------------------------------------- table

struct Table {
    std::string kind;
    std::vector<std::string> columns;               // header cells, label first
    std::vector<std::vector<std::string>> rows;     // label + cells
};

Table make_table(const std::string& kind, long long n_max, long long alpha2) {
    Table t;
    t.kind = kind;
    if (kind == "s") {
        const std::vector<HalfInt> rs{HalfInt(0), HalfInt::halves(1), HalfInt(1),
                                      HalfInt::halves(3), HalfInt(2)};
        t.columns.push_back("N");
        for (const HalfInt r : rs) t.columns.push_back("r=" + half_text(r));
        for (long long N = 0; N <= n_max; ++N) {
            std::vector<std::string> row{std::to_string(N)};
            for (const HalfInt r : rs) row.push_back(qseries::qcore::s_sum(N, r).str());
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    if (kind == "sigma") {
        // Row l: the coefficients of Q^s in sigma_N(2l+1)/sigma_N(1), Q = q^N.
        t.columns.push_back("l");
        for (long long s = 0; s <= n_max; ++s)
            t.columns.push_back("s=" + std::to_string(s));
        for (long long l = 1; l <= n_max; ++l) {
            std::vector<std::string> row{std::to_string(l)};
            for (long long s = 0; s <= n_max; ++s) {
                if (s > l) {
                    row.push_back("");
                    continue;
                }
                const LaurentPoly cell = qseries::qcore::c_coeff_closed(l, s) *
                                         LaurentPoly::q_power(HalfInt(s * (s + 1) / 2));
                row.push_back(cell.str());
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    if (kind == "ccoef") {
        t.columns.push_back("l");
        for (long long s = 0; s <= n_max; ++s)
            t.columns.push_back("s=" + std::to_string(s));
        for (long long l = 0; l <= n_max; ++l) {
            std::vector<std::string> row{std::to_string(l)};
            for (long long s = 0; s <= n_max; ++s)
                row.push_back(s > l ? ""
                                    : qseries::qcore::c_coeff_closed(l, s).str());
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    if (kind == "theta") {
        const auto theta = qseries::qpolyx::theta_solve(n_max, alpha2);
        t.columns = {"k", "theta"};
        for (std::size_t k = 0; k < theta.size(); ++k)
            t.rows.push_back({std::to_string(k), theta[k].str()});
        return t;
    }
    // gauss: the even-height alternating sums in product form.
    t.columns = {"m", "product"};
    for (long long m = 0; m <= n_max; ++m)
        t.rows.push_back({std::to_string(m), qseries::qcore::gauss_product(m).str()});
    return t;
}

void emit_table(const Table& t, const std::string& format) {
    if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            std::cout << (i ? "," : "") << t.columns[i];
        std::cout << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << row[i];
            std::cout << "\n";
        }
        return;
    }
    if (format == "latex") {
        std::cout << "\\begin{tabular}{" << std::string(t.columns.size(), 'l') << "}\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            std::cout << (i ? " & " : "") << t.columns[i];
        std::cout << " \\\\\n\\hline\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::cout << (i ? " & " : "");
                if (i > 0 && !row[i].empty())
                    std::cout << "$" << row[i] << "$";
                else
                    std::cout << row[i];
            }
            std::cout << " \\\\\n";
        }
        std::cout << "\\end{tabular}\n";
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json cells = nlohmann::json::array();
        for (std::size_t i = 1; i < row.size(); ++i) cells.push_back(row[i]);
        rows.push_back({{"label", row[0]}, {"cells", std::move(cells)}});
    }
    const nlohmann::json j{{"kind", t.kind}, {"columns", t.columns}, {"rows", std::move(rows)}};
    std::cout << j.dump(2) << "\n";
}

// -------------------------------------------------------------- subcommands

int cmd_verify(const std::string& name, std::optional<long long> n_max,
               std::optional<long long> order, const std::string& json_path) {
    identities::RunConfig cfg;
    cfg.scale = env_scale();
    cfg.n_max = n_max;
    cfg.order = order;
    const auto reports = identities::run(name, cfg);
    long long failed = 0;
    double total_ms = 0.0;
    for (const auto& r : reports) {
        print_report_line(r);
        if (r.status == CheckStatus::fail) ++failed;
        total_ms += r.elapsed_ms;
    }
    std::cerr << "elapsed_ms " << total_ms << "\n";
    if (!json_path.empty()) {
        const int rc = write_json_file(json_path, identities::reports_json(reports));
        if (rc != 0) return rc;
    }
    return failed > 0 ? 1 : 0;
}

int cmd_verify_all(const std::string& scale_flag, const std::string& json_path) {
    identities::RunConfig cfg;
    cfg.scale = scale_flag.empty() ? env_scale() : identities::scale_from_string(scale_flag);
    const identities::RunSummary summary = identities::Registry::standard().run_all(cfg);

    // Aggregate per identity; reports are sorted by name already.
    std::map<std::string, std::pair<long long, long long>> counts;  // name -> (pass, total)
    std::map<std::string, bool> any_fail;
    for (const auto& r : summary.reports) {
        auto& c = counts[r.name];
        ++c.second;
        if (r.status == CheckStatus::pass) ++c.first;
        if (r.status == CheckStatus::fail) any_fail[r.name] = true;
    }
    for (const auto& [name, c] : counts) {
        const char* status = any_fail.count(name) ? "fail" : (c.first > 0 ? "pass" : "skipped");
        std::cout << status << " " << name << " " << c.first << "/" << c.second << "\n";
    }
    for (const auto& r : summary.reports)
        if (r.status == CheckStatus::fail) print_report_line(r);
    std::cout << "passed " << summary.passed << ", failed " << summary.failed << ", skipped "
              << summary.skipped << "\n";

    std::cerr << "elapsed_ms " << summary.total_ms << "\n";
    for (const auto& [name, ms] : summary.slowest)
        std::cerr << "slow " << name << " " << ms << "\n";

    if (!json_path.empty()) {
        const int rc = write_json_file(json_path, summary.json());
        if (rc != 0) return rc;
    }
    return summary.all_passed() ? 0 : 1;
}

int cmd_eval(const std::string& src, const std::string& format) {
    const cli::ExprPtr ast = cli::parse(src);
    const XPoly v = cli::eval(*ast);
    if (format == "text") {
        if (v.degree() <= 0)
            std::cout << (v.degree() < 0 ? LaurentPoly::zero() : v.coeff(0)).str() << "\n";
        else
            std::cout << v.str() << "\n";
        return 0;
    }
    if (format == "latex") {
        std::cout << cli::to_latex(*ast) << " = " << xpoly_tex(v) << "\n";
        return 0;
    }
    const nlohmann::json j{{"expr", src}, {"value", xpoly_json(v)}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_table(const std::string& kind, std::optional<long long> n_max,
              const std::string& alpha, const std::string& format) {
    long long alpha2 = 0;
    if (!alpha.empty()) {
        const auto parsed = parse_alpha2(alpha);
        if (!parsed || *parsed < 0) {
            std::cerr << "invalid --alpha value: " << alpha << "\n";
            return 2;
        }
        alpha2 = *parsed;
    }
    long long k = n_max.value_or(kind == "sigma" ? 4 : (kind == "ccoef" ? 6 : 8));
    if (k < 0) {
        std::cerr << "--n-max must be nonnegative\n";
        return 2;
    }
    emit_table(make_table(kind, k, alpha2), format);
    return 0;
}

int cmd_theta(const std::string& alpha, long long n_max, const std::string& json_path) {
    const auto parsed = parse_alpha2(alpha);
    if (!parsed || *parsed < 0) {
        std::cerr << "invalid --alpha value: " << alpha << "\n";
        return 2;
    }
    if (n_max < 0) {
        std::cerr << "--n-max must be nonnegative\n";
        return 2;
    }
    std::vector<qseries::polyq::RationalFunction> theta;
    try {
        theta = qseries::qpolyx::theta_solve(n_max, *parsed);
    } catch (const qseries::ThetaInconsistent& e) {
        std::cout << "fail theta alpha=" << alpha << "\n";
        std::cout << "  " << e.what() << "\n";
        return 1;
    }
    for (std::size_t k = 0; k < theta.size(); ++k)
        std::cout << "theta_" << k << " = " << theta[k].str() << "\n";
    if (!json_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t k = 0; k < theta.size(); ++k)
            arr.push_back({{"k", k}, {"theta", theta[k].str()}});
        const int rc = write_json_file(json_path, arr.dump(2));
        if (rc != 0) return rc;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series arithmetic, identity verification, and tables"};
    app.require_subcommand(1);

    std::string verify_name;
    std::optional<long long> verify_n_max, verify_order;
    std::string verify_json;
    CLI::App* verify = app.add_subcommand("verify", "run one registered identity check");
    verify->add_option("identity", verify_name, "identity name or alias")->required();
    verify->add_option("--n-max", verify_n_max, "cap the swept index range");
    verify->add_option("--order", verify_order, "series truncation order");
    verify->add_option("--json", verify_json, "write the JSON report to this path");

    std::string all_scale, all_json;
    CLI::App* verify_all = app.add_subcommand("verify-all", "run every registered identity");
    verify_all->add_option("--scale", all_scale, "small | default | large")
        ->check(CLI::IsMember({"small", "default", "large"}));
    verify_all->add_option("--json", all_json, "write the JSON report to this path");

    std::string eval_src, eval_format = "text";
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
    eval_cmd->add_option("expr", eval_src, "expression source")->required();
    eval_cmd->add_option("--format", eval_format, "text | json | latex")
        ->check(CLI::IsMember({"text", "json", "latex"}));

    std::string table_kind, table_alpha, table_format = "csv";
    std::optional<long long> table_n_max;
    CLI::App* table = app.add_subcommand("table", "emit a value table");
    table->add_option("kind", table_kind, "s | sigma | ccoef | theta | gauss")
        ->required()
        ->check(CLI::IsMember({"s", "sigma", "ccoef", "theta", "gauss"}));
    table->add_option("--n-max", table_n_max, "largest row index");
    table->add_option("--alpha", table_alpha, "exponent weight, n/2 syntax (theta table)");
    table->add_option("--format", table_format, "csv | latex | json")
        ->check(CLI::IsMember({"csv", "latex", "json"}));

    std::string theta_alpha = "0", theta_json;
    long long theta_n_max = 8;
    CLI::App* theta = app.add_subcommand("theta", "solve the connection coefficients");
    theta->add_option("--alpha", theta_alpha, "exponent weight, n/2 syntax");
    theta->add_option("--n-max", theta_n_max, "solve depth");
    theta->add_option("--json", theta_json, "write the JSON table to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify))
            return cmd_verify(verify_name, verify_n_max, verify_order, verify_json);
        if (app.got_subcommand(verify_all)) return cmd_verify_all(all_scale, all_json);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_src, eval_format);
        if (app.got_subcommand(table))
            return cmd_table(table_kind, table_n_max, table_alpha, table_format);
        if (app.got_subcommand(theta)) return cmd_theta(theta_alpha, theta_n_max, theta_json);
    } catch (const qseries::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const qseries::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}

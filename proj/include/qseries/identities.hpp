#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/report.hpp"

namespace qseries::identities {

enum class Scale { small, normal, large };
// "small" | "default" | "large"; InvalidParameter otherwise.
Scale scale_from_string(const std::string& s);
std::string to_string(Scale s);

// Knobs for a run: the scale picks each identity's built-in ranges, the
// optional fields override the matching knob where the identity has one
// (n_max caps index loops, order sets series truncation, alpha2 = 2*alpha
// pins the exponent-weight family to a single member).
struct RunConfig {
    Scale scale = Scale::normal;
    std::optional<long long> n_max;
    std::optional<long long> order;
    std::optional<long long> alpha2;
};

// A registered check: canonical name, a one-line statement of the relation,
// the exact parameter keys every report carries, and the runner.
struct IdentitySpec {
    std::string name;
    std::string statement;
    std::vector<std::string> param_keys;
    std::function<std::vector<IdentityReport>(const RunConfig&)> run;
};

struct RunSummary {
    std::vector<IdentityReport> reports;  // sorted by (name, params)
    long long passed = 0;
    long long failed = 0;
    long long skipped = 0;
    double total_ms = 0.0;
    // (identity name, elapsed ms) for the slowest identities, descending.
    std::vector<std::pair<std::string, double>> slowest;

    bool all_passed() const { return failed == 0; }
    // JSON array of the report objects.
    std::string json() const;
};

std::string reports_json(const std::vector<IdentityReport>& reports);

// Name-to-check registry. Lookup accepts the canonical token or any alias
// obtained by splitting a multi-tag token: "opO-2.12/2.17" answers to
// "opO-2.12" and "opO-2.17", "step-1.28..1.31" to each of step-1.28 ..
// step-1.31. Reports always carry the canonical token.
class Registry {
public:
    Registry() = default;

    // The full built-in catalogue.
    static const Registry& standard();

    // Rejects duplicate canonical names or alias collisions.
    void add(IdentitySpec spec);

    std::vector<std::string> names() const;  // canonical tokens, sorted
    bool contains(const std::string& name_or_alias) const;
    const IdentitySpec& spec(const std::string& name_or_alias) const;  // UnknownIdentity

    // One report per parameter point, normalized to the declared keys and
    // stamped with the canonical name.
    std::vector<IdentityReport> run(const std::string& name_or_alias,
                                    const RunConfig& cfg = {}) const;

    // Every identity, concurrently; reports aggregated and sorted.
    RunSummary run_all(const RunConfig& cfg) const;
    RunSummary run_all(Scale scale) const { return run_all(RunConfig{scale, {}, {}, {}}); }

private:
    std::vector<IdentitySpec> specs_;
    std::map<std::string, std::size_t> index_;  // canonical and alias keys
};

std::vector<IdentityReport> run(const std::string& name_or_alias, const RunConfig& cfg = {});
RunSummary run_all(Scale scale);

}  // namespace qseries::identities

#pragma once

#include <map>
#include <optional>
#include <string>

namespace qseries {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "skipped";
    }
}

// Failing parameter point with the canonical text of both sides, in full.
struct Witness {
    std::string point;
    std::string lhs;
    std::string rhs;
};

// One check result. Invariant: status == fail implies witness is present.
struct IdentityReport {
    std::string name;
    std::map<std::string, std::string> params;
    CheckStatus status = CheckStatus::pass;
    std::optional<Witness> witness;
    double elapsed_ms = 0.0;
};

}  // namespace qseries

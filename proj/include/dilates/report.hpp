#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace dilates {

// Structured outcome of one verifier run. For exact claims, lhs/rhs/slack are
// decimal strings of exact integers or rationals and pass mirrors the integer
// comparison; float-only claims are marked exact = false and are informational
// (they never decide exit codes on their own).
struct Report {
  std::string claim;    // stable claim id, e.g. "discbm", "trace.lowdim"
  std::string inputs;   // short human summary of sizes and parameters
  std::string lhs;
  std::string rhs;
  std::string slack;    // rhs - lhs for <= claims, lhs - rhs for >= claims
  bool exact = true;
  bool pass = false;
  std::string witness;  // counterexample data when pass is false, else notes

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["inputs"] = inputs;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["slack"] = slack;
    j["exact"] = exact;
    j["pass"] = pass;
    if (!witness.empty()) j["witness"] = witness;
    return j;
  }

  std::string text_line() const {
    std::string out = pass ? "[pass] " : "[FAIL] ";
    out += claim + "  " + inputs + "  lhs=" + lhs + " rhs=" + rhs + " slack=" + slack;
    if (!exact) out += "  (float, informational)";
    if (!witness.empty()) out += "  witness: " + witness;
    return out;
  }
};

inline bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace dilates

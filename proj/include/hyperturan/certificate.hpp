#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperturan/io.hpp"
#include "hyperturan/region.hpp"

namespace hyperturan {

/// Citation index: every certificate names one of these keys as its anchor.
struct Anchor {
  std::string key;
  std::string statement;
};

const std::vector<Anchor>& anchor_index();
const Anchor* find_anchor(const std::string& key);

/// One optimization row with argmax, KKT payload and exact flags.
Json region_row(const OptimizationReport& rep);

/// Certificate for maximize_product(r, k).
Json region_max_certificate(int r, int k, bool exact);

/// Rows for k = ceil(r/e) over r in [r_min, r_max] (2 <= r_min <= r_max <= 40);
/// r with ceil(r/e) > floor(r/2) is listed under "excluded".
Json theorem_table(int r_min, int r_max);

Json counterexample_row(const CounterexampleResult& c, int r, int k);
Json counterexample_certificate(int r, int k, std::optional<Rational> eps);
/// Rows for every 1 <= k < floor(r/e) over r in [r_min, r_max].
Json counterexample_table(int r_min, int r_max);

std::string theorem_table_csv(const Json& cert);
std::string counterexample_table_csv(const Json& cert);

struct VerifyResult {
  bool pass = true;
  /// Violated conditions, each naming the row and the condition.
  std::vector<std::string> failures;
};

/// Re-checks a certificate from its recorded data without re-optimizing.
/// Throws std::invalid_argument when the certificate is malformed.
VerifyResult verify_certificate(const Json& cert, double tol = kFeasibilityTol);

}  // namespace hyperturan

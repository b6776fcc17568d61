#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "jbstar/algebra.hpp"
#include "jbstar/tolerances.hpp"

namespace jbstar {

/// Outcome of one named check inside a suite. `anchor` names the
/// mathematical property the check exercises.
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::optional<double> residual;
  nlohmann::json payload;  // witness data, counts, notes
};

/// Outcome record of a suite run. Deterministic for fixed (suite, seed,
/// tolerances, samples): checks are ordered by index and the serialized form
/// carries no timing, so repeated runs serialize byte-identically. The
/// wall-clock duration is kept in memory for logging only.
struct VerificationReport {
  int schema = 1;
  std::string suite;
  std::string algebra;
  std::uint64_t seed = 0;
  int samples = 0;
  Tolerances tolerances;
  std::vector<CheckRecord> checks;
  double duration_seconds = 0;  // excluded from serialization

  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string to_string() const { return to_json().dump(2) + "\n"; }
};

nlohmann::json element_to_json(const Element& e);
Element element_from_json(const Algebra& alg, const nlohmann::json& j);

}  // namespace jbstar

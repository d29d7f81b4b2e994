#pragma once

#include "k3aut/io.hpp"

#include <string>
#include <vector>

namespace k3aut {

/// One comparison of a computed value against a shipped expected value.
struct Check {
  std::string name;
  Json expected;
  Json computed;
  std::string source;  // "published", "derived" or "invariant"
  std::string note;
  bool pass = false;
};

enum class ReportStatus { Pass, Fail, Inconclusive };

struct Report {
  std::string scenario;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  /// Set when a semi-decision (descent, certification) did not conclude.
  bool inconclusive = false;

  ReportStatus status() const;
  const Check* find(const std::string& name) const;
  /// {"schema", "scenario", "inputs", "inputs_digest", "results", "checks", "status"}.
  Json to_json() const;
};

std::string to_string(ReportStatus s);

/// det N, L_N = U + 4A1 by an explicit isometry, the fixed lattice M, the
/// discriminant form, the nine (-2)-curves and the minimal ample square.
Report four_a1_report(const PublishedConstants& pc);

/// Pell unit, folded reflections A1 and A2, the class F and its decomposition
/// search, the infinite order of A1 A2 and the finite-index certificate.
Report two_conics_report(const PublishedConstants& pc);

struct DiagonalOptions {
  unsigned threads = 1;
  unsigned word_cap = 5;        // generator reduction
  unsigned relation_length = 5; // among stabiliser generators
  unsigned mixed_length = 4;    // words that use a reflection
  std::size_t coset_cap = 10000;
};

/// The whole chain for x^4 - y^4 = c (z^4 - w^4), with the shipped counts as
/// expected values. Throws std::invalid_argument for inadmissible c.
Report diagonal_report(const PublishedConstants& pc, const Rat& c, const DiagonalOptions& opt = {});

}  // namespace k3aut

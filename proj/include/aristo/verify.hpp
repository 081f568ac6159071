#pragma once

// Check suites over random samples, and the erratum protocol: a claim is
// tested as stated first; if it fails, documented candidate corrections are
// tried in order and the first that passes is reported next to it.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aristo/check.hpp"
#include "aristo/types.hpp"

namespace aristo {

struct VerifyOptions {
  std::string suite = "all";
  Couplings couplings{1.0, 1.0, 1.0, 1.0};
  int samples = 100;
  std::uint64_t seed = 1;
  double box = 5.0;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;

  /// Every check passes, is a documented erratum, or was skipped.
  bool acceptable() const;
};

/// all, tensors, extended, conserved, reduction, roots.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite, a non-positive sample count or box.
VerifyReport run_verify(const VerifyOptions& opts);

std::vector<CheckResult> verify_conserved(const VerifyOptions& opts);
std::vector<CheckResult> verify_tensors(const VerifyOptions& opts);
std::vector<CheckResult> verify_extended(const VerifyOptions& opts);
std::vector<CheckResult> verify_reduction(const VerifyOptions& opts);
std::vector<CheckResult> verify_roots(const VerifyOptions& opts);

struct Candidate {
  std::string label;
  std::function<CheckResult()> run;
};

/// Appends `stated` to `out`. When it fails, runs the candidates in order; on
/// the first pass, marks `stated` as an expected erratum and appends the
/// candidate result (named "<stated>[<label>]") right after it.
void audit_claim(std::vector<CheckResult>& out, CheckResult stated,
                 const std::vector<Candidate>& candidates);

}  // namespace aristo

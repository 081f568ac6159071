#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "aristo/types.hpp"

namespace aristo {

/// Outcome of one audited claim.
///
/// `max_residual` and `scale` belong to the worst sample (largest
/// residual/scale ratio), so `pass` is equivalent to max_residual <= tol * scale.
/// A skipped check carries the reason in `note` and does not pass.
struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double scale = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<double> calibration;
  std::optional<std::string> note;
  bool expected_erratum = false;  ///< printed claim fails but a documented correction passes
  bool skipped = false;

  /// Acceptable for the verify exit code.
  bool acceptable() const { return pass || expected_erratum || skipped; }
};

/// Folds per-sample residuals into the worst normalized one.
class ResidualAccumulator {
 public:
  void add(const Residual& r) {
    ++samples_;
    const double ratio = r.normalized();
    if (samples_ == 1 || ratio > worst_ratio_) {
      worst_ratio_ = ratio;
      worst_ = r;
    }
  }

  std::size_t samples() const { return samples_; }
  const Residual& worst() const { return worst_; }

  CheckResult result(std::string name, double tol) const {
    CheckResult out;
    out.name = std::move(name);
    out.samples = samples_;
    out.max_residual = worst_.value;
    out.scale = worst_.scale;
    out.tol = tol;
    out.pass = samples_ > 0 && worst_.within(tol);
    return out;
  }

 private:
  std::size_t samples_ = 0;
  double worst_ratio_ = 0.0;
  Residual worst_{};
};

inline CheckResult skipped_check(std::string name, std::string reason) {
  CheckResult out;
  out.name = std::move(name);
  out.skipped = true;
  out.note = std::move(reason);
  return out;
}

}  // namespace aristo

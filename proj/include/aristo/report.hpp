#pragma once

// Serialization of trajectories, verification reports, root profiles and
// parameter scans. Doubles are written in shortest round-trip form so equal
// inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "aristo/integrator.hpp"
#include "aristo/roots.hpp"
#include "aristo/verify.hpp"

namespace aristo {

inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kTrajectoryCsvHeader =
    "t,u_re,u_im,v_re,v_im,w_re,w_im,h1_re,h1_im,h2_re,h2_im,hfund_dirres";
inline constexpr const char* kScanCsvHeader = "p,q,delta,n_real_roots,min_root_gap,lambda_re,lambda_im";

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf".
std::string format_double(double x);

std::string trajectory_csv(const Trajectory& traj);
nlohmann::json trajectory_json(const Trajectory& traj, const Couplings& k, const IntegrationConfig& cfg);

nlohmann::json check_json(const CheckResult& c);
nlohmann::json verify_json(const VerifyReport& report);
/// One line per check: PASS, FAIL, ERRATUM or SKIP, then name and residuals.
std::string verify_text(const VerifyReport& report);

nlohmann::json profile_json(const RootProfile& prof);
std::string profile_text(const RootProfile& prof);

/// lo:hi:n with n >= 1 points, both ends included when n > 1.
struct ScanRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;
  double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

/// Throws InvalidArgument for a malformed range.
ScanRange parse_range(const std::string& text);

struct ScanRow {
  double p = 0.0;
  double q = 0.0;
  double delta = 0.0;
  int n_real_roots = 0;
  double min_root_gap = 0.0;
  Complex lambda{};
};

/// Row-major grid, p outer and q inner.
std::vector<ScanRow> scan_grid(const ScanRange& p, const ScanRange& q);
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace aristo

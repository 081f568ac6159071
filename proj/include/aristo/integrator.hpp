#pragma once

// Dormand-Prince 5(4) integration of the physical or auxiliary model over
// complex states, recording conserved quantities at every accepted step.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aristo/types.hpp"

namespace aristo {

enum class ModelKind { Physical, Auxiliary };
enum class Termination { Completed, Collision, StepUnderflow };

const char* to_string(ModelKind m);
const char* to_string(Termination t);

/// The integration parameter runs over [t0, t1]. For the physical model it is
/// the time t. For the auxiliary model it is s with tau(s) = tau0 + s * direction.
struct IntegrationConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;      ///< 0 means |t1 - t0|
  double initial_step = 0.0;  ///< 0 picks a step from the initial derivative
  double t0 = 0.0;
  double t1 = 1.0;
  Complex tau0{};
  Complex direction{1.0, 0.0};
  double sep_floor = 1e-6;
  /// Uniform steps without error control, for convergence-order studies.
  std::optional<int> fixed_steps;
};

struct TrajectorySample {
  double t = 0.0;
  Complex tau{};  ///< complexified time of the auxiliary state
  State3 state{};
  Complex h1{};
  Complex h2{};
  /// |U . grad h| / scale for the fundamental first integral; NaN where it is
  /// undefined at the sample or for excluded couplings.
  double hfund_dirres = 0.0;
};

struct Trajectory {
  ModelKind model = ModelKind::Auxiliary;
  std::vector<TrajectorySample> samples;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  Termination termination = Termination::Completed;
  std::string fundamental;  ///< name of the first integral tracked, empty if none
  std::string message;
};

/// Throws InvalidConfig for a bad configuration and SeparationTooSmall when the
/// initial state is within sep_floor of a collision. Collisions and step
/// underflow during the run end it early with the matching termination.
Trajectory integrate(ModelKind model, const State3& initial, const Couplings& k,
                     const IntegrationConfig& cfg);

struct DriftReport {
  double h1_abs_drift = 0.0;
  double h2_rel_drift = 0.0;
  double max_hfund_dirres = 0.0;  ///< NaN when no sample had a defined residual
  std::string fundamental;
};

/// Throws EmptyTrajectory.
DriftReport drift_report(const Trajectory& traj);

}  // namespace aristo

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legipulation/leg.hpp"
#include "legipulation/sequence.hpp"

namespace legipulation {

// Signed, dimensionless per-joint load ratio in the servo vendor's units.
struct EffortSample
{
  double time = 0.0;
  std::vector<double> efforts;
};

struct EffortModelParams
{
  // Effort units per N*m of joint torque, one per joint.
  std::vector<double> gains = {2500.0, 1500.0, 1500.0, 1500.0, 800.0};
  // Force the tip exerts to carry the leg's own weight (world frame, N).
  Vec3 gravity_tip_force = Vec3(0.0, 0.0, 3.0);
  bool gravity_enabled = true;
};

/// efforts_i = gain_i * (J_p^T (tip_force + gravity))_i, where tip_force is
/// the force the tip applies to the environment.
EffortSample effortModel(const KinematicChain& chain, const JointAngles& angles, const Vec3& tip_force,
                         const EffortModelParams& params = {});

struct OverloadPolicy
{
  double threshold = 3200.0;
  // Servo protective shutdown level; informational only.
  double hard_limit = 3500.0;
  int consecutive_samples = 2;
};

void validate(const OverloadPolicy& policy);

struct OverloadEvent
{
  double time = 0.0;
  std::size_t joint = 0;
  double effort = 0.0;
  std::string sequence_id;
};

// Per-leg debounce state. Reset (default construct) for every sequence run.
struct MonitorState
{
  std::vector<int> over_count;
  std::optional<double> last_time;
  bool fired = false;
};

/// Advances the monitor by one sample. Returns an event the first time some
/// joint has |effort| >= threshold on `consecutive_samples` samples in a row;
/// at most once per state.
std::optional<OverloadEvent> monitorStep(const OverloadPolicy& policy, const EffortSample& sample,
                                         MonitorState& state, const std::string& sequence_id = "");

/// Return-to-stance trajectory starting exactly at the abort pose.
TrajectorySequence abortAndReturn(const OverloadEvent& event, const std::string& leg_id, const Pose& current,
                                  const Pose& stance, const ReturnParams& params = {});

}  // namespace legipulation

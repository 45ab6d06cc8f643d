#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "legipulation/geom.hpp"
#include "legipulation/sequence.hpp"

namespace legipulation {

// Revolute joint. `origin` is the offset from the previous joint (or the leg
// base) expressed in the previous joint's frame; `axis` is in the joint's own
// frame.
struct Joint
{
  std::string name;
  Vec3 axis = Vec3::UnitZ();
  Vec3 origin = Vec3::Zero();
  double min = -M_PI;
  double max = M_PI;
};

struct KinematicChain
{
  std::string leg_id;
  Pose base;
  std::vector<Joint> joints;
  // Tip offset from the last joint, in that joint's frame.
  Vec3 tip_offset = Vec3::Zero();

  std::size_t dof() const { return joints.size(); }
};

using JointAngles = std::vector<double>;

/// Throws ParameterError unless the chain has >= 3 joints with unit axes and
/// min < max limits.
void validate(const KinematicChain& chain);

/// Five-joint front-left leg (yaw, pitch, pitch, pitch, roll), 0.46 m reach.
/// Zero angles put the leg straight out along its mount direction.
KinematicChain defaultFrontLeftLeg();

// Mirror image across the body's x-z plane.
KinematicChain mirrorLeg(const KinematicChain& chain, const std::string& leg_id);

Pose forwardKinematics(const KinematicChain& chain, const JointAngles& angles);

struct JointFrame
{
  Vec3 origin;
  Vec3 axis;
};

// World-frame joint origins/axes plus the tip pose for one configuration.
struct ChainState
{
  std::vector<JointFrame> joints;
  Pose tip;
};

ChainState chainState(const KinematicChain& chain, const JointAngles& angles);

/// 6 x n geometric Jacobian: rows 0-2 linear, rows 3-5 angular.
Eigen::MatrixXd jacobian(const KinematicChain& chain, const JointAngles& angles);

bool withinLimits(const KinematicChain& chain, const JointAngles& angles);
JointAngles clampToLimits(const KinematicChain& chain, JointAngles angles);

struct IkParams
{
  double damping = 0.05;
  int max_iters = 100;
  double tol = 1e-4;
  bool track_orientation = true;
  double orientation_tol = 1e-3;
  // Largest joint change per iteration, radians.
  double max_step = 0.25;
  // Extra solves from spread-out seeds when the first one misses.
  int restarts = 16;
};

struct IkResult
{
  JointAngles angles;
  Pose achieved;
  double position_error = 0.0;
  double orientation_error = 0.0;
  bool clamped = false;
  int iterations = 0;
};

/// Damped least squares on the position error; orientation is a secondary
/// task projected into the position task's null space. Angles are projected
/// onto the joint limits after every step. Stops at position_error <= tol
/// (and orientation_error <= orientation_tol when tracked) or max_iters. If
/// the position is still off, a position-only pass continues from there, and
/// up to `restarts` further seeds are tried; the closest result wins.
IkResult inverseKinematics(const KinematicChain& chain, const Pose& target, const JointAngles& seed,
                           const IkParams& params = {});

// Seed used by inWorkspace: mid-range angles.
JointAngles standardSeed(const KinematicChain& chain);

inline constexpr double kWorkspaceTolerance = 0.005;

/// Position-only IK from standardSeed reaches within 5 mm.
bool inWorkspace(const KinematicChain& chain, const Vec3& point, const IkParams& params = {});

struct TrackedSample
{
  TipPoseSample desired;
  IkResult actual;
};

// Warm-started IK follower. An unreachable target is replaced by the furthest
// reachable point on the segment from the previous actual position towards
// it, so the leg stops at the workspace boundary and rejoins the trajectory
// as soon as it comes back into reach.
class LegTracker
{
public:
  LegTracker(KinematicChain chain, JointAngles start_angles, IkParams params = {});

  IkResult step(const Pose& desired);

  const JointAngles& angles() const { return angles_; }
  const KinematicChain& chain() const { return chain_; }
  Pose tipPose() const { return forwardKinematics(chain_, angles_); }

private:
  bool reachable(const IkResult& r) const { return r.position_error <= kWorkspaceTolerance; }

  KinematicChain chain_;
  IkParams params_;
  JointAngles angles_;
  bool has_previous_ = false;
  Vec3 previous_actual_ = Vec3::Zero();
};

/// Sample times 0, dt, 2dt, ... plus the end time when not on the grid.
std::vector<double> sampleTimes(double total_duration, double dt);

std::vector<TrackedSample> track(const KinematicChain& chain, const TrajectorySequence& seq, double dt,
                                 const JointAngles& start_angles, const IkParams& params = {});

}  // namespace legipulation

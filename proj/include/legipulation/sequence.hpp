#pragma once

#include <string>
#include <utility>
#include <vector>

#include "legipulation/bezier.hpp"
#include "legipulation/geom.hpp"

namespace legipulation {

enum class WaypointRole
{
  Initial,
  Safe,
  BesideObject,
  Final
};

struct Waypoint
{
  WaypointRole role;
  Pose pose;
};

struct OrientationKeys
{
  UnitQuaternion start = UnitQuaternion::Identity();
  UnitQuaternion end = UnitQuaternion::Identity();
};

// Piecewise Bezier tip trajectory. Segment k ends exactly where k+1 starts
// and time maps linearly onto each segment's parameter.
struct TrajectorySequence
{
  std::string leg_id;
  std::string name;
  std::vector<BezierSegment> segments;
  std::vector<OrientationKeys> orientation_keys;

  bool empty() const { return segments.empty(); }
  double totalDuration() const;
};

struct TipPoseSample
{
  double time = 0.0;
  Pose pose;
};

struct PushParams
{
  double lift_height = 0.10;
  Vec3 approach_offset = Vec3(0.0, 0.0, 0.05);
  Vec3 sweep_vector = Vec3(0.0, -0.25, 0.0);
  // Point the sweep's y component away from the side of the body centreline
  // the contact lies on.
  bool auto_sweep_sign = true;
  double reach_duration = 2.0;
  double push_duration = 3.0;
  double approach_parameter = 1.0 / 3.0;
  double contact_parameter = 2.0 / 3.0;
};

struct ReturnParams
{
  double lift_height = 0.10;
  double duration = 2.0;
};

/// Checks segment/key counts, shared endpoints and orientation continuity.
void validate(const TrajectorySequence& seq);

/// Quadratic reach from `initial` to `safe` (midpoint raised by lift_height),
/// then a cubic from `safe` that passes near contact + approach_offset and
/// exactly through `contact`, ending at contact + sweep.
TrajectorySequence buildPushSequence(const std::string& leg_id, const Pose& initial, const Pose& safe,
                                     const Vec3& contact, const PushParams& params = {});

// Sweep vector actually used for a contact point.
Vec3 effectiveSweep(const Vec3& contact, const PushParams& params);

/// Single lifted quadratic back to stance; empty when already there.
TrajectorySequence buildReturnSequence(const std::string& leg_id, const Pose& current, const Pose& stance,
                                       const ReturnParams& params = {});

TipPoseSample sample(const TrajectorySequence& seq, double time);

// Pose on segment k at local parameter t in [0,1].
Pose sampleSegment(const TrajectorySequence& seq, std::size_t k, double t);

/// Pads the shorter sequence with a terminal hold so both last equally long.
std::pair<TrajectorySequence, TrajectorySequence> buildDualSequences(TrajectorySequence left,
                                                                     TrajectorySequence right);

}  // namespace legipulation

#pragma once

#include <vector>

#include "legipulation/scene.hpp"

namespace legipulation {

struct PushModel
{
  // Largest horizontal force the leg tip can apply, N.
  double force_capacity = 6.0;
  // Contact shell around the object surface, m.
  double tip_radius = 0.01;
  double gravity = 9.81;
};

struct PushStep
{
  bool contact = false;
  bool moved = false;
  // Force the tip applies to the object, N.
  Vec3 tip_force = Vec3::Zero();
  double required_force = 0.0;
};

// Quasi-static object: it has no momentum and only translates, in the
// horizontal plane, together with a tip that is in contact and moving into it.
class PushSimulator
{
public:
  PushSimulator(SceneObject object, double ground_height, PushModel model = {});

  PushStep step(const Vec3& previous_tip, const Vec3& tip);

  const SceneObject& object() const { return object_; }
  bool inContact(const Vec3& tip) const;
  double requiredForce() const;

private:
  SceneObject object_;
  double ground_height_;
  PushModel model_;
};

/// Object pose history for a tip path (one entry per tip sample).
std::vector<Vec3> pushObject(const SceneObject& object, double ground_height, const std::vector<Vec3>& tip_path,
                             const PushModel& model = {});

// Straight-ahead region the robot will walk through.
struct PathCorridor
{
  double x_min = 0.0;
  double depth = 0.6;
  double width = 0.3;
};

bool obstructsPath(const SceneObject& object, const PathCorridor& corridor);

// Tipping proxy: horizontal tip force times the tip's horizontal distance
// from the body centre.
double tippingMoment(const Vec3& tip_force, const Vec3& tip_position);

}  // namespace legipulation

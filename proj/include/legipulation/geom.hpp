#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace legipulation {

// Body frame: x forward, y left, z up. Meters.
using Vec3 = Eigen::Vector3d;

// Stored as Eigen's (w, x, y, z) quaternion; callers keep it normalised.
using UnitQuaternion = Eigen::Quaterniond;

struct Pose
{
  Vec3 position = Vec3::Zero();
  UnitQuaternion orientation = UnitQuaternion::Identity();
};

inline bool isFinite(const Vec3& v)
{
  return v.allFinite();
}

/// Spherical linear interpolation along the shorter arc.
/// If dot(q0, q1) < 0 the second key is negated first; below 1e-6 rad the
/// result falls back to normalised linear interpolation.
UnitQuaternion slerp(const UnitQuaternion& q0, const UnitQuaternion& q1, double t);

/// Rotates v by q (q v q*).
Vec3 quatRotate(const UnitQuaternion& q, const Vec3& v);

/// Rotation angle between two orientations in [0, pi], sign-agnostic.
double angularDistance(const UnitQuaternion& a, const UnitQuaternion& b);

UnitQuaternion axisAngle(const Vec3& axis, double angle);

// Leg tip pointing straight down: tip x-axis mapped onto body -z.
UnitQuaternion tipDownOrientation();

}  // namespace legipulation

#include "legipulation/geom.hpp"

#include <algorithm>
#include <cmath>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

constexpr double kNearParallelAngle = 1e-6;

}  // namespace

UnitQuaternion slerp(const UnitQuaternion& q0, const UnitQuaternion& q1, double t)
{
  if (t == 0.0)
  {
    return q0;
  }
  if (t == 1.0)
  {
    return q1;
  }
  Eigen::Vector4d a = q0.coeffs();
  Eigen::Vector4d b = q1.coeffs();
  double cos_theta = a.dot(b);
  if (cos_theta < 0.0)
  {
    b = -b;
    cos_theta = -cos_theta;
  }
  cos_theta = std::min(cos_theta, 1.0);
  const double theta = std::acos(cos_theta);

  Eigen::Vector4d out;
  if (theta < kNearParallelAngle)
  {
    out = (1.0 - t) * a + t * b;
  }
  else
  {
    const double sin_theta = std::sin(theta);
    out = (std::sin((1.0 - t) * theta) / sin_theta) * a + (std::sin(t * theta) / sin_theta) * b;
  }
  out.normalize();
  UnitQuaternion q;
  q.coeffs() = out;
  return q;
}

Vec3 quatRotate(const UnitQuaternion& q, const Vec3& v)
{
  // v' = v + 2w(u x v) + 2 u x (u x v), u = vector part
  const Vec3 u = q.vec();
  const Vec3 uv = u.cross(v);
  return v + 2.0 * q.w() * uv + 2.0 * u.cross(uv);
}

double angularDistance(const UnitQuaternion& a, const UnitQuaternion& b)
{
  const double d = std::clamp(std::abs(a.coeffs().dot(b.coeffs())), 0.0, 1.0);
  return 2.0 * std::acos(d);
}

UnitQuaternion axisAngle(const Vec3& axis, double angle)
{
  if (axis.norm() == 0.0)
  {
    throw ParameterError("axisAngle: zero axis");
  }
  return UnitQuaternion(Eigen::AngleAxisd(angle, axis.normalized()));
}

UnitQuaternion tipDownOrientation()
{
  return axisAngle(Vec3::UnitY(), M_PI / 2.0);
}

}  // namespace legipulation

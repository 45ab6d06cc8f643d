#include "legipulation/bezier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

constexpr double kDegenerateParameter = 1e-9;

double binomial(int n, int k)
{
  double c = 1.0;
  for (int i = 1; i <= k; ++i)
  {
    c = c * (n - k + i) / i;
  }
  return c;
}

void checkInteriorParameter(double t, const char* who)
{
  if (!std::isfinite(t) || t <= 0.0 || t >= 1.0 || t < kDegenerateParameter || 1.0 - t < kDegenerateParameter)
  {
    throw ParameterError(std::string(who) + ": desired parameter must lie strictly inside (0,1), got " +
                         std::to_string(t));
  }
}

}  // namespace

void validate(const BezierSegment& segment)
{
  if (segment.order < 2 || segment.order > 4)
  {
    throw ParameterError("Bezier order must be 2, 3 or 4, got " + std::to_string(segment.order));
  }
  if (segment.control_points.size() != static_cast<std::size_t>(segment.order) + 1)
  {
    throw ParameterError("Bezier segment of order " + std::to_string(segment.order) + " needs " +
                         std::to_string(segment.order + 1) + " control points");
  }
  if (!(segment.duration > 0.0) || !std::isfinite(segment.duration))
  {
    throw ParameterError("Bezier segment duration must be positive");
  }
  for (const Vec3& p : segment.control_points)
  {
    if (!p.allFinite())
    {
      throw ParameterError("Bezier control point is not finite");
    }
  }
}

BezierSegment makeSegment(std::vector<Vec3> control_points, double duration)
{
  BezierSegment segment;
  segment.order = static_cast<int>(control_points.size()) - 1;
  segment.control_points = std::move(control_points);
  segment.duration = duration;
  validate(segment);
  return segment;
}

Vec3 eval(const BezierSegment& segment, double t)
{
  if (!(t >= 0.0 && t <= 1.0))
  {
    throw ParameterError("Bezier eval: t must lie in [0,1], got " + std::to_string(t));
  }
  const int n = segment.order;
  const double s = 1.0 - t;
  Vec3 out = Vec3::Zero();
  for (int i = 0; i <= n; ++i)
  {
    const double basis = binomial(n, i) * std::pow(s, n - i) * std::pow(t, i);
    out += basis * segment.control_points[static_cast<std::size_t>(i)];
  }
  return out;
}

Vec3 derivative(const BezierSegment& segment, double t)
{
  if (!(t >= 0.0 && t <= 1.0))
  {
    throw ParameterError("Bezier derivative: t must lie in [0,1]");
  }
  const int n = segment.order;
  const double s = 1.0 - t;
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < n; ++i)
  {
    const double basis = binomial(n - 1, i) * std::pow(s, n - 1 - i) * std::pow(t, i);
    out += basis * (segment.control_points[static_cast<std::size_t>(i) + 1] -
                    segment.control_points[static_cast<std::size_t>(i)]);
  }
  return n * out;
}

BezierSegment modifiedQuadratic(const Vec3& p0, const DesiredPoint& desired, const Vec3& p2, double duration)
{
  const double t = desired.parameter;
  checkInteriorParameter(t, "modifiedQuadratic");
  const double s = 1.0 - t;
  const Vec3 p1 = (desired.location - s * s * p0 - t * t * p2) / (2.0 * t * s);
  return makeSegment({p0, p1, p2}, duration);
}

BezierSegment modifiedCubic(const Vec3& p0, const DesiredPoint& d1, const DesiredPoint& d2, const Vec3& p3,
                            double duration, const std::optional<Vec3>& original_p2)
{
  checkInteriorParameter(d1.parameter, "modifiedCubic");
  checkInteriorParameter(d2.parameter, "modifiedCubic");
  if (!(d1.parameter < d2.parameter))
  {
    throw ParameterError("modifiedCubic: first desired parameter must precede the second");
  }

  const Vec3 p2_in = original_p2.value_or(d2.location);

  double t = d1.parameter;
  double s = 1.0 - t;
  const Vec3 p1 = (d1.location - s * s * s * p0 - 3.0 * s * t * t * p2_in - t * t * t * p3) / (3.0 * t * s * s);

  t = d2.parameter;
  s = 1.0 - t;
  const Vec3 p2 = (d2.location - s * s * s * p0 - 3.0 * t * s * s * p1 - t * t * t * p3) / (3.0 * s * t * t);

  return makeSegment({p0, p1, p2, p3}, duration);
}

double interiorResidual(const BezierSegment& segment, const std::vector<DesiredPoint>& desired)
{
  validate(segment);
  double worst = 0.0;
  for (const DesiredPoint& d : desired)
  {
    worst = std::max(worst, (eval(segment, d.parameter) - d.location).norm());
  }
  return worst;
}

}  // namespace legipulation

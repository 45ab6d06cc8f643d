#pragma once

#include <optional>
#include <vector>

#include "legipulation/geom.hpp"

namespace legipulation {

struct BezierSegment
{
  int order = 2;
  std::vector<Vec3> control_points;
  double duration = 1.0;

  const Vec3& front() const { return control_points.front(); }
  const Vec3& back() const { return control_points.back(); }
};

// A location the curve should pass through at curve parameter `parameter`.
struct DesiredPoint
{
  Vec3 location = Vec3::Zero();
  double parameter = 0.5;
};

/// Checks order in {2,3,4}, order+1 finite control points, duration > 0.
void validate(const BezierSegment& segment);

BezierSegment makeSegment(std::vector<Vec3> control_points, double duration = 1.0);

/// Bernstein-form evaluation, t in [0,1]; exact at both endpoints.
Vec3 eval(const BezierSegment& segment, double t);

/// dB/dt in curve-parameter units.
Vec3 derivative(const BezierSegment& segment, double t);

/// Quadratic through P0, P2 whose middle control point is moved so that
/// B(t) = desired.location at t = desired.parameter:
///   P1' = (D - s^2 P0 - t^2 P2) / (2 t s),  s = 1 - t.
BezierSegment modifiedQuadratic(const Vec3& p0, const DesiredPoint& desired, const Vec3& p2, double duration = 1.0);

/// Cubic through P0, P3 whose inner control points are recomputed in turn:
///   P1' = (D1 - s^3 P0 - 3 s t^2 P2 - t^3 P3) / (3 t s^2)      at t = d1.parameter
///   P2' = (D2 - s^3 P0 - 3 t s^2 P1' - t^3 P3) / (3 s t^2)     at t = d2.parameter
/// P2 in the first step is the pre-modification control point; by default the
/// desired location d2 stands in for it. The curve hits d2 exactly; d1 only
/// approximately unless the inputs already describe a consistent cubic.
BezierSegment modifiedCubic(const Vec3& p0, const DesiredPoint& d1, const DesiredPoint& d2, const Vec3& p3,
                            double duration = 1.0, const std::optional<Vec3>& original_p2 = std::nullopt);

/// Largest distance between eval(segment, d.parameter) and d.location.
double interiorResidual(const BezierSegment& segment, const std::vector<DesiredPoint>& desired);

}  // namespace legipulation

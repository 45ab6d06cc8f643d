#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "legipulation/geom.hpp"

namespace legipulation {

struct PointCloud
{
  std::vector<Vec3> points;
  std::string frame_id = "body";

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

enum class Axis
{
  X = 0,
  Y = 1,
  Z = 2
};

// Closed interval [min, max] on one body-frame axis.
struct AxisRange
{
  Axis axis;
  double min;
  double max;
};

// normal . p + offset = 0, normal unit with normal.z >= 0.
struct PlaneModel
{
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
  std::vector<std::size_t> inlier_indices;

  double signedDistance(const Vec3& p) const { return normal.dot(p) + offset; }
};

/// Replaces the points of every occupied voxel (index floor(p / leaf) per
/// axis) with their centroid. Output is ordered by voxel index.
PointCloud voxelDownsample(const PointCloud& cloud, double leaf);

/// Keeps the points lying inside every range; input order is preserved.
PointCloud passthrough(const PointCloud& cloud, const std::vector<AxisRange>& ranges);

/// Plane with the most inliers over max_iters random 3-point hypotheses.
PlaneModel ransacPlane(const PointCloud& cloud, double dist_threshold, int max_iters,
                       std::uint64_t seed);

PointCloud removePlane(const PointCloud& cloud, const PlaneModel& model);

// Applies a rigid transform (e.g. sensor-to-body extrinsic) to every point.
PointCloud transformCloud(const PointCloud& cloud, const Pose& transform);

}  // namespace legipulation

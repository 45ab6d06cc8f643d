#include "legipulation/cloud.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

using VoxelKey = std::array<std::int64_t, 3>;

struct VoxelAccumulator
{
  Vec3 sum = Vec3::Zero();
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
  std::size_t count = 0;
};

}  // namespace

PointCloud voxelDownsample(const PointCloud& cloud, double leaf)
{
  if (!(leaf > 0.0) || !std::isfinite(leaf))
  {
    throw ParameterError("voxelDownsample: leaf size must be positive, got " + std::to_string(leaf));
  }

  std::map<VoxelKey, VoxelAccumulator> voxels;
  for (const Vec3& p : cloud.points)
  {
    const VoxelKey key{static_cast<std::int64_t>(std::floor(p.x() / leaf)),
                       static_cast<std::int64_t>(std::floor(p.y() / leaf)),
                       static_cast<std::int64_t>(std::floor(p.z() / leaf))};
    VoxelAccumulator& acc = voxels[key];
    acc.sum += p;
    acc.lo = acc.lo.cwiseMin(p);
    acc.hi = acc.hi.cwiseMax(p);
    ++acc.count;
  }

  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.points.reserve(voxels.size());
  for (const auto& [key, acc] : voxels)
  {
    // Rounding in sum / count can leave the mean an ulp outside the members'
    // extent, which would break idempotence at voxel borders.
    Vec3 centroid = acc.sum / static_cast<double>(acc.count);
    out.points.push_back(centroid.cwiseMax(acc.lo).cwiseMin(acc.hi));
  }
  return out;
}

PointCloud passthrough(const PointCloud& cloud, const std::vector<AxisRange>& ranges)
{
  for (const AxisRange& r : ranges)
  {
    if (!(r.min < r.max))
    {
      throw ParameterError("passthrough: range min must be below max");
    }
  }

  PointCloud out;
  out.frame_id = cloud.frame_id;
  for (const Vec3& p : cloud.points)
  {
    const bool keep = std::all_of(ranges.begin(), ranges.end(), [&p](const AxisRange& r) {
      const double v = p[static_cast<int>(r.axis)];
      return v >= r.min && v <= r.max;
    });
    if (keep)
    {
      out.points.push_back(p);
    }
  }
  return out;
}

PlaneModel ransacPlane(const PointCloud& cloud, double dist_threshold, int max_iters,
                       std::uint64_t seed)
{
  const std::size_t n = cloud.size();
  if (n < 3)
  {
    throw InsufficientPointsError("ransacPlane: need at least 3 points, got " + std::to_string(n));
  }
  if (!(dist_threshold > 0.0))
  {
    throw ParameterError("ransacPlane: distance threshold must be positive");
  }
  if (max_iters < 1)
  {
    throw ParameterError("ransacPlane: max_iters must be at least 1");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick0(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick1(0, n - 2);
  std::uniform_int_distribution<std::size_t> pick2(0, n - 3);

  bool found = false;
  std::size_t best_count = 0;
  Vec3 best_normal = Vec3::UnitZ();
  double best_offset = 0.0;

  for (int iter = 0; iter < max_iters; ++iter)
  {
    // Three distinct indices without rejection.
    const std::size_t i0 = pick0(rng);
    std::size_t i1 = pick1(rng);
    if (i1 >= i0)
    {
      ++i1;
    }
    std::size_t i2 = pick2(rng);
    const std::size_t lo = std::min(i0, i1);
    const std::size_t hi = std::max(i0, i1);
    if (i2 >= lo)
    {
      ++i2;
    }
    if (i2 >= hi)
    {
      ++i2;
    }
    const Vec3& a = cloud.points[i0];
    Vec3 normal = (cloud.points[i1] - a).cross(cloud.points[i2] - a);
    const double len = normal.norm();
    if (len < 1e-12)
    {
      continue;
    }
    normal /= len;
    if (normal.z() < 0.0 || (normal.z() == 0.0 && (normal.y() < 0.0 || (normal.y() == 0.0 && normal.x() < 0.0))))
    {
      normal = -normal;
    }
    const double offset = -normal.dot(a);

    std::size_t count = 0;
    for (const Vec3& p : cloud.points)
    {
      if (std::abs(normal.dot(p) + offset) <= dist_threshold)
      {
        ++count;
      }
    }
    if (!found || count > best_count)
    {
      found = true;
      best_count = count;
      best_normal = normal;
      best_offset = offset;
    }
  }

  if (!found)
  {
    throw DegenerateInputError("ransacPlane: every sampled triple was collinear or repeated after " +
                               std::to_string(max_iters) + " iterations");
  }

  PlaneModel model;
  model.normal = best_normal;
  model.offset = best_offset;
  model.inlier_indices.reserve(best_count);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (std::abs(model.signedDistance(cloud.points[i])) <= dist_threshold)
    {
      model.inlier_indices.push_back(i);
    }
  }
  return model;
}

PointCloud removePlane(const PointCloud& cloud, const PlaneModel& model)
{
  std::vector<bool> drop(cloud.size(), false);
  for (std::size_t idx : model.inlier_indices)
  {
    if (idx >= cloud.size())
    {
      throw ContractViolation("removePlane: inlier index " + std::to_string(idx) +
                              " out of range for cloud of size " + std::to_string(cloud.size()));
    }
    drop[idx] = true;
  }

  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.points.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
  {
    if (!drop[i])
    {
      out.points.push_back(cloud.points[i]);
    }
  }
  return out;
}

PointCloud transformCloud(const PointCloud& cloud, const Pose& transform)
{
  PointCloud out;
  out.frame_id = cloud.frame_id;
  out.points.reserve(cloud.size());
  for (const Vec3& p : cloud.points)
  {
    out.points.push_back(quatRotate(transform.orientation, p) + transform.position);
  }
  return out;
}

}  // namespace legipulation

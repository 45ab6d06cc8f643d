#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "legipulation/cloud.hpp"
#include "legipulation/cluster.hpp"
#include "legipulation/obstacle.hpp"
#include "legipulation/octree.hpp"

namespace legipulation {

struct PerceptionConfig
{
  double voxel_leaf = 0.01;
  std::vector<AxisRange> workspace = {
      {Axis::X, 0.2, 0.6},
      {Axis::Y, -0.4, 0.4},
      {Axis::Z, -0.1, 0.5},
  };
  double ransac_threshold = 0.01;
  int ransac_iters = 200;
  std::uint64_t ransac_seed = 42;
  ClusterParams clusters;
  OctreeParams octree;
  SearchPolicy search;
  // Objects rest on the ground, whose band was removed with the plane:
  // extend the box down to the fitted plane before computing key points.
  bool extend_to_ground = true;
  // Sensor-to-body transform applied before filtering.
  std::optional<Pose> extrinsic;
};

struct IdentifyResult
{
  ObstacleDescriptor descriptor;
  PlaneModel ground;
  TargetCluster target;
  std::size_t raw_points = 0;
  std::size_t downsampled_points = 0;
  std::size_t cropped_points = 0;
  std::size_t obstacle_points = 0;
  std::size_t cluster_count = 0;
};

/// downsample -> passthrough -> ground removal -> clustering -> expanding
/// octree search -> bounding box and key points.
/// Throws NoObstacleFoundError when nothing survives to the search.
IdentifyResult identifyObstacle(const PointCloud& cloud, const PerceptionConfig& config);

struct BenchmarkReport
{
  std::size_t repetitions = 0;
  double median_hz = 0.0;
  double median_seconds = 0.0;
  double min_seconds = 0.0;
  double max_seconds = 0.0;
  std::size_t no_obstacle_runs = 0;
};

/// Median wall-clock rate of identifyObstacle over `repetitions` runs
/// (single-threaded). A no-obstacle outcome counts as a completed run.
BenchmarkReport benchmarkPipeline(const PointCloud& cloud, const PerceptionConfig& config, int repetitions);

}  // namespace legipulation

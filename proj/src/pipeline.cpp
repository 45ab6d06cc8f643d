#include "legipulation/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "legipulation/error.hpp"

namespace legipulation {

IdentifyResult identifyObstacle(const PointCloud& input, const PerceptionConfig& config)
{
  IdentifyResult result;
  result.raw_points = input.size();

  const PointCloud body = config.extrinsic ? transformCloud(input, *config.extrinsic) : input;
  const PointCloud down = voxelDownsample(body, config.voxel_leaf);
  result.downsampled_points = down.size();
  const PointCloud cropped = passthrough(down, config.workspace);
  result.cropped_points = cropped.size();
  if (cropped.size() < 3)
  {
    throw NoObstacleFoundError("fewer than 3 points inside the workspace");
  }

  result.ground = ransacPlane(cropped, config.ransac_threshold, config.ransac_iters, config.ransac_seed);
  const PointCloud obstacles = removePlane(cropped, result.ground);
  result.obstacle_points = obstacles.size();
  if (obstacles.empty())
  {
    throw NoObstacleFoundError("nothing left after ground removal");
  }

  const Octree tree(obstacles, config.octree);
  const std::vector<Cluster> clusters = euclideanClusters(obstacles, tree, config.clusters);
  result.cluster_count = clusters.size();
  if (clusters.empty())
  {
    throw NoObstacleFoundError("no cluster within the size limits");
  }
  result.target = findTargetCluster(clusters, obstacles, tree, config.search);

  ObstacleDescriptor d = describeObstacle(obstacles, result.target.cluster);
  if (config.extend_to_ground && std::abs(result.ground.normal.z()) > 0.9)
  {
    // Plane height under the box footprint centre.
    const Vec3 c = d.box.center();
    const Vec3& n = result.ground.normal;
    const double ground_z = -(result.ground.offset + n.x() * c.x() + n.y() * c.y()) / n.z();
    if (ground_z < d.box.min.z())
    {
      Aabb box = d.box;
      box.min.z() = ground_z;
      d = describeBox(box, d.centroid, d.point_count);
    }
  }
  result.descriptor = d;
  return result;
}

BenchmarkReport benchmarkPipeline(const PointCloud& cloud, const PerceptionConfig& config, int repetitions)
{
  if (repetitions < 10)
  {
    throw ParameterError("benchmarkPipeline: need at least 10 repetitions");
  }
  std::vector<double> seconds;
  seconds.reserve(static_cast<std::size_t>(repetitions));
  BenchmarkReport report;
  report.repetitions = static_cast<std::size_t>(repetitions);
  for (int i = 0; i < repetitions; ++i)
  {
    const auto start = std::chrono::steady_clock::now();
    try
    {
      const IdentifyResult r = identifyObstacle(cloud, config);
      (void)r;
    }
    catch (const NoObstacleFoundError&)
    {
      ++report.no_obstacle_runs;
    }
    const auto stop = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(seconds.begin(), seconds.end());
  const std::size_t n = seconds.size();
  report.median_seconds = n % 2 == 1 ? seconds[n / 2] : 0.5 * (seconds[n / 2 - 1] + seconds[n / 2]);
  report.min_seconds = seconds.front();
  report.max_seconds = seconds.back();
  report.median_hz = report.median_seconds > 0.0 ? 1.0 / report.median_seconds : 0.0;
  return report;
}

}  // namespace legipulation

#pragma once

#include <vector>

#include "legipulation/cloud.hpp"
#include "legipulation/octree.hpp"

namespace legipulation {

struct Cluster
{
  // Ascending, unique indices into the parent cloud.
  std::vector<std::size_t> indices;
  Vec3 centroid = Vec3::Zero();
};

struct ClusterParams
{
  double tolerance = 0.03;
  std::size_t min_size = 30;
  std::size_t max_size = 25000;
};

/// Connected components of the "within tolerance" graph, filtered to
/// [min_size, max_size] and sorted by size (descending), then by smallest
/// member index.
std::vector<Cluster> euclideanClusters(const PointCloud& cloud, const ClusterParams& params);

// Same, reusing an octree already built over `cloud`.
std::vector<Cluster> euclideanClusters(const PointCloud& cloud, const Octree& tree, const ClusterParams& params);

struct SearchPolicy
{
  Vec3 start = Vec3(0.32, 0.0, 0.06);
  double radius = 0.1;
  double step = 0.05;
  int max_expansions = 8;
};

struct TargetCluster
{
  Cluster cluster;
  // Position of `cluster` in the list handed to findTargetCluster.
  std::size_t cluster_rank = 0;
  int round = 0;
  std::size_t hits = 0;
};

/// Search locations visited in one expansion round: the start for round 0,
/// otherwise start +- k*step along y, then +- k*step along z.
std::vector<Vec3> expansionRound(const SearchPolicy& policy, int round);

/// Radius searches expanding outward from policy.start, rounds 0 through
/// max_expansions. The first round whose hits land in any cluster decides:
/// the cluster owning most hits wins (earlier list position on ties).
/// Throws NoObstacleFoundError when every round misses.
TargetCluster findTargetCluster(const std::vector<Cluster>& clusters, const PointCloud& cloud, const Octree& tree,
                                const SearchPolicy& policy);

}  // namespace legipulation

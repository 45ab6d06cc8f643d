#include "legipulation/cluster.hpp"

#include <algorithm>
#include <limits>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

void validate(const ClusterParams& params)
{
  if (!(params.tolerance > 0.0))
  {
    throw ParameterError("euclideanClusters: tolerance must be positive");
  }
  if (params.min_size < 1 || params.min_size > params.max_size)
  {
    throw ParameterError("euclideanClusters: need 1 <= min_size <= max_size");
  }
}

void validate(const SearchPolicy& policy)
{
  if (!(policy.radius > 0.0) || !(policy.step > 0.0) || policy.max_expansions < 1)
  {
    throw ParameterError("SearchPolicy: radius and step must be positive, max_expansions >= 1");
  }
}

}  // namespace

std::vector<Cluster> euclideanClusters(const PointCloud& cloud, const ClusterParams& params)
{
  validate(params);
  const Octree tree(cloud);
  return euclideanClusters(cloud, tree, params);
}

std::vector<Cluster> euclideanClusters(const PointCloud& cloud, const Octree& tree, const ClusterParams& params)
{
  validate(params);
  if (tree.size() != cloud.size())
  {
    throw ContractViolation("euclideanClusters: octree was built over a different cloud");
  }

  const std::size_t n = cloud.size();
  std::vector<bool> visited(n, false);
  std::vector<Cluster> clusters;
  std::vector<std::size_t> frontier;

  for (std::size_t seed = 0; seed < n; ++seed)
  {
    if (visited[seed])
    {
      continue;
    }
    Cluster component;
    visited[seed] = true;
    frontier.assign(1, seed);
    while (!frontier.empty())
    {
      const std::size_t current = frontier.back();
      frontier.pop_back();
      component.indices.push_back(current);
      tree.forEachInRadius(cloud.points[current], params.tolerance, [&](std::size_t neighbor) {
        if (!visited[neighbor])
        {
          visited[neighbor] = true;
          frontier.push_back(neighbor);
        }
      });
    }

    const std::size_t size = component.indices.size();
    if (size < params.min_size || size > params.max_size)
    {
      continue;
    }
    std::sort(component.indices.begin(), component.indices.end());
    Vec3 sum = Vec3::Zero();
    for (std::size_t i : component.indices)
    {
      sum += cloud.points[i];
    }
    component.centroid = sum / static_cast<double>(size);
    clusters.push_back(std::move(component));
  }

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.indices.size() != b.indices.size())
    {
      return a.indices.size() > b.indices.size();
    }
    return a.indices.front() < b.indices.front();
  });
  return clusters;
}

std::vector<Vec3> expansionRound(const SearchPolicy& policy, int round)
{
  if (round == 0)
  {
    return {policy.start};
  }
  const double offset = round * policy.step;
  return {policy.start + Vec3(0.0, offset, 0.0), policy.start - Vec3(0.0, offset, 0.0),
          policy.start + Vec3(0.0, 0.0, offset), policy.start - Vec3(0.0, 0.0, offset)};
}

TargetCluster findTargetCluster(const std::vector<Cluster>& clusters, const PointCloud& cloud, const Octree& tree,
                                const SearchPolicy& policy)
{
  validate(policy);
  if (tree.size() != cloud.size())
  {
    throw ContractViolation("findTargetCluster: octree was built over a different cloud");
  }

  constexpr std::size_t kUnowned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(cloud.size(), kUnowned);
  for (std::size_t c = 0; c < clusters.size(); ++c)
  {
    for (std::size_t i : clusters[c].indices)
    {
      if (i >= cloud.size())
      {
        throw ContractViolation("findTargetCluster: cluster index out of range");
      }
      owner[i] = c;
    }
  }

  std::vector<bool> hit(cloud.size(), false);
  for (int round = 0; round <= policy.max_expansions; ++round)
  {
    std::fill(hit.begin(), hit.end(), false);
    for (const Vec3& location : expansionRound(policy, round))
    {
      tree.forEachInRadius(location, policy.radius, [&hit](std::size_t i) { hit[i] = true; });
    }

    std::vector<std::size_t> votes(clusters.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i)
    {
      if (hit[i] && owner[i] != kUnowned)
      {
        ++votes[owner[i]];
      }
    }
    const auto best = std::max_element(votes.begin(), votes.end());
    if (best == votes.end() || *best == 0)
    {
      continue;
    }
    TargetCluster result;
    result.cluster_rank = static_cast<std::size_t>(best - votes.begin());
    result.cluster = clusters[result.cluster_rank];
    result.round = round;
    result.hits = *best;
    return result;
  }
  throw NoObstacleFoundError("no cluster within " + std::to_string(policy.radius) + " m of any of " +
                             std::to_string(policy.max_expansions + 1) + " search rounds");
}

}  // namespace legipulation

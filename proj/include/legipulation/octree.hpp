#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "legipulation/cloud.hpp"

namespace legipulation {

struct OctreeParams
{
  std::size_t leaf_capacity = 16;
  int max_depth = 12;
};

// Static point octree over a cloud snapshot. The root cube is the cloud's
// bounding cube inflated by 1%; a leaf splits once it holds more than
// leaf_capacity points, unless it already sits at max_depth.
class Octree
{
public:
  struct Node
  {
    Vec3 center = Vec3::Zero();
    double half_extent = 0.0;
    int depth = 0;
    // Index of the first child in nodes_, -1 for a leaf. Children are contiguous.
    std::int32_t first_child = -1;
    // Leaf payload: a range in point_order_.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    bool isLeaf() const { return first_child < 0; }
    std::size_t count() const { return end - begin; }
  };

  Octree() = default;
  Octree(const PointCloud& cloud, OctreeParams params = {});

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const OctreeParams& params() const { return params_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Vec3& point(std::size_t index) const { return points_[index]; }

  // Point indices stored in a leaf.
  std::vector<std::size_t> leafIndices(const Node& leaf) const;

  /// Indices of every point with |p - center| <= radius, ascending.
  std::vector<std::size_t> radiusSearch(const Vec3& center, double radius) const;

  /// Unordered variant used by hot loops; visits each hit exactly once.
  void forEachInRadius(const Vec3& center, double radius,
                       const std::function<void(std::size_t)>& visit) const;

private:
  void build(std::int32_t node, std::vector<std::uint32_t>& scratch);

  OctreeParams params_;
  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> point_order_;
};

Octree buildOctree(const PointCloud& cloud, std::size_t leaf_capacity = 16);

}  // namespace legipulation

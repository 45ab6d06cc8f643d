#include "legipulation/octree.hpp"

#include <algorithm>
#include <array>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

int octant(const Vec3& p, const Vec3& center)
{
  return (p.x() >= center.x() ? 1 : 0) | (p.y() >= center.y() ? 2 : 0) | (p.z() >= center.z() ? 4 : 0);
}

// Squared distance from q to the closest point of the cube.
double minSquaredDistance(const Octree::Node& node, const Vec3& q)
{
  const Vec3 d = ((q - node.center).cwiseAbs().array() - node.half_extent).max(0.0).matrix();
  return d.squaredNorm();
}

double maxSquaredDistance(const Octree::Node& node, const Vec3& q)
{
  const Vec3 d = (q - node.center).cwiseAbs().array() + node.half_extent;
  return d.squaredNorm();
}

}  // namespace

Octree::Octree(const PointCloud& cloud, OctreeParams params) : params_(params), points_(cloud.points)
{
  if (params_.leaf_capacity < 1)
  {
    throw ParameterError("Octree: leaf capacity must be at least 1");
  }
  if (points_.empty())
  {
    return;
  }

  Vec3 lo = points_.front();
  Vec3 hi = points_.front();
  for (const Vec3& p : points_)
  {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Node root;
  root.center = 0.5 * (lo + hi);
  root.half_extent = std::max(0.5 * (hi - lo).maxCoeff() * 1.01, 1e-9);
  root.begin = 0;
  root.end = static_cast<std::uint32_t>(points_.size());
  nodes_.push_back(root);

  point_order_.resize(points_.size());
  for (std::uint32_t i = 0; i < point_order_.size(); ++i)
  {
    point_order_[i] = i;
  }
  std::vector<std::uint32_t> scratch(points_.size());
  build(0, scratch);
}

void Octree::build(std::int32_t node_index, std::vector<std::uint32_t>& scratch)
{
  // Explicit stack: depth is bounded but clouds can be large.
  std::vector<std::int32_t> stack{node_index};
  while (!stack.empty())
  {
    const std::int32_t current = stack.back();
    stack.pop_back();
    const Node node = nodes_[current];
    if (node.count() <= params_.leaf_capacity || node.depth >= params_.max_depth)
    {
      continue;
    }

    std::array<std::uint32_t, 8> counts{};
    for (std::uint32_t i = node.begin; i < node.end; ++i)
    {
      ++counts[octant(points_[point_order_[i]], node.center)];
    }
    std::array<std::uint32_t, 8> starts{};
    std::uint32_t running = node.begin;
    for (int c = 0; c < 8; ++c)
    {
      starts[c] = running;
      running += counts[c];
    }
    std::array<std::uint32_t, 8> cursor = starts;
    for (std::uint32_t i = node.begin; i < node.end; ++i)
    {
      const std::uint32_t idx = point_order_[i];
      scratch[cursor[octant(points_[idx], node.center)]++] = idx;
    }
    std::copy(scratch.begin() + node.begin, scratch.begin() + node.end, point_order_.begin() + node.begin);

    const auto first_child = static_cast<std::int32_t>(nodes_.size());
    nodes_[current].first_child = first_child;
    const double child_half = 0.5 * node.half_extent;
    for (int c = 0; c < 8; ++c)
    {
      Node child;
      child.center = node.center + Vec3((c & 1) ? child_half : -child_half, (c & 2) ? child_half : -child_half,
                                        (c & 4) ? child_half : -child_half);
      child.half_extent = child_half;
      child.depth = node.depth + 1;
      child.begin = starts[c];
      child.end = starts[c] + counts[c];
      nodes_.push_back(child);
      stack.push_back(first_child + c);
    }
  }
}

std::vector<std::size_t> Octree::leafIndices(const Node& leaf) const
{
  std::vector<std::size_t> out;
  out.reserve(leaf.count());
  for (std::uint32_t i = leaf.begin; i < leaf.end; ++i)
  {
    out.push_back(point_order_[i]);
  }
  return out;
}

void Octree::forEachInRadius(const Vec3& center, double radius,
                             const std::function<void(std::size_t)>& visit) const
{
  if (!(radius > 0.0))
  {
    throw ParameterError("radiusSearch: radius must be positive");
  }
  if (nodes_.empty())
  {
    return;
  }
  const double r2 = radius * radius;
  // Whole-cell acceptance keeps a relative margin so it never disagrees with
  // the per-point predicate under rounding.
  const double accept_all = r2 * (1.0 - 1e-9);

  std::vector<std::int32_t> stack{0};
  while (!stack.empty())
  {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.count() == 0 || minSquaredDistance(node, center) > r2)
    {
      continue;
    }
    if (maxSquaredDistance(node, center) <= accept_all)
    {
      for (std::uint32_t i = node.begin; i < node.end; ++i)
      {
        visit(point_order_[i]);
      }
      continue;
    }
    if (node.isLeaf())
    {
      for (std::uint32_t i = node.begin; i < node.end; ++i)
      {
        const std::uint32_t idx = point_order_[i];
        if ((points_[idx] - center).squaredNorm() <= r2)
        {
          visit(idx);
        }
      }
      continue;
    }
    for (int c = 0; c < 8; ++c)
    {
      stack.push_back(node.first_child + c);
    }
  }
}

std::vector<std::size_t> Octree::radiusSearch(const Vec3& center, double radius) const
{
  std::vector<std::size_t> hits;
  forEachInRadius(center, radius, [&hits](std::size_t i) { hits.push_back(i); });
  std::sort(hits.begin(), hits.end());
  return hits;
}

Octree buildOctree(const PointCloud& cloud, std::size_t leaf_capacity)
{
  OctreeParams params;
  params.leaf_capacity = leaf_capacity;
  return Octree(cloud, params);
}

}  // namespace legipulation

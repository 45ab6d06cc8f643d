#pragma once

// Brute-force reference implementations and random generators for tests.
// Nothing here calls into the code under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "legipulation/cloud.hpp"
#include "legipulation/leg.hpp"

namespace oracle {

using legipulation::PointCloud;
using legipulation::Vec3;

// ---- generators ----------------------------------------------------------

class Gen
{
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vec3 vec(double lo, double hi) { return Vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)); }

  Eigen::Quaterniond quaternion()
  {
    // Uniform on S^3 (normalised Gaussian 4-vector).
    Eigen::Vector4d v(normal(1.0), normal(1.0), normal(1.0), normal(1.0));
    v.normalize();
    return Eigen::Quaterniond(v[0], v[1], v[2], v[3]);
  }

  PointCloud blobCloud(int blobs, int per_blob, double spread, double extent)
  {
    PointCloud c;
    for (int b = 0; b < blobs; ++b)
    {
      const Vec3 centre = vec(-extent, extent);
      for (int i = 0; i < per_blob; ++i)
      {
        c.points.push_back(centre + Vec3(normal(spread), normal(spread), normal(spread)));
      }
    }
    return c;
  }

  PointCloud uniformCloud(int n, double lo, double hi)
  {
    PointCloud c;
    for (int i = 0; i < n; ++i)
    {
      c.points.push_back(vec(lo, hi));
    }
    return c;
  }

  std::vector<double> anglesWithin(const legipulation::KinematicChain& chain, double margin = 0.0)
  {
    std::vector<double> q;
    for (const auto& j : chain.joints)
    {
      q.push_back(uniform(j.min + margin, j.max - margin));
    }
    return q;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// ---- geometry ------------------------------------------------------------

inline Eigen::Matrix3d quaternionMatrix(double w, double x, double y, double z)
{
  Eigen::Matrix3d m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),  //
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),   //
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

// Rodrigues rotation by angle about a unit axis.
inline Eigen::Matrix3d axisAngleMatrix(const Vec3& axis, double angle)
{
  Eigen::Matrix3d k;
  k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

// ---- point clouds --------------------------------------------------------

inline std::vector<std::size_t> linearRadius(const PointCloud& c, const Vec3& centre, double r)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    if ((c.points[i] - centre).squaredNorm() <= r * r)
    {
      out.push_back(i);
    }
  }
  return out;
}

class UnionFind
{
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a)
  {
    while (parent_[a] != a)
    {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

// Connected components over all O(n^2) pairs, with the library's ordering
// (size descending, then smallest member).
inline std::vector<std::vector<std::size_t>> unionFindClusters(const PointCloud& c, double tol, std::size_t min_size,
                                                               std::size_t max_size)
{
  const std::size_t n = c.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      if ((c.points[i] - c.points[j]).squaredNorm() <= tol * tol)
      {
        uf.unite(i, j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    groups[uf.find(i)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups)
  {
    if (!g.empty() && g.size() >= min_size && g.size() <= max_size)
    {
      out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  });
  return out;
}

// ---- curves --------------------------------------------------------------

inline Vec3 deCasteljau(std::vector<Vec3> p, double t)
{
  for (std::size_t level = p.size() - 1; level > 0; --level)
  {
    for (std::size_t i = 0; i < level; ++i)
    {
      p[i] = (1 - t) * p[i] + t * p[i + 1];
    }
  }
  return p.front();
}

// ---- kinematics ----------------------------------------------------------

template <typename Fk>
Eigen::MatrixXd finiteDifferenceJacobian(Fk fk, const std::vector<double>& q, double h = 1e-6)
{
  Eigen::MatrixXd j(3, static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
  {
    auto plus = q;
    auto minus = q;
    plus[i] += h;
    minus[i] -= h;
    j.col(static_cast<Eigen::Index>(i)) = (fk(plus) - fk(minus)) / (2 * h);
  }
  return j;
}

}  // namespace oracle

#include <gtest/gtest.h>

#include "legipulation/cluster.hpp"
#include "legipulation/error.hpp"
#include "legipulation/octree.hpp"
#include "oracles.hpp"

using namespace legipulation;

namespace {

std::vector<std::vector<std::size_t>> indexSets(const std::vector<Cluster>& clusters)
{
  std::vector<std::vector<std::size_t>> out;
  for (const Cluster& c : clusters)
  {
    out.push_back(c.indices);
  }
  return out;
}

PointCloud blobAt(const Vec3& centre, int n, double spread, oracle::Gen& gen)
{
  PointCloud c;
  for (int i = 0; i < n; ++i)
  {
    c.points.push_back(centre + Vec3(gen.uniform(-spread, spread), gen.uniform(-spread, spread),
                                     gen.uniform(-spread, spread)));
  }
  return c;
}

void append(PointCloud& into, const PointCloud& more)
{
  into.points.insert(into.points.end(), more.points.begin(), more.points.end());
}

}  // namespace

// ---- octree --------------------------------------------------------------

TEST(Octree, EmptyCloud)
{
  const Octree tree(PointCloud{});
  EXPECT_EQ(tree.size(), 0u);
  EXPECT_TRUE(tree.radiusSearch(Vec3::Zero(), 1.0).empty());
}

TEST(Octree, LeavesPartitionThePoints)
{
  oracle::Gen gen(31);
  const PointCloud c = gen.uniformCloud(1000, -1, 1);
  const Octree tree = buildOctree(c, 8);
  std::vector<int> seen(c.size(), 0);
  std::size_t total = 0;
  for (const auto& node : tree.nodes())
  {
    if (!node.isLeaf())
    {
      continue;
    }
    const auto members = tree.leafIndices(node);
    total += members.size();
    EXPECT_TRUE(members.size() <= 8 || node.depth == tree.params().max_depth);
    for (std::size_t i : members)
    {
      ++seen[i];
      const Vec3 d = (c.points[i] - node.center).cwiseAbs();
      EXPECT_LE(d.maxCoeff(), node.half_extent * (1 + 1e-12));
    }
  }
  EXPECT_EQ(total, 1000u);
  for (int s : seen)
  {
    EXPECT_EQ(s, 1);
  }
}

TEST(Octree, CoincidentPointsStopAtMaxDepth)
{
  PointCloud c;
  for (int i = 0; i < 40; ++i)
  {
    c.points.push_back(Vec3(0.1, 0.2, 0.3));
  }
  c.points.push_back(Vec3(1, 1, 1));
  const Octree tree = buildOctree(c, 4);
  EXPECT_EQ(tree.radiusSearch(Vec3(0.1, 0.2, 0.3), 1e-9).size(), 40u);
}

TEST(RadiusSearch, CoversEverythingWithHugeRadius)
{
  oracle::Gen gen(32);
  const PointCloud c = gen.uniformCloud(300, -1, 1);
  const Octree tree(c);
  EXPECT_EQ(tree.radiusSearch(Vec3::Zero(), 10.0).size(), 300u);
}

TEST(RadiusSearch, BoundaryIsClosed)
{
  PointCloud c;
  c.points = {Vec3(0, 0, 0), Vec3(0.5, 0, 0), Vec3(0.5000001, 0, 0), Vec3(0, 0.25, 0)};
  const Octree tree(c);
  EXPECT_EQ(tree.radiusSearch(Vec3::Zero(), 0.5), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(tree.radiusSearch(Vec3(0, 0.5, 0), 0.25), (std::vector<std::size_t>{3}));
  EXPECT_THROW(tree.radiusSearch(Vec3::Zero(), 0.0), ParameterError);
}

TEST(RadiusSearchProperty, MatchesLinearScan)
{
  oracle::Gen gen(33);
  for (int trial = 0; trial < 20; ++trial)
  {
    const PointCloud c = trial % 2 == 0 ? gen.uniformCloud(500, -1, 1) : gen.blobCloud(5, 100, 0.05, 0.5);
    const Octree tree = buildOctree(c, static_cast<std::size_t>(gen.integer(1, 32)));
    for (int q = 0; q < 50; ++q)
    {
      const Vec3 centre = q % 5 == 0 ? c.points[static_cast<std::size_t>(gen.integer(0, 499))] : gen.vec(-1.2, 1.2);
      const double r = gen.uniform(0.01, 0.8);
      EXPECT_EQ(tree.radiusSearch(centre, r), oracle::linearRadius(c, centre, r));
    }
  }
}

// ---- clustering ----------------------------------------------------------

TEST(Clusters, TwoSeparatedBlobs)
{
  oracle::Gen gen(34);
  PointCloud c = blobAt(Vec3(0, 0, 0), 20, 0.01, gen);
  append(c, blobAt(Vec3(0.5, 0, 0), 20, 0.01, gen));
  const auto clusters = euclideanClusters(c, ClusterParams{0.05, 5, 1000});
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].indices.size(), 20u);
  EXPECT_EQ(clusters[1].indices.size(), 20u);
  EXPECT_EQ(clusters[0].indices.front(), 0u);
  EXPECT_EQ(clusters[1].indices.front(), 20u);
  EXPECT_EQ(indexSets(clusters), oracle::unionFindClusters(c, 0.05, 5, 1000));
}

TEST(Clusters, SinglePointBelowMinimum)
{
  PointCloud c;
  c.points = {Vec3(1, 2, 3)};
  EXPECT_TRUE(euclideanClusters(c, ClusterParams{0.05, 2, 100}).empty());
  EXPECT_TRUE(euclideanClusters(PointCloud{}, ClusterParams{0.05, 1, 100}).empty());
}

TEST(Clusters, ChainIsTransitive)
{
  PointCloud c;
  for (int i = 0; i < 30; ++i)
  {
    c.points.push_back(Vec3(0.04 * i, 0, 0));
  }
  const auto clusters = euclideanClusters(c, ClusterParams{0.05, 1, 100});
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].indices.size(), 30u);
  EXPECT_NEAR(clusters[0].centroid.x(), 0.04 * 14.5, 1e-12);
}

TEST(Clusters, SizeFilterAndOrdering)
{
  oracle::Gen gen(35);
  PointCloud c = blobAt(Vec3(0, 0, 0), 10, 0.01, gen);
  append(c, blobAt(Vec3(1, 0, 0), 40, 0.01, gen));
  append(c, blobAt(Vec3(2, 0, 0), 25, 0.01, gen));
  append(c, blobAt(Vec3(3, 0, 0), 200, 0.02, gen));
  const auto clusters = euclideanClusters(c, ClusterParams{0.05, 20, 100});
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].indices.size(), 40u);
  EXPECT_EQ(clusters[1].indices.size(), 25u);
}

TEST(Clusters, InvalidParameters)
{
  EXPECT_THROW(euclideanClusters(PointCloud{}, ClusterParams{0.0, 1, 10}), ParameterError);
  EXPECT_THROW(euclideanClusters(PointCloud{}, ClusterParams{0.1, 0, 10}), ParameterError);
  EXPECT_THROW(euclideanClusters(PointCloud{}, ClusterParams{0.1, 5, 4}), ParameterError);
}

TEST(ClustersProperty, EqualUnionFindOracle)
{
  oracle::Gen gen(36);
  for (int trial = 0; trial < 40; ++trial)
  {
    const PointCloud c = trial % 3 == 0 ? gen.uniformCloud(gen.integer(1, 600), -0.5, 0.5)
                                        : gen.blobCloud(gen.integer(1, 8), gen.integer(5, 150), 0.03, 0.6);
    const double tol = gen.uniform(0.01, 0.1);
    const std::size_t lo = static_cast<std::size_t>(gen.integer(1, 20));
    const std::size_t hi = lo + static_cast<std::size_t>(gen.integer(0, 500));
    const auto clusters = euclideanClusters(c, ClusterParams{tol, lo, hi});
    EXPECT_EQ(indexSets(clusters), oracle::unionFindClusters(c, tol, lo, hi));

    // Disjoint and, before the size filter, covering.
    const auto all = euclideanClusters(c, ClusterParams{tol, 1, c.size()});
    std::vector<int> seen(c.size(), 0);
    for (const Cluster& k : all)
    {
      Vec3 mean = Vec3::Zero();
      for (std::size_t i : k.indices)
      {
        ++seen[i];
        mean += c.points[i];
      }
      EXPECT_LT((k.centroid - mean / static_cast<double>(k.indices.size())).norm(), 1e-12);
    }
    for (int s : seen)
    {
      EXPECT_EQ(s, 1);
    }
  }
}

// ---- target search -------------------------------------------------------

TEST(TargetSearch, ExpansionSchedule)
{
  SearchPolicy p;
  p.start = Vec3(0.3, 0, 0.05);
  p.step = 0.05;
  EXPECT_EQ(expansionRound(p, 0), (std::vector<Vec3>{p.start}));
  const auto r2 = expansionRound(p, 2);
  ASSERT_EQ(r2.size(), 4u);
  EXPECT_LT((r2[0] - Vec3(0.3, 0.1, 0.05)).norm(), 1e-15);
  EXPECT_LT((r2[1] - Vec3(0.3, -0.1, 0.05)).norm(), 1e-15);
  EXPECT_LT((r2[2] - Vec3(0.3, 0, 0.15)).norm(), 1e-15);
  EXPECT_LT((r2[3] - Vec3(0.3, 0, -0.05)).norm(), 1e-15);
}

TEST(TargetSearch, ClusterAtStartFoundInRoundZero)
{
  oracle::Gen gen(37);
  const PointCloud c = blobAt(Vec3(0.3, 0, 0.05), 50, 0.02, gen);
  const Octree tree(c);
  const auto clusters = euclideanClusters(c, tree, ClusterParams{0.05, 5, 1000});
  SearchPolicy p;
  p.start = Vec3(0.3, 0, 0.05);
  const TargetCluster t = findTargetCluster(clusters, c, tree, p);
  EXPECT_EQ(t.round, 0);
  EXPECT_EQ(t.cluster.indices.size(), 50u);
}

TEST(TargetSearch, OffsetClusterFoundByRoundTwo)
{
  oracle::Gen gen(38);
  const PointCloud c = blobAt(Vec3(0.3, 0.1, 0.05), 50, 0.005, gen);
  const Octree tree(c);
  const auto clusters = euclideanClusters(c, tree, ClusterParams{0.05, 5, 1000});
  SearchPolicy p;
  p.start = Vec3(0.3, 0, 0.05);
  p.radius = 0.05;
  p.step = 0.05;
  const TargetCluster t = findTargetCluster(clusters, c, tree, p);
  EXPECT_LE(t.round, 2);
  EXPECT_GE(t.round, 1);
}

TEST(TargetSearch, NearClusterBeatsPeripheralOne)
{
  oracle::Gen gen(39);
  PointCloud c = blobAt(Vec3(0.6, 0.3, 0.05), 200, 0.03, gen);
  append(c, blobAt(Vec3(0.32, 0.0, 0.06), 60, 0.02, gen));
  const Octree tree(c);
  const auto clusters = euclideanClusters(c, tree, ClusterParams{0.05, 5, 1000});
  ASSERT_EQ(clusters.size(), 2u);
  const TargetCluster t = findTargetCluster(clusters, c, tree, SearchPolicy{});
  EXPECT_EQ(t.cluster.indices.size(), 60u);
  EXPECT_EQ(t.cluster_rank, 1u);
  const TargetCluster again = findTargetCluster(clusters, c, tree, SearchPolicy{});
  EXPECT_EQ(again.cluster.indices, t.cluster.indices);
}

TEST(TargetSearch, NothingInRangeThrows)
{
  oracle::Gen gen(40);
  const PointCloud c = blobAt(Vec3(5, 5, 5), 30, 0.01, gen);
  const Octree tree(c);
  const auto clusters = euclideanClusters(c, tree, ClusterParams{0.05, 5, 1000});
  EXPECT_THROW(findTargetCluster(clusters, c, tree, SearchPolicy{}), NoObstacleFoundError);
}

TEST(TargetSearch, InvalidPolicy)
{
  const Octree tree(PointCloud{});
  SearchPolicy p;
  p.radius = 0;
  EXPECT_THROW(findTargetCluster({}, PointCloud{}, tree, p), ParameterError);
  p = SearchPolicy{};
  p.max_expansions = 0;
  EXPECT_THROW(findTargetCluster({}, PointCloud{}, tree, p), ParameterError);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "legipulation/error.hpp"
#include "legipulation/json_io.hpp"
#include "legipulation/obstacle.hpp"
#include "oracles.hpp"

using namespace legipulation;

namespace {

Cluster everything(const PointCloud& c)
{
  Cluster k;
  k.indices.resize(c.size());
  std::iota(k.indices.begin(), k.indices.end(), 0);
  for (const Vec3& p : c.points)
  {
    k.centroid += p;
  }
  k.centroid /= static_cast<double>(c.size());
  return k;
}

bool onSurface(const Aabb& box, const Vec3& p)
{
  if (!box.contains(p))
  {
    return false;
  }
  for (int a = 0; a < 3; ++a)
  {
    if (p[a] == box.min[a] || p[a] == box.max[a])
    {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(FitAabb, UnitCubeCorners)
{
  PointCloud c;
  for (int i = 0; i < 8; ++i)
  {
    c.points.push_back(Vec3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
  }
  const Aabb box = fitAabb(c, everything(c));
  EXPECT_EQ(box.min, Vec3(0, 0, 0));
  EXPECT_EQ(box.max, Vec3(1, 1, 1));
}

TEST(FitAabb, SinglePointAndErrors)
{
  PointCloud c;
  c.points = {Vec3(0.4, -0.2, 0.1)};
  const Aabb box = fitAabb(c, everything(c));
  EXPECT_EQ(box.min, c.points[0]);
  EXPECT_EQ(box.max, c.points[0]);
  EXPECT_THROW(fitAabb(c, Cluster{}), ContractViolation);
  Cluster bad;
  bad.indices = {3};
  EXPECT_THROW(fitAabb(c, bad), ContractViolation);
}

TEST(FitAabbProperty, MatchesScanAndContainsMembers)
{
  oracle::Gen gen(51);
  for (int trial = 0; trial < 100; ++trial)
  {
    const PointCloud c = gen.uniformCloud(gen.integer(1, 300), -1, 1);
    Cluster k;
    for (std::size_t i = 0; i < c.size(); ++i)
    {
      if (gen.integer(0, 2) != 0 || k.indices.empty())
      {
        k.indices.push_back(i);
      }
    }
    Vec3 lo = Vec3::Constant(1e9);
    Vec3 hi = Vec3::Constant(-1e9);
    for (std::size_t i : k.indices)
    {
      for (int a = 0; a < 3; ++a)
      {
        lo[a] = std::min(lo[a], c.points[i][a]);
        hi[a] = std::max(hi[a], c.points[i][a]);
      }
    }
    const Aabb box = fitAabb(c, k);
    EXPECT_EQ(box.min, lo);
    EXPECT_EQ(box.max, hi);
    for (std::size_t i : k.indices)
    {
      EXPECT_TRUE(box.contains(c.points[i]));
    }
  }
}

TEST(ContactPoints, FaceCentreArithmetic)
{
  const Aabb box{Vec3(0.3, -0.1, 0.0), Vec3(0.5, 0.1, 0.2)};
  const ContactPoints p = contactPoints(box);
  EXPECT_LT((at(p, ContactPointId::FrontCentre) - Vec3(0.3, 0, 0.1)).norm(), 1e-15);
  EXPECT_LT((at(p, ContactPointId::LeftBackCentre) - Vec3(0.5, 0.1, 0.1)).norm(), 1e-15);
  EXPECT_LT((at(p, ContactPointId::FrontTopCentre) - Vec3(0.3, 0, 0.2)).norm(), 1e-15);
  EXPECT_LT((at(p, ContactPointId::RightCentre) - Vec3(0.4, -0.1, 0.1)).norm(), 1e-15);
  EXPECT_LT((at(p, ContactPointId::LeftCentre) - Vec3(0.4, 0.1, 0.1)).norm(), 1e-15);
}

TEST(ContactPoints, DegenerateBoxCollapses)
{
  const Vec3 p(0.2, 0.3, 0.4);
  for (const Vec3& q : contactPoints(Aabb{p, p}))
  {
    EXPECT_EQ(q, p);
  }
}

TEST(ContactPoints, KeysRoundTrip)
{
  for (ContactPointId id : kAllContactPoints)
  {
    EXPECT_EQ(contactPointFromKey(contactPointKey(id)), id);
  }
  EXPECT_EQ(contactPointKey(ContactPointId::LeftBackCentre), "point5");
  EXPECT_THROW(contactPointFromKey("point6"), ParameterError);
}

TEST(ContactPointsProperty, ClosedFormsAndOnSurface)
{
  oracle::Gen gen(52);
  for (int trial = 0; trial < 500; ++trial)
  {
    const Vec3 a = gen.vec(-1, 1);
    const Vec3 b = gen.vec(-1, 1);
    const Aabb box{a.cwiseMin(b), a.cwiseMax(b)};
    const ContactPoints p = contactPoints(box);
    const Vec3 mid = 0.5 * (box.min + box.max);
    EXPECT_EQ(p[0], Vec3(box.min.x(), mid.y(), box.max.z()));
    EXPECT_EQ(p[1], Vec3(box.min.x(), mid.y(), mid.z()));
    EXPECT_EQ(p[2], Vec3(mid.x(), box.min.y(), mid.z()));
    EXPECT_EQ(p[3], Vec3(mid.x(), box.max.y(), mid.z()));
    EXPECT_EQ(p[4], Vec3(box.max.x(), box.max.y(), mid.z()));
    for (const Vec3& q : p)
    {
      EXPECT_TRUE(onSurface(box, q));
    }
  }
}

TEST(Describe, OnePointHasZeroExtents)
{
  PointCloud c;
  c.points = {Vec3(0.4, 0.0, 0.05)};
  const ObstacleDescriptor d = describeObstacle(c, everything(c));
  EXPECT_EQ(d.point_count, 1u);
  EXPECT_EQ(d.width, 0.0);
  EXPECT_EQ(d.height, 0.0);
  EXPECT_EQ(d.depth, 0.0);
  EXPECT_EQ(d.centroid, c.points[0]);
}

TEST(DescribeProperty, ExtentsIgnorePointOrder)
{
  oracle::Gen gen(53);
  for (int trial = 0; trial < 50; ++trial)
  {
    PointCloud c = gen.uniformCloud(gen.integer(2, 200), -0.5, 0.5);
    const ObstacleDescriptor d = describeObstacle(c, everything(c));
    EXPECT_EQ(d.depth, d.box.extents().x());
    EXPECT_EQ(d.width, d.box.extents().y());
    EXPECT_EQ(d.height, d.box.extents().z());
    std::shuffle(c.points.begin(), c.points.end(), gen.engine());
    const ObstacleDescriptor e = describeObstacle(c, everything(c));
    EXPECT_EQ(d.box.min, e.box.min);
    EXPECT_EQ(d.box.max, e.box.max);
    EXPECT_LT((d.centroid - e.centroid).norm(), 1e-12);
  }
}

TEST(DescriptorJson, MatchesGoldenFile)
{
  const ObstacleDescriptor d =
      describeBox(Aabb{Vec3(0.25, -0.125, 0.0), Vec3(0.5, 0.125, 0.25)}, Vec3(0.375, 0.0, 0.125), 42);
  const std::string golden = readTextFile(std::string(GOLDEN_DIR) + "/descriptor.json");
  EXPECT_EQ(descriptorToJson(d), golden);

  const ObstacleDescriptor back = descriptorFromJson(golden);
  EXPECT_EQ(back.box.min, d.box.min);
  EXPECT_EQ(back.box.max, d.box.max);
  EXPECT_EQ(back.point_count, 42u);
  for (ContactPointId id : kAllContactPoints)
  {
    EXPECT_EQ(back.contact(id), d.contact(id));
  }
}

TEST(DescriptorJson, RejectsInconsistentContactPoints)
{
  std::string text = readTextFile(std::string(GOLDEN_DIR) + "/descriptor.json");
  const auto at5 = text.find("\"point5\"");
  ASSERT_NE(at5, std::string::npos);
  text.replace(text.find("0.5", at5), 3, "0.6");
  EXPECT_THROW(descriptorFromJson(text), ParameterError);
  EXPECT_THROW(descriptorFromJson("{\"box\": 1}"), ParameterError);
}

#include <gtest/gtest.h>

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "legipulation/cloud.hpp"
#include "legipulation/error.hpp"
#include "legipulation/pcd.hpp"
#include "oracles.hpp"

using namespace legipulation;

namespace {

std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointCloud parse(const std::string& text)
{
  std::istringstream in(text);
  return readPcd(in);
}

std::string header(std::size_t points, const std::string& fields = "x y z", const std::string& data = "ascii")
{
  std::ostringstream ss;
  ss << "VERSION 0.7\nFIELDS " << fields << "\nSIZE 4 4 4\nTYPE F F F\nCOUNT 1 1 1\nWIDTH " << points
     << "\nHEIGHT 1\nVIEWPOINT 0 0 0 1 0 0 0\nPOINTS " << points << "\nDATA " << data << "\n";
  return ss.str();
}

bool samePoints(const PointCloud& a, const PointCloud& b)
{
  if (a.size() != b.size())
  {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (a.points[i] != b.points[i])
    {
      return false;
    }
  }
  return true;
}

}  // namespace

// ---- PCD -----------------------------------------------------------------

TEST(Pcd, ThreePointFile)
{
  const PointCloud c = parse(header(3) + "0 0 0\n1 0 0\n0 1 0\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.points[1], Vec3(1, 0, 0));
  EXPECT_EQ(c.points[2], Vec3(0, 1, 0));
}

TEST(Pcd, CountMismatchNamesTheLine)
{
  try
  {
    parse(header(5) + "0 0 0\n1 0 0\n0 1 0\n1 1 1\n");
    FAIL() << "expected ParseError";
  }
  catch (const ParseError& e)
  {
    EXPECT_GT(e.line(), 0u);
  }
}

TEST(Pcd, MalformedHeaderLineIsReported)
{
  try
  {
    parse("VERSION 0.7\nFIELDS x y z\nWIDTH three\n");
    FAIL() << "expected ParseError";
  }
  catch (const ParseError& e)
  {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Pcd, BinaryDataIsUnsupported)
{
  EXPECT_THROW(parse(header(1, "x y z", "binary") + "abc"), UnsupportedFormatError);
}

TEST(Pcd, MissingCoordinateFieldIsAParseError)
{
  EXPECT_THROW(parse(header(1, "x y intensity") + "1 2 3\n"), ParseError);
}

TEST(Pcd, ExtraFieldsAreIgnored)
{
  const PointCloud c = loadPcd(std::string(GOLDEN_DIR) + "/cloud_rgb.pcd");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.points[0], Vec3(0.5, -0.25, 0.125));
  EXPECT_EQ(c.points[1], Vec3(1, 2, 3));
  EXPECT_EQ(c.points[2], Vec3(-0.001, 0, 0.75));
}

TEST(Pcd, NonFiniteRowsAreDropped)
{
  const PointCloud c = parse(header(3) + "0 0 0\nnan 0 0\n1 2 3\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.points[1], Vec3(1, 2, 3));
}

TEST(PcdGolden, WriterIsByteExact)
{
  PointCloud c;
  c.points = {Vec3(0, 0, 0),         Vec3(1, 0, 0),         Vec3(0, 1, 0),
              Vec3(0.36, -0.03, 0.0575), Vec3(-1.5, 2.25, 1e-05), Vec3(0.1, 0.2, 0.1 + 0.2)};
  std::ostringstream out;
  writePcd(out, c);
  EXPECT_EQ(out.str(), slurp(std::string(GOLDEN_DIR) + "/cloud.pcd"));
}

TEST(PcdGolden, ReaderRecoversTheExactDoubles)
{
  const PointCloud c = loadPcd(std::string(GOLDEN_DIR) + "/cloud.pcd");
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.points[5].z(), 0.1 + 0.2);
  std::ostringstream out;
  writePcd(out, c);
  EXPECT_EQ(out.str(), slurp(std::string(GOLDEN_DIR) + "/cloud.pcd"));
}

TEST(PcdProperty, RoundTripIsBitExact)
{
  oracle::Gen gen(21);
  for (int trial = 0; trial < 20; ++trial)
  {
    PointCloud c = gen.uniformCloud(gen.integer(0, 300), -1e3, 1e3);
    for (auto& p : c.points)
    {
      p *= std::pow(10.0, gen.integer(-12, 3));
    }
    std::stringstream buf;
    writePcd(buf, c);
    EXPECT_TRUE(samePoints(readPcd(buf), c));
  }
}

// ---- voxel grid ----------------------------------------------------------

TEST(Voxel, CubeCornersCollapseToCentre)
{
  PointCloud c;
  for (int i = 0; i < 8; ++i)
  {
    c.points.push_back(Vec3(0.002 + 0.005 * (i & 1), 0.002 + 0.005 * ((i >> 1) & 1), 0.002 + 0.005 * ((i >> 2) & 1)));
  }
  const PointCloud out = voxelDownsample(c, 0.01);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_LT((out.points[0] - Vec3(0.0045, 0.0045, 0.0045)).norm(), 1e-15);
}

TEST(Voxel, EmptyAndDistantPoints)
{
  EXPECT_TRUE(voxelDownsample(PointCloud{}, 0.01).empty());
  PointCloud c;
  c.points = {Vec3(0.123, 0.2, 0.3), Vec3(0.623, 0.2, 0.3)};
  const PointCloud out = voxelDownsample(c, 0.01);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.points[0], c.points[0]);
  EXPECT_EQ(out.points[1], c.points[1]);
}

TEST(Voxel, NonPositiveLeafIsRejected)
{
  EXPECT_THROW(voxelDownsample(PointCloud{}, 0.0), ParameterError);
  EXPECT_THROW(voxelDownsample(PointCloud{}, -0.01), ParameterError);
}

TEST(VoxelProperty, CentroidOfEachVoxelAndIdempotent)
{
  oracle::Gen gen(22);
  for (int trial = 0; trial < 30; ++trial)
  {
    const double leaf = gen.uniform(0.005, 0.05);
    const PointCloud c = gen.uniformCloud(gen.integer(1, 800), -0.3, 0.3);
    const PointCloud once = voxelDownsample(c, leaf);
    EXPECT_LE(once.size(), c.size());

    // Brute force: group by voxel key.
    std::map<std::array<long, 3>, std::vector<Vec3>> groups;
    for (const Vec3& p : c.points)
    {
      groups[{static_cast<long>(std::floor(p.x() / leaf)), static_cast<long>(std::floor(p.y() / leaf)),
              static_cast<long>(std::floor(p.z() / leaf))}]
          .push_back(p);
    }
    ASSERT_EQ(once.size(), groups.size());
    std::size_t k = 0;
    for (const auto& [key, members] : groups)
    {
      Vec3 mean = Vec3::Zero();
      Vec3 lo = members.front();
      Vec3 hi = members.front();
      for (const Vec3& p : members)
      {
        mean += p;
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
      }
      mean /= static_cast<double>(members.size());
      EXPECT_LT((once.points[k] - mean).norm(), 1e-12);
      EXPECT_TRUE((once.points[k].array() >= lo.array()).all() && (once.points[k].array() <= hi.array()).all());
      ++k;
    }
    EXPECT_TRUE(samePoints(voxelDownsample(once, leaf), once));
  }
}

// ---- passthrough ---------------------------------------------------------

TEST(Passthrough, KeepsPointsInsideRange)
{
  PointCloud c;
  c.points = {Vec3(0.3, 0, 0.1), Vec3(1.5, 0, 0.1)};
  const PointCloud out = passthrough(c, {{Axis::X, 0.2, 0.6}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.points[0], Vec3(0.3, 0, 0.1));
}

TEST(Passthrough, NoRangesIsIdentityAndBoundsAreClosed)
{
  PointCloud c;
  c.points = {Vec3(0.2, 0, 0), Vec3(0.6, 0, 0), Vec3(0.61, 0, 0)};
  EXPECT_TRUE(samePoints(passthrough(c, {}), c));
  EXPECT_EQ(passthrough(c, {{Axis::X, 0.2, 0.6}}).size(), 2u);
}

TEST(Passthrough, EmptyRangeIsRejected)
{
  EXPECT_THROW(passthrough(PointCloud{}, {{Axis::Z, 0.5, 0.5}}), ParameterError);
}

TEST(PassthroughProperty, MatchesPredicateScanAndIdempotent)
{
  oracle::Gen gen(23);
  for (int trial = 0; trial < 50; ++trial)
  {
    const PointCloud c = gen.uniformCloud(gen.integer(0, 500), -1, 1);
    std::vector<AxisRange> ranges;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
    {
      if (gen.integer(0, 1) == 1)
      {
        const double lo = gen.uniform(-1, 0.5);
        ranges.push_back({a, lo, lo + gen.uniform(0.1, 1.0)});
      }
    }
    PointCloud expected;
    for (const Vec3& p : c.points)
    {
      bool keep = true;
      for (const AxisRange& r : ranges)
      {
        const double v = p[static_cast<int>(r.axis)];
        keep = keep && v >= r.min && v <= r.max;
      }
      if (keep)
      {
        expected.points.push_back(p);
      }
    }
    const PointCloud once = passthrough(c, ranges);
    EXPECT_TRUE(samePoints(once, expected));
    EXPECT_TRUE(samePoints(passthrough(once, ranges), once));
  }
}

// ---- RANSAC --------------------------------------------------------------

namespace {

// 200 ground points plus 50 points on a box top 0.1 m up.
PointCloud groundAndBox(oracle::Gen& gen, double sigma)
{
  PointCloud c;
  for (int i = 0; i < 200; ++i)
  {
    c.points.push_back(Vec3(gen.uniform(0, 1), gen.uniform(-0.5, 0.5), gen.normal(sigma)));
  }
  for (int i = 0; i < 50; ++i)
  {
    c.points.push_back(Vec3(gen.uniform(0.4, 0.5), gen.uniform(0, 0.1), 0.1 + gen.normal(sigma)));
  }
  return c;
}

}  // namespace

TEST(Ransac, RecoversGroundUnderBox)
{
  oracle::Gen gen(24);
  const PointCloud c = groundAndBox(gen, 0.0);
  const PlaneModel m = ransacPlane(c, 0.01, 200, 1);
  EXPECT_NEAR(std::abs(m.normal.z()), 1.0, 1e-9);
  EXPECT_GE(m.inlier_indices.size(), 200u);
  EXPECT_NEAR(m.normal.norm(), 1.0, 1e-9);
  EXPECT_GE(m.normal.z(), 0.0);

  const PointCloud rest = removePlane(c, m);
  ASSERT_EQ(rest.size(), 50u);
  for (std::size_t i = 0; i < rest.size(); ++i)
  {
    EXPECT_EQ(rest.points[i], c.points[200 + i]);
  }
}

TEST(Ransac, ThreePointsGiveExactPlane)
{
  PointCloud c;
  c.points = {Vec3(0, 0, 1), Vec3(1, 0, 1), Vec3(0, 1, 2)};
  const PlaneModel m = ransacPlane(c, 1e-9, 10, 3);
  EXPECT_EQ(m.inlier_indices.size(), 3u);
  for (const Vec3& p : c.points)
  {
    EXPECT_NEAR(m.signedDistance(p), 0.0, 1e-12);
  }
}

TEST(Ransac, NoisyPlaneKeepsNearlyAllPoints)
{
  oracle::Gen gen(25);
  PointCloud c;
  for (int i = 0; i < 2000; ++i)
  {
    c.points.push_back(Vec3(gen.uniform(0, 1), gen.uniform(0, 1), gen.normal(0.002)));
  }
  const PlaneModel m = ransacPlane(c, 0.01, 200, 5);
  EXPECT_GE(m.inlier_indices.size(), 1980u);
}

TEST(Ransac, Errors)
{
  PointCloud two;
  two.points = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  EXPECT_THROW(ransacPlane(two, 0.01, 10, 1), InsufficientPointsError);
  PointCloud line;
  for (int i = 0; i < 10; ++i)
  {
    line.points.push_back(Vec3(i, 2.0 * i, 0));
  }
  EXPECT_THROW(ransacPlane(line, 0.01, 50, 1), DegenerateInputError);
  EXPECT_THROW(ransacPlane(line, 0.0, 50, 1), ParameterError);
}

TEST(RansacProperty, SeededRunsAreBitReproducible)
{
  oracle::Gen gen(26);
  for (int trial = 0; trial < 10; ++trial)
  {
    const PointCloud c = groundAndBox(gen, 0.003);
    const PlaneModel a = ransacPlane(c, 0.01, 100, trial);
    const PlaneModel b = ransacPlane(c, 0.01, 100, trial);
    EXPECT_EQ(a.normal, b.normal);
    EXPECT_EQ(a.offset, b.offset);
    EXPECT_EQ(a.inlier_indices, b.inlier_indices);
    EXPECT_EQ(removePlane(c, a).size() + a.inlier_indices.size(), c.size());
  }
}

TEST(RemovePlane, EdgeCases)
{
  PointCloud c;
  c.points = {Vec3(0, 0, 0), Vec3(1, 1, 1)};
  PlaneModel none;
  EXPECT_TRUE(samePoints(removePlane(c, none), c));
  PlaneModel all;
  all.inlier_indices = {0, 1};
  EXPECT_TRUE(removePlane(c, all).empty());
  PlaneModel bad;
  bad.inlier_indices = {2};
  EXPECT_THROW(removePlane(c, bad), ContractViolation);
}

TEST(TransformCloud, AppliesRotationThenTranslation)
{
  PointCloud c;
  c.points = {Vec3(1, 0, 0)};
  Pose t;
  t.position = Vec3(0, 0, 1);
  t.orientation = axisAngle(Vec3::UnitZ(), M_PI / 2);
  EXPECT_LT((transformCloud(c, t).points[0] - Vec3(0, 1, 1)).norm(), 1e-15);
}

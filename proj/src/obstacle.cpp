#include "legipulation/obstacle.hpp"

#include <string>

#include "legipulation/error.hpp"

namespace legipulation {

std::string_view contactPointKey(ContactPointId id)
{
  switch (id)
  {
    case ContactPointId::FrontTopCentre:
      return "point1";
    case ContactPointId::FrontCentre:
      return "point2";
    case ContactPointId::RightCentre:
      return "point3";
    case ContactPointId::LeftCentre:
      return "point4";
    case ContactPointId::LeftBackCentre:
      return "point5";
  }
  throw ParameterError("unknown contact point id");
}

ContactPointId contactPointFromKey(std::string_view key)
{
  for (ContactPointId id : kAllContactPoints)
  {
    if (contactPointKey(id) == key)
    {
      return id;
    }
  }
  throw ParameterError("unknown contact point '" + std::string(key) + "'");
}

Aabb fitAabb(const PointCloud& cloud, const Cluster& cluster)
{
  if (cluster.indices.empty())
  {
    throw ContractViolation("fitAabb: empty cluster");
  }
  Aabb box;
  bool first = true;
  for (std::size_t i : cluster.indices)
  {
    if (i >= cloud.size())
    {
      throw ContractViolation("fitAabb: cluster index " + std::to_string(i) + " out of range");
    }
    const Vec3& p = cloud.points[i];
    if (first)
    {
      box.min = p;
      box.max = p;
      first = false;
    }
    else
    {
      box.min = box.min.cwiseMin(p);
      box.max = box.max.cwiseMax(p);
    }
  }
  return box;
}

ContactPoints contactPoints(const Aabb& box)
{
  const Vec3 mid = box.center();
  ContactPoints points;
  points[0] = Vec3(box.min.x(), mid.y(), box.max.z());
  points[1] = Vec3(box.min.x(), mid.y(), mid.z());
  points[2] = Vec3(mid.x(), box.min.y(), mid.z());
  points[3] = Vec3(mid.x(), box.max.y(), mid.z());
  points[4] = Vec3(box.max.x(), box.max.y(), mid.z());
  return points;
}

ObstacleDescriptor describeBox(const Aabb& box, const Vec3& centroid, std::size_t point_count)
{
  ObstacleDescriptor d;
  d.box = box;
  d.centroid = centroid;
  d.point_count = point_count;
  d.contact_points = contactPoints(box);
  const Vec3 ext = box.extents();
  d.depth = ext.x();
  d.width = ext.y();
  d.height = ext.z();
  return d;
}

ObstacleDescriptor describeObstacle(const PointCloud& cloud, const Cluster& cluster)
{
  const Aabb box = fitAabb(cloud, cluster);
  Vec3 sum = Vec3::Zero();
  for (std::size_t i : cluster.indices)
  {
    sum += cloud.points[i];
  }
  return describeBox(box, sum / static_cast<double>(cluster.indices.size()), cluster.indices.size());
}

}  // namespace legipulation

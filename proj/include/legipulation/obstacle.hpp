#pragma once

#include <array>
#include <string_view>

#include "legipulation/cloud.hpp"
#include "legipulation/cluster.hpp"

namespace legipulation {

struct Aabb
{
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  Vec3 extents() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
  bool contains(const Vec3& p) const
  {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

// Key contact points on the bounding box, numbered as on the robot's
// manipulation sheet. "Front" faces the robot (min x), "left" is max y.
enum class ContactPointId
{
  FrontTopCentre = 1,
  FrontCentre = 2,
  RightCentre = 3,
  LeftCentre = 4,
  LeftBackCentre = 5,
};

inline constexpr std::array<ContactPointId, 5> kAllContactPoints = {
    ContactPointId::FrontTopCentre, ContactPointId::FrontCentre, ContactPointId::RightCentre,
    ContactPointId::LeftCentre, ContactPointId::LeftBackCentre};

// "point1" .. "point5"
std::string_view contactPointKey(ContactPointId id);
ContactPointId contactPointFromKey(std::string_view key);

using ContactPoints = std::array<Vec3, 5>;

inline const Vec3& at(const ContactPoints& points, ContactPointId id)
{
  return points[static_cast<std::size_t>(id) - 1];
}

struct ObstacleDescriptor
{
  Aabb box;
  Vec3 centroid = Vec3::Zero();
  std::size_t point_count = 0;
  ContactPoints contact_points{};
  // Extents along y, z and x respectively.
  double width = 0.0;
  double height = 0.0;
  double depth = 0.0;

  const Vec3& contact(ContactPointId id) const { return at(contact_points, id); }
};

Aabb fitAabb(const PointCloud& cloud, const Cluster& cluster);

/// Point1 (x_min, y_mid, z_max), Point2 (x_min, y_mid, z_mid),
/// Point3 (x_mid, y_min, z_mid), Point4 (x_mid, y_max, z_mid),
/// Point5 (x_max, y_max, z_mid).
ContactPoints contactPoints(const Aabb& box);

ObstacleDescriptor describeObstacle(const PointCloud& cloud, const Cluster& cluster);

// Rebuilds extents and contact points after the box has been edited.
ObstacleDescriptor describeBox(const Aabb& box, const Vec3& centroid, std::size_t point_count);

}  // namespace legipulation

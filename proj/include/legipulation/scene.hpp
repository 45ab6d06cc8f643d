#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "legipulation/cloud.hpp"
#include "legipulation/obstacle.hpp"

namespace legipulation {

enum class Shape
{
  Box,
  Cylinder
};

struct SceneObject
{
  std::string name;
  Shape shape = Shape::Box;
  // Box: length (x), width (y), height (z). Cylinder: diameter, diameter, height.
  Vec3 dimensions = Vec3(0.1, 0.1, 0.1);
  // Footprint centre on the ground, body frame (z ignored; objects rest on the ground).
  Vec3 position = Vec3::Zero();
  double mass = 0.1;
  double friction = 0.6;

  // Occupied volume's bounding box at the current position.
  Aabb bounds(double ground_height) const;
};

struct SceneSpec
{
  double ground_height = 0.0;
  double ground_noise = 0.0;
  // Ground patch sampled around the robot front, body frame.
  double ground_x_min = 0.1;
  double ground_x_max = 0.8;
  double ground_y_min = -0.5;
  double ground_y_max = 0.5;
  std::vector<SceneObject> objects;
  double sensor_noise = 0.002;
  // Surface samples per square metre before noise.
  double density = 15000.0;
  // Faces whose outward normal points away from this position are not sampled.
  Vec3 sensor_position = Vec3(0.15, 0.0, 0.35);
};

void validate(const SceneSpec& spec);

/// Surface samples of the ground patch (minus object footprints) and of the
/// sensor-facing object surfaces, with Gaussian noise. Deterministic per seed.
PointCloud synthesizeCloud(const SceneSpec& spec, std::uint64_t seed);

enum class Surface
{
  Marble,
  Concrete,
  Carpet
};

Surface surfaceFromName(const std::string& name);
std::string surfaceName(Surface surface);

// Object-to-ground friction coefficients; only the ordering is empirical.
double frictionCoefficient(Surface surface);

/// The three bench-top scenarios: 1 = light cylinder, 2 = light box,
/// 3 = heavy box, each centred at (0.360, -0.030).
SceneObject tableObject(int number, Surface surface = Surface::Carpet);
SceneSpec tableScene(int number, Surface surface = Surface::Carpet);

}  // namespace legipulation

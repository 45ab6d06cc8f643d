#include "legipulation/scene.hpp"

#include <cmath>
#include <random>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

constexpr double kMm = 1e-3;

struct Sampler
{
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(rng); }
  Vec3 noise(double sigma)
  {
    if (sigma <= 0.0)
    {
      return Vec3::Zero();
    }
    const double x = gauss(rng);
    const double y = gauss(rng);
    const double z = gauss(rng);
    return sigma * Vec3(x, y, z);
  }
};

std::size_t sampleCount(double density, double area)
{
  return static_cast<std::size_t>(std::llround(density * area));
}

bool insideFootprint(const SceneObject& obj, double x, double y)
{
  const double dx = x - obj.position.x();
  const double dy = y - obj.position.y();
  if (obj.shape == Shape::Box)
  {
    return std::abs(dx) <= 0.5 * obj.dimensions.x() && std::abs(dy) <= 0.5 * obj.dimensions.y();
  }
  const double r = 0.5 * obj.dimensions.x();
  return dx * dx + dy * dy <= r * r;
}

void sampleBox(const SceneObject& obj, const SceneSpec& spec, Sampler& s, PointCloud& cloud)
{
  const Vec3 half = 0.5 * obj.dimensions;
  const Vec3 center(obj.position.x(), obj.position.y(), spec.ground_height + half.z());

  struct Face
  {
    Vec3 normal;
    int u_axis;
    int v_axis;
  };
  // Bottom face rests on the ground and is never seen.
  const Face faces[] = {
      {Vec3::UnitX(), 1, 2}, {-Vec3::UnitX(), 1, 2}, {Vec3::UnitY(), 0, 2},
      {-Vec3::UnitY(), 0, 2}, {Vec3::UnitZ(), 0, 1},
  };
  for (const Face& f : faces)
  {
    const Vec3 face_center = center + f.normal.cwiseProduct(half);
    if (f.normal.dot(spec.sensor_position - face_center) <= 0.0)
    {
      continue;
    }
    const double area = obj.dimensions[f.u_axis] * obj.dimensions[f.v_axis];
    const std::size_t n = sampleCount(spec.density, area);
    for (std::size_t i = 0; i < n; ++i)
    {
      Vec3 p = face_center;
      p[f.u_axis] += s.uniform(-half[f.u_axis], half[f.u_axis]);
      p[f.v_axis] += s.uniform(-half[f.v_axis], half[f.v_axis]);
      cloud.points.push_back(p + s.noise(spec.sensor_noise));
    }
  }
}

void sampleCylinder(const SceneObject& obj, const SceneSpec& spec, Sampler& s, PointCloud& cloud)
{
  const double r = 0.5 * obj.dimensions.x();
  const double h = obj.dimensions.z();
  const Vec3 base(obj.position.x(), obj.position.y(), spec.ground_height);

  const std::size_t n_side = sampleCount(spec.density, 2.0 * M_PI * r * h);
  for (std::size_t i = 0; i < n_side; ++i)
  {
    const double theta = s.uniform(0.0, 2.0 * M_PI);
    const double z = s.uniform(0.0, h);
    const Vec3 normal(std::cos(theta), std::sin(theta), 0.0);
    const Vec3 p = base + r * normal + Vec3(0.0, 0.0, z);
    const Vec3 n = s.noise(spec.sensor_noise);
    if (normal.dot(spec.sensor_position - p) > 0.0)
    {
      cloud.points.push_back(p + n);
    }
  }

  const Vec3 top_center = base + Vec3(0.0, 0.0, h);
  if (spec.sensor_position.z() > top_center.z())
  {
    const std::size_t n_top = sampleCount(spec.density, M_PI * r * r);
    for (std::size_t i = 0; i < n_top; ++i)
    {
      const double rho = r * std::sqrt(s.unit(s.rng));
      const double theta = s.uniform(0.0, 2.0 * M_PI);
      const Vec3 p = top_center + Vec3(rho * std::cos(theta), rho * std::sin(theta), 0.0);
      cloud.points.push_back(p + s.noise(spec.sensor_noise));
    }
  }
}

}  // namespace

Aabb SceneObject::bounds(double ground_height) const
{
  const Vec3 half(0.5 * dimensions.x(), 0.5 * dimensions.y(), 0.0);
  Aabb box;
  box.min = Vec3(position.x(), position.y(), ground_height) - half;
  box.max = Vec3(position.x(), position.y(), ground_height + dimensions.z()) + half;
  return box;
}

void validate(const SceneSpec& spec)
{
  if (!(spec.ground_x_min < spec.ground_x_max) || !(spec.ground_y_min < spec.ground_y_max))
  {
    throw ParameterError("SceneSpec: empty ground patch");
  }
  if (!(spec.density > 0.0) || spec.sensor_noise < 0.0 || spec.ground_noise < 0.0)
  {
    throw ParameterError("SceneSpec: density must be positive and noise non-negative");
  }
  for (const SceneObject& o : spec.objects)
  {
    if ((o.dimensions.array() <= 0.0).any())
    {
      throw ParameterError("SceneSpec: object '" + o.name + "' has a non-positive dimension");
    }
    if (!(o.mass > 0.0) || o.friction < 0.0)
    {
      throw ParameterError("SceneSpec: object '" + o.name + "' needs mass > 0 and friction >= 0");
    }
  }
}

PointCloud synthesizeCloud(const SceneSpec& spec, std::uint64_t seed)
{
  validate(spec);
  Sampler s{std::mt19937_64(seed)};
  PointCloud cloud;

  const double area = (spec.ground_x_max - spec.ground_x_min) * (spec.ground_y_max - spec.ground_y_min);
  const std::size_t n_ground = sampleCount(spec.density, area);
  for (std::size_t i = 0; i < n_ground; ++i)
  {
    const double x = s.uniform(spec.ground_x_min, spec.ground_x_max);
    const double y = s.uniform(spec.ground_y_min, spec.ground_y_max);
    const double dz = spec.ground_noise > 0.0 ? spec.ground_noise * s.gauss(s.rng) : 0.0;
    const Vec3 n = s.noise(spec.sensor_noise);
    bool covered = false;
    for (const SceneObject& o : spec.objects)
    {
      covered = covered || insideFootprint(o, x, y);
    }
    if (!covered)
    {
      cloud.points.push_back(Vec3(x, y, spec.ground_height + dz) + n);
    }
  }

  for (const SceneObject& o : spec.objects)
  {
    if (o.shape == Shape::Box)
    {
      sampleBox(o, spec, s, cloud);
    }
    else
    {
      sampleCylinder(o, spec, s, cloud);
    }
  }
  return cloud;
}

Surface surfaceFromName(const std::string& name)
{
  if (name == "marble")
  {
    return Surface::Marble;
  }
  if (name == "concrete")
  {
    return Surface::Concrete;
  }
  if (name == "carpet")
  {
    return Surface::Carpet;
  }
  throw ParameterError("unknown surface '" + name + "' (marble, concrete, carpet)");
}

std::string surfaceName(Surface surface)
{
  switch (surface)
  {
    case Surface::Marble:
      return "marble";
    case Surface::Concrete:
      return "concrete";
    case Surface::Carpet:
      return "carpet";
  }
  return "carpet";
}

double frictionCoefficient(Surface surface)
{
  switch (surface)
  {
    case Surface::Marble:
      return 0.4;
    case Surface::Concrete:
      return 0.6;
    case Surface::Carpet:
      return 1.0;
  }
  return 1.0;
}

SceneObject tableObject(int number, Surface surface)
{
  SceneObject o;
  o.position = Vec3(360.0 * kMm, -30.0 * kMm, 0.0);
  o.friction = frictionCoefficient(surface);
  switch (number)
  {
    case 1:
      o.name = "object1";
      o.shape = Shape::Cylinder;
      o.dimensions = Vec3(66.2, 66.2, 115.2) * kMm;
      o.mass = 0.013;
      break;
    case 2:
      o.name = "object2";
      o.shape = Shape::Box;
      o.dimensions = Vec3(300.0, 224.0, 115.0) * kMm;
      o.mass = 0.39;
      break;
    case 3:
      o.name = "object3";
      o.shape = Shape::Box;
      o.dimensions = Vec3(300.0, 224.0, 115.0) * kMm;
      o.mass = 1.45;
      break;
    default:
      throw ParameterError("table object number must be 1, 2 or 3");
  }
  return o;
}

SceneSpec tableScene(int number, Surface surface)
{
  SceneSpec spec;
  spec.objects.push_back(tableObject(number, surface));
  return spec;
}

}  // namespace legipulation

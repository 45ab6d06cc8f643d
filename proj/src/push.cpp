#include "legipulation/push.hpp"

#include <cmath>

#include "legipulation/error.hpp"

namespace legipulation {

PushSimulator::PushSimulator(SceneObject object, double ground_height, PushModel model)
  : object_(std::move(object)), ground_height_(ground_height), model_(model)
{
  if (model_.force_capacity < 0.0 || model_.tip_radius < 0.0)
  {
    throw ParameterError("PushModel: capacity and tip radius must be non-negative");
  }
}

double PushSimulator::requiredForce() const
{
  return object_.friction * object_.mass * model_.gravity;
}

bool PushSimulator::inContact(const Vec3& tip) const
{
  const double r = model_.tip_radius;
  if (tip.z() < ground_height_ - r || tip.z() > ground_height_ + object_.dimensions.z() + r)
  {
    return false;
  }
  const double dx = tip.x() - object_.position.x();
  const double dy = tip.y() - object_.position.y();
  if (object_.shape == Shape::Box)
  {
    return std::abs(dx) <= 0.5 * object_.dimensions.x() + r && std::abs(dy) <= 0.5 * object_.dimensions.y() + r;
  }
  const double reach = 0.5 * object_.dimensions.x() + r;
  return dx * dx + dy * dy <= reach * reach;
}

PushStep PushSimulator::step(const Vec3& previous_tip, const Vec3& tip)
{
  PushStep out;
  out.required_force = requiredForce();
  out.contact = inContact(tip);
  if (!out.contact)
  {
    return out;
  }

  const Vec3 motion(tip.x() - previous_tip.x(), tip.y() - previous_tip.y(), 0.0);
  const Vec3 inward(object_.position.x() - tip.x(), object_.position.y() - tip.y(), 0.0);
  const double length = motion.norm();
  if (length < 1e-12 || motion.dot(inward) <= 0.0)
  {
    return out;
  }

  const Vec3 direction = motion / length;
  if (out.required_force <= model_.force_capacity)
  {
    object_.position += motion;
    out.moved = true;
    out.tip_force = out.required_force * direction;
  }
  else
  {
    out.tip_force = model_.force_capacity * direction;
  }
  return out;
}

std::vector<Vec3> pushObject(const SceneObject& object, double ground_height, const std::vector<Vec3>& tip_path,
                             const PushModel& model)
{
  PushSimulator sim(object, ground_height, model);
  std::vector<Vec3> history;
  history.reserve(tip_path.size());
  for (std::size_t i = 0; i < tip_path.size(); ++i)
  {
    if (i > 0)
    {
      sim.step(tip_path[i - 1], tip_path[i]);
    }
    history.push_back(sim.object().position);
  }
  return history;
}

bool obstructsPath(const SceneObject& object, const PathCorridor& corridor)
{
  const Aabb box = object.bounds(0.0);
  const double half = 0.5 * corridor.width;
  const bool x_overlap = box.max.x() >= corridor.x_min && box.min.x() <= corridor.x_min + corridor.depth;
  if (!x_overlap)
  {
    return false;
  }
  if (object.shape == Shape::Cylinder)
  {
    const double r = 0.5 * object.dimensions.x();
    return object.position.y() - r <= half && object.position.y() + r >= -half;
  }
  return box.min.y() <= half && box.max.y() >= -half;
}

double tippingMoment(const Vec3& tip_force, const Vec3& tip_position)
{
  const double force = std::hypot(tip_force.x(), tip_force.y());
  return force * std::hypot(tip_position.x(), tip_position.y());
}

}  // namespace legipulation

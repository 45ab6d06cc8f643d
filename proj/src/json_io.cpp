#include "legipulation/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "legipulation/error.hpp"

namespace legipulation {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered vec(const Vec3& v)
{
  return ordered::array({v.x(), v.y(), v.z()});
}

ordered quat(const UnitQuaternion& q)
{
  return ordered::array({q.w(), q.x(), q.y(), q.z()});
}

ordered pose(const Pose& p)
{
  ordered out;
  out["position"] = vec(p.position);
  out["orientation"] = quat(p.orientation);
  return out;
}

json parse(const std::string& text, const std::string& what)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::parse_error& e)
  {
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    const auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
    throw ParseError(what + ": invalid JSON: " + e.what(), line + 1);
  }
}

// Object reader that remembers which keys were consumed so leftovers can be
// reported as unknown.
class Section
{
public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      fail("expected an object");
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParameterError(path_ + ": " + message); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json* raw(const std::string& key)
  {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key)
  {
    const json* v = raw(key);
    if (v == nullptr)
    {
      fail("missing key '" + key + "'");
    }
    return *v;
  }

  double number(const json& v, const std::string& key) const
  {
    if (!v.is_number())
    {
      fail("'" + key + "' must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d))
    {
      fail("'" + key + "' must be finite");
    }
    return d;
  }

  void num(const std::string& key, double& out)
  {
    if (const json* v = raw(key))
    {
      out = number(*v, key);
    }
  }

  double num(const std::string& key) { return number(require(key), key); }

  void integer(const std::string& key, int& out)
  {
    if (const json* v = raw(key))
    {
      if (!v->is_number_integer())
      {
        fail("'" + key + "' must be an integer");
      }
      out = v->get<int>();
    }
  }

  void count(const std::string& key, std::size_t& out)
  {
    if (const json* v = raw(key))
    {
      if (!v->is_number_integer() || v->get<long long>() < 0)
      {
        fail("'" + key + "' must be a non-negative integer");
      }
      out = v->get<std::size_t>();
    }
  }

  void seed(const std::string& key, std::uint64_t& out)
  {
    if (const json* v = raw(key))
    {
      if (!v->is_number_unsigned())
      {
        fail("'" + key + "' must be a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void flag(const std::string& key, bool& out)
  {
    if (const json* v = raw(key))
    {
      if (!v->is_boolean())
      {
        fail("'" + key + "' must be true or false");
      }
      out = v->get<bool>();
    }
  }

  void text(const std::string& key, std::string& out)
  {
    if (const json* v = raw(key))
    {
      if (!v->is_string())
      {
        fail("'" + key + "' must be a string");
      }
      out = v->get<std::string>();
    }
  }

  std::vector<double> numbers(const json& v, const std::string& key, std::size_t n) const
  {
    if (!v.is_array() || v.size() != n)
    {
      fail("'" + key + "' must be an array of " + std::to_string(n) + " numbers");
    }
    std::vector<double> out;
    for (const json& e : v)
    {
      out.push_back(number(e, key));
    }
    return out;
  }

  Vec3 vec3(const json& v, const std::string& key) const
  {
    const auto n = numbers(v, key, 3);
    return Vec3(n[0], n[1], n[2]);
  }

  void vec3(const std::string& key, Vec3& out)
  {
    if (const json* v = raw(key))
    {
      out = vec3(*v, key);
    }
  }

  Vec3 vec3(const std::string& key) { return vec3(require(key), key); }

  UnitQuaternion quaternion(const json& v, const std::string& key) const
  {
    const auto n = numbers(v, key, 4);
    UnitQuaternion q(n[0], n[1], n[2], n[3]);
    if (std::abs(q.norm() - 1.0) > 1e-6)
    {
      fail("'" + key + "' must be a unit quaternion [w, x, y, z]");
    }
    q.normalize();
    return q;
  }

  Section child(const std::string& key) { return Section(require(key), path_ + "." + key); }

  std::string path() const { return path_; }

  void finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it)
    {
      if (seen_.count(it.key()) == 0)
      {
        fail("unknown key '" + it.key() + "'");
      }
    }
  }

private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Pose readPose(Section s, Pose out)
{
  s.vec3("position", out.position);
  if (const json* q = s.raw("orientation"))
  {
    out.orientation = s.quaternion(*q, "orientation");
  }
  s.finish();
  return out;
}

KinematicChain readChain(Section s)
{
  KinematicChain chain;
  s.text("leg_id", chain.leg_id);
  if (chain.leg_id.empty())
  {
    s.fail("'leg_id' must be a non-empty string");
  }
  chain.base = readPose(s.child("base"), Pose{});
  const json& joints = s.require("joints");
  if (!joints.is_array())
  {
    s.fail("'joints' must be an array");
  }
  for (std::size_t i = 0; i < joints.size(); ++i)
  {
    Section js(joints[i], s.path() + ".joints[" + std::to_string(i) + "]");
    Joint joint;
    js.text("name", joint.name);
    joint.axis = js.vec3("axis");
    js.vec3("origin", joint.origin);
    joint.min = js.num("min");
    joint.max = js.num("max");
    js.finish();
    if (std::abs(joint.axis.norm() - 1.0) > 1e-6)
    {
      js.fail("'axis' must be a unit vector");
    }
    chain.joints.push_back(joint);
  }
  s.vec3("tip_offset", chain.tip_offset);
  s.finish();
  try
  {
    validate(chain);
  }
  catch (const ParameterError& e)
  {
    s.fail(e.what());
  }
  return chain;
}

ordered chainJson(const KinematicChain& chain)
{
  ordered out;
  out["leg_id"] = chain.leg_id;
  out["base"] = pose(chain.base);
  ordered joints = ordered::array();
  for (const Joint& j : chain.joints)
  {
    ordered jo;
    jo["name"] = j.name;
    jo["axis"] = vec(j.axis);
    jo["origin"] = vec(j.origin);
    jo["min"] = j.min;
    jo["max"] = j.max;
    joints.push_back(jo);
  }
  out["joints"] = joints;
  out["tip_offset"] = vec(chain.tip_offset);
  return out;
}

Shape shapeFromName(const std::string& name, const Section& s)
{
  if (name == "box")
  {
    return Shape::Box;
  }
  if (name == "cylinder")
  {
    return Shape::Cylinder;
  }
  s.fail("shape must be \"box\" or \"cylinder\"");
}

SceneSpec readScene(Section s)
{
  SceneSpec scene;
  if (const json* preset = s.raw("preset"))
  {
    Section p(*preset, s.path() + ".preset");
    int number = 2;
    std::string surface = "carpet";
    p.integer("object", number);
    p.text("surface", surface);
    p.finish();
    try
    {
      scene = tableScene(number, surfaceFromName(surface));
    }
    catch (const ParameterError& e)
    {
      p.fail(e.what());
    }
  }

  std::string units = "m";
  s.text("units", units);
  double scale = 1.0;
  if (units == "mm")
  {
    scale = 1e-3;
  }
  else if (units != "m")
  {
    s.fail("units must be \"m\" or \"mm\"");
  }
  auto length = [&](const std::string& key, double& out) {
    if (s.has(key))
    {
      out = scale * s.num(key);
    }
    else
    {
      s.raw(key);
    }
  };
  length("ground_height", scene.ground_height);
  length("ground_noise", scene.ground_noise);
  length("sensor_noise", scene.sensor_noise);
  s.num("density", scene.density);
  if (s.has("sensor_position"))
  {
    scene.sensor_position = scale * s.vec3("sensor_position");
  }
  if (const json* patch = s.raw("ground_patch"))
  {
    Section g(*patch, s.path() + ".ground_patch");
    if (const json* x = g.raw("x"))
    {
      const auto r = g.numbers(*x, "x", 2);
      scene.ground_x_min = scale * r[0];
      scene.ground_x_max = scale * r[1];
    }
    if (const json* y = g.raw("y"))
    {
      const auto r = g.numbers(*y, "y", 2);
      scene.ground_y_min = scale * r[0];
      scene.ground_y_max = scale * r[1];
    }
    g.finish();
  }
  if (const json* objects = s.raw("objects"))
  {
    if (!objects->is_array())
    {
      s.fail("'objects' must be an array");
    }
    scene.objects.clear();
    for (std::size_t i = 0; i < objects->size(); ++i)
    {
      Section o((*objects)[i], s.path() + ".objects[" + std::to_string(i) + "]");
      SceneObject obj;
      o.text("name", obj.name);
      std::string shape = "box";
      o.text("shape", shape);
      obj.shape = shapeFromName(shape, o);
      const json& dims = o.require("dimensions");
      if (obj.shape == Shape::Cylinder && dims.is_array() && dims.size() == 2)
      {
        const auto d = o.numbers(dims, "dimensions", 2);
        obj.dimensions = scale * Vec3(d[0], d[0], d[1]);
      }
      else
      {
        obj.dimensions = scale * o.vec3(dims, "dimensions");
      }
      const json& pos = o.require("position");
      if (pos.is_array() && pos.size() == 2)
      {
        const auto p = o.numbers(pos, "position", 2);
        obj.position = scale * Vec3(p[0], p[1], 0.0);
      }
      else
      {
        obj.position = scale * o.vec3(pos, "position");
      }
      obj.mass = o.num("mass");
      if (o.has("surface") && o.has("friction"))
      {
        o.fail("give either 'friction' or 'surface', not both");
      }
      if (const json* surf = o.raw("surface"))
      {
        if (!surf->is_string())
        {
          o.fail("'surface' must be a string");
        }
        try
        {
          obj.friction = frictionCoefficient(surfaceFromName(surf->get<std::string>()));
        }
        catch (const ParameterError& e)
        {
          o.fail(e.what());
        }
      }
      o.num("friction", obj.friction);
      o.finish();
      scene.objects.push_back(obj);
    }
  }
  s.finish();
  try
  {
    validate(scene);
  }
  catch (const ParameterError& e)
  {
    s.fail(e.what());
  }
  return scene;
}

ordered sceneJson(const SceneSpec& scene)
{
  ordered out;
  out["units"] = "m";
  out["ground_height"] = scene.ground_height;
  out["ground_noise"] = scene.ground_noise;
  ordered patch;
  patch["x"] = ordered::array({scene.ground_x_min, scene.ground_x_max});
  patch["y"] = ordered::array({scene.ground_y_min, scene.ground_y_max});
  out["ground_patch"] = patch;
  out["sensor_noise"] = scene.sensor_noise;
  out["density"] = scene.density;
  out["sensor_position"] = vec(scene.sensor_position);
  ordered objects = ordered::array();
  for (const SceneObject& o : scene.objects)
  {
    ordered jo;
    jo["name"] = o.name;
    jo["shape"] = o.shape == Shape::Box ? "box" : "cylinder";
    jo["dimensions"] = vec(o.dimensions);
    jo["position"] = vec(o.position);
    jo["mass"] = o.mass;
    jo["friction"] = o.friction;
    objects.push_back(jo);
  }
  out["objects"] = objects;
  return out;
}

Axis axisFromName(const std::string& name, const Section& s)
{
  if (name == "x")
  {
    return Axis::X;
  }
  if (name == "y")
  {
    return Axis::Y;
  }
  if (name == "z")
  {
    return Axis::Z;
  }
  s.fail("workspace axis must be x, y or z");
}

const char* axisName(Axis axis)
{
  switch (axis)
  {
    case Axis::X:
      return "x";
    case Axis::Y:
      return "y";
    case Axis::Z:
      return "z";
  }
  return "x";
}

void readPerception(Section s, PerceptionConfig& p)
{
  s.num("voxel_leaf", p.voxel_leaf);
  if (const json* ws = s.raw("workspace"))
  {
    Section w(*ws, s.path() + ".workspace");
    p.workspace.clear();
    for (const char* name : {"x", "y", "z"})
    {
      if (const json* r = w.raw(name))
      {
        const auto v = w.numbers(*r, name, 2);
        p.workspace.push_back({axisFromName(name, w), v[0], v[1]});
      }
    }
    w.finish();
  }
  s.num("ransac_threshold", p.ransac_threshold);
  s.integer("ransac_iters", p.ransac_iters);
  s.seed("ransac_seed", p.ransac_seed);
  s.num("cluster_tolerance", p.clusters.tolerance);
  s.count("cluster_min_size", p.clusters.min_size);
  s.count("cluster_max_size", p.clusters.max_size);
  s.count("octree_leaf_capacity", p.octree.leaf_capacity);
  s.integer("octree_max_depth", p.octree.max_depth);
  s.vec3("search_start", p.search.start);
  s.num("search_radius", p.search.radius);
  s.num("search_step", p.search.step);
  s.integer("search_max_expansions", p.search.max_expansions);
  s.flag("extend_to_ground", p.extend_to_ground);
  if (const json* e = s.raw("extrinsic"))
  {
    p.extrinsic = readPose(Section(*e, s.path() + ".extrinsic"), Pose{});
  }
  s.finish();
}

ordered perceptionJson(const PerceptionConfig& p)
{
  ordered out;
  out["voxel_leaf"] = p.voxel_leaf;
  ordered ws;
  for (const AxisRange& r : p.workspace)
  {
    ws[axisName(r.axis)] = ordered::array({r.min, r.max});
  }
  out["workspace"] = ws;
  out["ransac_threshold"] = p.ransac_threshold;
  out["ransac_iters"] = p.ransac_iters;
  out["ransac_seed"] = p.ransac_seed;
  out["cluster_tolerance"] = p.clusters.tolerance;
  out["cluster_min_size"] = p.clusters.min_size;
  out["cluster_max_size"] = p.clusters.max_size;
  out["octree_leaf_capacity"] = p.octree.leaf_capacity;
  out["octree_max_depth"] = p.octree.max_depth;
  out["search_start"] = vec(p.search.start);
  out["search_radius"] = p.search.radius;
  out["search_step"] = p.search.step;
  out["search_max_expansions"] = p.search.max_expansions;
  out["extend_to_ground"] = p.extend_to_ground;
  if (p.extrinsic)
  {
    out["extrinsic"] = pose(*p.extrinsic);
  }
  return out;
}

void readIk(Section s, IkParams& ik)
{
  s.num("damping", ik.damping);
  s.integer("max_iters", ik.max_iters);
  s.num("tol", ik.tol);
  s.flag("track_orientation", ik.track_orientation);
  s.num("orientation_tol", ik.orientation_tol);
  s.num("max_step", ik.max_step);
  s.integer("restarts", ik.restarts);
  s.finish();
}

ordered ikJson(const IkParams& ik)
{
  ordered out;
  out["damping"] = ik.damping;
  out["max_iters"] = ik.max_iters;
  out["tol"] = ik.tol;
  out["track_orientation"] = ik.track_orientation;
  out["orientation_tol"] = ik.orientation_tol;
  out["max_step"] = ik.max_step;
  out["restarts"] = ik.restarts;
  return out;
}

void readLeg(Section s, LegConfig& leg)
{
  if (const json* c = s.raw("chain"))
  {
    leg.chain = readChain(Section(*c, s.path() + ".chain"));
  }
  s.text("mirror_leg_id", leg.mirror_leg_id);
  if (const json* p = s.raw("stance"))
  {
    leg.stance = readPose(Section(*p, s.path() + ".stance"), leg.stance);
  }
  if (const json* p = s.raw("safe"))
  {
    leg.safe = readPose(Section(*p, s.path() + ".safe"), leg.safe);
  }
  if (const json* ik = s.raw("ik"))
  {
    readIk(Section(*ik, s.path() + ".ik"), leg.ik);
  }
  s.finish();
}

void readPush(Section s, PushParams& p)
{
  s.num("lift_height", p.lift_height);
  s.vec3("approach_offset", p.approach_offset);
  s.vec3("sweep_vector", p.sweep_vector);
  s.flag("auto_sweep_sign", p.auto_sweep_sign);
  s.num("reach_duration", p.reach_duration);
  s.num("push_duration", p.push_duration);
  s.num("approach_parameter", p.approach_parameter);
  s.num("contact_parameter", p.contact_parameter);
  s.finish();
}

ordered pushJson(const PushParams& p)
{
  ordered out;
  out["lift_height"] = p.lift_height;
  out["approach_offset"] = vec(p.approach_offset);
  out["sweep_vector"] = vec(p.sweep_vector);
  out["auto_sweep_sign"] = p.auto_sweep_sign;
  out["reach_duration"] = p.reach_duration;
  out["push_duration"] = p.push_duration;
  out["approach_parameter"] = p.approach_parameter;
  out["contact_parameter"] = p.contact_parameter;
  return out;
}

}  // namespace

std::string descriptorToJson(const ObstacleDescriptor& d)
{
  ordered out;
  ordered box;
  box["min"] = vec(d.box.min);
  box["max"] = vec(d.box.max);
  out["box"] = box;
  out["centroid"] = vec(d.centroid);
  out["extents"] = vec(d.box.extents());
  ordered points;
  for (ContactPointId id : kAllContactPoints)
  {
    points[std::string(contactPointKey(id))] = vec(d.contact(id));
  }
  out["contact_points"] = points;
  out["point_count"] = d.point_count;
  return out.dump(2) + "\n";
}

ObstacleDescriptor descriptorFromJson(const std::string& text)
{
  const json j = parse(text, "descriptor");
  Section s(j, "descriptor");
  Section b = s.child("box");
  Aabb box;
  box.min = b.vec3("min");
  box.max = b.vec3("max");
  b.finish();
  if ((box.min.array() > box.max.array()).any())
  {
    s.fail("box.min must not exceed box.max");
  }
  const Vec3 centroid = s.vec3("centroid");
  std::size_t count = 0;
  if (!s.has("point_count"))
  {
    s.fail("missing key 'point_count'");
  }
  s.count("point_count", count);
  if (count < 1)
  {
    s.fail("'point_count' must be at least 1");
  }
  ObstacleDescriptor d = describeBox(box, centroid, count);

  // Derived fields are optional but must agree with the box when present.
  if (const json* e = s.raw("extents"))
  {
    if ((s.vec3(*e, "extents") - box.extents()).cwiseAbs().maxCoeff() > 1e-9)
    {
      s.fail("'extents' disagree with the box");
    }
  }
  if (const json* cp = s.raw("contact_points"))
  {
    Section c(*cp, "descriptor.contact_points");
    for (ContactPointId id : kAllContactPoints)
    {
      const std::string key(contactPointKey(id));
      if (const json* p = c.raw(key))
      {
        if ((c.vec3(*p, key) - d.contact(id)).cwiseAbs().maxCoeff() > 1e-9)
        {
          c.fail("'" + key + "' is not on the box at its documented location");
        }
      }
    }
    c.finish();
  }
  s.finish();
  return d;
}

std::string trajectoryToJson(const TrajectorySequence& seq)
{
  ordered out;
  out["leg_id"] = seq.leg_id;
  ordered segments = ordered::array();
  for (std::size_t k = 0; k < seq.segments.size(); ++k)
  {
    const BezierSegment& s = seq.segments[k];
    ordered js;
    js["order"] = s.order;
    ordered cps = ordered::array();
    for (const Vec3& p : s.control_points)
    {
      cps.push_back(vec(p));
    }
    js["control_points"] = cps;
    js["duration_s"] = s.duration;
    js["quat_start"] = quat(seq.orientation_keys[k].start);
    js["quat_end"] = quat(seq.orientation_keys[k].end);
    segments.push_back(js);
  }
  out["segments"] = segments;
  out["total_duration_s"] = seq.totalDuration();
  return out.dump(2) + "\n";
}

TrajectorySequence trajectoryFromJson(const std::string& text)
{
  const json j = parse(text, "trajectory");
  Section s(j, "trajectory");
  TrajectorySequence seq;
  s.text("leg_id", seq.leg_id);
  const json& segments = s.require("segments");
  if (!segments.is_array() || segments.empty())
  {
    s.fail("'segments' must be a non-empty array");
  }
  for (std::size_t k = 0; k < segments.size(); ++k)
  {
    Section js(segments[k], "trajectory.segments[" + std::to_string(k) + "]");
    int order = 0;
    js.integer("order", order);
    const json& cps = js.require("control_points");
    if (!cps.is_array())
    {
      js.fail("'control_points' must be an array");
    }
    std::vector<Vec3> points;
    for (const json& p : cps)
    {
      points.push_back(js.vec3(p, "control_points"));
    }
    if (static_cast<int>(points.size()) != order + 1)
    {
      js.fail("'order' must equal the number of control points minus one");
    }
    const double duration = js.num("duration_s");
    OrientationKeys keys;
    keys.start = js.quaternion(js.require("quat_start"), "quat_start");
    keys.end = js.quaternion(js.require("quat_end"), "quat_end");
    js.finish();
    try
    {
      seq.segments.push_back(makeSegment(points, duration));
    }
    catch (const ParameterError& e)
    {
      js.fail(e.what());
    }
    seq.orientation_keys.push_back(keys);
  }
  if (const json* total = s.raw("total_duration_s"))
  {
    if (std::abs(s.number(*total, "total_duration_s") - seq.totalDuration()) > 1e-9)
    {
      s.fail("'total_duration_s' disagrees with the segment durations");
    }
  }
  s.finish();
  try
  {
    validate(seq);
  }
  catch (const Error& e)
  {
    s.fail(e.what());
  }
  return seq;
}

std::string chainToJson(const KinematicChain& chain)
{
  return chainJson(chain).dump(2) + "\n";
}

KinematicChain chainFromJson(const std::string& text)
{
  const json j = parse(text, "chain");
  return readChain(Section(j, "chain"));
}

std::string sceneToJson(const SceneSpec& scene)
{
  return sceneJson(scene).dump(2) + "\n";
}

SceneSpec sceneFromJson(const std::string& text)
{
  const json j = parse(text, "scene");
  return readScene(Section(j, "scene"));
}

RunConfig runConfigFromJson(const std::string& text)
{
  const json j = parse(text, "config");
  Section s(j, "config");
  RunConfig config;
  EpisodeConfig& e = config.episode;
  if (const json* v = s.raw("scene"))
  {
    config.scene = readScene(Section(*v, "config.scene"));
  }
  if (const json* v = s.raw("perception"))
  {
    readPerception(Section(*v, "config.perception"), e.perception);
  }
  if (const json* v = s.raw("leg"))
  {
    readLeg(Section(*v, "config.leg"), e.leg);
  }
  if (const json* v = s.raw("push"))
  {
    readPush(Section(*v, "config.push"), e.push);
  }
  if (const json* v = s.raw("return"))
  {
    Section r(*v, "config.return");
    r.num("lift_height", e.ret.lift_height);
    r.num("duration", e.ret.duration);
    r.finish();
  }
  if (const json* v = s.raw("episode"))
  {
    Section r(*v, "config.episode");
    if (const json* cp = r.raw("contact_point"))
    {
      if (!cp->is_string())
      {
        r.fail("'contact_point' must be one of \"point1\"..\"point5\"");
      }
      try
      {
        e.contact_point = contactPointFromKey(cp->get<std::string>());
      }
      catch (const ParameterError& err)
      {
        r.fail(err.what());
      }
    }
    r.num("dt", e.dt);
    r.num("effort_noise", e.effort_noise);
    r.num("tipping_margin", e.tipping_margin);
    r.finish();
    if (e.dt <= 0.0 || e.effort_noise < 0.0 || e.tipping_margin < 0.0)
    {
      r.fail("dt must be positive; effort_noise and tipping_margin non-negative");
    }
  }
  if (const json* v = s.raw("overload"))
  {
    Section r(*v, "config.overload");
    r.num("threshold", e.overload.threshold);
    r.num("hard_limit", e.overload.hard_limit);
    r.integer("consecutive_samples", e.overload.consecutive_samples);
    r.finish();
    try
    {
      validate(e.overload);
    }
    catch (const ParameterError& err)
    {
      r.fail(err.what());
    }
  }
  if (const json* v = s.raw("effort"))
  {
    Section r(*v, "config.effort");
    if (const json* g = r.raw("gains"))
    {
      if (!g->is_array())
      {
        r.fail("'gains' must be an array");
      }
      e.effort.gains = r.numbers(*g, "gains", g->size());
    }
    r.vec3("gravity_tip_force", e.effort.gravity_tip_force);
    r.flag("gravity_enabled", e.effort.gravity_enabled);
    r.finish();
  }
  if (const json* v = s.raw("push_model"))
  {
    Section r(*v, "config.push_model");
    r.num("force_capacity", e.push_model.force_capacity);
    r.num("tip_radius", e.push_model.tip_radius);
    r.num("gravity", e.push_model.gravity);
    r.finish();
  }
  if (const json* v = s.raw("corridor"))
  {
    Section r(*v, "config.corridor");
    r.num("x_min", e.corridor.x_min);
    r.num("depth", e.corridor.depth);
    r.num("width", e.corridor.width);
    r.finish();
    if (e.corridor.depth <= 0.0 || e.corridor.width <= 0.0)
    {
      r.fail("corridor depth and width must be positive");
    }
  }
  s.finish();
  if (e.effort.gains.size() != e.leg.chain.dof())
  {
    throw ParameterError("config.effort: need one gain per joint (" + std::to_string(e.leg.chain.dof()) + ")");
  }
  return config;
}

std::string runConfigToJson(const RunConfig& config)
{
  const EpisodeConfig& e = config.episode;
  ordered out;
  out["scene"] = sceneJson(config.scene);
  out["perception"] = perceptionJson(e.perception);
  ordered leg;
  leg["chain"] = chainJson(e.leg.chain);
  leg["mirror_leg_id"] = e.leg.mirror_leg_id;
  leg["stance"] = pose(e.leg.stance);
  leg["safe"] = pose(e.leg.safe);
  leg["ik"] = ikJson(e.leg.ik);
  out["leg"] = leg;
  out["push"] = pushJson(e.push);
  ordered ret;
  ret["lift_height"] = e.ret.lift_height;
  ret["duration"] = e.ret.duration;
  out["return"] = ret;
  ordered ep;
  ep["contact_point"] = std::string(contactPointKey(e.contact_point));
  ep["dt"] = e.dt;
  ep["effort_noise"] = e.effort_noise;
  ep["tipping_margin"] = e.tipping_margin;
  out["episode"] = ep;
  ordered ov;
  ov["threshold"] = e.overload.threshold;
  ov["hard_limit"] = e.overload.hard_limit;
  ov["consecutive_samples"] = e.overload.consecutive_samples;
  out["overload"] = ov;
  ordered ef;
  ef["gains"] = e.effort.gains;
  ef["gravity_tip_force"] = vec(e.effort.gravity_tip_force);
  ef["gravity_enabled"] = e.effort.gravity_enabled;
  out["effort"] = ef;
  ordered pm;
  pm["force_capacity"] = e.push_model.force_capacity;
  pm["tip_radius"] = e.push_model.tip_radius;
  pm["gravity"] = e.push_model.gravity;
  out["push_model"] = pm;
  ordered co;
  co["x_min"] = e.corridor.x_min;
  co["depth"] = e.corridor.depth;
  co["width"] = e.corridor.width;
  out["corridor"] = co;
  return out.dump(2) + "\n";
}

std::string outcomeToJson(const EpisodeLog& log)
{
  ordered out;
  out["outcome"] = outcomeName(log.outcome);
  out["clean"] = isCleanOutcome(log.outcome);
  out["leg_id"] = log.leg_id;
  out["contact_point"] = log.contact_point ? vec(*log.contact_point) : ordered(nullptr);
  if (log.overload)
  {
    ordered ev;
    ev["time_s"] = log.overload->time;
    ev["joint"] = log.overload->joint;
    ev["effort"] = log.overload->effort;
    ev["sequence_id"] = log.overload->sequence_id;
    out["overload"] = ev;
  }
  else
  {
    out["overload"] = nullptr;
  }
  out["object_start"] = vec(log.object_start);
  out["object_end"] = vec(log.object_end);
  out["max_tracking_error"] = log.max_tracking_error;
  out["max_abs_effort"] = log.max_abs_effort;
  out["max_tipping_moment"] = log.max_tipping_moment;
  out["samples"] = log.records.size();
  out["message"] = log.message;
  return out.dump(2) + "\n";
}

std::string readTextFile(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParameterError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ParameterError("cannot write " + path);
  }
  out << text;
}

}  // namespace legipulation

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "legipulation/episode.hpp"
#include "legipulation/error.hpp"
#include "legipulation/json_io.hpp"
#include "legipulation/pcd.hpp"

namespace py = pybind11;
using namespace legipulation;

namespace {

using Points = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using Quat = std::array<double, 4>;

PointCloud toCloud(const Points& points)
{
  PointCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i)
  {
    cloud.points.emplace_back(points(i, 0), points(i, 1), points(i, 2));
  }
  return cloud;
}

Points toArray(const PointCloud& cloud)
{
  Points out(static_cast<Eigen::Index>(cloud.size()), 3);
  for (std::size_t i = 0; i < cloud.size(); ++i)
  {
    out.row(static_cast<Eigen::Index>(i)) = cloud.points[i].transpose();
  }
  return out;
}

UnitQuaternion toQuat(const Quat& q)
{
  return UnitQuaternion(q[0], q[1], q[2], q[3]).normalized();
}

Quat fromQuat(const UnitQuaternion& q)
{
  return {q.w(), q.x(), q.y(), q.z()};
}

RunConfig config(const std::string& json)
{
  return json.empty() ? RunConfig{} : runConfigFromJson(json);
}

BezierSegment segmentFrom(const std::vector<Vec3>& control_points)
{
  return makeSegment(control_points, 1.0);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Hexapod leg manipulation: perception, trajectories, kinematics and push episodes";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnsupportedFormatError>(m, "UnsupportedFormatError", base.ptr());
  py::register_exception<InsufficientPointsError>(m, "InsufficientPointsError", base.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base.ptr());
  py::register_exception<NoObstacleFoundError>(m, "NoObstacleFoundError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

  m.def(
      "slerp", [](const Quat& q0, const Quat& q1, double t) { return fromQuat(slerp(toQuat(q0), toQuat(q1), t)); },
      py::arg("q0"), py::arg("q1"), py::arg("t"), "Quaternions as [w, x, y, z].");
  m.def(
      "quat_rotate", [](const Quat& q, const Vec3& v) { return Vec3(quatRotate(toQuat(q), v)); }, py::arg("q"),
      py::arg("v"));

  m.def(
      "synthesize_cloud",
      [](const std::string& scene_json, std::uint64_t seed) {
        return toArray(synthesizeCloud(scene_json.empty() ? tableScene(2) : sceneFromJson(scene_json), seed));
      },
      py::arg("scene_json") = "", py::arg("seed") = 0);
  m.def(
      "table_scene_json", [](int number, const std::string& surface) {
        return sceneToJson(tableScene(number, surfaceFromName(surface)));
      },
      py::arg("number"), py::arg("surface") = "carpet");

  m.def(
      "read_pcd", [](const std::string& text) {
        std::istringstream in(text);
        return toArray(readPcd(in));
      },
      py::arg("text"));
  m.def(
      "write_pcd", [](const Points& points) {
        std::ostringstream out;
        writePcd(out, toCloud(points));
        return out.str();
      },
      py::arg("points"));

  m.def(
      "voxel_downsample", [](const Points& points, double leaf) { return toArray(voxelDownsample(toCloud(points), leaf)); },
      py::arg("points"), py::arg("leaf"));
  m.def(
      "ransac_plane",
      [](const Points& points, double threshold, int iters, std::uint64_t seed) {
        const PlaneModel p = ransacPlane(toCloud(points), threshold, iters, seed);
        return py::make_tuple(p.normal, p.offset, p.inlier_indices);
      },
      py::arg("points"), py::arg("threshold") = 0.01, py::arg("iters") = 200, py::arg("seed") = 42,
      "Returns (normal, offset, inlier_indices).");
  m.def(
      "radius_search",
      [](const Points& points, const Vec3& center, double radius) {
        const Octree tree(toCloud(points));
        return tree.radiusSearch(center, radius);
      },
      py::arg("points"), py::arg("center"), py::arg("radius"));
  m.def(
      "euclidean_clusters",
      [](const Points& points, double tolerance, std::size_t min_size, std::size_t max_size) {
        std::vector<std::vector<std::size_t>> out;
        for (const Cluster& c : euclideanClusters(toCloud(points), ClusterParams{tolerance, min_size, max_size}))
        {
          out.push_back(c.indices);
        }
        return out;
      },
      py::arg("points"), py::arg("tolerance") = 0.03, py::arg("min_size") = 1, py::arg("max_size") = 1000000);
  m.def(
      "identify_obstacle",
      [](const Points& points, const std::string& config_json) {
        return descriptorToJson(identifyObstacle(toCloud(points), config(config_json).episode.perception).descriptor);
      },
      py::arg("points"), py::arg("config_json") = "", "Descriptor as JSON text.");
  m.def(
      "benchmark_hz",
      [](const Points& points, int repetitions) {
        return benchmarkPipeline(toCloud(points), PerceptionConfig{}, repetitions).median_hz;
      },
      py::arg("points"), py::arg("repetitions") = 20);

  m.def(
      "bezier_eval", [](const std::vector<Vec3>& cps, double t) { return eval(segmentFrom(cps), t); },
      py::arg("control_points"), py::arg("t"));
  m.def(
      "modified_quadratic",
      [](const Vec3& p0, const Vec3& d, double t, const Vec3& p2) {
        return modifiedQuadratic(p0, DesiredPoint{d, t}, p2).control_points;
      },
      py::arg("p0"), py::arg("desired"), py::arg("t"), py::arg("p2"));
  m.def(
      "modified_cubic",
      [](const Vec3& p0, const Vec3& d1, double t1, const Vec3& d2, double t2, const Vec3& p3) {
        return modifiedCubic(p0, DesiredPoint{d1, t1}, DesiredPoint{d2, t2}, p3).control_points;
      },
      py::arg("p0"), py::arg("d1"), py::arg("t1"), py::arg("d2"), py::arg("t2"), py::arg("p3"));
  m.def(
      "plan_push",
      [](const std::string& descriptor_json, const std::string& config_json) {
        const EpisodeConfig ep = config(config_json).episode;
        const ObstacleDescriptor d = descriptorFromJson(descriptor_json);
        const Vec3 contact = d.contact(ep.contact_point);
        const KinematicChain chain = selectLeg(ep.leg, contact);
        return trajectoryToJson(buildPushSequence(chain.leg_id, legPose(ep.leg, ep.leg.stance, chain),
                                                  legPose(ep.leg, ep.leg.safe, chain), contact, ep.push));
      },
      py::arg("descriptor_json"), py::arg("config_json") = "", "Trajectory as JSON text.");

  m.def(
      "forward_kinematics",
      [](const std::vector<double>& angles, const std::string& chain_json) {
        const KinematicChain chain = chain_json.empty() ? defaultFrontLeftLeg() : chainFromJson(chain_json);
        const Pose p = forwardKinematics(chain, angles);
        return py::make_tuple(p.position, fromQuat(p.orientation));
      },
      py::arg("angles"), py::arg("chain_json") = "", "Returns (position, [w, x, y, z]).");
  m.def(
      "inverse_kinematics",
      [](const Vec3& position, const std::optional<Quat>& orientation, const std::string& chain_json) {
        const KinematicChain chain = chain_json.empty() ? defaultFrontLeftLeg() : chainFromJson(chain_json);
        IkParams params;
        Pose target;
        target.position = position;
        if (orientation)
        {
          target.orientation = toQuat(*orientation);
        }
        else
        {
          params.track_orientation = false;
        }
        const IkResult r = inverseKinematics(chain, target, standardSeed(chain), params);
        return py::make_tuple(r.angles, r.position_error);
      },
      py::arg("position"), py::arg("orientation") = py::none(), py::arg("chain_json") = "",
      "Returns (angles, position_error).");
  m.def(
      "default_chain_json", [] { return chainToJson(defaultFrontLeftLeg()); });
  m.def(
      "default_config_json", [] { return runConfigToJson(RunConfig{}); });

  m.def(
      "run_episode",
      [](const std::string& config_json, std::uint64_t seed) {
        const RunConfig rc = config(config_json);
        const EpisodeLog log = runEpisode(rc.scene, rc.episode, seed);
        std::ostringstream csv;
        writeEpisodeCsv(csv, log);
        return py::make_tuple(outcomeName(log.outcome), outcomeToJson(log), csv.str());
      },
      py::arg("config_json") = "", py::arg("seed") = 0, "Returns (outcome, outcome_json, episode_csv).");
}

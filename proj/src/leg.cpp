#include "legipulation/leg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

void checkAngleCount(const KinematicChain& chain, const JointAngles& angles)
{
  if (angles.size() != chain.dof())
  {
    throw ParameterError("leg '" + chain.leg_id + "' has " + std::to_string(chain.dof()) + " joints but " +
                         std::to_string(angles.size()) + " angles were given");
  }
}

// Rotation vector taking `current` onto `target`, world frame.
Vec3 orientationError(const UnitQuaternion& target, const UnitQuaternion& current)
{
  UnitQuaternion delta = target * current.conjugate();
  if (delta.w() < 0.0)
  {
    delta.coeffs() = -delta.coeffs();
  }
  const double vnorm = delta.vec().norm();
  if (vnorm < 1e-15)
  {
    return Vec3::Zero();
  }
  return (2.0 * std::atan2(vnorm, delta.w()) / vnorm) * delta.vec();
}

Eigen::MatrixXd dampedPseudoInverse(const Eigen::MatrixXd& a, double damping)
{
  const Eigen::MatrixXd aat = a * a.transpose() +
                              damping * damping * Eigen::MatrixXd::Identity(a.rows(), a.rows());
  return a.transpose() * aat.ldlt().solve(Eigen::MatrixXd::Identity(a.rows(), a.rows()));
}

}  // namespace

void validate(const KinematicChain& chain)
{
  if (chain.joints.size() < 3)
  {
    throw ParameterError("leg '" + chain.leg_id + "' needs at least 3 joints");
  }
  for (const Joint& j : chain.joints)
  {
    if (std::abs(j.axis.norm() - 1.0) > 1e-9)
    {
      throw ParameterError("joint '" + j.name + "' axis is not a unit vector");
    }
    if (!(j.min < j.max))
    {
      throw ParameterError("joint '" + j.name + "' has min >= max");
    }
    if (!j.origin.allFinite())
    {
      throw ParameterError("joint '" + j.name + "' origin is not finite");
    }
  }
  if (std::abs(chain.base.orientation.norm() - 1.0) > 1e-9)
  {
    throw ParameterError("leg '" + chain.leg_id + "' base orientation is not a unit quaternion");
  }
}

KinematicChain defaultFrontLeftLeg()
{
  KinematicChain chain;
  chain.leg_id = "AL";
  chain.base.position = Vec3(0.25, 0.10, 0.12);
  chain.base.orientation = axisAngle(Vec3::UnitZ(), 0.6);
  chain.joints = {
      {"coxa", Vec3::UnitZ(), Vec3(0.0, 0.0, 0.0), -1.8, 1.2},
      {"femur", Vec3::UnitY(), Vec3(0.07, 0.0, 0.0), -1.6, 1.6},
      {"tibia", Vec3::UnitY(), Vec3(0.15, 0.0, 0.0), -0.2, 2.6},
      {"tarsus", Vec3::UnitY(), Vec3(0.15, 0.0, 0.0), -1.5, 2.0},
      {"wrist", Vec3::UnitX(), Vec3(0.05, 0.0, 0.0), -3.0, 3.0},
  };
  chain.tip_offset = Vec3(0.04, 0.0, 0.0);
  return chain;
}

KinematicChain mirrorLeg(const KinematicChain& chain, const std::string& leg_id)
{
  KinematicChain out = chain;
  out.leg_id = leg_id;
  out.base.position.y() = -chain.base.position.y();
  // Reflection through the x-z plane: yaw and roll senses flip, pitch keeps.
  const Eigen::AngleAxisd aa(chain.base.orientation);
  Vec3 axis = aa.axis();
  axis.x() = -axis.x();
  axis.z() = -axis.z();
  out.base.orientation = UnitQuaternion(Eigen::AngleAxisd(aa.angle(), axis));
  for (Joint& j : out.joints)
  {
    j.origin.y() = -j.origin.y();
    if (std::abs(j.axis.y()) < 1.0 - 1e-12)
    {
      const double lo = j.min;
      j.min = -j.max;
      j.max = -lo;
    }
  }
  out.tip_offset.y() = -chain.tip_offset.y();
  return out;
}

ChainState chainState(const KinematicChain& chain, const JointAngles& angles)
{
  checkAngleCount(chain, angles);
  ChainState state;
  state.joints.reserve(chain.dof());
  Eigen::Matrix3d rot = chain.base.orientation.toRotationMatrix();
  Vec3 pos = chain.base.position;
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    const Joint& j = chain.joints[i];
    pos += rot * j.origin;
    state.joints.push_back({pos, rot * j.axis});
    rot = rot * Eigen::AngleAxisd(angles[i], j.axis).toRotationMatrix();
  }
  state.tip.position = pos + rot * chain.tip_offset;
  state.tip.orientation = UnitQuaternion(rot).normalized();
  return state;
}

Pose forwardKinematics(const KinematicChain& chain, const JointAngles& angles)
{
  return chainState(chain, angles).tip;
}

Eigen::MatrixXd jacobian(const KinematicChain& chain, const JointAngles& angles)
{
  const ChainState state = chainState(chain, angles);
  Eigen::MatrixXd j(6, static_cast<Eigen::Index>(chain.dof()));
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    const JointFrame& f = state.joints[i];
    j.block<3, 1>(0, static_cast<Eigen::Index>(i)) = f.axis.cross(state.tip.position - f.origin);
    j.block<3, 1>(3, static_cast<Eigen::Index>(i)) = f.axis;
  }
  return j;
}

bool withinLimits(const KinematicChain& chain, const JointAngles& angles)
{
  checkAngleCount(chain, angles);
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    if (angles[i] < chain.joints[i].min || angles[i] > chain.joints[i].max)
    {
      return false;
    }
  }
  return true;
}

JointAngles clampToLimits(const KinematicChain& chain, JointAngles angles)
{
  checkAngleCount(chain, angles);
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    angles[i] = std::clamp(angles[i], chain.joints[i].min, chain.joints[i].max);
  }
  return angles;
}

namespace {

IkResult solveFrom(const KinematicChain& chain, const Pose& target, const JointAngles& seed, const IkParams& params)
{
  const auto n = static_cast<Eigen::Index>(chain.dof());
  JointAngles q = clampToLimits(chain, seed);
  IkResult result;

  for (int iter = 0;; ++iter)
  {
    const ChainState state = chainState(chain, q);
    const Vec3 e_p = target.position - state.tip.position;
    const Vec3 e_o = orientationError(target.orientation, state.tip.orientation);
    result.iterations = iter;
    const bool position_done = e_p.norm() <= params.tol;
    const bool orientation_done = !params.track_orientation || e_o.norm() <= params.orientation_tol;
    if ((position_done && orientation_done) || iter >= params.max_iters)
    {
      break;
    }

    Eigen::MatrixXd jp(3, n);
    Eigen::MatrixXd jo(3, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
      const JointFrame& f = state.joints[static_cast<std::size_t>(i)];
      jp.col(i) = f.axis.cross(state.tip.position - f.origin);
      jo.col(i) = f.axis;
    }

    const Eigen::MatrixXd jp_pinv = dampedPseudoInverse(jp, params.damping);
    Eigen::VectorXd dq = jp_pinv * e_p;
    if (params.track_orientation)
    {
      const Eigen::MatrixXd null_space = Eigen::MatrixXd::Identity(n, n) - jp_pinv * jp;
      const Eigen::MatrixXd jo_null = jo * null_space;
      dq += dampedPseudoInverse(jo_null, params.damping) * (e_o - jo * dq);
    }

    const double largest = dq.cwiseAbs().maxCoeff();
    if (largest > params.max_step)
    {
      dq *= params.max_step / largest;
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
      q[static_cast<std::size_t>(i)] += dq[i];
    }
    q = clampToLimits(chain, std::move(q));
  }

  result.angles = q;
  result.achieved = forwardKinematics(chain, q);
  result.position_error = (result.achieved.position - target.position).norm();
  result.orientation_error = angularDistance(result.achieved.orientation, target.orientation);

  // Orientation is secondary: once joint limits make it fight the position
  // task, give it up and finish on position alone, from where it got to and
  // from the seed it started at.
  if (params.track_orientation && result.position_error > params.tol)
  {
    IkParams position_only = params;
    position_only.track_orientation = false;
    const JointAngles starts[] = {q, clampToLimits(chain, seed)};
    for (const JointAngles& start : starts)
    {
      IkResult refined = solveFrom(chain, target, start, position_only);
      if (refined.position_error < result.position_error)
      {
        refined.iterations += result.iterations;
        result = std::move(refined);
      }
      if (result.position_error <= params.tol)
      {
        break;
      }
    }
  }
  result.clamped = result.position_error > params.tol;
  return result;
}

// Spread-out seed number k (k >= 1): an additive low-discrepancy sequence
// over each joint's range.
JointAngles restartSeed(const KinematicChain& chain, int k)
{
  static constexpr double kSteps[] = {0.41421356237, 0.73205080757, 0.23606797750, 0.64575131106,
                                      0.31662479036, 0.60555127546, 0.12310562562, 0.35889894354};
  JointAngles seed(chain.dof());
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    const double u = std::fmod(0.5 + k * kSteps[i % 8], 1.0);
    seed[i] = chain.joints[i].min + u * (chain.joints[i].max - chain.joints[i].min);
  }
  return seed;
}

}  // namespace

IkResult inverseKinematics(const KinematicChain& chain, const Pose& target, const JointAngles& seed,
                           const IkParams& params)
{
  checkAngleCount(chain, seed);
  if (!target.position.allFinite() || !target.orientation.coeffs().allFinite())
  {
    throw ParameterError("inverseKinematics: target is not finite");
  }
  if (!(params.tol > 0.0) || params.restarts < 0)
  {
    throw ParameterError("inverseKinematics: need tol > 0 and restarts >= 0");
  }
  IkResult best = solveFrom(chain, target, seed, params);
  for (int k = 1; k <= params.restarts && best.clamped; ++k)
  {
    IkResult candidate = solveFrom(chain, target, restartSeed(chain, k), params);
    if (candidate.position_error < best.position_error)
    {
      candidate.iterations += best.iterations;
      best = std::move(candidate);
    }
  }
  return best;
}

JointAngles standardSeed(const KinematicChain& chain)
{
  JointAngles seed;
  seed.reserve(chain.dof());
  for (const Joint& j : chain.joints)
  {
    seed.push_back(0.5 * (j.min + j.max));
  }
  return seed;
}

bool inWorkspace(const KinematicChain& chain, const Vec3& point, const IkParams& params)
{
  if (!point.allFinite())
  {
    return false;
  }
  IkParams position_only = params;
  position_only.track_orientation = false;
  Pose target;
  target.position = point;
  return inverseKinematics(chain, target, standardSeed(chain), position_only).position_error <=
         kWorkspaceTolerance;
}

LegTracker::LegTracker(KinematicChain chain, JointAngles start_angles, IkParams params)
  : chain_(std::move(chain)), params_(params), angles_(std::move(start_angles))
{
  validate(chain_);
  checkAngleCount(chain_, angles_);
  angles_ = clampToLimits(chain_, angles_);
}

IkResult LegTracker::step(const Pose& desired)
{
  IkResult result = inverseKinematics(chain_, desired, angles_, params_);
  if (!reachable(result))
  {
    if (has_previous_)
    {
      const Vec3 motion = desired.position - previous_actual_;
      IkParams local = params_;
      local.restarts = 0;
      Pose probe = desired;
      probe.position = previous_actual_;
      IkResult best = inverseKinematics(chain_, probe, angles_, local);
      double lo = 0.0;
      double hi = 1.0;
      for (int i = 0; i < 12; ++i)
      {
        const double mid = 0.5 * (lo + hi);
        probe.position = previous_actual_ + mid * motion;
        IkResult candidate = inverseKinematics(chain_, probe, angles_, local);
        if (reachable(candidate))
        {
          lo = mid;
          best = std::move(candidate);
        }
        else
        {
          hi = mid;
        }
      }
      result = std::move(best);
    }
    result.position_error = (result.achieved.position - desired.position).norm();
    result.orientation_error = angularDistance(result.achieved.orientation, desired.orientation);
    result.clamped = true;
  }
  else
  {
    result.clamped = false;
  }

  angles_ = result.angles;
  has_previous_ = true;
  previous_actual_ = result.achieved.position;
  return result;
}

std::vector<double> sampleTimes(double total_duration, double dt)
{
  if (!(dt > 0.0))
  {
    throw ParameterError("sample step must be positive");
  }
  std::vector<double> times;
  if (!(total_duration > 0.0))
  {
    return times;
  }
  for (std::size_t k = 0;; ++k)
  {
    const double t = static_cast<double>(k) * dt;
    if (t >= total_duration - 1e-12)
    {
      break;
    }
    times.push_back(t);
  }
  times.push_back(total_duration);
  return times;
}

std::vector<TrackedSample> track(const KinematicChain& chain, const TrajectorySequence& seq, double dt,
                                 const JointAngles& start_angles, const IkParams& params)
{
  LegTracker tracker(chain, start_angles, params);
  std::vector<TrackedSample> out;
  for (double t : sampleTimes(seq.totalDuration(), dt))
  {
    TrackedSample s;
    s.desired = sample(seq, t);
    s.actual = tracker.step(s.desired.pose);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace legipulation

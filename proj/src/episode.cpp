#include "legipulation/episode.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

std::string num(double v)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Scene object the descriptor most plausibly belongs to.
std::size_t matchObject(const SceneSpec& scene, const ObstacleDescriptor& d)
{
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scene.objects.size(); ++i)
  {
    const Vec3 c = scene.objects[i].position;
    const double dist = std::hypot(c.x() - d.centroid.x(), c.y() - d.centroid.y());
    if (dist < best_dist)
    {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::string outcomeName(Outcome outcome)
{
  switch (outcome)
  {
    case Outcome::Success:
      return "success";
    case Outcome::AbortedOverload:
      return "aborted-overload";
    case Outcome::FailedStillInPath:
      return "failed-still-in-path";
    case Outcome::FailedUnstable:
      return "failed-unstable";
    case Outcome::NoObstacle:
      return "no-obstacle";
  }
  return "no-obstacle";
}

KinematicChain selectLeg(const LegConfig& config, const Vec3& contact)
{
  if (contact.y() >= 0.0)
  {
    return config.chain;
  }
  return mirrorLeg(config.chain, config.mirror_leg_id);
}

Pose legPose(const LegConfig& config, const Pose& left_pose, const KinematicChain& chain)
{
  if (chain.leg_id == config.chain.leg_id)
  {
    return left_pose;
  }
  Pose out = left_pose;
  out.position.y() = -left_pose.position.y();
  // Reflection through the x-z plane.
  out.orientation = UnitQuaternion(left_pose.orientation.w(), -left_pose.orientation.x(), left_pose.orientation.y(),
                                   -left_pose.orientation.z());
  return out;
}

EpisodeLog runEpisode(const SceneSpec& scene, const EpisodeConfig& config, std::uint64_t seed)
{
  validate(scene);
  validate(config.overload);
  EpisodeLog log;

  const PointCloud cloud = synthesizeCloud(scene, seed);
  IdentifyResult identified;
  try
  {
    identified = identifyObstacle(cloud, config.perception);
  }
  catch (const NoObstacleFoundError& e)
  {
    log.outcome = Outcome::NoObstacle;
    log.message = e.what();
    return log;
  }
  if (scene.objects.empty())
  {
    // Something was detected but there is nothing physical to push.
    log.outcome = Outcome::NoObstacle;
    log.message = "detected cluster has no matching scene object";
    return log;
  }

  log.descriptor = identified.descriptor;
  const Vec3 contact = identified.descriptor.contact(config.contact_point);
  log.contact_point = contact;

  const KinematicChain chain = selectLeg(config.leg, contact);
  log.leg_id = chain.leg_id;
  const Pose stance = legPose(config.leg, config.leg.stance, chain);
  const Pose safe = legPose(config.leg, config.leg.safe, chain);

  const TrajectorySequence push = buildPushSequence(chain.leg_id, stance, safe, contact, config.push);
  log.plan = push;

  const IkResult start = inverseKinematics(chain, stance, standardSeed(chain), config.leg.ik);
  LegTracker tracker(chain, start.angles, config.leg.ik);

  const SceneObject& target = scene.objects[matchObject(scene, identified.descriptor)];
  PushSimulator sim(target, scene.ground_height, config.push_model);
  log.object_start = sim.object().position;

  std::mt19937_64 noise_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> effort_noise(0.0, 1.0);

  Vec3 previous_tip = start.achieved.position;
  double clock = 0.0;
  MonitorState monitor;

  auto run_phase = [&](const TrajectorySequence& seq, const std::string& phase,
                       bool monitored) -> std::optional<OverloadEvent> {
    const double phase_start = clock;
    const std::vector<double> times = sampleTimes(seq.totalDuration(), config.dt);
    // Later phases begin where the previous one stopped; skip the repeated instant.
    const std::size_t first = log.records.empty() ? 0 : 1;
    for (std::size_t i = first; i < times.size(); ++i)
    {
      const TipPoseSample desired = sample(seq, times[i]);
      const IkResult actual = tracker.step(desired.pose);
      const PushStep contact_step = sim.step(previous_tip, actual.achieved.position);
      previous_tip = actual.achieved.position;

      EffortSample effort = effortModel(chain, actual.angles, contact_step.tip_force, config.effort);
      effort.time = phase_start + times[i];
      if (config.effort_noise > 0.0)
      {
        for (double& e : effort.efforts)
        {
          e += config.effort_noise * effort_noise(noise_rng);
        }
      }

      EpisodeRecord rec;
      rec.time = effort.time;
      rec.phase = phase;
      rec.desired = desired.pose.position;
      rec.actual = actual.achieved.position;
      rec.efforts = effort.efforts;
      rec.object = sim.object().position;
      rec.contact = contact_step.contact;

      log.max_tracking_error = std::max(log.max_tracking_error, actual.position_error);
      log.max_tipping_moment =
          std::max(log.max_tipping_moment, tippingMoment(contact_step.tip_force, actual.achieved.position));
      for (double e : effort.efforts)
      {
        log.max_abs_effort = std::max(log.max_abs_effort, std::abs(e));
      }

      std::optional<OverloadEvent> event;
      if (monitored)
      {
        event = monitorStep(config.overload, effort, monitor, seq.leg_id + ":" + seq.name);
      }
      rec.event = event.has_value();
      log.records.push_back(std::move(rec));
      clock = effort.time;
      if (event)
      {
        return event;
      }
    }
    return std::nullopt;
  };

  log.overload = run_phase(push, "push", true);
  if (log.overload)
  {
    const TrajectorySequence back = abortAndReturn(*log.overload, chain.leg_id, tracker.tipPose(), stance, config.ret);
    if (!back.empty())
    {
      run_phase(back, "abort-return", false);
    }
  }
  else
  {
    const TrajectorySequence back = buildReturnSequence(chain.leg_id, tracker.tipPose(), stance, config.ret);
    if (!back.empty())
    {
      run_phase(back, "return", false);
    }
  }

  log.object_end = sim.object().position;
  if (log.overload)
  {
    log.outcome = Outcome::AbortedOverload;
  }
  else if (log.max_tipping_moment > config.tipping_margin)
  {
    log.outcome = Outcome::FailedUnstable;
  }
  else if (obstructsPath(sim.object(), config.corridor))
  {
    log.outcome = Outcome::FailedStillInPath;
  }
  else
  {
    log.outcome = Outcome::Success;
  }
  return log;
}

void writeEpisodeCsv(std::ostream& out, const EpisodeLog& log)
{
  const std::size_t joints = log.records.empty() ? 0 : log.records.front().efforts.size();
  std::string text = "time_s,phase,desired_x,desired_y,desired_z,actual_x,actual_y,actual_z";
  for (std::size_t j = 0; j < joints; ++j)
  {
    text += ",joint_" + std::to_string(j);
  }
  text += ",object_x,object_y,contact,event_flag\n";
  for (const EpisodeRecord& r : log.records)
  {
    text += num(r.time) + "," + r.phase;
    for (int i = 0; i < 3; ++i)
    {
      text += "," + num(r.desired[i]);
    }
    for (int i = 0; i < 3; ++i)
    {
      text += "," + num(r.actual[i]);
    }
    for (double e : r.efforts)
    {
      text += "," + num(e);
    }
    text += "," + num(r.object.x()) + "," + num(r.object.y());
    text += r.contact ? ",1" : ",0";
    text += r.event ? ",1\n" : ",0\n";
  }
  out << text;
}

void writeEffortCsv(std::ostream& out, const EpisodeLog& log)
{
  const std::size_t joints = log.records.empty() ? 0 : log.records.front().efforts.size();
  std::string text = "time_s";
  for (std::size_t j = 0; j < joints; ++j)
  {
    text += ",joint_" + std::to_string(j);
  }
  text += ",event_flag\n";
  for (const EpisodeRecord& r : log.records)
  {
    text += num(r.time);
    for (double e : r.efforts)
    {
      text += "," + num(e);
    }
    text += r.event ? ",1\n" : ",0\n";
  }
  out << text;
}

}  // namespace legipulation

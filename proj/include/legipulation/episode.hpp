#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "legipulation/leg.hpp"
#include "legipulation/overload.hpp"
#include "legipulation/pipeline.hpp"
#include "legipulation/push.hpp"
#include "legipulation/scene.hpp"
#include "legipulation/sequence.hpp"

namespace legipulation {

struct LegConfig
{
  // Front-left leg; the front-right leg is its mirror image.
  KinematicChain chain = defaultFrontLeftLeg();
  std::string mirror_leg_id = "AR";
  // Stance and safe tip poses for the left leg, body frame.
  Pose stance{Vec3(0.45, 0.24, 0.0), tipDownOrientation()};
  Pose safe{Vec3(0.48, 0.16, 0.15), tipDownOrientation()};
  IkParams ik;
};

struct EpisodeConfig
{
  PerceptionConfig perception;
  LegConfig leg;
  // Key point used by the push behaviour.
  ContactPointId contact_point = ContactPointId::LeftBackCentre;
  PushParams push;
  ReturnParams ret;
  double dt = 0.01;
  OverloadPolicy overload;
  EffortModelParams effort;
  double effort_noise = 40.0;
  PushModel push_model;
  PathCorridor corridor;
  // N*m of horizontal tip force times lever arm the body tolerates.
  double tipping_margin = 8.0;
};

enum class Outcome
{
  Success,
  AbortedOverload,
  FailedStillInPath,
  FailedUnstable,
  NoObstacle
};

std::string outcomeName(Outcome outcome);

// Success and a protective overload abort both leave the robot in a safe state.
inline bool isCleanOutcome(Outcome outcome)
{
  return outcome == Outcome::Success || outcome == Outcome::AbortedOverload;
}

struct EpisodeRecord
{
  double time = 0.0;
  std::string phase;
  Vec3 desired = Vec3::Zero();
  Vec3 actual = Vec3::Zero();
  std::vector<double> efforts;
  Vec3 object = Vec3::Zero();
  bool contact = false;
  bool event = false;
};

struct EpisodeLog
{
  std::vector<EpisodeRecord> records;
  Outcome outcome = Outcome::NoObstacle;
  std::string leg_id;
  std::optional<ObstacleDescriptor> descriptor;
  std::optional<Vec3> contact_point;
  std::optional<OverloadEvent> overload;
  std::optional<TrajectorySequence> plan;
  Vec3 object_start = Vec3::Zero();
  Vec3 object_end = Vec3::Zero();
  double max_tracking_error = 0.0;
  double max_abs_effort = 0.0;
  double max_tipping_moment = 0.0;
  std::string message;
};

// Leg that serves a contact point: left of the centreline -> left leg.
KinematicChain selectLeg(const LegConfig& config, const Vec3& contact);
Pose legPose(const LegConfig& config, const Pose& left_pose, const KinematicChain& chain);

/// identify -> key point -> plan push -> track with IK -> push object ->
/// monitor efforts -> abort/return -> classify.
EpisodeLog runEpisode(const SceneSpec& scene, const EpisodeConfig& config, std::uint64_t seed);

/// CSV: time_s,phase,desired_x..z,actual_x..z,joint_0..joint_n,object_x,object_y,contact,event_flag
void writeEpisodeCsv(std::ostream& out, const EpisodeLog& log);

/// CSV: time_s,joint_0..joint_n,event_flag
void writeEffortCsv(std::ostream& out, const EpisodeLog& log);

}  // namespace legipulation

#pragma once

#include <string>

#include "legipulation/episode.hpp"
#include "legipulation/obstacle.hpp"
#include "legipulation/scene.hpp"
#include "legipulation/sequence.hpp"

namespace legipulation {

// All documents are JSON, lengths in metres unless a scene says "units": "mm".
// Loaders reject unknown keys and wrong types with ParameterError.

std::string descriptorToJson(const ObstacleDescriptor& descriptor);
ObstacleDescriptor descriptorFromJson(const std::string& text);

/// { leg_id, segments: [ {order, control_points, duration_s, quat_start, quat_end} ],
///   total_duration_s }, quaternions as [w, x, y, z].
std::string trajectoryToJson(const TrajectorySequence& seq);
TrajectorySequence trajectoryFromJson(const std::string& text);

std::string chainToJson(const KinematicChain& chain);
/// Validating loader for the leg-chain schema.
KinematicChain chainFromJson(const std::string& text);

std::string sceneToJson(const SceneSpec& scene);
SceneSpec sceneFromJson(const std::string& text);

// Whole-run configuration file.
struct RunConfig
{
  SceneSpec scene = tableScene(2);
  EpisodeConfig episode;
};

/// Sections: scene, perception, leg, push, return, episode, overload, effort,
/// push_model, corridor. Missing keys keep their defaults.
RunConfig runConfigFromJson(const std::string& text);
std::string runConfigToJson(const RunConfig& config);

/// { outcome, clean, leg_id, contact_point, overload, object_start,
///   object_end, max_tracking_error, max_abs_effort, max_tipping_moment, message }
std::string outcomeToJson(const EpisodeLog& log);

std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

}  // namespace legipulation

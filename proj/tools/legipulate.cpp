// legipulate: command-line front end.
//
//   synth     scene config -> PCD
//   detect    PCD -> obstacle descriptor JSON
//   plan      descriptor JSON -> push trajectory JSON
//   simulate  scene config -> episode CSV (+ effort CSV, outcome JSON)
//   bench     PCD -> identify-stage rate
//
// Exit codes: 0 clean, 1 unclean outcome, 2 bad input.

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "legipulation/episode.hpp"
#include "legipulation/error.hpp"
#include "legipulation/json_io.hpp"
#include "legipulation/pcd.hpp"

using namespace legipulation;

namespace {

struct Common
{
  std::string config_path;
  std::string leg_config_path;
  std::uint64_t seed = 0;
  int object = 0;
  std::string surface;
};

RunConfig loadConfig(const Common& c)
{
  RunConfig config = c.config_path.empty() ? RunConfig{} : runConfigFromJson(readTextFile(c.config_path));
  if (!c.leg_config_path.empty())
  {
    config.episode.leg.chain = chainFromJson(readTextFile(c.leg_config_path));
  }
  if (c.object != 0)
  {
    config.scene = tableScene(c.object, c.surface.empty() ? Surface::Carpet : surfaceFromName(c.surface));
  }
  else if (!c.surface.empty())
  {
    const double mu = frictionCoefficient(surfaceFromName(c.surface));
    for (SceneObject& o : config.scene.objects)
    {
      o.friction = mu;
    }
  }
  return config;
}

void emit(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-")
  {
    std::cout << text;
  }
  else
  {
    writeTextFile(path, text);
  }
}

void addConfigOptions(CLI::App* app, Common& c)
{
  app->add_option("-c,--config", c.config_path, "Run config JSON")->check(CLI::ExistingFile);
  app->add_option("--leg-config", c.leg_config_path, "Leg-chain JSON")->check(CLI::ExistingFile);
}

void addSceneOptions(CLI::App* app, Common& c)
{
  app->add_option("--object", c.object, "Bench-top object 1, 2 or 3 instead of the configured scene")
      ->check(CLI::Range(1, 3));
  app->add_option("--surface", c.surface, "marble, concrete or carpet");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Hexapod leg manipulation toolkit"};
  app.require_subcommand(1);
  Common common;

  std::string out_path;
  auto* synth = app.add_subcommand("synth", "Synthesize a point cloud of the scene");
  addConfigOptions(synth, common);
  addSceneOptions(synth, common);
  synth->add_option("--seed", common.seed, "Noise seed");
  synth->add_option("-o,--output", out_path, "PCD path (stdout if omitted)");

  std::string in_path;
  auto* detect = app.add_subcommand("detect", "Identify the obstacle in a PCD file");
  addConfigOptions(detect, common);
  detect->add_option("input", in_path, "PCD file")->required()->check(CLI::ExistingFile);
  std::optional<std::uint64_t> ransac_seed;
  detect->add_option("--seed", ransac_seed, "RANSAC seed (overrides the config)");
  detect->add_option("-o,--output", out_path, "Descriptor JSON path");

  auto* plan = app.add_subcommand("plan", "Plan the push trajectory for a descriptor");
  addConfigOptions(plan, common);
  plan->add_option("input", in_path, "Descriptor JSON")->required()->check(CLI::ExistingFile);
  plan->add_option("-o,--output", out_path, "Trajectory JSON path");

  std::string effort_path;
  std::string outcome_path;
  auto* simulate = app.add_subcommand("simulate", "Run one push episode");
  addConfigOptions(simulate, common);
  addSceneOptions(simulate, common);
  simulate->add_option("--seed", common.seed, "Cloud and effort-noise seed");
  simulate->add_option("-o,--output", out_path, "Episode CSV path");
  simulate->add_option("--efforts", effort_path, "Effort CSV path");
  simulate->add_option("--outcome", outcome_path, "Outcome JSON path (stdout if omitted)");

  int repetitions = 50;
  double min_hz = 0.0;
  auto* bench = app.add_subcommand("bench", "Time the identify stage");
  addConfigOptions(bench, common);
  bench->add_option("input", in_path, "PCD file")->required()->check(CLI::ExistingFile);
  bench->add_option("-n,--repetitions", repetitions, "Runs (>= 10)")->check(CLI::Range(10, 1000000));
  bench->add_option("--min-hz", min_hz, "Fail below this median rate");

  CLI11_PARSE(app, argc, argv);

  try
  {
    const RunConfig config = loadConfig(common);
    const EpisodeConfig& ep = config.episode;

    if (*synth)
    {
      std::ostringstream ss;
      writePcd(ss, synthesizeCloud(config.scene, common.seed));
      emit(out_path, ss.str());
      return 0;
    }

    if (*detect)
    {
      PerceptionConfig perception = ep.perception;
      if (ransac_seed)
      {
        perception.ransac_seed = *ransac_seed;
      }
      try
      {
        const IdentifyResult r = identifyObstacle(loadPcd(in_path), perception);
        emit(out_path, descriptorToJson(r.descriptor));
      }
      catch (const NoObstacleFoundError& e)
      {
        std::cerr << "no obstacle: " << e.what() << "\n";
        return 1;
      }
      return 0;
    }

    if (*plan)
    {
      const ObstacleDescriptor d = descriptorFromJson(readTextFile(in_path));
      const Vec3 contact = d.contact(ep.contact_point);
      const KinematicChain chain = selectLeg(ep.leg, contact);
      const TrajectorySequence seq = buildPushSequence(chain.leg_id, legPose(ep.leg, ep.leg.stance, chain),
                                                       legPose(ep.leg, ep.leg.safe, chain), contact, ep.push);
      emit(out_path, trajectoryToJson(seq));
      return 0;
    }

    if (*simulate)
    {
      const EpisodeLog log = runEpisode(config.scene, ep, common.seed);
      if (!out_path.empty())
      {
        std::ostringstream ss;
        writeEpisodeCsv(ss, log);
        emit(out_path, ss.str());
      }
      if (!effort_path.empty())
      {
        std::ostringstream ss;
        writeEffortCsv(ss, log);
        emit(effort_path, ss.str());
      }
      emit(outcome_path, outcomeToJson(log));
      return isCleanOutcome(log.outcome) ? 0 : 1;
    }

    if (*bench)
    {
      const BenchmarkReport r = benchmarkPipeline(loadPcd(in_path), ep.perception, repetitions);
      std::printf("repetitions %zu\nmedian_hz %.1f\nmedian_s %.6f\nmin_s %.6f\nmax_s %.6f\nno_obstacle_runs %zu\n",
                  r.repetitions, r.median_hz, r.median_seconds, r.min_seconds, r.max_seconds, r.no_obstacle_runs);
      return r.median_hz >= min_hz ? 0 : 1;
    }
  }
  catch (const Error& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

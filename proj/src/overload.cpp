#include "legipulation/overload.hpp"

#include <cmath>

#include "legipulation/error.hpp"

namespace legipulation {

EffortSample effortModel(const KinematicChain& chain, const JointAngles& angles, const Vec3& tip_force,
                         const EffortModelParams& params)
{
  if (params.gains.size() != chain.dof())
  {
    throw ParameterError("effortModel: need one gain per joint");
  }
  const Eigen::MatrixXd j = jacobian(chain, angles);
  Vec3 force = tip_force;
  if (params.gravity_enabled)
  {
    force += params.gravity_tip_force;
  }
  const Eigen::VectorXd torque = j.topRows(3).transpose() * force;

  EffortSample out;
  out.efforts.resize(chain.dof());
  for (std::size_t i = 0; i < chain.dof(); ++i)
  {
    out.efforts[i] = params.gains[i] * torque[static_cast<Eigen::Index>(i)];
  }
  return out;
}

void validate(const OverloadPolicy& policy)
{
  if (!(policy.threshold > 0.0) || !(policy.threshold < policy.hard_limit))
  {
    throw ParameterError("OverloadPolicy: need 0 < threshold < hard_limit");
  }
  if (policy.consecutive_samples < 1)
  {
    throw ParameterError("OverloadPolicy: consecutive_samples must be at least 1");
  }
}

std::optional<OverloadEvent> monitorStep(const OverloadPolicy& policy, const EffortSample& sample,
                                         MonitorState& state, const std::string& sequence_id)
{
  validate(policy);
  if (state.last_time && sample.time < *state.last_time)
  {
    throw ContractViolation("monitorStep: sample time went backwards");
  }
  state.last_time = sample.time;
  if (state.over_count.size() != sample.efforts.size())
  {
    state.over_count.assign(sample.efforts.size(), 0);
  }

  std::optional<OverloadEvent> event;
  for (std::size_t i = 0; i < sample.efforts.size(); ++i)
  {
    const double e = sample.efforts[i];
    if (!std::isfinite(e))
    {
      throw ParameterError("monitorStep: non-finite effort");
    }
    state.over_count[i] = std::abs(e) >= policy.threshold ? state.over_count[i] + 1 : 0;
    if (!state.fired && !event && state.over_count[i] >= policy.consecutive_samples)
    {
      event = OverloadEvent{sample.time, i, e, sequence_id};
    }
  }
  if (event)
  {
    state.fired = true;
  }
  return event;
}

TrajectorySequence abortAndReturn(const OverloadEvent& event, const std::string& leg_id, const Pose& current,
                                  const Pose& stance, const ReturnParams& params)
{
  TrajectorySequence seq = buildReturnSequence(leg_id, current, stance, params);
  seq.name = "abort-return:" + event.sequence_id;
  return seq;
}

}  // namespace legipulation

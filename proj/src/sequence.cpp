#include "legipulation/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

constexpr double kZeroLength = 1e-9;

}  // namespace

double TrajectorySequence::totalDuration() const
{
  double total = 0.0;
  for (const BezierSegment& s : segments)
  {
    total += s.duration;
  }
  return total;
}

void validate(const TrajectorySequence& seq)
{
  if (seq.segments.size() != seq.orientation_keys.size())
  {
    throw ParameterError("TrajectorySequence: one orientation key pair per segment required");
  }
  for (std::size_t k = 0; k < seq.segments.size(); ++k)
  {
    validate(seq.segments[k]);
    if (k > 0)
    {
      if (seq.segments[k - 1].back() != seq.segments[k].front())
      {
        throw ParameterError("TrajectorySequence: segment " + std::to_string(k) +
                             " does not start where the previous one ends");
      }
      if (seq.orientation_keys[k - 1].end.coeffs() != seq.orientation_keys[k].start.coeffs())
      {
        throw ParameterError("TrajectorySequence: orientation key discontinuity at segment " + std::to_string(k));
      }
    }
  }
}

Vec3 effectiveSweep(const Vec3& contact, const PushParams& params)
{
  Vec3 sweep = params.sweep_vector;
  if (params.auto_sweep_sign && sweep.y() != 0.0)
  {
    sweep.y() = contact.y() >= 0.0 ? -std::abs(sweep.y()) : std::abs(sweep.y());
  }
  return sweep;
}

TrajectorySequence buildPushSequence(const std::string& leg_id, const Pose& initial, const Pose& safe,
                                     const Vec3& contact, const PushParams& params)
{
  if (!contact.allFinite() || !initial.position.allFinite() || !safe.position.allFinite())
  {
    throw ParameterError("buildPushSequence: non-finite waypoint");
  }
  if (params.sweep_vector.norm() < kZeroLength)
  {
    throw ParameterError("buildPushSequence: sweep vector is zero, nothing would be pushed");
  }
  if ((safe.position - initial.position).norm() < kZeroLength)
  {
    throw ConstructionError("buildPushSequence: initial and safe positions coincide");
  }
  if ((contact - safe.position).norm() < kZeroLength)
  {
    throw ConstructionError("buildPushSequence: contact point coincides with the safe position");
  }

  TrajectorySequence seq;
  seq.leg_id = leg_id;
  seq.name = "push";

  const Vec3 lifted_mid = 0.5 * (initial.position + safe.position) + Vec3(0.0, 0.0, params.lift_height);
  seq.segments.push_back(
      modifiedQuadratic(initial.position, DesiredPoint{lifted_mid, 0.5}, safe.position, params.reach_duration));
  seq.orientation_keys.push_back({initial.orientation, safe.orientation});

  const Vec3 end = contact + effectiveSweep(contact, params);
  seq.segments.push_back(modifiedCubic(safe.position, DesiredPoint{contact + params.approach_offset, params.approach_parameter},
                                       DesiredPoint{contact, params.contact_parameter}, end, params.push_duration));
  seq.orientation_keys.push_back({safe.orientation, safe.orientation});
  return seq;
}

TrajectorySequence buildReturnSequence(const std::string& leg_id, const Pose& current, const Pose& stance,
                                       const ReturnParams& params)
{
  TrajectorySequence seq;
  seq.leg_id = leg_id;
  seq.name = "return";

  const bool same_place = (stance.position - current.position).norm() < kZeroLength;
  if (same_place && angularDistance(current.orientation, stance.orientation) < kZeroLength)
  {
    return seq;
  }

  if (same_place)
  {
    // Orientation-only correction.
    seq.segments.push_back(makeSegment({current.position, current.position, current.position}, params.duration));
  }
  else
  {
    const Vec3 lifted_mid = 0.5 * (current.position + stance.position) + Vec3(0.0, 0.0, params.lift_height);
    seq.segments.push_back(
        modifiedQuadratic(current.position, DesiredPoint{lifted_mid, 0.5}, stance.position, params.duration));
  }
  seq.orientation_keys.push_back({current.orientation, stance.orientation});
  return seq;
}

Pose sampleSegment(const TrajectorySequence& seq, std::size_t k, double t)
{
  if (k >= seq.segments.size())
  {
    throw ParameterError("sampleSegment: segment index out of range");
  }
  Pose pose;
  pose.position = eval(seq.segments[k], t);
  const OrientationKeys& keys = seq.orientation_keys[k];
  pose.orientation = slerp(keys.start, keys.end, t);
  return pose;
}

TipPoseSample sample(const TrajectorySequence& seq, double time)
{
  if (seq.empty())
  {
    throw ParameterError("sample: sequence is empty");
  }
  const double total = seq.totalDuration();
  if (!(time >= 0.0 && time <= total))
  {
    throw ParameterError("sample: time " + std::to_string(time) + " outside [0, " + std::to_string(total) + "]");
  }

  TipPoseSample out;
  out.time = time;
  if (time == total)
  {
    out.pose = sampleSegment(seq, seq.segments.size() - 1, 1.0);
    return out;
  }
  double start = 0.0;
  for (std::size_t k = 0; k < seq.segments.size(); ++k)
  {
    const double duration = seq.segments[k].duration;
    const bool last = k + 1 == seq.segments.size();
    if (time < start + duration || last)
    {
      const double t = std::clamp((time - start) / duration, 0.0, 1.0);
      out.pose = sampleSegment(seq, k, t);
      return out;
    }
    start += duration;
  }
  return out;
}

std::pair<TrajectorySequence, TrajectorySequence> buildDualSequences(TrajectorySequence left,
                                                                     TrajectorySequence right)
{
  if (left.leg_id == right.leg_id)
  {
    throw ParameterError("buildDualSequences: both sequences drive leg '" + left.leg_id + "'");
  }
  if (left.empty() || right.empty())
  {
    throw ParameterError("buildDualSequences: sequences must be non-empty");
  }

  const double lt = left.totalDuration();
  const double rt = right.totalDuration();
  auto pad = [](TrajectorySequence& seq, double extra) {
    if (!(extra > 0.0))
    {
      return;
    }
    const Vec3 end = seq.segments.back().back();
    const UnitQuaternion q = seq.orientation_keys.back().end;
    seq.segments.push_back(makeSegment({end, end, end}, extra));
    seq.orientation_keys.push_back({q, q});
  };
  pad(left, rt - lt);
  pad(right, lt - rt);
  return {std::move(left), std::move(right)};
}

}  // namespace legipulation

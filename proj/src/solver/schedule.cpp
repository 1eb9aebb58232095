#include "kawactrl/solver/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "kawactrl/errors.hpp"

namespace kawactrl::solver {

ControlSchedule::ControlSchedule(std::vector<ControlSegment> segments) {
  for (auto& s : segments) append(std::move(s));
}

void ControlSchedule::append(ControlSegment segment) {
  if (!(segment.duration >= 0.0) || !std::isfinite(segment.duration)) {
    throw InvalidInput("segment duration must be finite and nonnegative");
  }
  if (segment.value.mean() != 0.0) {
    throw InvalidInput("control values must have zero mean");
  }
  if (segment.duration == 0.0) return;
  segments_.push_back(std::move(segment));
}

void ControlSchedule::append(const ControlSchedule& other) {
  for (const auto& s : other.segments_) segments_.push_back(s);
}

double ControlSchedule::total_time() const noexcept {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

double exact_remainder(double prefix, double target) {
  if (!(prefix < target)) {
    throw InvalidInput("exact_remainder needs prefix < target");
  }
  double d = target - prefix;
  // target - prefix is exact when prefix >= target / 2; otherwise nudge.
  while (prefix + d > target) d = std::nextafter(d, 0.0);
  while (prefix + d < target) d = std::nextafter(d, target);
  if (prefix + d != target) {
    throw InvalidInput("no duration makes the schedule end exactly on target");
  }
  return d;
}

ControlSchedule slice(const ControlSchedule& s, double a, double b) {
  if (!(a >= 0.0) || !(b >= a)) throw InvalidInput("slice needs 0 <= a <= b");
  ControlSchedule out;
  double t = 0.0;
  for (const auto& seg : s.segments()) {
    const double lo = std::max(t, a);
    const double hi = std::min(t + seg.duration, b);
    if (hi > lo) out.append({hi - lo, seg.value});
    t += seg.duration;
  }
  return out;
}

}  // namespace kawactrl::solver

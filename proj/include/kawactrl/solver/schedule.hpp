#pragma once

#include <vector>

#include "kawactrl/spectral/field.hpp"

namespace kawactrl::solver {

// Constant-in-time forcing applied for `duration` seconds.
struct ControlSegment {
  double duration = 0.0;
  spectral::SpectralField value;
};

// Piecewise-constant forcing; segments run back to back from t = 0.
class ControlSchedule {
 public:
  ControlSchedule() = default;
  explicit ControlSchedule(std::vector<ControlSegment> segments);

  // Appends unless duration == 0; throws on negative durations or a value
  // with nonzero mean.
  void append(ControlSegment segment);
  void append(const ControlSchedule& other);

  const std::vector<ControlSegment>& segments() const noexcept {
    return segments_;
  }
  bool empty() const noexcept { return segments_.empty(); }
  std::size_t size() const noexcept { return segments_.size(); }

  // Left-to-right floating sum of the durations.
  double total_time() const noexcept;

 private:
  std::vector<ControlSegment> segments_;
};

// The forcing seen on [a, b], re-based to start at 0.  Time past the end of
// the schedule is unforced.
ControlSchedule slice(const ControlSchedule& s, double a, double b);

// Seconds to give a final segment so that `prefix + result` rounds to
// exactly `target` (the fold used by total_time()).  Requires prefix < target.
double exact_remainder(double prefix, double target);

}  // namespace kawactrl::solver

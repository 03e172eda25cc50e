#pragma once

#include <cstdint>

namespace randpoly {

// Monte Carlo point estimate with its standard error (sample sd / sqrt(reps)).
// Estimates carry the seed that produced them, so results are reproducible
// directly from any report that embeds one.
struct EstimateCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
};

}  // namespace randpoly

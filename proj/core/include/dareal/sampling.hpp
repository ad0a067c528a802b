#pragma once

#include <cstdint>
#include <vector>

#include "dareal/types.hpp"

namespace dareal {

class BallPoint;

/// Run-wide sampling knobs.  Every operation that draws points derives its
/// stream from `seed` (xor'd with a per-operation salt), so identical
/// configuration reproduces identical certificates byte for byte.
struct SampleConfig {
  int sample_count = 50;
  double sample_radius = 0.9;
  std::uint64_t seed = 42;

  void validate() const {
    if (sample_count < 1)
      throw std::invalid_argument("SampleConfig: sample_count must be >= 1");
    if (!(sample_radius > 0.0 && sample_radius < 1.0))
      throw std::invalid_argument("SampleConfig: sample_radius must lie in (0,1)");
  }

  SampleConfig with_salt(std::uint64_t salt) const {
    SampleConfig c = *this;
    c.seed = seed ^ (salt * 0x9e3779b97f4a7c15ull);
    return c;
  }
};

/// Deterministic pseudo-random source.  Not std::uniform_real_distribution on
/// purpose: the mapping from raw bits to doubles is pinned here so reports
/// do not depend on the standard library implementation.
class SampleGen {
 public:
  explicit SampleGen(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                 // [0, 1)
  double normal();                  // standard real Gaussian
  Complex complex_normal();         // standard complex Gaussian
  ComplexMatrix gaussian_matrix(Index rows, Index cols);

  /// Uniformly random direction on the unit sphere of C^d scaled by a radius
  /// drawn uniformly from (0, radius].
  BallPoint ball_point(Index d, double radius);
  std::vector<BallPoint> ball_points(int count, Index d, double radius);

 private:
  std::uint64_t state_;
};

}  // namespace dareal

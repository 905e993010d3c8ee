#pragma once

#include <cstdint>
#include <string>

#include "risnoma/types.hpp"

namespace risnoma {

// Counter-based generator (xoshiro256** seeded via splitmix64). Streams are
// derived from a master seed plus a label, so independent draws (positions,
// each channel matrix, ...) never share state. All distributions are computed
// from raw 64-bit words with explicit formulas, which keeps sequences
// bit-identical across platforms and standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, const std::string& label);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller.
  double normal();

  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1.
  Complex cnormal();

  /// Matrix with i.i.d. CN(0,1) entries.
  MatC cnormal_matrix(int rows, int cols);

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace risnoma

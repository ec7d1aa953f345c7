#ifndef FPE_RNG_HPP
#define FPE_RNG_HPP

#include <cstdint>

namespace fpe {

/// Counter-based deterministic generator (splitmix64 finalizer). The value
/// at a given (seed, counter) pair is a pure function, so sweeps are
/// reproducible across platforms and independent of evaluation order.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t raw(std::uint64_t counter) const;
  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const;
  double uniform(std::uint64_t counter, double lo, double hi) const;
};

}  // namespace fpe

#endif

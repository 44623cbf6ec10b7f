#ifndef IONLINK_STATS_HPP
#define IONLINK_STATS_HPP

#include <cmath>
#include <cstdint>

namespace ionlink {

// Welford accumulator; add order fixed by the caller so results are stable.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  double variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }
  double sem() const {
    return count > 0 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0;
  }
};

// Standard error of an empirical frequency over n Bernoulli draws.
inline double binomial_se(double p_hat, std::uint64_t n) {
  if (n == 0) return 0.0;
  const double v = p_hat * (1.0 - p_hat) / static_cast<double>(n);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace ionlink

#endif

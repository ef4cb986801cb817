#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace skewlab {

/// Pairwise (cascade) sum. Error grows like O(log n) in ulps instead of
/// O(n), and the result depends only on the element order, not on how the
/// data was produced, so reductions are bitwise reproducible.
inline double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 32) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Two-pass mean and standard error of the mean.
inline MeanStdErr mean_and_std_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("mean_and_std_error: empty sample");
  MeanStdErr out;
  out.mean = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return out;

  // Pairwise sum of squared deviations, streamed without a scratch buffer.
  struct Rec {
    static double sum_sq(std::span<const double> v, double mean) {
      if (v.size() <= 32) {
        double acc = 0.0;
        for (double x : v) {
          const double d = x - mean;
          acc += d * d;
        }
        return acc;
      }
      const std::size_t half = v.size() / 2;
      return sum_sq(v.first(half), mean) + sum_sq(v.subspan(half), mean);
    }
  };
  const double ss = Rec::sum_sq(values, out.mean);
  out.std_error = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
  return out;
}

}  // namespace skewlab

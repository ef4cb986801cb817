#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "skewlab/errors.hpp"

namespace skewlab::detail {

/// Thomas algorithm. Row i reads lower[i] * x[i-1] + diag[i] * x[i] +
/// upper[i] * x[i+1] = rhs[i] (lower[0] and upper[n-1] ignored). No
/// pivoting: callers assemble diagonally dominant M-matrix rows, for which
/// elimination is stable. Throws SingularSystem when a pivot degenerates.
inline std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                             std::vector<double> upper, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
    throw SingularSystem("tridiagonal system: inconsistent band sizes");
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1]))
      throw SingularSystem("tridiagonal system: zero pivot during elimination");
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1]))
    throw SingularSystem("tridiagonal system: zero pivot at back substitution");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    if (!std::isfinite(x[i])) throw SingularSystem("tridiagonal system: non-finite solution");
  }
  return x;
}

}  // namespace skewlab::detail

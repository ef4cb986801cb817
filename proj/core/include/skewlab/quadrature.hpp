#pragma once

#include <functional>

#include "skewlab/errors.hpp"

namespace skewlab {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// abs_tol. Intended for integrands smooth on the whole interval; callers
/// split at known kinks (the interface) and integrate piece by piece.
/// Throws QuadratureFailure when the recursion budget is exhausted before
/// the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10);

}  // namespace skewlab

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace specgap {

/// Default limit on state counts fed to the dense eigensolver.
inline constexpr std::size_t kDefaultStateCap = 10000;

/// Default limit on subgroup closure / symmetric group enumeration (10!).
inline constexpr std::size_t kDefaultClosureCap = 3628800;

namespace tol {
/// Relative tolerance for rate equality.
inline constexpr double rate_rel = 1e-9;
/// Absolute tolerance for rate comparisons near zero.
inline constexpr double rate_abs = 1e-12;
/// |lambda_0| must stay below this after eigendecomposition.
inline constexpr double eig_zero = 1e-8;
/// Default tolerance on spectral gap comparisons.
inline constexpr double gap = 1e-8;
/// Detailed-balance residual bound.
inline constexpr double balance = 1e-10;
/// Normalization defect allowed for stationary measures.
inline constexpr double measure_sum = 1e-12;
} // namespace tol

/// Mixed relative/absolute comparison: |a-b| <= max(abs, rel*max(|a|,|b|)).
inline bool nearly_equal(double a, double b,
                         double rel = tol::rate_rel,
                         double abs = tol::rate_abs) {
    const double diff = std::fabs(a - b);
    return diff <= std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

} // namespace specgap

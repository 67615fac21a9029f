#pragma once

#include <cstddef>
#include <vector>

#include "rys/xreal.hpp"

namespace rys {

/// ln Γ(x) for x > 0 at the precision of `x`.
///
/// Spouge's approximation with the coefficient count chosen from the target
/// digit count; coefficients are evaluated once per precision at twice the
/// target digits (their alternating sum cancels about that many) and cached.
/// Arguments in (0, 1) are shifted up by one with Γ(x) = Γ(x + 1) / x.
/// Relative error is below 10^(2-d) away from the roots x = 1 and x = 2,
/// where the absolute error obeys the same bound.
///
/// Throws DomainError for x <= 0.
XReal log_gamma(const XReal& x);

/// Partial sum of a hypergeometric series with its truncation data.
struct SeriesSum {
  XReal value;
  std::size_t terms = 0;  // number of terms included
  XReal last_term;        // magnitude of the last included term
};

/// ₁F₁(a; b; -z) for b > a > 0, z >= 0.
///
/// Evaluated as e^(-z) ₁F₁(b - a; b; z), a series whose terms are all
/// nonnegative. Summation stops once a term drops below 10^(-d-5) of the
/// partial sum and fails with ConvergenceError after
/// 10 (z + |a| + |b| + 50) terms. When `terms` is non-null it receives the
/// summed term sequence of the transformed series.
XReal kummer_1f1_neg(const XReal& a, const XReal& b, const XReal& z,
                     std::vector<XReal>* terms = nullptr);

/// The first `count` terms of ₂F₁(a, b; c; x); requires |x| < 1, c > 0.
SeriesSum gauss_2f1_trunc(const XReal& a, const XReal& b, const XReal& c, const XReal& x,
                          std::size_t count);

}  // namespace rys

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rys/xreal.hpp"

namespace rys {

/// Abscissa of the tanh-sinh map together with both endpoint distances,
/// which are formed without cancellation (1 ∓ x = e^(∓s) / cosh s).
struct TanhSinhNode {
  XReal x;
  XReal one_minus_x;
  XReal one_plus_x;
};

/// Writes f_0(x) .. f_{count-1}(x) into `out`.
using TanhSinhIntegrand = std::function<void(const TanhSinhNode&, std::span<XReal> out)>;

struct TanhSinhResult {
  std::vector<XReal> values;
  unsigned level = 0;
  double max_relative_change = 0;  // between the final two levels
  std::size_t evaluations = 0;
};

/// Integrates a family of functions over (-1, 1) with step halving.
///
/// Stops at the first level where every component changed by less than
/// 10^(-agreement_digits) relative to the previous level. Endpoint
/// singularities of power type are absorbed by the double-exponential decay.
/// Throws ConvergenceError after `max_level` halvings.
TanhSinhResult tanh_sinh(const TanhSinhIntegrand& f, std::size_t count, Precision p,
                         double agreement_digits, unsigned max_level = 12);

}  // namespace rys

#include "rys/polynomials.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <string>

#include "rys/errors.hpp"

namespace rys {

namespace {

std::ptrdiff_t idx(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

void require_range(std::size_t n, std::size_t lo, std::ptrdiff_t hi, const char* what) {
  if (idx(n) < idx(lo) || idx(n) > hi) {
    throw IndexError(std::string(what) + " index " + std::to_string(n) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }
}

// |sum of terms| / max |term|, with 0/0 taken as 0.
double relative_sum(std::initializer_list<XReal> terms) {
  XReal sum(terms.begin()->precision());
  XReal scale(terms.begin()->precision());
  for (const auto& t : terms) {
    sum += t;
    scale = max(scale, abs(t));
  }
  if (scale.is_zero()) return 0;
  return (abs(sum) / scale).to_double();
}

}  // namespace

PolyEval eval_all(const RecurrenceTable& rt, std::size_t n, const XReal& x_in) {
  if (n > rt.N()) throw IndexError("eval_all degree " + std::to_string(n) + " beyond table");
  const Precision p = rt.params().precision();
  PolyEval out{x_in.at(p), {}, {}, {}};
  const XReal& x = out.x;
  out.p.reserve(n + 1);
  out.dp.reserve(n + 1);
  out.ddp.reserve(n + 1);
  out.p.emplace_back(1, p);
  out.dp.emplace_back(p);
  out.ddp.emplace_back(p);
  if (n == 0) return out;
  out.p.push_back(x);
  out.dp.emplace_back(1, p);
  out.ddp.emplace_back(p);
  for (std::size_t k = 1; k < n; ++k) {
    const XReal& g = rt.gamma(idx(k));
    out.p.push_back(x * out.p[k] - g * out.p[k - 1]);
    out.dp.push_back(out.p[k] + x * out.dp[k] - g * out.dp[k - 1]);
    out.ddp.push_back(2 * out.dp[k] + x * out.ddp[k] - g * out.ddp[k - 1]);
  }
  return out;
}

PolyEval eval_all(const RecurrenceTable& rt, std::size_t n, double x) {
  return eval_all(rt, n, XReal(x, rt.params().precision()));
}

StructureCoeffs structure_coeffs(const RecurrenceTable& rt, std::size_t n) {
  require_range(n, 0, idx(rt.N()) - 2, "structure coefficient");
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const auto k = idx(n);
  const XReal& g1 = rt.gamma(k + 1);
  StructureCoeffs out;
  out.n = n;
  out.b_next = (static_cast<double>(n + 1) + 2 * w.lambda() + 2 * z -
                2 * z * (rt.gamma(k + 2) + g1 + rt.gamma(k))) * g1;
  out.a = -2 * z * g1 * rt.gamma(k) * rt.gamma(k - 1);
  return out;
}

double structure_residual(const RecurrenceTable& rt, std::size_t n, double x) {
  const StructureCoeffs c = structure_coeffs(rt, n);
  const PolyEval e = eval_all(rt, n + 2, x);
  const XReal zero(rt.params().precision());
  const XReal& p_nm2 = n >= 2 ? e.p[n - 2] : zero;
  return relative_sum({(1 - square(e.x)) * e.dp[n + 1], static_cast<double>(n + 1) * e.p[n + 2],
                       -c.b_next * e.p[n], -c.a * p_nm2});
}

XReal ladder_c(const RecurrenceTable& rt, std::size_t n, const XReal& x) {
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const auto k = idx(n);
  const XReal& g1 = rt.gamma(k + 1);
  return 2 * g1 * (static_cast<double>(n + 1) + w.lambda() + z - z * (rt.gamma(k + 2) + g1) - z * square(x));
}

XReal ladder_delta(const RecurrenceTable& rt, std::size_t n, const XReal& x) {
  return (2 * rt.params().z() * rt.gamma(idx(n) + 1) - static_cast<double>(n + 1)) * x;
}

double ladder_residual(const RecurrenceTable& rt, std::size_t n, double x_in) {
  require_range(n, 0, idx(rt.N()) - 2, "ladder");
  const PolyEval e = eval_all(rt, n + 1, x_in);
  const XReal& x = e.x;
  const XReal c = ladder_c(rt, n, x);
  // x arrives as a double, so C_n can only be resolved to machine precision.
  const XReal z = rt.params().z();
  const XReal size = 2 * rt.gamma(idx(n) + 1) * (static_cast<double>(n + 1) + abs(rt.params().lambda()) + z + z * square(x));
  if (abs(c) <= 10 * std::numeric_limits<double>::epsilon() * size) {
    throw SingularEvaluation("ladder coefficient C_" + std::to_string(n) + " vanishes at x = " + x.str(17));
  }
  const XReal lowered = ((1 - square(x)) * e.dp[n + 1] - ladder_delta(rt, n, x) * e.p[n + 1]) / c;
  const XReal scale = max(XReal(1, x.precision()), abs(e.p[n]));
  return (abs(lowered - e.p[n]) / scale).to_double();
}

double holonomic_residual(const RecurrenceTable& rt, std::size_t n, double x_in) {
  require_range(n, 1, idx(rt.N()) - 2, "holonomic");
  const PolyEval e = eval_all(rt, n + 1, x_in);
  const XReal& x = e.x;
  const XReal z = rt.params().z();
  const XReal& gn = rt.gamma(idx(n));
  const XReal& g1 = rt.gamma(idx(n) + 1);

  const XReal phi = 1 - square(x);
  const XReal dphi = -2 * x;
  const XReal c = ladder_c(rt, n, x);
  const XReal dc = -4 * z * g1 * x;
  const XReal c_prev = ladder_c(rt, n - 1, x);
  const XReal delta = ladder_delta(rt, n, x);
  const XReal ddelta = 2 * z * g1 - static_cast<double>(n + 1);
  // Raising relation: φ P'_n + E P_n = C_{n-1} P_{n+1} / γ_n.
  const XReal e_raise = ladder_delta(rt, n - 1, x) + c_prev * x / gn;

  const XReal coef2 = c * square(phi);
  const XReal coef1 = phi * (c * dphi - c * delta - phi * dc - c * e_raise);
  const XReal coef0 = -c * phi * ddelta + delta * (phi * dc + c * e_raise) + square(c) * c_prev / gn;
  return relative_sum({coef2 * e.ddp[n + 1], coef1 * e.dp[n + 1], coef0 * e.p[n + 1]});
}

double holonomic_residual_printed(const RecurrenceTable& rt, std::size_t n, double x_in) {
  require_range(n, 1, idx(rt.N()) - 2, "holonomic");
  const PolyEval e = eval_all(rt, n + 1, x_in);
  const XReal& x = e.x;
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const XReal& gn = rt.gamma(idx(n));
  const XReal& g1 = rt.gamma(idx(n) + 1);
  const double nd = static_cast<double>(n);

  const XReal x2 = square(x);
  const XReal phi = 1 - x2;
  const XReal c = ladder_c(rt, n, x);
  const XReal c_prev = ladder_c(rt, n - 1, x);
  const XReal k = nd + 1 - 2 * z * g1;

  const XReal coef2 = c * square(phi);
  const XReal coef1 = -2 * phi * (2 * z * x * g1 * phi + x * (lambda + z + 0.5 - z * x2) * c);
  const XReal coef0 = (4 * square(x2) * z + 2 * g1 * x2 * z - (nd + 2 * lambda + 2 * z + 1) * x2 + 1) * k * c +
                      square(c) * c_prev / gn + 8 * g1 * k * z * x2 * phi;
  return relative_sum({coef2 * e.ddp[n + 1], coef1 * e.dp[n + 1], coef0 * e.p[n + 1]});
}

XReal christoffel_darboux_diagonal(const RecurrenceTable& rt, std::size_t n, double x) {
  const PolyEval e = eval_all(rt, n, x);
  XReal sum(rt.params().precision());
  for (std::size_t k = 0; k <= n; ++k) sum += square(e.p[k]) / rt.h(k);
  return sum;
}

}  // namespace rys

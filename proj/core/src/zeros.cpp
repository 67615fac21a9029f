#include "rys/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rys/errors.hpp"
#include "rys/polynomials.hpp"
#include "rys/quadrature.hpp"

namespace rys {

namespace {

constexpr double kSingularDistance = 10 * std::numeric_limits<double>::epsilon();

void check_position(const XReal& x, const ZeroContext& ctx) {
  const XReal x2 = square(x);
  if (abs(1 - x2) < kSingularDistance || abs(x2 - ctx.beta2) < kSingularDistance) {
    throw SingularEvaluation("charge at x = " + x.str(17) + " sits on a fixed charge");
  }
}

}  // namespace

ZeroSet zeros(const RecurrenceTable& rt, std::size_t n) {
  if (n < 1) throw DomainError("zeros need degree n >= 1");
  if (n > rt.N()) throw IndexError("zeros of P_" + std::to_string(n) + " beyond table end " + std::to_string(rt.N()));

  const JacobiMatrix jm = jacobi_matrix(rt, n);
  std::vector<double> d(n, 0.0), e, first(n, 0.0);
  for (const auto& v : jm.off_diagonal) e.push_back(v.to_double());
  first[0] = 1;
  tridiagonal_ql(d, std::move(e), first);

  std::vector<double> polished(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PolyEval pe = eval_all(rt, n, d[k]);
    const XReal x = pe.x - pe.p[n] / pe.dp[n];
    const PolyEval check = eval_all(rt, n, x);
    if (abs(check.p[n]) > 1e-10 * abs(check.dp[n])) {
      throw ConvergenceError("zero " + std::to_string(k + 1) + " of P_" + std::to_string(n) + " did not polish");
    }
    polished[k] = x.to_double();
  }
  // Enforce the exact symmetry x_k = -x_{n+1-k}; the middle zero of odd n is 0.
  ZeroSet out{n, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.zeros[k] = 0.5 * (polished[k] - polished[n - 1 - k]);
  }
  return out;
}

double ZeroContext::beta() const { return sqrt(abs(beta2)).to_double(); }

XReal ZeroContext::ladder_r() const { return z * (beta2 - 1); }

ZeroContext zero_context(const RecurrenceTable& rt, std::size_t n) {
  const WeightParams& w = rt.params();
  if (w.gegenbauer_limit()) throw DomainError("beta_n is undefined at z = 0");
  if (n + 1 > rt.N()) throw IndexError("beta_" + std::to_string(n) + " needs gamma_" + std::to_string(n + 1));
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const auto k = static_cast<std::ptrdiff_t>(n);
  XReal beta2 = (static_cast<double>(n) + lambda) / z + 1 - (rt.gamma(k) + rt.gamma(k + 1));
  return ZeroContext{n, std::move(beta2), z, lambda};
}

std::vector<XReal> electrostatic_gradient(std::span<const double> points, const ZeroContext& ctx) {
  const Precision p = ctx.z.precision();
  std::vector<XReal> x;
  x.reserve(points.size());
  for (double v : points) x.emplace_back(v, p);

  std::vector<XReal> grad;
  grad.reserve(x.size());
  const XReal field = 2 * ctx.lambda - 1;
  for (std::size_t k = 0; k < x.size(); ++k) {
    check_position(x[k], ctx);
    const XReal x2 = square(x[k]);
    XReal g = 2 * x[k] / (x2 - ctx.beta2) + 2 * x[k] / (1 - x2);
    g += field * x[k] / (1 - x2) + 2 * ctx.z * x[k];
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == k) continue;
      const XReal gap = x[j] - x[k];
      if (gap.is_zero()) throw SingularEvaluation("coincident charges");
      g += 2 / gap;
    }
    grad.push_back(std::move(g));
  }
  return grad;
}

double electrostatic_residual(const ZeroSet& zs, const ZeroContext& ctx) {
  if (zs.n != ctx.n) {
    throw DomainError("zero set of order " + std::to_string(zs.n) + " needs beta_" + std::to_string(zs.n) +
                      ", got beta_" + std::to_string(ctx.n));
  }
  double worst = 0;
  for (const auto& g : electrostatic_gradient(zs.zeros, ctx)) worst = std::max(worst, abs(g).to_double());
  return worst;
}

double electrostatic_energy(std::span<const double> points, const ZeroContext& ctx) {
  const Precision p = ctx.z.precision();
  std::vector<XReal> x;
  x.reserve(points.size());
  for (double v : points) x.emplace_back(v, p);

  const XReal field = ctx.lambda - 0.5;
  XReal energy(p);
  for (std::size_t k = 0; k < x.size(); ++k) {
    check_position(x[k], ctx);
    const XReal x2 = square(x[k]);
    if (!(x2 < 1)) throw DomainError("charges must lie inside (-1, 1)");
    const XReal inside = log(1 - x2);
    energy += log(abs(x2 - ctx.beta2)) - inside - field * inside + ctx.z * x2;
    for (std::size_t j = k + 1; j < x.size(); ++j) {
      const XReal gap = abs(x[j] - x[k]);
      if (gap.is_zero()) throw SingularEvaluation("coincident charges have infinite energy");
      energy -= 2 * log(gap);
    }
  }
  return energy.to_double();
}

std::vector<double> zero_velocities(const RecurrenceTable& rt, std::size_t n) {
  const ZeroContext ctx = zero_context(rt, n);
  const ZeroSet zs = zeros(rt, n);
  std::vector<double> out;
  out.reserve(n);
  for (double v : zs.zeros) {
    const XReal x(v, ctx.z.precision());
    const XReal x2 = square(x);
    out.push_back((-x * (1 - x2) / (2 * ctx.z * (ctx.beta2 - x2))).to_double());
  }
  return out;
}

double zero_velocity(const RecurrenceTable& rt, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw IndexError("zero index " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  return zero_velocities(rt, n)[k - 1];
}

XReal dz_poly(const RecurrenceTable& rt, std::size_t n, double x) {
  if (n < 2) return XReal(rt.params().precision());
  const PolyEval e = eval_all(rt, n - 2, x);
  const auto k = static_cast<std::ptrdiff_t>(n);
  return rt.gamma(k) * rt.gamma(k - 1) * e.p[n - 2];
}

}  // namespace rys

#include "rys/flows.hpp"

#include <cmath>
#include <map>
#include <string>

#include "rys/errors.hpp"
#include "rys/special.hpp"
#include "rys/tanh_sinh.hpp"

namespace rys {

namespace {

std::ptrdiff_t idx(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

double relative_gap(const XReal& lhs, const XReal& rhs) {
  const XReal scale = max(abs(lhs), abs(rhs));
  if (scale.is_zero()) return 0;
  return (abs(lhs - rhs) / scale).to_double();
}

double normalized(const XReal& lhs, const XReal& rhs) {
  const XReal scale = max(max(abs(lhs), abs(rhs)), XReal(1, lhs.precision()));
  return (abs(lhs - rhs) / scale).to_double();
}

// Both sides of the h-flow identity for given h_n, h_{n-1} and derivatives.
double h_identity(const WeightParams& w, std::size_t n, const XReal& hn, const XReal& hm, const XReal& dhn,
                  const XReal& dhm) {
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const double nd = static_cast<double>(n);
  const XReal lhs = ((nd + lambda) * hn + z * dhn) * ((nd - 1 + lambda) * hm + z * dhm);
  const XReal rhs = (nd / 2 * hm - z * hn) * ((2 * lambda + nd - 1) / 2 * hm - z * hn);
  return relative_gap(lhs, rhs);
}

double chazy_sides(const WeightParams& w, std::size_t n, const XReal& g, const XReal& dg, const XReal& ddg) {
  const XReal z = w.z();
  const XReal mu = w.lambda() - 0.5;  // λ - 1/2
  const double nd = static_cast<double>(n);
  const XReal lhs = 2 / z * square(2 * g - z) *
                    ((nd + mu - 2 * g) * (4 * square(g) - square(mu)) + 2 * z * square(dg));
  const XReal rhs = square(4 * g * (3 * g - nd - mu) - square(mu) - 2 * z * ddg - dg);
  return normalized(lhs, rhs);
}

XReal g_value(const RecurrenceTable& rt, std::size_t n) {
  const WeightParams& w = rt.params();
  return static_cast<double>(n) / 2 + w.lambda() / 2 - 0.25 - w.z() * rt.gamma(idx(n));
}

void require_window(const FlowState& state, std::size_t n, std::size_t lo, const char* what) {
  if (n < lo || n > state.window()) {
    throw IndexError(std::string(what) + " index " + std::to_string(n) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(state.window()) + "]");
  }
}

}  // namespace

FlowState flow_state(const WeightParams& params, std::size_t N) {
  if (N < 1) throw DomainError("flow window needs N >= 1");
  return FlowState{params, recurrence(params, N + 2).gammas()};
}

TodaDerivative toda_rhs(const FlowState& state) {
  const std::size_t last = state.gamma.size() - 1;
  const Precision p = state.params.precision();
  TodaDerivative out{std::vector<XReal>(state.gamma.size(), XReal(p)), last - 1};
  for (std::size_t n = 1; n < last; ++n) {
    out.values[n] = state.gamma[n] * (state.gamma[n - 1] - state.gamma[n + 1]);
  }
  return out;
}

FlowState toda_integrate(const FlowState& state, double dz, std::size_t steps) {
  if (dz == 0) return state;
  const auto required = static_cast<std::size_t>(std::ceil(std::abs(dz) / 0.01));
  if (steps < required) {
    throw DomainError("toda_integrate needs at least " + std::to_string(required) + " steps for dz = " +
                      shortest_decimal(dz));
  }
  const std::size_t N = state.window();
  const WeightParams& w = state.params;
  const double z0 = w.z_value();
  const double h = dz / static_cast<double>(steps);
  const Precision p = w.precision();
  const XReal hx(h, p);

  // Guards keyed by half-step index so shared stage points are computed once.
  std::map<std::size_t, std::pair<XReal, XReal>> guards;
  auto guard_at = [&](std::size_t half_steps) -> const std::pair<XReal, XReal>& {
    auto it = guards.find(half_steps);
    if (it == guards.end()) {
      const double z = z0 + 0.5 * static_cast<double>(half_steps) * h;
      if (z < 0) throw DomainError("flow left z >= 0");
      const RecurrenceTable fresh = recurrence(w.with_z(z), N + 2);
      it = guards.emplace(half_steps, std::make_pair(fresh.gamma(idx(N + 1)), fresh.gamma(idx(N + 2)))).first;
      if (guards.size() > 4) guards.erase(guards.begin());
    }
    return it->second;
  };

  auto rhs = [&](const std::vector<XReal>& y, std::size_t half_steps) {
    const auto& g = guard_at(half_steps);
    std::vector<XReal> d(N + 1, XReal(p));
    for (std::size_t n = 1; n <= N; ++n) {
      const XReal& next = n < N ? y[n + 1] : g.first;
      d[n] = y[n] * (y[n - 1] - next);
    }
    return d;
  };
  auto axpy = [&](const std::vector<XReal>& y, const std::vector<XReal>& k, const XReal& a) {
    std::vector<XReal> out = y;
    for (std::size_t n = 1; n <= N; ++n) out[n] += a * k[n];
    return out;
  };

  std::vector<XReal> y(state.gamma.begin(), state.gamma.begin() + idx(N + 1));
  const XReal half = hx / 2;
  for (std::size_t i = 0; i < steps; ++i) {
    const std::size_t base = 2 * i;
    const auto k1 = rhs(y, base);
    const auto k2 = rhs(axpy(y, k1, half), base + 1);
    const auto k3 = rhs(axpy(y, k2, half), base + 1);
    const auto k4 = rhs(axpy(y, k3, hx), base + 2);
    for (std::size_t n = 1; n <= N; ++n) {
      y[n] += hx / 6 * (k1[n] + 2 * k2[n] + 2 * k3[n] + k4[n]);
      if (!(y[n] > 0)) {
        throw StepSizeError("gamma_" + std::to_string(n) + " lost positivity; use more than " +
                            std::to_string(steps) + " steps");
      }
    }
  }

  const auto& g = guard_at(2 * steps);
  FlowState out{w.with_z(z0 + dz), std::move(y)};
  out.gamma.push_back(g.first);
  out.gamma.push_back(g.second);
  return out;
}

double h_flow_residual(const RecurrenceTable& rt, std::size_t n) {
  if (n < 1 || n + 1 > rt.N()) throw IndexError("h-flow residual index " + std::to_string(n) + " out of range");
  const auto k = idx(n);
  const XReal dhn = -(rt.gamma(k + 1) + rt.gamma(k)) * rt.h(n);
  const XReal dhm = -(rt.gamma(k) + rt.gamma(k - 1)) * rt.h(n - 1);
  return h_identity(rt.params(), n, rt.h(n), rt.h(n - 1), dhn, dhm);
}

double h_flow_residual_fd(const RecurrenceTable& minus, const RecurrenceTable& rt, const RecurrenceTable& plus,
                          double step, std::size_t n) {
  if (n < 1 || n > std::min({minus.N(), rt.N(), plus.N()})) {
    throw IndexError("h-flow residual index " + std::to_string(n) + " out of range");
  }
  const XReal two_h(2 * step, rt.params().precision());
  const XReal dhn = (plus.h(n) - minus.h(n)) / two_h;
  const XReal dhm = (plus.h(n - 1) - minus.h(n - 1)) / two_h;
  return h_identity(rt.params(), n, rt.h(n), rt.h(n - 1), dhn, dhm);
}

GFlow g_flow(const FlowState& state, std::size_t n) {
  require_window(state, n, 1, "g flow");
  const XReal z = state.params.z();
  const auto& y = state.gamma;
  const TodaDerivative d = toda_rhs(state);
  const auto& dy = d.values;
  const XReal ddg_n = dy[n] * (y[n - 1] - y[n + 1]) + y[n] * (dy[n - 1] - dy[n + 1]);
  GFlow out;
  out.g = static_cast<double>(n) / 2 + state.params.lambda() / 2 - 0.25 - z * y[n];
  out.dg = -y[n] - z * dy[n];
  out.ddg = -2 * dy[n] - z * ddg_n;
  return out;
}

double chazy_residual(const FlowState& state, std::size_t n) {
  if (state.params.gegenbauer_limit()) throw DomainError("Chazy residual divides by z; z = 0 not allowed");
  require_window(state, n, 2, "Chazy residual");
  const GFlow g = g_flow(state, n);
  return chazy_sides(state.params, n, g.g, g.dg, g.ddg);
}

double chazy_residual_fd(const RecurrenceTable& minus, const RecurrenceTable& rt, const RecurrenceTable& plus,
                         double step, std::size_t n) {
  if (rt.params().gegenbauer_limit()) throw DomainError("Chazy residual divides by z; z = 0 not allowed");
  if (n < 2 || n > std::min({minus.N(), rt.N(), plus.N()})) {
    throw IndexError("Chazy residual index " + std::to_string(n) + " out of range");
  }
  const Precision p = rt.params().precision();
  const XReal h(step, p);
  const XReal g = g_value(rt, n);
  const XReal gm = g_value(minus, n);
  const XReal gp = g_value(plus, n);
  return chazy_sides(rt.params(), n, g, (gp - gm) / (2 * h), (gp - 2 * g + gm) / square(h));
}

StieltjesEval stieltjes_trunc(const MomentTable& mt, const XReal& t_in, std::size_t M) {
  const Precision p = mt.params().precision();
  const XReal t = t_in.at(p);
  if (!(abs(t) > 1)) throw DomainError("Stieltjes series diverges for |t| <= 1");
  if (2 * M > mt.max_index()) throw IndexError("Stieltjes truncation M = " + std::to_string(M) + " beyond table");

  const XReal inv2 = 1 / square(t);
  StieltjesEval out{t, M, XReal(p), XReal(p), XReal(p)};
  XReal power = 1 / t;  // t^{-(2k+1)}
  for (std::size_t k = 0; k <= M; ++k) {
    out.value += mt.even(k) * power;
    out.derivative -= static_cast<double>(2 * k + 1) * mt.even(k) * power / t;
    power *= inv2;
  }
  // Moments decrease, so the omitted terms are bounded by a geometric series.
  const XReal& next = 2 * M + 2 <= mt.max_index() ? mt.even(M + 1) : mt.even(M);
  out.tail = abs(next * power) / (1 - inv2);
  return out;
}

StieltjesEval stieltjes_trunc(const MomentTable& mt, double t, std::size_t M) {
  return stieltjes_trunc(mt, XReal(t, mt.params().precision()), M);
}

StieltjesOdeCheck stieltjes_ode_residual_t(const MomentTable& mt, double t_in, std::size_t M,
                                           StieltjesVariant variant) {
  if (std::abs(t_in) < 2) throw DomainError("Stieltjes ODE checks need |t| >= 2");
  if (M < 1 || 2 * M + 2 > mt.max_index()) throw IndexError("Stieltjes t-ODE check needs s_0 .. s_2M+2");
  const StieltjesEval se = stieltjes_trunc(mt, t_in, M);
  const WeightParams& w = mt.params();
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const XReal& t = se.t;
  const XReal t2 = square(t);
  const XReal& s0 = mt.even(0);
  const XReal& s2 = mt.even(1);
  const XReal c = 2 * z + 2 * lambda - 1;

  XReal lhs = (1 - t2) * se.derivative;
  XReal rhs = -2 * z * s2;
  switch (variant) {
    case StieltjesVariant::derived:
      lhs += t * (c - 2 * z * t2) * se.value;
      rhs += (c + 1 - 2 * z * t2) * s0;
      break;
    case StieltjesVariant::proof_display:
      lhs += t * (c * t - 2 * z * t2) * se.value;
      rhs += (c - 2 * z * t2) * s0;
      break;
    case StieltjesVariant::statement:
      lhs += t * (c - 2 * z * t2) * se.value;
      rhs += ((c - 1) * t - 2 * z * t2) * s0;
      break;
  }

  const auto m2 = static_cast<long>(2 * M);
  const XReal remainder = 2 * z * mt.even(M + 1) * pow(t, -m2) -
                          static_cast<double>(2 * M + 1) * mt.even(M) * pow(t, -m2 - 2);
  const XReal diff = lhs - rhs;
  return StieltjesOdeCheck{abs(diff).to_double(), abs(remainder).to_double(), abs(diff - remainder).to_double()};
}

StieltjesZCheck stieltjes_ode_residual_z(const MomentTable& mt, double t_in, std::size_t M) {
  if (std::abs(t_in) < 2) throw DomainError("Stieltjes ODE checks need |t| >= 2");
  if (2 * M + 2 > mt.max_index()) throw IndexError("Stieltjes z-ODE check needs s_0 .. s_2M+2");
  const StieltjesEval se = stieltjes_trunc(mt, t_in, M);
  const XReal& t = se.t;
  const XReal inv2 = 1 / square(t);

  XReal dz(t.precision());
  XReal power = 1 / t;
  for (std::size_t k = 0; k <= M; ++k) {
    dz -= mt.even(k + 1) * power;
    power *= inv2;
  }
  const XReal diff = dz + square(t) * se.value - t * mt.even(0);
  // The shifted sums telescope to exactly one boundary term.
  const XReal remainder = -mt.even(M + 1) * power * square(t);
  return StieltjesZCheck{abs(diff).to_double(), abs(remainder).to_double(), abs(diff - remainder).to_double()};
}

StieltjesClosedForm stieltjes_closed_form(const WeightParams& params, double t_in) {
  if (std::abs(t_in) < 2) throw DomainError("Stieltjes closed form is evaluated for |t| >= 2");
  const Precision out = params.precision();
  const Precision p = out.plus(10);
  const XReal t(t_in, p);
  const XReal t2 = square(t);
  const XReal z = params.z(p);
  const XReal lambda = params.lambda(p);
  const XReal b = lambda + 1;
  const XReal half(0.5, p);
  const XReal prefactor = sqrt(pi(p)) * exp(log_gamma(lambda + 0.5) - log_gamma(b));

  const XReal x = 1 / t2;
  const auto count = static_cast<std::size_t>(std::ceil((p.digits + 5) / std::log10(t_in * t_in))) + 10;
  const SeriesSum f = gauss_2f1_trunc(half, XReal(1, p), b, x, count);
  XReal inner = prefactor / t * f.value;

  if (!z.is_zero()) {
    // r = z (1 + u) / 2 maps (-1, 1) onto (0, z).
    auto integrand = [&](const TanhSinhNode& node, std::span<XReal> o) {
      const XReal r = z * node.one_plus_x / 2;
      o[0] = exp(t2 * r) * prefactor * kummer_1f1_neg(half, b, r) * z / 2;
    };
    const auto integral = tanh_sinh(integrand, 1, p, p.digits / 2.0);
    inner += t * integral.values[0];
  }
  return StieltjesClosedForm{(exp(-z * t2) * inner).at(out), f.last_term.at(out)};
}

}  // namespace rys

#include "rys/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rys/errors.hpp"

namespace rys {

namespace {

void require_range(std::size_t n, std::size_t lo, std::size_t hi, const char* what) {
  if (n < lo || n > hi) {
    throw IndexError(std::string(what) + " index " + std::to_string(n) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }
}

double normalized(const XReal& lhs, const XReal& rhs) {
  const XReal scale = max(max(abs(lhs), abs(rhs)), XReal(1, lhs.precision()));
  return (abs(lhs - rhs) / scale).to_double();
}

std::vector<XReal> rounded(const std::vector<XReal>& values, Precision p) {
  std::vector<XReal> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.at(p));
  return out;
}

}  // namespace

RecurrenceTable::RecurrenceTable(WeightParams params, std::vector<XReal> gammas, std::vector<XReal> norms)
    : params_(std::move(params)), gammas_(std::move(gammas)), norms_(std::move(norms)),
      zero_(params_.precision()) {
  if (gammas_.empty() || gammas_.size() != norms_.size()) {
    throw DomainError("recurrence table needs matching gamma and norm sequences");
  }
}

const XReal& RecurrenceTable::gamma(std::ptrdiff_t n) const {
  if (n <= 0) return zero_;
  if (static_cast<std::size_t>(n) > N()) {
    throw IndexError("gamma_" + std::to_string(n) + " beyond table end " + std::to_string(N()));
  }
  return gammas_[static_cast<std::size_t>(n)];
}

const XReal& RecurrenceTable::h(std::size_t n) const {
  if (n > N()) throw IndexError("h_" + std::to_string(n) + " beyond table end " + std::to_string(N()));
  return norms_[n];
}

RecurrenceTable RecurrenceTable::at_digits(unsigned digits) const {
  const Precision p(digits);
  return RecurrenceTable(params_.with_digits(digits), rounded(gammas_, p), rounded(norms_, p));
}

unsigned hankel_guard_digits(std::size_t N) {
  return static_cast<unsigned>(std::ceil(0.8 * static_cast<double>(N))) + 10;
}

RecurrenceTable gammas_from_moments(const MomentTable& table, std::size_t N) {
  if (N < 1) throw DomainError("recurrence needs N >= 1");
  if (2 * N > table.max_index()) {
    throw IndexError("Hankel route for N = " + std::to_string(N) + " needs moments up to s_" +
                     std::to_string(2 * N));
  }
  const Precision p = table.params().precision();
  const std::size_t size = N + 1;
  // Pivots below this fraction of the diagonal entry carry no correct digits.
  const XReal floor = pow(XReal(10, p), 5 - static_cast<long>(p.digits));

  std::vector<std::vector<XReal>> L(size, std::vector<XReal>(size, XReal(p)));
  std::vector<XReal> norms;
  norms.reserve(size);
  for (std::size_t j = 0; j < size; ++j) {
    XReal pivot = table.s(2 * j);
    for (std::size_t k = 0; k < j; ++k) pivot -= square(L[j][k]);
    if (!(pivot > 0) || pivot < floor * table.s(2 * j)) throw PrecisionExhausted(j, p.digits);
    L[j][j] = sqrt(pivot);
    norms.push_back(pivot);
    for (std::size_t i = j + 1; i < size; ++i) {
      // Even and odd indices decouple for a symmetric weight.
      if ((i + j) % 2 != 0) continue;
      XReal v = table.s(i + j);
      for (std::size_t k = 0; k < j; ++k) v -= L[i][k] * L[j][k];
      L[i][j] = v / L[j][j];
    }
  }

  std::vector<XReal> gammas;
  gammas.reserve(size);
  gammas.emplace_back(p);
  for (std::size_t n = 1; n < size; ++n) gammas.push_back(norms[n] / norms[n - 1]);
  return RecurrenceTable(table.params(), std::move(gammas), std::move(norms));
}

RecurrenceTable recurrence(const WeightParams& params, std::size_t N) {
  const WeightParams guarded = params.with_digits(params.digits() + hankel_guard_digits(N));
  return gammas_from_moments(moment_table(guarded, N), N).at_digits(params.digits());
}

RecurrenceTable gammas_laguerre_freud(const WeightParams& params, const XReal& gamma1, std::size_t N) {
  if (params.gegenbauer_limit()) throw DomainError("Laguerre-Freud propagation divides by z; z = 0 not allowed");
  if (N < 2) throw DomainError("Laguerre-Freud propagation needs N >= 2");
  if (!(gamma1 > 0)) throw PropagationSingular(1);

  const Precision p = gamma1.precision();
  const WeightParams wp = params.with_digits(p.digits);
  const XReal z = wp.z();
  const XReal lambda = wp.lambda();
  const XReal tiny = pow(XReal(10, p), 5 - static_cast<long>(p.digits));

  std::vector<XReal> g;
  g.reserve(N + 1);
  g.emplace_back(p);
  g.push_back(gamma1);
  // n = 1: the factor (λ - zγ_1) cancels, γ_1 (1 + λ - z(γ_2 + γ_1)) = 1/2 - zγ_1.
  g.push_back((1 + lambda) / z - gamma1 - (0.5 - z * gamma1) / (z * gamma1));
  if (!(g[2] > 0)) throw PropagationSingular(1);

  for (std::size_t n = 2; n < N; ++n) {
    const double nd = static_cast<double>(n);
    const XReal factor = nd - 1 + lambda - z * (g[n] + g[n - 1]);
    const XReal divisor = z * g[n] * factor;
    if (abs(factor) < tiny * (nd + abs(lambda))) throw PropagationSingular(n);
    const XReal rhs = (nd / 2 - z * g[n]) * ((nd - 1) / 2 + lambda - z * g[n]);
    XReal next = (nd + lambda) / z - g[n] - rhs / divisor;
    if (!(next > 0)) throw PropagationSingular(n);
    g.push_back(std::move(next));
  }

  const XReal s0 = moment(wp, 0);
  std::vector<XReal> norms;
  norms.reserve(N + 1);
  norms.push_back(s0);
  for (std::size_t n = 1; n <= N; ++n) norms.push_back(norms.back() * g[n]);
  return RecurrenceTable(wp, std::move(g), std::move(norms));
}

unsigned laguerre_freud_guard_digits(const WeightParams& params, std::size_t N) {
  const double z = params.z_value();
  const double per_step = 2.0 + (z > 0 ? std::max(0.0, std::log10(1.0 / z)) : 0.0);
  return 10 + static_cast<unsigned>(std::ceil(static_cast<double>(N) * per_step));
}

RecurrenceTable laguerre_freud_oracle(const WeightParams& params, std::size_t N) {
  if (params.gegenbauer_limit()) throw DomainError("Laguerre-Freud propagation divides by z; z = 0 not allowed");
  const WeightParams guarded = params.with_digits(params.digits() + laguerre_freud_guard_digits(params, N));
  const XReal gamma1 = moment(guarded, 2) / moment(guarded, 0);
  return gammas_laguerre_freud(guarded, gamma1, N).at_digits(params.digits());
}

double laguerre_freud_residual(const RecurrenceTable& rt, std::size_t n) {
  if (rt.N() < 3) throw IndexError("Laguerre-Freud residual needs N >= 3");
  require_range(n, 1, rt.N() - 2, "Laguerre-Freud residual");
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const auto k = static_cast<std::ptrdiff_t>(n);
  const double nd = static_cast<double>(n);
  const XReal value = (z + lambda + nd + 1 - z * rt.gamma(k + 2) - z * rt.gamma(k + 1)) * rt.gamma(k + 1) -
                      (z + lambda + nd - 1 - z * rt.gamma(k) - z * rt.gamma(k - 1)) * rt.gamma(k);
  return abs(value - 0.5).to_double();
}

double cubic_identity_residual(const RecurrenceTable& rt, std::size_t n) {
  if (rt.N() < 2) throw IndexError("cubic identity residual needs N >= 2");
  require_range(n, 1, rt.N() - 1, "cubic identity residual");
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  const auto k = static_cast<std::ptrdiff_t>(n);
  const double nd = static_cast<double>(n);
  const XReal& g = rt.gamma(k);
  const XReal lhs = g * (nd + lambda - z * (rt.gamma(k + 1) + g)) * (nd - 1 + lambda - z * (g + rt.gamma(k - 1)));
  const XReal rhs = (nd / 2 - z * g) * ((nd - 1) / 2 + lambda - z * g);
  return normalized(lhs, rhs);
}

GTable g_table(const RecurrenceTable& rt) {
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const XReal base = w.lambda() / 2 - 0.25;
  GTable out{w, {}};
  out.g.reserve(rt.N() + 1);
  for (std::size_t n = 0; n <= rt.N(); ++n) {
    out.g.push_back(static_cast<double>(n) / 2 + base - z * rt.gamma(static_cast<std::ptrdiff_t>(n)));
  }
  return out;
}

double painleve_residual(const GTable& gt, std::size_t n) {
  if (gt.g.size() < 3) throw IndexError("Painleve residual needs N >= 2");
  require_range(n, 1, gt.g.size() - 2, "Painleve residual");
  const XReal z = gt.params.z();
  const XReal base = gt.params.lambda() / 2 - 0.25;
  const XReal& g = gt.g[n];
  const XReal lhs = (static_cast<double>(n) / 2 + base - g) * (gt.g[n + 1] + g) * (g + gt.g[n - 1]);
  const XReal rhs = z * square(g) - z * square(base);
  return normalized(lhs, rhs);
}

LadderData ladder_data(const RecurrenceTable& rt, std::size_t n) {
  require_range(n, 0, rt.N() - 1, "ladder data");
  const WeightParams& w = rt.params();
  const XReal z = w.z();
  const XReal lambda = w.lambda();
  auto T = [&](std::size_t m) { return static_cast<double>(m) / 2 - z * rt.gamma(static_cast<std::ptrdiff_t>(m)); };
  auto R = [&](std::size_t m) {
    const auto k = static_cast<std::ptrdiff_t>(m);
    return static_cast<double>(m) + lambda - z * (rt.gamma(k + 1) + rt.gamma(k));
  };

  LadderData out{n, T(n), R(n), std::nullopt};
  if (n + 2 <= rt.N()) {
    const XReal t1 = T(n + 1);
    const XReal lhs = rt.gamma(static_cast<std::ptrdiff_t>(n + 1)) * R(n + 1) * out.R;
    const XReal rhs = t1 * (t1 + lambda - 0.5);
    out.product_residual = normalized(lhs, rhs);
  }
  return out;
}

XReal gegenbauer_gamma(const XReal& lambda, std::size_t n) {
  if (n == 0) return XReal(lambda.precision());
  // n = 1 written without the removable 0/0 at λ = 0.
  if (n == 1) return 1 / (2 * (lambda + 1));
  const double nd = static_cast<double>(n);
  return nd * (nd - 1 + 2 * lambda) / (4 * (nd + lambda) * (nd - 1 + lambda));
}

}  // namespace rys

#include "rys/moments.hpp"

#include <string>

#include "rys/errors.hpp"
#include "rys/special.hpp"
#include "rys/tanh_sinh.hpp"

namespace rys {

namespace {

void require_even(std::size_t m) {
  if (m % 2 != 0) throw DomainError("odd moment index " + std::to_string(m) + " requested; odd moments vanish");
}

}  // namespace

MomentTable::MomentTable(WeightParams params, std::vector<XReal> even, MomentSource source)
    : params_(std::move(params)), even_(std::move(even)), source_(source) {
  if (even_.empty()) throw DomainError("moment table needs at least s_0");
}

XReal MomentTable::s(std::size_t m) const {
  if (m > max_index()) {
    throw IndexError("moment s_" + std::to_string(m) + " beyond table end " + std::to_string(max_index()));
  }
  if (m % 2 != 0) return XReal(params_.precision());
  return even_[m / 2];
}

const XReal& MomentTable::even(std::size_t k) const {
  if (k >= even_.size()) throw IndexError("moment s_" + std::to_string(2 * k) + " beyond table end");
  return even_[k];
}

XReal moment(const WeightParams& params, std::size_t m) {
  require_even(m);
  const Precision out = params.precision();
  const Precision p = out.plus(5);
  const XReal n(static_cast<long>(m / 2), p);
  const XReal lambda = params.lambda(p);
  const XReal a = n + 0.5;
  const XReal b = lambda + n + 1;
  const XReal log_prefactor = log_gamma(a) + log_gamma(lambda + 0.5) - log_gamma(b);
  return (exp(log_prefactor) * kummer_1f1_neg(a, b, params.z(p))).at(out);
}

MomentTable moment_table(const WeightParams& params, std::size_t M) {
  if (M < 1) throw DomainError("moment table needs M >= 1");
  std::vector<XReal> even;
  even.reserve(M + 1);
  for (std::size_t k = 0; k <= M; ++k) even.push_back(moment(params, 2 * k));
  return MomentTable(params, std::move(even), MomentSource::closed_form);
}

double moment_recurrence_residual(const MomentTable& table, std::size_t n) {
  if (n % 2 == 0) throw DomainError("moment recurrence residual needs odd n");
  if (n + 3 > table.max_index()) {
    throw IndexError("moment recurrence at n = " + std::to_string(n) + " needs s_" + std::to_string(n + 3));
  }
  const WeightParams& w = table.params();
  const XReal z = w.z();
  const XReal lhs = 2 * z * table.s(n + 3) -
                    (static_cast<double>(n + 1) + 2 * z + 2 * w.lambda()) * table.s(n + 1) +
                    static_cast<double>(n) * table.s(n - 1);
  return (abs(lhs) / table.s(n + 1)).to_double();
}

MomentTable moment_oracle_table(const WeightParams& params, std::size_t M) {
  const Precision p = params.precision();
  const Precision q = p.plus(10);
  const XReal z = params.z(q);
  const XReal exponent = params.lambda(q) - 0.5;
  const bool trivial_exponent = exponent.is_zero();

  auto integrand = [&](const TanhSinhNode& node, std::span<XReal> out) {
    const XReal x2 = square(node.x);
    XReal base = exp(-z * x2);
    if (!trivial_exponent) base *= pow(node.one_minus_x * node.one_plus_x, exponent);
    for (auto& v : out) {
      v = base;
      base *= x2;
    }
  };
  const auto result = tanh_sinh(integrand, M + 1, q, p.digits / 2.0);

  std::vector<XReal> even;
  even.reserve(M + 1);
  for (const auto& v : result.values) even.push_back(v.at(p));
  return MomentTable(params, std::move(even), MomentSource::oracle);
}

XReal moment_oracle(const WeightParams& params, std::size_t m) {
  require_even(m);
  return moment_oracle_table(params, m / 2).even(m / 2);
}

std::vector<XReal> hankel_minors(const MomentTable& table, std::size_t N) {
  if (2 * N > table.max_index()) throw IndexError("Hankel minors need s_0 .. s_2N");
  const std::size_t size = N + 1;
  std::vector<std::vector<XReal>> a(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) a[i].push_back(table.s(i + j));
  }
  // Gaussian elimination without pivoting: the k-th minor is the product of
  // the first k + 1 pivots.
  std::vector<XReal> minors;
  XReal det(1, table.params().precision());
  for (std::size_t k = 0; k < size; ++k) {
    det *= a[k][k];
    minors.push_back(det);
    if (a[k][k].is_zero()) break;
    for (std::size_t i = k + 1; i < size; ++i) {
      if (a[i][k].is_zero()) continue;
      const XReal factor = a[i][k] / a[k][k];
      for (std::size_t j = k; j < size; ++j) a[i][j] -= factor * a[k][j];
    }
  }
  return minors;
}

}  // namespace rys

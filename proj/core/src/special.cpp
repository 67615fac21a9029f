#include "rys/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "rys/errors.hpp"

namespace rys {

namespace {

// Spouge coefficients c_0 .. c_{A-1} for a target precision, stored at the
// internal evaluation precision.
struct SpougeTable {
  unsigned shift = 0;  // Spouge's parameter A
  Precision internal;
  std::vector<XReal> coefficients;
};

std::shared_ptr<const SpougeTable> make_spouge(unsigned digits) {
  auto table = std::make_shared<SpougeTable>();
  // (2π)^(-A) <= 10^(-(digits + 2))
  table->shift = static_cast<unsigned>(std::ceil((digits + 2) * std::log(10.0) / std::log(2.0 * std::numbers::pi)));
  table->internal = Precision(2 * digits + 10);
  const Precision p = table->internal;
  const unsigned a = table->shift;

  table->coefficients.reserve(a);
  table->coefficients.push_back(sqrt(2 * pi(p)));
  XReal factorial(1, p);  // (k-1)!
  for (unsigned k = 1; k < a; ++k) {
    if (k > 1) factorial *= static_cast<double>(k - 1);
    const XReal base(static_cast<long>(a - k), p);
    XReal c = pow(base, XReal(k, p) - 0.5) * exp(base) / factorial;
    if (k % 2 == 0) c = -c;
    table->coefficients.push_back(std::move(c));
  }
  return table;
}

std::shared_ptr<const SpougeTable> spouge_for(unsigned digits) {
  static std::mutex mutex;
  static std::map<unsigned, std::shared_ptr<const SpougeTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[digits];
  if (!slot) slot = make_spouge(digits);
  return slot;
}

// ln Γ(z + 1) for z >= 0 at the table's internal precision.
XReal spouge_log_gamma_shifted(const XReal& z_in, const SpougeTable& table) {
  const Precision p = table.internal;
  const XReal z = z_in.at(p);
  XReal sum = table.coefficients[0];
  for (unsigned k = 1; k < table.shift; ++k) {
    sum += table.coefficients[k] / (z + static_cast<double>(k));
  }
  const XReal za = z + static_cast<double>(table.shift);
  return (z + 0.5) * log(za) - za + log(sum);
}

}  // namespace

XReal log_gamma(const XReal& x) {
  if (!(x > 0)) throw DomainError("log_gamma requires x > 0, got " + x.str(20));
  const Precision p = x.precision();
  if (x == 1 || x == 2) return XReal(p);

  const auto table = spouge_for(p.digits);
  const Precision q = table->internal;
  const XReal xi = x.at(q);
  if (xi < 1) {
    // Γ(x) = Γ(x + 1) / x keeps the Spouge argument z = x in [0, 1).
    return (spouge_log_gamma_shifted(xi, *table) - log(xi)).at(p);
  }
  return spouge_log_gamma_shifted(xi - 1, *table).at(p);
}

XReal kummer_1f1_neg(const XReal& a, const XReal& b, const XReal& z, std::vector<XReal>* terms) {
  if (!(a > 0) || !(b > a)) {
    throw DomainError("kummer_1f1_neg requires b > a > 0 (a = " + a.str(12) + ", b = " + b.str(12) + ")");
  }
  if (z < 0) throw DomainError("kummer_1f1_neg requires z >= 0");

  const Precision p(std::max({a.digits(), b.digits(), z.digits()}));
  if (terms) terms->clear();
  if (z.is_zero()) {
    if (terms) terms->push_back(XReal(1, p));
    return XReal(1, p);
  }

  // e^(-z) Σ (b-a)_k / (b)_k z^k / k!
  const XReal c = (b - a).at(p);
  const XReal bb = b.at(p);
  const XReal zz = z.at(p);
  const XReal cutoff = pow(XReal(10, p), -static_cast<long>(p.digits + 5));
  const double budget =
      10.0 * (zz.to_double() + std::abs(a.to_double()) + std::abs(b.to_double()) + 50.0);
  const auto max_terms = static_cast<std::size_t>(budget);

  XReal term(1, p);
  XReal sum(1, p);
  if (terms) terms->push_back(term);
  for (std::size_t k = 0; k < max_terms; ++k) {
    term *= (c + static_cast<double>(k)) / (bb + static_cast<double>(k)) * zz / static_cast<double>(k + 1);
    sum += term;
    if (terms) terms->push_back(term);
    // Terms decrease monotonically once k exceeds z; stop there on the cutoff.
    if (static_cast<double>(k) > zz.to_double() && term < cutoff * sum) {
      return exp(-zz) * sum;
    }
  }
  throw ConvergenceError("kummer_1f1_neg did not converge within " + std::to_string(max_terms) + " terms");
}

SeriesSum gauss_2f1_trunc(const XReal& a, const XReal& b, const XReal& c, const XReal& x,
                          std::size_t count) {
  if (!(abs(x) < 1)) throw DomainError("gauss_2f1_trunc requires |x| < 1");
  if (!(c > 0)) throw DomainError("gauss_2f1_trunc requires c > 0");
  if (count == 0) throw DomainError("gauss_2f1_trunc requires at least one term");

  const Precision p(std::max({a.digits(), b.digits(), c.digits(), x.digits()}));
  SeriesSum out{XReal(1, p), 1, XReal(1, p)};
  XReal term(1, p);
  for (std::size_t k = 1; k < count; ++k) {
    const double km1 = static_cast<double>(k - 1);
    term *= (a + km1) * (b + km1) / ((c + km1) * static_cast<double>(k)) * x;
    out.value += term;
  }
  out.terms = count;
  out.last_term = abs(term);
  return out;
}

}  // namespace rys

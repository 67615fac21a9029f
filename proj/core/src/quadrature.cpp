#include "rys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rys/errors.hpp"

namespace rys {

JacobiMatrix jacobi_matrix(const RecurrenceTable& rt, std::size_t N) {
  if (N < 1) throw DomainError("Jacobi matrix needs order >= 1");
  if (N > rt.N() + 1) throw IndexError("Jacobi matrix of order " + std::to_string(N) + " needs gamma_" + std::to_string(N - 1));
  JacobiMatrix jm{N, {}};
  jm.off_diagonal.reserve(N - 1);
  for (std::size_t k = 1; k < N; ++k) {
    const XReal& g = rt.gamma(static_cast<std::ptrdiff_t>(k));
    if (!(g > 0)) throw DomainError("non-positive gamma_" + std::to_string(k) + " in Jacobi matrix");
    jm.off_diagonal.push_back(sqrt(g));
  }
  return jm;
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, std::vector<double>& z) {
  const std::size_t n = d.size();
  if (z.size() != n || (n > 0 && e.size() + 1 != n)) throw DomainError("tridiagonal_ql: inconsistent sizes");
  if (n <= 1) return;

  const double eps = std::numeric_limits<double>::epsilon();
  double norm = 0;
  for (double v : e) norm = std::max(norm, std::abs(v));
  e.push_back(0);

  std::size_t iterations = 0;
  const std::size_t limit = 30 * n;
  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= eps * std::max(std::abs(d[m]) + std::abs(d[m + 1]), norm)) break;
      }
      if (m == l) break;
      if (++iterations > limit) throw ConvergenceError("tridiagonal QL exceeded " + std::to_string(limit) + " iterations");

      double g = (d[l + 1] - d[l]) / (2 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1, c = 1, p = 0;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0) {
          d[i + 1] -= p;
          e[m] = 0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double t = z[i + 1];
        z[i + 1] = s * z[i] + c * t;
        z[i] = c * z[i] - s * t;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    ds[i] = d[order[i]];
    zs[i] = z[order[i]];
  }
  d = std::move(ds);
  z = std::move(zs);
}

QuadratureRule golub_welsch(const JacobiMatrix& jm, const XReal& s0) {
  if (jm.order < 1) throw DomainError("quadrature needs N >= 1");
  std::vector<double> d(jm.order, 0.0);
  std::vector<double> e;
  e.reserve(jm.order - 1);
  for (const auto& v : jm.off_diagonal) e.push_back(v.to_double());
  std::vector<double> first(jm.order, 0.0);
  first[0] = 1;
  tridiagonal_ql(d, std::move(e), first);

  QuadratureRule rule;
  rule.nodes = std::move(d);
  const double mass = s0.to_double();
  rule.weights.reserve(jm.order);
  for (double v : first) rule.weights.push_back(mass * v * v);
  return rule;
}

QuadratureRule gauss_rule(const RecurrenceTable& rt, std::size_t N) {
  return golub_welsch(jacobi_matrix(rt, N), rt.h(0));
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double sum = 0;
  for (std::size_t k = 0; k < rule.order(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
  return sum;
}

double exactness_report(const QuadratureRule& rule, const MomentTable& mt) {
  const std::size_t N = rule.order();
  if (2 * N - 2 > mt.max_index()) throw IndexError("exactness report needs moments up to s_" + std::to_string(2 * N - 2));
  // Power sums in extended precision so only the rule itself is tested.
  const Precision p = mt.params().precision();
  double worst = 0;
  for (std::size_t m = 0; m + 2 <= 2 * N; m += 2) {
    XReal sum(p);
    for (std::size_t k = 0; k < N; ++k) {
      sum += XReal(rule.weights[k], p) * pow(XReal(rule.nodes[k], p), static_cast<long>(m));
    }
    worst = std::max(worst, relative_difference(sum, mt.s(m)));
  }
  return worst;
}

}  // namespace rys

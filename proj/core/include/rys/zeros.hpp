#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rys/recurrence.hpp"
#include "rys/weight.hpp"
#include "rys/xreal.hpp"

namespace rys {

struct ZeroSet {
  std::size_t n = 0;
  std::vector<double> zeros;  // ascending, symmetric about 0
};

/// Zeros of P_n: eigenvalues of the order-n Jacobi matrix, each polished by
/// one Newton step in extended precision and symmetrized. Throws
/// ConvergenceError if a polished zero leaves |P_n| above 10^-10 |P_n'|.
ZeroSet zeros(const RecurrenceTable& rt, std::size_t n);

/// Fixed charges at ±β_n and the external field of the electrostatic model
/// for n free unit charges.
struct ZeroContext {
  std::size_t n = 0;
  XReal beta2;  // (n + λ)/z + 1 - (γ_n + γ_{n+1})
  XReal z;
  XReal lambda;

  double beta() const;
  /// z(β² - 1), the ladder quantity R_n.
  XReal ladder_r() const;
};

/// Requires z > 0 and n <= N - 1.
ZeroContext zero_context(const RecurrenceTable& rt, std::size_t n);

/// ∂E/∂x_k for the free charges `points`:
/// Σ_{j≠k} 2/(x_j - x_k) + 2x_k/(x_k² - β²) - 1/(x_k - 1) - 1/(x_k + 1) + v'(x_k),
/// v(x) = -(λ - 1/2) ln(1 - x²) + z x².
std::vector<XReal> electrostatic_gradient(std::span<const double> points, const ZeroContext& ctx);

/// max_k |∂E/∂x_k| at the zeros of P_n, n = ctx.n. Throws
/// SingularEvaluation when a zero sits within 10 machine epsilons of ±1 or ±β.
double electrostatic_residual(const ZeroSet& zs, const ZeroContext& ctx);

/// E = -2 Σ_{j<k} ln|x_j - x_k| + Σ_k [ln|x_k² - β²| - ln(1 - x_k²) + v(x_k)].
/// Throws SingularEvaluation for coincident points or points on ±1, ±β.
double electrostatic_energy(std::span<const double> points, const ZeroContext& ctx);

/// dx_{n,k}/dz = -x (1 - x²) / (2z (β_n² - x²)) for the k-th zero (1-based).
double zero_velocity(const RecurrenceTable& rt, std::size_t n, std::size_t k);
std::vector<double> zero_velocities(const RecurrenceTable& rt, std::size_t n);

/// ∂_z P_n(x) = γ_n γ_{n-1} P_{n-2}(x); zero for n < 2.
XReal dz_poly(const RecurrenceTable& rt, std::size_t n, double x);

}  // namespace rys

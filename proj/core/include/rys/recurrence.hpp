#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rys/moments.hpp"
#include "rys/weight.hpp"
#include "rys/xreal.hpp"

namespace rys {

/// γ_0 = 0, γ_1 .. γ_N and norms h_0 = s_0, h_1 .. h_N of the monic
/// recurrence x P_n = P_{n+1} + γ_n P_{n-1}.
class RecurrenceTable {
 public:
  RecurrenceTable(WeightParams params, std::vector<XReal> gammas, std::vector<XReal> norms);

  const WeightParams& params() const { return params_; }
  std::size_t N() const { return gammas_.size() - 1; }

  /// γ_n; zero for n <= 0.
  const XReal& gamma(std::ptrdiff_t n) const;
  const XReal& h(std::size_t n) const;
  const std::vector<XReal>& gammas() const { return gammas_; }
  const std::vector<XReal>& norms() const { return norms_; }

  /// N exceeds the d - 20 digit-loss budget of the raw-moment route.
  bool beyond_budget() const { return N() + 20 > params_.digits(); }

  RecurrenceTable at_digits(unsigned digits) const;

 private:
  WeightParams params_;
  std::vector<XReal> gammas_;
  std::vector<XReal> norms_;
  XReal zero_;
};

/// Extra digits carried by the Hankel route so that N coefficients come
/// out accurate to the target precision.
unsigned hankel_guard_digits(std::size_t N);

/// Cholesky factorization of (s_{i+j})_{i,j<=N} at the table's precision:
/// h_n = L_nn², γ_n = h_n / h_{n-1}. Throws PrecisionExhausted(n) when a
/// pivot is not safely positive.
RecurrenceTable gammas_from_moments(const MomentTable& table, std::size_t N);

/// Hankel route run at the guarded precision and rounded back to the
/// precision of `params`.
RecurrenceTable recurrence(const WeightParams& params, std::size_t N);

/// Propagates γ_{n+1} from (γ_{n-1}, γ_n) by solving the cubic
/// three-point identity, linear in γ_{n+1}. Runs at the precision of
/// `gamma1`. Throws DomainError for z = 0 and PropagationSingular(n) on a
/// vanishing divisor or loss of positivity.
RecurrenceTable gammas_laguerre_freud(const WeightParams& params, const XReal& gamma1, std::size_t N);

/// Extra digits needed to absorb the instability of the propagation.
unsigned laguerre_freud_guard_digits(const WeightParams& params, std::size_t N);

/// Propagation seeded with γ_1 = s_2 / s_0, at the guarded precision.
RecurrenceTable laguerre_freud_oracle(const WeightParams& params, std::size_t N);

/// |[z + λ + n + 1 - zγ_{n+2} - zγ_{n+1}]γ_{n+1} - [z + λ + n - 1 - zγ_n - zγ_{n-1}]γ_n - 1/2|,
/// 1 <= n <= N - 2.
double laguerre_freud_residual(const RecurrenceTable& rt, std::size_t n);

/// Normalized residual of
/// γ_n (n + λ - z(γ_{n+1} + γ_n))(n - 1 + λ - z(γ_n + γ_{n-1})) = (n/2 - zγ_n)((n - 1)/2 + λ - zγ_n),
/// 1 <= n <= N - 1.
double cubic_identity_residual(const RecurrenceTable& rt, std::size_t n);

struct GTable {
  WeightParams params;
  std::vector<XReal> g;  // g_n = n/2 + λ/2 - 1/4 - zγ_n, n = 0..N
};

GTable g_table(const RecurrenceTable& rt);

/// (n/2 + λ/2 - 1/4 - g_n)(g_{n+1} + g_n)(g_n + g_{n-1}) against z g_n² - z(λ/2 - 1/4)²,
/// normalized by max(|LHS|, |RHS|, 1); 1 <= n <= N - 1.
double painleve_residual(const GTable& gt, std::size_t n);

struct LadderData {
  std::size_t n = 0;
  XReal T;  // n/2 - zγ_n
  XReal R;  // n + λ - z(γ_{n+1} + γ_n)
  /// γ_{n+1} R_{n+1} R_n - T_{n+1}(T_{n+1} + λ - 1/2), normalized; needs n <= N - 2.
  std::optional<double> product_residual;
};

/// 0 <= n <= N - 1.
LadderData ladder_data(const RecurrenceTable& rt, std::size_t n);

/// γ_n for z = 0: n(n + 2λ - 1) / (4(n + λ)(n + λ - 1)).
XReal gegenbauer_gamma(const XReal& lambda, std::size_t n);

}  // namespace rys

#pragma once

#include <cstddef>
#include <vector>

#include "rys/weight.hpp"
#include "rys/xreal.hpp"

namespace rys {

enum class MomentSource { closed_form, oracle };

/// Even moments s_0, s_2, ..., s_2M of the weight. Odd moments vanish and
/// are not stored.
class MomentTable {
 public:
  MomentTable(WeightParams params, std::vector<XReal> even, MomentSource source);

  const WeightParams& params() const { return params_; }
  MomentSource source() const { return source_; }
  std::size_t max_index() const { return 2 * (even_.size() - 1); }
  std::size_t size() const { return even_.size(); }
  const std::vector<XReal>& even_moments() const { return even_; }

  /// s_m for any m <= max_index(); zero for odd m.
  XReal s(std::size_t m) const;
  /// s_{2k}.
  const XReal& even(std::size_t k) const;

 private:
  WeightParams params_;
  std::vector<XReal> even_;
  MomentSource source_;
};

/// s_m = Γ(n + 1/2) Γ(λ + 1/2) / Γ(λ + n + 1) ₁F₁(n + 1/2; λ + n + 1; -z), m = 2n.
/// Throws DomainError for odd m.
XReal moment(const WeightParams& params, std::size_t m);

/// s_0 .. s_2M, each from the closed form independently.
MomentTable moment_table(const WeightParams& params, std::size_t M);

/// |2z s_{n+3} - (n + 2z + 2λ + 1) s_{n+1} + n s_{n-1}| / s_{n+1} for odd n.
double moment_recurrence_residual(const MomentTable& table, std::size_t n);

/// Tanh-sinh quadrature of ∫ x^m (1 - x²)^(λ - 1/2) e^(-z x²) dx over (-1, 1),
/// refined until two levels agree to d/2 digits.
XReal moment_oracle(const WeightParams& params, std::size_t m);
MomentTable moment_oracle_table(const WeightParams& params, std::size_t M);

/// Leading principal minors det (s_{i+j})_{i,j<=k}, k = 0..N.
std::vector<XReal> hankel_minors(const MomentTable& table, std::size_t N);

}  // namespace rys

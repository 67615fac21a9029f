#pragma once

#include <cstddef>
#include <vector>

#include "rys/moments.hpp"
#include "rys/recurrence.hpp"
#include "rys/weight.hpp"
#include "rys/xreal.hpp"

namespace rys {

/// The lattice γ_0 .. γ_{N+2} at one value of z. Entries N+1 and N+2 are
/// guards that keep the derivatives of the window 1..N exact.
struct FlowState {
  WeightParams params;
  std::vector<XReal> gamma;

  std::size_t window() const { return gamma.size() - 3; }
};

/// Fresh state from the Hankel pipeline with window N.
FlowState flow_state(const WeightParams& params, std::size_t N);

struct TodaDerivative {
  std::vector<XReal> values;  // γ'_0 .. γ'_{N+2}
  std::size_t trusted = 0;    // values[1..trusted] are exact
};

/// γ'_n = γ_n (γ_{n-1} - γ_{n+1}); the last guard gets no derivative.
TodaDerivative toda_rhs(const FlowState& state);

/// Classical RK4 over [z, z + dz] with `steps` equal steps. At every stage
/// the guard entries are replaced by the Hankel pipeline at the stage's z.
/// Requires steps >= ceil(|dz| / 0.01); throws StepSizeError if a
/// coefficient turns non-positive.
FlowState toda_integrate(const FlowState& state, double dz, std::size_t steps);

/// Residual of [(n + λ)h_n + z h'_n][(n - 1 + λ)h_{n-1} + z h'_{n-1}]
///           = (n/2 h_{n-1} - z h_n)((2λ + n - 1)/2 h_{n-1} - z h_n)
/// relative to the larger side, with h'_n = -(γ_{n+1} + γ_n) h_n; 1 <= n <= N - 1.
double h_flow_residual(const RecurrenceTable& rt, std::size_t n);

/// Same identity with h' from central differences of tables at z ± step.
double h_flow_residual_fd(const RecurrenceTable& minus, const RecurrenceTable& rt, const RecurrenceTable& plus,
                          double step, std::size_t n);

/// g_n = n/2 + λ/2 - 1/4 - zγ_n with its first two z-derivatives.
struct GFlow {
  XReal g, dg, ddg;
};

/// Derivatives closed under the Toda flow; 1 <= n <= N.
GFlow g_flow(const FlowState& state, std::size_t n);

/// Normalized residual of the Chazy-type equation
/// (2/z)(2g - z)²[(n + λ - 1/2 - 2g)(4g² - (λ - 1/2)²) + 2z g'²]
///   = [4g(3g - n - λ + 1/2) - (λ - 1/2)² - 2z g'' - g']²;
/// 2 <= n <= N, z > 0.
double chazy_residual(const FlowState& state, std::size_t n);

/// Same with g', g'' from central differences of tables at z ± step.
double chazy_residual_fd(const RecurrenceTable& minus, const RecurrenceTable& rt, const RecurrenceTable& plus,
                         double step, std::size_t n);

struct StieltjesEval {
  XReal t;
  std::size_t M = 0;
  XReal value;       // Σ_{k<=M} s_{2k} / t^{2k+1}
  XReal derivative;  // term-wise t-derivative
  XReal tail;        // geometric bound on the omitted terms
};

/// Truncated Stieltjes series; |t| > 1 and 2M <= max_index.
StieltjesEval stieltjes_trunc(const MomentTable& mt, const XReal& t, std::size_t M);
StieltjesEval stieltjes_trunc(const MomentTable& mt, double t, std::size_t M);

enum class StieltjesVariant {
  derived,        // (1 - t²)S' + t(2z + 2λ - 1 - 2zt²)S = -2z s_2 + (2z + 2λ - 2zt²)s_0
  proof_display,  // t((2z + 2λ - 1)t - 2zt²)S on the left, (2z + 2λ - 1 - 2zt²)s_0 on the right
  statement,      // ((2z + 2λ - 2)t - 2zt²)s_0 on the right
};

struct StieltjesOdeCheck {
  double residual = 0;   // |LHS - RHS| on the truncated series
  double predicted = 0;  // |2z s_{2M+2} t^{-2M} - (2M + 1) s_{2M} t^{-2M-2}|
  double excess = 0;     // |(LHS - RHS) - predicted remainder|
};

/// First-order t-ODE on the truncated series; |t| >= 2, needs s_{2M+2}.
StieltjesOdeCheck stieltjes_ode_residual_t(const MomentTable& mt, double t, std::size_t M,
                                           StieltjesVariant variant = StieltjesVariant::derived);

struct StieltjesZCheck {
  double residual = 0;   // |∂_z S_M + t² S_M - t s_0| with ∂_z s_n = -s_{n+2}
  double predicted = 0;  // s_{2M+2} / |t|^{2M+1}
  double excess = 0;
};

/// z-ODE ∂_z S = -t² S + t s_0 on the truncated series; needs s_{2M+2}.
StieltjesZCheck stieltjes_ode_residual_z(const MomentTable& mt, double t, std::size_t M);

struct StieltjesClosedForm {
  XReal value;
  XReal series_tail;  // last included ₂F₁ term
};

/// S(t) = e^{-zt²}[√π Γ(λ + 1/2)/Γ(λ + 1) t^{-1} ₂F₁(1/2, 1; λ + 1; t^{-2}) + t ∫_0^z e^{t²r} s_0(r) dr],
/// the solution of the z-ODE from the Gegenbauer value at z = 0; |t| >= 2.
StieltjesClosedForm stieltjes_closed_form(const WeightParams& params, double t);

}  // namespace rys

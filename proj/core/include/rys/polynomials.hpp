#pragma once

#include <cstddef>
#include <vector>

#include "rys/recurrence.hpp"
#include "rys/xreal.hpp"

namespace rys {

/// P_0 .. P_n of the monic family and their first two derivatives at x.
struct PolyEval {
  XReal x;
  std::vector<XReal> p;
  std::vector<XReal> dp;
  std::vector<XReal> ddp;
};

/// Runs P_{k+1} = x P_k - γ_k P_{k-1} and its two x-derivatives.
/// `x` is used at the table precision.
PolyEval eval_all(const RecurrenceTable& rt, std::size_t n, const XReal& x);
PolyEval eval_all(const RecurrenceTable& rt, std::size_t n, double x);

struct StructureCoeffs {
  std::size_t n = 0;
  XReal b_next;  // [n + 1 + 2λ + 2z - 2z(γ_{n+2} + γ_{n+1} + γ_n)] γ_{n+1}
  XReal a;       // -2z γ_{n+1} γ_n γ_{n-1}
};

StructureCoeffs structure_coeffs(const RecurrenceTable& rt, std::size_t n);

/// |(1 - x²) P'_{n+1} + (n + 1) P_{n+2} - b_{n+1} P_n - a_n P_{n-2}| over the
/// largest of the four terms; 0 <= n <= N - 2.
double structure_residual(const RecurrenceTable& rt, std::size_t n, double x);

/// C_n(x) = 2γ_{n+1}[n + 1 + λ + z - z(γ_{n+2} + γ_{n+1}) - z x²].
XReal ladder_c(const RecurrenceTable& rt, std::size_t n, const XReal& x);
/// δ_n(x) = (2zγ_{n+1} - n - 1) x.
XReal ladder_delta(const RecurrenceTable& rt, std::size_t n, const XReal& x);

/// |A_n P'_{n+1} - B_n P_{n+1} - P_n| / max(1, |P_n|) with A_n = φ/C_n and
/// B_n = δ_n/C_n; n <= N - 2. Throws SingularEvaluation when C_n(x) vanishes.
double ladder_residual(const RecurrenceTable& rt, std::size_t n, double x);

/// Second-order operator annihilating P_{n+1}, assembled from the lowering
/// and raising relations and normalized by its largest term; 1 <= n <= N - 2.
double holonomic_residual(const RecurrenceTable& rt, std::size_t n, double x);

/// The same operator with the coefficients as they are usually printed
/// (coefficient 2w read as 2λ). Does not annihilate P_{n+1}; kept for
/// comparison.
double holonomic_residual_printed(const RecurrenceTable& rt, std::size_t n, double x);

/// Σ_{k<=n} P_k(x)² / h_k.
XReal christoffel_darboux_diagonal(const RecurrenceTable& rt, std::size_t n, double x);

}  // namespace rys

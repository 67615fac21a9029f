#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rys/moments.hpp"
#include "rys/recurrence.hpp"
#include "rys/weight.hpp"
#include "rys/xreal.hpp"

namespace rys {

/// Symmetrized Jacobi matrix of order N: zero diagonal, off-diagonal √γ_k.
struct JacobiMatrix {
  std::size_t order = 0;
  std::vector<XReal> off_diagonal;  // √γ_1 .. √γ_{N-1}
};

JacobiMatrix jacobi_matrix(const RecurrenceTable& rt, std::size_t N);

struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive, summing to s_0
  std::size_t order() const { return nodes.size(); }
};

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix by implicit-shift QL (double precision). `diagonal` is replaced by
/// the ascending eigenvalues and `first` by the matching first components
/// (pass e_1 for the plain Golub-Welsch rule). Throws ConvergenceError after
/// 30 n iterations in total.
void tridiagonal_ql(std::vector<double>& diagonal, std::vector<double> off_diagonal, std::vector<double>& first);

/// Gauss rule from the Jacobi matrix: nodes are the eigenvalues, weight_k is
/// s_0 times the squared first component of the k-th eigenvector.
QuadratureRule golub_welsch(const JacobiMatrix& jm, const XReal& s0);

/// Gauss rule for the first N coefficients of a table.
QuadratureRule gauss_rule(const RecurrenceTable& rt, std::size_t N);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// max over even m <= 2N - 2 of |Σ w_k x_k^m - s_m| / s_m.
double exactness_report(const QuadratureRule& rule, const MomentTable& mt);

}  // namespace rys

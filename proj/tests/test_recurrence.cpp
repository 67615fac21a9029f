#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "grid.hpp"
#include "rys/errors.hpp"
#include "rys/recurrence.hpp"

using namespace rys;
using rys::test::pow10;
using Rational = boost::multiprecision::cpp_rational;

namespace {

// det of a small rational matrix by fraction-exact elimination.
Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// γ_n = D_n D_{n-2} / D_{n-1}² from exact Hankel determinants of moments
// known up to a common factor.
std::vector<Rational> exact_gammas(const std::vector<Rational>& even, std::size_t N) {
  auto moment = [&](std::size_t m) { return m % 2 ? Rational(0) : even[m / 2]; };
  std::vector<Rational> D;
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<std::vector<Rational>> h(n + 1, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) h[i][j] = moment(i + j);
    }
    D.push_back(determinant(h));
  }
  std::vector<Rational> g{0, D[1] / (D[0] * D[0])};
  for (std::size_t n = 2; n <= N; ++n) g.push_back(D[n] * D[n - 2] / (D[n - 1] * D[n - 1]));
  return g;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace

TEST(GammasFromMoments, FirstCoefficientIsMomentRatio) {
  for (const auto& g : rys::test::standard_grid()) {
    const WeightParams w(g.z, g.lambda);
    const RecurrenceTable rt = recurrence(w, 5);
    EXPECT_LE(relative_difference(rt.gamma(1), moment(w, 2) / moment(w, 0)), 1e-48) << rys::test::grid_name(g);
    EXPECT_TRUE(rt.gamma(0).is_zero());
  }
}

TEST(GammasFromMoments, ExactRationalHankelOracle) {
  // λ = 1/2: s_2k = 2/(2k + 1). λ = 1: s_2k ∝ (1/2)_k / (2)_k.
  std::vector<Rational> legendre, chebyshev2;
  Rational c = 1;
  for (int k = 0; k <= 6; ++k) {
    legendre.push_back(Rational(2, 2 * k + 1));
    chebyshev2.push_back(c);
    c *= Rational(2 * k + 1, 2 * (k + 2));
  }
  const auto gl = exact_gammas(legendre, 6);
  const auto gc = exact_gammas(chebyshev2, 6);
  const RecurrenceTable rl = recurrence(WeightParams(0.0, 0.5), 6);
  const RecurrenceTable rc = recurrence(WeightParams(0.0, 1.0), 6);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(gl[n], Rational(n * n, 4 * n * n - 1)) << n;
    EXPECT_DOUBLE_EQ(rl.gamma(n).to_double(), to_double(gl[n])) << n;
    EXPECT_DOUBLE_EQ(rc.gamma(n).to_double(), to_double(gc[n])) << n;
    EXPECT_DOUBLE_EQ(to_double(gc[n]), 0.25) << n;
  }
}

TEST(GammasFromMoments, NormsAreProducts) {
  const RecurrenceTable rt = recurrence(WeightParams(1.0, 1.0), 30);
  XReal h = rt.h(0);
  for (std::size_t n = 1; n <= 30; ++n) {
    h *= rt.gamma(static_cast<std::ptrdiff_t>(n));
    EXPECT_LE(relative_difference(rt.h(n), h), 1e-48) << n;
  }
}

TEST(GammasFromMoments, ThrowsPrecisionExhausted) {
  // 30 digits cannot carry a 70x70 raw Hankel factorization.
  const WeightParams w(1.0, 1.0, 30);
  try {
    gammas_from_moments(moment_table(w, 70), 70);
    FAIL() << "expected PrecisionExhausted";
  } catch (const PrecisionExhausted& e) {
    EXPECT_GT(e.index(), 10u);
    EXPECT_LE(e.index(), 70u);
    EXPECT_EQ(e.digits(), 30u);
  }
}

TEST(GammasFromMoments, TableTooShort) {
  const MomentTable mt = moment_table(WeightParams(1.0, 1.0), 5);
  EXPECT_THROW(gammas_from_moments(mt, 6), IndexError);
}

TEST(RecurrenceTable, BudgetFlag) {
  EXPECT_FALSE(recurrence(WeightParams(1.0, 1.0, 50), 30).beyond_budget());
  EXPECT_TRUE(recurrence(WeightParams(1.0, 1.0, 50), 31).beyond_budget());
}

class RecurrenceGrid : public ::testing::TestWithParam<rys::test::GridPoint> {};

TEST_P(RecurrenceGrid, PositiveBoundedAndProductIdentity) {
  const auto g = GetParam();
  const RecurrenceTable rt = recurrence(WeightParams(g.z, g.lambda), 40);
  for (std::ptrdiff_t n = 1; n <= 40; ++n) {
    EXPECT_GT(rt.gamma(n).sign(), 0) << n;
    EXPECT_LT(rt.gamma(n), 1) << n;
  }
}

TEST_P(RecurrenceGrid, LaguerreFreudAndCubicIdentity) {
  const auto g = GetParam();
  const RecurrenceTable rt = recurrence(WeightParams(g.z, g.lambda), 30);
  for (std::size_t n = 1; n <= 28; ++n) {
    EXPECT_LE(laguerre_freud_residual(rt, n), pow10(10 - 50)) << n;
    EXPECT_LE(cubic_identity_residual(rt, n), pow10(10 - 50)) << n;
  }
}

TEST_P(RecurrenceGrid, PainleveResidual) {
  const auto g = GetParam();
  const GTable gt = g_table(recurrence(WeightParams(g.z, g.lambda), 30));
  for (std::size_t n = 1; n <= 25; ++n) EXPECT_LE(painleve_residual(gt, n), pow10(10 - 50)) << n;
}

TEST_P(RecurrenceGrid, LadderProductRelation) {
  const auto g = GetParam();
  const RecurrenceTable rt = recurrence(WeightParams(g.z, g.lambda), 30);
  for (std::size_t n = 0; n + 2 <= 30; ++n) {
    const LadderData ld = ladder_data(rt, n);
    ASSERT_TRUE(ld.product_residual.has_value());
    EXPECT_LE(*ld.product_residual, pow10(10 - 50)) << n;
  }
  EXPECT_FALSE(ladder_data(rt, 29).product_residual.has_value());
}

TEST_P(RecurrenceGrid, RAndTRelation) {
  const auto g = GetParam();
  const WeightParams w(g.z, g.lambda);
  const RecurrenceTable rt = recurrence(w, 20);
  for (std::size_t n = 0; n + 1 < 20; ++n) {
    const LadderData a = ladder_data(rt, n), b = ladder_data(rt, n + 1);
    EXPECT_LE(abs(a.R - (a.T + b.T + w.lambda() - 0.5)).to_double(), 1e-45) << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, RecurrenceGrid, ::testing::ValuesIn(rys::test::standard_grid()),
                         [](const auto& info) { return rys::test::grid_name(info.param); });

TEST(LadderData, InitialValues) {
  const WeightParams w(1.0, 1.0);
  const RecurrenceTable rt = recurrence(w, 5);
  const LadderData ld = ladder_data(rt, 0);
  EXPECT_TRUE(ld.T.is_zero());
  EXPECT_LE(abs(ld.R - (w.lambda() - w.z() * rt.gamma(1))).to_double(), 1e-49);
  EXPECT_THROW(ladder_data(rt, 5), IndexError);
}

TEST(LadderData, PositivityForLambdaAtLeastHalf) {
  for (double lambda : {0.5, 1.0, 2.5}) {
    for (double z : {0.1, 1.0, 10.0}) {
      const WeightParams w(z, lambda);
      const RecurrenceTable rt = recurrence(w, 30);
      const GTable gt = g_table(rt);
      for (std::size_t n = 0; n < 30; ++n) {
        EXPECT_GE(ladder_data(rt, n).R.sign(), 0) << lambda << " " << z << " " << n;
        EXPECT_GE((gt.g[n] + gt.g[n + 1]).sign(), 0) << lambda << " " << z << " " << n;
      }
    }
  }
}

TEST(LadderData, PositivityFailsBelowHalf) {
  // Pinned counterexamples: R_n < 0 is possible once λ < 1/2.
  {
    const RecurrenceTable rt = recurrence(WeightParams(10.0, 0.0), 10);
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_LT(ladder_data(rt, n).R.sign(), 0) << n;
  }
  {
    const RecurrenceTable rt = recurrence(WeightParams(1.0, -0.4), 10);
    EXPECT_LT(ladder_data(rt, 0).R.sign(), 0);
    EXPECT_LT(ladder_data(rt, 1).R.sign(), 0);
  }
}

TEST(PainleveResidual, FirstFactorIsZGamma) {
  const WeightParams w(1.0, 1.0);
  const RecurrenceTable rt = recurrence(w, 10);
  const GTable gt = g_table(rt);
  for (std::size_t n = 0; n <= 10; ++n) {
    const XReal first = static_cast<double>(n) / 2 + w.lambda() / 2 - 0.25 - gt.g[n];
    EXPECT_LE(abs(first - w.z() * rt.gamma(static_cast<std::ptrdiff_t>(n))).to_double(), 1e-49);
  }
}

TEST(GegenbauerLimit, ClosedForm) {
  for (double lambda : rys::test::kLambdas) {
    const WeightParams w(0.0, lambda);
    const RecurrenceTable rt = recurrence(w, 40);
    for (std::size_t n = 1; n <= 40; ++n) {
      EXPECT_LE(relative_difference(rt.gamma(static_cast<std::ptrdiff_t>(n)), gegenbauer_gamma(w.lambda(), n)),
                pow10(10 - 50))
          << lambda << " " << n;
    }
  }
}

TEST(GegenbauerLimit, Legendre) {
  const WeightParams w(0.0, 0.5);
  const RecurrenceTable rt = recurrence(w, 20);
  for (int n = 1; n <= 20; ++n) {
    const XReal legendre = XReal(n * n, w.precision()) / (4 * n * n - 1);
    EXPECT_LE(relative_difference(rt.gamma(n), legendre), pow10(10 - 50)) << n;
  }
}

TEST(LaguerreFreudPropagation, FirstStepMatchesHankel) {
  const WeightParams w(1.0, 1.0);
  const RecurrenceTable rt = recurrence(w, 5);
  const RecurrenceTable lf = gammas_laguerre_freud(w, rt.gamma(1), 3);
  EXPECT_LE(relative_difference(lf.gamma(2), rt.gamma(2)), pow10(15 - 50));
}

TEST(LaguerreFreudPropagation, FirstStepCancelledForm) {
  const WeightParams w(1.0, 1.0);
  const RecurrenceTable rt = recurrence(w, 5);
  const XReal z = w.z(), l = w.lambda();
  const XReal& g1 = rt.gamma(1);
  const XReal& g2 = rt.gamma(2);
  EXPECT_LE(abs(g1 * (1 + l - z * (g2 + g1)) - (0.5 - z * g1)).to_double(), 1e-48);
}

TEST(LaguerreFreudPropagation, CrossPipelineAgreement) {
  for (double lambda : {0.0, 0.5, 1.0, 2.5}) {
    for (double z : {0.1, 1.0, 10.0}) {
      const WeightParams w(z, lambda);
      const RecurrenceTable hankel = recurrence(w, 20);
      const RecurrenceTable lf = laguerre_freud_oracle(w, 20);
      for (std::ptrdiff_t n = 1; n <= 20; ++n) {
        EXPECT_LE(relative_difference(lf.gamma(n), hankel.gamma(n)), 1e-15) << lambda << " " << z << " " << n;
      }
      for (std::size_t n = 1; n <= 18; ++n) EXPECT_LE(laguerre_freud_residual(lf, n), pow10(10 - 50));
    }
  }
}

TEST(LaguerreFreudPropagation, UnguardedIsUnstable) {
  // Seeding at the target precision loses digits at every step for small z.
  const WeightParams w(0.1, 1.0);
  const RecurrenceTable hankel = recurrence(w, 20);
  const RecurrenceTable raw = gammas_laguerre_freud(w, hankel.gamma(1), 20);
  EXPECT_GT(relative_difference(raw.gamma(20), hankel.gamma(20)), 1e-15);
}

TEST(LaguerreFreudPropagation, Errors) {
  const WeightParams w0(0.0, 1.0);
  EXPECT_THROW(gammas_laguerre_freud(w0, XReal("0.25", w0.precision()), 5), DomainError);
  const WeightParams w(1.0, 1.0);
  EXPECT_THROW(gammas_laguerre_freud(w, XReal(-1, w.precision()), 5), PropagationSingular);
  // Wrong seeds drive the lattice negative within a few steps.
  try {
    gammas_laguerre_freud(w, XReal("0.25", w.precision()), 30);
    FAIL() << "expected PropagationSingular";
  } catch (const PropagationSingular& e) {
    EXPECT_GE(e.index(), 2u);
  }
  const XReal seed = recurrence(w, 3).gamma(1) * (1 - XReal("1e-10", w.precision()));
  EXPECT_THROW(gammas_laguerre_freud(w, seed, 40), PropagationSingular);
}

TEST(LaguerreFreudResidual, LinearInPerturbation) {
  const WeightParams w(1.0, 1.0);
  const RecurrenceTable rt = recurrence(w, 12);
  const std::size_t n = 5;
  std::vector<XReal> g = rt.gammas();
  const XReal eps("1e-10", w.precision());
  g[n + 2] += eps;
  const RecurrenceTable bumped(w, g, rt.norms());
  const double expected = (w.z() * rt.gamma(n + 1) * eps).to_double();
  EXPECT_NEAR(laguerre_freud_residual(bumped, n), expected, 1e-6 * expected);
}

TEST(LaguerreFreudResidual, RangeChecks) {
  const RecurrenceTable rt = recurrence(WeightParams(1.0, 1.0), 10);
  EXPECT_THROW(laguerre_freud_residual(rt, 0), IndexError);
  EXPECT_THROW(laguerre_freud_residual(rt, 9), IndexError);
  const GTable gt = g_table(rt);
  EXPECT_THROW(painleve_residual(gt, 10), IndexError);
}

TEST(PainleveResidual, TruncatedHermiteCase) {
  const GTable gt = g_table(recurrence(WeightParams(1.0, 0.5), 30));
  for (std::size_t n = 1; n <= 25; ++n) {
    const XReal& g = gt.g[n];
    // (n/2 - g)(g_{n+1} + g)(g + g_{n-1}) = z g² at λ = 1/2.
    const XReal lhs = (static_cast<double>(n) / 2 - g) * (gt.g[n + 1] + g) * (g + gt.g[n - 1]);
    EXPECT_LE(abs(lhs - square(g)).to_double(), 1e-45) << n;
    EXPECT_LE(painleve_residual(gt, n), pow10(10 - 50));
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "grid.hpp"
#include "rys/errors.hpp"
#include "rys/moments.hpp"
#include "rys/special.hpp"
#include "rys/tanh_sinh.hpp"

using namespace rys;
using rys::test::pow10;

TEST(WeightParams, RejectsOutOfDomain) {
  EXPECT_THROW(WeightParams(1.0, -0.5), DomainError);
  EXPECT_THROW(WeightParams(1.0, -0.6), DomainError);
  EXPECT_THROW(WeightParams(-0.1, 1.0), DomainError);
  EXPECT_THROW(WeightParams(1.0, 1.0, 20), DomainError);
  EXPECT_THROW(WeightParams("x", "1"), DomainError);
  EXPECT_NO_THROW(WeightParams(0.0, -0.49));
}

TEST(WeightParams, DecimalParametersAreExact) {
  const WeightParams w(0.1, 2.5, 60);
  EXPECT_EQ(w.z_text(), "0.1");
  EXPECT_LE(relative_difference(w.z() * 10, XReal(1, Precision(60))), 1e-59);
  EXPECT_TRUE(WeightParams(0.0, 1.0).gegenbauer_limit());
  EXPECT_FALSE(WeightParams(0.1, 1.0).gegenbauer_limit());
}

TEST(WeightParams, PearsonPair) {
  const WeightParams w(1.0, 1.0);
  const Precision p = w.precision();
  // (φ w)' = -ψ w checked by a central difference.
  const XReal x("0.37", p), h("1e-12", p);
  auto phiw = [&](const XReal& t) { return w.phi(t) * w.weight(t); };
  const XReal derivative = (phiw(x + h) - phiw(x - h)) / (2 * h);
  EXPECT_LE(relative_difference(derivative, -w.psi(x) * w.weight(x)), 1e-20);
}

TEST(Moment, GegenbauerOneHalf) {
  const WeightParams w(0.0, 0.5);
  EXPECT_LE(relative_difference(moment(w, 0), XReal(2, w.precision())), 1e-49);
  EXPECT_LE(relative_difference(moment(w, 2), XReal(2, w.precision()) / 3), 1e-49);
  EXPECT_LE(relative_difference(moment(w, 40), XReal(2, w.precision()) / 41), 1e-49);
}

TEST(Moment, AgreesWithIntegrationOracle) {
  const WeightParams w(1.0, 1.0);
  const Precision p = w.precision().plus(10);
  auto integrand = [&](const TanhSinhNode& node, std::span<XReal> out) {
    const XReal x2 = square(node.x);
    out[0] = square(x2) * sqrt(node.one_minus_x * node.one_plus_x) * exp(-x2);
  };
  const auto r = tanh_sinh(integrand, 1, p, 30);
  EXPECT_LE(relative_difference(moment(w, 4), r.values[0].at(w.precision())), 1e-45);
}

TEST(Moment, OddIndexIsContractViolation) { EXPECT_THROW(moment(WeightParams(1.0, 1.0), 3), DomainError); }

TEST(MomentTable, InitialConditionClosedForm) {
  const WeightParams w(0.1, 2.5);
  const Precision p = w.precision();
  const MomentTable mt = moment_table(w, 5);
  const XReal lambda = w.lambda();
  const XReal s0 = sqrt(pi(p)) * exp(log_gamma(lambda + 0.5) - log_gamma(lambda + 1)) *
                   kummer_1f1_neg(XReal(0.5, p), lambda + 1, w.z());
  EXPECT_LE(relative_difference(mt.even(0), s0), 1e-48);
}

TEST(MomentTable, UnitCase) {
  const MomentTable mt = moment_table(WeightParams(0.0, 0.5), 1);
  EXPECT_EQ(mt.size(), 2u);
  EXPECT_EQ(mt.max_index(), 2u);
  EXPECT_NEAR(mt.even(0).to_double(), 2.0, 1e-15);
  EXPECT_NEAR(mt.even(1).to_double(), 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(mt.s(1).is_zero());
  EXPECT_THROW(mt.s(4), IndexError);
  EXPECT_THROW(moment_table(WeightParams(0.0, 0.5), 0), DomainError);
}

TEST(MomentTable, IndependentOfForwardRecurrence) {
  // Each entry equals a direct closed-form call, even unused ones.
  const WeightParams w(10.0, 2.5);
  const MomentTable mt = moment_table(w, 12);
  for (std::size_t k = 0; k <= 12; ++k) EXPECT_TRUE(mt.even(k) == moment(w, 2 * k)) << k;
  EXPECT_EQ(mt.source(), MomentSource::closed_form);
}

class MomentGrid : public ::testing::TestWithParam<rys::test::GridPoint> {};

TEST_P(MomentGrid, PositiveAndStrictlyDecreasing) {
  const auto g = GetParam();
  const MomentTable mt = moment_table(WeightParams(g.z, g.lambda), 30);
  for (std::size_t k = 0; k <= 30; ++k) {
    EXPECT_GT(mt.even(k).sign(), 0);
    if (k > 0) {
      EXPECT_LT(mt.even(k), mt.even(k - 1)) << k;
    }
  }
}

TEST_P(MomentGrid, RecurrenceResidual) {
  const auto g = GetParam();
  const WeightParams w(g.z, g.lambda);
  const MomentTable mt = moment_table(w, 30);
  for (std::size_t n = 1; n + 3 <= mt.max_index(); n += 2) {
    EXPECT_LE(moment_recurrence_residual(mt, n), pow10(8 - 50)) << n;
  }
}

TEST_P(MomentGrid, OracleAgreement) {
  const auto g = GetParam();
  const WeightParams w(g.z, g.lambda);
  const MomentTable closed = moment_table(w, 20);
  const MomentTable oracle = moment_oracle_table(w, 20);
  EXPECT_EQ(oracle.source(), MomentSource::oracle);
  for (std::size_t k = 0; k <= 20; ++k) {
    EXPECT_LE(relative_difference(oracle.even(k), closed.even(k)), 1e-25) << "m = " << 2 * k;
  }
}

TEST_P(MomentGrid, HankelMinorsPositive) {
  const auto g = GetParam();
  // 20 x 20 Hankel minors fall to ~1e-190; run with digits to spare.
  const MomentTable mt = moment_table(WeightParams(g.z, g.lambda, 60), 20);
  const auto minors = hankel_minors(mt, 20);
  ASSERT_EQ(minors.size(), 21u);
  for (std::size_t k = 0; k < minors.size(); ++k) EXPECT_GT(minors[k].sign(), 0) << k;
}

INSTANTIATE_TEST_SUITE_P(Grid, MomentGrid, ::testing::ValuesIn(rys::test::standard_grid()),
                         [](const auto& info) { return rys::test::grid_name(info.param); });

TEST(MomentRecurrence, GegenbauerTwoTermForm) {
  const WeightParams w(0.0, 1.0);
  const MomentTable mt = moment_table(w, 10);
  for (std::size_t n = 1; n + 1 <= mt.max_index(); n += 2) {
    const XReal lhs = (static_cast<double>(n + 1) + 2 * w.lambda()) * mt.s(n + 1);
    EXPECT_LE(relative_difference(lhs, static_cast<double>(n) * mt.s(n - 1)), 1e-48) << n;
  }
}

TEST(MomentRecurrence, ResidualShrinksWithPrecision) {
  const MomentTable lo = moment_table(WeightParams(1.0, 1.0, 50), 4);
  const MomentTable hi = moment_table(WeightParams(1.0, 1.0, 70), 4);
  EXPECT_LE(moment_recurrence_residual(lo, 1), pow10(8 - 50));
  EXPECT_LE(moment_recurrence_residual(hi, 1), pow10(8 - 70));
}

TEST(MomentRecurrence, RangeChecks) {
  const MomentTable mt = moment_table(WeightParams(1.0, 1.0), 4);
  EXPECT_THROW(moment_recurrence_residual(mt, 2), DomainError);
  EXPECT_THROW(moment_recurrence_residual(mt, 7), IndexError);
}

TEST(MomentOracle, LegendreSixthMoment) {
  const WeightParams w(0.0, 0.5);
  EXPECT_LE(relative_difference(moment_oracle(w, 6), XReal(2, w.precision()) / 7), 1e-40);
}

TEST(MomentOracle, SquareRootSingularity) {
  const WeightParams w(1.0, 0.0);
  EXPECT_LE(relative_difference(moment_oracle(w, 0), moment(w, 0)), 1e-25);
}

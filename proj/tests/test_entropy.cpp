#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cyent;

namespace {

// e^lambda for the quintic at t = 0: largest root of y^4 - 9y^3 + 11y^2 - 9y + 1,
// which is palindromic, so z = y + 1/y solves z^2 - 9z + 9 = 0.
double quintic_lambda() {
  const double z = (9.0 + 3.0 * std::sqrt(5.0)) / 2.0;
  return std::log((z + std::sqrt(z * z - 4.0)) / 2.0);
}

// Largest root of y^5 - 11y^4 + 19y^3 - 21y^2 + 9y - 3 by plain bisection.
double sextic_lambda() {
  auto p = [](long double y) { return ((((y - 11) * y + 19) * y - 21) * y + 9) * y - 3; };
  long double lo = 9, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return static_cast<double>(std::log(lo));
}

} // namespace

TEST(HilbertSeries, QuinticClosedForm) {
  const VarietySpec q = make_variety(3);
  const RationalFunction S = hilbert_series_closed_form(q);
  const Polynomial x = Polynomial::identity();
  const Polynomial one = Polynomial::constant(1);
  EXPECT_EQ(S, RationalFunction(one - x.pow(5), (one - x).pow(5)) - RationalFunction(one));
  const auto c = S.series(6);
  EXPECT_EQ(c, (std::vector<Rational>{0, 5, 15, 35, 70, 125, 205}));
}

TEST(HilbertSeries, CoefficientsMatchChi) {
  for (int d = 3; d <= 8; ++d)
    for (int deg : {1, 2, d + 2, d + 3}) {
      const VarietySpec X = make_variety(d, deg);
      const RationalFunction S = hilbert_series_closed_form(X);
      EXPECT_EQ(S(0), 0);
      const auto c = S.series(200);
      for (long k = 1; k <= 200; ++k)
        ASSERT_EQ(c[static_cast<std::size_t>(k)], Rational(euler_characteristic(X, k)))
            << "d=" << d << " deg=" << deg << " k=" << k;
    }
}

TEST(Solve, QuinticAtZero) {
  const VarietySpec q = make_variety(3);
  const EntropyResult r = solve_entropy(q, 0.0, default_tolerance());
  EXPECT_EQ(r.rhs, 1);
  EXPECT_NEAR(r.lambda, quintic_lambda(), 1e-12);
  EXPECT_NEAR(r.lambda, 2.0444160222600054, 1e-13);
  const RationalFunction S = hilbert_series_closed_form(q);
  EXPECT_LT(S(r.bracket.lo), 1);
  EXPECT_GT(S(r.bracket.hi), 1);
  EXPECT_GE(r.bracket.lo, ratio(12, 100));
  EXPECT_LE(r.bracket.hi, ratio(13, 100));
}

TEST(Solve, SexticAtZero) {
  const EntropyResult r = solve_entropy(make_variety(4), 0.0, default_tolerance());
  EXPECT_NEAR(r.lambda, sextic_lambda(), 1e-12);
  EXPECT_NEAR(r.lambda, 2.2154763415497110, 1e-13);
  EXPECT_NEAR(r.x, 0.1091015322759001, 1e-15);
}

TEST(Solve, CertifiedRhsResidualBound) {
  for (int d = 3; d <= 6; ++d) {
    const VarietySpec X = make_variety(d);
    const EntropySolver solver(X);
    for (const Rational rhs : {ratio(1, 1000), ratio(1, 3), Rational(7), Rational(12345)}) {
      const EntropyResult r = solver.solve_rhs(rhs, default_tolerance());
      EXPECT_TRUE(r.certified_rhs);
      EXPECT_GT(r.lambda, 0);
      // S' is increasing, so S'(hi) bounds the Lipschitz constant on the bracket.
      const Rational lipschitz = solver.series().derivative()(r.bracket.hi);
      EXPECT_LE(r.residual, to_double(lipschitz * r.bracket.width()) * (1 + 1e-12));
      const RationalFunction &S = solver.series();
      EXPECT_LT(S(r.bracket.lo), rhs);
      EXPECT_GT(S(r.bracket.hi), rhs);
    }
  }
}

TEST(Solve, ExtremeT) {
  const VarietySpec q = make_variety(3);
  const EntropyResult hi = solve_entropy(q, 40.0, default_tolerance());
  const EntropyResult lo = solve_entropy(q, -40.0, default_tolerance());
  EXPECT_GT(hi.lambda, 0);
  EXPECT_GT(lo.lambda, hi.lambda);
  // Far left the equation is dominated by a_1 x = rhs.
  EXPECT_NEAR(lo.lambda, std::log(5.0) + 80.0, 1e-6);
}

TEST(Curve, QuinticClosedForm) {
  const CurvePolynomial F = entropy_curve(make_variety(3));
  EXPECT_EQ(F.degree_u(), 2u);
  EXPECT_EQ(F.degree_y(), 5u);
  // y^5 - 1 - (1 + u^2)(y - 1)^5 at a few exact points.
  for (long u : {-2, 0, 3})
    for (long y : {-3, 2, 7}) {
      const Integer expected = Integer(y * y * y * y * y - 1) -
                               Integer(1 + u * u) * Integer((y - 1) * (y - 1) * (y - 1) * (y - 1) * (y - 1));
      EXPECT_EQ(F.at_u(u)(y), Rational(expected));
    }
}

TEST(Curve, DivisionAtUOne) {
  const Polynomial y = Polynomial::identity();
  const Polynomial one = Polynomial::constant(1);
  const Polynomial quartic{1, -9, 11, -9, 1};
  const auto [q3, r3] = Polynomial::divmod(entropy_curve(make_variety(3)).at_u(1), y - one);
  EXPECT_TRUE(r3.is_zero());
  EXPECT_EQ(q3.monic(), quartic);

  const Polynomial quintic{-3, 9, -21, 19, -11, 1};
  const auto [q4, r4] = Polynomial::divmod(entropy_curve(make_variety(4)).at_u(1), y - one);
  EXPECT_TRUE(r4.is_zero());
  EXPECT_EQ(q4.monic(), quintic);
}

TEST(Curve, SpuriousRootAtOne) {
  for (int d = 3; d <= 8; ++d) {
    const CurvePolynomial F = entropy_curve(make_variety(d));
    for (long u : {-3, 0, 1, 5})
      EXPECT_EQ(F.at_u(u)(1), 0);
  }
}

TEST(Curve, GenericRouteMatchesClosedForm) {
  for (int d = 3; d <= 6; ++d) {
    const VarietySpec X = make_variety(d);
    const CurvePolynomial closed = entropy_curve(X);
    const CurvePolynomial generic = curve_from_series(hilbert_series_closed_form(X), d);
    // Same zero set: compare after scaling to the same (u^0, y^top) coefficient.
    for (long u : {-2, 1, 4}) {
      const Polynomial a = closed.at_u(u), b = generic.at_u(u);
      const auto [qa, ra] = Polynomial::divmod(a, Polynomial{-1, 1});
      EXPECT_TRUE(ra.is_zero());
      EXPECT_EQ(qa.monic(), b.monic()) << "d=" << d << " u=" << u;
    }
  }
}

TEST(Curve, NonCalabiYauUsesSeries) {
  const VarietySpec X = make_variety(3, 4);
  const CurvePolynomial F = entropy_curve(X);
  const EntropyResult r = solve_entropy(X, 0.5, default_tolerance());
  EXPECT_LE(F.normalized_residual(std::exp(0.5L), std::exp(static_cast<long double>(r.lambda))),
            1e-8L);
}

TEST(Sweep, QuinticFiveRows) {
  const auto rows = sweep(make_variety(3), -2, 2, 5, default_tolerance());
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].index, i);
    EXPECT_GT(rows[i].result.lambda, 0);
    if (i)
      EXPECT_LT(rows[i].result.lambda, rows[i - 1].result.lambda);
  }
}

TEST(Sweep, CurveResidualOnGrid) {
  for (int d : {3, 4}) {
    const auto rows = sweep(make_variety(d), -2, 2, 101, default_tolerance());
    ASSERT_EQ(rows.size(), 101u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_LE(rows[i].curve_residual, 1e-8);
      if (i)
        EXPECT_LT(rows[i].result.lambda, rows[i - 1].result.lambda);
    }
  }
}

TEST(Sweep, GridContainingZeroMatchesSolve) {
  const VarietySpec X = make_variety(4);
  const auto rows = sweep(X, -1, 1, 11, default_tolerance());
  const EntropyResult r = solve_entropy(X, 0.0, default_tolerance());
  EXPECT_EQ(rows[5].result.t, 0.0);
  EXPECT_EQ(rows[5].result.lambda, r.lambda);
  EXPECT_EQ(rows[5].result.bracket.lo, r.bracket.lo);
}

TEST(Sweep, RejectsBadGrid) {
  const VarietySpec X = make_variety(3);
  EXPECT_THROW(sweep(X, 1, 0, 5, default_tolerance()), InvalidInput);
  EXPECT_THROW(sweep(X, 0, 1, 0, default_tolerance()), InvalidInput);
}

#include "cyent/cohomology.hpp"
#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cyent;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v)
    out.emplace_back(x);
  return out;
}

} // namespace

TEST(Mukai, QuinticVectors) {
  const VarietySpec q = make_variety(3);
  EXPECT_EQ(mukai_vector(q, 0).coords, (std::vector<Rational>{1, 0, ratio(5, 12), 0}));
  // (1 + H + H^2/2 + H^3/6)(1 + 5/12 H^2), truncated at H^3.
  EXPECT_EQ(mukai_vector(q, 1).coords,
            (std::vector<Rational>{1, 1, ratio(1, 2) + ratio(5, 12), ratio(1, 6) + ratio(5, 12)}));
  for (int d = 3; d <= 8; ++d)
    EXPECT_EQ(mukai_vector(make_variety(d), 0).coords[0], 1);
  EXPECT_THROW(mukai_vector(make_variety(3, 4), 0), UnsupportedMode);
}

TEST(Mukai, PairingValues) {
  const VarietySpec q = make_variety(3);
  const VarietySpec s = make_variety(4);
  EXPECT_EQ(mukai_pairing(q, mukai_vector(q, 0), mukai_vector(q, 0)), 0);
  EXPECT_EQ(mukai_pairing(s, mukai_vector(s, 0), mukai_vector(s, 0)), 2);
  EXPECT_EQ(mukai_pairing(q, mukai_vector(q, 0), mukai_vector(q, 1)), 5);
  EXPECT_THROW(mukai_pairing(q, CohClass{{1, 0}}, mukai_vector(q, 0)), InvalidInput);
}

TEST(Mukai, PairingIsEulerForm) {
  for (int d = 3; d <= 8; ++d) {
    const VarietySpec X = make_variety(d);
    std::vector<CohClass> v;
    for (long a = -10; a <= 10; ++a)
      v.push_back(mukai_vector(X, a));
    for (long a = -10; a <= 10; ++a)
      for (long b = -10; b <= 10; ++b)
        ASSERT_EQ(mukai_pairing(X, v[static_cast<std::size_t>(a + 10)], v[static_cast<std::size_t>(b + 10)]),
                  Rational(euler_characteristic(X, b - a)))
            << "d=" << d << " a=" << a << " b=" << b;
  }
}

TEST(Action, TensorMatrix) {
  EXPECT_TRUE(tensor_matrix(5, 0).is_identity());
  EXPECT_EQ(tensor_matrix(4, 2) * tensor_matrix(4, -3), tensor_matrix(4, -1));
  EXPECT_EQ(tensor_matrix(3, 1) * mukai_vector(make_variety(3), 0), mukai_vector(make_variety(3), 1));
}

TEST(Action, TwistFixesOrFlipsStructureSheaf) {
  for (int d = 3; d <= 8; ++d) {
    const VarietySpec X = make_variety(d);
    const PhiAction act = phi_action_matrix(X);
    const CohClass vO = mukai_vector(X, 0);
    CohClass expected = vO;
    if (d % 2 == 0)
      for (auto &c : expected.coords)
        c = -c;
    EXPECT_EQ(act.twist.matrix * vO, expected) << "d=" << d;
    EXPECT_EQ(act.twist.matrix.determinant(), d % 2 == 0 ? -1 : 1);
    EXPECT_EQ(act.tensor.matrix.determinant(), 1);
    EXPECT_EQ(act.phi.matrix, act.twist.matrix * act.tensor.matrix);
  }
}

TEST(Action, EvenDimensionInvolutionAndFiniteOrder) {
  for (int d : {4, 6, 8}) {
    const PhiAction act = phi_action_matrix(make_variety(d));
    EXPECT_TRUE(act.twist.matrix.pow(2).is_identity());
    EXPECT_TRUE(act.phi.matrix.pow(static_cast<unsigned>(d + 2)).is_identity());
  }
}

TEST(Action, OddDimensionTransvection) {
  for (int d : {3, 5, 7}) {
    const PhiAction act = phi_action_matrix(make_variety(d));
    const RationalMatrix N = act.twist.matrix - RationalMatrix::identity(static_cast<std::size_t>(d + 1));
    EXPECT_FALSE(N == RationalMatrix(static_cast<std::size_t>(d + 1)));
    EXPECT_TRUE((N * N) == RationalMatrix(static_cast<std::size_t>(d + 1)));
    EXPECT_FALSE(act.phi.matrix.pow(static_cast<unsigned>(d + 2)).is_identity());
  }
}

TEST(Spectral, QuinticCharPoly) {
  const PhiAction act = phi_action_matrix(make_variety(3));
  const SpectralReport r = spectral_analysis(act.phi, 5);
  EXPECT_EQ(r.char_poly, ints({1, -9, 11, -9, 1}));
  EXPECT_FALSE(r.quasi_unipotent);
  EXPECT_NEAR(r.rho, 7.7246461990558, 1e-10);
  EXPECT_EQ(characteristic_polynomial(act.phi.matrix), (Polynomial{1, -9, 11, -9, 1}));
}

TEST(Spectral, CharPolyDividesCurveAtOne) {
  for (int d : {3, 5, 7}) {
    const VarietySpec X = make_variety(d);
    const SpectralReport r = spectral_analysis(phi_action_matrix(X).phi, 0);
    std::vector<Rational> c(r.char_poly.begin(), r.char_poly.end());
    const auto [q, rem] = Polynomial::divmod(entropy_curve(X).at_u(1), Polynomial(c));
    EXPECT_TRUE(rem.is_zero()) << "d=" << d;
  }
}

TEST(Spectral, SexticIsQuasiUnipotent) {
  const SpectralReport r = spectral_analysis(phi_action_matrix(make_variety(4)).phi, 6);
  EXPECT_TRUE(r.quasi_unipotent);
  EXPECT_EQ(r.rho, 1.0);
  // (y^6 - 1) / (y - 1)
  EXPECT_EQ(r.char_poly, ints({1, 1, 1, 1, 1, 1}));
}

TEST(Spectral, IdentityMatrix) {
  const SpectralReport r = spectral_analysis({RationalMatrix::identity(4), "id"}, 1);
  EXPECT_TRUE(r.quasi_unipotent);
  EXPECT_EQ(r.rho, 1.0);
  EXPECT_EQ(r.char_poly, ints({1, -4, 6, -4, 1}));
}

TEST(Spectral, RandomCharPolyAgainstDeterminant) {
  // det(A) = (-1)^n p(0), trace = -p_{n-1}.
  RationalMatrix A(4);
  long v = 3;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      v = (v * 37 + 11) % 23;
      A(i, j) = ratio(v - 11, 1 + static_cast<long>(i + j) % 3);
    }
  const Polynomial p = characteristic_polynomial(A);
  EXPECT_EQ(p.coeff(0), A.determinant());
  EXPECT_EQ(p.coeff(3), -A.trace());
  EXPECT_EQ(p.leading(), 1);
}

TEST(Counterexample, EvenDimensions) {
  for (int d : {4, 6}) {
    const CounterexampleReport r = counterexample_report(make_variety(d));
    EXPECT_TRUE(r.quasi_unipotent);
    EXPECT_EQ(r.rho, 1.0);
    EXPECT_EQ(r.log_rho_full, 0.0);
    EXPECT_GT(r.h0, 0.0);
    EXPECT_FALSE(r.kt_holds);
  }
  EXPECT_NEAR(counterexample_report(make_variety(4)).h0, 2.2154763415497110, 1e-12);
}

TEST(Counterexample, OddDimensions) {
  const double expected[] = {2.04441602226001, 2.36152497658234, 2.60199854012494};
  for (int d : {3, 5, 7}) {
    const CounterexampleReport r = counterexample_report(make_variety(d));
    EXPECT_FALSE(r.quasi_unipotent);
    EXPECT_TRUE(r.kt_holds) << "d=" << d;
    EXPECT_NEAR(r.h0, expected[(d - 3) / 2], 1e-12);
    EXPECT_NEAR(r.log_rho_full, r.h0, 1e-8);
  }
  EXPECT_THROW(counterexample_report(make_variety(3, 4)), UnsupportedMode);
}

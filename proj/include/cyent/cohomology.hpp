#pragma once

// Cohomological shadow of Phi = T_O o (- (x) O(-1)) on a Calabi-Yau
// hypersurface, restricted to the span of 1, H, ..., H^d.
//
// Outside that span Phi acts as the identity: e^{-H} fixes primitive
// middle-degree classes, and odd cohomology pairs to zero with v(O). So the
// full spectral radius is max(1, rho of the modeled block). The reports carry
// this assumption in their `detail` text.

#include "cyent/geometry.hpp"
#include "cyent/numerics.hpp"

#include <string>
#include <vector>

namespace cyent {

// Coordinates in the basis 1, H, ..., H^d.
struct CohClass {
  std::vector<Rational> coords;

  std::size_t size() const { return coords.size(); }
  friend bool operator==(const CohClass &, const CohClass &) = default;
};

class RationalMatrix {
public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}
  static RationalMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Rational &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  RationalMatrix pow(unsigned e) const;
  Rational determinant() const;
  Rational trace() const;
  bool is_identity() const;

  friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b);
  friend RationalMatrix operator+(const RationalMatrix &a, const RationalMatrix &b);
  friend RationalMatrix operator-(const RationalMatrix &a, const RationalMatrix &b);
  friend CohClass operator*(const RationalMatrix &a, const CohClass &v);
  friend bool operator==(const RationalMatrix &, const RationalMatrix &) = default;

private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

struct ActionMatrix {
  RationalMatrix matrix;
  std::string functor;
};

struct PhiAction {
  ActionMatrix twist;  // T_O
  ActionMatrix tensor; // - (x) O(-1)
  ActionMatrix phi;    // twist * tensor
};

struct SpectralReport {
  std::vector<Integer> char_poly; // ascending degree, content 1, leading > 0
  std::vector<double> eigen_moduli;
  double rho = 0.0; // exactly 1 when quasi_unipotent
  bool quasi_unipotent = false;
  unsigned order_checked = 0;
};

struct CounterexampleReport {
  int dim = 0;
  double h0 = 0.0;
  double rho = 0.0;
  double log_rho_full = 0.0;
  bool kt_holds = false;
  bool quasi_unipotent = false;
  std::vector<Integer> char_poly;
  std::string detail;
};

// Tolerance on |h_0 - log rho| for declaring the conjectured equality.
inline constexpr double kKtTolerance = 1e-8;

// ch(O(k)) sqrt(td X) truncated at H^d. Builtin Calabi-Yau hypersurfaces only.
CohClass mukai_vector(const VarietySpec &X, long k);

// <v, w> = integral of v^dual w, where v^dual flips the sign of the
// H^j coordinate for odd j. Normalized so <v(O(a)), v(O(b))> = chi(O(b-a)).
Rational mukai_pairing(const VarietySpec &X, const CohClass &v, const CohClass &w);

// e^{kH} as a lower-triangular matrix acting on the H-basis.
RationalMatrix tensor_matrix(int dim, long k);

// Builtin Calabi-Yau hypersurfaces only (UnsupportedMode otherwise). Fails
// with InvariantViolation if the pairing does not reproduce chi.
PhiAction phi_action_matrix(const VarietySpec &X);

// Exact characteristic polynomial (Faddeev-LeVerrier over Q).
Polynomial characteristic_polynomial(const RationalMatrix &M);

SpectralReport spectral_analysis(const ActionMatrix &M, unsigned order_to_check);

CounterexampleReport counterexample_report(const VarietySpec &X);

} // namespace cyent

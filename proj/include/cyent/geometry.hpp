#pragma once

#include "cyent/numerics.hpp"

#include <optional>
#include <vector>

namespace cyent {

enum class VarietyMode { BuiltinHypersurface, UserHilbert };

// A polarized variety X of dimension d >= 3 with hyperplane class H.
// Builtin mode: a hypersurface of the given degree in P^{d+1} (degree d+2 is
// the Calabi-Yau case). User mode: anything with a known Hilbert polynomial.
struct VarietySpec {
  int dim = 3;
  int degree = 5;
  Integer top_intersection = 5; // integral of H^d
  VarietyMode mode = VarietyMode::BuiltinHypersurface;
  Polynomial hilbert; // only meaningful in user mode

  bool is_builtin() const { return mode == VarietyMode::BuiltinHypersurface; }
  bool is_calabi_yau_hypersurface() const { return is_builtin() && degree == dim + 2; }
};

// Chern, Todd and square-root-Todd classes as coefficients of H^i, i = 0..d.
struct CharacteristicClasses {
  std::vector<Rational> chern;
  std::vector<Rational> todd;
  std::vector<Rational> sqrt_todd;
};

// Number of sample points used to validate user-supplied Hilbert data.
inline int hilbert_check_points(int dim) { return 2 * dim + 10; }

// Throws DimensionTooSmall for d < 3, InvalidInput for a non-positive degree
// or Hilbert data that is not a strictly increasing positive integer
// sequence on k = 1..2d+10. When `hilbert` is given, `degree` is ignored and
// top_intersection is read off the leading coefficient (d! * lead).
VarietySpec make_variety(int dim, std::optional<int> degree = std::nullopt,
                         std::optional<Polynomial> hilbert = std::nullopt);

// chi(O_X(k)) = B(k+d+1, d+1) - B(k-n+d+1, d+1) in builtin mode; the Hilbert
// polynomial evaluated at k in user mode.
Integer euler_characteristic(const VarietySpec &X, long k);

// Degree-d polynomial P with P(k) = chi(O(k)) for all integers k.
Polynomial hilbert_polynomial(const VarietySpec &X);

// Builtin mode only (UnsupportedMode otherwise).
CharacteristicClasses characteristic_classes(const VarietySpec &X);

// Second chi route: integral of e^{kH} td(X), i.e. the H^d coefficient times
// the degree. Builtin mode only.
Rational hrr_euler_characteristic(const VarietySpec &X, const CharacteristicClasses &classes,
                                  long k);

} // namespace cyent

#include "cyent/cohomology.hpp"

#include "cyent/entropy.hpp"
#include "cyent/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyent {

// ------------------------------------------------------------ RationalMatrix

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b) {
  const std::size_t n = a.size();
  RationalMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a(i, k)) == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix operator+(const RationalMatrix &a, const RationalMatrix &b) {
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i)
    c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix &a, const RationalMatrix &b) {
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i)
    c.data_[i] -= b.data_[i];
  return c;
}

CohClass operator*(const RationalMatrix &a, const CohClass &v) {
  CohClass out{std::vector<Rational>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      out.coords[i] += a(i, j) * v.coords[j];
  return out;
}

RationalMatrix RationalMatrix::pow(unsigned e) const {
  RationalMatrix result = identity(n_), base = *this;
  while (e) {
    if (e & 1u)
      result = result * base;
    e >>= 1u;
    if (e)
      base = base * base;
  }
  return result;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < n_; ++i)
    t += (*this)(i, i);
  return t;
}

Rational RationalMatrix::determinant() const {
  RationalMatrix m = *this;
  Rational det = 1;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && sgn(m(pivot, col)) == 0)
      ++pivot;
    if (pivot == n_)
      return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n_; ++j)
        std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n_; ++i) {
      if (sgn(m(i, col)) == 0)
        continue;
      const Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n_; ++j)
        m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

bool RationalMatrix::is_identity() const { return *this == identity(n_); }

// ---------------------------------------------------------- Mukai lattice

namespace {

void require_cy(const VarietySpec &X) {
  if (!X.is_calabi_yau_hypersurface())
    throw UnsupportedMode("cohomological actions need a builtin Calabi-Yau hypersurface");
}

Rational inverse_factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return ratio(1, f);
}

} // namespace

RationalMatrix tensor_matrix(int dim, long k) {
  const auto n = static_cast<std::size_t>(dim + 1);
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational kpow = 1;
    for (std::size_t j = i + 1; j-- > 0;) {
      // entry (i, j) = k^{i-j} / (i-j)!
      m(i, j) = kpow * inverse_factorial(static_cast<unsigned>(i - j));
      kpow *= k;
    }
  }
  return m;
}

CohClass mukai_vector(const VarietySpec &X, long k) {
  require_cy(X);
  const CharacteristicClasses cc = characteristic_classes(X);
  CohClass v{cc.sqrt_todd};
  return tensor_matrix(X.dim, k) * v;
}

Rational mukai_pairing(const VarietySpec &X, const CohClass &v, const CohClass &w) {
  const auto d = static_cast<std::size_t>(X.dim);
  if (v.size() != d + 1 || w.size() != d + 1)
    throw InvalidInput("cohomology classes must have d + 1 coordinates");
  Rational top = 0;
  for (std::size_t j = 0; j <= d; ++j) {
    const Rational term = v.coords[j] * w.coords[d - j];
    top += (j % 2 == 0) ? term : Rational(-term);
  }
  return top * Rational(X.top_intersection);
}

PhiAction phi_action_matrix(const VarietySpec &X) {
  require_cy(X);
  const auto n = static_cast<std::size_t>(X.dim + 1);
  const CohClass vO = mukai_vector(X, 0);

  for (long a = -1; a <= 1; ++a)
    for (long b = -1; b <= 1; ++b) {
      const Rational lhs = mukai_pairing(X, mukai_vector(X, a), mukai_vector(X, b));
      if (lhs != Rational(euler_characteristic(X, b - a)))
        throw InvariantViolation("Mukai pairing does not reproduce chi(O(" +
                                 std::to_string(b - a) + "))");
    }

  // x -> x - <v(O), x> v(O); the functional <v(O), .> as a row vector.
  const auto d = n - 1;
  std::vector<Rational> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational c = vO.coords[d - i] * Rational(X.top_intersection);
    row[i] = ((d - i) % 2 == 0) ? c : Rational(-c);
  }
  RationalMatrix twist = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      twist(i, j) -= vO.coords[i] * row[j];

  PhiAction out;
  out.twist = {twist, "T_O"};
  out.tensor = {tensor_matrix(X.dim, -1), "-(x)O(-1)"};
  out.phi = {twist * out.tensor.matrix, "T_O o -(x)O(-1)"};
  return out;
}

// ------------------------------------------------------------------ spectra

Polynomial characteristic_polynomial(const RationalMatrix &A) {
  const std::size_t n = A.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix M(n); // M_0 = 0
  const RationalMatrix I = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix cI = I;
    for (std::size_t i = 0; i < n; ++i)
      cI(i, i) = c[n - k + 1];
    M = A * M + cI;
    c[n - k] = -(A * M).trace() / static_cast<unsigned long>(k);
  }
  return Polynomial(std::move(c));
}

namespace {

std::vector<Integer> integer_normalize(const Polynomial &p) {
  std::vector<Rational> v(p.coefficients().begin(), p.coefficients().end());
  Integer lcm = 1;
  for (const auto &q : v)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out(v.size());
  Integer content = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rational(v[i] * Rational(lcm)).get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
  }
  if (!out.empty() && out.back() < 0)
    content = -content;
  if (content != 0)
    for (auto &z : out)
      z /= content;
  return out;
}

std::vector<double> root_moduli(const std::vector<Integer> &coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0)
    return {};
  const double lead = coeffs.back().get_d();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                    static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  double cauchy = 0.0;
  for (std::size_t i = 0; i < deg; ++i) {
    const double a = coeffs[i].get_d() / lead;
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -a;
    cauchy = std::max(cauchy, std::fabs(a));
  }
  cauchy += 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    moduli.push_back(std::abs(solver.eigenvalues()[i]));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  if (!moduli.empty() && moduli.front() > cauchy * (1 + 1e-12))
    throw InvariantViolation("eigenvalue modulus exceeds the Cauchy bound");
  return moduli;
}

} // namespace

SpectralReport spectral_analysis(const ActionMatrix &M, unsigned order_to_check) {
  SpectralReport r;
  r.char_poly = integer_normalize(characteristic_polynomial(M.matrix));
  r.eigen_moduli = root_moduli(r.char_poly);
  r.order_checked = order_to_check;
  r.quasi_unipotent = order_to_check > 0 && M.matrix.pow(order_to_check).is_identity();
  if (r.quasi_unipotent)
    r.rho = 1.0;
  else
    r.rho = r.eigen_moduli.empty() ? 0.0 : r.eigen_moduli.front();
  return r;
}

CounterexampleReport counterexample_report(const VarietySpec &X) {
  require_cy(X);
  CounterexampleReport rep;
  rep.dim = X.dim;
  rep.h0 = EntropySolver(X).solve(0.0, default_tolerance()).lambda;
  const PhiAction action = phi_action_matrix(X);
  const SpectralReport spec = spectral_analysis(action.phi, static_cast<unsigned>(X.dim + 2));
  rep.rho = spec.rho;
  rep.quasi_unipotent = spec.quasi_unipotent;
  rep.char_poly = spec.char_poly;
  rep.log_rho_full = std::log(std::max(1.0, spec.rho));
  rep.kt_holds = std::fabs(rep.h0 - rep.log_rho_full) <= kKtTolerance;

  std::ostringstream os;
  os << "action modeled on span(1, H, ..., H^" << X.dim
     << "); identity assumed on primitive and odd cohomology, so rho_full = max(1, rho_block)";
  if (spec.quasi_unipotent)
    os << "; phi^" << X.dim + 2 << " = I exactly, rho = 1";
  rep.detail = os.str();
  return rep;
}

} // namespace cyent

#include "cyent/dynamics.hpp"

#include "cyent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace cyent {

SParam::SParam(Rational s) : value(std::move(s)) {
  if (sgn(value) <= 0)
    throw InvalidInput("s = e^{-(d-1)t} must be positive");
}

SParam SParam::from_t(double t, int dim) {
  const double s = std::exp(-static_cast<double>(dim - 1) * t);
  if (!std::isfinite(s) || s <= 0.0)
    throw InvalidInput("e^{-(d-1)t} is not a positive finite double");
  return SParam(Rational(s));
}

std::vector<Integer> hilbert_values(const VarietySpec &X, int count) {
  std::vector<Integer> a(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 1; k <= count; ++k)
    a[static_cast<std::size_t>(k - 1)] = euler_characteristic(X, k);
  return a;
}

namespace {

void check_table_args(int n_max, int k_max) {
  if (n_max < 0)
    throw InvalidInput("n_max must be >= 0");
  if (k_max < 1)
    throw InvalidInput("k_max must be >= 1");
}

template <class T, class Step>
BTable<T> fill_table(const VarietySpec &X, int n_max, int k_max, Step step) {
  const int width = k_max + n_max;
  const std::vector<Integer> a = hilbert_values(X, width);
  BTable<T> table;
  table.n_max = n_max;
  table.k_max = k_max;
  table.rows.resize(static_cast<std::size_t>(n_max + 1));
  auto &seed = table.rows[0];
  seed.reserve(static_cast<std::size_t>(width));
  for (int k = 1; k <= width; ++k)
    if constexpr (std::is_same_v<T, Polynomial>)
      seed.push_back(Polynomial::constant(Rational(a[static_cast<std::size_t>(k - 1)])));
    else
      seed.push_back(Rational(a[static_cast<std::size_t>(k - 1)]));
  for (int n = 1; n <= n_max; ++n) {
    const auto &prev = table.rows[static_cast<std::size_t>(n - 1)];
    auto &row = table.rows[static_cast<std::size_t>(n)];
    const int cols = width - n;
    row.reserve(static_cast<std::size_t>(cols));
    for (int k = 1; k <= cols; ++k)
      row.push_back(step(prev[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(k - 1)],
                         prev[0]));
  }
  return table;
}

} // namespace

SymbolicBTable b_table(const VarietySpec &X, int n_max, int k_max, BTableLimits limits) {
  check_table_args(n_max, k_max);
  // Row n has width k_max + n_max - n entries of degree <= n.
  std::size_t estimate = 0;
  for (int n = 0; n <= n_max; ++n)
    estimate += static_cast<std::size_t>(k_max + n_max - n) * static_cast<std::size_t>(n + 1);
  if (estimate > limits.max_coefficients)
    throw ResourceCapExceeded("symbolic B-table needs ~" + std::to_string(estimate) +
                              " coefficients, cap is " +
                              std::to_string(limits.max_coefficients));
  const Polynomial s_monomial = Polynomial::identity();
  return fill_table<Polynomial>(
      X, n_max, k_max,
      [&](const Polynomial &right, const Integer &a_k, const Polynomial &first) {
        return right + first * s_monomial * Rational(a_k);
      });
}

EvaluatedBTable b_table(const VarietySpec &X, int n_max, int k_max, const SParam &s) {
  check_table_args(n_max, k_max);
  return fill_table<Rational>(X, n_max, k_max,
                              [&](const Rational &right, const Integer &a_k, const Rational &first) {
                                return Rational(right + Rational(a_k) * s.value * first);
                              });
}

namespace {

void fill_ratios(GrowthTable &g) {
  for (std::size_t n = 1; n < g.log_C.size(); ++n) {
    g.lambda_ratio.push_back(g.log_C[n] - g.log_C[n - 1]);
    g.lambda_cesaro.push_back(g.log_C[n] / static_cast<double>(n));
  }
}

GrowthTable c_sequence_exact(const VarietySpec &X, const SParam &s, int n_max) {
  if (n_max > kExactCCap)
    throw ResourceCapExceeded("exact C sequence is capped at n_max = " +
                              std::to_string(kExactCCap));
  const std::vector<Integer> a = hilbert_values(X, n_max + 1);
  std::vector<Rational> ap(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    ap[j] = Rational(a[j]) * s.value;

  GrowthTable g;
  g.exact.reserve(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    Rational c = ap[static_cast<std::size_t>(n)]; // a'_{n+1}
    for (int j = 1; j <= n; ++j)
      c += ap[static_cast<std::size_t>(j - 1)] * g.exact[static_cast<std::size_t>(n - j)];
    g.exact.push_back(c);
    g.log_C.push_back(log_abs(c));
  }
  fill_ratios(g);
  return g;
}

GrowthTable c_sequence_log(const VarietySpec &X, const SParam &s, int n_max) {
  const std::vector<Integer> a = hilbert_values(X, n_max + 1);
  const double log_s = log_abs(s.value);
  std::vector<double> log_ap(a.size()); // log a'_j at index j - 1
  for (std::size_t j = 0; j < a.size(); ++j)
    log_ap[j] = log_abs(Rational(a[j])) + log_s;

  // D_j = C_j e^{-mu j}
  double mu = 0.0;
  std::vector<double> D;
  std::vector<double> w; // w_j = a'_j e^{-mu j} at index j - 1
  D.reserve(static_cast<std::size_t>(n_max + 1));
  GrowthTable g;
  g.log_C.reserve(static_cast<std::size_t>(n_max + 1));

  for (int n = 0; n <= n_max; ++n) {
    w.resize(static_cast<std::size_t>(n + 1));
    for (int j = 1; j <= n + 1; ++j)
      w[static_cast<std::size_t>(j - 1)] =
          std::exp(log_ap[static_cast<std::size_t>(j - 1)] - mu * static_cast<double>(j));
    // a'_{n+1} e^{-mu n} = w_{n+1} e^{mu}
    double dn = w[static_cast<std::size_t>(n)] * std::exp(mu);
    for (int j = 1; j <= n; ++j)
      dn += w[static_cast<std::size_t>(j - 1)] * D[static_cast<std::size_t>(n - j)];
    if (!(dn > 0.0) || !std::isfinite(dn))
      throw NonConvergence("log-space C recursion lost range at n = " + std::to_string(n));
    D.push_back(dn);
    g.log_C.push_back(std::log(dn) + mu * static_cast<double>(n));

    if (n >= 1) {
      // Move mu to the running ratio estimate and rescale the history.
      const double delta = std::log(D[static_cast<std::size_t>(n)] / D[static_cast<std::size_t>(n - 1)]);
      mu += delta;
      for (int j = 0; j <= n; ++j)
        D[static_cast<std::size_t>(j)] *= std::exp(-delta * static_cast<double>(j));
    }
  }
  fill_ratios(g);
  return g;
}

} // namespace

GrowthTable c_sequence(const VarietySpec &X, const SParam &s, int n_max, CMode mode) {
  if (n_max < 0)
    throw InvalidInput("n_max must be >= 0");
  return mode == CMode::Exact ? c_sequence_exact(X, s, n_max) : c_sequence_log(X, s, n_max);
}

Rational composition_oracle(const VarietySpec &X, const SParam &s, int n) {
  if (n < 0)
    throw InvalidInput("n must be >= 0");
  if (n > 20)
    throw ResourceCapExceeded("composition enumeration is capped at n = 20");
  const std::vector<Integer> a = hilbert_values(X, n + 1);
  // Bit i of mask set: cut between positions i+1 and i+2 of 1..n+1.
  Rational total = 0;
  const unsigned long masks = 1ul << n;
  for (unsigned long mask = 0; mask < masks; ++mask) {
    Rational term = 1;
    int piece = 1;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ul << i)) {
        term *= Rational(a[static_cast<std::size_t>(piece - 1)]) * s.value;
        piece = 1;
      } else {
        ++piece;
      }
    }
    term *= Rational(a[static_cast<std::size_t>(piece - 1)]) * s.value;
    total += term;
  }
  return total;
}

namespace {

// Accumulates prod a_{i_j} s^{q} over ordered compositions of `m` (all
// pieces >= 1) into coefficient vector `acc`, each term premultiplied by
// `scale` s^{q0}.
void add_compositions(const std::vector<Integer> &a, int m, const Integer &scale, int q0,
                      std::vector<Integer> &acc) {
  if (m == 0) {
    if (acc.size() <= static_cast<std::size_t>(q0))
      acc.resize(static_cast<std::size_t>(q0) + 1);
    acc[static_cast<std::size_t>(q0)] += scale;
    return;
  }
  for (int first = 1; first <= m; ++first)
    add_compositions(a, m - first, scale * a[static_cast<std::size_t>(first - 1)], q0 + 1, acc);
}

// P_{m,k} as integer coefficients in s.
std::vector<Integer> p_coefficients(const std::vector<Integer> &a, int m, int k) {
  std::vector<Integer> acc;
  for (int first = k; first <= m; ++first)
    add_compositions(a, m - first, a[static_cast<std::size_t>(first - 1)], 1, acc);
  return acc;
}

Polynomial to_polynomial(const std::vector<Integer> &c) {
  std::vector<Rational> v(c.begin(), c.end());
  return Polynomial(std::move(v));
}

} // namespace

Polynomial partition_formula(const VarietySpec &X, int n, int k) {
  if (n < 0 || k < 1)
    throw InvalidInput("need n >= 0 and k >= 1");
  if (n > 12)
    throw ResourceCapExceeded("partition enumeration is capped at n = 12");
  const std::vector<Integer> a = hilbert_values(X, n + k);
  Polynomial out = Polynomial::constant(Rational(a[static_cast<std::size_t>(n + k - 1)]));
  for (int j = 1; j <= n; ++j)
    out += to_polynomial(p_coefficients(a, n + k - j, k)) * Rational(a[static_cast<std::size_t>(j - 1)]);
  return out;
}

bool verify_partition_formula(const VarietySpec &X, int n, int k) {
  const Polynomial brute = partition_formula(X, n, k);
  const SymbolicBTable table = b_table(X, n, k);
  return brute == table.at(n, k);
}

GrowthEstimate growth_estimate(const GrowthTable &table) {
  const auto &L = table.log_C;
  if (L.size() < 10)
    throw InvalidInput("growth estimate needs at least 10 terms");
  const std::size_t n = L.size() - 1;
  GrowthEstimate est;
  est.lambda_hat = L[n] - L[n - 1];
  est.lambda_cesaro = L[n] / static_cast<double>(n);
  double lo = est.lambda_hat, hi = est.lambda_hat;
  for (std::size_t i = n - 9; i < n; ++i) {
    lo = std::min(lo, L[i] - L[i - 1]);
    hi = std::max(hi, L[i] - L[i - 1]);
  }
  est.tail_oscillation = hi - lo;
  return est;
}

} // namespace cyent

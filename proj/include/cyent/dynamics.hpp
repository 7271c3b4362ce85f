#pragma once

// Dimension-counting recursions behind the entropy formula.
//
//   B_{0,k} = a_k,   B_{n,k} = B_{n-1,k+1} + a_k s B_{n-1,1}
//   C_n = s B_{n,1} = a'_1 C_{n-1} + ... + a'_n C_0 + a'_{n+1},  a'_k = a_k s
//
// with s = e^{-(d-1)t}. B_{n,k} collects the graded Hom dimensions of
// Phi^n(G') against O(k); log C_n / n converges to h_t.

#include "cyent/geometry.hpp"
#include "cyent/numerics.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace cyent {

// s = e^{-(d-1)t}, always positive.
struct SParam {
  Rational value;

  explicit SParam(Rational s);
  // e^{-(d-1)t} rounded to double, taken exactly.
  static SParam from_t(double t, int dim);
};

// B[n][k] for 0 <= n <= n_max, 1 <= k <= k_max. Rows are stored with the
// extra columns the recursion consumed (row n reaches k_max + n_max - n).
template <class T> struct BTable {
  int n_max = 0;
  int k_max = 1;
  std::vector<std::vector<T>> rows; // rows[n][k - 1]

  const T &at(int n, int k) const { return rows.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k - 1)); }
};

using SymbolicBTable = BTable<Polynomial>; // polynomials in s
using EvaluatedBTable = BTable<Rational>;

struct BTableLimits {
  // Cap on the total number of stored polynomial coefficients.
  std::size_t max_coefficients = 20'000'000;
};

// a_1..a_count (index 0 holds a_1).
std::vector<Integer> hilbert_values(const VarietySpec &X, int count);

SymbolicBTable b_table(const VarietySpec &X, int n_max, int k_max, BTableLimits limits = {});
EvaluatedBTable b_table(const VarietySpec &X, int n_max, int k_max, const SParam &s);

enum class CMode { Exact, LogSpace };

struct GrowthTable {
  std::vector<double> log_C;         // log C_n, n = 0..n_max
  std::vector<double> lambda_ratio;  // [i] = log(C_{i+1} / C_i)
  std::vector<double> lambda_cesaro; // [i] = log(C_{i+1}) / (i+1)
  std::vector<Rational> exact;       // C_n in exact mode, empty otherwise
};

inline constexpr int kExactCCap = 200;

// Exact mode requires n_max <= 200 (ResourceCapExceeded beyond). Log-space
// mode keeps C_n e^{-mu n} near 1 with mu tracking the running growth
// ratio; relative error in C_n stays within about n * 2^-50.
GrowthTable c_sequence(const VarietySpec &X, const SParam &s, int n_max, CMode mode);

// Sum over ordered compositions i_1 + ... + i_q = n + 1 of prod a'_{i_j};
// brute force over all 2^n compositions, n <= 20.
Rational composition_oracle(const VarietySpec &X, const SParam &s, int n);

// a_{n+k} + sum_{j=1}^{n} a_j P_{n+k-j,k}, where P_{m,k} sums a_{i_1}...a_{i_q} s^q
// over ordered compositions of m with first piece >= k. Brute force, n <= 12.
Polynomial partition_formula(const VarietySpec &X, int n, int k);
// partition_formula(X, n, k) == b_table(X, n, k).at(n, k) as polynomials in s.
bool verify_partition_formula(const VarietySpec &X, int n, int k);

struct GrowthEstimate {
  double lambda_hat = 0.0;       // final ratio estimate
  double lambda_cesaro = 0.0;    // final log(C_n)/n
  double tail_oscillation = 0.0; // spread of the last 10 ratio estimates
};

// Needs at least 10 entries in log_C.
GrowthEstimate growth_estimate(const GrowthTable &table);

} // namespace cyent

#pragma once

// Reference implementations used only by the tests. Each one takes a
// different route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using LComplex = std::complex<long double>;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// log Gamma by upward recurrence to Re z >= 16 and the Stirling series,
/// reflection for Re z < 1/2. Branch: any logarithm of Gamma(z).
inline LComplex log_gamma(LComplex z) {
  if (z.real() < 0.5L) {
    return std::log(kPiL) - std::log(std::sin(kPiL * z)) - log_gamma(LComplex(1) - z);
  }
  LComplex shift = 0;
  while (z.real() < 16.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  static const long double bernoulli[] = {1.0L / 6,        -1.0L / 30,      1.0L / 42,      -1.0L / 30,
                                          5.0L / 66,       -691.0L / 2730,  7.0L / 6,       -3617.0L / 510,
                                          43867.0L / 798,  -174611.0L / 330};
  LComplex sum = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2 * kPiL);
  LComplex zpow = z;
  const LComplex z2 = z * z;
  for (int k = 1; k <= 10; ++k) {
    sum += bernoulli[k - 1] / (long double)(2 * k * (2 * k - 1)) / zpow;
    zpow *= z2;
  }
  return sum - shift;
}

/// Difference of two angles reduced to [-pi, pi].
inline double angle_gap(double a, double b) {
  double d = std::fmod(a - b, 2.0 * double(kPiL));
  if (d > double(kPiL)) d -= 2.0 * double(kPiL);
  if (d < -double(kPiL)) d += 2.0 * double(kPiL);
  return std::abs(d);
}

/// Laplace expansion along the first row.
template <class T>
T cofactor_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  T det(0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<T>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const T term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

/// Every nu with la[0] >= nu[0] >= la[1] >= ... by nested recursion.
inline void each_interlacing(const std::vector<std::int64_t>& la,
                             const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> nu(la.size() - 1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nu.size()) {
      f(nu);
      return;
    }
    for (std::int64_t v = la[i + 1]; v <= la[i]; ++v) {
      nu[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

/// Number of paths from the root to la, by memoized recursion over predecessors.
inline BigInt path_count(const std::vector<std::int64_t>& la) {
  static std::map<std::vector<std::int64_t>, BigInt> memo;
  if (la.size() <= 1) return 1;
  if (auto it = memo.find(la); it != memo.end()) return it->second;
  BigInt total = 0;
  each_interlacing(la, [&](const std::vector<std::int64_t>& nu) { total += path_count(nu); });
  memo.emplace(la, total);
  return total;
}

/// Number of chains nu = mu_n < ... < mu_N = la.
inline BigInt chain_count(const std::vector<std::int64_t>& nu, const std::vector<std::int64_t>& la) {
  if (la.size() == nu.size()) return la == nu ? 1 : 0;
  BigInt total = 0;
  each_interlacing(la, [&](const std::vector<std::int64_t>& mu) { total += chain_count(nu, mu); });
  return total;
}

/// Column lengths of a Young diagram given by its row lengths.
inline std::vector<std::int64_t> transpose(const std::vector<std::int64_t>& rows) {
  std::vector<std::int64_t> cols;
  for (std::int64_t j = 1; !rows.empty() && j <= rows.front(); ++j) {
    std::int64_t c = 0;
    for (auto r : rows) c += r >= j;
    cols.push_back(c);
  }
  return cols;
}

/// Number of boxes on the diagonal.
inline std::size_t durfee(const std::vector<std::int64_t>& rows) {
  std::size_t d = 0;
  while (d < rows.size() && rows[d] >= std::int64_t(d + 1)) ++d;
  return d;
}

/// Schur polynomial s_la(x_1..x_N) as a sum over Gelfand-Tsetlin patterns:
/// each level k contributes x_k^(|row k| - |row k-1|). Entries may be negative.
inline std::complex<double> schur(const std::vector<std::int64_t>& la, const std::vector<std::complex<double>>& x) {
  auto total = [](const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (auto e : v) s += e;
    return s;
  };
  std::function<std::complex<double>(const std::vector<std::int64_t>&)> rec =
      [&](const std::vector<std::int64_t>& row) -> std::complex<double> {
    const std::size_t k = row.size();
    if (k == 0) return 1.0;
    std::complex<double> acc = 0.0;
    const std::int64_t top = total(row);
    if (k == 1) return std::pow(x[0], double(top));
    each_interlacing(row, [&](const std::vector<std::int64_t>& nu) {
      acc += std::pow(x[k - 1], double(top - total(nu))) * rec(nu);
    });
    return acc;
  };
  return rec(la);
}

}  // namespace oracle

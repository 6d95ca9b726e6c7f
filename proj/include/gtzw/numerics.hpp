#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <type_traits>
#include <vector>

#include "gtzw/errors.hpp"

namespace gtzw {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduce an angle to (-pi, pi].
double normalize_phase(double phase);

/// Nonzero complex number stored as exp(log_modulus) * exp(i*phase).
///
/// Products of many Gamma values overflow double long before their ratios
/// do; keeping them in this form lets callers multiply freely and only
/// exponentiate at the end.
class LogComplex {
 public:
  constexpr LogComplex() = default;
  LogComplex(double log_modulus, double phase)
      : log_modulus_(log_modulus), phase_(normalize_phase(phase)) {}

  /// Throws DomainError for z == 0.
  static LogComplex from_value(Complex z);

  double log_modulus() const { return log_modulus_; }
  double phase() const { return phase_; }
  Complex value() const { return std::polar(std::exp(log_modulus_), phase_); }

  LogComplex inverse() const { return {-log_modulus_, -phase_}; }
  LogComplex conj() const { return {log_modulus_, -phase_}; }

  LogComplex& operator*=(const LogComplex& o) {
    log_modulus_ += o.log_modulus_;
    phase_ = normalize_phase(phase_ + o.phase_);
    return *this;
  }
  LogComplex& operator/=(const LogComplex& o) { return *this *= o.inverse(); }
  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

 private:
  double log_modulus_ = 0.0;
  double phase_ = 0.0;
};

/// True iff z is exactly one of 0, -1, -2, ...
bool is_nonpositive_integer(Complex z);

/// Gamma(z) in log form. Lanczos (g = 607/128) for Re z >= 1/2, reflection
/// otherwise. Throws PoleError at the nonpositive integers.
LogComplex log_gamma(Complex z);

/// 1/Gamma(z); exactly zero at the nonpositive integers.
Complex recip_gamma(Complex z);

/// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const T> data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = SquareMatrix<Complex>;

template <class T>
auto pivot_magnitude(const T& x) {
  using std::abs;
  if constexpr (std::is_floating_point_v<decltype(abs(x))>) return abs(x);
  else return T(abs(x));
}

/// Determinant by Gaussian elimination with partial pivoting.
template <class T>
T determinant(SquareMatrix<T> m) {
  const std::size_t n = m.size();
  T det{1};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    auto best = pivot_magnitude(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (auto a = pivot_magnitude(m(r, col)); a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best == decltype(best){0}) return T{0};
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    const T p = m(col, col);
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = m(r, col) / p;
      if (f == T{0}) continue;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Complex determinant for N <= 64.
Complex det_complex(const ComplexMatrix& m);

/// log(sum_i exp(terms_i)). Entries equal to -inf are zero weights; an
/// all-zero input yields -inf. Throws DomainError on an empty list.
double log_sum_exp(std::span<const double> terms);

/// Streaming log-sum-exp with Neumaier-compensated accumulation.
class LogSumAccumulator {
 public:
  void add(double log_weight);
  double result() const;
  std::size_t count() const { return count_; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
  double compensation_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace gtzw

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "gtzw/exact.hpp"
#include "gtzw/numerics.hpp"
#include "gtzw/random.hpp"
#include "oracles/oracles.hpp"

using namespace gtzw;

namespace {

struct GammaRef {
  Complex z;
  double log_modulus;
  double phase;
};

// 30-digit reference values.
const GammaRef kGammaRefs[] = {
    {{3.0, 4.0}, -1.756626784603784110530604, -1.540520869144928548730397},
    {{-2.5, 0.3}, -0.4320888926132019205150334, -2.810160114110155030384235},
    {{0.1, -7.0}, -10.85487704442090251723711, 0.2956151538781461696086333},
    {{50.0, 60.0}, 114.0782288039957239645226, -0.1988516398184332162199798},
    {{-30.7, 2.0}, -81.43990374796172293075478, 3.112381591233479507402656},
    {{0.001, 0.0}, 6.907178885383853661683681, 0.0},
    {{99.0, 0.0}, 354.5390855194408088491916, 0.0},
};

Complex random_complex(Rng& rng, double re_lo, double re_hi, double im) {
  return {re_lo + (re_hi - re_lo) * uniform01(rng), im * (2.0 * uniform01(rng) - 1.0)};
}

}  // namespace

TEST_CASE("log_gamma at simple points") {
  CHECK(std::abs(log_gamma(1.0).log_modulus()) < 1e-15);
  CHECK(std::abs(log_gamma(1.0).phase()) < 1e-15);
  CHECK(std::abs(log_gamma(0.5).log_modulus() - 0.5723649429247000870717137) < 1e-14);
  CHECK(std::abs(log_gamma(2.0).log_modulus()) < 1e-15);
  CHECK(std::abs(log_gamma(5.0).log_modulus() - std::log(24.0)) < 1e-14);
}

TEST_CASE("log_gamma against high precision references") {
  for (const auto& r : kGammaRefs) {
    const LogComplex g = log_gamma(r.z);
    INFO("z = " << r.z);
    CHECK(std::abs(g.log_modulus() - r.log_modulus) <= 1e-13 * std::max(1.0, std::abs(r.log_modulus)));
    CHECK(oracle::angle_gap(g.phase(), r.phase) <= 1e-11);
  }
}

TEST_CASE("log_gamma against the Stirling oracle") {
  Rng rng = derive_stream(11, 0);
  for (int t = 0; t < 400; ++t) {
    const Complex z = random_complex(rng, -40.0, 60.0, 30.0);
    if (is_nonpositive_integer(z)) continue;
    const auto ref = oracle::log_gamma({(long double)z.real(), (long double)z.imag()});
    const LogComplex g = log_gamma(z);
    INFO("z = " << z);
    CHECK(std::abs(g.log_modulus() - double(ref.real())) <= 1e-12 * std::max(1.0, std::abs(double(ref.real()))));
    CHECK(oracle::angle_gap(g.phase(), double(ref.imag())) <= 1e-10);
  }
}

TEST_CASE("log_gamma poles and recurrence") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-4.0), PoleError);
  Rng rng = derive_stream(11, 1);
  for (int t = 0; t < 200; ++t) {
    const Complex z = random_complex(rng, -20.0, 20.0, 10.0);
    const LogComplex diff = log_gamma(z + 1.0) / log_gamma(z);
    CHECK(std::abs(diff.log_modulus() - std::log(std::abs(z))) <= 1e-12 * std::max(1.0, std::abs(log_gamma(z).log_modulus())));
    CHECK(oracle::angle_gap(diff.phase(), std::arg(z)) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("recip_gamma") {
  CHECK(recip_gamma(-3.0) == Complex(0.0));
  CHECK(recip_gamma(0.0) == Complex(0.0));
  CHECK(std::abs(recip_gamma(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(recip_gamma(2.5) - 0.7522527780636750492641059) < 1e-15);
  CHECK(is_nonpositive_integer(-7.0));
  CHECK_FALSE(is_nonpositive_integer(Complex(-7.0, 1e-300)));
  CHECK_FALSE(is_nonpositive_integer(-7.5));
  CHECK_FALSE(is_nonpositive_integer(1.0));
}

TEST_CASE("reflection identity") {
  Rng rng = derive_stream(11, 2);
  for (int t = 0; t < 300; ++t) {
    const Complex z = random_complex(rng, -15.0, 15.0, 3.0);
    const Complex lhs = recip_gamma(z) * recip_gamma(1.0 - z);
    const Complex rhs = std::sin(kPi * z) / kPi;
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("LogComplex") {
  CHECK_THROWS_AS(LogComplex::from_value(0.0), DomainError);
  const Complex z(-3.0, 0.25);
  CHECK(std::abs(LogComplex::from_value(z).value() - z) < 1e-15);
  CHECK(std::abs((LogComplex::from_value(z) * LogComplex::from_value(z).inverse()).value() - 1.0) < 1e-15);
  CHECK(std::abs(normalize_phase(3 * kPi) - kPi) < 1e-15);
  CHECK(std::abs(normalize_phase(-kPi) - kPi) < 1e-15);
}

TEST_CASE("det_complex small cases") {
  ComplexMatrix id(3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1.0;
  CHECK(std::abs(det_complex(id) - 1.0) < 1e-15);
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 3.0;
  m(1, 1) = 4.0;
  CHECK(std::abs(det_complex(m) + 2.0) < 1e-15);
  CHECK_THROWS_AS(det_complex(ComplexMatrix(65)), DomainError);
}

TEST_CASE("det_complex against cofactor expansion and multiplicativity") {
  Rng rng = derive_stream(11, 3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 6;
    ComplexMatrix m(n);
    std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j] = random_complex(rng, -1.0, 1.0, 1.0);
    const Complex ref = oracle::cofactor_det(rows);
    CHECK(std::abs(det_complex(m) - ref) <= 1e-10 * std::abs(ref));
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    ComplexMatrix a(n), b(n), ab(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = random_complex(rng, -1.0, 1.0, 1.0);
        b(i, j) = random_complex(rng, -1.0, 1.0, 1.0);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) ab(i, j) += a(i, k) * b(k, j);
    const Complex prod = det_complex(a) * det_complex(b);
    CHECK(std::abs(det_complex(ab) - prod) <= 1e-9 * std::abs(prod));
  }
}

TEST_CASE("determinant over exact rationals") {
  SquareMatrix<Rational> m(3);
  const int vals[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = vals[i][j];
  CHECK(determinant(m) == Rational(4));
}

TEST_CASE("log_sum_exp") {
  const double two_zero[] = {0.0, 0.0};
  CHECK(std::abs(log_sum_exp(two_zero) - std::log(2.0)) < 1e-15);
  const double tiny[] = {std::log(1e-300), std::log(1e-300)};
  CHECK(std::abs(log_sum_exp(tiny) - std::log(2e-300)) < 1e-13);
  const double zeros[] = {kNegInf, kNegInf};
  CHECK(log_sum_exp(zeros) == kNegInf);
  CHECK_THROWS_AS(log_sum_exp(std::span<const double>{}), DomainError);
}

TEST_CASE("log_sum_exp against a 50-digit sum") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  Rng rng = derive_stream(11, 4);
  std::vector<double> terms;
  Big sum = 0;
  for (int t = 0; t < 10000; ++t) {
    const double lw = -700.0 + 30.0 * uniform01(rng);
    terms.push_back(lw);
    sum += boost::multiprecision::exp(Big(lw));
  }
  const double ref = double(boost::multiprecision::log(sum));
  CHECK(std::abs(log_sum_exp(terms) - ref) <= 1e-12 * std::abs(ref));
  LogSumAccumulator acc;
  for (double t : terms) acc.add(t);
  CHECK(acc.count() == terms.size());
  CHECK(std::abs(acc.result() - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("random streams") {
  Rng a = derive_stream(42, 3), b = derive_stream(42, 3), c = derive_stream(42, 4);
  CHECK(a() == b());
  CHECK(a() != c());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exact helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK_THROWS_AS(factorial(-1), DomainError);
  CHECK(recip_gamma_exact(4) == Rational(1, 6));
  CHECK(recip_gamma_exact(0) == 0);
  CHECK(recip_gamma_exact(-3) == 0);
  CHECK(to_string(u128(1) << 100) == "1267650600228229401496703205376");
}

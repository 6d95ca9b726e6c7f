#include <sstream>

#include <boost/math/quadrature/sinh_sinh.hpp>

#include "doctest.h"
#include "gtzw/rmt.hpp"
#include "gtzw/stats.hpp"

using namespace gtzw;

namespace {

CMatrix rotation(double t) {
  CMatrix m(2, 2);
  m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return m;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix m = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

GroupElement random_element(std::size_t m, Rng& rng) {
  return {haar_unitary(m, rng).matrix(), haar_unitary(m, rng).matrix()};
}

// Mean and batch-means standard error of a correlated sequence.
MeanEstimate batch_mean(const std::vector<double>& x, std::size_t batches) {
  const std::size_t len = x.size() / batches;
  std::vector<double> means;
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t k = b * len; k < (b + 1) * len; ++k) s += x[k];
    means.push_back(s / double(len));
  }
  return estimate_mean(means);
}

}  // namespace

TEST_CASE("Haar unitaries") {
  Rng rng = derive_stream(51, 0);
  std::vector<double> re, tr2;
  for (int t = 0; t < 20000; ++t) {
    re.push_back(haar_unitary(1, rng).matrix()(0, 0).real());
    tr2.push_back(std::norm(haar_unitary(3, rng).matrix().trace()));
  }
  CHECK(estimate_mean(re).within(0.0, 4.0));
  CHECK(estimate_mean(tr2).within(1.0, 4.0));
  const UnitaryMatrix u = haar_unitary(6, rng);
  CHECK(unitarity_residual(u.matrix()) < 1e-12);
  CHECK_THROWS_AS(UnitaryMatrix(CMatrix::Constant(2, 2, 1.0)), InvariantViolation);
}

TEST_CASE("canonical projection") {
  Rng rng = derive_stream(51, 1);
  const CMatrix v = haar_unitary(3, rng).matrix();
  const auto p = canonical_projection(UnitaryMatrix(block_diag(v, CMatrix::Identity(1, 1))));
  CHECK((p.matrix() - v).norm() < 1e-12);

  const auto r = canonical_projection(UnitaryMatrix(rotation(0.8)));
  CHECK(std::abs(r.matrix()(0, 0) - 1.0) < 1e-14);

  CMatrix diag = CMatrix::Identity(2, 2);
  diag(1, 1) = -1.0;
  const auto e = canonical_projection(UnitaryMatrix(diag));
  CHECK(std::abs(e.matrix()(0, 0) - 1.0) == 0.0);

  for (int t = 0; t < 50; ++t) {
    const UnitaryMatrix u = haar_unitary(5, rng);
    CHECK(unitarity_residual(canonical_projection(u).matrix()) < 1e-10);
    const auto c = corner_projection(u, 4);
    CHECK((c.projected.matrix() - canonical_projection(u).matrix()).norm() < 1e-13);
    CHECK(c.corner.rows() == 1);
    for (std::size_t m = 1; m < 5; ++m) {
      const auto it = corner_projection(u, m);
      CHECK((it.projected.matrix() - corner_block_formula(u, m)).norm() < 1e-9);
      CHECK((characteristic_function(u, m, 1.0) - u.matrix().topLeftCorner(m, m) -
             u.matrix().topRightCorner(m, 5 - m) *
                 (CMatrix::Identity(5 - m, 5 - m) - u.matrix().bottomRightCorner(5 - m, 5 - m)).inverse() *
                 u.matrix().bottomLeftCorner(5 - m, m))
                .norm() < 1e-9);
    }
  }
}

TEST_CASE("Cayley transform") {
  const HermitianMatrix zero = cayley(UnitaryMatrix::identity(3));
  CHECK(zero.matrix().norm() < 1e-15);
  const HermitianMatrix one = cayley(UnitaryMatrix(Complex(0.0, 1.0) * CMatrix::Identity(2, 2)));
  CHECK((one.matrix() - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(cayley(UnitaryMatrix(-CMatrix::Identity(2, 2))), DomainError);

  Rng rng = derive_stream(51, 2);
  for (int t = 0; t < 50; ++t) {
    const UnitaryMatrix u = haar_unitary(4, rng);
    const HermitianMatrix x = cayley(u);
    CHECK((x.matrix() - x.matrix().adjoint()).norm() < 1e-10 * std::max(1.0, x.matrix().norm()));
    CHECK((inverse_cayley(x).matrix() - u.matrix()).norm() < 1e-10);
    const CMatrix a = cayley(canonical_projection(u)).matrix();
    const CMatrix b = delete_last(x).matrix();
    CHECK((a - b).norm() <= 1e-9 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("f_zw and the cocycle") {
  const Complex z(0.4, 0.3), w(0.2, -0.1);
  for (std::size_t n : {1u, 2u, 5u}) {
    const Complex ref = std::exp(double(n) * (z + w) * std::log(2.0));
    CHECK(std::abs(f_zw(UnitaryMatrix::identity(n), z, w) - ref) < 1e-13 * std::abs(ref));
  }
  CMatrix diag = CMatrix::Identity(2, 2);
  diag(1, 1) = -1.0;
  CHECK(f_zw(UnitaryMatrix(diag), z, w) == 0.0);

  Rng rng = derive_stream(51, 3);
  for (int t = 0; t < 50; ++t) {
    const UnitaryMatrix u = haar_unitary(5, rng);
    const GroupElement g = random_element(3, rng), h = random_element(3, rng);
    const Complex c = cocycle(u, g, z, w);
    CHECK(std::abs(c - f_zw(act(u, g), z, w) / f_zw(u, z, w)) <= 1e-9 * std::abs(c));
    CHECK(std::abs(cocycle(canonical_projection(u), g, z, w) - c) <= 1e-9 * std::abs(c));
    const Complex rhs = cocycle(u, g * h, z, w);
    CHECK(std::abs(c * cocycle(act(u, g), h, z, w) - rhs) <= 1e-9 * std::abs(rhs));
    const CMatrix v = haar_unitary(3, rng).matrix();
    CHECK(std::abs(cocycle(u, GroupElement{v, v}, z, w) - 1.0) <= 1e-9);
  }
}

TEST_CASE("Hua-Pickrell normalization, N = 1 Hermitian") {
  boost::math::quadrature::sinh_sinh<double> integrator;
  for (Complex s : {Complex(0.0), Complex(0.7), Complex(0.3, 0.4), Complex(1.5, -1.0)}) {
    auto density = [&](double x) { return std::exp(hua_pickrell_logdensity_hermitian_eigen({x}, s).value()); };
    INFO(s);
    CHECK(integrator.integrate(density) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(std::exp(hua_pickrell_logdensity_hermitian_eigen({0.0}, 0.0).value()) == doctest::Approx(1.0 / kPi));
  CHECK(std::exp(cayley_haar_log_constant(1)) == doctest::Approx(1.0 / kPi));
}

TEST_CASE("Hua-Pickrell normalization on the unitary side") {
  CHECK(hua_pickrell_log_z(3, 0.0) == doctest::Approx(0.0));
  // N = 1: E |1+u|^{2s} = Gamma(2s+1) / Gamma(s+1)^2
  CHECK(hua_pickrell_log_z(1, 1.5) == doctest::Approx(std::lgamma(4.0) - 2.0 * std::lgamma(2.5)));

  // N = 2: Weyl integration over eigenangles.
  for (Complex s : {Complex(1.0), Complex(2.0, 0.5)}) {
    const int m = 400;
    const double h = 2.0 * kPi / m;
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        CVector eig(2);
        eig << std::polar(1.0, -kPi + (i + 0.5) * h), std::polar(1.0, -kPi + (j + 0.5) * h);
        const double vdm = std::norm(eig(0) - eig(1));
        total += std::exp(hua_pickrell_logdensity_unitary_eigen(eig, s).value()) * vdm / 2.0;
      }
    }
    INFO(s);
    CHECK(total * h * h / (4.0 * kPi * kPi) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("Hermitian and unitary forms agree through the Cayley Jacobian") {
  Rng rng = derive_stream(51, 4);
  const Complex s(0.6, 0.25);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int t = 0; t < 10; ++t) {
      const UnitaryMatrix u = haar_unitary(n, rng);
      const HermitianMatrix x = cayley(u);
      double logdet = 0.0;
      for (double e : eigenvalues(x)) logdet += std::log1p(e * e);
      const double lhs = hua_pickrell_logdensity(x, s).value();
      const double rhs =
          cayley_haar_log_constant(n) - double(n) * logdet + hua_pickrell_logdensity(inverse_cayley(x), s).value();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("Hua-Pickrell samplers") {
  const double s = 1.0;
  const std::size_t count = 20000;
  const auto imp = sample_hua_pickrell(1, s, count, 5);
  std::vector<double> re;
  for (const auto& u : imp.matrices) re.push_back(u.matrix()(0, 0).real());
  CHECK(estimate_weighted_mean(re, imp.weights).within(s / (1.0 + s), 4.0));
  CHECK(imp.ess > 0.1 * double(count));
  CHECK_FALSE(imp.ess_warning);

  HuaPickrellOptions opt;
  opt.mode = HuaPickrellMode::metropolis;
  const auto met = sample_hua_pickrell(1, s, count, 5, opt);
  re.clear();
  for (const auto& u : met.matrices) re.push_back(u.matrix()(0, 0).real());
  CHECK(batch_mean(re, 40).within(s / (1.0 + s), 4.0));
  CHECK(met.acceptance_rate > 0.0);
  CHECK(met.acceptance_rate < 1.0);
  CHECK(met.weights.front() == doctest::Approx(1.0 / double(count)));

  const auto flat = sample_hua_pickrell(2, 0.0, 100, 5);
  for (double wt : flat.weights) CHECK(wt == doctest::Approx(0.01));
  CHECK(flat.ess == doctest::Approx(100.0));

  CHECK_THROWS_AS(sample_hua_pickrell(2, -0.5, 10, 5), DomainError);
  CHECK_THROWS_AS(sample_hua_pickrell(2, 0.5, 0, 5), DomainError);
}

TEST_CASE("Hua-Pickrell samples are independent of the worker count") {
  HuaPickrellOptions one, three;
  one.block_size = three.block_size = 64;
  three.workers = 3;
  const auto a = sample_hua_pickrell(3, 0.5, 300, 11, one);
  const auto b = sample_hua_pickrell(3, 0.5, 300, 11, three);
  for (std::size_t k = 0; k < 300; ++k) CHECK(a.matrices[k].matrix() == b.matrices[k].matrix());
  CHECK(a.weights == b.weights);
}

TEST_CASE("Hua-Pickrell projection consistency") {
  // The level-3 measure pushed to level 2 is the level-2 measure; compare E Re Tr.
  const Complex s(0.8, 0.0);
  const auto top = sample_hua_pickrell(3, s, 20000, 21);
  const auto low = sample_hua_pickrell(2, s, 20000, 22);
  std::vector<double> a, b;
  for (const auto& u : top.matrices) a.push_back(canonical_projection(u).matrix().trace().real());
  for (const auto& u : low.matrices) b.push_back(u.matrix().trace().real());
  const auto ea = estimate_weighted_mean(a, top.weights);
  const auto eb = estimate_weighted_mean(b, low.weights);
  CHECK(std::abs(ea.mean - eb.mean) <= 4.0 * std::hypot(ea.standard_error, eb.standard_error));
}

TEST_CASE("matrix serialization") {
  Rng rng = derive_stream(51, 5);
  const CMatrix m = haar_unitary(4, rng).matrix();
  std::stringstream ss;
  write_gtrm(ss, m);
  CHECK(ss.str().size() == 8 + 16 * 16);
  CHECK(ss.str().substr(0, 4) == "GTRM");
  CHECK(read_gtrm(ss) == m);
  std::istringstream bad("NOPE");
  CHECK_THROWS(read_gtrm(bad));
  const Json j = matrix_to_json(m);
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);
}

#include "gtzw/rmt.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

constexpr double kUnitarityTolerance = 1e-10;

CMatrix pad_identity(const CMatrix& m, std::size_t n) {
  CMatrix out = CMatrix::Identity(Eigen::Index(n), Eigen::Index(n));
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

void check_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DomainError(std::string(what) + ": matrix is not square");
}

}  // namespace

double unitarity_residual(const CMatrix& u) {
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm();
}

UnitaryMatrix::UnitaryMatrix(CMatrix m) : m_(std::move(m)) {
  check_square(m_, "UnitaryMatrix");
  if (const double r = unitarity_residual(m_); !(r <= kUnitarityTolerance))
    throw InvariantViolation("UnitaryMatrix: unitarity residual " + std::to_string(r));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) {
  return UnitaryMatrix(CMatrix::Identity(Eigen::Index(n), Eigen::Index(n)));
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  check_square(m, "HermitianMatrix");
  m_ = 0.5 * (m + m.adjoint());
}

Complex complex_gaussian(Rng& rng) {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  const double r = std::sqrt(-std::log(1.0 - uniform01(rng)));
  const double theta = 2.0 * kPi * uniform01(rng);
  return std::polar(r, theta);
}

UnitaryMatrix haar_unitary(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("haar_unitary: N must be at least 1");
  const auto dim = Eigen::Index(n);
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryMatrix canonical_projection(const UnitaryMatrix& u) {
  const auto n = Eigen::Index(u.size());
  if (n < 2) throw LevelMismatchError("canonical_projection: N must be at least 2");
  const CMatrix& m = u.matrix();
  const Complex d = m(n - 1, n - 1);
  CMatrix a = m.topLeftCorner(n - 1, n - 1);
  if (std::abs(1.0 + d) < kExceptionalTolerance) return UnitaryMatrix(std::move(a));
  a -= m.topRightCorner(n - 1, 1) * m.bottomLeftCorner(1, n - 1) / (1.0 + d);
  return UnitaryMatrix(std::move(a));
}

CornerProjection corner_projection(const UnitaryMatrix& u, std::size_t m) {
  const std::size_t n = u.size();
  if (m < 1 || m >= n) throw LevelMismatchError("corner_projection: need 1 <= M < N");
  UnitaryMatrix cur = u;
  while (cur.size() > m) cur = canonical_projection(cur);
  const auto k = Eigen::Index(n - m);
  return {std::move(cur), u.matrix().bottomRightCorner(k, k)};
}

CMatrix corner_block_formula(const UnitaryMatrix& u, std::size_t m) {
  const auto n = Eigen::Index(u.size());
  const auto mm = Eigen::Index(m);
  if (mm < 1 || mm >= n) throw LevelMismatchError("corner_block_formula: need 1 <= M < N");
  const CMatrix& x = u.matrix();
  const auto k = n - mm;
  const CMatrix one_plus_d = CMatrix::Identity(k, k) + x.bottomRightCorner(k, k);
  return x.topLeftCorner(mm, mm) -
         x.topRightCorner(mm, k) * one_plus_d.partialPivLu().solve(x.bottomLeftCorner(k, mm));
}

CMatrix characteristic_function(const UnitaryMatrix& u, std::size_t m, Complex zeta) {
  const auto n = Eigen::Index(u.size());
  const auto mm = Eigen::Index(m);
  if (mm < 1 || mm >= n) throw LevelMismatchError("characteristic_function: need 1 <= M < N");
  const CMatrix& x = u.matrix();
  const auto k = n - mm;
  const CMatrix one_minus = CMatrix::Identity(k, k) - zeta * x.bottomRightCorner(k, k);
  return x.topLeftCorner(mm, mm) +
         zeta * x.topRightCorner(mm, k) * one_minus.partialPivLu().solve(x.bottomLeftCorner(k, mm));
}

HermitianMatrix cayley(const UnitaryMatrix& u) {
  const auto n = Eigen::Index(u.size());
  const CMatrix id = CMatrix::Identity(n, n);
  const Complex i(0.0, 1.0);
  const CMatrix one_plus = id + u.matrix();
  Eigen::PartialPivLU<CMatrix> lu(one_plus);
  const double rcond = lu.rcond();
  if (!(rcond > kExceptionalTolerance))
    throw DomainError("cayley: 1+U is near singular (reciprocal condition estimate " +
                      std::to_string(rcond) + ")");
  // 1-U and (1+U)^{-1} commute, so X = i (1+U)^{-1} (1-U) as well.
  return HermitianMatrix(i * lu.solve(id - u.matrix()));
}

UnitaryMatrix inverse_cayley(const HermitianMatrix& x) {
  const auto n = Eigen::Index(x.size());
  const CMatrix id = CMatrix::Identity(n, n);
  const Complex i(0.0, 1.0);
  const CMatrix num = i * id - x.matrix();
  const CMatrix den = i * id + x.matrix();
  // (i-X) and (i+X)^{-1} commute.
  return UnitaryMatrix(den.partialPivLu().solve(num));
}

HermitianMatrix delete_last(const HermitianMatrix& x) {
  const auto n = Eigen::Index(x.size());
  if (n < 2) throw LevelMismatchError("delete_last: N must be at least 2");
  return HermitianMatrix(x.matrix().topLeftCorner(n - 1, n - 1));
}

CVector eigenvalues(const UnitaryMatrix& u) {
  Eigen::ComplexEigenSolver<CMatrix> es(u.matrix(), false);
  return es.eigenvalues();
}

std::vector<double> eigenvalues(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.matrix(), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

Complex f_zw_eigen(const CVector& eig, Complex z, Complex w) {
  Complex log_f = 0.0;
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    const Complex a = 1.0 + eig(k);
    if (std::abs(a) < kExceptionalTolerance) return 0.0;
    log_f += z * std::log(a) + w * std::log(std::conj(a));
  }
  return std::exp(log_f);
}

Complex f_zw(const UnitaryMatrix& u, Complex z, Complex w) {
  return f_zw_eigen(eigenvalues(u), z, w);
}

UnitaryMatrix act(const UnitaryMatrix& u, const GroupElement& g) {
  const std::size_t n = u.size();
  if (g.u1.rows() != g.u2.rows() || g.level() > n)
    throw LevelMismatchError("act: group element does not fit the matrix level");
  const CMatrix u1 = pad_identity(g.u1, n), u2 = pad_identity(g.u2, n);
  return UnitaryMatrix(u2.adjoint() * u.matrix() * u1);
}

Complex cocycle(const UnitaryMatrix& u, const GroupElement& g, Complex z, Complex w) {
  if (g.level() >= u.size()) throw LevelMismatchError("cocycle: need M < N");
  const Complex den = f_zw(u, z, w);
  const Complex num = f_zw(act(u, g), z, w);
  if (den == Complex(0.0) || num == Complex(0.0))
    throw DomainError("cocycle: matrix has eigenvalue -1");
  return num / den;
}

double hua_pickrell_log_z(std::size_t n, Complex s) {
  if (s.real() <= -0.5) throw DomainError("Hua-Pickrell: needs Re s > -1/2");
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double dk = double(k);
    acc += log_gamma(Complex(dk)).log_modulus() + log_gamma(Complex(dk + 2.0 * s.real())).log_modulus() -
           2.0 * log_gamma(dk + s).log_modulus();
  }
  return acc;
}

LogDensity hua_pickrell_logdensity_unitary_eigen(const CVector& eig, Complex s) {
  LogDensity d;
  d.log_normalizer = -hua_pickrell_log_z(std::size_t(eig.size()), s);
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    const Complex a = 1.0 + eig(k);
    if (std::abs(a) == 0.0) {
      d.log_unnormalized = s.real() > 0.0 ? kNegInf : -kNegInf;
      if (s.real() == 0.0 && s.imag() == 0.0) d.log_unnormalized = 0.0;
      return d;
    }
    d.log_unnormalized += 2.0 * (s * std::log(a)).real();
  }
  return d;
}

LogDensity hua_pickrell_logdensity(const UnitaryMatrix& u, Complex s) {
  return hua_pickrell_logdensity_unitary_eigen(eigenvalues(u), s);
}

double cayley_haar_log_constant(std::size_t n) {
  // c_N = prod_{k<N} k! * 2^(N^2 + N(N-1)/2) / (2 pi)^(N(N+1)/2)
  const double dn = double(n);
  double acc = (dn * dn + dn * (dn - 1.0) / 2.0) * std::log(2.0) -
               dn * (dn + 1.0) / 2.0 * std::log(2.0 * kPi);
  for (std::size_t k = 1; k < n; ++k) acc += std::lgamma(double(k) + 1.0);
  return acc;
}

LogDensity hua_pickrell_logdensity_hermitian_eigen(const std::vector<double>& eig, Complex s) {
  const std::size_t n = eig.size();
  LogDensity d;
  d.log_normalizer = cayley_haar_log_constant(n) + 2.0 * double(n) * s.real() * std::log(2.0) -
                     hua_pickrell_log_z(n, s);
  for (double x : eig) {
    d.log_unnormalized += -2.0 * (s * std::log(Complex(1.0, -x))).real() -
                          double(n) * std::log1p(x * x);
  }
  return d;
}

LogDensity hua_pickrell_logdensity(const HermitianMatrix& x, Complex s) {
  return hua_pickrell_logdensity_hermitian_eigen(eigenvalues(x), s);
}

HuaPickrellSample sample_hua_pickrell(std::size_t n, Complex s, std::size_t count,
                                      std::uint64_t seed, const HuaPickrellOptions& options) {
  if (s.real() <= -0.5) throw DomainError("Hua-Pickrell: needs Re s > -1/2");
  if (count == 0) throw DomainError("sample_hua_pickrell: count must be positive");
  if (options.block_size == 0) throw DomainError("sample_hua_pickrell: block size must be positive");
  HuaPickrellSample out;
  out.matrices.resize(count);
  std::vector<double> log_w(count, 0.0);
  std::vector<std::uint64_t> accepted(count, 0);
  const std::size_t blocks = (count + options.block_size - 1) / options.block_size;
  auto log_weight = [&](const UnitaryMatrix& u) { return hua_pickrell_logdensity(u, s).log_unnormalized; };

  auto run_block = [&](std::size_t b) {
    Rng rng = derive_stream(seed, b);
    const std::size_t begin = b * options.block_size;
    const std::size_t end = std::min(count, begin + options.block_size);
    if (options.mode == HuaPickrellMode::importance) {
      for (std::size_t k = begin; k < end; ++k) {
        out.matrices[k] = haar_unitary(n, rng);
        log_w[k] = log_weight(out.matrices[k]);
      }
      return;
    }
    UnitaryMatrix cur = haar_unitary(n, rng);
    double cur_w = log_weight(cur);
    auto step = [&]() -> bool {
      UnitaryMatrix prop = haar_unitary(n, rng);
      const double prop_w = log_weight(prop);
      if (std::log(1.0 - uniform01(rng)) < prop_w - cur_w) {
        cur = std::move(prop);
        cur_w = prop_w;
        return true;
      }
      return false;
    };
    for (std::size_t k = 0; k < options.burn_in; ++k) step();
    for (std::size_t k = begin; k < end; ++k) {
      accepted[k] = step() ? 1 : 0;
      out.matrices[k] = cur;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, unsigned(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t b = w; b < blocks; b += workers) run_block(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  out.weights.resize(count);
  if (options.mode == HuaPickrellMode::importance) {
    const double m = log_sum_exp(log_w);
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      out.weights[k] = std::exp(log_w[k] - m);
      sum_sq += out.weights[k] * out.weights[k];
    }
    out.ess = 1.0 / sum_sq;
  } else {
    std::fill(out.weights.begin(), out.weights.end(), 1.0 / double(count));
    std::uint64_t acc = 0;
    for (auto a : accepted) acc += a;
    out.acceptance_rate = double(acc) / double(count);
    // Lag-1 autocorrelation of Re Tr U over the chain.
    std::vector<double> t(count);
    double mean = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      t[k] = out.matrices[k].matrix().trace().real();
      mean += t[k];
    }
    mean /= double(count);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      c0 += (t[k] - mean) * (t[k] - mean);
      if (k + 1 < count) c1 += (t[k] - mean) * (t[k + 1] - mean);
    }
    const double rho = c0 > 0.0 ? std::clamp(c1 / c0, 0.0, 0.999) : 0.0;
    out.ess = double(count) * (1.0 - rho) / (1.0 + rho);
  }
  out.ess_warning = out.ess < options.ess_warning_fraction * double(count);
  return out;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_f64(std::ostream& os, double x) {
  std::uint64_t v;
  std::memcpy(&v, &x, 8);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint64_t get_le(std::istream& is, int bytes) {
  unsigned char b[8] = {};
  if (!is.read(reinterpret_cast<char*>(b), bytes)) throw DomainError("GTRM: truncated input");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_gtrm(std::ostream& os, const CMatrix& m) {
  check_square(m, "write_gtrm");
  os.write("GTRM", 4);
  put_u32(os, std::uint32_t(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put_f64(os, m(i, j).real());
      put_f64(os, m(i, j).imag());
    }
  }
}

CMatrix read_gtrm(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "GTRM", 4) != 0) throw DomainError("GTRM: bad magic");
  const auto n = Eigen::Index(get_le(is, 4));
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double re, im;
      std::uint64_t v = get_le(is, 8);
      std::memcpy(&re, &v, 8);
      v = get_le(is, 8);
      std::memcpy(&im, &v, 8);
      m(i, j) = {re, im};
    }
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(Complex(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("matrix must be a JSON array of rows");
  const auto n = Eigen::Index(j.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!j[std::size_t(i)].is_array() || Eigen::Index(j[std::size_t(i)].size()) != n)
      throw DomainError("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(j[std::size_t(i)][std::size_t(k)]);
  }
  return m;
}

}  // namespace gtzw

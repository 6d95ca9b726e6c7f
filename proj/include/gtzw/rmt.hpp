#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

#include "gtzw/json_io.hpp"
#include "gtzw/numerics.hpp"
#include "gtzw/random.hpp"

namespace gtzw {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Frobenius norm of U U* - 1 (an upper bound for the operator norm).
double unitarity_residual(const CMatrix& u);

class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  /// Throws InvariantViolation when the unitarity residual exceeds 1e-10.
  explicit UnitaryMatrix(CMatrix m);
  static UnitaryMatrix identity(std::size_t n);

  const CMatrix& matrix() const { return m_; }
  std::size_t size() const { return std::size_t(m_.rows()); }

 private:
  CMatrix m_;
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Stores (m + m*) / 2.
  explicit HermitianMatrix(const CMatrix& m);

  const CMatrix& matrix() const { return m_; }
  std::size_t size() const { return std::size_t(m_.rows()); }

 private:
  CMatrix m_;
};

/// Haar unitary: QR of a complex Gaussian matrix, columns rephased so that
/// R has a positive diagonal.
UnitaryMatrix haar_unitary(std::size_t n, Rng& rng);

/// Standard complex Gaussian entry, E|g|^2 = 1 (Box-Muller on uniform01).
Complex complex_gaussian(Rng& rng);

inline constexpr double kExceptionalTolerance = 1e-12;

/// p_N(U) = A - B(1+D)^{-1}C, or A when |1+D| < 1e-12.
UnitaryMatrix canonical_projection(const UnitaryMatrix& u);

struct CornerProjection {
  UnitaryMatrix projected;  // p_{M,N}(U)
  CMatrix corner;           // lower-right (N-M) x (N-M) block
};

/// Iterated canonical projection down to level m, plus the corner block D.
CornerProjection corner_projection(const UnitaryMatrix& u, std::size_t m);

/// One-shot A - B(1+D)^{-1}C with the (N-M) x (N-M) corner D.
CMatrix corner_block_formula(const UnitaryMatrix& u, std::size_t m);

/// phi_U(zeta) = A + zeta B (1 - zeta D)^{-1} C for the level-m split.
CMatrix characteristic_function(const UnitaryMatrix& u, std::size_t m, Complex zeta);

/// X = i(1-U)(1+U)^{-1}. Throws DomainError when 1+U is near singular.
HermitianMatrix cayley(const UnitaryMatrix& u);
/// U = (i-X)(i+X)^{-1}
UnitaryMatrix inverse_cayley(const HermitianMatrix& x);
/// p'_N: delete the last row and column.
HermitianMatrix delete_last(const HermitianMatrix& x);

CVector eigenvalues(const UnitaryMatrix& u);
std::vector<double> eigenvalues(const HermitianMatrix& x);

/// prod_k (1+u_k)^z (1+conj u_k)^w on principal branches; exactly 0 when
/// min |1+u_k| < 1e-12.
Complex f_zw(const UnitaryMatrix& u, Complex z, Complex w);
Complex f_zw_eigen(const CVector& eig, Complex z, Complex w);

/// g = (U1, U2) in U(M) x U(M), acting on U(N) by U -> U2^{-1} U U1 with both
/// factors padded by the identity.
struct GroupElement {
  CMatrix u1;
  CMatrix u2;

  std::size_t level() const { return std::size_t(u1.rows()); }
  /// (U1 U1', U2 U2'), so that (x.g).h = x.(g h).
  GroupElement operator*(const GroupElement& h) const { return {u1 * h.u1, u2 * h.u2}; }
};

UnitaryMatrix act(const UnitaryMatrix& u, const GroupElement& g);

/// f(x.g)/f(x). Throws DomainError if either matrix has eigenvalue -1.
Complex cocycle(const UnitaryMatrix& u, const GroupElement& g, Complex z, Complex w);

enum class HuaPickrellForm { unitary, hermitian };

struct LogDensity {
  double log_unnormalized = 0.0;
  double log_normalizer = 0.0;  // add to get the normalized log-density
  double value() const { return log_unnormalized + log_normalizer; }
};

/// log Z_s(N) = sum_k log[Gamma(k)Gamma(k+s+conj s)/(Gamma(k+s)Gamma(k+conj s))]
double hua_pickrell_log_z(std::size_t n, Complex s);

/// Unitary form: log|det((1+U)^s)|^2 w.r.t. Haar.
LogDensity hua_pickrell_logdensity(const UnitaryMatrix& u, Complex s);
/// Hermitian form: log[det((1-iX)^{-s}) det((1+iX)^{-conj s}) det(1+X^2)^{-N}]
/// w.r.t. Lebesgue measure prod dX_ii prod_{i<j} dRe X_ij dIm X_ij.
LogDensity hua_pickrell_logdensity(const HermitianMatrix& x, Complex s);
/// Same, from eigenvalues.
LogDensity hua_pickrell_logdensity_unitary_eigen(const CVector& eig, Complex s);
LogDensity hua_pickrell_logdensity_hermitian_eigen(const std::vector<double>& eig, Complex s);

/// Density of Haar pushed through the Cayley transform: log c_N.
double cayley_haar_log_constant(std::size_t n);

enum class HuaPickrellMode { importance, metropolis };

struct HuaPickrellOptions {
  HuaPickrellMode mode = HuaPickrellMode::importance;
  double ess_warning_fraction = 0.1;
  std::size_t block_size = 1024;
  std::size_t burn_in = 200;
  unsigned workers = 1;
};

struct HuaPickrellSample {
  std::vector<UnitaryMatrix> matrices;
  /// Self-normalized weights (sum 1); uniform in metropolis mode.
  std::vector<double> weights;
  double ess = 0.0;
  bool ess_warning = false;
  double acceptance_rate = 1.0;
};

HuaPickrellSample sample_hua_pickrell(std::size_t n, Complex s, std::size_t count,
                                      std::uint64_t seed, const HuaPickrellOptions& options = {});

/// Little-endian "GTRM", u32 N, then 2N^2 float64 row-major (re, im).
void write_gtrm(std::ostream& os, const CMatrix& m);
CMatrix read_gtrm(std::istream& is);

/// Nested [[ [re,im], ...], ...]
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

}  // namespace gtzw

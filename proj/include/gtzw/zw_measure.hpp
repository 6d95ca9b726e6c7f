#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtzw/exact.hpp"
#include "gtzw/gt_graph.hpp"
#include "gtzw/numerics.hpp"
#include "gtzw/signatures.hpp"

namespace gtzw {

enum class SeriesKind { principal, complementary, degenerate, none };

struct SeriesClass {
  SeriesKind kind = SeriesKind::none;
  /// The integer m of the complementary strip (m, m+1) or of degenerate(m).
  std::int64_t m = 0;

  std::string to_string() const;
  friend bool operator==(const SeriesClass&, const SeriesClass&) = default;
};

/// Series class of a parameter pair (z, z'). Comparisons are exact.
SeriesClass classify(Complex z, Complex zp);

struct ZwParams {
  Complex z, zp, w, wp;

  /// (z, conj z, w, conj w)
  static ZwParams principal(Complex z, Complex w) { return {z, std::conj(z), w, std::conj(w)}; }
  /// z + z' + w + w'
  Complex s() const { return z + zp + w + wp; }
  /// (w, w', z, z'), the parameters of the dual measure.
  ZwParams swapped() const { return {w, wp, z, zp}; }
  std::string to_string() const;
};

struct AdmissibilityReport {
  SeriesClass z_class;
  SeriesClass w_class;
  bool sum_condition = false;  // Re(z+z'+w+w') > -1
  bool degenerate_condition = true;  // k + l >= 1 when both pairs are degenerate
  bool admissible = false;
  /// Empty when admissible, else which condition failed, e.g. "k+l=0<1".
  std::string reason;
};

AdmissibilityReport admissibility(const ZwParams& p);
bool is_admissible(const ZwParams& p);

/// Coordinate range [lower, upper] shared by all entries of the signatures in
/// a box. Degenerate pairs pin one side: lambda_1 <= k, lambda_N >= -l.
struct SupportBox {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool finite_support = false;
};

/// Degenerate bounds: upper = k when (z,z') is degenerate(k), lower = -l when
/// (w,w') is degenerate(l).
std::optional<std::int64_t> support_upper(const ZwParams& p);
std::optional<std::int64_t> support_lower(const ZwParams& p);

/// P'_N(la) as a complex number in log form; nullopt when it is exactly zero.
std::optional<LogComplex> log_p_prime_complex(const Signature& la, const ZwParams& p);

/// log P'_N(la); -inf for an exact zero. Throws DomainError when the value is
/// not a positive real (outside the admissible set).
double log_p_prime(const Signature& la, const ZwParams& p);

/// S_N in log form. Throws DomainError for Re(z+z'+w+w') <= -1 and PoleError
/// when a denominator Gamma vanishes (S_N = 0 or undefined).
LogComplex log_s_n_complex(std::size_t n, const ZwParams& p);
/// log S_N; DomainError when S_N is not a positive real.
double log_s_n(std::size_t n, const ZwParams& p);

/// True iff all four parameters are integers.
bool has_integer_params(const ZwParams& p);
/// Exact P'_N and S_N for integer parameters.
Rational p_prime_exact(const Signature& la, const ZwParams& p);
Rational s_n_exact(std::size_t n, const ZwParams& p);

struct TableOptions {
  double mass_tolerance = 1e-8;
  std::int64_t initial_half_width = 4;
  std::int64_t cap = std::int64_t{1} << 14;
  /// Refuse boxes with more signatures than this.
  std::uint64_t max_entries = 20'000'000;
  /// Multiplies S_N; anything but 1 is a deliberate fault for self-tests.
  double s_n_scale = 1.0;
};

struct ZwTable {
  MeasureTable table;  // normalized masses P'_N / S_N, target 0
  SupportBox box;
  double log_s_n = 0.0;
  int doublings = 0;
};

/// Truncated P_N over an adaptively doubled box with captured mass at least
/// 1 - mass_tolerance. Throws NotAdmissibleError and GrowthLimitError.
ZwTable build_table(std::size_t n, const ZwParams& p, const TableOptions& options = {});

/// Exact P_N on the finite support of doubly degenerate integer parameters.
ExactTable build_table_exact(std::size_t n, const ZwParams& p);

/// Calls f for every signature of level n with entries in [lower, upper].
void for_each_in_box(std::size_t n, std::int64_t lower, std::int64_t upper,
                     const std::function<void(const Signature&)>& f);

/// c_{z,w|1}(l) = Gamma(1+z+w) / (Gamma(1+z-l) Gamma(1+w+l))
Complex fourier_coefficient_1(std::int64_t l, Complex z, Complex w);
/// Closed-form product for c_{z,w|N}(la).
Complex fourier_coefficient(const Signature& la, Complex z, Complex w);
/// det[c_{z,w|1}(la_i - i + j)]
Complex fourier_coefficient_det(const Signature& la, Complex z, Complex w);

struct DougallReport {
  std::int64_t truncation = 0;
  Complex lhs_partial;
  Complex rhs;
  double abs_error = 0.0;
};

/// Bilateral partial sum over |k| <= K against the closed form.
DougallReport verify_dougall(const ZwParams& p, std::int64_t truncation);

struct KrattenthalerReport {
  Complex lhs;
  Complex rhs;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

KrattenthalerReport verify_krattenthaler(const std::vector<std::int64_t>& x,
                                         const std::vector<Complex>& a,
                                         const std::vector<Complex>& b);
/// Integer instance checked in exact arithmetic (fraction-free elimination).
bool verify_krattenthaler_exact(const std::vector<std::int64_t>& x,
                                const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b);

/// ||f_{z,w|N}||^2 in L^2(U(N), Haar). DomainError unless Re z + Re w > -1/2.
double zw_norm_squared(std::size_t n, Complex z, Complex w);
double log_zw_norm_squared(std::size_t n, Complex z, Complex w);

}  // namespace gtzw

#include "gtzw/zw_measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

constexpr double kPhaseTolerance = 1e-7;

bool is_integer(Complex z) { return z.imag() == 0.0 && z.real() == std::floor(z.real()); }

bool is_real(Complex z) { return z.imag() == 0.0; }

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

// One Gamma reciprocal folded into a running log product; false on a pole.
bool multiply_recip_gamma(LogComplex& acc, Complex arg) {
  if (is_nonpositive_integer(arg)) return false;
  acc /= log_gamma(arg);
  return true;
}

double checked_real_log(const LogComplex& v, const char* what) {
  if (std::abs(v.phase()) > kPhaseTolerance)
    throw DomainError(std::string(what) + " is not a positive real (phase " +
                      std::to_string(v.phase()) + ")");
  return v.log_modulus();
}

}  // namespace

std::string SeriesClass::to_string() const {
  switch (kind) {
    case SeriesKind::principal:
      return "principal";
    case SeriesKind::complementary:
      return "complementary(" + std::to_string(m) + ")";
    case SeriesKind::degenerate:
      return "degenerate(" + std::to_string(m) + ")";
    case SeriesKind::none:
      break;
  }
  return "none";
}

SeriesClass classify(Complex z, Complex zp) {
  if (!is_real(z) && zp == std::conj(z)) return {SeriesKind::principal, 0};
  if (!is_real(z) || !is_real(zp)) return {SeriesKind::none, 0};
  const double a = z.real(), b = zp.real();
  const bool ia = is_integer(z), ib = is_integer(zp);
  if (ia && ib) {
    const double m = std::min(a, b);
    return {SeriesKind::degenerate, std::int64_t(m)};
  }
  if (ia && b > a - 1.0) return {SeriesKind::degenerate, std::int64_t(a)};
  if (ib && a > b - 1.0) return {SeriesKind::degenerate, std::int64_t(b)};
  if (!ia && !ib) {
    const double m = std::floor(a);
    if (std::floor(b) == m) return {SeriesKind::complementary, std::int64_t(m)};
  }
  return {SeriesKind::none, 0};
}

std::string ZwParams::to_string() const {
  return "(z=" + format_complex(z) + ", z'=" + format_complex(zp) + ", w=" + format_complex(w) +
         ", w'=" + format_complex(wp) + ")";
}

AdmissibilityReport admissibility(const ZwParams& p) {
  AdmissibilityReport r;
  r.z_class = classify(p.z, p.zp);
  r.w_class = classify(p.w, p.wp);
  const double re_s = p.s().real();
  r.sum_condition = re_s > -1.0;
  const bool z_ok = r.z_class.kind != SeriesKind::none;
  const bool w_ok = r.w_class.kind != SeriesKind::none;
  if (r.z_class.kind == SeriesKind::degenerate && r.w_class.kind == SeriesKind::degenerate) {
    const auto k = r.z_class.m, l = r.w_class.m;
    r.degenerate_condition = k + l >= 1;
    if (!r.degenerate_condition)
      r.reason = "k+l=" + std::to_string(k + l) + "<1 (k=" + std::to_string(k) +
                 ", l=" + std::to_string(l) + ")";
  }
  if (!z_ok) r.reason = "(z,z') is in no series";
  else if (!w_ok) r.reason = "(w,w') is in no series";
  else if (!r.sum_condition) {
    std::ostringstream os;
    os << "Re(z+z'+w+w')=" << re_s << "<=-1";
    r.reason = os.str();
  }
  r.admissible = z_ok && w_ok && r.sum_condition && r.degenerate_condition;
  return r;
}

bool is_admissible(const ZwParams& p) { return admissibility(p).admissible; }

std::optional<std::int64_t> support_upper(const ZwParams& p) {
  auto c = classify(p.z, p.zp);
  if (c.kind == SeriesKind::degenerate) return c.m;
  return std::nullopt;
}

std::optional<std::int64_t> support_lower(const ZwParams& p) {
  auto c = classify(p.w, p.wp);
  if (c.kind == SeriesKind::degenerate) return -c.m;
  return std::nullopt;
}

std::optional<LogComplex> log_p_prime_complex(const Signature& la, const ZwParams& p) {
  const std::size_t n = la.level();
  LogComplex acc(2.0 * log_weyl_dim(la), 0.0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double l = double(la[idx]) - double(idx + 1);  // la_i - i
    const double up = double(n + 1) + l;                 // N + 1 + la_i - i
    if (!multiply_recip_gamma(acc, p.z - l) || !multiply_recip_gamma(acc, p.zp - l) ||
        !multiply_recip_gamma(acc, p.w + up) || !multiply_recip_gamma(acc, p.wp + up))
      return std::nullopt;
  }
  return acc;
}

double log_p_prime(const Signature& la, const ZwParams& p) {
  auto v = log_p_prime_complex(la, p);
  if (!v) return kNegInf;
  return checked_real_log(*v, "P'_N");
}

LogComplex log_s_n_complex(std::size_t n, const ZwParams& p) {
  const Complex s = p.s();
  if (s.real() <= -1.0) throw DomainError("S_N: Re(z+z'+w+w') <= -1");
  LogComplex acc;
  for (std::size_t i = 1; i <= n; ++i) {
    const double di = double(i);
    acc *= log_gamma(s + di);
    for (Complex d : {p.z + p.w, p.z + p.wp, p.zp + p.w, p.zp + p.wp}) {
      if (is_nonpositive_integer(d + di))
        throw PoleError("S_N vanishes: a pairwise sum z+w is a negative integer");
      acc /= log_gamma(d + di);
    }
    acc /= log_gamma(di);
  }
  return acc;
}

double log_s_n(std::size_t n, const ZwParams& p) {
  return checked_real_log(log_s_n_complex(n, p), "S_N");
}

bool has_integer_params(const ZwParams& p) {
  return is_integer(p.z) && is_integer(p.zp) && is_integer(p.w) && is_integer(p.wp);
}

Rational p_prime_exact(const Signature& la, const ZwParams& p) {
  if (!has_integer_params(p)) throw DomainError("p_prime_exact: parameters must be integers");
  const auto z = std::int64_t(p.z.real()), zp = std::int64_t(p.zp.real());
  const auto w = std::int64_t(p.w.real()), wp = std::int64_t(p.wp.real());
  const auto n = std::int64_t(la.level());
  const BigInt dim = weyl_dim_big(la);
  Rational acc(dim * dim);
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t l = la[std::size_t(i - 1)] - i;
    acc *= recip_gamma_exact(z - l) * recip_gamma_exact(zp - l) *
           recip_gamma_exact(w + n + 1 + l) * recip_gamma_exact(wp + n + 1 + l);
    if (acc == 0) break;
  }
  return acc;
}

Rational s_n_exact(std::size_t n, const ZwParams& p) {
  if (!has_integer_params(p)) throw DomainError("s_n_exact: parameters must be integers");
  const auto z = std::int64_t(p.z.real()), zp = std::int64_t(p.zp.real());
  const auto w = std::int64_t(p.w.real()), wp = std::int64_t(p.wp.real());
  const std::int64_t s = z + zp + w + wp;
  if (s <= -1) throw DomainError("S_N: z+z'+w+w' <= -1");
  Rational acc(1);
  for (std::int64_t i = 1; i <= std::int64_t(n); ++i) {
    for (std::int64_t d : {z + w, z + wp, zp + w, zp + wp}) {
      if (d + i <= 0) throw PoleError("S_N vanishes: a pairwise sum z+w is a negative integer");
      acc *= recip_gamma_exact(d + i);
    }
    acc *= recip_gamma_exact(i);
    acc /= recip_gamma_exact(s + i);
  }
  return acc;
}

void for_each_in_box(std::size_t n, std::int64_t lower, std::int64_t upper,
                     const std::function<void(const Signature&)>& f) {
  if (n == 0) {
    f(Signature{});
    return;
  }
  if (lower > upper) return;
  // Odometer over weakly decreasing tuples, last coordinate fastest.
  std::vector<std::int64_t> la(n, lower);
  while (true) {
    f(Signature(la));
    std::size_t i = n;
    while (i > 0) {
      --i;
      const std::int64_t cap = i == 0 ? upper : la[i - 1];
      if (la[i] < cap) {
        ++la[i];
        for (std::size_t j = i + 1; j < n; ++j) la[j] = lower;
        break;
      }
      if (i == 0) return;
    }
  }
}

namespace {

struct Factor {
  bool zero = false;
  double log_modulus = 0.0;
  double phase = 0.0;
};

// Per-coordinate part of log P'_N: depends on la_i only through l = la_i - i.
class CoordinateCache {
 public:
  CoordinateCache(std::size_t n, const ZwParams& p, std::int64_t l_min, std::int64_t l_max)
      : l_min_(l_min) {
    values_.resize(std::size_t(l_max - l_min + 1));
    for (std::int64_t l = l_min; l <= l_max; ++l) {
      LogComplex acc;
      const double dl = double(l), up = double(n + 1) + dl;
      Factor f;
      if (!multiply_recip_gamma(acc, p.z - dl) || !multiply_recip_gamma(acc, p.zp - dl) ||
          !multiply_recip_gamma(acc, p.w + up) || !multiply_recip_gamma(acc, p.wp + up)) {
        f.zero = true;
      } else {
        f.log_modulus = acc.log_modulus();
        f.phase = acc.phase();
      }
      values_[std::size_t(l - l_min)] = f;
    }
  }
  const Factor& operator()(std::int64_t l) const { return values_[std::size_t(l - l_min_)]; }

 private:
  std::int64_t l_min_;
  std::vector<Factor> values_;
};

double binomial_estimate(std::int64_t width, std::size_t n) {
  // Number of weakly decreasing n-tuples from `width` values: C(width+n-1, n).
  double c = 1.0;
  for (std::size_t k = 1; k <= n; ++k) c = c * double(width + std::int64_t(k) - 1) / double(k);
  return c;
}

std::map<Signature, double> tabulate_box(std::size_t n, const ZwParams& p, std::int64_t lower,
                                         std::int64_t upper, double log_norm) {
  const auto sn = std::int64_t(n);
  CoordinateCache cache(n, p, lower - sn, upper - 1);
  std::vector<double> log_int(std::size_t(upper - lower + sn + 1), 0.0);
  for (std::size_t d = 1; d < log_int.size(); ++d) log_int[d] = std::log(double(d));
  double log_den = 0.0;  // log of prod_{i<j} (j - i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) log_den += log_int[j - i];

  std::map<Signature, double> out;
  std::vector<std::int64_t> l(n);
  for_each_in_box(n, lower, upper, [&](const Signature& la) {
    double lm = 0.0, ph = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = la[i] - std::int64_t(i + 1);
      const Factor& f = cache(l[i]);
      if (f.zero) return;
      lm += f.log_modulus;
      ph += f.phase;
    }
    double log_dim = -log_den;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) log_dim += log_int[std::size_t(l[i] - l[j])];
    ph = normalize_phase(ph);
    if (std::abs(ph) > kPhaseTolerance)
      throw DomainError("P'_N is not a positive real at " + la.to_string());
    out.emplace_hint(out.end(), la, lm + 2.0 * log_dim - log_norm);
  });
  return out;
}

}  // namespace

ZwTable build_table(std::size_t n, const ZwParams& p, const TableOptions& options) {
  if (n == 0) throw LevelMismatchError("build_table: level must be at least 1");
  auto adm = admissibility(p);
  if (!adm.admissible) throw NotAdmissibleError("parameters not admissible: " + adm.reason);

  ZwTable result;
  result.log_s_n = log_s_n(n, p);
  const auto up = support_upper(p);
  const auto lo = support_lower(p);
  std::int64_t half = options.initial_half_width;
  if (up) half = std::max(half, std::abs(*up));
  if (lo) half = std::max(half, std::abs(*lo));

  while (true) {
    SupportBox box;
    box.upper = up ? *up : half;
    box.lower = lo ? *lo : -half;
    box.finite_support = up && lo;
    if (binomial_estimate(box.upper - box.lower + 1, n) > double(options.max_entries))
      throw GrowthLimitError("build_table: box [" + std::to_string(box.lower) + ", " +
                             std::to_string(box.upper) + "] holds too many signatures");
    MeasureTable table(n, tabulate_box(n, p, box.lower, box.upper, result.log_s_n), 0.0);
    if (box.finite_support || table.defect() <= options.mass_tolerance) {
      if (options.s_n_scale != 1.0) {
        const double shift = std::log(options.s_n_scale);
        auto masses = table.log_masses();
        for (auto& [la, lw] : masses) lw -= shift;
        result.log_s_n += shift;
        table = MeasureTable(n, std::move(masses), 0.0);
      }
      result.table = std::move(table);
      result.box = box;
      return result;
    }
    half *= 2;
    ++result.doublings;
    if (half > options.cap)
      throw GrowthLimitError("build_table: support box reached the cap " +
                             std::to_string(options.cap) + " with defect " +
                             std::to_string(table.defect()));
  }
}

ExactTable build_table_exact(std::size_t n, const ZwParams& p) {
  auto adm = admissibility(p);
  if (!adm.admissible) throw NotAdmissibleError("parameters not admissible: " + adm.reason);
  const auto up = support_upper(p);
  const auto lo = support_lower(p);
  if (!up || !lo || !has_integer_params(p))
    throw DomainError("build_table_exact: needs integer parameters with finite support");
  const Rational sn = s_n_exact(n, p);
  ExactTable out;
  for_each_in_box(n, *lo, *up, [&](const Signature& la) {
    Rational v = p_prime_exact(la, p);
    if (v != 0) out.emplace(la, v / sn);
  });
  return out;
}

Complex fourier_coefficient_1(std::int64_t l, Complex z, Complex w) {
  LogComplex acc = log_gamma(1.0 + z + w);
  if (!multiply_recip_gamma(acc, 1.0 + z - double(l)) || !multiply_recip_gamma(acc, 1.0 + w + double(l)))
    return 0.0;
  return acc.value();
}

Complex fourier_coefficient(const Signature& la, Complex z, Complex w) {
  const std::size_t n = la.level();
  LogComplex acc(log_weyl_dim(la), 0.0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double i = double(idx + 1);
    const double l = double(la[idx]) - i;
    acc *= log_gamma(z + w + i);
    acc *= log_gamma(Complex(i));
    if (!multiply_recip_gamma(acc, z - l) || !multiply_recip_gamma(acc, w + double(n + 1) + l))
      return 0.0;
  }
  return acc.value();
}

Complex fourier_coefficient_det(const Signature& la, Complex z, Complex w) {
  const std::size_t n = la.level();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = fourier_coefficient_1(la[i] - std::int64_t(i) + std::int64_t(j), z, w);
  return det_complex(m);
}

DougallReport verify_dougall(const ZwParams& p, std::int64_t truncation) {
  if (truncation < 0) throw DomainError("verify_dougall: truncation must be nonnegative");
  DougallReport r;
  r.truncation = truncation;
  // Sum from the tails inwards so the small terms are added first.
  std::vector<Complex> terms;
  terms.reserve(std::size_t(2 * truncation + 1));
  for (std::int64_t k = -truncation; k <= truncation; ++k) {
    const double dk = double(k);
    LogComplex acc;
    if (!multiply_recip_gamma(acc, p.z - dk + 1.0) || !multiply_recip_gamma(acc, p.zp - dk + 1.0) ||
        !multiply_recip_gamma(acc, p.w + dk + 1.0) || !multiply_recip_gamma(acc, p.wp + dk + 1.0))
      continue;
    terms.push_back(acc.value());
  }
  std::sort(terms.begin(), terms.end(),
            [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  Complex sum = 0.0, comp = 0.0;
  for (Complex t : terms) {
    const Complex y = t - comp;
    const Complex next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  }
  r.lhs_partial = sum;
  LogComplex rhs = log_gamma(p.s() + 1.0);
  bool nonzero = true;
  for (Complex d : {p.z + p.w, p.z + p.wp, p.zp + p.w, p.zp + p.wp})
    nonzero = nonzero && multiply_recip_gamma(rhs, d + 1.0);
  r.rhs = nonzero ? rhs.value() : Complex(0.0);
  r.abs_error = std::abs(r.lhs_partial - r.rhs);
  return r;
}

namespace {

template <class T, class X>
SquareMatrix<T> krattenthaler_matrix(const std::vector<std::int64_t>& x, const std::vector<X>& a,
                                     const std::vector<X>& b) {
  const std::size_t n = x.size();
  if (a.size() + 1 != n || b.size() + 1 != n)
    throw DomainError("krattenthaler: need |a| = |b| = |x| - 1");
  SquareMatrix<T> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // 0-based column j: prod_{k<j} (x_i + a_k) * prod_{k>=j} (x_i + b_k)
      T v(1);
      for (std::size_t k = 0; k < j; ++k) v *= T(x[i]) + T(a[k]);
      for (std::size_t k = j; k + 1 < n; ++k) v *= T(x[i]) + T(b[k]);
      m(i, j) = v;
    }
  }
  return m;
}

template <class T, class X>
T krattenthaler_rhs(const std::vector<std::int64_t>& x, const std::vector<X>& a,
                    const std::vector<X>& b) {
  const std::size_t n = x.size();
  T v(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) v *= T(x[i]) - T(x[j]);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i; j + 1 < n; ++j) v *= T(a[i]) - T(b[j]);
  return v;
}

BigInt bareiss_determinant(SquareMatrix<BigInt> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(r, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace

KrattenthalerReport verify_krattenthaler(const std::vector<std::int64_t>& x,
                                         const std::vector<Complex>& a,
                                         const std::vector<Complex>& b) {
  if (x.empty()) throw DomainError("krattenthaler: x must be nonempty");
  KrattenthalerReport r;
  r.lhs = det_complex(krattenthaler_matrix<Complex>(x, a, b));
  r.rhs = krattenthaler_rhs<Complex>(x, a, b);
  r.abs_error = std::abs(r.lhs - r.rhs);
  const double scale = std::abs(r.rhs);
  r.rel_error = scale > 0.0 ? r.abs_error / scale : r.abs_error;
  return r;
}

bool verify_krattenthaler_exact(const std::vector<std::int64_t>& x,
                                const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b) {
  if (x.empty()) throw DomainError("krattenthaler: x must be nonempty");
  return bareiss_determinant(krattenthaler_matrix<BigInt>(x, a, b)) ==
         krattenthaler_rhs<BigInt>(x, a, b);
}

double log_zw_norm_squared(std::size_t n, Complex z, Complex w) {
  if (z.real() + w.real() <= -0.5)
    throw DomainError("zw_norm_squared: needs Re z + Re w > -1/2");
  const Complex zc = std::conj(z), wc = std::conj(w);
  LogComplex acc;
  for (std::size_t k = 1; k <= n; ++k) {
    const double dk = double(k);
    acc *= log_gamma(Complex(dk));
    acc *= log_gamma(dk + z + zc + w + wc);
    acc /= log_gamma(dk + z + wc);
    acc /= log_gamma(dk + zc + w);
  }
  return acc.log_modulus();
}

double zw_norm_squared(std::size_t n, Complex z, Complex w) {
  return std::exp(log_zw_norm_squared(n, z, w));
}

}  // namespace gtzw

#include "gtzw/characters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::string check_family(const std::vector<double>& v, const char* name, double slack) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return std::string(name) + " has a non-finite entry";
    if (v[i] < -slack) return std::string(name) + " has a negative entry";
    if (i > 0 && v[i] > v[i - 1] + slack) return std::string(name) + " is not weakly decreasing";
  }
  return {};
}

void drop_zeros(std::vector<double>& v) {
  v.erase(std::remove(v.begin(), v.end(), 0.0), v.end());
}

void sort_decreasing(std::vector<double>& v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  drop_zeros(v);
}

// Recompute delta from preserved gamma.
void set_deltas(OmegaPoint& w, double gamma_plus, double gamma_minus) {
  w.delta_plus = gamma_plus + sum(w.alpha_plus) + sum(w.beta_plus);
  w.delta_minus = gamma_minus + sum(w.alpha_minus) + sum(w.beta_minus);
}

double first(const std::vector<double>& v) { return v.empty() ? 0.0 : v.front(); }

}  // namespace

double OmegaPoint::gamma_plus() const { return delta_plus - sum(alpha_plus) - sum(beta_plus); }
double OmegaPoint::gamma_minus() const { return delta_minus - sum(alpha_minus) - sum(beta_minus); }

std::string OmegaPoint::violation(double slack) const {
  for (auto [v, name] : {std::pair{&alpha_plus, "alpha+"}, std::pair{&beta_plus, "beta+"},
                         std::pair{&alpha_minus, "alpha-"}, std::pair{&beta_minus, "beta-"}}) {
    if (auto msg = check_family(*v, name, slack); !msg.empty()) return msg;
  }
  if (!std::isfinite(delta_plus) || !std::isfinite(delta_minus)) return "delta is not finite";
  if (gamma_plus() < -slack) return "sum(alpha+ + beta+) exceeds delta+";
  if (gamma_minus() < -slack) return "sum(alpha- + beta-) exceeds delta-";
  if (first(beta_plus) + first(beta_minus) > 1.0 + slack) return "beta1+ + beta1- exceeds 1";
  return {};
}

void OmegaPoint::validate(double slack) const {
  if (auto msg = violation(slack); !msg.empty()) throw InvariantViolation("OmegaPoint: " + msg);
}

OmegaPoint OmegaPoint::swapped() const {
  return {alpha_minus, beta_minus, alpha_plus, beta_plus, delta_minus, delta_plus};
}

Complex f_omega(const OmegaPoint& omega, Complex u) {
  const Complex up = u - 1.0;
  const Complex um = 1.0 / u - 1.0;
  Complex f = std::exp(omega.gamma_plus() * up + omega.gamma_minus() * um);
  for (double b : omega.beta_plus) f *= 1.0 + b * up;
  for (double a : omega.alpha_plus) f /= 1.0 - a * up;
  for (double b : omega.beta_minus) f *= 1.0 + b * um;
  for (double a : omega.alpha_minus) f /= 1.0 - a * um;
  return f;
}

Complex chi_omega(const OmegaPoint& omega, const SpectrumList& spectrum) {
  Complex v = 1.0;
  for (Complex u : spectrum) v *= f_omega(omega, u);
  return v;
}

OmegaPoint det_twist(const OmegaPoint& omega, long k) {
  OmegaPoint w = omega;
  const double gp = omega.gamma_plus(), gm = omega.gamma_minus();
  for (long step = 0; step < std::labs(k); ++step) {
    auto& gain = k > 0 ? w.beta_plus : w.beta_minus;
    auto& lose = k > 0 ? w.beta_minus : w.beta_plus;
    const double b = first(lose);
    if (!lose.empty()) lose.erase(lose.begin());
    gain.insert(gain.begin(), 1.0 - b);
    drop_zeros(gain);
  }
  set_deltas(w, gp, gm);
  if (auto msg = w.violation(1e-12); !msg.empty())
    throw InvariantViolation("det_twist produced an invalid point: " + msg);
  return w;
}

OmegaPoint normalize_betas(const OmegaPoint& omega) {
  OmegaPoint w = omega;
  for (auto* v : {&w.beta_plus, &w.beta_minus}) {
    for (double b : *v) {
      if (b > 1.0) throw DomainError("normalize_betas: beta entries must not exceed 1");
    }
    sort_decreasing(*v);
  }
  const double gp = omega.gamma_plus(), gm = omega.gamma_minus();
  // Each rewrite lowers sum(beta) by 2(b+ + b- - 1) > 0, so this terminates.
  while (first(w.beta_plus) + first(w.beta_minus) > 1.0) {
    const double bp = w.beta_plus.front(), bm = w.beta_minus.front();
    w.beta_plus.front() = 1.0 - bm;
    w.beta_minus.front() = 1.0 - bp;
    sort_decreasing(w.beta_plus);
    sort_decreasing(w.beta_minus);
  }
  set_deltas(w, gp, gm);
  return w;
}

std::vector<Complex> f_omega_fourier(const OmegaPoint& omega, std::size_t nodes) {
  if (nodes == 0) throw DomainError("f_omega_fourier: need at least one node");
  std::vector<Complex> values(nodes);
  for (std::size_t j = 0; j < nodes; ++j)
    values[j] = f_omega(omega, std::polar(1.0, 2.0 * kPi * double(j) / double(nodes)));
  std::vector<Complex> out(nodes);
  const auto half = std::int64_t(nodes / 2);
  for (std::size_t idx = 0; idx < nodes; ++idx) {
    const std::int64_t k = std::int64_t(idx) - half;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const auto r = std::int64_t((__int128(k) * std::int64_t(j)) % std::int64_t(nodes));
      acc += values[j] * std::polar(1.0, -2.0 * kPi * double(r) / double(nodes));
    }
    out[idx] = acc / double(nodes);
  }
  return out;
}

namespace {

using LComplex = std::complex<long double>;

constexpr double kClusterTolerance = 1e-9;

struct Cluster {
  LComplex value;
  std::size_t multiplicity;
};

std::vector<Cluster> cluster_points(const std::vector<Complex>& x) {
  std::vector<Cluster> out;
  for (Complex v : x) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) {
      return std::abs(LComplex(v) - c.value) < kClusterTolerance;
    });
    if (it == out.end()) out.push_back({LComplex(v), 1});
    else ++it->multiplicity;
  }
  return out;
}

LComplex ipow(LComplex x, std::int64_t e) {
  if (e < 0) return 1.0L / ipow(x, -e);
  LComplex r = 1.0L;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

long double binomial(std::int64_t a, std::size_t r) {
  long double c = 1.0L;
  for (std::size_t i = 0; i < r; ++i) c = c * (long double)(a - std::int64_t(i)) / (long double)(i + 1);
  return c;
}

// det of rows d^r/dy^r y^(a_j) / r! over clusters; exponents a_j >= 0.
LComplex confluent_det(const std::vector<Cluster>& clusters, const std::vector<std::int64_t>& a) {
  const std::size_t n = a.size();
  SquareMatrix<LComplex> m(n);
  std::size_t row = 0;
  for (const auto& c : clusters) {
    for (std::size_t r = 0; r < c.multiplicity; ++r, ++row) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t e = a[j] - std::int64_t(r);
        m(row, j) = e < 0 ? LComplex(0) : binomial(a[j], r) * ipow(c.value, e);
      }
    }
  }
  return determinant(std::move(m));
}

LComplex character_ratio(const Signature& la, const std::vector<Cluster>& clusters) {
  const std::size_t n = la.level();
  std::vector<std::int64_t> a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = la[j] - la[n - 1] + std::int64_t(n - 1 - j);
    b[j] = std::int64_t(n - 1 - j);
  }
  return confluent_det(clusters, a) / confluent_det(clusters, b);
}

}  // namespace

Complex normalized_character(const Signature& la, const SpectrumList& spectrum) {
  const std::size_t n = la.level();
  if (spectrum.size() > n)
    throw LevelMismatchError("normalized_character: spectrum longer than the level");
  if (n == 0) return 1.0;
  std::vector<Complex> x(spectrum);
  x.resize(n, Complex(1.0));
  const LComplex at_x = character_ratio(la, cluster_points(x));
  const LComplex at_one = character_ratio(la, {{LComplex(1.0L), n}});
  LComplex shift = 1.0L;  // (prod x)^(la_N)
  for (Complex v : x) shift *= ipow(LComplex(v), la[n - 1]);
  const LComplex r = shift * at_x / at_one;
  return {double(r.real()), double(r.imag())};
}

RestrictionValue zw_character_restriction(const ZwParams& p, std::size_t n,
                                          const SpectrumList& spectrum, double mass_tolerance) {
  TableOptions options;
  options.mass_tolerance = mass_tolerance;
  const ZwTable t = build_table(n, p, options);
  RestrictionValue out;
  out.defect = t.table.defect();
  Complex acc = 0.0;
  for (const auto& [la, lw] : t.table.log_masses()) acc += std::exp(lw) * normalized_character(la, spectrum);
  out.value = acc;
  return out;
}

}  // namespace gtzw

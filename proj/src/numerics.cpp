#include "gtzw/numerics.hpp"

#include <array>
#include <string>

namespace gtzw {

namespace {

// Godfrey's coefficients for g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * kPi);

LogComplex log_gamma_right(Complex z) {
  const Complex x = z - 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (x + double(k));
  const Complex t = x + kLanczosG + 0.5;
  const Complex lg = kHalfLogTwoPi + (x + 0.5) * std::log(t) - t + std::log(series);
  return {lg.real(), lg.imag()};
}

// log sin(pi z) without overflow for large |Im z|.
LogComplex log_sin_pi(Complex z) {
  const double n = std::round(z.real());
  const double r = z.real() - n;
  const double y = z.imag();
  const double ay = std::abs(y);
  const double decay = std::exp(-2.0 * kPi * ay);
  const Complex scaled(std::sin(kPi * r) * (1.0 + decay),
                       std::copysign(1.0, y) * std::cos(kPi * r) * -std::expm1(-2.0 * kPi * ay));
  double phase = std::arg(scaled);
  if (std::fmod(std::abs(n), 2.0) == 1.0) phase += kPi;
  return {kPi * ay - std::log(2.0) + std::log(std::abs(scaled)), phase};
}

}  // namespace

double normalize_phase(double phase) {
  if (phase > -kPi && phase <= kPi) return phase;
  double r = std::remainder(phase, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

LogComplex LogComplex::from_value(Complex z) {
  if (z == Complex(0.0)) throw DomainError("LogComplex: zero has no logarithm");
  return {std::log(std::abs(z)), std::arg(z)};
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

LogComplex log_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
  LogComplex result(std::log(kPi), 0.0);
  result /= log_sin_pi(z);
  result /= log_gamma_right(1.0 - z);
  return result;
}

Complex recip_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return log_gamma(z).inverse().value();
}

Complex det_complex(const ComplexMatrix& m) {
  if (m.size() > 64) throw DomainError("det_complex: matrices beyond 64x64 are not supported");
  if (m.size() == 1) return m(0, 0);
  return determinant(m);
}

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) throw DomainError("log_sum_exp: empty input");
  LogSumAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.result();
}

void LogSumAccumulator::add(double log_weight) {
  ++count_;
  if (log_weight == kNegInf) return;
  if (log_weight > max_) {
    // rescale what we have so far to the new reference point
    const double scale = max_ == kNegInf ? 0.0 : std::exp(max_ - log_weight);
    sum_ *= scale;
    compensation_ *= scale;
    max_ = log_weight;
  }
  const double term = std::exp(log_weight - max_);
  const double t = sum_ + term;
  if (std::abs(sum_) >= std::abs(term))
    compensation_ += (sum_ - t) + term;
  else
    compensation_ += (term - t) + sum_;
  sum_ = t;
}

double LogSumAccumulator::result() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log(sum_ + compensation_);
}

}  // namespace gtzw

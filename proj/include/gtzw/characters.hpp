#pragma once

#include <string>
#include <vector>

#include "gtzw/numerics.hpp"
#include "gtzw/signatures.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

/// Point of the boundary: Voiculescu parameters with only nonzero alpha/beta
/// entries stored.
struct OmegaPoint {
  std::vector<double> alpha_plus;
  std::vector<double> beta_plus;
  std::vector<double> alpha_minus;
  std::vector<double> beta_minus;
  double delta_plus = 0.0;
  double delta_minus = 0.0;

  double gamma_plus() const;
  double gamma_minus() const;

  /// Empty string when every constraint holds within `slack`, else the first
  /// violated constraint.
  std::string violation(double slack = 0.0) const;
  bool is_valid(double slack = 0.0) const { return violation(slack).empty(); }
  /// Throws InvariantViolation with the violated constraint.
  void validate(double slack = 0.0) const;

  /// The point with + and - data exchanged (character of the transposed
  /// inverse, F(u) -> F(1/u)).
  OmegaPoint swapped() const;
};

/// Eigenvalues different from 1; the rest of the spectrum is implicitly 1.
using SpectrumList = std::vector<Complex>;

/// F^(omega)(u) for |u| = 1.
Complex f_omega(const OmegaPoint& omega, Complex u);

/// chi^(omega)(U) = prod over the spectrum of F^(omega)(u).
Complex chi_omega(const OmegaPoint& omega, const SpectrumList& spectrum);

/// Twist by det^k: F -> F * u^k. Gamma is preserved and delta recomputed.
OmegaPoint det_twist(const OmegaPoint& omega, long k);

/// Rewrites beta pairs until beta_1^+ + beta_1^- <= 1 without changing F.
/// Needs every beta <= 1.
OmegaPoint normalize_betas(const OmegaPoint& omega);

/// Fourier coefficients of F^(omega) on the circle by an n-point rule;
/// entry k holds the coefficient of u^(k - n/2).
std::vector<Complex> f_omega_fourier(const OmegaPoint& omega, std::size_t nodes);

/// Normalized irreducible character s_la(x) / Dim(la) at x padded with ones to
/// level(la). Coincident eigenvalues use confluent (derivative) rows.
Complex normalized_character(const Signature& la, const SpectrumList& spectrum);

struct RestrictionValue {
  Complex value;
  /// Uncaptured mass of the table; bounds the truncation error.
  double defect = 0.0;
};

/// sum_la P_N(la) chi~^la(spectrum) over the truncated zw table.
RestrictionValue zw_character_restriction(const ZwParams& p, std::size_t n,
                                          const SpectrumList& spectrum, double mass_tolerance);

}  // namespace gtzw

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gtzw {

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;

  /// |mean - target| <= sigmas * standard_error
  bool within(double target, double sigmas = 3.0) const;
};

MeanEstimate estimate_mean(std::span<const double> samples);
/// Self-normalized weighted mean; the standard error uses the delta method.
MeanEstimate estimate_weighted_mean(std::span<const double> values, std::span<const double> weights);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Asymptotic Kolmogorov tail P(D_n > d) with Stephens' small-sample correction.
double ks_pvalue(double d, std::size_t n);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts against probabilities (which must sum
/// to at most 1; the rest forms an extra cell). Cells with expected count
/// below `min_expected` are pooled.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected = 5.0);

/// Two-sample homogeneity test over matching cells.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                      double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

/// 0.5 * sum |p_i - q_i|
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace gtzw

#include "gtzw/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "gtzw/errors.hpp"

namespace gtzw {

bool MeanEstimate::within(double target, double sigmas) const {
  return std::abs(mean - target) <= sigmas * standard_error;
}

MeanEstimate estimate_mean(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("estimate_mean: no samples");
  const double n = double(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var = samples.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

MeanEstimate estimate_weighted_mean(std::span<const double> values, std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw DomainError("estimate_weighted_mean: values and weights must match and be nonempty");
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw DomainError("estimate_weighted_mean: weights sum to zero");
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) mean += weights[i] / total * values[i];
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weights[i] / total;
    var += w * w * (values[i] - mean) * (values[i] - mean);
  }
  return {mean, std::sqrt(var)};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(double(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

namespace {

struct Cell {
  double observed = 0.0;
  double expected = 0.0;
};

std::vector<Cell> pool(const std::vector<Cell>& cells, double min_expected) {
  std::vector<Cell> out;
  Cell cur;
  for (const auto& c : cells) {
    cur.observed += c.observed;
    cur.expected += c.expected;
    if (cur.expected >= min_expected) {
      out.push_back(cur);
      cur = {};
    }
  }
  if (cur.expected > 0.0 || cur.observed > 0.0) {
    if (out.empty()) out.push_back(cur);
    else {
      out.back().observed += cur.observed;
      out.back().expected += cur.expected;
    }
  }
  return out;
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected) {
  if (observed.size() != probs.size() || observed.empty())
    throw DomainError("chi_square_gof: observed and probs must match and be nonempty");
  double n = 0.0, psum = 0.0;
  for (auto o : observed) n += double(o);
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    cells.push_back({double(observed[i]), n * probs[i]});
    psum += probs[i];
  }
  if (psum < 1.0) cells.push_back({0.0, n * (1.0 - psum)});
  const auto pooled = pool(cells, min_expected);
  ChiSquareResult r;
  for (const auto& c : pooled) {
    if (c.expected > 0.0) r.statistic += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
    else if (c.observed > 0.0) r.statistic = INFINITY;
  }
  r.dof = double(pooled.size()) - 1.0;
  r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                      double min_expected) {
  if (a.size() != b.size() || a.empty())
    throw DomainError("chi_square_two_sample: samples must have matching nonempty cells");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += double(a[i]);
    nb += double(b[i]);
  }
  const double fa = na / (na + nb);
  // Pool by the smaller expected count, which belongs to the smaller sample.
  std::vector<std::pair<Cell, Cell>> merged;
  std::pair<Cell, Cell> cur;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double tot = double(a[i] + b[i]);
    cur.first.observed += double(a[i]);
    cur.first.expected += tot * fa;
    cur.second.observed += double(b[i]);
    cur.second.expected += tot * (1.0 - fa);
    if (std::min(cur.first.expected, cur.second.expected) >= min_expected) {
      merged.push_back(cur);
      cur = {};
    }
  }
  if (cur.first.expected + cur.second.expected > 0.0) {
    if (merged.empty()) merged.push_back(cur);
    else {
      merged.back().first.observed += cur.first.observed;
      merged.back().first.expected += cur.first.expected;
      merged.back().second.observed += cur.second.observed;
      merged.back().second.expected += cur.second.expected;
    }
  }
  ChiSquareResult r;
  for (const auto& [x, y] : merged) {
    if (x.expected > 0.0) r.statistic += (x.observed - x.expected) * (x.observed - x.expected) / x.expected;
    if (y.expected > 0.0) r.statistic += (y.observed - y.expected) * (y.observed - y.expected) / y.expected;
  }
  r.dof = double(merged.size()) - 1.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DomainError("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace gtzw

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gtzw/characters.hpp"
#include "gtzw/gt_graph.hpp"
#include "gtzw/random.hpp"
#include "gtzw/signatures.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

struct EmbeddedPoint {
  OmegaPoint omega;
  std::size_t source_level = 0;
  Signature source_signature;
};

/// GT_N -> Omega: alpha = p~(la+-)/N, beta = q~(la+-)/N, delta = |la+-|/N.
EmbeddedPoint embed(const Signature& la, std::size_t n);

/// Checks the boundary constraints of embed(la, n) in exact half-integer
/// arithmetic; returns the first violation or an empty string.
std::string embed_violation_exact(const Signature& la, std::size_t n);

enum class SampleMethod { enumerate, mcmc };

struct SamplerOptions {
  SampleMethod method = SampleMethod::enumerate;
  /// Table defect for the enumerate method.
  double mass_tolerance = 1e-8;
  /// MCMC burn-in and thinning; 0 selects 1000*N and N.
  std::size_t burn_in = 0;
  std::size_t thinning = 0;
  /// Samples per RNG stream. Block b always uses derive_stream(seed, b).
  std::size_t block_size = 4096;
  unsigned workers = 1;
};

/// Metropolis chain on GT_N targeting P_N: pick a coordinate uniformly,
/// move it by +-1, reject moves that break the ordering.
class McmcChain {
 public:
  McmcChain(std::size_t n, const ZwParams& p);

  void step(Rng& rng);
  void advance(Rng& rng, std::size_t steps);
  Signature state() const { return Signature(state_); }
  double acceptance_rate() const;

 private:
  double coordinate_log_weight(std::int64_t l);

  std::size_t n_;
  ZwParams p_;
  std::vector<std::int64_t> state_;
  std::map<std::int64_t, double> cache_;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Inverse-CDF sampling from a truncated table, conditioned on its support.
class TableSampler {
 public:
  explicit TableSampler(const MeasureTable& table);
  const Signature& draw(Rng& rng) const;

 private:
  std::vector<Signature> atoms_;
  std::vector<double> cdf_;
};

/// One draw from P_N. The enumerate method builds a fresh table; use
/// sample_signatures for many draws.
Signature sample_signature(std::size_t n, const ZwParams& p, SampleMethod method, Rng& rng);

/// `count` draws, deterministic in `seed` for any worker count.
std::vector<Signature> sample_signatures(std::size_t n, const ZwParams& p, std::size_t count,
                                         std::uint64_t seed, const SamplerOptions& options = {});

struct EmpiricalMeasure {
  std::vector<EmbeddedPoint> points;
  std::vector<double> weights;
  std::size_t level = 0;
  /// Number of draws behind the weights; 0 for exact measures.
  std::size_t sample_count = 0;

  double total_weight() const;
};

/// Empirical law of embed(la, N) over `n_samples` draws from P_N.
EmpiricalMeasure pushforward(std::size_t n, const ZwParams& p, std::size_t n_samples,
                             std::uint64_t seed, const SamplerOptions& options = {});
/// Exact pushforward of a table (weights renormalized to the captured mass).
EmpiricalMeasure pushforward_exact(const MeasureTable& table);

/// One JSON object per line.
void write_jsonl(std::ostream& os, const EmpiricalMeasure& m);
/// Columns a1p..akp,b1p..bkp,a1m..akm,b1m..bkm,cp,cm,weight.
void write_csv(std::ostream& os, const EmpiricalMeasure& m, std::size_t k = 3);

struct ConvergenceReport {
  std::vector<std::string> functions;
  std::vector<std::size_t> levels;
  /// integrals[m][f] and Monte Carlo standard errors per measure and function.
  std::vector<std::vector<double>> integrals;
  std::vector<std::vector<double>> standard_errors;
  /// differences[m][f] = integrals[m+1][f] - integrals[m][f]
  std::vector<std::vector<double>> differences;
};

/// Fixed panel: 1, alpha_i+, beta_i+, alpha_i-, beta_i- for i <= 2, delta+,
/// delta-, Re F(u0), Im F(u0) with u0 = exp(i).
ConvergenceReport convergence_diagnostics(const std::vector<EmpiricalMeasure>& seq);

/// Panel values at one point, in the order of ConvergenceReport::functions.
std::vector<double> panel_values(const OmegaPoint& omega);
std::vector<std::string> panel_names();

}  // namespace gtzw

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gtzw/exact.hpp"
#include "gtzw/numerics.hpp"
#include "gtzw/random.hpp"
#include "gtzw/signatures.hpp"

namespace gtzw {

/// Truncated probability table on one level of the graph.
///
/// Masses are stored as natural-log weights. `log_target_total` is the log of
/// the mass the full (untruncated) measure carries, 0 for a probability
/// measure; the gap between target and captured mass is the certified defect.
class MeasureTable {
 public:
  MeasureTable() = default;
  /// Drops entries with log-weight -inf. Throws LevelMismatchError for keys at
  /// the wrong level and InvariantViolation for NaN/+inf weights or when the
  /// captured mass exceeds the target by more than a 1e-12 relative slack.
  MeasureTable(std::size_t level, std::map<Signature, double> log_masses,
               double log_target_total = 0.0);

  std::size_t level() const { return level_; }
  const std::map<Signature, double>& log_masses() const { return log_masses_; }
  std::size_t size() const { return log_masses_.size(); }

  double log_total_captured() const { return log_captured_; }
  double log_target_total() const { return log_target_; }
  double captured() const;
  double target() const;
  /// target - captured, may be a tiny negative number from rounding.
  double defect() const { return target() - captured(); }

  /// Linear-scale mass; 0 outside the stored support.
  double mass(const Signature& s) const;
  double log_mass(const Signature& s) const;

 private:
  std::size_t level_ = 0;
  std::map<Signature, double> log_masses_;
  double log_captured_ = kNegInf;
  double log_target_ = 0.0;
};

/// A finite path from the root (level 0) up to its last vertex.
struct Path {
  std::vector<Signature> vertices;
  const Signature& end() const { return vertices.back(); }
};

/// q(nu, la) = Dim(nu) / Dim(la) when nu < la, else 0; q(root, la) = 1 at level 1.
double cotransition(const Signature& nu, const Signature& la);
Rational cotransition_exact(const Signature& nu, const Signature& la);

/// Multi-step cotransition from level N down to level n < N, summed over all
/// intermediate chains.
double cotransition_iterated(const Signature& nu, const Signature& la);
Rational cotransition_iterated_exact(const Signature& nu, const Signature& la);

/// Number of chains nu = t_n < t_{n+1} < ... < t_N = la.
BigInt count_chains(const Signature& nu, const Signature& la);

/// True iff some chain of interlacing steps leads from `la` down to `nu`.
bool reachable_down(const Signature& nu, const Signature& la);

/// Linear-scale pushdown of a table one level down: nu -> sum_la q(nu,la) P(la).
std::map<Signature, double> pushdown(const MeasureTable& pn);

struct CoherencyReport {
  double max_abs_residual = 0.0;
  std::optional<Signature> worst_vertex;
  double l1_residual = 0.0;
  /// Residual that truncation alone can explain: defect(P_N) + defect(P_{N-1}).
  double defect_bound = 0.0;
  /// max_abs_residual <= tol + defect_bound
  bool within_tolerance = false;
};

/// Compare P_{N-1} with the pushdown of P_N on the union of both supports.
CoherencyReport verify_coherency(const MeasureTable& pn_minus1, const MeasureTable& pn, double tol);

using ExactTable = std::map<Signature, Rational>;

struct ExactCoherencyReport {
  Rational max_abs_residual;
  std::optional<Signature> worst_vertex;
  bool exact = false;
};

ExactCoherencyReport verify_coherency_exact(const ExactTable& pn_minus1, const ExactTable& pn);

/// Uniform random path ending at `la`: each downward step draws nu with
/// probability q(nu, current). Throws DomainError if a single step would have
/// to enumerate more than `max_branching` predecessors.
Path sample_path_down(const Signature& la, Rng& rng, std::uint64_t max_branching = 20'000'000);

}  // namespace gtzw

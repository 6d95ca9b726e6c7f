#include "gtzw/gt_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtzw/errors.hpp"

namespace gtzw {

MeasureTable::MeasureTable(std::size_t level, std::map<Signature, double> log_masses,
                           double log_target_total)
    : level_(level), log_target_(log_target_total) {
  LogSumAccumulator acc;
  for (auto& [sig, lw] : log_masses) {
    if (sig.level() != level)
      throw LevelMismatchError("MeasureTable: signature " + sig.to_string() + " is not at level " +
                               std::to_string(level));
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity())
      throw InvariantViolation("MeasureTable: invalid log-weight at " + sig.to_string());
    if (lw == kNegInf) continue;
    acc.add(lw);
    log_masses_.emplace(sig, lw);
  }
  log_captured_ = acc.result();
  if (log_captured_ > log_target_ + 1e-12)
    throw InvariantViolation("MeasureTable: captured mass exceeds the target total");
}

double MeasureTable::captured() const { return std::exp(log_captured_); }
double MeasureTable::target() const { return std::exp(log_target_); }

double MeasureTable::log_mass(const Signature& s) const {
  auto it = log_masses_.find(s);
  return it == log_masses_.end() ? kNegInf : it->second;
}

double MeasureTable::mass(const Signature& s) const { return std::exp(log_mass(s)); }

namespace {

void check_adjacent(const Signature& nu, const Signature& la, const char* what) {
  if (nu.level() + 1 != la.level())
    throw LevelMismatchError(std::string(what) + ": expected levels N-1 and N, got " +
                             std::to_string(nu.level()) + " and " + std::to_string(la.level()));
}

void check_below(const Signature& nu, const Signature& la, const char* what) {
  if (nu.level() >= la.level())
    throw LevelMismatchError(std::string(what) + ": lower level must be below the upper level");
}

template <class T, class Step>
T iterate_down(const Signature& nu, const Signature& la, Step step) {
  if (!reachable_down(nu, la)) return T(0);
  std::map<Signature, T> layer{{la, T(1)}};
  for (std::size_t m = la.level(); m > nu.level(); --m) {
    std::map<Signature, T> next;
    for (const auto& [mu, w] : layer) {
      for_each_down(mu, [&](const Signature& x) {
        if (reachable_down(nu, x)) next[x] += w * step(x, mu);
      });
    }
    layer = std::move(next);
  }
  auto it = layer.find(nu);
  return it == layer.end() ? T(0) : it->second;
}

}  // namespace

double cotransition(const Signature& nu, const Signature& la) {
  check_adjacent(nu, la, "cotransition");
  if (!interlaces(nu, la)) return 0.0;
  if (la.level() == 1) return 1.0;
  try {
    return double(weyl_dim(nu)) / double(weyl_dim(la));
  } catch (const OverflowError&) {
    return std::exp(log_weyl_dim(nu) - log_weyl_dim(la));
  }
}

Rational cotransition_exact(const Signature& nu, const Signature& la) {
  check_adjacent(nu, la, "cotransition_exact");
  if (!interlaces(nu, la)) return Rational(0);
  return Rational(weyl_dim_big(nu), weyl_dim_big(la));
}

bool reachable_down(const Signature& nu, const Signature& la) {
  if (nu.level() > la.level()) return false;
  const std::size_t k = la.level() - nu.level();
  for (std::size_t i = 0; i < nu.level(); ++i) {
    if (nu[i] > la[i] || nu[i] < la[i + k]) return false;
  }
  return true;
}

double cotransition_iterated(const Signature& nu, const Signature& la) {
  check_below(nu, la, "cotransition_iterated");
  return iterate_down<double>(nu, la, [](const Signature& x, const Signature& mu) {
    return cotransition(x, mu);
  });
}

Rational cotransition_iterated_exact(const Signature& nu, const Signature& la) {
  check_below(nu, la, "cotransition_iterated_exact");
  return iterate_down<Rational>(nu, la, [](const Signature& x, const Signature& mu) {
    return cotransition_exact(x, mu);
  });
}

BigInt count_chains(const Signature& nu, const Signature& la) {
  check_below(nu, la, "count_chains");
  return iterate_down<BigInt>(nu, la, [](const Signature&, const Signature&) { return BigInt(1); });
}

std::map<Signature, double> pushdown(const MeasureTable& pn) {
  const std::size_t n = pn.level();
  if (n == 0) throw LevelMismatchError("pushdown: level 0 has nothing below it");
  std::map<Signature, double> out;
  if (pn.size() == 0) return out;
  if (n == 1) {
    out.emplace(Signature{}, pn.captured());
    return out;
  }

  std::int64_t lo = pn.log_masses().begin()->first[n - 1], hi = lo;
  for (const auto& [la, lw] : pn.log_masses()) {
    lo = std::min(lo, la[n - 1]);
    hi = std::max(hi, la[0]);
  }
  const auto width = std::uint64_t(hi - lo + 1);
  double cells = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) cells *= double(width);

  // P(la)/Dim(la) is accumulated per nu and multiplied by Dim(nu) at the end.
  if (cells <= double(1u << 23)) {
    std::vector<double> dense(std::size_t(cells), 0.0);
    std::vector<std::int64_t> nu(n - 1);
    for (const auto& [la, lw] : pn.log_masses()) {
      const double a = std::exp(lw - log_weyl_dim(la));
      for (std::size_t i = 0; i + 1 < n; ++i) nu[i] = la[i + 1];
      while (true) {
        std::size_t index = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) index = index * width + std::size_t(nu[i] - lo);
        dense[index] += a;
        std::size_t i = n - 1;
        while (i > 0) {
          --i;
          if (nu[i] < la[i]) {
            ++nu[i];
            break;
          }
          nu[i] = la[i + 1];
          if (i == 0) {
            i = n;  // odometer wrapped
            break;
          }
        }
        if (i == n) break;
      }
    }
    std::vector<std::int64_t> digits(n - 1);
    for (std::size_t index = 0; index < dense.size(); ++index) {
      if (dense[index] == 0.0) continue;
      std::size_t rest = index;
      for (std::size_t i = n - 1; i-- > 0;) {
        digits[i] = lo + std::int64_t(rest % width);
        rest /= width;
      }
      Signature s(digits);
      out.emplace(s, dense[index] * std::exp(log_weyl_dim(s)));
    }
    return out;
  }

  std::map<Signature, double> acc;
  for (const auto& [la, lw] : pn.log_masses()) {
    const double a = std::exp(lw - log_weyl_dim(la));
    for_each_down(la, [&](const Signature& nu) { acc[nu] += a; });
  }
  for (auto& [nu, v] : acc) out.emplace(nu, v * std::exp(log_weyl_dim(nu)));
  return out;
}

CoherencyReport verify_coherency(const MeasureTable& pn_minus1, const MeasureTable& pn, double tol) {
  if (pn_minus1.level() + 1 != pn.level())
    throw LevelMismatchError("verify_coherency: tables must sit on adjacent levels");
  CoherencyReport report;
  const auto pushed = pushdown(pn);
  auto consider = [&](const Signature& nu, double residual) {
    report.l1_residual += residual;
    if (!report.worst_vertex || residual > report.max_abs_residual) {
      report.max_abs_residual = residual;
      report.worst_vertex = nu;
    }
  };
  for (const auto& [nu, lw] : pn_minus1.log_masses()) {
    auto it = pushed.find(nu);
    consider(nu, std::abs(std::exp(lw) - (it == pushed.end() ? 0.0 : it->second)));
  }
  for (const auto& [nu, v] : pushed) {
    if (!pn_minus1.log_masses().contains(nu)) consider(nu, std::abs(v));
  }
  report.defect_bound = std::max(0.0, pn.defect()) + std::max(0.0, pn_minus1.defect());
  report.within_tolerance = report.max_abs_residual <= tol + report.defect_bound;
  return report;
}

ExactCoherencyReport verify_coherency_exact(const ExactTable& pn_minus1, const ExactTable& pn) {
  ExactTable pushed;
  for (const auto& [la, p] : pn) {
    if (la.level() == 0) throw LevelMismatchError("verify_coherency_exact: level-0 table on top");
    for_each_down(la, [&](const Signature& nu) { pushed[nu] += p * cotransition_exact(nu, la); });
  }
  ExactCoherencyReport report;
  auto consider = [&](const Signature& nu, const Rational& residual) {
    if (!report.worst_vertex || residual > report.max_abs_residual) {
      report.max_abs_residual = residual;
      report.worst_vertex = nu;
    }
  };
  for (const auto& [nu, p] : pn_minus1) {
    auto it = pushed.find(nu);
    consider(nu, abs(p - (it == pushed.end() ? Rational(0) : it->second)));
  }
  for (const auto& [nu, p] : pushed) {
    if (!pn_minus1.contains(nu)) consider(nu, abs(p));
  }
  report.exact = report.max_abs_residual == 0;
  return report;
}

Path sample_path_down(const Signature& la, Rng& rng, std::uint64_t max_branching) {
  std::vector<Signature> reversed{la};
  std::vector<Signature> candidates;
  std::vector<double> weights;
  while (!reversed.back().empty()) {
    const Signature& top = reversed.back();
    if (top.level() == 1) {
      reversed.emplace_back();
      continue;
    }
    if (count_down(top) > max_branching)
      throw DomainError("sample_path_down: too many predecessors of " + top.to_string());
    candidates = enumerate_down(top);
    const double log_dim_top = log_weyl_dim(top);
    weights.resize(candidates.size());
    double total = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      weights[i] = std::exp(log_weyl_dim(candidates[i]) - log_dim_top);
      total += weights[i];
    }
    double u = uniform01(rng) * total;
    std::size_t pick = candidates.size() - 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (u < weights[i]) {
        pick = i;
        break;
      }
      u -= weights[i];
    }
    reversed.push_back(std::move(candidates[pick]));
  }
  std::reverse(reversed.begin(), reversed.end());
  return Path{std::move(reversed)};
}

}  // namespace gtzw

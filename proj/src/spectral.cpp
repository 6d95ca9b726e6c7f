#include "gtzw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "gtzw/errors.hpp"
#include "gtzw/json_io.hpp"

namespace gtzw {

namespace {

std::vector<double> scaled(const std::vector<HalfInteger>& v, std::size_t n) {
  std::vector<double> out;
  out.reserve(v.size());
  for (auto h : v) out.push_back(h.value() / double(n));
  return out;
}

std::string check_strict(const std::vector<HalfInteger>& v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].twice <= 0) return std::string(name) + " has a nonpositive entry";
    if (i > 0 && !(v[i] < v[i - 1])) return std::string(name) + " is not strictly decreasing";
  }
  return {};
}

std::int64_t twice_sum(const std::vector<HalfInteger>& v) {
  std::int64_t s = 0;
  for (auto h : v) s += h.twice;
  return s;
}

}  // namespace

EmbeddedPoint embed(const Signature& la, std::size_t n) {
  if (la.level() != n) throw LevelMismatchError("embed: signature level differs from N");
  if (n == 0) throw LevelMismatchError("embed: level must be at least 1");
  const FrobeniusSplit f = frobenius_split(la);
  EmbeddedPoint e;
  e.source_level = n;
  e.source_signature = la;
  e.omega.alpha_plus = scaled(f.modified_p_plus, n);
  e.omega.beta_plus = scaled(f.modified_q_plus, n);
  e.omega.alpha_minus = scaled(f.modified_p_minus, n);
  e.omega.beta_minus = scaled(f.modified_q_minus, n);
  e.omega.delta_plus = double(f.size_plus) / double(n);
  e.omega.delta_minus = double(f.size_minus) / double(n);
  return e;
}

std::string embed_violation_exact(const Signature& la, std::size_t n) {
  if (la.level() != n) return "level differs from N";
  const FrobeniusSplit f = frobenius_split(la);
  for (auto [v, name] : {std::pair{&f.modified_p_plus, "alpha+"}, std::pair{&f.modified_q_plus, "beta+"},
                         std::pair{&f.modified_p_minus, "alpha-"}, std::pair{&f.modified_q_minus, "beta-"}}) {
    if (auto msg = check_strict(*v, name); !msg.empty()) return msg;
  }
  if (twice_sum(f.modified_p_plus) + twice_sum(f.modified_q_plus) != 2 * f.size_plus)
    return "sum(alpha+ + beta+) differs from delta+";
  if (twice_sum(f.modified_p_minus) + twice_sum(f.modified_q_minus) != 2 * f.size_minus)
    return "sum(alpha- + beta-) differs from delta-";
  const std::int64_t b1 = (f.modified_q_plus.empty() ? 0 : f.modified_q_plus[0].twice) +
                          (f.modified_q_minus.empty() ? 0 : f.modified_q_minus[0].twice);
  if (b1 > 2 * std::int64_t(n)) return "beta1+ + beta1- exceeds 1";
  return {};
}

McmcChain::McmcChain(std::size_t n, const ZwParams& p) : n_(n), p_(p), state_(n, 0) {
  if (n == 0) throw LevelMismatchError("McmcChain: level must be at least 1");
  auto adm = admissibility(p);
  if (!adm.admissible) throw NotAdmissibleError("parameters not admissible: " + adm.reason);
  std::int64_t start = 0;
  if (auto up = support_upper(p)) start = std::min(start, *up);
  if (auto lo = support_lower(p)) start = std::max(start, *lo);
  std::fill(state_.begin(), state_.end(), start);
}

double McmcChain::coordinate_log_weight(std::int64_t l) {
  if (auto it = cache_.find(l); it != cache_.end()) return it->second;
  const double dl = double(l), up = double(n_ + 1) + dl;
  double v = 0.0;
  for (Complex a : {p_.z - dl, p_.zp - dl, p_.w + up, p_.wp + up}) {
    if (is_nonpositive_integer(a)) {
      v = kNegInf;
      break;
    }
    v -= log_gamma(a).log_modulus();
  }
  cache_.emplace(l, v);
  return v;
}

void McmcChain::step(Rng& rng) {
  ++proposals_;
  const auto i = std::min(std::size_t(uniform01(rng) * double(n_)), n_ - 1);
  const std::int64_t d = uniform01(rng) < 0.5 ? 1 : -1;
  const std::int64_t v = state_[i] + d;
  if (i > 0 && v > state_[i - 1]) return;
  if (i + 1 < n_ && v < state_[i + 1]) return;
  const auto shift = std::int64_t(i + 1);
  const std::int64_t l_old = state_[i] - shift, l_new = v - shift;
  const double w_new = coordinate_log_weight(l_new);
  if (w_new == kNegInf) return;
  double delta = w_new - coordinate_log_weight(l_old);
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == i) continue;
    const std::int64_t lj = state_[j] - std::int64_t(j + 1);
    delta += 2.0 * (std::log(double(std::llabs(l_new - lj))) - std::log(double(std::llabs(l_old - lj))));
  }
  if (std::log(uniform01(rng)) < delta) {
    state_[i] = v;
    ++accepted_;
  }
}

void McmcChain::advance(Rng& rng, std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) step(rng);
}

double McmcChain::acceptance_rate() const {
  return proposals_ == 0 ? 0.0 : double(accepted_) / double(proposals_);
}

TableSampler::TableSampler(const MeasureTable& table) {
  if (table.size() == 0) throw DomainError("TableSampler: empty table");
  double acc = 0.0;
  for (const auto& [la, lw] : table.log_masses()) {
    acc += std::exp(lw);
    atoms_.push_back(la);
    cdf_.push_back(acc);
  }
}

const Signature& TableSampler::draw(Rng& rng) const {
  const double u = uniform01(rng) * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = std::min(std::size_t(it - cdf_.begin()), atoms_.size() - 1);
  return atoms_[idx];
}

Signature sample_signature(std::size_t n, const ZwParams& p, SampleMethod method, Rng& rng) {
  if (method == SampleMethod::enumerate) {
    const ZwTable t = build_table(n, p);
    return TableSampler(t.table).draw(rng);
  }
  McmcChain chain(n, p);
  chain.advance(rng, 1000 * n);
  return chain.state();
}

std::vector<Signature> sample_signatures(std::size_t n, const ZwParams& p, std::size_t count,
                                         std::uint64_t seed, const SamplerOptions& options) {
  if (options.block_size == 0) throw DomainError("sample_signatures: block size must be positive");
  std::vector<Signature> out(count);
  if (count == 0) return out;

  std::optional<TableSampler> table_sampler;
  if (options.method == SampleMethod::enumerate) {
    TableOptions topt;
    topt.mass_tolerance = options.mass_tolerance;
    table_sampler.emplace(build_table(n, p, topt).table);
  } else {
    auto adm = admissibility(p);
    if (!adm.admissible) throw NotAdmissibleError("parameters not admissible: " + adm.reason);
  }
  const std::size_t burn_in = options.burn_in ? options.burn_in : 1000 * n;
  const std::size_t thinning = options.thinning ? options.thinning : n;
  const std::size_t blocks = (count + options.block_size - 1) / options.block_size;

  auto run_block = [&](std::size_t b) {
    Rng rng = derive_stream(seed, b);
    const std::size_t begin = b * options.block_size;
    const std::size_t end = std::min(count, begin + options.block_size);
    if (table_sampler) {
      for (std::size_t k = begin; k < end; ++k) out[k] = table_sampler->draw(rng);
      return;
    }
    McmcChain chain(n, p);
    chain.advance(rng, burn_in);
    for (std::size_t k = begin; k < end; ++k) {
      chain.advance(rng, thinning);
      out[k] = chain.state();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, unsigned(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double EmpiricalMeasure::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

EmpiricalMeasure pushforward(std::size_t n, const ZwParams& p, std::size_t n_samples,
                             std::uint64_t seed, const SamplerOptions& options) {
  if (n_samples == 0) throw DomainError("pushforward: n_samples = 0 gives an empty measure");
  const auto draws = sample_signatures(n, p, n_samples, seed, options);
  std::map<Signature, std::size_t> counts;
  for (const auto& la : draws) ++counts[la];
  EmpiricalMeasure m;
  m.level = n;
  m.sample_count = n_samples;
  for (const auto& [la, c] : counts) {
    m.points.push_back(embed(la, n));
    m.weights.push_back(double(c) / double(n_samples));
  }
  return m;
}

EmpiricalMeasure pushforward_exact(const MeasureTable& table) {
  if (table.size() == 0) throw DomainError("pushforward_exact: empty table");
  EmpiricalMeasure m;
  m.level = table.level();
  const double total = table.log_total_captured();
  for (const auto& [la, lw] : table.log_masses()) {
    m.points.push_back(embed(la, table.level()));
    m.weights.push_back(std::exp(lw - total));
  }
  return m;
}

void write_jsonl(std::ostream& os, const EmpiricalMeasure& m) {
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    const auto& p = m.points[i];
    Json j = {{"level", p.source_level},
              {"signature", to_json(p.source_signature)},
              {"weight", m.weights[i]},
              {"omega", to_json(p.omega)}};
    os << j.dump() << '\n';
  }
}

void write_csv(std::ostream& os, const EmpiricalMeasure& m, std::size_t k) {
  const char* families[] = {"a%zup", "b%zup", "a%zum", "b%zum"};
  bool first = true;
  for (const char* f : families) {
    for (std::size_t i = 1; i <= k; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, f, i);
      os << (first ? "" : ",") << buf;
      first = false;
    }
  }
  os << ",cp,cm,weight\n";
  char num[40];
  for (std::size_t r = 0; r < m.points.size(); ++r) {
    const OmegaPoint& w = m.points[r].omega;
    for (const auto* v : {&w.alpha_plus, &w.beta_plus, &w.alpha_minus, &w.beta_minus}) {
      for (std::size_t i = 0; i < k; ++i) {
        std::snprintf(num, sizeof num, "%.17g", i < v->size() ? (*v)[i] : 0.0);
        os << num << ',';
      }
    }
    std::snprintf(num, sizeof num, "%.17g,", w.delta_plus);
    os << num;
    std::snprintf(num, sizeof num, "%.17g,", w.delta_minus);
    os << num;
    std::snprintf(num, sizeof num, "%.17g", m.weights[r]);
    os << num << '\n';
  }
}

std::vector<std::string> panel_names() {
  return {"one",     "alpha1+", "alpha2+", "beta1+", "beta2+", "alpha1-", "alpha2-", "beta1-",
          "beta2-",  "delta+",  "delta-",  "ReF(u0)", "ImF(u0)"};
}

std::vector<double> panel_values(const OmegaPoint& w) {
  auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  const Complex f = f_omega(w, std::polar(1.0, 1.0));
  return {1.0,
          at(w.alpha_plus, 0),  at(w.alpha_plus, 1),  at(w.beta_plus, 0),  at(w.beta_plus, 1),
          at(w.alpha_minus, 0), at(w.alpha_minus, 1), at(w.beta_minus, 0), at(w.beta_minus, 1),
          w.delta_plus,         w.delta_minus,        f.real(),            f.imag()};
}

ConvergenceReport convergence_diagnostics(const std::vector<EmpiricalMeasure>& seq) {
  ConvergenceReport r;
  r.functions = panel_names();
  const std::size_t nf = r.functions.size();
  for (const auto& m : seq) {
    std::vector<double> mean(nf, 0.0), second(nf, 0.0);
    const double total = m.total_weight();
    for (std::size_t i = 0; i < m.points.size(); ++i) {
      const auto v = panel_values(m.points[i].omega);
      const double w = m.weights[i] / total;
      for (std::size_t f = 0; f < nf; ++f) {
        mean[f] += w * v[f];
        second[f] += w * v[f] * v[f];
      }
    }
    std::vector<double> se(nf, 0.0);
    if (m.sample_count > 0) {
      for (std::size_t f = 0; f < nf; ++f)
        se[f] = std::sqrt(std::max(0.0, second[f] - mean[f] * mean[f]) / double(m.sample_count));
    }
    r.levels.push_back(m.level);
    r.integrals.push_back(std::move(mean));
    r.standard_errors.push_back(std::move(se));
  }
  for (std::size_t m = 0; m + 1 < r.integrals.size(); ++m) {
    std::vector<double> d(nf);
    for (std::size_t f = 0; f < nf; ++f) d[f] = r.integrals[m + 1][f] - r.integrals[m][f];
    r.differences.push_back(std::move(d));
  }
  return r;
}

}  // namespace gtzw

#include "gtzw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "gtzw/characters.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/gt_graph.hpp"
#include "gtzw/rmt.hpp"
#include "gtzw/spectral.hpp"
#include "gtzw/stats.hpp"

namespace gtzw {

namespace {

constexpr double kCoherencyTolerance = 1e-7;
constexpr double kRoundingFloor = 1e-13;

double uniform(Rng& rng, double a, double b) { return a + (b - a) * uniform01(rng); }

std::int64_t uniform_int(Rng& rng, std::int64_t a, std::int64_t b) {
  return a + std::min(std::int64_t(uniform01(rng) * double(b - a + 1)), b - a);
}

Signature random_signature(Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = uniform_int(rng, lo, hi);
  std::sort(v.begin(), v.end(), std::greater<>());
  return Signature(std::move(v));
}

Json params_json(const ZwParams& p) { return to_json(p); }

CheckResult check_dougall(const VerifyConfig& cfg) {
  CheckResult r{"dougall", true, Json::array()};
  const std::int64_t k_max = cfg.dougall_truncation;
  for (const auto& p : dougall_reference_params()) {
    Json ladder = Json::array();
    double prev = INFINITY;
    bool monotone = true;
    DougallReport last;
    for (int shift = 4; shift >= 0; --shift) {
      const std::int64_t k = std::max<std::int64_t>(1, k_max >> shift);
      last = verify_dougall(p, k);
      if (!(last.abs_error < prev) && last.abs_error > kRoundingFloor) monotone = false;
      prev = last.abs_error;
      ladder.push_back({{"K", k}, {"abs_error", last.abs_error}});
    }
    const bool ok = monotone && last.abs_error <= 1e-6;
    r.pass = r.pass && ok;
    r.details.push_back({{"params", params_json(p)},
                         {"lhs_partial", to_json(last.lhs_partial)},
                         {"rhs", to_json(last.rhs)},
                         {"abs_error", last.abs_error},
                         {"monotone", monotone},
                         {"ladder", ladder},
                         {"pass", ok}});
  }
  return r;
}

CheckResult check_normalization(const VerifyConfig&) {
  CheckResult r{"normalization", true, Json::array()};
  for (const auto& p : table_reference_params()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      TableOptions opt;
      opt.mass_tolerance = 1e-6;
      const ZwTable t = build_table(n, p, opt);
      const double c = t.table.captured();
      const bool ok = c >= 1.0 - 1e-6 && c <= 1.0 + 1e-12;
      r.pass = r.pass && ok;
      r.details.push_back({{"params", params_json(p)},
                           {"level", n},
                           {"captured", c},
                           {"defect", t.table.defect()},
                           {"box", {t.box.lower, t.box.upper}},
                           {"pass", ok}});
    }
  }
  return r;
}

CheckResult check_coherency(const VerifyConfig& cfg) {
  CheckResult r{"coherency", true, Json::array()};
  for (const auto& p : table_reference_params()) {
    for (std::size_t n = 2; n <= 3; ++n) {
      TableOptions lower_opt, upper_opt;
      if (cfg.inject_fault) upper_opt.s_n_scale = 1.0 + 1e-3;
      const ZwTable lower = build_table(n - 1, p, lower_opt);
      const ZwTable upper = build_table(n, p, upper_opt);
      const auto rep = verify_coherency(lower.table, upper.table, kCoherencyTolerance);
      const bool ok = rep.max_abs_residual <= kCoherencyTolerance &&
                      rep.max_abs_residual <= 10.0 * rep.defect_bound + kRoundingFloor;
      r.pass = r.pass && ok;
      r.details.push_back({{"params", params_json(p)},
                           {"levels", {n, n - 1}},
                           {"max_abs_residual", rep.max_abs_residual},
                           {"worst_vertex", rep.worst_vertex ? to_json(*rep.worst_vertex) : Json()},
                           {"defect_bound", rep.defect_bound},
                           {"pass", ok}});
    }
  }
  const ZwParams degenerate{0.0, 0.0, 1.0, 1.0};
  auto top = build_table_exact(2, degenerate);
  if (cfg.inject_fault) {
    for (auto& [la, v] : top) v *= Rational(1000, 1001);
  }
  const auto exact = verify_coherency_exact(build_table_exact(1, degenerate), top);
  r.pass = r.pass && exact.exact;
  r.details.push_back({{"params", params_json(degenerate)},
                       {"levels", {2, 1}},
                       {"exact", exact.exact},
                       {"max_abs_residual", exact.max_abs_residual.str()},
                       {"pass", exact.exact}});
  return r;
}

CheckResult check_degenerate(const VerifyConfig&) {
  CheckResult r{"degenerate", true, Json::object()};
  const ZwParams p{0.0, 0.0, 1.0, 1.0};
  const ZwTable t = build_table(1, p);
  const double half = std::log(0.5);
  Json entries = Json::array();
  bool ok = t.table.size() == 2;
  for (std::int64_t v : {0, -1}) {
    const double lw = t.table.log_mass(Signature{v});
    ok = ok && std::abs(lw - half) <= 1e-14;
    entries.push_back({{"signature", {v}}, {"log_mass", lw}});
  }
  const auto exact = build_table_exact(1, p);
  const bool exact_ok = exact.size() == 2 && exact.at(Signature{0}) == Rational(1, 2) &&
                        exact.at(Signature{-1}) == Rational(1, 2);
  r.pass = ok && exact_ok;
  r.details = {{"entries", entries}, {"defect", t.table.defect()}, {"exact_halves", exact_ok}};
  return r;
}

CheckResult check_fourier(const VerifyConfig& cfg) {
  CheckResult r{"fourier", true, Json::object()};
  Rng rng = derive_stream(cfg.seed, 5);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = std::size_t(uniform_int(rng, 1, 6));
    const Signature la = random_signature(rng, n, -10, 10);
    const Complex z(uniform(rng, -0.4, 2.0), uniform(rng, -1.5, 1.5));
    const Complex w(uniform(rng, -0.4, 2.0), uniform(rng, -1.5, 1.5));
    const Complex closed = fourier_coefficient(la, z, w);
    const Complex det = fourier_coefficient_det(la, z, w);
    worst = std::max(worst, std::abs(det - closed) / std::abs(closed));
  }
  r.pass = worst <= 1e-10;
  r.details = {{"instances", 100}, {"max_rel_error", worst}};
  return r;
}

CheckResult check_krattenthaler(const VerifyConfig& cfg) {
  CheckResult r{"krattenthaler", true, Json::object()};
  Rng rng = derive_stream(cfg.seed, 6);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto n = std::size_t(uniform_int(rng, 1, 6));
    std::vector<std::int64_t> x;
    while (x.size() < n) {
      const std::int64_t v = uniform_int(rng, -10, 10);
      if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
    }
    std::vector<Complex> a(n - 1), b(n - 1);
    for (auto& v : a) v = {uniform(rng, -3, 3), uniform(rng, -3, 3)};
    for (auto& v : b) v = {uniform(rng, -3, 3), uniform(rng, -3, 3)};
    const auto rep = verify_krattenthaler(x, a, b);
    worst = std::max(worst, rep.rel_error);
  }
  const bool exact_ok = verify_krattenthaler_exact({2, 0}, {1}, {3}) &&
                        verify_krattenthaler_exact({5, -1, 3, 0}, {2, -4, 1}, {7, 0, -2});
  r.pass = worst <= 1e-10 && exact_ok;
  r.details = {{"instances", 100}, {"max_rel_error", worst}, {"exact_integer_cases", exact_ok}};
  return r;
}

CheckResult check_weyl_dim(const VerifyConfig&) {
  CheckResult r{"weyl_dim", true, Json::object()};
  std::size_t count = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for_each_in_box(n, -4, 4, [&](const Signature& la) {
      ++count;
      if (BigInt(to_string(weyl_dim(la))) != count_chains(Signature{}, la)) ++mismatches;
    });
  }
  r.pass = mismatches == 0;
  r.details = {{"signatures", count}, {"mismatches", mismatches}};
  return r;
}

CheckResult check_embedding(const VerifyConfig& cfg) {
  CheckResult r{"embedding", true, Json::object()};
  Rng rng = derive_stream(cfg.seed, 7);
  std::size_t bad = 0;
  std::string first;
  for (int t = 0; t < 10000; ++t) {
    const auto n = std::size_t(uniform_int(rng, 1, 50));
    const Signature la = random_signature(rng, n, -60, 60);
    std::string msg = embed_violation_exact(la, n);
    if (msg.empty()) msg = embed(la, n).omega.violation(1e-12);
    if (!msg.empty()) {
      if (first.empty()) first = la.to_string() + ": " + msg;
      ++bad;
    }
  }
  r.pass = bad == 0;
  r.details = {{"signatures", 10000}, {"violations", bad}, {"first_violation", first}};
  return r;
}

Json estimate_json(const MeanEstimate& e, double target) {
  return {{"mean", e.mean}, {"standard_error", e.standard_error}, {"target", target}};
}

CheckResult check_rmt_projection(const VerifyConfig& cfg) {
  CheckResult r{"rmt_projection_moments", true, Json::array()};
  const std::size_t n = 4;
  Rng rng = derive_stream(cfg.seed, 8);
  std::vector<Complex> traces;
  double worst_unitarity = 0.0;
  for (std::size_t t = 0; t < cfg.rmt_samples; ++t) {
    const UnitaryMatrix v = canonical_projection(haar_unitary(n, rng));
    worst_unitarity = std::max(worst_unitarity, unitarity_residual(v.matrix()));
    traces.push_back(v.matrix().trace());
  }
  std::vector<double> re(traces.size()), im(traces.size()), ab(traces.size());
  for (int k = 1; k <= 4; ++k) {
    for (std::size_t t = 0; t < traces.size(); ++t) {
      const Complex p = std::pow(traces[t], k);
      re[t] = p.real();
      im[t] = p.imag();
    }
    const auto er = estimate_mean(re), ei = estimate_mean(im);
    const bool ok = er.within(0.0) && ei.within(0.0);
    r.pass = r.pass && ok;
    r.details.push_back({{"moment", "E[(Tr V)^" + std::to_string(k) + "]"},
                         {"re", estimate_json(er, 0.0)},
                         {"im", estimate_json(ei, 0.0)},
                         {"pass", ok}});
  }
  double fact = 1.0;
  for (int k = 1; k <= int(n - 1); ++k) {
    fact *= k;
    for (std::size_t t = 0; t < traces.size(); ++t) ab[t] = std::pow(std::norm(traces[t]), k);
    const auto e = estimate_mean(ab);
    const bool ok = e.within(fact);
    r.pass = r.pass && ok;
    r.details.push_back({{"moment", "E|Tr V|^" + std::to_string(2 * k)}, {"estimate", estimate_json(e, fact)}, {"pass", ok}});
  }
  const bool unitary_ok = worst_unitarity <= 1e-10;
  r.pass = r.pass && unitary_ok;
  r.details.push_back({{"max_unitarity_residual", worst_unitarity}, {"pass", unitary_ok}});
  return r;
}

CheckResult check_rmt_corner(const VerifyConfig& cfg) {
  CheckResult r{"rmt_corner_ks", true, Json::object()};
  const std::size_t n = 4;
  Rng rng = derive_stream(cfg.seed, 9);
  std::vector<double> radii;
  for (std::size_t t = 0; t < cfg.rmt_samples; ++t) {
    const UnitaryMatrix u = haar_unitary(n, rng);
    radii.push_back(std::abs(u.matrix()(Eigen::Index(n - 1), Eigen::Index(n - 1))));
  }
  const double d = ks_statistic(radii, [&](double x) { return 1.0 - std::pow(1.0 - x * x, double(n - 1)); });
  const double pv = ks_pvalue(d, radii.size());
  r.pass = pv > 1e-3;
  r.details = {{"level", n}, {"samples", radii.size()}, {"ks_statistic", d}, {"p_value", pv}};
  return r;
}

CheckResult check_rmt_norm(const VerifyConfig& cfg) {
  CheckResult r{"rmt_norm_identity", true, Json::array()};
  Rng rng = derive_stream(cfg.seed, 10);
  for (auto [z, w] : {std::pair{Complex(0.5, 0.0), Complex(0.0, 0.0)},
                      std::pair{Complex(0.3, 0.2), Complex(0.1, 0.0)}}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<double> v;
      for (std::size_t t = 0; t < cfg.rmt_samples; ++t) v.push_back(std::norm(f_zw(haar_unitary(n, rng), z, w)));
      const auto e = estimate_mean(v);
      const double target = zw_norm_squared(n, z, w);
      const bool ok = e.within(target);
      r.pass = r.pass && ok;
      r.details.push_back({{"z", to_json(z)}, {"w", to_json(w)}, {"level", n},
                           {"estimate", estimate_json(e, target)}, {"pass", ok}});
    }
  }
  return r;
}

GroupElement random_group_element(std::size_t m, Rng& rng) {
  return {haar_unitary(m, rng).matrix(), haar_unitary(m, rng).matrix()};
}

CheckResult check_cocycle(const VerifyConfig& cfg) {
  CheckResult r{"cocycle", true, Json::object()};
  Rng rng = derive_stream(cfg.seed, 11);
  const Complex z(0.4, 0.3), w(0.2, -0.1);
  double stab = 0.0, mult = 0.0, triv = 0.0;
  for (int t = 0; t < 100; ++t) {
    const UnitaryMatrix u = haar_unitary(5, rng);
    const GroupElement g = random_group_element(3, rng), h = random_group_element(3, rng);
    const Complex c = cocycle(u, g, z, w);
    stab = std::max(stab, std::abs(cocycle(canonical_projection(u), g, z, w) - c) / std::abs(c));
    const Complex lhs = c * cocycle(act(u, g), h, z, w);
    const Complex rhs = cocycle(u, g * h, z, w);
    mult = std::max(mult, std::abs(lhs - rhs) / std::abs(rhs));
    const CMatrix v = haar_unitary(3, rng).matrix();
    triv = std::max(triv, std::abs(cocycle(u, GroupElement{v, v}, z, w) - 1.0));
  }
  r.pass = stab <= 1e-9 && mult <= 1e-9 && triv <= 1e-9;
  r.details = {{"instances", 100},
               {"level_stability", stab},
               {"multiplier", mult},
               {"k_triviality", triv}};
  return r;
}

CheckResult check_cayley(const VerifyConfig& cfg) {
  CheckResult r{"cayley", true, Json::object()};
  Rng rng = derive_stream(cfg.seed, 12);
  double diagram = 0.0, round_trip = 0.0;
  for (int t = 0; t < 100; ++t) {
    const UnitaryMatrix u = haar_unitary(4, rng);
    const HermitianMatrix x = cayley(u);
    const CMatrix a = cayley(canonical_projection(u)).matrix();
    const CMatrix b = delete_last(x).matrix();
    diagram = std::max(diagram, (a - b).norm() / std::max(1.0, b.norm()));
    round_trip = std::max(round_trip, (inverse_cayley(x).matrix() - u.matrix()).norm());
  }
  r.pass = diagram <= 1e-9 && round_trip <= 1e-10;
  r.details = {{"instances", 100}, {"diagram_residual", diagram}, {"round_trip", round_trip}};
  return r;
}

std::vector<std::uint64_t> counts_on(const std::vector<Signature>& atoms, const std::vector<Signature>& draws) {
  std::map<Signature, std::size_t> index;
  for (std::size_t i = 0; i < atoms.size(); ++i) index.emplace(atoms[i], i);
  std::vector<std::uint64_t> c(atoms.size(), 0);
  for (const auto& d : draws) {
    auto it = index.find(d);
    if (it != index.end()) ++c[it->second];
  }
  return c;
}

CheckResult check_samplers(const VerifyConfig& cfg) {
  CheckResult r{"samplers", true, Json::array()};
  const ZwParams p = table_reference_params().front();
  SamplerOptions opt;
  opt.workers = cfg.workers;
  for (std::size_t n = 1; n <= 2; ++n) {
    const ZwTable t = build_table(n, p);
    std::vector<Signature> atoms;
    std::vector<double> probs;
    for (const auto& [la, lw] : t.table.log_masses()) {
      atoms.push_back(la);
      probs.push_back(std::exp(lw));
    }
    const auto draws = sample_signatures(n, p, cfg.sampler_draws, cfg.seed + n, opt);
    const auto res = chi_square_gof(counts_on(atoms, draws), probs);
    const bool ok = res.p_value > 1e-3;
    r.pass = r.pass && ok;
    r.details.push_back({{"test", "enumerate vs table"}, {"level", n}, {"chi_square", res.statistic},
                         {"dof", res.dof}, {"p_value", res.p_value}, {"pass", ok}});
  }
  {
    const std::size_t n = 2;
    const ZwTable t = build_table(n, p);
    SamplerOptions mc = opt;
    mc.method = SampleMethod::mcmc;
    mc.thinning = 10 * n;
    const auto draws = sample_signatures(n, p, cfg.sampler_draws, cfg.seed + 17, mc);
    // Fixed box |la_i| <= 3; everything outside is pooled into one cell.
    std::vector<Signature> atoms;
    for_each_in_box(n, -3, 3, [&](const Signature& la) { atoms.push_back(la); });
    std::vector<double> exact(atoms.size() + 1, 0.0), emp(atoms.size() + 1, 0.0);
    double inside = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      exact[i] = t.table.mass(atoms[i]);
      inside += exact[i];
    }
    exact.back() = 1.0 - inside;
    const auto counts = counts_on(atoms, draws);
    double inside_emp = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      emp[i] = double(counts[i]) / double(draws.size());
      inside_emp += emp[i];
    }
    emp.back() = 1.0 - inside_emp;
    const double tv = total_variation(exact, emp);
    const bool ok = tv <= 0.01;
    r.pass = r.pass && ok;
    r.details.push_back({{"test", "mcmc vs table"}, {"level", n}, {"thinning", mc.thinning},
                         {"total_variation", tv}, {"pass", ok}});
  }
  {
    const Signature la{2, 0, -1};
    Rng rng = derive_stream(cfg.seed, 13);
    std::vector<Signature> atoms;
    std::vector<double> probs;
    for (std::int64_t v = -1; v <= 2; ++v) {
      atoms.push_back(Signature{v});
      probs.push_back(cotransition_iterated(Signature{v}, la));
    }
    std::vector<Signature> ends;
    for (std::size_t t = 0; t < cfg.sampler_draws; ++t) ends.push_back(sample_path_down(la, rng).vertices[1]);
    const auto res = chi_square_gof(counts_on(atoms, ends), probs);
    const bool ok = res.p_value > 1e-3;
    r.pass = r.pass && ok;
    r.details.push_back({{"test", "path marginal vs iterated cotransition"}, {"top", to_json(la)},
                         {"chi_square", res.statistic}, {"dof", res.dof}, {"p_value", res.p_value},
                         {"pass", ok}});
  }
  return r;
}

using CheckFn = std::function<CheckResult(const VerifyConfig&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"dougall", check_dougall},
      {"normalization", check_normalization},
      {"coherency", check_coherency},
      {"degenerate", check_degenerate},
      {"fourier", check_fourier},
      {"krattenthaler", check_krattenthaler},
      {"weyl_dim", check_weyl_dim},
      {"embedding", check_embedding},
      {"rmt_projection_moments", check_rmt_projection},
      {"rmt_corner_ks", check_rmt_corner},
      {"rmt_norm_identity", check_rmt_norm},
      {"cocycle", check_cocycle},
      {"cayley", check_cayley},
      {"samplers", check_samplers},
  };
  return checks;
}

}  // namespace

std::vector<ZwParams> dougall_reference_params() {
  return {ZwParams::principal({0.5, 0.3}, {0.6, -0.2}), ZwParams::principal({1.0, 1.0}, {0.5, 0.5}),
          ZwParams::principal({1.0, 2.0}, {0.8, -1.0}), ZwParams::principal({1.5, -0.7}, {0.25, 0.4}),
          ZwParams::principal({0.75, 0.1}, {0.75, 0.1})};
}

std::vector<ZwParams> table_reference_params() {
  return {ZwParams::principal({2.0, 0.5}, {1.5, -0.3}), ZwParams::principal({1.5, 1.0}, {1.25, -0.5}),
          ZwParams::principal({3.0, -1.0}, {2.5, 2.0}), ZwParams{4.3, 4.6, 3.2, 3.7},
          ZwParams{0.0, 0.0, 1.0, 1.0}};
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json VerifyReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  return {{"all_pass", all_pass()}, {"checks", std::move(arr)}};
}

std::vector<std::string> verification_checks() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

VerifyReport run_verification(const VerifyConfig& config) {
  const auto names = verification_checks();
  for (const auto& o : config.only) {
    if (std::find(names.begin(), names.end(), o) == names.end())
      throw DomainError("unknown check '" + o + "'");
  }
  VerifyReport report;
  for (const auto& [name, fn] : registry()) {
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), name) == config.only.end())
      continue;
    report.checks.push_back(fn(config));
  }
  return report;
}

}  // namespace gtzw

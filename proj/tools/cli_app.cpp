#include "cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/json_io.hpp"
#include "gtzw/rmt.hpp"
#include "gtzw/spectral.hpp"
#include "gtzw/verify.hpp"
#include "gtzw/zw_measure.hpp"

#ifndef GTZW_VERSION
#define GTZW_VERSION "unknown"
#endif

namespace gtzw::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re = text.substr(0, comma);
    const double a = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(text);
    double b = 0.0;
    if (comma != std::string::npos) {
      const std::string im = text.substr(comma + 1);
      b = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(text);
    }
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse '" + text + "' as re or re,im");
  }
}

struct ParamFlags {
  std::string z = "0", zp, w = "0", wp;

  void add(CLI::App& app) {
    app.add_option("--z", z, "z as re or re,im");
    app.add_option("--zp", zp, "z' (default conj z)");
    app.add_option("--w", w, "w as re or re,im");
    app.add_option("--wp", wp, "w' (default conj w)");
  }

  ZwParams params() const {
    const Complex zz = parse_complex(z), ww = parse_complex(w);
    return {zz, zp.empty() ? std::conj(zz) : parse_complex(zp), ww, wp.empty() ? std::conj(ww) : parse_complex(wp)};
  }
};

struct Options {
  ParamFlags params;
  std::size_t level = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t samples = 1000;
  double mass_tol = 1e-8;
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
  std::string method = "enumerate";

  std::vector<std::string> only;
  std::int64_t dougall_k = 500;
  bool inject_fault = false;

  std::size_t hp_n = 3;
  std::string hp_s = "0";
  std::string hp_mode = "importance";
};

void add_common(CLI::App& app, Options& o) {
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Output file (default stdout)");
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("gtzw", sink);
  log->set_pattern("gtzw: %l: %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GTZW_LOG")) log->set_level(spdlog::level::from_str(env));
  return log;
}

Json series_json(const SeriesClass& c) { return c.to_string(); }

Json admissibility_json(const AdmissibilityReport& r) {
  return {{"z_series", series_json(r.z_class)},
          {"w_series", series_json(r.w_class)},
          {"sum_condition", r.sum_condition},
          {"degenerate_condition", r.degenerate_condition},
          {"admissible", r.admissible}};
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void write_table_csv(std::ostream& os, const MeasureTable& t) {
  for (std::size_t i = 1; i <= t.level(); ++i) os << "la" << i << ',';
  os << "mass,log_mass\n";
  for (const auto& [la, lw] : t.log_masses()) {
    for (auto v : la.entries()) os << v << ',';
    os << number(std::exp(lw)) << ',' << number(lw) << '\n';
  }
}

int cmd_tabulate(const Options& o, std::ostream& os, spdlog::logger& log) {
  const ZwParams p = o.params.params();
  const auto adm = admissibility(p);
  if (!adm.admissible) throw NotAdmissibleError(adm.reason);
  TableOptions topt;
  topt.mass_tolerance = o.mass_tol;
  const ZwTable t = build_table(o.level, p, topt);
  log.info("level {} table: {} entries, defect {:.3e}, {} doublings", o.level, t.table.size(), t.table.defect(),
           t.doublings);
  if (o.format == "csv") {
    write_table_csv(os, t.table);
    return kExitOk;
  }
  Json doc = {{"command", "tabulate"},
              {"version", GTZW_VERSION},
              {"params", to_json(p)},
              {"level", o.level},
              {"mass_tolerance", o.mass_tol},
              {"admissibility", admissibility_json(adm)},
              {"log_s_n", t.log_s_n},
              {"s_n", std::exp(t.log_s_n)},
              {"box", {{"lower", t.box.lower}, {"upper", t.box.upper}, {"finite_support", t.box.finite_support}}},
              {"doublings", t.doublings},
              {"table", to_json(t.table)}};
  if (t.box.finite_support && has_integer_params(p)) {
    Json exact = Json::array();
    for (const auto& [la, v] : build_table_exact(o.level, p)) exact.push_back({{"signature", to_json(la)}, {"mass", v.str()}});
    doc["exact"] = {{"s_n", s_n_exact(o.level, p).str()}, {"entries", exact}};
  }
  os << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& os, spdlog::logger& log) {
  VerifyConfig cfg;
  if (o.seed_given) cfg.seed = o.seed;
  cfg.only = o.only;
  cfg.dougall_truncation = o.dougall_k;
  cfg.workers = o.workers;
  cfg.inject_fault = o.inject_fault;
  if (cfg.dougall_truncation < 1) throw DomainError("--K must be positive");
  const VerifyReport report = run_verification(cfg);
  for (const auto& c : report.checks) log.info("{}: {}", c.name, c.pass ? "pass" : "FAIL");
  Json doc = report.to_json();
  doc["command"] = "verify";
  doc["version"] = GTZW_VERSION;
  doc["seed"] = cfg.seed;
  os << doc.dump(2) << '\n';
  return report.all_pass() ? kExitOk : kExitFailure;
}

SamplerOptions sampler_options(const Options& o) {
  SamplerOptions s;
  s.method = o.method == "mcmc" ? SampleMethod::mcmc : SampleMethod::enumerate;
  s.mass_tolerance = o.mass_tol;
  s.workers = o.workers;
  return s;
}

Json sampling_config(const Options& o, const ZwParams& p) {
  return {{"params", to_json(p)}, {"level", o.level},      {"seed", o.seed},
          {"samples", o.samples}, {"method", o.method},    {"mass_tolerance", o.mass_tol},
          {"workers", o.workers}};
}

/// n (1 - rho) / (1 + rho) from the lag-1 autocorrelation of |la|.
double chain_ess(const std::vector<Signature>& draws) {
  const double n = double(draws.size());
  if (draws.size() < 3) return n;
  std::vector<double> x;
  for (const auto& d : draws) x.push_back(double(d.total()));
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    c0 += (x[i] - mean) * (x[i] - mean);
    if (i + 1 < x.size()) c1 += (x[i] - mean) * (x[i + 1] - mean);
  }
  if (c0 == 0.0) return n;
  const double rho = std::clamp(c1 / c0, -0.99, 0.99);
  return std::min(n, n * (1.0 - rho) / (1.0 + rho));
}

Json signature_header(const Options& o, const ZwParams& p, const std::string& what,
                      const std::vector<Signature>& draws) {
  Json h = {{"record", "header"}, {"command", "sample " + what}, {"version", GTZW_VERSION},
            {"config", sampling_config(o, p)}};
  if (o.method == "mcmc") {
    h["ess"] = chain_ess(draws);
  } else {
    TableOptions topt;
    topt.mass_tolerance = o.mass_tol;
    h["ess"] = double(draws.size());
    h["defect"] = build_table(o.level, p, topt).table.defect();
  }
  h["ess_warning"] = h["ess"].get<double>() < 0.1 * double(draws.size());
  return h;
}

std::vector<Signature> draw_signatures(const Options& o, const ZwParams& p) {
  const auto adm = admissibility(p);
  if (!adm.admissible) throw NotAdmissibleError(adm.reason);
  if (o.level < 1) throw DomainError("--level must be at least 1");
  return sample_signatures(o.level, p, o.samples, o.seed, sampler_options(o));
}

int cmd_sample_signatures(const Options& o, std::ostream& os, spdlog::logger& log) {
  const ZwParams p = o.params.params();
  const auto draws = draw_signatures(o, p);
  const Json header = signature_header(o, p, "signatures", draws);
  if (header["ess_warning"].get<bool>()) log.warn("effective sample size {:.1f} is low", header["ess"].get<double>());
  if (o.format == "csv") {
    os << "index";
    for (std::size_t i = 1; i <= o.level; ++i) os << ",la" << i;
    os << '\n';
    for (std::size_t i = 0; i < draws.size(); ++i) {
      os << i;
      for (auto v : draws[i].entries()) os << ',' << v;
      os << '\n';
    }
    return kExitOk;
  }
  os << header.dump() << '\n';
  for (std::size_t i = 0; i < draws.size(); ++i) os << Json{{"index", i}, {"signature", to_json(draws[i])}}.dump() << '\n';
  return kExitOk;
}

int cmd_sample_embed(const Options& o, std::ostream& os, spdlog::logger& log) {
  const ZwParams p = o.params.params();
  const auto draws = draw_signatures(o, p);
  const Json header = signature_header(o, p, "embed", draws);
  if (header["ess_warning"].get<bool>()) log.warn("effective sample size {:.1f} is low", header["ess"].get<double>());
  if (o.format == "csv") {
    EmpiricalMeasure m;
    m.level = o.level;
    m.sample_count = draws.size();
    for (const auto& la : draws) {
      m.points.push_back(embed(la, o.level));
      m.weights.push_back(1.0 / double(draws.size()));
    }
    write_csv(os, m);
    return kExitOk;
  }
  os << header.dump() << '\n';
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const EmbeddedPoint e = embed(draws[i], o.level);
    e.omega.validate(1e-12);
    os << Json{{"index", i}, {"signature", to_json(draws[i])}, {"omega", to_json(e.omega)}}.dump() << '\n';
  }
  return kExitOk;
}

int cmd_sample_hua_pickrell(const Options& o, std::ostream& os, spdlog::logger& log) {
  const Complex s = parse_complex(o.hp_s);
  if (o.hp_n < 1) throw DomainError("--N must be at least 1");
  if (!(s.real() > -0.5)) throw DomainError("Hua-Pickrell measure needs Re s > -1/2");
  HuaPickrellOptions hopt;
  hopt.mode = o.hp_mode == "metropolis" ? HuaPickrellMode::metropolis : HuaPickrellMode::importance;
  hopt.workers = o.workers;
  const HuaPickrellSample sample = sample_hua_pickrell(o.hp_n, s, o.samples, o.seed, hopt);
  if (sample.ess_warning) log.warn("effective sample size {:.1f} of {} draws", sample.ess, o.samples);
  if (o.format == "csv") {
    os << "index,weight";
    for (std::size_t i = 1; i <= o.hp_n; ++i)
      for (std::size_t j = 1; j <= o.hp_n; ++j) os << ",u" << i << '_' << j << "_re,u" << i << '_' << j << "_im";
    os << '\n';
    for (std::size_t k = 0; k < sample.matrices.size(); ++k) {
      os << k << ',' << number(sample.weights[k]);
      const CMatrix& m = sample.matrices[k].matrix();
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << ',' << number(m(i, j).real()) << ',' << number(m(i, j).imag());
      os << '\n';
    }
    return kExitOk;
  }
  const Json header = {{"record", "header"},
                       {"command", "sample hua-pickrell"},
                       {"version", GTZW_VERSION},
                       {"config",
                        {{"N", o.hp_n}, {"s", to_json(s)}, {"seed", o.seed}, {"samples", o.samples},
                         {"mode", o.hp_mode}, {"workers", o.workers}}},
                       {"ess", sample.ess},
                       {"ess_warning", sample.ess_warning},
                       {"acceptance_rate", sample.acceptance_rate}};
  os << header.dump() << '\n';
  for (std::size_t k = 0; k < sample.matrices.size(); ++k)
    os << Json{{"index", k}, {"weight", sample.weights[k]}, {"matrix", matrix_to_json(sample.matrices[k].matrix())}}.dump()
       << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zw-measures on the Gelfand-Tsetlin graph and Hua-Pickrell matrices", "gtzw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GTZW_VERSION));

  auto* tab = app.add_subcommand("tabulate", "Tabulate P_N over an adaptive box");
  o.params.add(*tab);
  tab->add_option("--level", o.level, "Level N")->check(CLI::PositiveNumber);
  tab->add_option("--mass-tol", o.mass_tol, "Allowed uncaptured mass")->check(CLI::PositiveNumber);
  add_common(*tab, o);

  auto* ver = app.add_subcommand("verify", "Run the self-verification suite");
  ver->add_option("--only", o.only, "Checks to run (comma separated)")->delimiter(',');
  ver->add_option("--K", o.dougall_k, "Dougall truncation");
  ver->add_flag("--inject-fault", o.inject_fault)->group("");
  add_common(*ver, o);

  auto* smp = app.add_subcommand("sample", "Draw samples as JSON lines");
  smp->require_subcommand(1);
  auto add_signature_opts = [&](CLI::App* sub) {
    o.params.add(*sub);
    sub->add_option("--level", o.level, "Level N")->check(CLI::PositiveNumber);
    sub->add_option("-n,--samples", o.samples, "Number of draws");
    sub->add_option("--mass-tol", o.mass_tol, "Allowed uncaptured mass")->check(CLI::PositiveNumber);
    sub->add_option("--method", o.method, "Sampler")->check(CLI::IsMember({"enumerate", "mcmc"}));
    add_common(*sub, o);
  };
  auto* s_sig = smp->add_subcommand("signatures", "Signatures drawn from P_N");
  add_signature_opts(s_sig);
  auto* s_emb = smp->add_subcommand("embed", "Draws from P_N embedded into the boundary");
  add_signature_opts(s_emb);
  auto* s_hp = smp->add_subcommand("hua-pickrell", "Unitary matrices from the Hua-Pickrell measure");
  s_hp->add_option("--N", o.hp_n, "Matrix size")->check(CLI::PositiveNumber);
  s_hp->add_option("--s", o.hp_s, "s as re or re,im");
  s_hp->add_option("-n,--samples", o.samples, "Number of draws");
  s_hp->add_option("--mode", o.hp_mode, "Sampler")->check(CLI::IsMember({"importance", "metropolis"}));
  add_common(*s_hp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  o.seed_given = ver->count("--seed") > 0;
  auto log = make_logger(err);
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      log->error("cannot open {}", o.out);
      return kExitInvalid;
    }
    os = &file;
  }

  try {
    if (tab->parsed()) return cmd_tabulate(o, *os, *log);
    if (ver->parsed()) return cmd_verify(o, *os, *log);
    if (s_sig->parsed()) return cmd_sample_signatures(o, *os, *log);
    if (s_emb->parsed()) return cmd_sample_embed(o, *os, *log);
    if (s_hp->parsed()) return cmd_sample_hua_pickrell(o, *os, *log);
  } catch (const NotAdmissibleError& e) {
    log->error("parameters not admissible: {}", e.what());
    return kExitInvalid;
  } catch (const InvariantViolation& e) {
    log->error("internal invariant violated: {}", e.what());
    return kExitFailure;
  } catch (const Error& e) {
    log->error("{}", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace gtzw::cli

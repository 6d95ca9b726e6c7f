// Acceptance gate: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "gtzw/verify.hpp"

using namespace gtzw;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> checks;
  double time_limit;  // seconds, for the whole group
};

struct Outcome {
  bool pass = true;
  double seconds = 0.0;
  std::string note;
};

Outcome run_group(const Criterion& c) {
  Outcome o;
  for (const auto& name : c.checks) {
    VerifyConfig cfg;
    cfg.only = {name};
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport rep = run_verification(cfg);
    o.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : rep.checks) {
      if (!r.pass) {
        o.pass = false;
        o.note += " " + r.name + " failed: " + r.details.dump();
      }
    }
  }
  if (o.seconds > c.time_limit) {
    o.pass = false;
    o.note += " over time limit";
  }
  return o;
}

int cli_verify(std::string& out) {
  const char* argv[] = {"gtzw", "verify"};
  std::ostringstream os, err;
  const int code = cli::run(2, argv, os, err);
  out = os.str();
  return code;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Dougall identity at K=500, 5 sets", {"dougall"}, 5.0},
      {2, "normalization of P'_N against S_N, N=1..3", {"normalization"}, 30.0},
      {3, "coherency of truncated and exact tables", {"coherency"}, 1e9},
      {4, "degenerate closed case (0,0,1,1)", {"degenerate"}, 1e9},
      {5, "Fourier determinant and Krattenthaler identity", {"fourier", "krattenthaler"}, 1e9},
      {6, "Weyl dimension equals path count", {"weyl_dim"}, 1e9},
      {7, "embedding invariants", {"embedding"}, 1e9},
      {8, "RMT statistical gates", {"rmt_projection_moments", "rmt_corner_ks", "rmt_norm_identity"}, 120.0},
      {9, "cocycle identities", {"cocycle"}, 1e9},
      {10, "Cayley and projection diagram", {"cayley"}, 1e9},
      {11, "sampler correctness", {"samplers"}, 1e9},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = run_group(c);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string(" threw: ") + e.what();
    }
    all = all && o.pass;
    std::printf("[%s] %2d %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.seconds, o.note.c_str());
    std::fflush(stdout);
  }

  std::string first, second;
  const auto t0 = std::chrono::steady_clock::now();
  const int code1 = cli_verify(first);
  const int code2 = cli_verify(second);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool det = code1 == 0 && code2 == 0 && !first.empty() && first == second;
  all = all && det;
  std::printf("[%s] 12 determinism of the full verify suite (exit %d/%d, %zu bytes, %s) (%.2f s)\n",
              det ? "PASS" : "FAIL", code1, code2, first.size(), first == second ? "identical" : "different", secs);
  return all ? 0 : 1;
}

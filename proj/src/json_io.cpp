#include "gtzw/json_io.hpp"

#include "gtzw/errors.hpp"

namespace gtzw {

Json to_json(const Signature& s) {
  Json j = Json::array();
  for (auto x : s.entries()) j.push_back(x);
  return j;
}

Signature signature_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("signature must be a JSON array of integers");
  std::vector<std::int64_t> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw DomainError("signature entries must be integers");
    v.push_back(x.get<std::int64_t>());
  }
  return Signature(std::move(v));
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("complex values are a number or a [re, im] pair");
}

Json to_json(const ZwParams& p) {
  return {{"z", to_json(p.z)}, {"z_prime", to_json(p.zp)}, {"w", to_json(p.w)}, {"w_prime", to_json(p.wp)}};
}

ZwParams params_from_json(const Json& j) {
  if (!j.contains("z") || !j.contains("w")) throw DomainError("parameters need at least z and w");
  ZwParams p;
  p.z = complex_from_json(j.at("z"));
  p.w = complex_from_json(j.at("w"));
  p.zp = j.contains("z_prime") ? complex_from_json(j.at("z_prime")) : std::conj(p.z);
  p.wp = j.contains("w_prime") ? complex_from_json(j.at("w_prime")) : std::conj(p.w);
  return p;
}

Json to_json(const OmegaPoint& w) {
  return {{"alpha_plus", w.alpha_plus},   {"beta_plus", w.beta_plus},
          {"alpha_minus", w.alpha_minus}, {"beta_minus", w.beta_minus},
          {"delta_plus", w.delta_plus},   {"delta_minus", w.delta_minus}};
}

OmegaPoint omega_from_json(const Json& j) {
  OmegaPoint w;
  auto list = [&](const char* key) {
    return j.contains(key) ? j.at(key).get<std::vector<double>>() : std::vector<double>{};
  };
  w.alpha_plus = list("alpha_plus");
  w.beta_plus = list("beta_plus");
  w.alpha_minus = list("alpha_minus");
  w.beta_minus = list("beta_minus");
  w.delta_plus = j.value("delta_plus", 0.0);
  w.delta_minus = j.value("delta_minus", 0.0);
  return w;
}

Json to_json(const MeasureTable& t) {
  Json entries = Json::array();
  for (const auto& [la, lw] : t.log_masses())
    entries.push_back({{"signature", to_json(la)}, {"mass", std::exp(lw)}, {"log_mass", lw}});
  return {{"level", t.level()},
          {"captured", t.captured()},
          {"log_captured", t.log_total_captured()},
          {"target", t.target()},
          {"defect", t.defect()},
          {"entries", std::move(entries)}};
}

Json to_json(const Path& path) {
  Json j = Json::array();
  for (const auto& v : path.vertices) j.push_back(to_json(v));
  return j;
}

}  // namespace gtzw

#include "lohe/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace lohe {

using nlohmann::json;

const char* to_string(HamiltonianMode::Kind k) noexcept {
  switch (k) {
    case HamiltonianMode::Kind::Zero: return "zero";
    case HamiltonianMode::Kind::Identical: return "identical";
    case HamiltonianMode::Kind::Gaussian: return "gaussian";
  }
  return "?";
}

const char* to_string(InitMode::Kind k) noexcept { return k == InitMode::Kind::Cluster ? "cluster" : "haar"; }

StepperConfig ScenarioConfig::stepper() const {
  StepperConfig s;
  s.method = method;
  s.dt = dt;
  s.t_end = t_end;
  s.record_every = record_every;
  s.retract_every = retract_every;
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config." + path + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(prefix + key, "unknown key");
  }
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

std::uint64_t get_u64(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0) fail(path, "must be >= 0");
    return static_cast<std::uint64_t>(x);
  }
  fail(path, "expected a nonnegative integer");
}

std::size_t get_count(const json& v, const std::string& path, std::size_t min_value) {
  const std::uint64_t x = get_u64(v, path);
  if (x < min_value) fail(path, "must be >= " + std::to_string(min_value));
  return static_cast<std::size_t>(x);
}

HamiltonianMode parse_hamiltonian(const json& v) {
  const std::string path = "hamiltonian_mode";
  HamiltonianMode h;
  std::string kind;
  if (v.is_string()) {
    kind = v.get<std::string>();
  } else if (v.is_object()) {
    reject_unknown(v, {"kind", "sigma"}, path + ".");
    if (!v.contains("kind") || !v["kind"].is_string()) fail(path + ".kind", "expected a string");
    kind = v["kind"].get<std::string>();
    if (v.contains("sigma")) {
      h.sigma = get_real(v["sigma"], path + ".sigma");
      if (!(h.sigma > 0.0)) fail(path + ".sigma", "must be > 0");
    }
  } else {
    fail(path, "expected a string or an object");
  }
  if (kind == "zero") {
    h.kind = HamiltonianMode::Kind::Zero;
  } else if (kind == "identical") {
    h.kind = HamiltonianMode::Kind::Identical;
  } else if (kind == "gaussian") {
    h.kind = HamiltonianMode::Kind::Gaussian;
  } else {
    fail(path + (v.is_object() ? ".kind" : ""), "expected zero, identical or gaussian");
  }
  return h;
}

InitMode parse_init(const json& v) {
  const std::string path = "init_mode";
  InitMode m;
  if (v.is_string()) {
    const auto kind = v.get<std::string>();
    if (kind == "haar") return m;
    if (kind == "cluster") fail(path, "cluster needs an object with center_seed and radius");
    fail(path, "expected haar or cluster");
  }
  if (!v.is_object()) fail(path, "expected a string or an object");
  reject_unknown(v, {"kind", "center_seed", "radius"}, path + ".");
  if (!v.contains("kind") || !v["kind"].is_string()) fail(path + ".kind", "expected a string");
  const auto kind = v["kind"].get<std::string>();
  if (kind == "haar") {
    if (v.contains("center_seed") || v.contains("radius")) fail(path, "haar takes no parameters");
    return m;
  }
  if (kind != "cluster") fail(path + ".kind", "expected haar or cluster");
  m.kind = InitMode::Kind::Cluster;
  if (v.contains("center_seed")) m.center_seed = get_u64(v["center_seed"], path + ".center_seed");
  if (!v.contains("radius")) fail(path + ".radius", "required for cluster");
  m.radius = get_real(v["radius"], path + ".radius");
  return m;
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
  if (c.d < 1 || c.d > 64) fail("d", "must be in [1, 64]");
  if (c.n < 1) fail("n", "must be >= 1");
  if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa)) fail("kappa", "must be finite and >= 0");
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) fail("t_end", "must be > 0");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) fail("dt", "must be > 0");
  if (c.dt > c.t_end) fail("dt", "must not exceed t_end");
  if (c.record_every < 1) fail("record_every", "must be >= 1");
  if (c.retract_every < 1) fail("retract_every", "must be >= 1");
  if (!(c.hamiltonian.sigma > 0.0)) fail("hamiltonian_mode.sigma", "must be > 0");
  if (c.init.kind == InitMode::Kind::Cluster && !(c.init.radius > 0.0)) fail("init_mode.radius", "must be > 0");
  if (c.repetitions < 1) fail("repetitions", "must be >= 1");
  if (c.samples < 2) fail("samples", "must be >= 2");
  if (c.n_list.empty()) fail("n_list", "must not be empty");
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    if (c.n_list[i] < 1) fail("n_list[" + std::to_string(i) + "]", "must be >= 1");
    if (i > 0 && c.n_list[i] <= c.n_list[i - 1]) fail("n_list", "must be strictly increasing");
  }
  if (c.kappa_list.empty()) fail("kappa_list", "must not be empty");
  for (std::size_t i = 0; i < c.kappa_list.size(); ++i) {
    if (!(c.kappa_list[i] >= 0.0) || !std::isfinite(c.kappa_list[i])) {
      fail("kappa_list[" + std::to_string(i) + "]", "must be finite and >= 0");
    }
  }
  if (c.p_reference < 1) fail("p_reference", "must be >= 1");
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(doc,
                 {"d", "n", "p_reference", "kappa", "t_end", "dt", "method", "record_every", "retract_every",
                  "hamiltonian_mode", "init_mode", "seed", "repetitions", "n_list", "kappa_list", "samples"},
                 "");
  for (const char* key : {"d", "n", "kappa", "t_end", "dt"}) {
    if (!doc.contains(key)) fail(key, "required");
  }

  ScenarioConfig c;
  {
    const auto d = get_count(doc["d"], "d", 1);
    if (d > 64) fail("d", "must be in [1, 64]");
    c.d = static_cast<int>(d);
  }
  c.n = get_count(doc["n"], "n", 1);
  c.kappa = get_real(doc["kappa"], "kappa");
  c.t_end = get_real(doc["t_end"], "t_end");
  c.dt = get_real(doc["dt"], "dt");
  if (doc.contains("method")) {
    if (!doc["method"].is_string()) fail("method", "expected a string");
    const auto m = doc["method"].get<std::string>();
    if (m == "CF2") {
      c.method = Method::CF2;
    } else if (m == "LieEuler") {
      c.method = Method::LieEuler;
    } else {
      fail("method", "expected CF2 or LieEuler");
    }
  }
  if (doc.contains("record_every")) c.record_every = get_count(doc["record_every"], "record_every", 1);
  if (doc.contains("retract_every")) c.retract_every = get_count(doc["retract_every"], "retract_every", 1);
  if (doc.contains("hamiltonian_mode")) c.hamiltonian = parse_hamiltonian(doc["hamiltonian_mode"]);
  if (doc.contains("init_mode")) c.init = parse_init(doc["init_mode"]);
  if (doc.contains("seed")) c.seed = get_u64(doc["seed"], "seed");
  if (doc.contains("repetitions")) c.repetitions = get_count(doc["repetitions"], "repetitions", 1);
  if (doc.contains("samples")) c.samples = get_count(doc["samples"], "samples", 2);

  if (doc.contains("n_list")) {
    const auto& a = doc["n_list"];
    if (!a.is_array()) fail("n_list", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) c.n_list.push_back(get_count(a[i], "n_list[" + std::to_string(i) + "]", 1));
  } else {
    c.n_list = {c.n};
  }
  if (doc.contains("kappa_list")) {
    const auto& a = doc["kappa_list"];
    if (!a.is_array()) fail("kappa_list", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) c.kappa_list.push_back(get_real(a[i], "kappa_list[" + std::to_string(i) + "]"));
  } else {
    c.kappa_list = {c.kappa};
  }
  const std::size_t n_max = c.n_list.empty() ? c.n : *std::max_element(c.n_list.begin(), c.n_list.end());
  c.p_reference = doc.contains("p_reference") ? get_count(doc["p_reference"], "p_reference", 1) : 8 * n_max;
  validate_config(c);
  return c;
}

std::string serialize_config(const ScenarioConfig& c, int indent) {
  json doc = json::object();
  doc["d"] = c.d;
  doc["n"] = c.n;
  doc["p_reference"] = c.p_reference;
  doc["kappa"] = c.kappa;
  doc["t_end"] = c.t_end;
  doc["dt"] = c.dt;
  doc["method"] = to_string(c.method);
  doc["record_every"] = c.record_every;
  doc["retract_every"] = c.retract_every;
  doc["hamiltonian_mode"] = {{"kind", to_string(c.hamiltonian.kind)}, {"sigma", c.hamiltonian.sigma}};
  if (c.init.kind == InitMode::Kind::Cluster) {
    doc["init_mode"] = {{"kind", "cluster"}, {"center_seed", c.init.center_seed}, {"radius", c.init.radius}};
  } else {
    doc["init_mode"] = {{"kind", "haar"}};
  }
  doc["seed"] = c.seed;
  doc["repetitions"] = c.repetitions;
  doc["n_list"] = c.n_list;
  doc["kappa_list"] = c.kappa_list;
  doc["samples"] = c.samples;
  return doc.dump(indent);
}

}  // namespace lohe

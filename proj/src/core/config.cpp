// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ftddvs {

using nlohmann::json;

RunConfig preset(const std::string& name) {
  RunConfig cfg;
  cfg.problem = name;
  if (name == "heat") {
    cfg.nx = cfg.ny = 50;
    cfg.tau = 5e-4;
    cfg.omega_max = 20.0;
    cfg.n_omega = 20;
    cfg.n_s = cfg.n_f = 4;
    cfg.n_gamma = 1;
    cfg.n_i = 4;
  } else if (name == "rd1") {
    cfg.nx = cfg.ny = 20;
    cfg.tau = 5e-4;
    cfg.omega_max = 15.0;
    cfg.n_omega = 15;
    cfg.n_s = cfg.n_f = 4;
    cfg.n_gamma = 3;
    cfg.n_i = 2;
  } else if (name == "rd2") {
    cfg.nx = cfg.ny = 20;
    cfg.tau = 1e-3;
    cfg.omega_max = 15.0;
    cfg.n_omega = 15;
    cfg.n_s = cfg.n_f = 4;
    cfg.n_gamma = 4;
    cfg.n_i = 4;
  } else {
    throw std::invalid_argument("preset: unknown preset '" + name + "'");
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: " + what);
  };
  require(cfg.nx >= 2 && cfg.ny >= 2, "mesh.nx and mesh.ny must be >= 2");
  require(cfg.nx % 2 == 0, "mesh.nx must be even (interface alignment)");
  require(cfg.tau > 0.0, "time.tau must be positive");
  require(cfg.omega_max > 0.0, "freq.omega_max must be positive");
  require(cfg.n_omega >= 2, "freq.n_omega must be >= 2");
  require(cfg.train_samples >= 1, "train.samples must be >= 1");
  require(cfg.tol_x > 0 && cfg.tol_f > 0 && cfg.tol_interface > 0 &&
              cfg.tol_subdomain > 0,
          "tolerances must be positive");
  require(cfg.n_s >= 1 && cfg.n_f >= 1 && cfg.n_gamma >= 1 && cfg.n_i >= 1,
          "term caps must be >= 1");
  require(cfg.eval_samples >= 1, "eval.samples must be >= 1");
}

namespace {

json to_json_obj(const RunConfig& c) {
  return json{
      {"problem", c.problem},
      {"mesh", {{"nx", c.nx}, {"ny", c.ny}}},
      {"time", {{"tau", c.tau}}},
      {"freq", {{"omega_max", c.omega_max}, {"n_omega", c.n_omega}}},
      {"train",
       {{"samples", c.train_samples}, {"seed", c.train_seed}}},
      {"tol",
       {{"x", c.tol_x},
        {"f", c.tol_f},
        {"interface", c.tol_interface},
        {"subdomain", c.tol_subdomain}}},
      {"caps",
       {{"n_s", c.n_s}, {"n_f", c.n_f}, {"n_gamma", c.n_gamma}, {"n_i", c.n_i}}},
      {"eval", {{"samples", c.eval_samples}, {"seed", c.eval_seed}}},
      {"out_dir", c.out_dir},
  };
}

RunConfig from_json_obj(const json& j) {
  RunConfig c;
  if (j.contains("problem")) c.problem = j["problem"].get<std::string>();
  if (j.contains("mesh")) {
    c.nx = j["mesh"].value("nx", c.nx);
    c.ny = j["mesh"].value("ny", c.ny);
  }
  if (j.contains("time")) c.tau = j["time"].value("tau", c.tau);
  if (j.contains("freq")) {
    c.omega_max = j["freq"].value("omega_max", c.omega_max);
    c.n_omega = j["freq"].value("n_omega", c.n_omega);
  }
  if (j.contains("train")) {
    c.train_samples = j["train"].value("samples", c.train_samples);
    c.train_seed = j["train"].value("seed", c.train_seed);
  }
  if (j.contains("tol")) {
    c.tol_x = j["tol"].value("x", c.tol_x);
    c.tol_f = j["tol"].value("f", c.tol_f);
    c.tol_interface = j["tol"].value("interface", c.tol_interface);
    c.tol_subdomain = j["tol"].value("subdomain", c.tol_subdomain);
  }
  if (j.contains("caps")) {
    c.n_s = j["caps"].value("n_s", c.n_s);
    c.n_f = j["caps"].value("n_f", c.n_f);
    c.n_gamma = j["caps"].value("n_gamma", c.n_gamma);
    c.n_i = j["caps"].value("n_i", c.n_i);
  }
  if (j.contains("eval")) {
    c.eval_samples = j["eval"].value("samples", c.eval_samples);
    c.eval_seed = j["eval"].value("seed", c.eval_seed);
  }
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  return c;
}

}  // namespace

void set_field(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto as_int = [&] { return std::stoll(value); };
  auto as_double = [&] { return std::stod(value); };
  if (key == "problem") cfg.problem = value;
  else if (key == "mesh.nx") cfg.nx = static_cast<int>(as_int());
  else if (key == "mesh.ny") cfg.ny = static_cast<int>(as_int());
  else if (key == "time.tau") cfg.tau = as_double();
  else if (key == "freq.omega_max") cfg.omega_max = as_double();
  else if (key == "freq.n_omega") cfg.n_omega = static_cast<int>(as_int());
  else if (key == "train.samples") cfg.train_samples = static_cast<int>(as_int());
  else if (key == "train.seed") cfg.train_seed = static_cast<std::uint64_t>(as_int());
  else if (key == "tol.x") cfg.tol_x = as_double();
  else if (key == "tol.f") cfg.tol_f = as_double();
  else if (key == "tol.interface") cfg.tol_interface = as_double();
  else if (key == "tol.subdomain") cfg.tol_subdomain = as_double();
  else if (key == "caps.n_s") cfg.n_s = static_cast<int>(as_int());
  else if (key == "caps.n_f") cfg.n_f = static_cast<int>(as_int());
  else if (key == "caps.n_gamma") cfg.n_gamma = static_cast<int>(as_int());
  else if (key == "caps.n_i") cfg.n_i = static_cast<int>(as_int());
  else if (key == "eval.samples") cfg.eval_samples = static_cast<int>(as_int());
  else if (key == "eval.seed") cfg.eval_seed = static_cast<std::uint64_t>(as_int());
  else if (key == "out_dir") cfg.out_dir = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

std::string get_field(const RunConfig& cfg, const std::string& key) {
  const json j = to_json_obj(cfg);
  json cur = j;
  std::istringstream parts(key);
  std::string part;
  while (std::getline(parts, part, '.')) {
    if (!cur.contains(part))
      throw std::invalid_argument("config: unknown key '" + key + "'");
    cur = cur[part];
  }
  return cur.is_string() ? cur.get<std::string>() : cur.dump();
}

std::string config_to_json(const RunConfig& cfg) {
  return to_json_obj(cfg).dump(2);
}

RunConfig config_from_json(const std::string& text) {
  return from_json_obj(json::parse(text));
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_hash(const RunConfig& cfg) {
  // FNV-1a over the canonical serialization, excluding the output directory.
  RunConfig keyed = cfg;
  keyed.out_dir.clear();
  const std::string text = config_to_json(keyed);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

}  // namespace ftddvs

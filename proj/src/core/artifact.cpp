// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/artifact.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ftddvs {

using nlohmann::json;

namespace {

json mat_to_json(const Mat& m) {
  json v = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return json{{"r", m.rows()}, {"c", m.cols()}, {"v", std::move(v)}};
}

Mat mat_from_json(const json& j) {
  const int r = j.at("r"), c = j.at("c");
  Mat m(r, c);
  const auto& v = j.at("v");
  int k = 0;
  for (int i = 0; i < r; ++i)
    for (int jj = 0; jj < c; ++jj) m(i, jj) = v.at(k++).get<double>();
  return m;
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vec vec_from_json(const json& j) {
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j.at(i).get<double>();
  return v;
}

json coeff_to_json(const CoeffDesc& d) {
  json out{{"k", int(d.kind)}};
  if (d.kind == CoeffDesc::Kind::Const) out["v"] = d.value;
  if (d.kind != CoeffDesc::Kind::Const && d.kind != CoeffDesc::Kind::Product &&
      d.kind != CoeffDesc::Kind::Gamma)
    out["i"] = d.index;
  if (d.kind == CoeffDesc::Kind::ZetaRe || d.kind == CoeffDesc::Kind::ZetaIm)
    out["s"] = d.slot;
  if (d.kind == CoeffDesc::Kind::Product) {
    json f = json::array();
    for (const auto& x : d.factors) f.push_back(coeff_to_json(x));
    out["f"] = std::move(f);
  }
  return out;
}

CoeffDesc coeff_from_json(const json& j) {
  CoeffDesc d;
  d.kind = CoeffDesc::Kind(j.at("k").get<int>());
  d.value = j.value("v", 0.0);
  d.index = j.value("i", 0);
  d.slot = j.value("s", 0);
  if (j.contains("f"))
    for (const auto& f : j.at("f")) d.factors.push_back(coeff_from_json(f));
  return d;
}

json param_to_json(const ParameterPoint& mu) {
  return json{{"omega", mu.omega}, {"xi", vec_to_json(mu.xi)}};
}

ParameterPoint param_from_json(const json& j) {
  return {j.at("omega").get<double>(), vec_from_json(j.at("xi"))};
}

json sep_to_json(const SeparatedSolution& s) {
  json modes_re = json::array(), modes_im = json::array();
  for (const auto& m : s.modes_re) modes_re.push_back(mat_to_json(m));
  for (const auto& m : s.modes_im) modes_im.push_back(mat_to_json(m));
  json a_rr = json::array(), a_ii = json::array(), m_ri = json::array(),
       m_ir = json::array();
  for (const auto& m : s.reduced.a_rr) a_rr.push_back(mat_to_json(m));
  for (const auto& m : s.reduced.a_ii) a_ii.push_back(mat_to_json(m));
  for (const auto& m : s.reduced.m_ri) m_ri.push_back(mat_to_json(m));
  for (const auto& m : s.reduced.m_ir) m_ir.push_back(mat_to_json(m));
  json alphas = json::array(), gammas = json::array(), rhs = json::array();
  for (const auto& d : s.alpha_descs) alphas.push_back(coeff_to_json(d));
  for (const auto& d : s.gamma_descs) gammas.push_back(coeff_to_json(d));
  for (const auto& t : s.rhs_descs) {
    json e{{"re", t.has_re}, {"im", t.has_im}};
    if (t.has_re) e["cre"] = coeff_to_json(t.coeff_re);
    if (t.has_im) e["cim"] = coeff_to_json(t.coeff_im);
    rhs.push_back(std::move(e));
  }
  json chosen = json::array();
  for (const auto& mu : s.chosen_samples) chosen.push_back(param_to_json(mu));
  return json{{"n", s.n},
              {"r", s.r},
              {"modes_re", std::move(modes_re)},
              {"modes_im", std::move(modes_im)},
              {"has_re", std::vector<int>(s.has_re.begin(), s.has_re.end())},
              {"has_im", std::vector<int>(s.has_im.begin(), s.has_im.end())},
              {"a_rr", std::move(a_rr)},
              {"a_ii", std::move(a_ii)},
              {"m_ri", std::move(m_ri)},
              {"m_ir", std::move(m_ir)},
              {"f_re", mat_to_json(s.reduced.f_re)},
              {"f_im", mat_to_json(s.reduced.f_im)},
              {"alphas", std::move(alphas)},
              {"gammas", std::move(gammas)},
              {"rhs", std::move(rhs)},
              {"chosen", std::move(chosen)},
              {"residual_history", s.residual_history},
              {"rhs_scale", s.rhs_scale},
              {"seed", s.rng_seed},
              {"cap_warning", s.cap_warning},
              {"exhausted", s.exhausted}};
}

SeparatedSolution sep_from_json(const json& j) {
  SeparatedSolution s;
  s.n = j.at("n");
  s.r = j.at("r");
  for (const auto& m : j.at("modes_re")) s.modes_re.push_back(mat_from_json(m));
  for (const auto& m : j.at("modes_im")) s.modes_im.push_back(mat_from_json(m));
  for (int v : j.at("has_re").get<std::vector<int>>()) s.has_re.push_back(char(v));
  for (int v : j.at("has_im").get<std::vector<int>>()) s.has_im.push_back(char(v));
  for (const auto& m : j.at("a_rr")) s.reduced.a_rr.push_back(mat_from_json(m));
  for (const auto& m : j.at("a_ii")) s.reduced.a_ii.push_back(mat_from_json(m));
  for (const auto& m : j.at("m_ri")) s.reduced.m_ri.push_back(mat_from_json(m));
  for (const auto& m : j.at("m_ir")) s.reduced.m_ir.push_back(mat_from_json(m));
  s.reduced.f_re = mat_from_json(j.at("f_re"));
  s.reduced.f_im = mat_from_json(j.at("f_im"));
  for (const auto& d : j.at("alphas")) s.alpha_descs.push_back(coeff_from_json(d));
  for (const auto& d : j.at("gammas")) s.gamma_descs.push_back(coeff_from_json(d));
  for (const auto& e : j.at("rhs")) {
    RhsTerm t;
    t.has_re = e.at("re").get<bool>();
    t.has_im = e.at("im").get<bool>();
    if (t.has_re) t.coeff_re = coeff_from_json(e.at("cre"));
    if (t.has_im) t.coeff_im = coeff_from_json(e.at("cim"));
    s.rhs_descs.push_back(std::move(t));
  }
  for (const auto& mu : j.at("chosen")) s.chosen_samples.push_back(param_from_json(mu));
  s.residual_history = j.at("residual_history").get<std::vector<double>>();
  s.rhs_scale = j.at("rhs_scale");
  s.rng_seed = j.at("seed");
  s.cap_warning = j.at("cap_warning");
  s.exhausted = j.at("exhausted");
  return s;
}

json schur_to_json(const AffineSchur& s) {
  json re = json::array(), im = json::array();
  for (const auto& t : s.real_terms)
    re.push_back(json{{"c", coeff_to_json(t.coeff)}, {"m", mat_to_json(t.mat)}});
  for (const auto& t : s.imag_terms)
    im.push_back(json{{"c", coeff_to_json(t.coeff)}, {"m", mat_to_json(t.mat)}});
  return json{{"n_g", s.n_g}, {"re", std::move(re)}, {"im", std::move(im)}};
}

AffineSchur schur_from_json(const json& j) {
  AffineSchur s;
  s.n_g = j.at("n_g");
  for (const auto& t : j.at("re"))
    s.real_terms.push_back({coeff_from_json(t.at("c")), mat_from_json(t.at("m"))});
  for (const auto& t : j.at("im"))
    s.imag_terms.push_back({coeff_from_json(t.at("c")), mat_from_json(t.at("m"))});
  return s;
}

json load_to_json(const AffineLoad& f) {
  json re = json::array(), im = json::array();
  for (const auto& t : f.real_terms)
    re.push_back(json{{"c", coeff_to_json(t.coeff)}, {"v", vec_to_json(t.vec)}});
  for (const auto& t : f.imag_terms)
    im.push_back(json{{"c", coeff_to_json(t.coeff)}, {"v", vec_to_json(t.vec)}});
  return json{{"n_g", f.n_g}, {"re", std::move(re)}, {"im", std::move(im)}};
}

AffineLoad load_from_json(const json& j) {
  AffineLoad f;
  f.n_g = j.at("n_g");
  for (const auto& t : j.at("re"))
    f.real_terms.push_back({coeff_from_json(t.at("c")), vec_from_json(t.at("v"))});
  for (const auto& t : j.at("im"))
    f.imag_terms.push_back({coeff_from_json(t.at("c")), vec_from_json(t.at("v"))});
  return f;
}

}  // namespace

void OfflineModel::rebuild_discretization() {
  problem = make_problem(config.problem);
  mesh = build_mesh(config.nx, config.ny);
  partition = build_partition(mesh);
  assembly = assemble(problem, mesh);
  blocks[0] = extract_blocks(assembly, partition, 0);
  blocks[1] = extract_blocks(assembly, partition, 1);
  grid = lgl_grid(config.n_omega, config.omega_max);
}

CoeffContext OfflineModel::context() const {
  CoeffContext ctx;
  ctx.problem = &problem;
  ctx.bind(Slot::X1, &x[0].sep);
  ctx.bind(Slot::X2, &x[1].sep);
  ctx.bind(Slot::F1, &yload[0]);
  ctx.bind(Slot::F2, &yload[1]);
  ctx.bind(Slot::Interface, &interface_rom.sep);
  ctx.bind(Slot::Sub1, &sub_rom[0].sep);
  ctx.bind(Slot::Sub2, &sub_rom[1].sep);
  return ctx;
}

CVec OfflineModel::evaluate_hat(const CoeffContext& ctx,
                                const ParameterPoint& mu) const {
  return evaluate_full_field(interface_rom, sub_rom[0], sub_rom[1], partition,
                             ctx, mu, assembly.n_free());
}

void save_model(const OfflineModel& model, const std::string& path) {
  json j{{"format", "ftddvs-offline-model"},
         {"version", OfflineModel::kFormatVersion},
         {"config", json::parse(config_to_json(model.config))},
         {"x1", sep_to_json(model.x[0].sep)},
         {"x2", sep_to_json(model.x[1].sep)},
         {"y1", sep_to_json(model.yload[0])},
         {"y2", sep_to_json(model.yload[1])},
         {"schur", schur_to_json(model.schur)},
         {"load", load_to_json(model.load)},
         {"interface", sep_to_json(model.interface_rom.sep)},
         {"sub1", sep_to_json(model.sub_rom[0].sep)},
         {"sub2", sep_to_json(model.sub_rom[1].sep)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot write '" + path + "'");
  out << j.dump();
  out << "\n";
}

OfflineModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str());
  if (j.value("format", "") != "ftddvs-offline-model")
    throw std::runtime_error("load_model: '" + path + "' is not a model file");
  if (j.at("version").get<int>() != OfflineModel::kFormatVersion)
    throw std::runtime_error("load_model: unsupported format version");

  OfflineModel m;
  m.config = config_from_json(j.at("config").dump());
  m.rebuild_discretization();
  m.x[0].subdomain = 0;
  m.x[1].subdomain = 1;
  m.x[0].sep = sep_from_json(j.at("x1"));
  m.x[1].sep = sep_from_json(j.at("x2"));
  m.yload[0] = sep_from_json(j.at("y1"));
  m.yload[1] = sep_from_json(j.at("y2"));
  m.schur = schur_from_json(j.at("schur"));
  m.load = load_from_json(j.at("load"));
  m.interface_rom.sep = sep_from_json(j.at("interface"));
  m.sub_rom[0].subdomain = 0;
  m.sub_rom[1].subdomain = 1;
  m.sub_rom[0].sep = sep_from_json(j.at("sub1"));
  m.sub_rom[1].sep = sep_from_json(j.at("sub2"));
  return m;
}

}  // namespace ftddvs

#include "mirror/report.hpp"

#include "mirror/amodel.hpp"
#include "mirror/ccc.hpp"
#include "mirror/verify.hpp"

#include <fstream>

#include "json.hpp"

namespace mirror {

namespace {

using ojson = nlohmann::ordered_json;

ojson cplx(cd z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

ojson rat(const Q& q) { return to_string(q); }

ojson qvec(const QVec& v) {
  ojson out = ojson::array();
  for (const auto& x : v) out.push_back(rat(x));
  return out;
}

ojson qmat(const QMat& m) {
  ojson out = ojson::array();
  for (const auto& row : m) out.push_back(qvec(row));
  return out;
}

ojson dvec(const std::vector<double>& v) {
  ojson out = ojson::array();
  for (double x : v) out.push_back(x);
  return out;
}

ojson charge_json(const CentralCharge& c) {
  return ojson{{"value", cplx(c.value)}, {"abs_error", c.abs_error}, {"method", c.method},
               {"terms_used", c.terms_used}};
}

ojson index_sets(const std::vector<IndexSet>& sets) {
  ojson out = ojson::array();
  for (const auto& s : sets) out.push_back(index_set_string(s));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

ComplexParams params_of(const InstanceConfig& cfg) { return {cfg.t, cfg.z}; }

double quad_tol(const InstanceConfig& cfg, const RunFlags& flags) { return flags.tol.value_or(cfg.quad_tol); }

ojson analyze(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags) {
  ojson rep;
  rep["n"] = git.n;
  rep["r"] = git.r;
  rep["r_prime"] = git.r_prime;
  rep["k"] = git.k();
  ojson charge = ojson::array();
  for (const auto& row : git.charge) charge.push_back(row);
  rep["charge"] = charge;
  rep["complete"] = fan.complete;
  rep["eta"] = qvec(git.eta);
  rep["splitting"] = qmat(git.ell);
  std::vector<IndexSet> anti(fan.anticones.begin(), fan.anticones.end());
  rep["anticones"] = index_sets(anti);
  rep["maximal_cones"] = index_sets(fan.maximal_cones);
  ojson box = ojson::array();
  for (const auto& v : box_elements(fan, git)) {
    box.push_back({{"v", v.v}, {"age", rat(v.age)}, {"host_cone", index_set_string(v.host_cone)},
                   {"sector_dim", star_fan(v, fan, git).dim}});
  }
  rep["box"] = box;
  auto pos = check_positivity(git, fan);
  rep["positivity"] = {{"fano", pos.fano}, {"rho_hat", qvec(pos.rho_hat)}};
  rep["h"] = qvec(h_of({cfg.twist}, git));
  ojson curves = ojson::array();
  for (const auto& c : enumerate_Keff(git, fan, flags.degree_bound.value_or(Q(2))))
    curves.push_back({{"beta", qvec(c.beta)}, {"degree", rat(c.degree)}, {"sector", c.sector.v}});
  rep["curve_classes"] = curves;
  return rep;
}

ojson za(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags) {
  auto res = zA_series(git, fan, {cfg.twist}, params_of(cfg),
                       {.tol = cfg.series_tol, .degree_bound = flags.degree_bound.value_or(cfg.degree_bound)});
  ojson rep;
  rep["charge"] = charge_json(res.charge);
  if (git.k() == 1) rep["residue"] = charge_json(zA_residue_k1(git, {cfg.twist}, params_of(cfg), cfg.series_tol));
  ojson terms = ojson::array();
  for (const auto& t : res.table)
    terms.push_back({{"beta", qvec(t.beta)}, {"sector", t.sector}, {"degree", rat(t.degree)},
                     {"value", cplx(t.value)}, {"running_sum", cplx(t.running_sum)}});
  rep["terms"] = terms;
  return rep;
}

ojson zb_mb(const InstanceConfig& cfg, const GitPresentation& git, const RunFlags& flags) {
  std::vector<double> im_t;
  for (const auto& x : cfg.t) im_t.push_back(x.imag());
  auto gc = grade_restriction_check(git, {cfg.twist}, im_t);
  ojson rep;
  rep["grade_restriction"] = {{"pass", gc.pass}, {"margin", gc.margin}};
  auto spec = make_mb_spec(git, {cfg.twist}, params_of(cfg), quad_tol(cfg, flags));
  rep["contour"] = {{"gamma", dvec(spec.gamma)}, {"truncation_radius", dvec(spec.truncation_radius)}};
  auto val = mb_inverse_fourier(git, {cfg.twist}, params_of(cfg), spec);
  rep["charge"] = charge_json(val);
  rep["za_normalized"] = cplx(val.value * std::pow(cd(0, 2 * kPi), -git.n));
  return rep;
}

ojson zb_osc(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags) {
  std::vector<double> im_t;
  for (const auto& x : cfg.t) im_t.push_back(x.imag());
  auto chart = default_chart(git, {cfg.twist}, im_t);
  auto val = fiber_oscillatory(git, fan, {cfg.twist}, params_of(cfg), chart, quad_tol(cfg, flags));
  ojson rep;
  rep["chart"] = {{"cprime", dvec(chart.cprime)}};
  rep["charge"] = charge_json(val);
  rep["za_normalized"] = cplx(val.value * std::pow(cd(0, 2 * kPi), -git.n));
  if (git.n == 1) rep["syz_cycle"] = charge_json(zB_over_syz_n1(git, fan, {cfg.twist}, params_of(cfg), quad_tol(cfg, flags)));
  return rep;
}

ojson cycle(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags) {
  QVec a;
  ojson rep;
  if (cfg.cycle_a) {
    a = *cfg.cycle_a;
    rep["source"] = "config";
  } else {
    auto syz = syz_cycle({cfg.twist}, cfg.t, git, fan);
    a = syz.a;
    for (size_t i = 0; i < a.size(); ++i) a[i] += syz.perturbation[i];
    rep["source"] = "syz";
    rep["perturbation"] = qvec(syz.perturbation);
  }
  auto arr = arrangement_cells(a, git, fan);
  auto cell = ccc_cycle(arr, git, fan, CycleBackend::CellFormula);
  auto def = ccc_cycle(arr, git, fan, CycleBackend::Definition);
  rep["a"] = qvec(a);
  rep["degenerate"] = arr.degenerate;
  ojson cells = ojson::array();
  for (const auto& c : arr.cells) {
    ojson verts = ojson::array(), rays = ojson::array();
    for (const auto& v : c.vertices) verts.push_back(qvec(v));
    for (const auto& v : c.rays) rays.push_back(qvec(v));
    cells.push_back({{"I", index_set_string(c.I)}, {"J", index_set_string(c.J)}, {"dim", c.dim},
                     {"cone", c.cone}, {"multiplicity", c.multiplicity}, {"vertices", verts}, {"rays", rays}});
  }
  rep["cells"] = cells;
  rep["backends_agree"] = cell.coefficients == def.coefficients;
  rep["boundary_zero"] = boundary(cell, git).zero;
  if (!flags.csv_path.empty()) write_file(flags.csv_path, cells_csv(arr));
  if (!flags.svg_path.empty()) write_file(flags.svg_path, cells_svg(arr, 2.0));
  return rep;
}

ojson rho(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags) {
  RhoMap map(git, fan);
  const auto seed = flags.seed.value_or(cfg.seed);
  ojson rep;
  rep["fano_polytope"] = true;
  ojson bary = ojson::array();
  for (const auto& [cone, m] : map.dual_barycenters())
    bary.push_back({{"cone", index_set_string(cone)}, {"dual_barycenter", qvec(m)}});
  rep["dual_barycenters"] = bary;
  ojson images = ojson::array();
  for (int i = 0; i < git.r_prime; ++i) {
    QVec n = git.ray(i);
    for (auto& x : n) x = -x;
    images.push_back({{"n", qvec(n)}, {"rho", qvec(map(n))}, {"in_U", map.in_U({i}, map(n))}});
  }
  rep["images"] = images;
  rep["seed"] = seed;
  rep["samples_per_cone"] = 100;
  rep["containment"] = rho_containment_check(map, git, fan, 100, static_cast<unsigned>(seed));
  return rep;
}

ojson verify(const InstanceConfig& cfg, const GitPresentation& git, const StackyFan& fan, const RunFlags& flags,
             bool& pass) {
  auto kappa = calibrate_kappa();
  VerifyOptions opts;
  opts.quad_tol = quad_tol(cfg, flags);
  opts.series_tol = cfg.series_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.degree_bound = flags.degree_bound.value_or(cfg.degree_bound);
  auto rep = verify_main_theorem(git, fan, {cfg.twist}, params_of(cfg), kappa, opts);
  ojson out;
  out["kappa"] = {{"value", cplx(kappa.value)}, {"label", kappa.label}, {"residual", kappa.residual}};
  ojson values;
  values["za_series"] = charge_json(rep.za);
  if (rep.mb) values["mellin_barnes"] = charge_json(*rep.mb);
  if (rep.fiber) values["oscillatory"] = charge_json(*rep.fiber);
  if (rep.syz) values["syz_cycle"] = charge_json(*rep.syz);
  out["values"] = values;
  ojson comps = ojson::array();
  for (const auto& c : rep.comparisons)
    comps.push_back({{"lhs", c.lhs}, {"rhs", c.rhs}, {"lhs_value", cplx(c.lhs_value)},
                     {"rhs_value", cplx(c.rhs_value)}, {"relative_residual", c.residual},
                     {"tolerance", c.tolerance}, {"pass", c.pass}});
  out["comparisons"] = comps;
  out["verdict"] = rep.pass ? "PASS" : "FAIL";
  pass = rep.pass;
  return out;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotGenerating:
    case ErrorCode::RankDeficient:
    case ErrorCode::EmptyAnticones:
    case ErrorCode::StabilityOnWall:
    case ErrorCode::NotSimplicial:
    case ErrorCode::UnboundedEnumeration:
    case ErrorCode::KNotOne:
    case ErrorCode::NotACone:
    case ErrorCode::NotFanoPolytope:
    case ErrorCode::InvalidInput:
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::DomainError:
      return 2;
    default:
      return 1;
  }
}

std::string error_report(const MirrorError& e) {
  std::string what = e.what();
  ojson rep{{"status", "error"},
            {"error", {{"code", error_name(e.code())}, {"message", what.substr(what.find(": ") + 2)}}}};
  return rep.dump(2) + "\n";
}

RunResult run_subcommand(const std::string& name, const InstanceConfig& cfg, const RunFlags& flags) {
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), name) == std::end(kSubcommands))
    return {2, error_report(MirrorError(ErrorCode::InvalidInput, "unknown subcommand " + name))};
  try {
    auto git = make_git(cfg.git_input());
    auto fan = build_fan(git);
    ojson rep{{"subcommand", name}, {"instance", cfg.name}, {"status", "ok"}};
    if (name != "analyze" && !fan.complete) fail(ErrorCode::InvalidInput, "fan is not complete");
    bool pass = true;
    ojson body;
    if (name == "analyze")
      body = analyze(cfg, git, fan, flags);
    else if (name == "za")
      body = za(cfg, git, fan, flags);
    else if (name == "zb-mb")
      body = zb_mb(cfg, git, flags);
    else if (name == "zb-osc")
      body = zb_osc(cfg, git, fan, flags);
    else if (name == "cycle")
      body = cycle(cfg, git, fan, flags);
    else if (name == "rho")
      body = rho(cfg, git, fan, flags);
    else
      body = verify(cfg, git, fan, flags, pass);
    for (auto& [key, value] : body.items()) rep[key] = value;
    return {pass ? 0 : 1, rep.dump(2) + "\n"};
  } catch (const MirrorError& e) {
    return {exit_code_for(e.code()), error_report(e)};
  }
}

}  // namespace mirror

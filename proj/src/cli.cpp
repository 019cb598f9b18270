#include "uqhyp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "uqhyp/errors.hpp"

namespace uqhyp {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed,
                std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back(where + " must be an object");
    return;
  }
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) errors.push_back("unknown key '" + where + "." + k + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where,
          std::vector<std::string>& errors) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    errors.push_back(where + "." + key + " has the wrong type");
  }
}

std::string line_info(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<std::string> component_names(const ConservationLaw& law) {
  if (law.m == 3) return {"rho", "m", "E"};
  return {"u"};
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw IoError("cannot write " + p.string());
  return f;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, bool full_scale) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error at " + line_info(text, e.byte) + ": " + e.what());
  }
  std::vector<std::string> errors;
  check_keys(j, "config",
             {"case", "schemes", "solver", "limiters", "sweep", "diagnostics", "burgers",
              "output_dir"},
             errors);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("case")) throw ConfigError("config: missing required key 'case'");
  ExperimentConfig cfg;
  try {
    cfg.case_id = case_from_string(j.at("case").get<std::string>());
  } catch (const json::exception&) {
    throw ConfigError("config.case must be a string");
  }
  cfg.solver = default_config(cfg.case_id, full_scale);

  if (j.contains("schemes")) {
    cfg.schemes.clear();
    cfg.schemes_explicit = true;
    if (!j["schemes"].is_array()) {
      errors.push_back("config.schemes must be an array");
    } else {
      for (const auto& s : j["schemes"]) {
        try {
          cfg.schemes.push_back(scheme_from_string(s.get<std::string>()));
        } catch (const std::exception& e) {
          errors.push_back(std::string("config.schemes: ") + e.what());
        }
      }
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "solver", {"n_x", "k_xi", "k_d", "n_xi", "cfl", "t_end", "rk_order", "q_d", "xi_rule"},
               errors);
    if (s.is_object()) {
      read(s, "n_x", cfg.solver.n_x, "solver", errors);
      read(s, "k_xi", cfg.solver.k_xi, "solver", errors);
      read(s, "k_d", cfg.solver.k_d, "solver", errors);
      read(s, "n_xi", cfg.solver.n_xi, "solver", errors);
      read(s, "cfl", cfg.solver.cfl, "solver", errors);
      read(s, "t_end", cfg.solver.t_end, "solver", errors);
      read(s, "rk_order", cfg.solver.rk_order, "solver", errors);
      read(s, "q_d", cfg.solver.q_d, "solver", errors);
      if (s.contains("xi_rule")) {
        const json& r = s["xi_rule"];
        if (r == "gauss") cfg.solver.xi_rule = XiRule::gauss;
        else if (r == "lobatto_reduced") cfg.solver.xi_rule = XiRule::lobatto_reduced;
        else errors.push_back("solver.xi_rule must be 'gauss' or 'lobatto_reduced'");
      }
      if (!s.contains("cfl")) cfg.solver.cfl = case_default_cfl(cfg.case_id, cfg.solver.k_d);
    }
  }
  if (j.contains("limiters")) {
    const json& l = j["limiters"];
    check_keys(l, "limiters", {"slope", "hyperbolicity", "tvbm_M", "admissibility_eps"}, errors);
    if (l.is_object()) {
      read(l, "slope", cfg.solver.limiters.enable_slope, "limiters", errors);
      read(l, "hyperbolicity", cfg.solver.limiters.enable_hyperbolicity, "limiters", errors);
      read(l, "tvbm_M", cfg.solver.limiters.tvbm_M, "limiters", errors);
      read(l, "admissibility_eps", cfg.solver.limiters.admissibility_eps, "limiters", errors);
    }
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, "sweep", {"parameter", "values"}, errors);
    if (s.is_object()) {
      Sweep sw;
      read(s, "parameter", sw.parameter, "sweep", errors);
      read(s, "values", sw.values, "sweep", errors);
      if (sw.parameter != "n_x" && sw.parameter != "n_xi")
        errors.push_back("sweep.parameter must be 'n_x' or 'n_xi'");
      if (sw.values.size() < 2) errors.push_back("sweep.values needs at least two entries");
      for (std::size_t k = 1; k < sw.values.size(); ++k)
        if (sw.values[k] <= sw.values[k - 1])
          errors.push_back("sweep.values must be strictly increasing");
      for (int v : sw.values)
        if (v < 1) errors.push_back("sweep.values must be positive");
      cfg.sweep = sw;
    }
  }
  if (j.contains("diagnostics")) {
    const json& d = j["diagnostics"];
    check_keys(d, "diagnostics",
               {"q_xi", "exact_nodes_per_element", "reference_refine", "reference_tv_x_nodes",
                "reference_tv_xi_nodes", "reference_nodes_per_element", "component"},
               errors);
    if (d.is_object()) {
      DiagnosticsConfig& dc = cfg.diagnostics;
      read(d, "q_xi", dc.q_xi, "diagnostics", errors);
      read(d, "exact_nodes_per_element", dc.exact_nodes_per_element, "diagnostics", errors);
      read(d, "reference_refine", dc.reference_refine, "diagnostics", errors);
      read(d, "reference_tv_x_nodes", dc.reference_tv_x_nodes, "diagnostics", errors);
      read(d, "reference_tv_xi_nodes", dc.reference_tv_xi_nodes, "diagnostics", errors);
      read(d, "reference_nodes_per_element", dc.reference_nodes_per_element, "diagnostics", errors);
      read(d, "component", dc.component, "diagnostics", errors);
    }
  }
  if (j.contains("burgers")) {
    const json& b = j["burgers"];
    check_keys(b, "burgers", {"c1", "c2"}, errors);
    if (b.is_object()) {
      read(b, "c1", cfg.burgers.c1, "burgers", errors);
      read(b, "c2", cfg.burgers.c2, "burgers", errors);
    }
    if (cfg.burgers.c1 == 0.0 || cfg.burgers.c2 == 0.0)
      errors.push_back("burgers.c1 and burgers.c2 must be non-zero");
  }
  read(j, "output_dir", cfg.output_dir, "config", errors);

  const SolverConfig& s = cfg.solver;
  if (s.n_x < 3) errors.push_back("solver.n_x must be at least 3");
  if (s.n_xi < 1) errors.push_back("solver.n_xi must be at least 1");
  if (s.k_xi < 0 || s.k_xi > 10) errors.push_back("solver.k_xi must lie in [0, 10]");
  if (s.k_d != 0 && s.k_d != 2) errors.push_back("solver.k_d must be 0 or 2");
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) errors.push_back("solver.cfl must lie in (0, 1]");
  if (!(s.t_end >= 0.0)) errors.push_back("solver.t_end must be non-negative");
  if (s.rk_order < 0 || s.rk_order > 3) errors.push_back("solver.rk_order must be 0, 1, 2 or 3");
  if (s.q_d < 2) errors.push_back("solver.q_d must be at least 2");
  if (cfg.case_id == CaseId::burgers_exact && s.t_end >= 1.0)
    errors.push_back("burgers_exact requires t_end < 1");
  const DiagnosticsConfig& dc = cfg.diagnostics;
  if (dc.q_xi < 2 || dc.reference_tv_xi_nodes < 2)
    errors.push_back("diagnostics: xi node counts must be at least 2");
  if (dc.reference_refine < 1 || dc.reference_tv_x_nodes < 1 ||
      dc.reference_nodes_per_element < 1 || dc.exact_nodes_per_element < 1)
    errors.push_back("diagnostics: node counts and refinement must be positive");
  const int m = (cfg.case_id == CaseId::euler_manufactured || cfg.case_id == CaseId::euler_sod) ? 3 : 1;
  if (dc.component < 0 || dc.component >= m) errors.push_back("diagnostics.component out of range");

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool full_scale) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), full_scale);
}

ReferenceData build_reference(const CaseSpec& cs, const DiagnosticsConfig& dc) {
  ReferenceData ref;
  const Problem& p = cs.problem;
  const MultiElementBasis basis(p.domain, cs.config.n_xi, cs.config.k_xi, cs.config.xi_rule);
  const int je = reference_element(basis);
  const int n = p.mesh.n_cells, m = p.law.m;
  const double t = cs.config.t_end;
  if (cs.exact) {
    ref.exact = cs.exact;
    const QuadratureRule xr = quadrature(QuadKind::gauss_legendre, 5, 0.0, 1.0);
    const CellSampler s = exact_sampler(cs.exact, t, p.mesh, xr, m);
    ref.moments = sampled_moments(s, n, m, basis, dc.exact_nodes_per_element);
    ref.tv_x = tv_x(s, n, m, quadrature(QuadKind::gauss_legendre, dc.q_xi, basis.left(je), basis.right(je)),
                    dc.component);
    ref.tv_xi = tv_xi(s, n, m, p.mesh.dx(), linspace(basis.left(je), basis.right(je), dc.q_xi),
                      dc.component);
    return ref;
  }
  const QuadratureRule tv_rule = quadrature(QuadKind::gauss_legendre, dc.reference_tv_x_nodes,
                                            basis.left(je), basis.right(je));
  const std::vector<double> tv_nodes =
      linspace(basis.left(je), basis.right(je), dc.reference_tv_xi_nodes);
  std::vector<double> xi(tv_rule.nodes);
  xi.insert(xi.end(), tv_nodes.begin(), tv_nodes.end());
  for (int j = 0; j < basis.n_elements(); ++j) {
    const QuadratureRule r = quadrature(QuadKind::gauss_legendre, dc.reference_nodes_per_element,
                                        basis.left(j), basis.right(j));
    xi.insert(xi.end(), r.nodes.begin(), r.nodes.end());
  }
  ref.sampled = reference_solution(p, cs.config.k_d, cs.config.cfl, t, xi, dc.reference_refine);
  const CellSampler s = ref.sampled->sampler();
  ref.moments = sampled_moments(s, n, m, basis, dc.reference_nodes_per_element);
  ref.tv_x = tv_x(s, n, m, tv_rule, dc.component);
  ref.tv_xi = tv_xi(s, n, m, p.mesh.dx(), tv_nodes, dc.component);
  return ref;
}

RunReport analyze(const CaseSpec& cs, const Solver& solver, const RunResult& result,
                  const ReferenceData& ref, const DiagnosticsConfig& dc) {
  RunReport rep;
  const MultiElementBasis& basis = solver.basis();
  const Mesh& mesh = cs.problem.mesh;
  const int n = mesh.n_cells, m = cs.problem.law.m;
  const int je = reference_element(basis);
  const MomentProfile mp = field_moments(result.field, basis);
  std::tie(rep.l1_mean, rep.l1_var) = l1_error(mp, ref.moments, mesh.dx(), dc.component);
  const CellSampler s = field_sampler(result.field, basis);
  const QuadratureRule rule =
      quadrature(QuadKind::gauss_legendre, dc.q_xi, basis.left(je), basis.right(je));
  const std::vector<double> nodes = linspace(basis.left(je), basis.right(je), dc.q_xi);
  for (int c = 0; c < m; ++c) {
    rep.tv_x.push_back(tv_x(s, n, m, rule, c));
    rep.tv_xi.push_back(tv_xi(s, n, m, mesh.dx(), nodes, c));
  }
  rep.tv_x_reference = ref.tv_x;
  rep.tv_xi_reference = ref.tv_xi;
  rep.percentage_above_tv_x = percentage_above(rep.tv_x[dc.component], ref.tv_x);
  rep.limiter_stats = result.stats;
  rep.steps = result.steps;
  return rep;
}

namespace {

struct SingleRun {
  RunReport report;
  RunResult result;
};

// The solve runs before the reference is built so that a failing run aborts early.
SingleRun run_one(const CaseSpec& cs, std::optional<ReferenceData>& ref,
                  const DiagnosticsConfig& dc, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  const Solver solver(cs.problem, cs.config);
  SingleRun out;
  out.result = solver.run();
  const double solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ref) ref = build_reference(cs, dc);
  out.report = analyze(cs, solver, out.result, *ref, dc);
  out.report.wall_time = solve_time;
  if (!quiet)
    std::cerr << to_string(cs.id) << " " << to_string(cs.config.scheme) << " n_x=" << cs.config.n_x
              << " n_xi=" << cs.config.n_xi << " steps=" << out.result.steps
              << " l1_mean=" << out.report.l1_mean << " (" << solve_time << " s)\n";
  return out;
}

json report_json(const CaseSpec& cs, const RunReport& r, const DiagnosticsConfig& dc) {
  json j;
  j["case"] = to_string(cs.id);
  j["scheme"] = to_string(cs.config.scheme);
  j["n_x"] = cs.config.n_x;
  j["n_xi"] = cs.config.n_xi;
  j["k_xi"] = cs.config.k_xi;
  j["k_d"] = cs.config.k_d;
  j["t_end"] = cs.config.t_end;
  j["steps"] = r.steps;
  j["component"] = dc.component;
  j["l1_mean"] = r.l1_mean;
  j["l1_var"] = r.l1_var;
  j["tv_x"] = r.tv_x[dc.component];
  j["tv_xi"] = r.tv_xi[dc.component];
  j["tv_x_components"] = r.tv_x;
  j["tv_xi_components"] = r.tv_xi;
  j["tv_x_reference"] = r.tv_x_reference;
  j["tv_xi_reference"] = r.tv_xi_reference;
  j["percentage_above_tv_x"] = r.percentage_above_tv_x;
  j["tvbm_M"] = cs.config.limiters.tvbm_M;
  const LimiterStats& s = r.limiter_stats;
  j["limiter_stats"] = {{"troubled", s.troubled},
                        {"hyperbolicity_active", s.hyperbolicity_active},
                        {"trace_fallbacks", s.trace_fallbacks},
                        {"theta_max", s.theta_max},
                        {"theta_histogram", s.theta_histogram}};
  return j;
}

void write_json(const std::filesystem::path& p, const json& j) {
  auto f = open_out(p);
  f << j.dump(2) << "\n";
  if (!f) throw IoError("failed writing " + p.string());
}

void write_field(const std::filesystem::path& p, const GpcField& u) {
  auto f = open_out(p);
  f << "k,i,j,component,value\n";
  for (int k = 0; k < u.n_modes; ++k)
    for (int i = 0; i < u.n_x; ++i)
      for (int j = 0; j < u.n_elem; ++j)
        for (int c = 0; c < u.m; ++c)
          f << k << ',' << i << ',' << j << ',' << c << ',' << fmt(u(k, i, j, c)) << '\n';
  if (!f) throw IoError("failed writing " + p.string());
}

void write_moments(const std::filesystem::path& p, const MomentProfile& mp, const Mesh& mesh,
                   const std::vector<std::string>& names) {
  auto f = open_out(p);
  f << "x";
  for (const auto& nm : names) f << ",mean_" << nm << ",var_" << nm;
  f << '\n';
  for (int i = 0; i < mp.n_x; ++i) {
    f << fmt(mesh.center(i));
    for (int c = 0; c < mp.m; ++c)
      f << ',' << fmt(mp.mean[i * mp.m + c]) << ',' << fmt(mp.var[i * mp.m + c]);
    f << '\n';
  }
  if (!f) throw IoError("failed writing " + p.string());
}

// Point values on an x-xi grid for heatmaps and fixed-xi line plots.
void write_samples(const std::filesystem::path& p, const GpcField& u,
                   const MultiElementBasis& basis, const Mesh& mesh,
                   const std::vector<std::string>& names, int per_element = 8) {
  auto f = open_out(p);
  f << "x,xi";
  for (const auto& nm : names) f << ',' << nm;
  f << '\n';
  const CellSampler s = field_sampler(u, basis);
  std::vector<double> v(u.m);
  for (int j = 0; j < basis.n_elements(); ++j)
    for (int q = 0; q < per_element; ++q) {
      const double xi = basis.left(j) + (q + 0.5) / per_element * basis.element_width();
      for (int i = 0; i < u.n_x; ++i) {
        s(i, xi, v.data());
        f << fmt(mesh.center(i)) << ',' << fmt(xi);
        for (double x : v) f << ',' << fmt(x);
        f << '\n';
      }
    }
  if (!f) throw IoError("failed writing " + p.string());
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

}  // namespace

CaseSpec spec_for(const ExperimentConfig& cfg, Scheme scheme, int n_x, int n_xi) {
  SolverConfig sc = cfg.solver;
  sc.scheme = scheme;
  sc.n_x = n_x;
  sc.n_xi = n_xi;
  return make_case(cfg.case_id, sc, cfg.burgers);
}

int cmd_run(const ExperimentConfig& cfg, const CommandOptions& opt) {
  const auto dir = prepare_dir(cfg.output_dir);
  std::optional<ReferenceData> ref;
  json timing;
  for (Scheme sch : cfg.schemes) {
    const CaseSpec cs = spec_for(cfg, sch, cfg.solver.n_x, cfg.solver.n_xi);
    const SingleRun r = run_one(cs, ref, cfg.diagnostics, opt.quiet);
    const std::string stem = to_string(cfg.case_id) + "_" + to_string(sch);
    const Solver solver(cs.problem, cs.config);
    write_field(dir / (stem + "_field.csv"), r.result.field);
    write_moments(dir / (stem + "_moments.csv"), field_moments(r.result.field, solver.basis()),
                  cs.problem.mesh, component_names(cs.problem.law));
    write_samples(dir / (stem + "_samples.csv"), r.result.field, solver.basis(), cs.problem.mesh,
                  component_names(cs.problem.law));
    write_json(dir / (stem + "_report.json"), report_json(cs, r.report, cfg.diagnostics));
    timing[to_string(sch)] = r.report.wall_time;
  }
  // wall times are kept apart so that the other outputs are reproducible
  write_json(dir / (to_string(cfg.case_id) + "_timing.json"), timing);
  return 0;
}

int cmd_convergence(const ExperimentConfig& cfg, const CommandOptions& opt) {
  if (!cfg.sweep) throw ConfigError("convergence requires a sweep with at least two entries");
  const Sweep& sw = *cfg.sweep;
  const auto dir = prepare_dir(cfg.output_dir);
  for (Scheme sch : cfg.schemes) {
    const int n = static_cast<int>(sw.values.size());
    std::vector<double> l1m(n), l1v(n), res(n);
    parallel_for(n, [&](int k) {
      const int nx = sw.parameter == "n_x" ? sw.values[k] : cfg.solver.n_x;
      const int nxi = sw.parameter == "n_xi" ? sw.values[k] : cfg.solver.n_xi;
      const CaseSpec cs = spec_for(cfg, sch, nx, nxi);
      std::optional<ReferenceData> ref;
      const SingleRun r = run_one(cs, ref, cfg.diagnostics, opt.quiet);
      l1m[k] = r.report.l1_mean;
      l1v[k] = r.report.l1_var;
      res[k] = sw.values[k];
    });
    auto orders = [&](const std::vector<double>& e) {
      std::vector<std::string> out(n);
      for (int k = 1; k < n; ++k) {
        if (e[k] > 0.0 && e[k - 1] > 0.0)
          out[k] = fmt(eoc({e[k - 1], e[k]}, {res[k - 1], res[k]})[0]);
      }
      return out;
    };
    const auto om = orders(l1m), ov = orders(l1v);
    const auto p = dir / (to_string(cfg.case_id) + "_" + to_string(sch) + "_convergence.csv");
    auto f = open_out(p);
    f << "resolution,l1_mean,eoc_mean,l1_var,eoc_var\n";
    for (int k = 0; k < n; ++k)
      f << sw.values[k] << ',' << fmt(l1m[k]) << ',' << om[k] << ',' << fmt(l1v[k]) << ','
        << ov[k] << '\n';
    if (!f) throw IoError("failed writing " + p.string());
    if (!opt.quiet) {
      bool positive = true;
      for (double e : l1m) positive = positive && e > 0.0;
      if (positive)
        std::cerr << to_string(sch) << ": fitted order of l1_mean " << fitted_order(l1m, res)
                  << "\n";
    }
  }
  return 0;
}

int cmd_tvstudy(const ExperimentConfig& config, const CommandOptions& opt) {
  ExperimentConfig cfg = config;
  if (!cfg.schemes_explicit) cfg.schemes = {Scheme::sg, Scheme::wenosg, Scheme::weno2d};
  const auto dir = prepare_dir(cfg.output_dir);
  std::vector<int> nxis{cfg.solver.n_xi};
  if (cfg.sweep) {
    if (cfg.sweep->parameter != "n_xi") throw ConfigError("tvstudy sweeps only n_xi");
    nxis = cfg.sweep->values;
  }
  const auto p = dir / (to_string(cfg.case_id) + "_tvstudy.csv");
  auto f = open_out(p);
  f << "scheme,N_Xi,l1,tv_x,tv_xi,pct_above\n";
  if (cfg.schemes.empty()) return 0;
  for (int nxi : nxis) {
    const CaseSpec base = spec_for(cfg, cfg.schemes.front(), cfg.solver.n_x, nxi);
    std::optional<ReferenceData> ref = build_reference(base, cfg.diagnostics);
    f << "reference," << nxi << ",," << fmt(ref->tv_x) << ',' << fmt(ref->tv_xi) << ",\n";
    for (Scheme sch : cfg.schemes) {
      const CaseSpec cs = spec_for(cfg, sch, cfg.solver.n_x, nxi);
      const SingleRun r = run_one(cs, ref, cfg.diagnostics, opt.quiet);
      const int c = cfg.diagnostics.component;
      f << to_string(sch) << ',' << nxi << ',' << fmt(r.report.l1_mean) << ','
        << fmt(r.report.tv_x[c]) << ',' << fmt(r.report.tv_xi[c]) << ','
        << fmt(r.report.percentage_above_tv_x) << '\n';
    }
  }
  if (!f) throw IoError("failed writing " + p.string());
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Uncertainty quantification for hyperbolic conservation laws"};
  app.require_subcommand(1);
  std::string config_path, output;
  bool full_scale = false, quiet = false;
  std::vector<std::string> schemes;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--output", output, "output directory (overrides the config)");
    sub->add_flag("--full-scale", full_scale, "use the large grids (N_x = 2000)");
    sub->add_option("--scheme", schemes, "scheme to run (sg, wenosg, weno2d); repeatable");
    sub->add_flag("--quiet", quiet, "suppress progress output");
  };
  CLI::App* run = app.add_subcommand("run", "single run per scheme");
  CLI::App* conv = app.add_subcommand("convergence", "resolution sweep with eoc table");
  CLI::App* tv = app.add_subcommand("tvstudy", "total variation comparison of the schemes");
  for (CLI::App* s : {run, conv, tv}) add_common(s);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    ExperimentConfig cfg = load_config(config_path, full_scale);
    if (!output.empty()) cfg.output_dir = output;
    if (!schemes.empty()) {
      cfg.schemes.clear();
      cfg.schemes_explicit = true;
      for (const auto& s : schemes) cfg.schemes.push_back(scheme_from_string(s));
    }
    const CommandOptions opt{quiet};
    if (run->parsed()) return cmd_run(cfg, opt);
    if (conv->parsed()) return cmd_convergence(cfg, opt);
    return cmd_tvstudy(cfg, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnrecoverableState& e) {
    std::cerr << "unrecoverable state: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace uqhyp

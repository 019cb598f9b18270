#include "uqhyp/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqhyp/errors.hpp"

namespace uqhyp {

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::advection_riemann: return "advection_riemann";
    case CaseId::burgers_exact: return "burgers_exact";
    case CaseId::burgers_sine: return "burgers_sine";
    case CaseId::euler_manufactured: return "euler_manufactured";
    case CaseId::euler_sod: return "euler_sod";
  }
  return "?";
}

CaseId case_from_string(const std::string& s) {
  for (CaseId id : {CaseId::advection_riemann, CaseId::burgers_exact, CaseId::burgers_sine,
                    CaseId::euler_manufactured, CaseId::euler_sod})
    if (to_string(id) == s) return id;
  throw ConfigError("unknown case '" + s + "'");
}

SolverConfig default_config(CaseId id, bool full_scale) {
  SolverConfig c;
  c.k_xi = 2;
  c.k_d = 2;
  c.limiters.tvbm_M = -1.0;  // from the initial data
  c.cfl = case_default_cfl(id, c.k_d);
  switch (id) {
    case CaseId::advection_riemann:
      c.n_x = full_scale ? 2000 : 400;
      c.n_xi = 3;
      c.t_end = 0.5;
      break;
    case CaseId::burgers_exact:
      c.n_x = 8;
      c.n_xi = 1;
      c.t_end = 0.2;
      break;
    case CaseId::burgers_sine:
      c.n_x = full_scale ? 2000 : 400;
      c.n_xi = 10;
      c.t_end = 0.4;
      break;
    case CaseId::euler_manufactured:
      c.n_x = 200;
      c.k_xi = 1;
      c.n_xi = 1;
      c.t_end = 0.5;
      // with a single element every element is a boundary element and the
      // minmod indicator would flag all smooth data
      c.limiters.enable_slope = false;
      break;
    case CaseId::euler_sod:
      c.n_x = full_scale ? 2000 : 400;
      c.n_xi = 3;
      c.t_end = 0.1;
      c.limiters.enable_hyperbolicity = true;
      // reduced Lobatto rule; with the exact Gauss rule the scheme collocates
      // at the nodes and stays admissible unaided
      c.xi_rule = XiRule::lobatto_reduced;
      break;
  }
  return c;
}

double case_default_cfl(CaseId id, int k_d) {
  // The exact Burgers solution is linear in x, so the spatial operator is
  // exact and the error is pure time-stepping error; these steps give the
  // reference error levels at N_x = 8.
  if (id == CaseId::burgers_exact) return k_d == 0 ? 0.2 : 0.08;
  return 0.45;
}

namespace {

StateFn constant_state(std::vector<double> v) {
  return [v](double, double, double, double* out) { std::copy(v.begin(), v.end(), out); };
}

}  // namespace

CaseSpec make_case(CaseId id, SolverConfig config, BurgersParams burgers) {
  CaseSpec cs{id, {}, config, {}};
  Problem& p = cs.problem;
  switch (id) {
    case CaseId::advection_riemann:
      p.law = advection_model();
      p.mesh = Mesh(0.4, 2.0, config.n_x);
      p.initial = [](double, double x, double, double* out) { out[0] = advection_initial(x); };
      p.boundary.left = {BcKind::dirichlet, constant_state({1.0})};
      p.boundary.right = {BcKind::extrapolation, {}};
      cs.exact = [](double t, double x, double xi, double* out) {
        out[0] = t > 0.0 ? advection_exact_sample(t, x, xi) : advection_initial(x);
      };
      break;
    case CaseId::burgers_exact: {
      p.law = burgers_model();
      p.mesh = Mesh(0.0, 1.0, config.n_x);
      const BurgersParams b = burgers;
      cs.exact = [b](double t, double x, double xi, double* out) {
        out[0] = burgers_exact_value(t, x, xi, b.c1, b.c2);
      };
      p.initial = cs.exact;
      p.boundary.left = {BcKind::dirichlet, cs.exact};
      p.boundary.right = {BcKind::dirichlet, cs.exact};
      break;
    }
    case CaseId::burgers_sine:
      p.law = burgers_model();
      p.mesh = Mesh(0.0, 1.0, config.n_x);
      p.initial = [](double, double x, double xi, double* out) {
        out[0] = std::sin(2.0 * std::numbers::pi * (x + 0.1 * xi));
      };
      p.boundary = Boundary::periodic();
      break;
    case CaseId::euler_manufactured:
      p.law = euler_model();
      p.law.source = [](double t, double x, double xi, double* out) {
        const auto s = euler_manufactured_source(t, x, xi);
        std::copy(s.begin(), s.end(), out);
      };
      p.mesh = Mesh(0.0, 2.0, config.n_x);
      cs.exact = [](double t, double x, double xi, double* out) {
        const auto s = euler_manufactured(t, x, xi);
        std::copy(s.begin(), s.end(), out);
      };
      p.initial = cs.exact;
      p.boundary = Boundary::periodic();
      break;
    case CaseId::euler_sod:
      p.law = euler_model();
      p.mesh = Mesh(0.0, 1.0, config.n_x);
      // energy rises across the jump while density falls
      p.initial = [](double, double x, double xi, double* out) {
        const bool left = x < 0.5 + 0.05 * xi;
        out[0] = left ? 1.0 : 0.125;
        out[1] = 0.0;
        out[2] = left ? 0.25 : 2.5;
      };
      p.boundary = Boundary::extrapolation();
      break;
  }
  if (cs.config.limiters.tvbm_M < 0.0) cs.config.limiters.tvbm_M = case_tvbm_M(p);
  return cs;
}

double case_tvbm_M(const Problem& problem) {
  auto u0 = [&](double x, double xi) {
    double s[8];
    problem.initial(0.0, x, xi, s);
    return s[0];
  };
  return compute_tvbm_M(u0, problem.mesh.x_left, problem.mesh.x_right, problem.domain.xi_left,
                        problem.domain.xi_right);
}

}  // namespace uqhyp

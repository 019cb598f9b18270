//! Presets for the numerical experiments: domains, data, boundaries and
//! default solver settings.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uqhyp/solver.hpp"

namespace uqhyp {

enum class CaseId { advection_riemann, burgers_exact, burgers_sine, euler_manufactured, euler_sod };

std::string to_string(CaseId id);
CaseId case_from_string(const std::string& s);

struct BurgersParams {
  double c1 = 1.0;
  double c2 = 1.0;
};

struct CaseSpec {
  CaseId id;
  Problem problem;
  SolverConfig config;
  /// pointwise exact solution, if one is known
  StateFn exact;
};

/// Desk-scale defaults; full_scale restores the large grids.
SolverConfig default_config(CaseId id, bool full_scale = false);

/// Default CFL number of a case for the given spatial degree.
double case_default_cfl(CaseId id, int k_d);

/// Problem definition on an n_x cell mesh. The limiter's TVBM constant is
/// computed from the initial data when config.limiters.tvbm_M < 0.
CaseSpec make_case(CaseId id, SolverConfig config, BurgersParams burgers = {});

/// TVBM constant of the initial data (density for systems).
double case_tvbm_M(const Problem& problem);

}  // namespace uqhyp

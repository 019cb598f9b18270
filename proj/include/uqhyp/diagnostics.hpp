//! Error norms, total variations, convergence orders and sampled reference
//! solutions.
#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "uqhyp/solver.hpp"

namespace uqhyp {

/// Writes the x-cell mean of cell i at a fixed xi (all components).
using CellSampler = std::function<void(int i, double xi, double* out)>;

CellSampler field_sampler(const GpcField& field, const MultiElementBasis& basis);
/// Cell means of a pointwise solution by the rule x_rule (nodes in [0,1]).
CellSampler exact_sampler(const StateFn& exact, double t, const Mesh& mesh,
                          const QuadratureRule& x_rule, int m);

/// Mean and variance per cell, laid out [i][c].
struct MomentProfile {
  int n_x = 0, m = 1;
  std::vector<double> mean, var;
};

MomentProfile field_moments(const GpcField& field, const MultiElementBasis& basis);
/// Moments of sampled data by a Gauss rule with n nodes in every element.
MomentProfile sampled_moments(const CellSampler& s, int n_x, int m, const MultiElementBasis& basis,
                              int n);

/// (int |E_a - E_b| dx, int |Var_a - Var_b| dx) by cell-midpoint sums.
std::pair<double, double> l1_error(const MomentProfile& a, const MomentProfile& b, double dx,
                                   int component = 0);

/// int sum_i |u_{i+1} - u_i| f dxi over the rule xi_rule (weights sum to 1).
/// Cell values are constant per cell, so the chain of Q_D nodes per cell
/// reduces to the chain of cell values.
double tv_x(const CellSampler& s, int n_x, int m, const QuadratureRule& xi_rule,
            int component = 0);
/// int sum_rho |u(xi_rho) - u(xi_{rho-1})| dx with cell-midpoint sums in x.
double tv_xi(const CellSampler& s, int n_x, int m, double dx, const std::vector<double>& xi_nodes,
             int component = 0);

/// Element containing the centre of the random domain.
int reference_element(const MultiElementBasis& basis);

std::vector<double> linspace(double a, double b, int n);

/// order_i = log(e_{i-1}/e_i) / log(h_{i-1}/h_i) with h = 1/resolution.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions);
/// Least-squares order p of errors ~ resolution^-p.
double fitted_order(const std::vector<double>& errors, const std::vector<double>& resolutions);

/// Deterministic fine-grid solves at fixed xi, restricted to the coarse mesh
/// by averaging fine cells.
struct SampledReference {
  int n_x = 0, m = 1;
  std::map<double, std::vector<double>> samples;  // xi -> [i][c]

  CellSampler sampler() const;
};

SampledReference reference_solution(const Problem& problem, int k_d, double cfl, double t_end,
                                    const std::vector<double>& xi, int refine = 4);

/// Worker count from UQHYP_THREADS, else the hardware concurrency.
int worker_threads();

/// Runs f(0..n-1) on worker_threads() threads.
void parallel_for(int n, const std::function<void(int)>& f);

struct RunReport {
  double l1_mean = 0.0, l1_var = 0.0;
  std::vector<double> tv_x, tv_xi;  // per component
  std::vector<double> eoc;
  double tv_x_reference = 0.0;
  double tv_xi_reference = 0.0;
  double percentage_above_tv_x = 0.0;
  LimiterStats limiter_stats;
  long steps = 0;
  double wall_time = 0.0;
};

/// 100 (tv_x / tv_x_ref - 1)
double percentage_above(double tv, double tv_ref);

}  // namespace uqhyp

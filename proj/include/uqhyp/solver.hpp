//! Lax-Friedrichs finite volume semi-discretisation with CWENOZ traces and
//! SSP Runge-Kutta time stepping for the sG, WENOsG and 2-D WENO schemes.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uqhyp/fields.hpp"
#include "uqhyp/limiters.hpp"
#include "uqhyp/models.hpp"
#include "uqhyp/stochastic_basis.hpp"
#include "uqhyp/weno.hpp"

namespace uqhyp {

struct Mesh {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 3;

  Mesh() = default;
  Mesh(double a, double b, int n);
  double dx() const { return (x_right - x_left) / n_cells; }
  double center(int i) const { return x_left + (i + 0.5) * dx(); }
};

enum class Scheme { sg, wenosg, weno2d };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

enum class BcKind { periodic, extrapolation, dirichlet };

/// State function of (t, x, xi); used for initial data, Dirichlet ghost cells
/// (evaluated at ghost cell centres) and reference solutions.
using StateFn = std::function<void(double t, double x, double xi, double* out)>;

struct BoundarySide {
  BcKind kind = BcKind::extrapolation;
  StateFn value;  // dirichlet only
};

struct Boundary {
  BoundarySide left, right;
  static Boundary periodic() { return {{BcKind::periodic, {}}, {BcKind::periodic, {}}}; }
  static Boundary extrapolation() { return {}; }
};

struct SolverConfig {
  Scheme scheme = Scheme::wenosg;
  int k_xi = 2;
  int k_d = 2;
  int n_xi = 1;
  int n_x = 100;
  double cfl = 0.45;
  double t_end = 0.0;
  int rk_order = 0;  // 0 selects 3 for k_d = 2 and 1 for k_d = 0
  int q_d = 4;       // Gauss-Lobatto rule in x uses q_d + 1 nodes
  XiRule xi_rule = XiRule::gauss;
  LimiterConfig limiters;

  int effective_rk_order() const { return rk_order > 0 ? rk_order : (k_d == 0 ? 1 : 3); }
};

struct Problem {
  ConservationLaw law;
  Mesh mesh;
  RandomDomain domain;
  StateFn initial;  // evaluated at t = 0
  Boundary boundary;
};

struct LimiterStats {
  long long troubled = 0;
  long long hyperbolicity_active = 0;
  long long trace_fallbacks = 0;
  double theta_max = 0.0;
  std::vector<long long> theta_histogram = std::vector<long long>(10, 0);
};

struct RunResult {
  GpcField field;        // gPC coefficients (remapped for weno2d)
  CellMeanField means;   // x-xi cell means (weno2d only)
  double t = 0.0;
  long steps = 0;
  LimiterStats stats;
  bool all_nodes_admissible = true;
};

/// F = 1/2 (f(u-) + f(u+) - c (u+ - u-)).
void lax_friedrichs(const ConservationLaw& law, const double* um, const double* up, double xi,
                    double c, double* out);

class Solver {
 public:
  Solver(Problem problem, SolverConfig config);

  const MultiElementBasis& basis() const { return basis_; }
  const MonomialTransform& transform() const { return transform_; }
  const Problem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }
  const QuadratureRule& x_rule() const { return x_rule_; }

  GpcField initialize() const;
  CellMeanField initialize_means() const;

  /// Max wavespeed over all cells, elements, xi nodes and interface traces.
  double global_viscosity(const GpcField& u, double t) const;

  /// Pure spatial operator -(F_{i+1/2} - F_{i-1/2})/dx projected on the basis,
  /// plus the projected source. Optionally returns the viscosity constant used.
  GpcField rhs_wenosg(const GpcField& u, double t, double* c_out = nullptr) const;
  CellMeanField rhs_weno2d(const CellMeanField& u, double t, double* c_out = nullptr) const;

  /// Stage limiting of the gPC schemes (slope and hyperbolicity limiter).
  void limit(GpcField& u, LimiterStats* stats = nullptr) const;

  /// One time step of size dt from time t (stage limiting included).
  GpcField step(const GpcField& u, double t, double dt, LimiterStats* stats = nullptr) const;
  CellMeanField step(const CellMeanField& u, double t, double dt,
                     LimiterStats* stats = nullptr) const;

  RunResult run(const std::function<void(double t, long step)>& on_step = {}) const;

  /// gPC coefficients of the 2-D reconstruction (x-averaged, projected in xi).
  GpcField remap(const CellMeanField& u, double t, LimiterStats* stats = nullptr) const;

  /// Throws UnrecoverableState if a node state is inadmissible.
  void check_nodes(const GpcField& u) const;

 /// Nodal operator on rows of cell values at fixed xi. rows holds n_rows
  /// extended rows of (n_x + 4) cells x m components (interior from cell 2);
  /// ghost cells are filled here. res receives -(F_{i+1/2}-F_{i-1/2})/dx plus
  /// the cell-averaged source, laid out [row][i][c]. Returns the viscosity c.
  double nodal_rhs(std::vector<double>& rows, const std::vector<double>& row_xi, int q_per_elem,
                   double t, std::vector<double>& res, LimiterStats* stats = nullptr) const;

 private:
  void fill_ghosts(double* ext, double t, double xi) const;
  void reconstruct_2d(const CellMeanField& u, double t, std::vector<Poly2D>& polys,
                      LimiterStats* stats) const;

  Problem problem_;
  SolverConfig config_;
  MultiElementBasis basis_;
  MonomialTransform transform_;
  QuadratureRule x_rule_;
};

/// Single-sample solve at a fixed xi; returns cell means laid out [i][c].
std::vector<double> deterministic_solve(const ConservationLaw& law, const Mesh& mesh, double xi,
                                        int k_d, double cfl, double t_end,
                                        const Boundary& boundary, const StateFn& initial,
                                        int rk_order = 0);

}  // namespace uqhyp

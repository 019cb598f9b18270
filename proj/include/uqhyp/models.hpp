//! Conservation laws with a scalar random parameter and the analytic and
//! manufactured reference solutions used by the experiments.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace uqhyp {

struct ConservationLaw {
  std::string name;
  int m = 1;
  /// f(u, xi) written to out[0..m)
  std::function<void(const double* u, double xi, double* out)> flux;
  std::function<double(const double* u, double xi)> max_wavespeed;
  /// admissible with margin eps; scalar laws accept everything
  std::function<bool(const double* u, double eps)> admissible;
  /// false when every state is admissible (scalar laws)
  bool constrained = false;
  /// optional source S(t, x, xi) written to out[0..m)
  std::function<void(double t, double x, double xi, double* out)> source;
};

struct EulerParams {
  double gamma = 1.4;
};

ConservationLaw advection_model();
ConservationLaw burgers_model();
ConservationLaw euler_model(EulerParams params = {});

double advection_speed(double xi);
double euler_pressure(const double* u, double gamma);

/// a_{lk} = int a(xi) phi_l phi_k f dxi on the global basis over [-1,1].
Eigen::MatrixXd advection_sg_matrix(int K);

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A);

/// Riemann data: u0 = 1 for x <= 0.5 else 0, inflow u(t,0) = 1.
double advection_initial(double x);

/// Exact sG solution U(t,x) of the projected advection system of degree K.
Eigen::VectorXd advection_analytic_sg(double t, double x, int K);

/// Jump position in xi at (t, x).
double advection_jump_locus(double t, double x);
/// Exact solution of the random advection problem at a sample xi.
double advection_exact_sample(double t, double x, double xi);

/// Stochastic modes of the exact Burgers sG solution on [0,1].
std::array<double, 3> burgers_exact_modes(double t, double x, double c1 = 1.0, double c2 = 1.0);
/// Pointwise value sum_k u_k phi_k(xi) of the exact Burgers solution.
double burgers_exact_value(double t, double x, double xi, double c1 = 1.0, double c2 = 1.0);

std::array<double, 3> euler_manufactured(double t, double x, double xi);
std::array<double, 3> euler_manufactured_source(double t, double x, double xi,
                                                double gamma = 1.4);

}  // namespace uqhyp

#include "uqhyp/models.hpp"

#include <cmath>
#include <numbers>

#include "uqhyp/errors.hpp"
#include "uqhyp/stochastic_basis.hpp"

namespace uqhyp {

double advection_speed(double xi) { return 1.5 + 0.5 * xi; }

ConservationLaw advection_model() {
  ConservationLaw law;
  law.name = "advection";
  law.m = 1;
  law.flux = [](const double* u, double xi, double* out) { out[0] = advection_speed(xi) * u[0]; };
  law.max_wavespeed = [](const double*, double xi) { return std::abs(advection_speed(xi)); };
  law.admissible = [](const double*, double) { return true; };
  return law;
}

ConservationLaw burgers_model() {
  ConservationLaw law;
  law.name = "burgers";
  law.m = 1;
  law.flux = [](const double* u, double, double* out) { out[0] = 0.5 * u[0] * u[0]; };
  law.max_wavespeed = [](const double* u, double) { return std::abs(u[0]); };
  law.admissible = [](const double*, double) { return true; };
  return law;
}

double euler_pressure(const double* u, double gamma) {
  return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

ConservationLaw euler_model(EulerParams params) {
  if (!(params.gamma > 1.0)) throw DomainError("euler: gamma must exceed 1");
  const double g = params.gamma;
  ConservationLaw law;
  law.name = "euler";
  law.m = 3;
  law.constrained = true;
  law.flux = [g](const double* u, double, double* out) {
    if (!(u[0] > 0.0)) throw UnrecoverableState("euler flux: non-positive density");
    const double v = u[1] / u[0];
    const double p = euler_pressure(u, g);
    out[0] = u[1];
    out[1] = u[1] * v + p;
    out[2] = (u[2] + p) * v;
  };
  law.max_wavespeed = [g](const double* u, double) {
    const double p = euler_pressure(u, g);
    if (!(u[0] > 0.0) || !(p > 0.0))
      throw UnrecoverableState("euler wavespeed: inadmissible state");
    return std::abs(u[1] / u[0]) + std::sqrt(g * p / u[0]);
  };
  law.admissible = [g](const double* u, double eps) {
    return u[0] >= eps && euler_pressure(u, g) >= eps;
  };
  return law;
}

Eigen::MatrixXd advection_sg_matrix(int K) {
  const QuadratureRule r = quadrature(QuadKind::gauss_legendre, K + 2, -1.0, 1.0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (int l = 0; l <= K; ++l)
    for (int k = 0; k <= l; ++k) {
      double s = 0.0;
      for (int q = 0; q < r.size(); ++q) {
        const double xi = r.nodes[q];
        s += advection_speed(xi) * legendre_orthonormal(l, xi) * legendre_orthonormal(k, xi) *
             r.weights[q];
      }
      A(l, k) = s;
      A(k, l) = s;
    }
  return A;
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw DomainError("symmetric eigen decomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double advection_initial(double x) { return x <= 0.5 ? 1.0 : 0.0; }

Eigen::VectorXd advection_analytic_sg(double t, double x, int K) {
  const SymmetricEigen e = symmetric_eigen(advection_sg_matrix(K));
  const Eigen::MatrixXd& T = e.vectors;
  // Both the initial state left of 0.5 and the inflow state are (1, 0, ..., 0).
  const Eigen::VectorXd w_left = T.transpose() * Eigen::VectorXd::Unit(K + 1, 0);
  Eigen::VectorXd w(K + 1);
  for (int j = 0; j <= K; ++j) {
    const double foot = x - e.values[j] * t;
    const double g = foot < 0.0 ? 1.0 : advection_initial(foot);
    w[j] = w_left[j] * g;
  }
  return T * w;
}

double advection_jump_locus(double t, double x) { return (2.0 * x - 1.0) / t - 3.0; }

double advection_exact_sample(double t, double x, double xi) {
  return x - advection_speed(xi) * t <= 0.5 ? 1.0 : 0.0;
}

std::array<double, 3> burgers_exact_modes(double t, double x, double c1, double c2) {
  if (t == 1.0) throw DomainError("burgers exact modes are singular at t = 1");
  return {x / (t - 1.0), c1 / (2.0 * t - 2.0), c2 / (2.0 * t - 2.0)};
}

double burgers_exact_value(double t, double x, double xi, double c1, double c2) {
  const auto u = burgers_exact_modes(t, x, c1, c2);
  return u[0] + u[1] * legendre_orthonormal(1, xi) + u[2] * legendre_orthonormal(2, xi);
}

std::array<double, 3> euler_manufactured(double t, double x, double xi) {
  const double ph = std::numbers::pi * (x - xi * t);
  const double rho = 1.0 + 0.1 * std::cos(ph);
  return {rho, rho * (1.0 + 0.1 * std::sin(ph)), rho * rho};
}

std::array<double, 3> euler_manufactured_source(double t, double x, double xi, double gamma) {
  // Every field depends on phase = pi (x - xi t), so d/dx = pi d/dphase and
  // d/dt = -pi xi d/dphase.
  const double ph = std::numbers::pi * (x - xi * t);
  const double s = std::sin(ph), c = std::cos(ph);
  const double rho = 1.0 + 0.1 * c, drho = -0.1 * s;
  const double v = 1.0 + 0.1 * s, dv = 0.1 * c;
  const double m = rho * v, dm = drho * v + rho * dv;
  const double E = rho * rho, dE = 2.0 * rho * drho;
  const double p = (gamma - 1.0) * (E - 0.5 * rho * v * v);
  const double dp = (gamma - 1.0) * (dE - 0.5 * (drho * v * v + 2.0 * rho * v * dv));
  const double df1 = dm;
  const double df2 = dm * v + m * dv + dp;
  const double df3 = (dE + dp) * v + (E + p) * dv;
  const double pi = std::numbers::pi;
  return {pi * (-xi * drho + df1), pi * (-xi * dm + df2), pi * (-xi * dE + df3)};
}

}  // namespace uqhyp

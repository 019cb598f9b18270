//! Third-order CWENOZ reconstruction from cell means, in x and in (x, xi).
#pragma once

#include <array>
#include <span>
#include <vector>

namespace uqhyp {

/// p(X) = c[0] + c[1] X + c[2] X^2 with X = (x - x_i)/dx in [-1/2, 1/2].
struct Poly1D {
  std::array<double, 3> c{};

  double operator()(double X) const { return c[0] + X * (c[1] + X * c[2]); }
  double left() const { return (*this)(-0.5); }
  double right() const { return (*this)(0.5); }
  double average() const { return c[0] + c[2] / 12.0; }
};

struct CwenoWeights {
  static constexpr double d_center = 0.5;
  static constexpr double d_side = 0.25;
  static constexpr double d_corner = 0.125;
};

/// Parabola matching the three means exactly (the optimal polynomial).
Poly1D optimal_parabola(double um, double u0, double up);

/// Jiang-Shu indicator of a 1-D polynomial in scaled coordinates.
double smoothness_1d(const Poly1D& p);

Poly1D cwenoz_1d(double um, double u0, double up, double dx);

enum class GhostPolicy { periodic, extrapolation, linear_extension };

struct RowReconstruction {
  std::vector<Poly1D> polys;  // one per cell
  std::vector<double> minus;  // u^- at interface i-1/2, i = 0..n
  std::vector<double> plus;   // u^+ at interface i-1/2
};

/// Reconstructs a row of n >= 3 cell means. Ghost cells are filled by the policy.
RowReconstruction reconstruct_row(std::span<const double> means, GhostPolicy policy, double dx);

/// Low-level kernel on an extended row ext[0..n+4) holding two ghost cells on
/// each side; writes interface traces for the n+1 interfaces of the interior.
/// Entries of ext, minus and plus are spaced by stride.
void reconstruct_traces(const double* ext, int n, int stride, double dx, double* minus,
                        double* plus, bool first_order = false);

/// p(X, Y) = sum c[a][b] X^a Y^b with X = (x - x_i)/dx and Y = (xi - xi_j)/dxi,
/// both in [-1/2, 1/2].
struct Poly2D {
  std::array<std::array<double, 3>, 3> c{};

  double operator()(double X, double Y) const;
  /// average over X in [-1/2,1/2] at fixed Y
  double x_average(double Y) const;
  double average() const;
};

/// s[a][b] are the means of cell (i + a - 1, j + b - 1).
Poly2D cwenoz_2d(const std::array<std::array<double, 3>, 3>& s, double dx);

/// Constrained least-squares total-degree-2 fit to the 3x3 block.
Poly2D optimal_quadratic_2d(const std::array<std::array<double, 3>, 3>& s);

double smoothness_2d(const Poly2D& p);

}  // namespace uqhyp

#include "uqhyp/weno.hpp"

#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

#include "uqhyp/errors.hpp"

namespace uqhyp {

Poly1D optimal_parabola(double um, double u0, double up) {
  const double c2 = 0.5 * (um - 2.0 * u0 + up);
  return {{u0 - c2 / 12.0, 0.5 * (up - um), c2}};
}

double smoothness_1d(const Poly1D& p) {
  return p.c[1] * p.c[1] + 13.0 / 3.0 * p.c[2] * p.c[2];
}

Poly1D cwenoz_1d(double um, double u0, double up, double dx) {
  constexpr double dC = CwenoWeights::d_center, dS = CwenoWeights::d_side;
  const Poly1D opt = optimal_parabola(um, u0, up);
  const Poly1D pl{{u0, u0 - um, 0.0}};
  const Poly1D pr{{u0, up - u0, 0.0}};
  Poly1D pc;
  for (int a = 0; a < 3; ++a) pc.c[a] = (opt.c[a] - dS * pl.c[a] - dS * pr.c[a]) / dC;

  const double eps = dx * dx;
  const double bC = smoothness_1d(opt), bL = smoothness_1d(pl), bR = smoothness_1d(pr);
  const double tau = std::abs(bL - bR);
  const double aC = dC * (1.0 + tau / (bC + eps));
  const double aL = dS * (1.0 + tau / (bL + eps));
  const double aR = dS * (1.0 + tau / (bR + eps));
  const double sum = aC + aL + aR;
  const double wC = aC / sum, wL = aL / sum, wR = aR / sum;

  Poly1D out;
  for (int a = 0; a < 3; ++a) out.c[a] = wC * pc.c[a] + wL * pl.c[a] + wR * pr.c[a];
  // the linear candidates have no X^2 term, so the mean is carried by c0 and c2
  out.c[0] = u0 - out.c[2] / 12.0;
  return out;
}

void reconstruct_traces(const double* ext, int n, int stride, double dx, double* minus,
                        double* plus, bool first_order) {
  // cells -1..n live at ext[(cell + 2) * stride]
  auto at = [&](int cell) { return ext[(cell + 2) * stride]; };
  for (int cell = -1; cell <= n; ++cell) {
    double l, r;
    if (first_order) {
      l = r = at(cell);
    } else {
      const Poly1D p = cwenoz_1d(at(cell - 1), at(cell), at(cell + 1), dx);
      l = p.left();
      r = p.right();
    }
    if (cell >= 0) plus[cell * stride] = l;
    if (cell + 1 <= n) minus[(cell + 1) * stride] = r;
  }
}

RowReconstruction reconstruct_row(std::span<const double> means, GhostPolicy policy, double dx) {
  const int n = static_cast<int>(means.size());
  if (n < 3) throw DomainError("reconstruct_row needs at least 3 cells");
  std::vector<double> ext(n + 4);
  for (int i = 0; i < n; ++i) ext[i + 2] = means[i];
  switch (policy) {
    case GhostPolicy::periodic:
      ext[0] = means[n - 2];
      ext[1] = means[n - 1];
      ext[n + 2] = means[0];
      ext[n + 3] = means[1];
      break;
    case GhostPolicy::extrapolation:
      ext[0] = ext[1] = means[0];
      ext[n + 2] = ext[n + 3] = means[n - 1];
      break;
    case GhostPolicy::linear_extension: {
      const double sl = means[1] - means[0], sr = means[n - 1] - means[n - 2];
      ext[1] = means[0] - sl;
      ext[0] = means[0] - 2.0 * sl;
      ext[n + 2] = means[n - 1] + sr;
      ext[n + 3] = means[n - 1] + 2.0 * sr;
      break;
    }
  }
  RowReconstruction out;
  out.polys.resize(n);
  for (int i = 0; i < n; ++i) out.polys[i] = cwenoz_1d(ext[i + 1], ext[i + 2], ext[i + 3], dx);
  out.minus.resize(n + 1);
  out.plus.resize(n + 1);
  reconstruct_traces(ext.data(), n, 1, dx, out.minus.data(), out.plus.data());
  return out;
}

namespace {

// Average of X^p over the unit cell centred at o.
double mono_avg(int p, double o) {
  switch (p) {
    case 0: return 1.0;
    case 1: return o;
    default: return o * o + 1.0 / 12.0;
  }
}

// Integral of X^p over [-1/2, 1/2].
constexpr double kMonoInt[5] = {1.0, 0.0, 1.0 / 12.0, 0.0, 1.0 / 80.0};
double mono_int(int p) { return kMonoInt[p]; }

constexpr int kQuadTerms[5][2] = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};

const Eigen::Matrix<double, 5, 8>& ls_operator() {
  static const Eigen::Matrix<double, 5, 8> P = [] {
    Eigen::Matrix<double, 8, 5> G;
    int row = 0;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        for (int t = 0; t < 5; ++t) {
          const int px = kQuadTerms[t][0], py = kQuadTerms[t][1];
          G(row, t) = mono_avg(px, a) * mono_avg(py, b) - mono_avg(px, 0) * mono_avg(py, 0);
        }
        ++row;
      }
    Eigen::Matrix<double, 5, 8> out =
        (G.transpose() * G).ldlt().solve(G.transpose());
    return out;
  }();
  return P;
}

}  // namespace

double Poly2D::operator()(double X, double Y) const {
  double s = 0.0;
  for (int a = 2; a >= 0; --a) {
    const double row = c[a][0] + Y * (c[a][1] + Y * c[a][2]);
    s = s * X + row;
  }
  return s;
}

double Poly2D::x_average(double Y) const {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) s += mono_int(a) * (c[a][0] + Y * (c[a][1] + Y * c[a][2]));
  return s;
}

double Poly2D::average() const {
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += c[a][b] * mono_int(a) * mono_int(b);
  return s;
}

Poly2D optimal_quadratic_2d(const std::array<std::array<double, 3>, 3>& s) {
  Eigen::Matrix<double, 8, 1> rhs;
  int row = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == 1 && b == 1) continue;
      rhs(row++) = s[a][b] - s[1][1];
    }
  const Eigen::Matrix<double, 5, 1> x = ls_operator() * rhs;
  Poly2D p;
  for (int t = 0; t < 5; ++t) p.c[kQuadTerms[t][0]][kQuadTerms[t][1]] = x(t);
  p.c[0][0] = s[1][1] - (p.c[2][0] + p.c[0][2]) / 12.0;
  return p;
}

double smoothness_2d(const Poly2D& p) {
  // sum over all derivatives of order >= 1 of the cell integral of the square
  double beta = 0.0;
  for (int da = 0; da <= 2; ++da)
    for (int db = 0; db <= 2; ++db) {
      if (da == 0 && db == 0) continue;
      double d[3][3] = {};
      for (int a = da; a < 3; ++a)
        for (int b = db; b < 3; ++b) {
          double f = 1.0;
          for (int t = 0; t < da; ++t) f *= (a - t);
          for (int t = 0; t < db; ++t) f *= (b - t);
          d[a - da][b - db] = f * p.c[a][b];
        }
      double sq = 0.0;
      for (int a1 = 0; a1 < 3; ++a1)
        for (int b1 = 0; b1 < 3; ++b1)
          for (int a2 = 0; a2 < 3; ++a2)
            for (int b2 = 0; b2 < 3; ++b2)
              sq += d[a1][b1] * d[a2][b2] * mono_int(a1 + a2) * mono_int(b1 + b2);
      beta += sq;
    }
  return beta;
}

Poly2D cwenoz_2d(const std::array<std::array<double, 3>, 3>& s, double dx) {
  constexpr double dC = CwenoWeights::d_center, dK = CwenoWeights::d_corner;
  const Poly2D opt = optimal_quadratic_2d(s);
  const double u0 = s[1][1];
  // corners ordered (sx, sy) = (-,-), (-,+), (+,-), (+,+)
  Poly2D corner[4];
  int n = 0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) {
      Poly2D& p = corner[n++];
      const double ux = s[1 + sx][1], uy = s[1][1 + sy], uxy = s[1 + sx][1 + sy];
      p.c[0][0] = u0;
      p.c[1][0] = (ux - u0) * sx;
      p.c[0][1] = (uy - u0) * sy;
      p.c[1][1] = (uxy - ux - uy + u0) * sx * sy;
    }
  Poly2D pc;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double v = opt.c[a][b];
      for (const Poly2D& p : corner) v -= dK * p.c[a][b];
      pc.c[a][b] = v / dC;
    }

  const double eps = dx * dx;
  double beta[4];
  for (int k = 0; k < 4; ++k) beta[k] = smoothness_2d(corner[k]);
  const double bC = smoothness_2d(opt);
  const double tau = 0.5 * (std::abs(beta[0] - beta[3]) + std::abs(beta[1] - beta[2]));
  double alpha[4];
  const double aC = dC * (1.0 + tau / (bC + eps));
  double sum = aC;
  for (int k = 0; k < 4; ++k) {
    alpha[k] = dK * (1.0 + tau / (beta[k] + eps));
    sum += alpha[k];
  }
  Poly2D out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double v = aC / sum * pc.c[a][b];
      for (int k = 0; k < 4; ++k) v += alpha[k] / sum * corner[k].c[a][b];
      out.c[a][b] = v;
    }
  // restore the mean exactly: only even powers contribute to the average
  const double rest = out.average() - out.c[0][0];
  out.c[0][0] = u0 - rest;
  return out;
}

}  // namespace uqhyp

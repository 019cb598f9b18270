#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "uqhyp/errors.hpp"
#include "uqhyp/weno.hpp"

using namespace uqhyp;

namespace {

constexpr double pi = std::numbers::pi;

// max trace error of a periodic sine reconstructed from exact means
double sine_trace_error(int n) {
  const double dx = 1.0 / n;
  std::vector<double> means(n);
  for (int i = 0; i < n; ++i)
    means[i] = (std::cos(2 * pi * i * dx) - std::cos(2 * pi * (i + 1) * dx)) / (2 * pi * dx);
  const RowReconstruction r = reconstruct_row(means, GhostPolicy::periodic, dx);
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double exact = std::sin(2 * pi * i * dx);
    err = std::max({err, std::abs(r.minus[i] - exact), std::abs(r.plus[i] - exact)});
  }
  return err;
}

}  // namespace

TEST_CASE("1-D CWENOZ") {
  SUBCASE("constant") {
    const Poly1D p = cwenoz_1d(2.5, 2.5, 2.5, 0.1);
    CHECK(p.c[0] == 2.5);
    CHECK(p.c[1] == 0.0);
    CHECK(p.c[2] == 0.0);
  }

  SUBCASE("x^2 on unit cells") {
    const Poly1D p = cwenoz_1d(13.0 / 12.0, 1.0 / 12.0, 13.0 / 12.0, 1.0);
    CHECK(p(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p(0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(p.average() == doctest::Approx(1.0 / 12.0));
  }

  SUBCASE("optimal parabola matches the three means") {
    const Poly1D p = optimal_parabola(0.3, -1.2, 2.0);
    auto avg = [&](double o) { return p.c[0] + p.c[1] * o + p.c[2] * (o * o + 1.0 / 12.0); };
    CHECK(avg(-1.0) == doctest::Approx(0.3));
    CHECK(avg(0.0) == doctest::Approx(-1.2));
    CHECK(avg(1.0) == doctest::Approx(2.0));
  }

  SUBCASE("linear data is reproduced") {
    const Poly1D p = cwenoz_1d(-0.7, 0.1, 0.9, 0.05);
    CHECK(p.left() == doctest::Approx(-0.3));
    CHECK(p.right() == doctest::Approx(0.5));
  }

  SUBCASE("jump stays on the smooth side") {
    // the overshoot scales like eps = dx^2
    for (double dx : {0.03, 0.01, 0.001}) {
      const Poly1D p = cwenoz_1d(0.0, 0.0, 1.0, dx);
      CHECK(std::abs(p.left()) <= 1e-2);
      CHECK(std::abs(p.right()) <= 1e-2);
    }
  }

  SUBCASE("cell mean is conserved") {
    for (double a : {-1.0, 0.3, 4.0})
      for (double b : {0.0, 2.0})
        for (double c : {-3.0, 0.5}) {
          const Poly1D p = cwenoz_1d(a, b, c, 0.02);
          CHECK(p.average() == doctest::Approx(b).epsilon(1e-13).scale(1.0));
        }
  }

  SUBCASE("smoothness of constants and lines") {
    CHECK(smoothness_1d(Poly1D{{3.0, 0.0, 0.0}}) == 0.0);
    CHECK(smoothness_1d(Poly1D{{0.0, 2.0, 0.0}}) == doctest::Approx(4.0));
  }
}

TEST_CASE("row reconstruction") {
  SUBCASE("linear data with linear extension") {
    const int n = 10;
    const double dx = 0.1;
    std::vector<double> means(n);
    for (int i = 0; i < n; ++i) means[i] = 1.0 + 3.0 * (i + 0.5) * dx;
    const RowReconstruction r = reconstruct_row(means, GhostPolicy::linear_extension, dx);
    for (int i = 0; i <= n; ++i) {
      CHECK(r.minus[i] == doctest::Approx(1.0 + 3.0 * i * dx).epsilon(1e-12));
      CHECK(r.plus[i] == doctest::Approx(1.0 + 3.0 * i * dx).epsilon(1e-12));
    }
  }

  SUBCASE("constant data") {
    const std::vector<double> means(7, -0.4);
    for (GhostPolicy g :
         {GhostPolicy::periodic, GhostPolicy::extrapolation, GhostPolicy::linear_extension}) {
      const RowReconstruction r = reconstruct_row(means, g, 0.3);
      for (double v : r.minus) CHECK(v == doctest::Approx(-0.4));
      for (double v : r.plus) CHECK(v == doctest::Approx(-0.4));
    }
  }

  SUBCASE("traces agree with the cell polynomials") {
    std::vector<double> means{0.0, 1.0, 0.5, 0.2, 3.0, -1.0};
    const RowReconstruction r = reconstruct_row(means, GhostPolicy::extrapolation, 0.2);
    for (int i = 0; i < 6; ++i) {
      CHECK(r.plus[i] == doctest::Approx(r.polys[i].left()));
      CHECK(r.minus[i + 1] == doctest::Approx(r.polys[i].right()));
    }
  }

  SUBCASE("too few cells") {
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(reconstruct_row(two, GhostPolicy::periodic, 0.5), DomainError);
  }

  SUBCASE("third order on a smooth sine") {
    // near the extrema the Z-weights are pre-asymptotic up to a few hundred
    // cells, and the ratio settles at 8 from there on
    const double e64 = sine_trace_error(64), e512 = sine_trace_error(512),
                 e1024 = sine_trace_error(1024);
    CHECK(e64 < 1e-3);
    CHECK(e512 / e1024 == doctest::Approx(8.0).epsilon(0.15));
    CHECK(std::log2(e64 / e1024) / 4.0 >= 3.0);
  }
}

TEST_CASE("2-D CWENOZ") {
  using Block = std::array<std::array<double, 3>, 3>;

  SUBCASE("constant block") {
    Block s;
    for (auto& row : s) row.fill(1.75);
    const Poly2D p = cwenoz_2d(s, 0.1);
    CHECK(p(0.3, -0.2) == doctest::Approx(1.75));
    CHECK(p.average() == doctest::Approx(1.75));
  }

  SUBCASE("x xi on unit cells") {
    Block s;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s[a][b] = (a - 1.0) * (b - 1.0);
    const Poly2D p = cwenoz_2d(s, 1.0);
    for (double X : {-0.5, 0.0, 0.5})
      for (double Y : {-0.5, 0.25, 0.5}) CHECK(std::abs(p(X, Y) - X * Y) <= 1e-12);
    CHECK(std::abs(p.x_average(0.5)) <= 1e-12);
  }

  SUBCASE("mean is conserved") {
    Block s{{{0.0, 1.0, 2.0}, {-1.0, 0.5, 3.0}, {4.0, 0.0, 0.1}}};
    CHECK(cwenoz_2d(s, 0.05).average() == doctest::Approx(0.5).epsilon(1e-13));
  }

  SUBCASE("xi-constant data reduces to 1-D") {
    Block s;
    const double col[3] = {0.0, 0.0, 1.0};
    for (int a = 0; a < 3; ++a) s[a].fill(col[a]);
    const Poly2D p = cwenoz_2d(s, 0.01);
    const Poly1D q = cwenoz_1d(0.0, 0.0, 1.0, 0.01);
    for (double Y : {-0.5, 0.0, 0.5}) {
      CHECK(std::abs(p(-0.5, Y)) <= 1e-2);
      CHECK(std::abs(p(0.5, Y)) <= 1e-2);
    }
    CHECK(std::abs(p.x_average(0.0) - q.average()) <= 1e-12);
  }

  SUBCASE("optimal quadratic fits a quadratic exactly") {
    // q = 1 + X + 2 Y + 0.5 X^2 - Y^2 + 3 X Y, means over unit cells
    Block s;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double o = a - 1.0, r = b - 1.0;
        s[a][b] = 1 + o + 2 * r + 0.5 * (o * o + 1.0 / 12) - (r * r + 1.0 / 12) + 3 * o * r;
      }
    const Poly2D p = optimal_quadratic_2d(s);
    for (double X : {-0.5, 0.1, 0.5})
      for (double Y : {-0.5, 0.3})
        CHECK(p(X, Y) == doctest::Approx(1 + X + 2 * Y + 0.5 * X * X - Y * Y + 3 * X * Y));
  }
}

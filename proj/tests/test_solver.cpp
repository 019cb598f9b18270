#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "uqhyp/cases.hpp"
#include "uqhyp/errors.hpp"
#include "uqhyp/solver.hpp"

using namespace uqhyp;

namespace {

constexpr double pi = std::numbers::pi;

Problem periodic_problem(ConservationLaw law, int n, StateFn initial) {
  Problem p;
  p.law = std::move(law);
  p.mesh = Mesh(0.0, 1.0, n);
  p.initial = std::move(initial);
  p.boundary = Boundary::periodic();
  return p;
}

SolverConfig config(Scheme s, int n, int k_xi = 2, int n_xi = 1) {
  SolverConfig c;
  c.scheme = s;
  c.n_x = n;
  c.k_xi = k_xi;
  c.n_xi = n_xi;
  return c;
}

// max error of rhs_wenosg against -A d_x U for U = (0, sin 2 pi x, 0)
double advection_rhs_error(int n) {
  const Problem p = periodic_problem(advection_model(), n, [](double, double x, double xi,
                                                              double* out) {
    out[0] = std::sqrt(3.0) * xi * std::sin(2 * pi * x);
  });
  const Solver s(p, config(Scheme::wenosg, n));
  const GpcField u = s.initialize();
  const GpcField r = s.rhs_wenosg(u, 0.0);
  const Eigen::MatrixXd A = advection_sg_matrix(2);
  const double dx = p.mesh.dx();
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (std::sin(2 * pi * (i + 1) * dx) - std::sin(2 * pi * i * dx)) / dx;
    for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(r(k, i, 0, 0) + A(k, 1) * d));
  }
  return err;
}

}  // namespace

TEST_CASE("mesh and scheme names") {
  CHECK_THROWS_AS(Mesh(1.0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(Mesh(0.0, 1.0, 2), DomainError);
  const Mesh m(0.0, 2.0, 4);
  CHECK(m.dx() == 0.5);
  CHECK(m.center(1) == 0.75);
  for (Scheme s : {Scheme::sg, Scheme::wenosg, Scheme::weno2d})
    CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("weno3d"), ConfigError);
}

TEST_CASE("solver configuration is validated") {
  const Problem p = periodic_problem(burgers_model(), 10, [](double, double, double, double* o) {
    o[0] = 1.0;
  });
  auto bad = [&](auto edit) {
    SolverConfig c = config(Scheme::wenosg, 10);
    edit(c);
    return c;
  };
  CHECK_THROWS_AS(Solver(p, bad([](SolverConfig& c) { c.k_d = 1; })), DomainError);
  CHECK_THROWS_AS(Solver(p, bad([](SolverConfig& c) { c.cfl = 0.0; })), DomainError);
  CHECK_THROWS_AS(Solver(p, bad([](SolverConfig& c) { c.n_x = 11; })), DomainError);
  CHECK_THROWS_AS(Solver(p, bad([](SolverConfig& c) { c.rk_order = 4; })), DomainError);
  Problem half = p;
  half.boundary.right = {};
  CHECK_THROWS_AS(Solver(half, config(Scheme::wenosg, 10)), DomainError);
}

TEST_CASE("initialization") {
  SUBCASE("constant data") {
    const Problem p = periodic_problem(burgers_model(), 5, [](double, double, double, double* o) {
      o[0] = 0.75;
    });
    const Solver s(p, config(Scheme::wenosg, 5, 2, 3));
    const GpcField u = s.initialize();
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(u(0, i, j, 0) - 0.75) <= 1e-14);
        CHECK(std::abs(u(1, i, j, 0)) <= 1e-14);
        CHECK(std::abs(u(2, i, j, 0)) <= 1e-14);
      }
  }

  SUBCASE("first basis function of one element") {
    const MultiElementBasis b(RandomDomain{}, 2, 2);
    const Problem p = periodic_problem(burgers_model(), 4, [&](double, double, double xi,
                                                               double* o) {
      o[0] = b.element_of(xi) == 1 ? b.eval(1, 1, xi) : 0.0;
    });
    const Solver s(p, config(Scheme::wenosg, 4, 2, 2));
    const GpcField u = s.initialize();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k)
          CHECK(std::abs(u(k, i, j, 0) - (j == 1 && k == 1 ? 1.0 : 0.0)) <= 1e-14);
  }

  SUBCASE("Riemann data gives volume fractions") {
    SolverConfig c = default_config(CaseId::advection_riemann);
    c.n_x = 8;  // cell 0 is [0.4, 0.6] and contains the jump at its centre
    const CaseSpec cs = make_case(CaseId::advection_riemann, c);
    const Solver s(cs.problem, cs.config);
    const GpcField u = s.initialize();
    for (int j = 0; j < 3; ++j) {
      CHECK(u(0, 0, j, 0) == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(u(0, 1, j, 0) == 0.0);
    }
    c.n_x = 16;  // jump on the face between cells 0 and 1
    const CaseSpec cs16 = make_case(CaseId::advection_riemann, c);
    const GpcField u16 = Solver(cs16.problem, cs16.config).initialize();
    CHECK(u16(0, 0, 1, 0) == doctest::Approx(1.0));
    CHECK(u16(0, 1, 1, 0) == 0.0);
  }
}

TEST_CASE("Lax-Friedrichs flux") {
  const ConservationLaw bur = burgers_model();
  const double um = 1.0, up = -1.0;
  double f = 0.0;
  lax_friedrichs(bur, &um, &up, 0.0, 1.0, &f);
  CHECK(f == 1.5);

  const ConservationLaw adv = advection_model();
  const double a = 0.4, b = 2.0;
  lax_friedrichs(adv, &a, &b, 0.2, 0.0, &f);
  CHECK(f == doctest::Approx(0.5 * 1.6 * (a + b)));

  const ConservationLaw e = euler_model();
  const double s[3] = {0.8, 0.3, 2.0};
  double lf[3], exact[3];
  lax_friedrichs(e, s, s, 0.0, 5.0, lf);
  e.flux(s, 0.0, exact);
  for (int c = 0; c < 3; ++c) CHECK(lf[c] == exact[c]);
}

TEST_CASE("spatial operator") {
  SUBCASE("constant field has zero derivative") {
    for (Scheme sc : {Scheme::sg, Scheme::wenosg, Scheme::weno2d}) {
      const Problem p = periodic_problem(euler_model(), 12, [](double, double, double,
                                                               double* o) {
        o[0] = 1.0;
        o[1] = 0.3;
        o[2] = 2.5;
      });
      const Solver s(p, config(sc, 12, 2, 3));
      if (sc == Scheme::weno2d) {
        const CellMeanField r = s.rhs_weno2d(s.initialize_means(), 0.0);
        for (double v : r.data) CHECK(std::abs(v) <= 1e-13);
      } else {
        const GpcField r = s.rhs_wenosg(s.initialize(), 0.0);
        for (double v : r.data) CHECK(std::abs(v) <= 1e-13);
      }
    }
  }

  SUBCASE("periodic conservation") {
    const Problem p = periodic_problem(burgers_model(), 20, [](double, double x, double xi,
                                                               double* o) {
      o[0] = std::sin(2 * pi * x) + (xi > 0.1 ? 0.5 : 0.0);
    });
    for (Scheme sc : {Scheme::sg, Scheme::wenosg, Scheme::weno2d}) {
      const Solver s(p, config(sc, 20, 2, 2));
      if (sc == Scheme::weno2d) {
        const CellMeanField r = s.rhs_weno2d(s.initialize_means(), 0.0);
        for (int j = 0; j < 2; ++j) {
          double sum = 0.0;
          for (int i = 0; i < 20; ++i) sum += r(i, j, 0);
          CHECK(std::abs(sum) <= 1e-12);
        }
      } else {
        const GpcField r = s.rhs_wenosg(s.initialize(), 0.0);
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 3; ++k) {
            double sum = 0.0;
            for (int i = 0; i < 20; ++i) sum += r(k, i, j, 0);
            CHECK(std::abs(sum) <= 1e-12);
          }
      }
    }
  }

  SUBCASE("xi-constant data: 2-D operator matches the gPC mean") {
    const Problem p = periodic_problem(burgers_model(), 16, [](double, double x, double,
                                                               double* o) {
      o[0] = 0.5 + std::sin(2 * pi * x);
    });
    const Solver s2(p, config(Scheme::weno2d, 16, 2, 3));
    const Solver s1(p, config(Scheme::wenosg, 16, 2, 3));
    const CellMeanField r2 = s2.rhs_weno2d(s2.initialize_means(), 0.0);
    const GpcField r1 = s1.rhs_wenosg(s1.initialize(), 0.0);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(r2(i, j, 0) - r1(0, i, j, 0)) <= 1e-10);
  }

  SUBCASE("advection operator is third order") {
    // O(dx^3) or better; the error bound relative to dx^3 shrinks with n
    double prev = advection_rhs_error(64);
    for (int n : {128, 256, 512}) {
      const double e = advection_rhs_error(n);
      CHECK(prev / e >= 8.0 * 0.85);
      prev = e;
    }
    CHECK(prev < 1e-4);
  }

  SUBCASE("advection viscosity is at most 2") {
    const CaseSpec cs = make_case(CaseId::advection_riemann, default_config(CaseId::advection_riemann));
    const Solver s(cs.problem, cs.config);
    const double c = s.global_viscosity(s.initialize(), 0.0);
    CHECK(c <= 2.0);
    CHECK(c > 1.5);
  }
}

TEST_CASE("time stepping") {
  SUBCASE("t_end = 0 returns the initial field") {
    const CaseSpec cs = make_case(CaseId::burgers_exact, default_config(CaseId::burgers_exact));
    SolverConfig c = cs.config;
    c.t_end = 0.0;
    const Solver s(cs.problem, c);
    const RunResult r = s.run();
    CHECK(r.steps == 0);
    CHECK(r.field.data == s.initialize().data);
  }

  SUBCASE("forward Euler step of a constant") {
    const Problem p = periodic_problem(burgers_model(), 8, [](double, double, double, double* o) {
      o[0] = -0.3;
    });
    SolverConfig c = config(Scheme::wenosg, 8);
    c.k_d = 0;
    const Solver s(p, c);
    const GpcField u = s.initialize();
    const GpcField v = s.step(u, 0.0, 0.01);
    for (std::size_t q = 0; q < u.data.size(); ++q) CHECK(std::abs(v.data[q] - u.data[q]) <= 1e-15);
  }

  SUBCASE("steps land on t_end") {
    const CaseSpec cs = make_case(CaseId::burgers_exact, default_config(CaseId::burgers_exact));
    const RunResult r = Solver(cs.problem, cs.config).run();
    CHECK(r.t == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(r.steps > 0);
    CHECK(r.all_nodes_admissible);
  }
}

TEST_CASE("Sod without the hyperbolicity limiter") {
  SolverConfig c = default_config(CaseId::euler_sod);
  c.scheme = Scheme::sg;
  c.limiters.enable_hyperbolicity = false;
  const CaseSpec cs = make_case(CaseId::euler_sod, c);
  long steps = 0;
  CHECK_THROWS_AS(Solver(cs.problem, cs.config).run([&](double, long n) { steps = n; }),
                  UnrecoverableState);
  CHECK(steps <= 1);
}

TEST_CASE("deterministic solve") {
  SUBCASE("manufactured Euler at fixed xi is third order") {
    const double xi = 0.3, t_end = 0.1;
    std::vector<double> errors, ns{25, 50, 100};
    for (double nd : ns) {
      const int n = static_cast<int>(nd);
      SolverConfig c = default_config(CaseId::euler_manufactured);
      c.n_x = n;
      const CaseSpec cs = make_case(CaseId::euler_manufactured, c);
      const Problem& p = cs.problem;
      const auto u = deterministic_solve(p.law, p.mesh, xi, 2, 0.45, t_end, p.boundary, p.initial);
      const QuadratureRule g = quadrature(QuadKind::gauss_legendre, 6, 0.0, 1.0);
      const double dx = p.mesh.dx();
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        double mean = 0.0;
        for (int a = 0; a < g.size(); ++a)
          mean += g.weights[a] * euler_manufactured(t_end, p.mesh.x_left + (i + g.nodes[a]) * dx, xi)[0];
        err += std::abs(u[i * 3] - mean) * dx;
      }
      errors.push_back(err);
    }
    for (std::size_t q = 1; q < errors.size(); ++q)
      CHECK(std::log2(errors[q - 1] / errors[q]) == doctest::Approx(3.0).epsilon(0.15));
  }

  SUBCASE("matches the stochastic solver with one mode") {
    const Problem p = periodic_problem(burgers_model(), 30, [](double, double x, double,
                                                               double* o) {
      o[0] = std::sin(2 * pi * x);
    });
    SolverConfig c = config(Scheme::wenosg, 30, 0, 1);
    c.t_end = 0.1;
    const RunResult r = Solver(p, c).run();
    const auto d = deterministic_solve(p.law, p.mesh, 0.0, 2, c.cfl, 0.1, p.boundary, p.initial);
    for (int i = 0; i < 30; ++i) CHECK(std::abs(r.field(0, i, 0, 0) - d[i]) <= 1e-12);
  }
}

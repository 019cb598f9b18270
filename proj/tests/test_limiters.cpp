#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "uqhyp/errors.hpp"
#include "uqhyp/limiters.hpp"

using namespace uqhyp;

namespace {

// orthonormal coefficients of an element given its centred monomial coefficients
std::vector<double> from_mono(const MonomialTransform& t, std::vector<double> mono) {
  std::vector<double> u(mono.size());
  t.from_monomial(mono.data(), u.data());
  return u;
}

std::vector<double> to_mono(const MonomialTransform& t, const double* u, int K1, int stride = 1) {
  std::vector<double> tmp(K1), mono(K1);
  for (int k = 0; k < K1; ++k) tmp[k] = u[k * stride];
  t.to_monomial(tmp.data(), mono.data());
  return mono;
}

}  // namespace

TEST_CASE("minmod") {
  CHECK(minmod(1, 2, 3) == 1);
  CHECK(minmod(-1, 2, 3) == 0);
  CHECK(minmod(-2, -1, -3) == -1);
  CHECK(minmod(0, 1, 1) == 0);
  for (double a : {-2.0, -0.5, 0.0, 0.7, 3.0})
    for (double b : {-1.0, 0.2, 4.0})
      for (double c : {-3.0, 0.0, 1.5}) {
        const double r = minmod(a, b, c);
        CHECK(std::abs(r) <= std::min({std::abs(a), std::abs(b), std::abs(c)}));
        CHECK(r == minmod(c, a, b));
        CHECK(-r == minmod(-a, -b, -c));
      }
}

TEST_CASE("troubled element detection") {
  const MultiElementBasis b(RandomDomain{}, 3, 1);
  const MonomialTransform t = monomial_transform(b);
  LimiterConfig cfg;
  auto u1 = from_mono(t, {1.0, 1.0});
  CHECK_FALSE(troubled_cell(u1.data(), 1, 0.0, 2.0, t, b, cfg));
  auto u3 = from_mono(t, {1.0, 3.0});
  CHECK(troubled_cell(u3.data(), 1, 0.0, 2.0, t, b, cfg));

  SUBCASE("TVBM guard suppresses flags for K >= 2") {
    const MultiElementBasis b2(RandomDomain{}, 3, 2);
    const MonomialTransform t2 = monomial_transform(b2);
    auto u = from_mono(t2, {1.0, 3.0, 0.0});
    CHECK(troubled_cell(u.data(), 1, 0.0, 2.0, t2, b2, cfg));
    LimiterConfig big;
    const double w = b2.element_width();
    big.tvbm_M = 3.0 / (w * w) * 1.01;
    CHECK_FALSE(troubled_cell(u.data(), 1, 0.0, 2.0, t2, b2, big));
  }

  SUBCASE("per-component flags") {
    const MultiElementBasis b2(RandomDomain{}, 3, 1);
    const MonomialTransform t2 = monomial_transform(b2);
    auto a = from_mono(t2, {1.0, 1.0});
    auto c = from_mono(t2, {1.0, 3.0});
    const std::vector<double> block{a[0], c[0], a[1], c[1]};
    const auto flags = troubled_cell(block, {0.0, 0.0}, {2.0, 2.0}, t2, b2, cfg);
    CHECK_FALSE(flags[0]);
    CHECK(flags[1]);
  }
}

TEST_CASE("slope limiting") {
  SUBCASE("consistent linear field is unchanged") {
    const MultiElementBasis b(RandomDomain{}, 4, 1);
    const MonomialTransform t = monomial_transform(b);
    GpcField f(2, 1, 4, 1);
    for (int j = 0; j < 4; ++j) {
      // u = xi on each element: mean = centre, monomial slope = half width
      auto u = from_mono(t, {b.center(j), 0.5 * b.element_width()});
      f(0, 0, j, 0) = u[0];
      f(1, 0, j, 0) = u[1];
    }
    const GpcField before = f;
    LimiterConfig cfg;
    slope_limit(f, b, t, cfg);
    // boundary elements copy their own means, so only the interior is untouched
    for (int j = 1; j < 3; ++j) CHECK(f(1, 0, j, 0) == before(1, 0, j, 0));
    for (int j = 0; j < 4; ++j) CHECK(f(0, 0, j, 0) == before(0, 0, j, 0));
  }

  SUBCASE("(0, 3, 5) with neighbour means -1 and 1") {
    const MultiElementBasis b(RandomDomain{}, 3, 2);
    const MonomialTransform t = monomial_transform(b);
    GpcField f(3, 1, 3, 1);
    auto c = from_mono(t, {0.0, 3.0, 5.0});
    for (int k = 0; k < 3; ++k) f(k, 0, 1, 0) = c[k];
    f(0, 0, 0, 0) = -1.0;
    f(0, 0, 2, 0) = 1.0;
    LimiterConfig cfg;
    const auto stats = slope_limit(f, b, t, cfg);
    CHECK(stats.troubled == 1);
    const auto mono = to_mono(t, f.block(0, 1), 3);
    CHECK(mono[0] == doctest::Approx(0.0));
    CHECK(mono[1] == doctest::Approx(1.0));
    CHECK(std::abs(mono[2]) <= 1e-14);
  }

  SUBCASE("idempotent and mean preserving on arbitrary data") {
    const MultiElementBasis b(RandomDomain{}, 5, 3);
    const MonomialTransform t = monomial_transform(b);
    GpcField f(4, 6, 5, 2);
    for (std::size_t q = 0; q < f.data.size(); ++q) f.data[q] = std::sin(1.7 * q + 0.3 * q * q);
    const GpcField orig = f;
    LimiterConfig cfg;
    slope_limit(f, b, t, cfg);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 5; ++j)
        for (int c = 0; c < 2; ++c) CHECK(f(0, i, j, c) == orig(0, i, j, c));
    const GpcField once = f;
    const auto stats = slope_limit(f, b, t, cfg);
    for (std::size_t q = 0; q < f.data.size(); ++q)
      CHECK(f.data[q] == doctest::Approx(once.data[q]).epsilon(1e-13));
    (void)stats;
  }

  SUBCASE("K = 0 is untouched") {
    const MultiElementBasis b(RandomDomain{}, 3, 0);
    GpcField f(1, 1, 3, 1);
    f.data = {0.0, 5.0, -1.0};
    LimiterConfig cfg;
    CHECK(slope_limit(f, b, monomial_transform(b), cfg).troubled == 0);
    CHECK(f.data == std::vector<double>{0.0, 5.0, -1.0});
  }
}

TEST_CASE("TVBM constant") {
  CHECK(compute_tvbm_M([](double x, double) { return std::sin(x); }, 0, 1, -1, 1) == 0.0);
  const double pi = std::numbers::pi;
  const double Ms =
      compute_tvbm_M([&](double x, double xi) { return std::sin(2 * pi * (x + 0.1 * xi)); }, 0,
                     1, -1, 1, 401);
  CHECK(Ms == doctest::Approx(0.04 * pi * pi).epsilon(1e-3));
  CHECK(compute_tvbm_M([](double, double xi) { return xi * xi; }, 0, 1, -1, 1) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(compute_tvbm_M([](double, double) { return 0.0; }, 0, 1, -1, 1, 3),
                  DomainError);
}

TEST_CASE("admissibility") {
  const ConservationLaw euler = euler_model();
  const double ok[3] = {1.0, 0.0, 2.5};
  const double neg[3] = {-0.1, 0.0, 1.0};
  const double lowp[3] = {1.0, 2.0, 1.0};
  CHECK(is_admissible(ok, euler, 1e-10));
  CHECK_FALSE(is_admissible(neg, euler, 1e-10));
  CHECK_FALSE(is_admissible(lowp, euler, 1e-10));
  const ConservationLaw burgers = burgers_model();
  const double any[1] = {-1e9};
  CHECK(is_admissible(any, burgers, 1e-10));
}

TEST_CASE("hyperbolicity limiter") {
  const ConservationLaw law = euler_model();
  const MultiElementBasis b(RandomDomain{}, 1, 1);
  const double eps = 1e-10;

  SUBCASE("admissible element is unchanged") {
    const std::vector<double> c{1.0, 0.0, 2.5, 0.1, 0.0, 0.1};
    const auto r = hyperbolicity_limit(c, b, law, eps);
    CHECK(r.theta == 0.0);
    CHECK(r.coeffs == c);
  }

  SUBCASE("density perturbation of amplitude 2") {
    // rho = 1 + 2 xi at the nodes goes negative
    const std::vector<double> c{1.0, 0.0, 2.5, 2.0 / std::sqrt(3.0), 0.0, 0.0};
    const auto r = hyperbolicity_limit(c, b, law, eps);
    CHECK(r.theta > 0.0);
    CHECK(r.theta <= 1.0);
    for (int rho = 0; rho < b.n_nodes(); ++rho) {
      const auto s = evaluate(r.coeffs, b, 0, b.node(0, rho), 3);
      CHECK(law.admissible(s.data(), eps));
    }
    // minimality: a slightly smaller theta is inadmissible somewhere
    const double th = r.theta - 1e-6;
    bool all_ok = true;
    for (int rho = 0; rho < b.n_nodes(); ++rho) {
      std::vector<double> cc = c;
      for (int q = 3; q < 6; ++q) cc[q] *= 1.0 - th;
      const auto s = evaluate(cc, b, 0, b.node(0, rho), 3);
      all_ok = all_ok && law.admissible(s.data(), eps);
    }
    CHECK_FALSE(all_ok);
    for (int q = 0; q < 3; ++q) CHECK(r.coeffs[q] == c[q]);
  }

  SUBCASE("bisection oracle") {
    const std::vector<double> mean{1.0, 0.0, 2.5};
    const std::vector<double> dev{-50.0, 0.0, 0.0};
    // rho = 1 - 50 (1 - theta) >= eps
    CHECK(std::abs(admissibility_theta(mean.data(), dev, 1, law, eps) - (1.0 - (1.0 - eps) / 50.0)) <=
          2 * kBisectionTolerance);
  }

  SUBCASE("theta one collapses to the mean") {
    const std::vector<double> c{1.0, 0.0, 2.5, 1e6, 0.0, 0.0};
    const auto r = hyperbolicity_limit(c, b, law, eps);
    CHECK(r.theta == doctest::Approx(1.0).epsilon(1e-5));
    // the limited density just touches zero at the outer nodes; the bisection
    // tolerance on theta is amplified by the 1e6 coefficient
    const double eta = b.node(0, b.n_nodes() - 1);
    const double dip = r.coeffs[3] * std::sqrt(3.0) * eta;
    CHECK(dip <= 1.0);
    CHECK(dip >= 1.0 - 1e6 * std::sqrt(3.0) * eta * kBisectionTolerance * 2);
  }

  SUBCASE("inadmissible mean throws") {
    const std::vector<double> c{-1.0, 0.0, 2.5, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(hyperbolicity_limit(c, b, law, eps), UnrecoverableState);
  }
}

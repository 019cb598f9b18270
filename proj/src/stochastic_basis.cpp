#include "uqhyp/stochastic_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uqhyp/errors.hpp"

namespace uqhyp {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp;
  if (std::abs(x) < 1.0) {
    dp = n * (p0 - x * p1) / (1.0 - x * x);
  } else {
    dp = 0.5 * n * (n + 1.0) * (x > 0 ? 1.0 : (n % 2 == 0 ? -1.0 : 1.0));
  }
  return {p1, dp};
}

void gauss_legendre_ref(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre_with_derivative(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    auto [p, dp] = legendre_with_derivative(n, z);
    (void)p;
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

void gauss_lobatto_ref(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int N = n - 1;
  x[0] = -1.0;
  x[N] = 1.0;
  for (int i = 1; i < N; ++i) {
    double z = -std::cos(std::numbers::pi * i / N);
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre_with_derivative(N, z);
      const double ddp = (2.0 * z * dp - N * (N + 1.0) * p) / (1.0 - z * z);
      const double dz = dp / ddp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
  }
  for (int i = 0; i < n; ++i) {
    const double p = legendre_with_derivative(N, x[i]).first;
    w[i] = 2.0 / (N * (N + 1.0) * p * p);
  }
}

}  // namespace

QuadratureRule quadrature(QuadKind kind, int n, double a, double b) {
  if (kind == QuadKind::gauss_lobatto && n < 2)
    throw DomainError("gauss_lobatto needs at least 2 nodes");
  if (n < 1) throw DomainError("quadrature needs at least 1 node");
  if (!(a < b)) throw DomainError("quadrature interval must satisfy a < b");
  QuadratureRule r;
  r.kind = kind;
  std::vector<double> x, w;
  if (kind == QuadKind::gauss_legendre)
    gauss_legendre_ref(n, x, w);
  else
    gauss_lobatto_ref(n, x, w);
  double sum = 0.0;
  for (double wi : w) sum += wi;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * x[i];
    r.weights[i] = w[i] / sum;
  }
  if (kind == QuadKind::gauss_lobatto) {
    r.nodes.front() = a;
    r.nodes.back() = b;
  }
  return r;
}

double legendre_orthonormal(int k, double eta) {
  return std::sqrt(2.0 * k + 1.0) * legendre_with_derivative(k, eta).first;
}

int xi_rule_size(int degree, XiRule rule) {
  if (rule == XiRule::lobatto_reduced) return (degree + 2) / 2 + 1;
  return std::max(3, degree + 1);
}

MultiElementBasis::MultiElementBasis(RandomDomain domain, int n_elements, int degree, XiRule rule)
    : domain_(domain), n_elements_(n_elements), degree_(degree), xi_rule_(rule) {
  if (!(domain.xi_left < domain.xi_right))
    throw DomainError("random domain requires xi_left < xi_right");
  if (n_elements < 1) throw DomainError("need at least one random element");
  if (degree < 0) throw DomainError("basis degree must be non-negative");
  width_ = (domain.xi_right - domain.xi_left) / n_elements;
  probs_.assign(n_elements, 1.0 / n_elements);
  rule_ = rule == XiRule::gauss
              ? quadrature(QuadKind::gauss_legendre, xi_rule_size(degree, rule), -1.0, 1.0)
              : quadrature(QuadKind::gauss_lobatto, xi_rule_size(degree, rule), -1.0, 1.0);
  const int q = rule_.size();
  phi_nodes_.resize(static_cast<size_t>(q) * n_modes());
  for (int r = 0; r < q; ++r)
    for (int k = 0; k <= degree; ++k)
      phi_nodes_[r * n_modes() + k] = legendre_orthonormal(k, rule_.nodes[r]);
}

double MultiElementBasis::left(int j) const { return domain_.xi_left + j * width_; }

double MultiElementBasis::right(int j) const {
  return j + 1 == n_elements_ ? domain_.xi_right : domain_.xi_left + (j + 1) * width_;
}

double MultiElementBasis::probability(int j) const { return probs_[j]; }

int MultiElementBasis::element_of(double xi) const {
  int j = static_cast<int>(std::floor((xi - domain_.xi_left) / width_));
  return std::clamp(j, 0, n_elements_ - 1);
}

double MultiElementBasis::to_reference(int j, double xi) const {
  return 2.0 * (xi - left(j)) / (right(j) - left(j)) - 1.0;
}

double MultiElementBasis::eval(int j, int k, double xi) const {
  if (j < 0 || j >= n_elements_) throw DomainError("element index out of range");
  if (k < 0 || k > degree_) throw DomainError("basis degree out of range");
  const double tol = 1e-12 * width_;
  if (xi < left(j) - tol || xi > right(j) + tol)
    throw DomainError("xi=" + std::to_string(xi) + " outside element " + std::to_string(j));
  const double eta = std::clamp(to_reference(j, xi), -1.0, 1.0);
  return legendre_orthonormal(k, eta);
}

double MultiElementBasis::node(int j, int rho) const {
  return center(j) + 0.5 * (right(j) - left(j)) * rule_.nodes[rho];
}

MultiElementBasis build_elements(const RandomDomain& domain, int n, int degree) {
  return MultiElementBasis(domain, n, degree);
}

std::vector<double> project(std::span<const double> samples, const MultiElementBasis& basis,
                            int j, int m) {
  (void)j;
  const int q = basis.n_nodes();
  if (static_cast<int>(samples.size()) != q * m)
    throw DomainError("project: expected " + std::to_string(q * m) + " samples, got " +
                      std::to_string(samples.size()));
  const int K = basis.n_modes();
  std::vector<double> out(static_cast<size_t>(K) * m, 0.0);
  const auto& w = basis.reference_rule().weights;
  for (int r = 0; r < q; ++r)
    for (int k = 0; k < K; ++k) {
      const double pw = basis.phi_at_node(r, k) * w[r];
      for (int c = 0; c < m; ++c) out[k * m + c] += samples[r * m + c] * pw;
    }
  return out;
}

std::vector<double> evaluate(std::span<const double> coeffs, const MultiElementBasis& basis,
                             int j, double xi, int m) {
  std::vector<double> out(m, 0.0);
  for (int k = 0; k < basis.n_modes(); ++k) {
    const double p = basis.eval(j, k, xi);
    for (int c = 0; c < m; ++c) out[c] += coeffs[k * m + c] * p;
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> moments(std::span<const double> coeffs,
                                                            const MultiElementBasis& basis,
                                                            int m) {
  const int K = basis.n_modes();
  std::vector<double> mean(m, 0.0), second(m, 0.0), var(m, 0.0);
  for (int j = 0; j < basis.n_elements(); ++j) {
    const double p = basis.probability(j);
    for (int c = 0; c < m; ++c) {
      const double u0 = coeffs[(j * K) * m + c];
      double s = 0.0;
      for (int k = 0; k < K; ++k) {
        const double uk = coeffs[(j * K + k) * m + c];
        s += uk * uk;
      }
      mean[c] += p * u0;
      second[c] += p * s;
    }
  }
  if (basis.n_elements() == 1) {
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int k = 1; k < K; ++k) s += coeffs[k * m + c] * coeffs[k * m + c];
      var[c] = s;
    }
  } else {
    for (int c = 0; c < m; ++c) var[c] = std::max(0.0, second[c] - mean[c] * mean[c]);
  }
  return {mean, var};
}

void MonomialTransform::to_monomial(const double* u, double* out, int stride) const {
  const int K = static_cast<int>(forward.rows());
  out[0] = u[0];
  for (int mm = 1; mm < K; ++mm) {
    double s = 0.0;
    for (int k = 1; k < K; ++k) s += inverse(k, mm) * u[k * stride];
    out[mm * stride] = s;
  }
}

void MonomialTransform::from_monomial(const double* ut, double* out, int stride) const {
  const int K = static_cast<int>(forward.rows());
  out[0] = ut[0];
  for (int k = 1; k < K; ++k) {
    double s = 0.0;
    for (int mm = 1; mm < K; ++mm) s += forward(mm, k) * ut[mm * stride];
    out[k * stride] = s;
  }
}

MonomialTransform monomial_transform(const MultiElementBasis& basis, int j) {
  (void)j;
  const int K = basis.n_modes();
  const QuadratureRule r = quadrature(QuadKind::gauss_legendre, K + 1, -1.0, 1.0);
  MonomialTransform t;
  t.forward.setZero(K, K);
  for (int mm = 0; mm < K; ++mm) {
    const double centre = (mm == 0) ? 0.0 : (mm % 2 == 0 ? 1.0 / (mm + 1.0) : 0.0);
    for (int k = 0; k < K; ++k) {
      double s = 0.0;
      for (int q = 0; q < r.size(); ++q) {
        const double psi = mm == 0 ? 1.0 : std::pow(r.nodes[q], mm) - centre;
        s += psi * legendre_orthonormal(k, r.nodes[q]) * r.weights[q];
      }
      t.forward(mm, k) = s;
    }
  }
  t.inverse = t.forward.inverse();
  return t;
}

}  // namespace uqhyp

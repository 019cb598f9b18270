//! Multi-element decomposition of the random domain with per-element
//! orthonormal Legendre bases, quadrature rules and moment formulas.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace uqhyp {

enum class Distribution { uniform };

struct RandomDomain {
  double xi_left = -1.0;
  double xi_right = 1.0;
  Distribution distribution = Distribution::uniform;
};

enum class QuadKind { gauss_legendre, gauss_lobatto };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to one
  QuadKind kind = QuadKind::gauss_legendre;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Rule with n nodes mapped into [a,b]; weights are scaled to sum to 1, so
/// for a uniform law they already contain the (conditional) density.
QuadratureRule quadrature(QuadKind kind, int n, double a, double b);

/// Orthonormal Legendre polynomial of degree k on [-1,1] w.r.t. density 1/2.
double legendre_orthonormal(int k, double eta);

/// Element rule used for projection and flux quadrature. gauss has
/// max(3, K+1) Gauss-Legendre nodes and is exact for degree 2K;
/// lobatto_reduced has ceil((K+1)/2)+1 Gauss-Lobatto nodes, which does not
/// integrate the basis products exactly.
enum class XiRule { gauss, lobatto_reduced };

class MultiElementBasis {
 public:
  MultiElementBasis(RandomDomain domain, int n_elements, int degree, XiRule rule = XiRule::gauss);

  const RandomDomain& domain() const { return domain_; }
  int n_elements() const { return n_elements_; }
  int degree() const { return degree_; }
  XiRule xi_rule() const { return xi_rule_; }
  int n_modes() const { return degree_ + 1; }
  double element_width() const { return width_; }

  double left(int j) const;
  double right(int j) const;
  double center(int j) const { return 0.5 * (left(j) + right(j)); }
  double probability(int j) const;
  const std::vector<double>& element_probabilities() const { return probs_; }

  /// Element containing xi; the right end of the domain belongs to the last one.
  int element_of(double xi) const;
  /// Reference coordinate eta in [-1,1] of xi in element j.
  double to_reference(int j, double xi) const;

  /// phi_{k,j}(xi); throws DomainError if xi lies outside element j.
  double eval(int j, int k, double xi) const;

  /// Element quadrature in reference coordinates (nodes in [-1,1]).
  const QuadratureRule& reference_rule() const { return rule_; }
  int n_nodes() const { return rule_.size(); }
  double node(int j, int rho) const;
  /// phi_k at reference node rho (identical for every element).
  double phi_at_node(int rho, int k) const { return phi_nodes_[rho * n_modes() + k]; }

 private:
  RandomDomain domain_;
  int n_elements_;
  int degree_;
  XiRule xi_rule_;
  double width_;
  std::vector<double> probs_;
  QuadratureRule rule_;
  std::vector<double> phi_nodes_;
};

MultiElementBasis build_elements(const RandomDomain& domain, int n, int degree);

/// Number of element quadrature nodes used for a given basis degree.
int xi_rule_size(int degree, XiRule rule = XiRule::gauss);

/// Samples at the element nodes (layout [rho][c]) -> coefficients ([k][c]).
std::vector<double> project(std::span<const double> samples, const MultiElementBasis& basis, int j,
                            int m = 1);

/// Evaluates coefficients ([k][c]) of element j at xi.
std::vector<double> evaluate(std::span<const double> coeffs, const MultiElementBasis& basis, int j,
                             double xi, int m = 1);

/// Mean and variance per component. Coefficients are laid out [j][k][c].
std::pair<std::vector<double>, std::vector<double>> moments(std::span<const double> coeffs,
                                                            const MultiElementBasis& basis,
                                                            int m = 1);

/// Change of basis between the orthonormal coefficients and the coefficients
/// of the centred monomials {1, eta - E[eta], eta^2 - E[eta^2], ...} in the
/// element reference coordinate. The first coefficient is the mean in both.
struct MonomialTransform {
  Eigen::MatrixXd forward;  // V(m,k) = int psi_m phi_k f
  Eigen::MatrixXd inverse;

  /// orthonormal -> monomial, in place on a strided vector
  void to_monomial(const double* u, double* out, int stride = 1) const;
  void from_monomial(const double* ut, double* out, int stride = 1) const;
};

MonomialTransform monomial_transform(const MultiElementBasis& basis, int j = 0);

}  // namespace uqhyp

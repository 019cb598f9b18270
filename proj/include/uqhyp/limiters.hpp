//! Stochastic minmod slope limiter with troubled-element detection and the
//! hyperbolicity (admissibility) limiter.
#pragma once

#include <functional>
#include <vector>

#include "uqhyp/fields.hpp"
#include "uqhyp/models.hpp"
#include "uqhyp/stochastic_basis.hpp"

namespace uqhyp {

struct LimiterConfig {
  double tvbm_M = 0.0;
  double admissibility_eps = 1e-10;
  bool enable_slope = true;
  bool enable_hyperbolicity = false;
};

double minmod(double a, double b, double c);

/// Troubled-element flag for one component. u points to the K+1 orthonormal
/// coefficients of the element (spaced by stride).
bool troubled_cell(const double* u, int stride, double mean_left, double mean_right,
                   const MonomialTransform& transform, const MultiElementBasis& basis,
                   const LimiterConfig& config);

/// Component-wise flags for a coefficient block laid out [k][c].
std::vector<bool> troubled_cell(const std::vector<double>& u_block,
                                const std::vector<double>& mean_left,
                                const std::vector<double>& mean_right,
                                const MonomialTransform& transform,
                                const MultiElementBasis& basis, const LimiterConfig& config);

struct SlopeLimitStats {
  long long troubled = 0;
};

/// Limits every troubled element in place. Element means are never modified.
SlopeLimitStats slope_limit(GpcField& field, const MultiElementBasis& basis,
                            const MonomialTransform& transform, const LimiterConfig& config);

/// sup |d^2 u0/dxi^2| over points with d u0/dxi = 0, sampled on an n x n grid.
double compute_tvbm_M(const std::function<double(double x, double xi)>& u0, double x_left,
                      double x_right, double xi_left, double xi_right, int n = 201);

bool is_admissible(const double* state, const ConservationLaw& law, double eps);

struct HyperbolicityResult {
  std::vector<double> coeffs;  // [k][c]
  double theta = 0.0;
};

/// Scales all modes k >= 1 by (1 - theta) with the smallest theta such that
/// the element is admissible at every xi node. Throws UnrecoverableState if
/// the mean itself is inadmissible.
HyperbolicityResult hyperbolicity_limit(const std::vector<double>& coeffs,
                                        const MultiElementBasis& basis,
                                        const ConservationLaw& law, double eps);

/// Smallest theta in [0,1] with mean + (1-theta) dev[n] admissible for all n.
/// dev is laid out [n][c].
double admissibility_theta(const double* mean, const std::vector<double>& dev, int n_points,
                           const ConservationLaw& law, double eps);

constexpr double kBisectionTolerance = 1e-10;

}  // namespace uqhyp

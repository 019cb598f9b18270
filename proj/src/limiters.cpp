#include "uqhyp/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uqhyp/errors.hpp"

namespace uqhyp {

double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

namespace {

// Monomial slope of one component and its limited value; returns true if troubled.
bool limited_slope(const double* u, int stride, double mean_left, double mean_right,
                   const MonomialTransform& transform, const MultiElementBasis& basis,
                   const LimiterConfig& config, std::vector<double>& mono, double& slope) {
  const int K = basis.n_modes();
  mono.assign(K, 0.0);
  std::vector<double> tmp(K);
  for (int k = 0; k < K; ++k) tmp[k] = u[k * stride];
  transform.to_monomial(tmp.data(), mono.data());
  if (K < 2) return false;
  const double u0 = u[0];
  slope = minmod(mono[1], mean_right - u0, u0 - mean_left);
  bool tc = mono[1] != slope;
  if (tc && basis.degree() >= 2) {
    const double w = basis.element_width();
    tc = std::abs(mono[1]) >= config.tvbm_M * w * w;
  }
  return tc;
}

}  // namespace

bool troubled_cell(const double* u, int stride, double mean_left, double mean_right,
                   const MonomialTransform& transform, const MultiElementBasis& basis,
                   const LimiterConfig& config) {
  std::vector<double> mono;
  double slope = 0.0;
  return limited_slope(u, stride, mean_left, mean_right, transform, basis, config, mono, slope);
}

std::vector<bool> troubled_cell(const std::vector<double>& u_block,
                                const std::vector<double>& mean_left,
                                const std::vector<double>& mean_right,
                                const MonomialTransform& transform,
                                const MultiElementBasis& basis, const LimiterConfig& config) {
  const int m = static_cast<int>(mean_left.size());
  std::vector<bool> out(m);
  for (int c = 0; c < m; ++c)
    out[c] = troubled_cell(u_block.data() + c, m, mean_left[c], mean_right[c], transform, basis,
                           config);
  return out;
}

SlopeLimitStats slope_limit(GpcField& field, const MultiElementBasis& basis,
                            const MonomialTransform& transform, const LimiterConfig& config) {
  SlopeLimitStats stats;
  const int K = field.n_modes;
  if (K < 2) return stats;
  const int ne = field.n_elem, m = field.m;
  std::vector<double> mono, means(ne), limited(K);
  for (int i = 0; i < field.n_x; ++i) {
    for (int c = 0; c < m; ++c) {
      for (int j = 0; j < ne; ++j) means[j] = field(0, i, j, c);
      for (int j = 0; j < ne; ++j) {
        const double ml = means[j > 0 ? j - 1 : 0];
        const double mr = means[j + 1 < ne ? j + 1 : ne - 1];
        double* u = field.block(i, j) + c;
        double slope = 0.0;
        if (!limited_slope(u, m, ml, mr, transform, basis, config, mono, slope)) continue;
        ++stats.troubled;
        std::fill(mono.begin() + 1, mono.end(), 0.0);
        mono[1] = slope;
        transform.from_monomial(mono.data(), limited.data());
        for (int k = 1; k < K; ++k) u[k * m] = limited[k];
      }
    }
  }
  return stats;
}

double compute_tvbm_M(const std::function<double(double, double)>& u0, double x_left,
                      double x_right, double xi_left, double xi_right, int n) {
  if (n < 5) throw DomainError("compute_tvbm_M: grid too coarse");
  const double h = (xi_right - xi_left) / (n - 1);
  std::vector<double> v(n), d1(n), d2(n);
  double M = 0.0;
  for (int a = 0; a < n; ++a) {
    const double x = x_left + (x_right - x_left) * a / (n - 1);
    for (int b = 0; b < n; ++b) v[b] = u0(x, xi_left + h * b);
    for (int b = 1; b + 1 < n; ++b) {
      d1[b] = (v[b + 1] - v[b - 1]) / (2.0 * h);
      d2[b] = (v[b + 1] - 2.0 * v[b] + v[b - 1]) / (h * h);
    }
    for (int b = 1; b + 2 < n; ++b) {
      if (d1[b] * d1[b + 1] < 0.0) {
        // linear interpolation of d2 to the zero of d1
        const double s = d1[b] / (d1[b] - d1[b + 1]);
        M = std::max(M, std::abs((1.0 - s) * d2[b] + s * d2[b + 1]));
      } else if (d1[b] == 0.0 && b > 1 && d1[b - 1] * d1[b + 1] < 0.0) {
        M = std::max(M, std::abs(d2[b]));
      }
    }
  }
  return M;
}

bool is_admissible(const double* state, const ConservationLaw& law, double eps) {
  return law.admissible(state, eps);
}

double admissibility_theta(const double* mean, const std::vector<double>& dev, int n_points,
                           const ConservationLaw& law, double eps) {
  const int m = law.m;
  if (!law.admissible(mean, eps)) {
    std::ostringstream os;
    os << "hyperbolicity limiter: inadmissible mean state (";
    for (int c = 0; c < m; ++c) os << (c ? ", " : "") << mean[c];
    os << ")";
    throw UnrecoverableState(os.str());
  }
  std::vector<double> s(m);
  auto ok = [&](double theta) {
    for (int n = 0; n < n_points; ++n) {
      for (int c = 0; c < m; ++c) s[c] = mean[c] + (1.0 - theta) * dev[n * m + c];
      if (!law.admissible(s.data(), eps)) return false;
    }
    return true;
  };
  if (ok(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

HyperbolicityResult hyperbolicity_limit(const std::vector<double>& coeffs,
                                        const MultiElementBasis& basis,
                                        const ConservationLaw& law, double eps) {
  const int K = basis.n_modes(), m = law.m, q = basis.n_nodes();
  std::vector<double> dev(static_cast<size_t>(q) * m, 0.0);
  for (int r = 0; r < q; ++r)
    for (int k = 1; k < K; ++k)
      for (int c = 0; c < m; ++c) dev[r * m + c] += coeffs[k * m + c] * basis.phi_at_node(r, k);
  HyperbolicityResult res;
  res.coeffs = coeffs;
  res.theta = admissibility_theta(coeffs.data(), dev, q, law, eps);
  if (res.theta > 0.0)
    for (int k = 1; k < K; ++k)
      for (int c = 0; c < m; ++c) res.coeffs[k * m + c] *= (1.0 - res.theta);
  return res;
}

}  // namespace uqhyp

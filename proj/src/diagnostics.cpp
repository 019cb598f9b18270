#include "uqhyp/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "uqhyp/errors.hpp"

namespace uqhyp {

CellSampler field_sampler(const GpcField& field, const MultiElementBasis& basis) {
  return [&field, &basis](int i, double xi, double* out) {
    const int j = basis.element_of(xi);
    for (int c = 0; c < field.m; ++c) out[c] = 0.0;
    for (int k = 0; k < field.n_modes; ++k) {
      const double phi = basis.eval(j, k, xi);
      for (int c = 0; c < field.m; ++c) out[c] += field(k, i, j, c) * phi;
    }
  };
}

CellSampler exact_sampler(const StateFn& exact, double t, const Mesh& mesh,
                          const QuadratureRule& x_rule, int m) {
  return [exact, t, mesh, x_rule, m](int i, double xi, double* out) {
    double s[8];
    const double dx = mesh.dx(), a = mesh.x_left + i * dx;
    std::fill(out, out + m, 0.0);
    for (int q = 0; q < x_rule.size(); ++q) {
      exact(t, a + dx * x_rule.nodes[q], xi, s);
      for (int c = 0; c < m; ++c) out[c] += x_rule.weights[q] * s[c];
    }
  };
}

MomentProfile field_moments(const GpcField& field, const MultiElementBasis& basis) {
  MomentProfile p;
  p.n_x = field.n_x;
  p.m = field.m;
  p.mean.resize(static_cast<std::size_t>(p.n_x) * p.m);
  p.var.resize(p.mean.size());
  const std::size_t block = static_cast<std::size_t>(field.n_elem) * field.n_modes * field.m;
  for (int i = 0; i < field.n_x; ++i) {
    const std::span<const double> coeffs(field.block(i, 0), block);
    const auto [mean, var] = moments(coeffs, basis, field.m);
    for (int c = 0; c < p.m; ++c) {
      p.mean[i * p.m + c] = mean[c];
      p.var[i * p.m + c] = var[c];
    }
  }
  return p;
}

MomentProfile sampled_moments(const CellSampler& s, int n_x, int m, const MultiElementBasis& basis,
                              int n) {
  MomentProfile p;
  p.n_x = n_x;
  p.m = m;
  p.mean.assign(static_cast<std::size_t>(n_x) * m, 0.0);
  std::vector<double> second(p.mean.size(), 0.0);
  std::vector<double> u(std::max(m, 8));
  for (int j = 0; j < basis.n_elements(); ++j) {
    const QuadratureRule r = quadrature(QuadKind::gauss_legendre, n, basis.left(j), basis.right(j));
    const double pj = basis.probability(j);
    for (int q = 0; q < r.size(); ++q)
      for (int i = 0; i < n_x; ++i) {
        s(i, r.nodes[q], u.data());
        for (int c = 0; c < m; ++c) {
          p.mean[i * m + c] += pj * r.weights[q] * u[c];
          second[i * m + c] += pj * r.weights[q] * u[c] * u[c];
        }
      }
  }
  p.var.resize(p.mean.size());
  for (std::size_t k = 0; k < p.mean.size(); ++k)
    p.var[k] = std::max(0.0, second[k] - p.mean[k] * p.mean[k]);
  return p;
}

std::pair<double, double> l1_error(const MomentProfile& a, const MomentProfile& b, double dx,
                                   int component) {
  if (a.n_x != b.n_x || a.m != b.m) throw DomainError("moment profiles differ in shape");
  double em = 0.0, ev = 0.0;
  for (int i = 0; i < a.n_x; ++i) {
    const int k = i * a.m + component;
    em += std::abs(a.mean[k] - b.mean[k]);
    ev += std::abs(a.var[k] - b.var[k]);
  }
  return {em * dx, ev * dx};
}

double tv_x(const CellSampler& s, int n_x, int m, const QuadratureRule& xi_rule, int component) {
  std::vector<double> prev(std::max(m, 8)), cur(prev.size());
  double tv = 0.0;
  for (int q = 0; q < xi_rule.size(); ++q) {
    double row = 0.0;
    s(0, xi_rule.nodes[q], prev.data());
    for (int i = 1; i < n_x; ++i) {
      s(i, xi_rule.nodes[q], cur.data());
      row += std::abs(cur[component] - prev[component]);
      std::swap(prev, cur);
    }
    tv += xi_rule.weights[q] * row;
  }
  return tv;
}

double tv_xi(const CellSampler& s, int n_x, int m, double dx, const std::vector<double>& xi_nodes,
             int component) {
  std::vector<double> prev(std::max(m, 8)), cur(prev.size());
  double tv = 0.0;
  for (int i = 0; i < n_x; ++i) {
    s(i, xi_nodes.front(), prev.data());
    for (std::size_t r = 1; r < xi_nodes.size(); ++r) {
      s(i, xi_nodes[r], cur.data());
      tv += std::abs(cur[component] - prev[component]);
      std::swap(prev, cur);
    }
  }
  return tv * dx;
}

int reference_element(const MultiElementBasis& basis) {
  const RandomDomain& d = basis.domain();
  return basis.element_of(0.5 * (d.xi_left + d.xi_right));
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = a + (b - a) * k / (n - 1);
  x.back() = b;
  return x;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& resolutions) {
  if (errors.size() != resolutions.size()) throw DomainError("eoc: length mismatch");
  std::vector<double> out;
  for (std::size_t k = 0; k < errors.size(); ++k)
    if (!(errors[k] > 0.0)) throw DomainError("eoc undefined for non-positive error");
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (!(resolutions[k] > resolutions[k - 1])) throw DomainError("eoc: resolutions must increase");
    out.push_back(std::log(errors[k - 1] / errors[k]) / std::log(resolutions[k] / resolutions[k - 1]));
  }
  return out;
}

double fitted_order(const std::vector<double>& errors, const std::vector<double>& resolutions) {
  if (errors.size() != resolutions.size() || errors.size() < 2)
    throw DomainError("fitted_order needs at least two matching points");
  const double n = static_cast<double>(errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k] > 0.0)) throw DomainError("order undefined for non-positive error");
    const double x = std::log(resolutions[k]), y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CellSampler SampledReference::sampler() const {
  return [this](int i, double xi, double* out) {
    const auto it = samples.find(xi);
    if (it == samples.end()) throw DomainError("reference not sampled at xi=" + std::to_string(xi));
    std::copy(it->second.begin() + i * m, it->second.begin() + (i + 1) * m, out);
  };
}

SampledReference reference_solution(const Problem& problem, int k_d, double cfl, double t_end,
                                    const std::vector<double>& xi, int refine) {
  std::vector<double> nodes(xi);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const int n = problem.mesh.n_cells, m = problem.law.m;
  const Mesh fine(problem.mesh.x_left, problem.mesh.x_right, n * refine);
  std::vector<std::vector<double>> out(nodes.size());
  parallel_for(static_cast<int>(nodes.size()), [&](int s) {
    const std::vector<double> f = deterministic_solve(problem.law, fine, nodes[s], k_d, cfl, t_end,
                                                      problem.boundary, problem.initial);
    std::vector<double> coarse(static_cast<std::size_t>(n) * m, 0.0);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < refine; ++r)
        for (int c = 0; c < m; ++c) coarse[i * m + c] += f[(i * refine + r) * m + c] / refine;
    out[s] = std::move(coarse);
  });
  SampledReference ref;
  ref.n_x = n;
  ref.m = m;
  for (std::size_t s = 0; s < nodes.size(); ++s) ref.samples.emplace(nodes[s], std::move(out[s]));
  return ref;
}

int worker_threads() {
  if (const char* env = std::getenv("UQHYP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& f) {
  const int workers = std::min(worker_threads(), n);
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int k = next++; k < n; k = next++) {
        try {
          f(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double percentage_above(double tv, double tv_ref) { return 100.0 * (tv / tv_ref - 1.0); }

}  // namespace uqhyp

#include "uqhyp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uqhyp/errors.hpp"

namespace uqhyp {

Mesh::Mesh(double a, double b, int n) : x_left(a), x_right(b), n_cells(n) {
  if (!(a < b)) throw DomainError("mesh requires x_left < x_right");
  if (n < 3) throw DomainError("mesh requires at least 3 cells");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::sg: return "sg";
    case Scheme::wenosg: return "wenosg";
    case Scheme::weno2d: return "weno2d";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "sg") return Scheme::sg;
  if (s == "wenosg") return Scheme::wenosg;
  if (s == "weno2d") return Scheme::weno2d;
  throw ConfigError("unknown scheme '" + s + "' (expected sg, wenosg or weno2d)");
}

void lax_friedrichs(const ConservationLaw& law, const double* um, const double* up, double xi,
                    double c, double* out) {
  double fm[8], fp[8];
  law.flux(um, xi, fm);
  law.flux(up, xi, fp);
  for (int k = 0; k < law.m; ++k) out[k] = 0.5 * (fm[k] + fp[k] - c * (up[k] - um[k]));
}

namespace {

// Endpoint nodes are moved inside the cell so that data with a jump exactly
// at an interface is sampled from the correct side.
std::vector<double> cell_nodes(const QuadratureRule& rule, double a, double dx) {
  std::vector<double> x(rule.size());
  for (int q = 0; q < rule.size(); ++q) x[q] = a + dx * rule.nodes[q];
  const double nudge = 1e-12 * dx;
  x.front() = std::max(x.front(), a + nudge);
  x.back() = std::min(x.back(), a + dx - nudge);
  return x;
}

// Cell averages of initial data; an even Gauss rule splits a jump at the
// cell centre or at a face exactly.
const QuadratureRule& initial_rule() {
  static const QuadratureRule r = quadrature(QuadKind::gauss_legendre, 16, 0.0, 1.0);
  return r;
}

std::string state_string(const double* u, int m) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int c = 0; c < m; ++c) os << (c ? ", " : "") << u[c];
  os << ")";
  return os.str();
}

void record_theta(LimiterStats* stats, double theta) {
  if (!stats || theta <= 0.0) return;
  ++stats->hyperbolicity_active;
  stats->theta_max = std::max(stats->theta_max, theta);
  const int bin = std::min(9, static_cast<int>(theta * 10.0));
  ++stats->theta_histogram[bin];
}

}  // namespace

Solver::Solver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(config),
      basis_(problem_.domain, config.n_xi, config.k_xi, config.xi_rule),
      transform_(monomial_transform(basis_)),
      x_rule_(quadrature(QuadKind::gauss_lobatto, config.q_d + 1, 0.0, 1.0)) {
  if (config_.k_d != 0 && config_.k_d != 2) throw DomainError("k_d must be 0 or 2");
  if (!(config_.cfl > 0.0 && config_.cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  if (config_.n_x != problem_.mesh.n_cells) throw DomainError("mesh and config disagree on n_x");
  const int rk = config_.effective_rk_order();
  if (rk < 1 || rk > 3) throw DomainError("rk_order must be 1, 2 or 3");
  const bool lp = problem_.boundary.left.kind == BcKind::periodic;
  const bool rp = problem_.boundary.right.kind == BcKind::periodic;
  if (lp != rp) throw DomainError("periodic boundaries must be set on both sides");
  if (config_.scheme == Scheme::sg) config_.limiters.enable_slope = false;
}

void Solver::fill_ghosts(double* ext, double t, double xi) const {
  const int n = problem_.mesh.n_cells, m = problem_.law.m;
  const double dx = problem_.mesh.dx();
  auto cell = [&](int i) { return ext + (i + 2) * m; };
  auto copy = [&](int dst, int src) { std::copy(cell(src), cell(src) + m, cell(dst)); };
  const BoundarySide& L = problem_.boundary.left;
  const BoundarySide& R = problem_.boundary.right;
  switch (L.kind) {
    case BcKind::periodic: copy(-1, n - 1); copy(-2, n - 2); break;
    case BcKind::extrapolation: copy(-1, 0); copy(-2, 0); break;
    case BcKind::dirichlet:
      L.value(t, problem_.mesh.x_left - 0.5 * dx, xi, cell(-1));
      L.value(t, problem_.mesh.x_left - 1.5 * dx, xi, cell(-2));
      break;
  }
  switch (R.kind) {
    case BcKind::periodic: copy(n, 0); copy(n + 1, 1); break;
    case BcKind::extrapolation: copy(n, n - 1); copy(n + 1, n - 1); break;
    case BcKind::dirichlet:
      R.value(t, problem_.mesh.x_right + 0.5 * dx, xi, cell(n));
      R.value(t, problem_.mesh.x_right + 1.5 * dx, xi, cell(n + 1));
      break;
  }
}

double Solver::nodal_rhs(std::vector<double>& rows, const std::vector<double>& row_xi,
                         int q_per_elem, double t, std::vector<double>& res,
                         LimiterStats* stats) const {
  const ConservationLaw& law = problem_.law;
  const int n = problem_.mesh.n_cells, m = law.m;
  const int n_rows = static_cast<int>(row_xi.size());
  const double dx = problem_.mesh.dx();
  const double eps = config_.limiters.admissibility_eps;
  const std::size_t ext_len = static_cast<std::size_t>(n + 4) * m;
  const std::size_t if_len = static_cast<std::size_t>(n + 1) * m;
  std::vector<double> minus(n_rows * if_len), plus(n_rows * if_len);

  double c = 0.0;
  for (int r = 0; r < n_rows; ++r) {
    double* ext = rows.data() + r * ext_len;
    const double xi = row_xi[r];
    fill_ghosts(ext, t, xi);
    if (law.constrained) {
      for (int i = 0; i < n; ++i) {
        const double* u = ext + (i + 2) * m;
        if (!law.admissible(u, eps)) {
          std::ostringstream os;
          os << "inadmissible state " << state_string(u, m) << " at cell i=" << i
             << ", element j=" << r / q_per_elem << ", node rho=" << r % q_per_elem
             << ", t=" << t;
          throw UnrecoverableState(os.str());
        }
      }
    }
    double* mi = minus.data() + r * if_len;
    double* pl = plus.data() + r * if_len;
    for (int k = 0; k < m; ++k)
      reconstruct_traces(ext + k, n, m, dx, mi + k, pl + k, config_.k_d == 0);
    if (law.constrained && config_.k_d != 0) {
      for (int cell = -1; cell <= n; ++cell) {
        const bool bad_left = cell >= 0 && !law.admissible(pl + cell * m, eps);
        const bool bad_right = cell + 1 <= n && !law.admissible(mi + (cell + 1) * m, eps);
        if (!bad_left && !bad_right) continue;
        const double* u = ext + (cell + 2) * m;
        if (!config_.limiters.enable_hyperbolicity) {
          const double* v = bad_left ? pl + cell * m : mi + (cell + 1) * m;
          std::ostringstream os;
          os << "inadmissible trace " << state_string(v, m) << " of cell i="
             << (bad_left ? cell : cell + 1) << ", element j=" << r / q_per_elem
             << ", node rho=" << r % q_per_elem << ", t=" << t;
          throw UnrecoverableState(os.str());
        }
        if (cell >= 0) std::copy(u, u + m, pl + cell * m);
        if (cell + 1 <= n) std::copy(u, u + m, mi + (cell + 1) * m);
        if (stats) ++stats->trace_fallbacks;
      }
    }
    for (int i = 0; i < n; ++i) c = std::max(c, law.max_wavespeed(ext + (i + 2) * m, xi));
    for (int f = 0; f <= n; ++f) {
      c = std::max(c, law.max_wavespeed(mi + f * m, xi));
      c = std::max(c, law.max_wavespeed(pl + f * m, xi));
    }
  }

  res.assign(static_cast<std::size_t>(n_rows) * n * m, 0.0);
  std::vector<double> flux(if_len);
  for (int r = 0; r < n_rows; ++r) {
    const double xi = row_xi[r];
    const double* mi = minus.data() + r * if_len;
    const double* pl = plus.data() + r * if_len;
    for (int f = 0; f <= n; ++f) lax_friedrichs(law, mi + f * m, pl + f * m, xi, c, &flux[f * m]);
    double* out = res.data() + static_cast<std::size_t>(r) * n * m;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) out[i * m + k] = -(flux[(i + 1) * m + k] - flux[i * m + k]) / dx;
  }

  if (law.source) {
    std::vector<double> s(m);
    for (int r = 0; r < n_rows; ++r) {
      double* out = res.data() + static_cast<std::size_t>(r) * n * m;
      for (int i = 0; i < n; ++i) {
        const double a = problem_.mesh.x_left + i * dx;
        for (int q = 0; q < x_rule_.size(); ++q) {
          law.source(t, a + dx * x_rule_.nodes[q], row_xi[r], s.data());
          for (int k = 0; k < m; ++k) out[i * m + k] += x_rule_.weights[q] * s[k];
        }
      }
    }
  }
  return c;
}

GpcField Solver::initialize() const {
  const int n = problem_.mesh.n_cells, m = problem_.law.m;
  const int K = basis_.n_modes(), ne = basis_.n_elements(), q = basis_.n_nodes();
  const double dx = problem_.mesh.dx();
  const auto& wr = basis_.reference_rule().weights;
  const QuadratureRule& xr = initial_rule();
  GpcField u(K, n, ne, m);
  std::vector<double> s(m);
  for (int i = 0; i < n; ++i) {
    const auto xs = cell_nodes(xr, problem_.mesh.x_left + i * dx, dx);
    for (int j = 0; j < ne; ++j)
      for (int r = 0; r < q; ++r) {
        const double xi = basis_.node(j, r);
        for (int a = 0; a < xr.size(); ++a) {
          problem_.initial(0.0, xs[a], xi, s.data());
          for (int k = 0; k < K; ++k) {
            const double w = xr.weights[a] * wr[r] * basis_.phi_at_node(r, k);
            for (int c = 0; c < m; ++c) u(k, i, j, c) += w * s[c];
          }
        }
      }
  }
  return u;
}

CellMeanField Solver::initialize_means() const {
  const GpcField u = initialize();
  CellMeanField out(u.n_x, u.n_elem, u.m);
  for (int i = 0; i < u.n_x; ++i)
    for (int j = 0; j < u.n_elem; ++j)
      for (int c = 0; c < u.m; ++c) out(i, j, c) = u(0, i, j, c);
  return out;
}

namespace {

// Extended nodal rows of a gPC field; row r = j * q + rho.
void gpc_to_rows(const GpcField& u, const MultiElementBasis& basis, std::vector<double>& rows,
                 std::vector<double>& row_xi) {
  const int n = u.n_x, m = u.m, K = u.n_modes, ne = u.n_elem, q = basis.n_nodes();
  const std::size_t ext_len = static_cast<std::size_t>(n + 4) * m;
  rows.assign(ext_len * ne * q, 0.0);
  row_xi.resize(ne * q);
  for (int j = 0; j < ne; ++j)
    for (int r = 0; r < q; ++r) {
      const int row = j * q + r;
      row_xi[row] = basis.node(j, r);
      double* ext = rows.data() + row * ext_len;
      for (int i = 0; i < n; ++i) {
        const double* b = u.block(i, j);
        for (int c = 0; c < m; ++c) {
          double v = 0.0;
          for (int k = 0; k < K; ++k) v += b[k * m + c] * basis.phi_at_node(r, k);
          ext[(i + 2) * m + c] = v;
        }
      }
    }
}

}  // namespace

void Solver::check_nodes(const GpcField& u) const {
  if (!problem_.law.constrained) return;
  std::vector<double> rows, row_xi;
  gpc_to_rows(u, basis_, rows, row_xi);
  const int n = u.n_x, m = u.m, q = basis_.n_nodes();
  const std::size_t ext_len = static_cast<std::size_t>(n + 4) * m;
  for (std::size_t r = 0; r < row_xi.size(); ++r)
    for (int i = 0; i < n; ++i) {
      const double* s = rows.data() + r * ext_len + (i + 2) * m;
      if (!problem_.law.admissible(s, config_.limiters.admissibility_eps)) {
        std::ostringstream os;
        os << "inadmissible state " << state_string(s, m) << " at cell i=" << i
           << ", element j=" << r / q << ", node rho=" << r % q;
        throw UnrecoverableState(os.str());
      }
    }
}

double Solver::global_viscosity(const GpcField& u, double t) const {
  std::vector<double> rows, row_xi, res;
  gpc_to_rows(u, basis_, rows, row_xi);
  return nodal_rhs(rows, row_xi, basis_.n_nodes(), t, res);
}

GpcField Solver::rhs_wenosg(const GpcField& u, double t, double* c_out) const {
  std::vector<double> rows, row_xi, res;
  gpc_to_rows(u, basis_, rows, row_xi);
  const double c = nodal_rhs(rows, row_xi, basis_.n_nodes(), t, res);
  if (c_out) *c_out = c;
  const int n = u.n_x, m = u.m, K = u.n_modes, ne = u.n_elem, q = basis_.n_nodes();
  const auto& w = basis_.reference_rule().weights;
  GpcField out(K, n, ne, m);
  for (int j = 0; j < ne; ++j)
    for (int r = 0; r < q; ++r) {
      const double* rr = res.data() + static_cast<std::size_t>(j * q + r) * n * m;
      for (int i = 0; i < n; ++i) {
        double* b = out.block(i, j);
        for (int k = 0; k < K; ++k) {
          const double pw = w[r] * basis_.phi_at_node(r, k);
          for (int cc = 0; cc < m; ++cc) b[k * m + cc] += pw * rr[i * m + cc];
        }
      }
    }
  return out;
}

void Solver::limit(GpcField& u, LimiterStats* stats) const {
  const LimiterConfig& lc = config_.limiters;
  if (config_.scheme != Scheme::sg && lc.enable_slope) {
    const SlopeLimitStats s = slope_limit(u, basis_, transform_, lc);
    if (stats) stats->troubled += s.troubled;
  }
  if (lc.enable_hyperbolicity && problem_.law.constrained) {
    const int K = u.n_modes, m = u.m;
    std::vector<double> block(static_cast<std::size_t>(K) * m);
    for (int i = 0; i < u.n_x; ++i)
      for (int j = 0; j < u.n_elem; ++j) {
        double* b = u.block(i, j);
        std::copy(b, b + K * m, block.begin());
        const HyperbolicityResult h =
            hyperbolicity_limit(block, basis_, problem_.law, lc.admissibility_eps);
        if (h.theta > 0.0) {
          std::copy(h.coeffs.begin() + m, h.coeffs.end(), b + m);
          record_theta(stats, h.theta);
        }
      }
  }
}

void Solver::reconstruct_2d(const CellMeanField& u, double t, std::vector<Poly2D>& polys,
                            LimiterStats* stats) const {
  const ConservationLaw& law = problem_.law;
  const int n = u.n_x, ne = u.n_elem, m = u.m, q = basis_.n_nodes();
  const double dx = problem_.mesh.dx();
  const double eps = config_.limiters.admissibility_eps;
  const auto& wr = basis_.reference_rule().weights;
  const int nj = ne + 2;
  // extended grid: x cells -2..n+1, elements -1..ne
  std::vector<double> ext(static_cast<std::size_t>(n + 4) * nj * m);
  auto at = [&](int i, int j) { return ext.data() + ((i + 2) * nj + (j + 1)) * m; };
  std::vector<double> row(static_cast<std::size_t>(n + 4) * m), s(m);
  for (int j = 0; j < ne; ++j) {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < m; ++c) row[(i + 2) * m + c] = u(i, j, c);
    const bool dir = problem_.boundary.left.kind == BcKind::dirichlet ||
                     problem_.boundary.right.kind == BcKind::dirichlet;
    if (dir) {
      // ghost x-xi means of Dirichlet data by the element rule
      std::vector<double> acc(static_cast<std::size_t>(n + 4) * m, 0.0);
      for (int r = 0; r < q; ++r) {
        std::vector<double> tmp(row);
        fill_ghosts(tmp.data(), t, basis_.node(j, r));
        for (int g : {0, 1, n + 2, n + 3})
          for (int c = 0; c < m; ++c) acc[g * m + c] += wr[r] * tmp[g * m + c];
      }
      fill_ghosts(row.data(), t, basis_.center(j));
      for (int g : {0, 1, n + 2, n + 3}) {
        const BoundarySide& side = g < 2 ? problem_.boundary.left : problem_.boundary.right;
        if (side.kind == BcKind::dirichlet)
          for (int c = 0; c < m; ++c) row[g * m + c] = acc[g * m + c];
      }
    } else {
      fill_ghosts(row.data(), t, basis_.center(j));
    }
    for (int i = -2; i < n + 2; ++i)
      std::copy(row.data() + (i + 2) * m, row.data() + (i + 3) * m, at(i, j));
  }
  for (int i = -2; i < n + 2; ++i) {
    std::copy(at(i, 0), at(i, 0) + m, at(i, -1));
    std::copy(at(i, ne - 1), at(i, ne - 1) + m, at(i, ne));
  }

  polys.assign(static_cast<std::size_t>(n + 2) * ne * m, Poly2D{});
  auto poly = [&](int i, int j, int c) -> Poly2D& {
    return polys[((i + 1) * ne + j) * static_cast<std::size_t>(m) + c];
  };
  std::array<std::array<double, 3>, 3> st;
  for (int i = -1; i <= n; ++i)
    for (int j = 0; j < ne; ++j)
      for (int c = 0; c < m; ++c) {
        if (config_.k_d == 0) {
          Poly2D p;
          p.c[0][0] = at(i, j)[c];
          poly(i, j, c) = p;
          continue;
        }
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) st[a][b] = at(i + a - 1, j + b - 1)[c];
        poly(i, j, c) = cwenoz_2d(st, dx);
      }

  if (!law.constrained) return;
  const bool hyp = config_.limiters.enable_hyperbolicity;
  // evaluation points: x-averages and both x-traces at every xi node
  const int npts = 3 * q;
  std::vector<double> dev(static_cast<std::size_t>(npts) * m), mean(m);
  for (int i = -1; i <= n; ++i)
    for (int j = 0; j < ne; ++j) {
      for (int c = 0; c < m; ++c) mean[c] = at(i, j)[c];
      for (int r = 0; r < q; ++r) {
        const double Y = 0.5 * basis_.reference_rule().nodes[r];
        for (int c = 0; c < m; ++c) {
          const Poly2D& p = poly(i, j, c);
          dev[(3 * r) * m + c] = p.x_average(Y) - mean[c];
          dev[(3 * r + 1) * m + c] = p(-0.5, Y) - mean[c];
          dev[(3 * r + 2) * m + c] = p(0.5, Y) - mean[c];
        }
      }
      if (hyp) {
        const double theta = admissibility_theta(mean.data(), dev, npts, law, eps);
        if (theta > 0.0) {
          for (int c = 0; c < m; ++c) {
            Poly2D& p = poly(i, j, c);
            for (auto& rowc : p.c)
              for (double& v : rowc) v *= (1.0 - theta);
            p.c[0][0] += theta * mean[c];
          }
          if (i >= 0 && i < n) record_theta(stats, theta);
        }
        continue;
      }
      bool bad_trace = false;
      for (int r = 0; r < q; ++r) {
        for (int c = 0; c < m; ++c) s[c] = mean[c] + dev[(3 * r) * m + c];
        if (i >= 0 && i < n && !law.admissible(s.data(), eps)) {
          std::ostringstream os;
          os << "inadmissible state " << state_string(s.data(), m) << " at cell i=" << i
             << ", element j=" << j << ", node rho=" << r << ", t=" << t;
          throw UnrecoverableState(os.str());
        }
        for (int side = 1; side <= 2; ++side) {
          for (int c = 0; c < m; ++c) s[c] = mean[c] + dev[(3 * r + side) * m + c];
          if (!law.admissible(s.data(), eps)) bad_trace = true;
        }
      }
      if (bad_trace) {
        if (i >= 0 && i < n) {
          std::ostringstream os;
          os << "inadmissible trace of cell i=" << i << ", element j=" << j << ", t=" << t;
          throw UnrecoverableState(os.str());
        }
        for (int c = 0; c < m; ++c) {
          Poly2D p;
          p.c[0][0] = mean[c];
          poly(i, j, c) = p;
        }
        if (stats) ++stats->trace_fallbacks;
      }
    }
}

CellMeanField Solver::rhs_weno2d(const CellMeanField& u, double t, double* c_out) const {
  const ConservationLaw& law = problem_.law;
  const int n = u.n_x, ne = u.n_elem, m = u.m, q = basis_.n_nodes();
  const double dx = problem_.mesh.dx();
  const auto& wr = basis_.reference_rule().weights;
  std::vector<Poly2D> polys;
  reconstruct_2d(u, t, polys, nullptr);
  auto poly = [&](int i, int j, int c) -> const Poly2D& {
    return polys[((i + 1) * ne + j) * static_cast<std::size_t>(m) + c];
  };
  // traces per (interface f, element j, node r)
  const std::size_t len = static_cast<std::size_t>(n + 1) * ne * q * m;
  std::vector<double> minus(len), plus(len);
  auto tidx = [&](int f, int j, int r) { return ((f * ne + j) * q + r) * static_cast<std::size_t>(m); };
  double c = 0.0;
  std::vector<double> s(m);
  for (int j = 0; j < ne; ++j)
    for (int r = 0; r < q; ++r) {
      const double Y = 0.5 * basis_.reference_rule().nodes[r];
      const double xi = basis_.node(j, r);
      for (int f = 0; f <= n; ++f)
        for (int k = 0; k < m; ++k) {
          minus[tidx(f, j, r) + k] = poly(f - 1, j, k)(0.5, Y);
          plus[tidx(f, j, r) + k] = poly(f, j, k)(-0.5, Y);
        }
      for (int f = 0; f <= n; ++f) {
        c = std::max(c, law.max_wavespeed(&minus[tidx(f, j, r)], xi));
        c = std::max(c, law.max_wavespeed(&plus[tidx(f, j, r)], xi));
      }
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) s[k] = poly(i, j, k).x_average(Y);
        c = std::max(c, law.max_wavespeed(s.data(), xi));
      }
    }
  if (c_out) *c_out = c;

  CellMeanField out(n, ne, m);
  std::vector<double> flux(static_cast<std::size_t>(n + 1) * m);
  for (int j = 0; j < ne; ++j)
    for (int r = 0; r < q; ++r) {
      const double xi = basis_.node(j, r);
      for (int f = 0; f <= n; ++f)
        lax_friedrichs(law, &minus[tidx(f, j, r)], &plus[tidx(f, j, r)], xi, c, &flux[f * m]);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k)
          out(i, j, k) -= wr[r] * (flux[(i + 1) * m + k] - flux[i * m + k]) / dx;
    }
  if (law.source) {
    for (int i = 0; i < n; ++i) {
      const double a = problem_.mesh.x_left + i * dx;
      for (int j = 0; j < ne; ++j)
        for (int r = 0; r < q; ++r)
          for (int qq = 0; qq < x_rule_.size(); ++qq) {
            law.source(t, a + dx * x_rule_.nodes[qq], basis_.node(j, r), s.data());
            for (int k = 0; k < m; ++k) out(i, j, k) += wr[r] * x_rule_.weights[qq] * s[k];
          }
    }
  }
  return out;
}

GpcField Solver::remap(const CellMeanField& u, double t, LimiterStats* stats) const {
  const int n = u.n_x, ne = u.n_elem, m = u.m, q = basis_.n_nodes(), K = basis_.n_modes();
  const auto& wr = basis_.reference_rule().weights;
  std::vector<Poly2D> polys;
  reconstruct_2d(u, t, polys, stats);
  GpcField out(K, n, ne, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ne; ++j)
      for (int c = 0; c < m; ++c) {
        const Poly2D& p = polys[((i + 1) * ne + j) * static_cast<std::size_t>(m) + c];
        out(0, i, j, c) = u(i, j, c);
        for (int k = 1; k < K; ++k) {
          double v = 0.0;
          for (int r = 0; r < q; ++r)
            v += wr[r] * basis_.phi_at_node(r, k) * p.x_average(0.5 * basis_.reference_rule().nodes[r]);
          out(k, i, j, c) = v;
        }
      }
  return out;
}

namespace {

template <class Field>
void axpy_into(Field& out, double a, const Field& x, double b, const Field& y, double dt,
               const Field& L) {
  for (std::size_t n = 0; n < out.data.size(); ++n)
    out.data[n] = a * x.data[n] + b * (y.data[n] + dt * L.data[n]);
}

// One SSP-RK step in Shu-Osher form. If dt <= 0 it is chosen from the
// viscosity of the first stage and capped by dt_cap.
template <class Field, class Lim, class Rhs>
Field ssp_step(Field u, double t, double& dt, double dt_cap, double cfl, double dx, int order,
               Lim&& limit, Rhs&& rhs) {
  limit(u);
  double c = 0.0;
  const Field L0 = rhs(u, t, &c);
  if (dt <= 0.0) {
    dt = c > 0.0 ? cfl * dx / c : dt_cap;
    dt = std::min(dt, dt_cap);
  }
  Field u1 = u;
  axpy_into(u1, 0.0, u, 1.0, u, dt, L0);
  if (order == 1) return u1;
  limit(u1);
  const Field L1 = rhs(u1, t + dt, nullptr);
  Field u2 = u;
  if (order == 2) {
    axpy_into(u2, 0.5, u, 0.5, u1, dt, L1);
    return u2;
  }
  axpy_into(u2, 0.75, u, 0.25, u1, dt, L1);
  limit(u2);
  const Field L2 = rhs(u2, t + 0.5 * dt, nullptr);
  Field u3 = u;
  axpy_into(u3, 1.0 / 3.0, u, 2.0 / 3.0, u2, dt, L2);
  return u3;
}

}  // namespace

GpcField Solver::step(const GpcField& u, double t, double dt, LimiterStats* stats) const {
  double d = dt;
  return ssp_step(
      u, t, d, dt, config_.cfl, problem_.mesh.dx(), config_.effective_rk_order(),
      [&](GpcField& f) { limit(f, stats); },
      [&](const GpcField& f, double tt, double* c) { return rhs_wenosg(f, tt, c); });
}

CellMeanField Solver::step(const CellMeanField& u, double t, double dt,
                           LimiterStats* stats) const {
  double d = dt;
  (void)stats;
  return ssp_step(
      u, t, d, dt, config_.cfl, problem_.mesh.dx(), config_.effective_rk_order(),
      [](CellMeanField&) {},
      [&](const CellMeanField& f, double tt, double* c) { return rhs_weno2d(f, tt, c); });
}

RunResult Solver::run(const std::function<void(double, long)>& on_step) const {
  RunResult res;
  const double t_end = config_.t_end;
  const double dx = problem_.mesh.dx();
  const int order = config_.effective_rk_order();
  double t = 0.0;
  if (config_.scheme == Scheme::weno2d) {
    CellMeanField u = initialize_means();
    while (t < t_end) {
      double dt = 0.0;
      // limiter statistics are gathered once per step on the stage-1 reconstruction
      std::vector<Poly2D> polys;
      reconstruct_2d(u, t, polys, &res.stats);
      u = ssp_step(
          u, t, dt, t_end - t, config_.cfl, dx, order, [](CellMeanField&) {},
          [&](const CellMeanField& f, double tt, double* c) { return rhs_weno2d(f, tt, c); });
      t = (t_end - t <= dt) ? t_end : t + dt;
      ++res.steps;
      if (on_step) on_step(t, res.steps);
    }
    res.means = u;
    res.field = remap(u, t, &res.stats);
  } else {
    GpcField u = initialize();
    while (t < t_end) {
      double dt = 0.0;
      u = ssp_step(
          u, t, dt, t_end - t, config_.cfl, dx, order, [&](GpcField& f) { limit(f, &res.stats); },
          [&](const GpcField& f, double tt, double* c) { return rhs_wenosg(f, tt, c); });
      t = (t_end - t <= dt) ? t_end : t + dt;
      ++res.steps;
      if (on_step) on_step(t, res.steps);
    }
    limit(u, &res.stats);
    check_nodes(u);
    res.field = std::move(u);
  }
  res.t = t;
  res.all_nodes_admissible = true;
  return res;
}

std::vector<double> deterministic_solve(const ConservationLaw& law, const Mesh& mesh, double xi,
                                        int k_d, double cfl, double t_end,
                                        const Boundary& boundary, const StateFn& initial,
                                        int rk_order) {
  SolverConfig cfg;
  cfg.scheme = Scheme::sg;
  cfg.k_xi = 0;
  cfg.n_xi = 1;
  cfg.k_d = k_d;
  cfg.n_x = mesh.n_cells;
  cfg.cfl = cfl;
  cfg.t_end = t_end;
  cfg.rk_order = rk_order;
  cfg.limiters.enable_slope = false;
  Problem p{law, mesh, RandomDomain{}, initial, boundary};
  const Solver solver(p, cfg);
  const int n = mesh.n_cells, m = law.m;
  const double dx = mesh.dx();

  // single row: extended storage with interior from cell 2
  struct Row {
    std::vector<double> data;
  };
  Row u{std::vector<double>(static_cast<std::size_t>(n + 4) * m, 0.0)};
  const QuadratureRule& xr = initial_rule();
  std::vector<double> s(m);
  for (int i = 0; i < n; ++i) {
    const auto xs = cell_nodes(xr, mesh.x_left + i * dx, dx);
    for (int a = 0; a < xr.size(); ++a) {
      initial(0.0, xs[a], xi, s.data());
      for (int c = 0; c < m; ++c) u.data[(i + 2) * m + c] += xr.weights[a] * s[c];
    }
  }
  const std::vector<double> row_xi{xi};
  auto rhs = [&](const Row& f, double tt, double* c) {
    std::vector<double> rows = f.data, res;
    const double cc = solver.nodal_rhs(rows, row_xi, 1, tt, res);
    if (c) *c = cc;
    Row out{std::vector<double>(f.data.size(), 0.0)};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) out.data[(i + 2) * m + k] = res[i * m + k];
    return out;
  };
  double t = 0.0;
  while (t < t_end) {
    double dt = 0.0;
    u = ssp_step(u, t, dt, t_end - t, cfl, dx, cfg.effective_rk_order(), [](Row&) {}, rhs);
    t = (t_end - t <= dt) ? t_end : t + dt;
  }
  return std::vector<double>(u.data.begin() + 2 * m, u.data.begin() + (n + 2) * m);
}

}  // namespace uqhyp

#pragma once

#include <cstddef>
#include <vector>

namespace uqhyp {

/// gPC coefficients of spatial cell means, u_{k,i,j} per component.
struct GpcField {
  int n_modes = 1, n_x = 0, n_elem = 1, m = 1;
  std::vector<double> data;

  GpcField() = default;
  GpcField(int modes, int nx, int ne, int comps)
      : n_modes(modes), n_x(nx), n_elem(ne), m(comps),
        data(static_cast<std::size_t>(modes) * nx * ne * comps, 0.0) {}

  std::size_t index(int k, int i, int j, int c) const {
    return ((static_cast<std::size_t>(i) * n_elem + j) * n_modes + k) * m + c;
  }
  double& operator()(int k, int i, int j, int c) { return data[index(k, i, j, c)]; }
  double operator()(int k, int i, int j, int c) const { return data[index(k, i, j, c)]; }
  /// coefficient block of (i, j), laid out [k][c]
  double* block(int i, int j) { return data.data() + index(0, i, j, 0); }
  const double* block(int i, int j) const { return data.data() + index(0, i, j, 0); }
};

/// x-xi cell means.
struct CellMeanField {
  int n_x = 0, n_elem = 1, m = 1;
  std::vector<double> data;

  CellMeanField() = default;
  CellMeanField(int nx, int ne, int comps)
      : n_x(nx), n_elem(ne), m(comps), data(static_cast<std::size_t>(nx) * ne * comps, 0.0) {}

  std::size_t index(int i, int j, int c) const {
    return (static_cast<std::size_t>(i) * n_elem + j) * m + c;
  }
  double& operator()(int i, int j, int c) { return data[index(i, j, c)]; }
  double operator()(int i, int j, int c) const { return data[index(i, j, c)]; }
};

}  // namespace uqhyp

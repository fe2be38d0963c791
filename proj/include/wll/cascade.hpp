#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/polyalg.hpp"

namespace wll {

// q(n) = (2g - 1) 2^n - 2(g - 1)
std::int64_t grid_size(int g, int n);

/** Level-n samples phi(i 2^-n), i = 0 .. q(n) - 1. */
template <class T>
struct CascadeGrid {
  int g = 0;
  int level = 0;
  std::vector<T> values;

  double x(std::int64_t i) const { return std::ldexp(double(i), -level); }
  double x_final() const { return x(static_cast<std::int64_t>(values.size()) - 1); }
};

// value at i is sum_k a_k v[(i - k)/2] over i - k even and in range
template <class T, class C>
std::vector<T> cascade_step_values(const std::vector<T>& v, const std::vector<C>& a) {
  if (a.empty() || a.size() % 2 != 0) throw std::invalid_argument("cascade_step: need 2g coefficients");
  const std::int64_t q = static_cast<std::int64_t>(v.size());
  const std::int64_t L = static_cast<std::int64_t>(a.size());
  std::vector<T> out(2 * q + L - 2);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(out.size()); ++i) {
    T acc{};
    for (std::int64_t k = i % 2; k < L; k += 2) {
      const std::int64_t j = (i - k) / 2;
      if (j < 0) break;
      if (j >= q) continue;
      acc = acc + v[j] * a[k];
    }
    out[i] = acc;
  }
  return out;
}

template <class T>
CascadeGrid<T> cascade_step(const CascadeGrid<T>& grid, const std::vector<T>& a) {
  const int g = static_cast<int>(a.size() / 2);
  if (static_cast<std::int64_t>(grid.values.size()) != grid_size(g, grid.level))
    throw std::invalid_argument("cascade_step: grid length does not match q(n)");
  return {g, grid.level + 1, cascade_step_values(grid.values, a)};
}

CascadeGrid<double> cascade_run(const std::vector<double>& a, int n);
CascadeGrid<cplx> cascade_run(const std::vector<cplx>& a, int n);

// psi(x) = sum_k b_k phi^(n)(2x - k) on the level-(n+1) grid
CascadeGrid<double> wavelet_run(const std::vector<double>& a, const std::vector<double>& b, int n);
CascadeGrid<cplx> wavelet_run(const std::vector<cplx>& a, const std::vector<cplx>& b, int n);

/** Dyadic rational num / 2^exp. */
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;
  double value() const { return std::ldexp(double(num), -exp); }
};

// x = sum_i d_i 2^-i
Dyadic term_position(const std::vector<int>& digits);

// exact decimal expansion of i / 2^n
std::string dyadic_decimal(std::int64_t i, int n);

using Mat6 = Eigen::MatrixXd;

struct TransferReport {
  Eigen::MatrixXd four_by_four, five_a, five_b;
  Eigen::VectorXcd eig4, eig5a, eig5b;
  // max |(1..1) M - (1..1)|
  double ones_residual_4 = 0, ones_residual_5a = 0, ones_residual_5b = 0;
  // left pairs (a5, e_0) for five_a and (a0, e_4) for five_b
  double pair_residual_5a = 0, pair_residual_5b = 0;
};

TransferReport transfer_matrices(const std::array<double, 6>& a);

struct DivergenceFlags {
  bool diverges_left = false;   // a0 > 1
  bool diverges_right = false;  // a5 > 1
  bool marginal = false;        // a0 = 1 or a5 = 1
};

DivergenceFlags divergence_flags(const std::array<double, 6>& a);

struct SymmetryReport {
  double periodicity = 0;
  double reflection = 0;
  double coeff_reflection = 0;
  double half_period = 0;
  double a2_twofold = 0;  // a2(theta, rho) = a2(-theta, -rho - pi/4)
  double a0_threefold = 0;
};

SymmetryReport symmetry_check(double theta, double rho, int n);

void write_grid_csv(std::ostream& os, const CascadeGrid<double>& grid);
void write_grid_csv(std::ostream& os, const CascadeGrid<cplx>& grid);

}  // namespace wll

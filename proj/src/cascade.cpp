#include "wll/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "wll/loopgroup.hpp"

namespace wll {

std::int64_t grid_size(int g, int n) {
  if (g < 1 || n < 0) throw std::invalid_argument("grid_size: need g >= 1, n >= 0");
  return (2 * std::int64_t(g) - 1) * (std::int64_t(1) << n) - 2 * (std::int64_t(g) - 1);
}

namespace {

template <class T>
CascadeGrid<T> run(const std::vector<T>& a, int n) {
  if (n < 0) throw std::invalid_argument("cascade_run: negative level");
  CascadeGrid<T> grid{static_cast<int>(a.size() / 2), 0, {T(1)}};
  for (int i = 0; i < n; ++i) grid = cascade_step(grid, a);
  return grid;
}

template <class T>
CascadeGrid<T> run_wavelet(const std::vector<T>& a, const std::vector<T>& b, int n) {
  if (a.size() != b.size()) throw std::invalid_argument("wavelet_run: a and b differ in length");
  if (n < 0) throw std::invalid_argument("wavelet_run: negative level");
  // b carries the leading digit, weight 1/2
  CascadeGrid<T> grid = cascade_step(CascadeGrid<T>{static_cast<int>(a.size() / 2), 0, {T(1)}}, b);
  for (int i = 0; i < n; ++i) grid = cascade_step(grid, a);
  return grid;
}

}  // namespace

CascadeGrid<double> cascade_run(const std::vector<double>& a, int n) { return run(a, n); }
CascadeGrid<cplx> cascade_run(const std::vector<cplx>& a, int n) { return run(a, n); }

CascadeGrid<double> wavelet_run(const std::vector<double>& a, const std::vector<double>& b, int n) {
  return run_wavelet(a, b, n);
}
CascadeGrid<cplx> wavelet_run(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
  return run_wavelet(a, b, n);
}

Dyadic term_position(const std::vector<int>& digits) {
  Dyadic x{0, static_cast<int>(digits.size())};
  for (int d : digits) x.num = 2 * x.num + d;
  return x;
}

std::string dyadic_decimal(std::int64_t i, int n) {
  const bool neg = i < 0;
  std::uint64_t u = neg ? std::uint64_t(-i) : std::uint64_t(i);
  const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
  std::string s = (neg ? "-" : "") + std::to_string(u >> n);
  std::uint64_t frac = u & mask;
  if (frac != 0) {
    s += '.';
    while (frac != 0) {
      frac *= 10;
      s += char('0' + (frac >> n));
      frac &= mask;
    }
  }
  return s;
}

TransferReport transfer_matrices(const std::array<double, 6>& a) {
  TransferReport r;
  r.four_by_four.resize(4, 4);
  r.four_by_four << a[4], a[5], 0, 0,
                    a[2], a[3], a[4], a[5],
                    a[0], a[1], a[2], a[3],
                    0, 0, a[0], a[1];
  r.five_a.resize(5, 5);
  r.five_a << a[5], 0, 0, 0, 0,
              a[3], a[4], a[5], 0, 0,
              a[1], a[2], a[3], a[4], a[5],
              0, a[0], a[1], a[2], a[3],
              0, 0, 0, a[0], a[1];
  r.five_b.resize(5, 5);
  r.five_b << a[4], a[5], 0, 0, 0,
              a[2], a[3], a[4], a[5], 0,
              a[0], a[1], a[2], a[3], a[4],
              0, 0, a[0], a[1], a[2],
              0, 0, 0, 0, a[0];
  r.eig4 = Eigen::EigenSolver<Eigen::MatrixXd>(r.four_by_four, false).eigenvalues();
  r.eig5a = Eigen::EigenSolver<Eigen::MatrixXd>(r.five_a, false).eigenvalues();
  r.eig5b = Eigen::EigenSolver<Eigen::MatrixXd>(r.five_b, false).eigenvalues();
  auto ones_res = [](const Eigen::MatrixXd& M) {
    Eigen::RowVectorXd one = Eigen::RowVectorXd::Ones(M.rows());
    return (one * M - one).cwiseAbs().maxCoeff();
  };
  r.ones_residual_4 = ones_res(r.four_by_four);
  r.ones_residual_5a = ones_res(r.five_a);
  r.ones_residual_5b = ones_res(r.five_b);
  Eigen::RowVectorXd e0 = Eigen::RowVectorXd::Zero(5), e4 = Eigen::RowVectorXd::Zero(5);
  e0(0) = 1;
  e4(4) = 1;
  r.pair_residual_5a = (e0 * r.five_a - a[5] * e0).cwiseAbs().maxCoeff();
  r.pair_residual_5b = (e4 * r.five_b - a[0] * e4).cwiseAbs().maxCoeff();
  return r;
}

DivergenceFlags divergence_flags(const std::array<double, 6>& a) {
  constexpr double tol = 1e-10;
  DivergenceFlags f;
  f.diverges_left = a[0] > 1 + tol;
  f.diverges_right = a[5] > 1 + tol;
  f.marginal = std::abs(a[0] - 1) < tol || std::abs(a[5] - 1) < tol;
  return f;
}

SymmetryReport symmetry_check(double theta, double rho, int n) {
  if (n > 10) throw std::invalid_argument("symmetry_check: n <= 10");
  constexpr double pi = std::numbers::pi;
  SymmetryReport r;
  auto vec = [](const std::array<double, 6>& c) { return std::vector<double>(c.begin(), c.end()); };
  const auto a = two_param_coeffs(theta, rho);
  const auto g0 = cascade_run(vec(a), n);
  const auto gp = cascade_run(vec(two_param_coeffs(theta + pi, rho + pi)), n);
  const auto gr = cascade_run(vec(two_param_coeffs(pi - theta, pi - rho)), n);
  const size_t q = g0.values.size();
  for (size_t i = 0; i < q; ++i) {
    r.periodicity = std::max(r.periodicity, std::abs(g0.values[i] - gp.values[i]));
    r.reflection = std::max(r.reflection, std::abs(g0.values[i] - gr.values[q - 1 - i]));
  }
  const auto am = two_param_coeffs(-theta, -rho);
  const auto ah = two_param_coeffs(theta - pi / 2, rho - pi / 2);
  for (int i = 0; i < 6; ++i) r.coeff_reflection = std::max(r.coeff_reflection, std::abs(a[i] - am[5 - i]));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      r.half_period = std::max(r.half_period, std::abs(a[2 * i + j] - ah[2 * (2 - i) + j]));
  r.a2_twofold = std::abs(a[2] - two_param_coeffs(-theta, -rho - pi / 4)[2]);
  r.a0_threefold = std::abs(a[0] - two_param_coeffs(-rho + pi / 4, theta - rho + pi / 2)[0]);
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_grid_csv(std::ostream& os, const CascadeGrid<double>& grid) {
  os << "x,value\n";
  for (size_t i = 0; i < grid.values.size(); ++i)
    os << dyadic_decimal(static_cast<std::int64_t>(i), grid.level) << ',' << fmt(grid.values[i]) << '\n';
}

void write_grid_csv(std::ostream& os, const CascadeGrid<cplx>& grid) {
  os << "x,value\n";
  for (size_t i = 0; i < grid.values.size(); ++i) {
    const cplx v = grid.values[i];
    os << dyadic_decimal(static_cast<std::int64_t>(i), grid.level) << ',' << fmt(v.real());
    if (v.imag() != 0) os << (v.imag() < 0 ? "" : "+") << fmt(v.imag()) << 'i';
    os << '\n';
  }
}

}  // namespace wll

#include "wll/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wll {

ComplexPoly::ComplexPoly(std::initializer_list<cplx> c) : c_(c) { normalize(); }

ComplexPoly::ComplexPoly(std::vector<cplx> c) : c_(std::move(c)) { normalize(); }

void ComplexPoly::normalize() {
  while (!c_.empty() && std::abs(c_.back()) < kCoeffZero) c_.pop_back();
}

ComplexPoly ComplexPoly::monomial(int k, cplx c) {
  if (k < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<cplx> v(k + 1, 0.0);
  v[k] = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(const std::vector<cplx>& roots) {
  ComplexPoly p{1.0};
  for (cplx r : roots) p = p * ComplexPoly{-r, 1.0};
  return p;
}

cplx ComplexPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[k];
}

double ComplexPoly::norm() const {
  double s = 0;
  for (cplx c : c_) s += std::norm(c);
  return std::sqrt(s);
}

int ComplexPoly::valuation() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (std::abs(c_[k]) >= kCoeffZero) return static_cast<int>(k);
  return -1;
}

ComplexPoly ComplexPoly::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<cplx> v;
  if (k >= 0) {
    v.assign(k, 0.0);
    v.insert(v.end(), c_.begin(), c_.end());
  } else {
    for (int i = 0; i < -k && i < static_cast<int>(c_.size()); ++i)
      if (std::abs(c_[i]) >= kCoeffZero)
        throw std::invalid_argument("shifted: negative shift drops nonzero terms");
    if (-k < static_cast<int>(c_.size())) v.assign(c_.begin() - k, c_.end());
  }
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::conj_coeffs() const {
  std::vector<cplx> v(c_.size());
  std::transform(c_.begin(), c_.end(), v.begin(), [](cplx c) { return std::conj(c); });
  return ComplexPoly(std::move(v));
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<cplx> v(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return ComplexPoly(std::move(v));
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) { return a + cplx(-1.0) * b; }

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> v(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return ComplexPoly(std::move(v));
}

ComplexPoly operator*(cplx s, const ComplexPoly& a) {
  std::vector<cplx> v(a.c_);
  for (auto& c : v) c *= s;
  return ComplexPoly(std::move(v));
}

cplx poly_eval(const ComplexPoly& p, cplx z) {
  cplx acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx poly_derivative_eval(const ComplexPoly& p, cplx z) {
  cplx acc = 0.0;
  const auto& c = p.coeffs();
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * z + double(k) * c[k];
  return acc;
}

DivMod poly_divmod(const ComplexPoly& p, const ComplexPoly& d) {
  if (d.is_zero()) throw std::invalid_argument("poly_divmod: division by the zero polynomial");
  const int dp = p.degree(), dd = d.degree();
  if (dp < dd) return {ComplexPoly{}, p};
  std::vector<cplx> r = p.coeffs();
  std::vector<cplx> q(dp - dd + 1, 0.0);
  const cplx lead = d.coeffs().back();
  for (int k = dp - dd; k >= 0; --k) {
    cplx c = r[k + dd] / lead;
    q[k] = c;
    for (int j = 0; j <= dd; ++j) r[k + j] -= c * d.coeffs()[j];
  }
  r.resize(dd);
  return {ComplexPoly(std::move(q)), ComplexPoly(std::move(r))};
}

std::vector<cplx> poly_roots(const ComplexPoly& p, double tol) {
  if (p.is_zero()) throw std::invalid_argument("poly_roots: zero polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  const auto& c = p.coeffs();
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  if (es.info() != Eigen::Success)
    throw RootFindingError("poly_roots: eigenvalue iteration did not converge", es.getMaxIterations());

  std::vector<cplx> roots(n);
  const double scale = p.norm();
  for (int i = 0; i < n; ++i) {
    cplx r = es.eigenvalues()(i);
    cplx dv = poly_derivative_eval(p, r);
    if (std::abs(dv) > 0) {
      cplx polished = r - poly_eval(p, r) / dv;
      if (std::abs(poly_eval(p, polished)) < std::abs(poly_eval(p, r))) r = polished;
    }
    if (!(std::abs(poly_eval(p, r)) < tol * scale))
      throw RootFindingError("poly_roots: residual above tolerance", es.getMaxIterations());
    roots[i] = r;
  }
  return roots;
}

ComplexPoly MatrixLoop::entry(int i, int j) const {
  std::vector<cplx> v(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) v[k] = coeffs[k](i, j);
  return ComplexPoly(std::move(v));
}

CMat matpoly_eval(const MatrixLoop& A, cplx z) {
  CMat acc = CMat::Zero(A.N, A.N);
  for (auto it = A.coeffs.rbegin(); it != A.coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> circle_samples(int n) {
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(1.0, 2 * std::numbers::pi * k / n);
  return z;
}

}  // namespace wll

#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wll {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Trailing coefficients below this magnitude are dropped.
inline constexpr double kCoeffZero = 1e-12;

/** Polynomial in z with complex coefficients; index = power of z. */
class ComplexPoly {
 public:
  ComplexPoly() = default;
  ComplexPoly(std::initializer_list<cplx> c);
  explicit ComplexPoly(std::vector<cplx> c);

  static ComplexPoly monomial(int k, cplx c = 1.0);
  static ComplexPoly from_roots(const std::vector<cplx>& roots);

  const std::vector<cplx>& coeffs() const { return c_; }
  // -1 for the zero polynomial
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  cplx coeff(int k) const;
  double norm() const;
  // lowest index carrying a nonzero coefficient, -1 for zero
  int valuation() const;

  ComplexPoly shifted(int k) const;
  ComplexPoly conj_coeffs() const;

  friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(cplx s, const ComplexPoly& a);

 private:
  void normalize();
  std::vector<cplx> c_;
};

cplx poly_eval(const ComplexPoly& p, cplx z);
cplx poly_derivative_eval(const ComplexPoly& p, cplx z);

struct DivMod {
  ComplexPoly quotient;
  ComplexPoly remainder;
};

DivMod poly_divmod(const ComplexPoly& p, const ComplexPoly& d);

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// All roots with multiplicity; |p(r)| < tol * norm(p) is enforced.
std::vector<cplx> poly_roots(const ComplexPoly& p, double tol = 1e-8);

/** Polynomial loop A(z) = sum_k z^k A^(k) with N x N coefficients. */
struct MatrixLoop {
  int N = 0;
  std::vector<CMat> coeffs;

  ComplexPoly entry(int i, int j) const;
};

CMat matpoly_eval(const MatrixLoop& A, cplx z);

// n equally spaced points on the unit circle, starting at 1
std::vector<cplx> circle_samples(int n);

}  // namespace wll

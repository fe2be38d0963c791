#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/polyalg.hpp"

namespace wll {

struct ValidationReport {
  bool unitary = false;
  bool orthogonal = false;
  double unitarity_residual = 0;     // max spectral norm of A(z)*A(z) - I on the circle
  double orthogonality_residual = 0;  // max norm of sum_k A^(k)* A^(k+n) - delta_n I
  bool valid() const { return unitary && orthogonal; }
};

ValidationReport validate_loop(const MatrixLoop& A, double tol = 1e-10);

// Throws std::invalid_argument on the zero loop.
int genus(const MatrixLoop& A);
// Drops vanishing top coefficients.
MatrixLoop trim(const MatrixLoop& A);

MatrixLoop identity_loop(int N);
MatrixLoop direct_sum(const MatrixLoop& A, const MatrixLoop& B);
MatrixLoop loop_product(const MatrixLoop& A, const MatrixLoop& B);

// (1/sqrt 2)[[1,1],[1,-1]]
CMat hadamard2();
// projection onto (cos t, sin t)
CMat line_projection(double t);
bool is_projection(const CMat& P, double tol = 1e-10);

struct ProjectionFactor {
  CMat P;
  int exponent = 1;
};

struct Factorization {
  CMat V;
  std::vector<ProjectionFactor> factors;  // rebuild is V * F_0(z) * F_1(z) * ...
  double residual = 0;

  std::vector<CMat> q_ledger() const;
};

class FactorizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Factorization factorize(const MatrixLoop& A);
MatrixLoop build_loop(const CMat& V, const std::vector<ProjectionFactor>& factors);
double coefficient_distance(const MatrixLoop& A, const MatrixLoop& B);

std::array<double, 6> two_param_coeffs(double theta, double rho);
MatrixLoop two_param_loop(double theta, double rho);

bool norm_bound_check(const MatrixLoop& A, const std::vector<cplx>& zs);

struct DiagonalStructure {
  enum class Kind { FullyDiagonal, DiagonalCorner, PurelyNonDiagonal };
  Kind kind = Kind::PurelyNonDiagonal;
  CMat V;                          // set for FullyDiagonal
  std::vector<int> exponents;      // per column, -1 where the column is not monomial
  std::vector<int> diagonal_columns;
  int d0 = 0, b = 0, d1 = 0;
};

std::string to_string(DiagonalStructure::Kind k);
DiagonalStructure detect_diagonal_structure(const MatrixLoop& A);

}  // namespace wll

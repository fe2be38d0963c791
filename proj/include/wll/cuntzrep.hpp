#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wll/loopgroup.hpp"
#include "wll/polyalg.hpp"

namespace wll {

// r0 = floor((gN - 1)/(N - 1)); the window is span{z^0, ..., z^-r0}
int window_size(int N, int g);

/// Matrices of T_i* restricted to the window, basis index p <-> z^-p.
std::vector<CMat> adjoint_matrices(const MatrixLoop& A);

double lambda0(const MatrixLoop& A);
// R(k,l) = A^(l)* A^(k)
CMat R_matrix(const MatrixLoop& A, int k, int l);

// Orthonormal columns spanning the minimal subspace (N = 2).
CMat minimal_subspace(const MatrixLoop& A);

// sigma(X) = sum_i M_i^dag X M_i and its trace dual sum_i M_i X M_i^dag
CMat apply_sigma(const std::vector<CMat>& M, const CMat& X);
CMat apply_sigma_dual(const std::vector<CMat>& M, const CMat& D);

struct FixedSpace {
  int dimension = 0;
  std::vector<CMat> basis;
  std::vector<double> singular_values;  // ascending
  bool ambiguous = false;               // some singular value inside [1e-9, 1e-7]
};

inline constexpr double kFixedTol = 1e-9;
inline constexpr double kAmbiguityHi = 1e-7;

FixedSpace sigma_fixed_space(const MatrixLoop& A);

class AmbiguousRank : public std::runtime_error {
 public:
  AmbiguousRank(const std::string& what, std::vector<double> sv)
      : std::runtime_error(what), singular_values(std::move(sv)) {}
  std::vector<double> singular_values;
};

struct Classification {
  bool irreducible = false;
  int fixed_dim = 0;
  // index sets of the spectral projections of the fixed space (reducible case)
  std::vector<std::vector<int>> fixed_projections;
  bool projections_diagonal = true;
  DiagonalStructure diagonal;
};

// Throws AmbiguousRank when the rank decision falls in the gray zone.
Classification classify(const MatrixLoop& A);

struct Truncation {
  int p = 0;
  int q = 0;
};

Truncation truncate_window(const MatrixLoop& A);

// Trace-one PSD D with sigma*(D) = D. Diagonal when a diagonal solution exists, otherwise the full fixed state.
CMat fixed_density_matrix(const MatrixLoop& A);

struct ProjectionProductResult {
  bool is_projection = false;
  bool all_commute = false;
  double r_norm = 0;
};

ProjectionProductResult projection_product_test(const std::vector<CMat>& P, double tol = 1e-9);

}  // namespace wll

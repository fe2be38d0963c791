// Shared fixtures for the test binaries.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "wll/loopgroup.hpp"

namespace wll::testing {

inline constexpr double pi = std::numbers::pi;

inline CMat random_complex(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> n(0, 1);
  CMat M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = cplx(n(rng), n(rng));
  return M;
}

inline CMat random_unitary(std::mt19937_64& rng, int N) {
  Eigen::HouseholderQR<CMat> qr(random_complex(rng, N, N));
  return qr.householderQ() * CMat::Identity(N, N);
}

// projection onto a random subspace of the given rank
inline CMat random_projection(std::mt19937_64& rng, int N, int rank) {
  CMat U = random_unitary(rng, N).leftCols(rank);
  return U * U.adjoint();
}

// V (I - P_1 + z P_1) ... with random rank-1 projections; genus g generically
inline MatrixLoop random_loop(std::mt19937_64& rng, int N, int g) {
  std::vector<ProjectionFactor> f;
  for (int k = 0; k + 1 < g; ++k) f.push_back({random_projection(rng, N, 1), 1});
  return build_loop(random_unitary(rng, N), f);
}

inline MatrixLoop loop_B() {
  const double s = 1 / std::sqrt(2.0);
  MatrixLoop B{2, {CMat::Zero(2, 2), CMat::Zero(2, 2), CMat::Zero(2, 2)}};
  B.coeffs[0](0, 0) = s;
  B.coeffs[1](0, 1) = s;
  B.coeffs[1](1, 0) = s;
  B.coeffs[2](1, 1) = -s;
  return B;
}

// V diag(1, z)
inline MatrixLoop loop_haar_diag() {
  MatrixLoop A{2, {CMat::Zero(2, 2), CMat::Zero(2, 2)}};
  A.coeffs[0].col(0) = hadamard2().col(0);
  A.coeffs[1].col(1) = hadamard2().col(1);
  return A;
}

inline MatrixLoop loop_from_rows(const std::vector<std::vector<std::vector<double>>>& c, double scale) {
  MatrixLoop A{static_cast<int>(c[0].size()), {}};
  for (const auto& m : c) {
    CMat M(A.N, A.N);
    for (int i = 0; i < A.N; ++i)
      for (int j = 0; j < A.N; ++j) M(i, j) = m[i][j] * scale;
    A.coeffs.push_back(M);
  }
  return A;
}

inline double max_abs(const CMat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace wll::testing

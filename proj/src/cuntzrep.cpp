#include "wll/cuntzrep.hpp"

#include <algorithm>
#include <cmath>

namespace wll {

namespace {

MatrixLoop checked(const MatrixLoop& A) {
  MatrixLoop t = trim(A);
  if (t.coeffs.empty()) throw std::invalid_argument("zero loop");
  return t;
}

// orthonormal basis for the column span, singular values above tol
CMat column_span(const CMat& V, double tol) {
  if (V.cols() == 0) return CMat(V.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(V, Eigen::ComputeThinU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

// Fixed state of the trace-preserving dual map: Cesaro mean of iterates, projected onto ker(sigma* - 1).
CMat full_fixed_state(const std::vector<CMat>& M) {
  const int d = static_cast<int>(M[0].rows());
  CMat L(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMat E = CMat::Zero(d, d);
      E(a, b) = 1.0;
      CMat Y = apply_sigma_dual(M, E) - E;
      L.col(a * d + b) = Eigen::Map<CVec>(Y.data(), d * d);
    }
  Eigen::JacobiSVD<CMat> svd(L, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  CMat X = CMat::Identity(d, d) / double(d), mean = CMat::Zero(d, d);
  const int iters = 400;
  for (int n = 0; n < iters; ++n) {
    mean += X / double(iters);
    X = apply_sigma_dual(M, X);
  }
  // kernel vectors index entry (a, b) at a * d + b
  CMat mt = mean.transpose();
  CVec x = Eigen::Map<CVec>(mt.data(), d * d), y = CVec::Zero(d * d);
  for (int i = 0; i < s.size(); ++i)
    if (s(i) < kFixedTol) y += svd.matrixV().col(i) * svd.matrixV().col(i).dot(x);
  CMat D = Eigen::Map<CMat>(y.data(), d, d).transpose();
  D = (D + D.adjoint()) / 2.0;
  if (std::abs(D.trace()) < 1e-12) return CMat();
  D /= D.trace();
  Eigen::SelfAdjointEigenSolver<CMat> es(D);
  CVec ev = es.eigenvalues().cast<cplx>();
  if (ev.real().minCoeff() < -1e-9) return CMat();
  for (int i = 0; i < d; ++i)
    if (ev(i).real() < 1e-12) ev(i) = 0.0;
  D = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  D /= D.trace();
  if ((apply_sigma_dual(M, D) - D).cwiseAbs().maxCoeff() > kFixedTol) return CMat();
  return D;
}

}  // namespace

int window_size(int N, int g) {
  if (N < 2 || g < 1) throw std::invalid_argument("window_size: need N >= 2 and g >= 1");
  return (g * N - 1) / (N - 1);
}

std::vector<CMat> adjoint_matrices(const MatrixLoop& A0) {
  const MatrixLoop A = checked(A0);
  const int N = A.N, g = static_cast<int>(A.coeffs.size());
  const int r0 = window_size(N, g), d = r0 + 1;
  std::vector<CMat> M(N, CMat::Zero(d, d));
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < d; ++k) {
      const int n = (k + N - 1) / N;
      const int j = n * N - k;
      for (int p = 0; p < g; ++p) {
        const cplx v = std::conj(A.coeffs[p](i, j));
        if (n + p > r0) {
          if (std::abs(v) > 1e-12) throw std::logic_error("adjoint_matrices: window not co-invariant");
          continue;
        }
        M[i](n + p, k) = v;
      }
    }
  return M;
}

double lambda0(const MatrixLoop& A) {
  const MatrixLoop t = checked(A);
  return t.coeffs[0].col(0).squaredNorm();
}

CMat R_matrix(const MatrixLoop& A, int k, int l) {
  const int g = static_cast<int>(A.coeffs.size());
  if (k < 0 || l < 0 || k >= g || l >= g) throw std::out_of_range("R_matrix: index out of range");
  return A.coeffs[l].adjoint() * A.coeffs[k];
}

CMat minimal_subspace(const MatrixLoop& A0) {
  const MatrixLoop A = checked(A0);
  if (A.N != 2) throw std::invalid_argument("minimal_subspace: N = 2 only");
  const int g = static_cast<int>(A.coeffs.size());
  const int d = window_size(2, g) + 1;
  CMat span = CMat::Zero(d, 4 * g);
  int col = 0;
  // conjugate of A_{i,j}(z) z^{k+j} has coefficient conj(A^(p)_{ij}) at z^-(p+k+j)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < g; ++k, ++col)
        for (int p = 0; p < g; ++p) span(p + k + j, col) = std::conj(A.coeffs[p](i, j));
  return column_span(span, kFixedTol);
}

CMat apply_sigma(const std::vector<CMat>& M, const CMat& X) {
  CMat out = CMat::Zero(X.rows(), X.cols());
  for (const auto& Mi : M) out += Mi.adjoint() * X * Mi;
  return out;
}

CMat apply_sigma_dual(const std::vector<CMat>& M, const CMat& D) {
  CMat out = CMat::Zero(D.rows(), D.cols());
  for (const auto& Mi : M) out += Mi * D * Mi.adjoint();
  return out;
}

FixedSpace sigma_fixed_space(const MatrixLoop& A) {
  const std::vector<CMat> M = adjoint_matrices(A);
  const int d = static_cast<int>(M[0].rows());
  CMat L(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMat E = CMat::Zero(d, d);
      E(a, b) = 1.0;
      CMat Y = apply_sigma(M, E) - E;
      L.col(a * d + b) = Eigen::Map<CVec>(Y.data(), d * d);
    }
  Eigen::JacobiSVD<CMat> svd(L, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  FixedSpace fs;
  for (int i = s.size() - 1; i >= 0; --i) fs.singular_values.push_back(s(i));
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) < kFixedTol) {
      CVec v = svd.matrixV().col(i);
      CMat X(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) X(a, b) = v(a * d + b);
      fs.basis.push_back(X);
    } else if (s(i) <= kAmbiguityHi) {
      fs.ambiguous = true;
    }
  }
  fs.dimension = static_cast<int>(fs.basis.size());
  return fs;
}

Classification classify(const MatrixLoop& A) {
  const FixedSpace fs = sigma_fixed_space(A);
  if (fs.ambiguous) throw AmbiguousRank("classify: singular values inside the ambiguity band", fs.singular_values);
  Classification c;
  c.fixed_dim = fs.dimension;
  c.irreducible = fs.dimension == 1;
  c.diagonal = detect_diagonal_structure(A);
  if (c.irreducible) return c;

  const int d = static_cast<int>(fs.basis[0].rows());
  CMat H = CMat::Zero(d, d);
  for (size_t k = 0; k < fs.basis.size(); ++k) {
    const double w = 1.0 / (1.0 + 0.7349 * k) + 0.1 * std::sin(3.1 * k + 1.0);
    H += w * (fs.basis[k] + fs.basis[k].adjoint());
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  const auto& ev = es.eigenvalues();
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i < d && std::abs(ev(i) - ev(start)) < 1e-7) continue;
    CMat U = es.eigenvectors().middleCols(start, i - start);
    CMat E = U * U.adjoint();
    std::vector<int> idx;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b)
        if (a != b && std::abs(E(a, b)) > 1e-7) c.projections_diagonal = false;
      if (E(a, a).real() > 0.5) idx.push_back(a);
    }
    c.fixed_projections.push_back(idx);
    start = i;
  }
  return c;
}

Truncation truncate_window(const MatrixLoop& A0) {
  const MatrixLoop A = checked(A0);
  if (A.N != 2) throw std::invalid_argument("truncate_window: N = 2 only");
  const int g = static_cast<int>(A.coeffs.size());
  const int r0 = window_size(2, g);
  Truncation t{0, r0};
  const double tol = 1e-10;
  const CMat R00 = R_matrix(A, 0, 0);
  if (R00(0, 0).real() < 1 - tol) {
    t.p = 1;
    if (g >= 2) {
      const CMat R11 = R_matrix(A, 1, 1), R01 = R_matrix(A, 0, 1), R10 = R_matrix(A, 1, 0);
      CMat S(2, 2);
      S << R11(0, 0), R01(0, 1), R10(1, 0), R00(1, 1);
      Eigen::ComplexEigenSolver<CMat> es(S);
      bool has_one = false;
      for (int i = 0; i < 2; ++i) has_one = has_one || std::abs(es.eigenvalues()(i) - 1.0) < 1e-9;
      if (!has_one) t.p = 2;
    }
  }
  // right end: e_-r0 splits off iff T_i* e_-r0 lies in C e_-r0 for all i
  const std::vector<CMat> M = adjoint_matrices(A);
  double stay = 0;
  for (const auto& Mi : M) stay += std::norm(Mi(r0, r0));
  if (stay < 1 - tol && t.q - 1 >= t.p) t.q = r0 - 1;
  return t;
}

CMat fixed_density_matrix(const MatrixLoop& A0) {
  const MatrixLoop A = checked(A0);
  if (A.N != 2) throw std::invalid_argument("fixed_density_matrix: N = 2 only");
  const std::vector<CMat> M = adjoint_matrices(A);
  const int d = static_cast<int>(M[0].rows());

  auto solve_on = [&](const std::vector<int>& support) -> CMat {
    const int m = static_cast<int>(support.size());
    CMat L(d * d, m);
    for (int c = 0; c < m; ++c) {
      CMat E = CMat::Zero(d, d);
      E(support[c], support[c]) = 1.0;
      CMat Y = apply_sigma_dual(M, E) - E;
      L.col(c) = Eigen::Map<CVec>(Y.data(), d * d);
    }
    Eigen::JacobiSVD<CMat> svd(L, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    std::vector<int> null;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) < kFixedTol) null.push_back(i);
    for (int i = s.size(); i < m; ++i) null.push_back(i);
    if (null.empty()) return CMat();
    // start from the uniform weight and project onto the null space
    CVec x = CVec::Constant(m, 1.0 / m);
    CVec y = CVec::Zero(m);
    for (int i : null) {
      CVec v = svd.matrixV().col(i);
      y += v * v.dot(x);
    }
    if (y.norm() < 1e-12) y = svd.matrixV().col(null.front());
    cplx tr = y.sum();
    if (std::abs(tr) < 1e-12) return CMat();
    y /= tr;
    for (int pass = 0; pass < 2; ++pass) {
      bool clipped = false;
      for (int c = 0; c < m; ++c) {
        y(c) = y(c).real();
        if (y(c).real() < 0) {
          if (y(c).real() < -1e-12) clipped = true;
          y(c) = 0.0;
        }
      }
      y /= y.sum();
      if (!clipped) break;
    }
    CMat D = CMat::Zero(d, d);
    for (int c = 0; c < m; ++c) D(support[c], support[c]) = y(c);
    if ((apply_sigma_dual(M, D) - D).cwiseAbs().maxCoeff() > kFixedTol) return CMat();
    return D;
  };

  std::vector<int> inner, all;
  for (int k = 0; k < d; ++k) {
    all.push_back(k);
    if (k != 0 && k != d - 1) inner.push_back(k);
  }
  CMat D = solve_on(inner);
  if (D.size() == 0) D = solve_on(all);
  if (D.size() == 0) D = full_fixed_state(M);
  if (D.size() == 0) throw std::runtime_error("fixed_density_matrix: no positive fixed point");
  return D;
}

ProjectionProductResult projection_product_test(const std::vector<CMat>& P, double tol) {
  if (P.empty()) throw std::invalid_argument("projection_product_test: empty family");
  for (const auto& p : P)
    if (!is_projection(p, 1e-10)) throw std::invalid_argument("projection_product_test: input is not a projection");
  CMat R = P[0];
  for (size_t i = 1; i < P.size(); ++i) R = P[i] * R * P[i];
  ProjectionProductResult r;
  r.r_norm = R.norm();
  r.is_projection = (R * R - R).cwiseAbs().maxCoeff() < tol;
  r.all_commute = true;
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = i + 1; j < P.size(); ++j)
      if ((P[i] * P[j] - P[j] * P[i]).cwiseAbs().maxCoeff() >= tol) r.all_commute = false;
  return r;
}

}  // namespace wll

#include "wll/loopgroup.hpp"

#include <algorithm>
#include <cmath>

namespace wll {

namespace {

constexpr double kProjTol = 1e-10;
constexpr double kRankTol = 1e-10;

double spectral_norm(const CMat& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

ValidationReport validate_loop(const MatrixLoop& A, double tol) {
  ValidationReport r;
  const int N = A.N;
  const CMat I = CMat::Identity(N, N);
  for (cplx z : circle_samples(128)) {
    CMat U = matpoly_eval(A, z);
    r.unitarity_residual = std::max(r.unitarity_residual, spectral_norm(U.adjoint() * U - I));
  }
  const int g = static_cast<int>(A.coeffs.size());
  for (int n = 0; n < g; ++n) {
    CMat S = CMat::Zero(N, N);
    for (int k = 0; k + n < g; ++k) S += A.coeffs[k].adjoint() * A.coeffs[k + n];
    if (n == 0) S -= I;
    r.orthogonality_residual = std::max(r.orthogonality_residual, spectral_norm(S));
  }
  r.unitary = r.unitarity_residual < tol;
  r.orthogonal = r.orthogonality_residual < tol;
  return r;
}

MatrixLoop trim(const MatrixLoop& A) {
  MatrixLoop out = A;
  while (!out.coeffs.empty() && out.coeffs.back().cwiseAbs().maxCoeff() < kCoeffZero) out.coeffs.pop_back();
  return out;
}

int genus(const MatrixLoop& A) {
  MatrixLoop t = trim(A);
  if (t.coeffs.empty()) throw std::invalid_argument("genus: zero loop");
  return static_cast<int>(t.coeffs.size());
}

MatrixLoop identity_loop(int N) { return {N, {CMat::Identity(N, N)}}; }

MatrixLoop direct_sum(const MatrixLoop& A, const MatrixLoop& B) {
  const size_t g = std::max(A.coeffs.size(), B.coeffs.size());
  MatrixLoop out{A.N + B.N, {}};
  for (size_t k = 0; k < g; ++k) {
    CMat C = CMat::Zero(out.N, out.N);
    if (k < A.coeffs.size()) C.topLeftCorner(A.N, A.N) = A.coeffs[k];
    if (k < B.coeffs.size()) C.bottomRightCorner(B.N, B.N) = B.coeffs[k];
    out.coeffs.push_back(C);
  }
  return out;
}

MatrixLoop loop_product(const MatrixLoop& A, const MatrixLoop& B) {
  if (A.N != B.N) throw std::invalid_argument("loop_product: size mismatch");
  MatrixLoop out{A.N, std::vector<CMat>(A.coeffs.size() + B.coeffs.size() - 1, CMat::Zero(A.N, A.N))};
  for (size_t i = 0; i < A.coeffs.size(); ++i)
    for (size_t j = 0; j < B.coeffs.size(); ++j) out.coeffs[i + j] += A.coeffs[i] * B.coeffs[j];
  return out;
}

CMat hadamard2() {
  CMat V(2, 2);
  V << 1, 1, 1, -1;
  return V / std::sqrt(2.0);
}

CMat line_projection(double t) {
  const double c = std::cos(t), s = std::sin(t);
  CMat P(2, 2);
  P << c * c, c * s, c * s, s * s;
  return P;
}

bool is_projection(const CMat& P, double tol) {
  if (P.rows() != P.cols()) return false;
  return (P - P.adjoint()).cwiseAbs().maxCoeff() < tol && (P * P - P).cwiseAbs().maxCoeff() < tol;
}

std::vector<CMat> Factorization::q_ledger() const {
  std::vector<CMat> q;
  for (const auto& f : factors) q.push_back(f.P);
  return q;
}

MatrixLoop build_loop(const CMat& V, const std::vector<ProjectionFactor>& factors) {
  const int N = static_cast<int>(V.rows());
  if (V.cols() != N || (V.adjoint() * V - CMat::Identity(N, N)).cwiseAbs().maxCoeff() > kProjTol)
    throw std::invalid_argument("build_loop: V is not unitary");
  MatrixLoop out{N, {V}};
  for (const auto& f : factors) {
    if (f.P.rows() != N || !is_projection(f.P, kProjTol))
      throw std::invalid_argument("build_loop: factor is not a projection");
    if (f.exponent < 1) throw std::invalid_argument("build_loop: exponent must be positive");
    MatrixLoop F{N, std::vector<CMat>(f.exponent + 1, CMat::Zero(N, N))};
    F.coeffs[0] = CMat::Identity(N, N) - f.P;
    F.coeffs[f.exponent] += f.P;
    out = loop_product(out, F);
  }
  return trim(out);
}

double coefficient_distance(const MatrixLoop& A, const MatrixLoop& B) {
  if (A.N != B.N) return INFINITY;
  const size_t g = std::max(A.coeffs.size(), B.coeffs.size());
  double d = 0;
  for (size_t k = 0; k < g; ++k) {
    CMat a = k < A.coeffs.size() ? A.coeffs[k] : CMat::Zero(A.N, A.N);
    CMat b = k < B.coeffs.size() ? B.coeffs[k] : CMat::Zero(A.N, A.N);
    d = std::max(d, (a - b).cwiseAbs().maxCoeff());
  }
  return d;
}

Factorization factorize(const MatrixLoop& A) {
  MatrixLoop cur = trim(A);
  if (cur.coeffs.empty()) throw FactorizationFailed("factorize: zero loop");
  const int N = cur.N;
  const CMat I = CMat::Identity(N, N);
  std::vector<CMat> extracted;
  while (cur.coeffs.size() > 1) {
    const CMat& top = cur.coeffs.back();
    Eigen::JacobiSVD<CMat> svd(top, Eigen::ComputeFullV);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > kRankTol) ++rank;
    // row space of the top coefficient
    CMat Vr = svd.matrixV().leftCols(rank);
    CMat Q = Vr * Vr.adjoint();
    CMat Qp = I - Q;
    const int d = static_cast<int>(cur.coeffs.size()) - 1;
    // A(z)(Q^perp + z^-1 Q): the z^-1 and z^d terms must vanish
    double lost = (cur.coeffs[0] * Q).cwiseAbs().maxCoeff();
    lost = std::max(lost, (cur.coeffs[d] * Qp).cwiseAbs().maxCoeff());
    if (lost > 1e-9) throw FactorizationFailed("factorize: degree reduction stalled (input is not a unitary loop)");
    MatrixLoop next{N, std::vector<CMat>(d, CMat::Zero(N, N))};
    for (int k = 0; k < d; ++k) next.coeffs[k] = cur.coeffs[k] * Qp + cur.coeffs[k + 1] * Q;
    extracted.push_back(Q);
    cur = trim(next);
    if (cur.coeffs.empty()) throw FactorizationFailed("factorize: loop collapsed to zero");
  }
  Factorization f;
  f.V = cur.coeffs[0];
  for (auto it = extracted.rbegin(); it != extracted.rend(); ++it) f.factors.push_back({*it, 1});
  if ((f.V.adjoint() * f.V - I).cwiseAbs().maxCoeff() > 1e-9)
    throw FactorizationFailed("factorize: constant term is not unitary");
  f.residual = coefficient_distance(build_loop(f.V, f.factors), trim(A));
  if (f.residual > 1e-9) throw FactorizationFailed("factorize: rebuild residual too large");
  return f;
}

std::array<double, 6> two_param_coeffs(double theta, double rho) {
  const double c2t = std::cos(2 * theta), s2t = std::sin(2 * theta);
  const double c2r = std::cos(2 * rho), s2r = std::sin(2 * rho);
  const double cd = std::cos(2 * theta - 2 * rho), sd = std::sin(2 * theta - 2 * rho);
  return {
      0.25 * (1 - c2t - s2t - c2r - s2r + cd + sd),
      0.25 * (1 + c2t - s2t + c2r - s2r + cd - sd),
      0.5 * (1 - cd - sd),
      0.5 * (1 - cd + sd),
      0.25 * (1 + c2t + s2t + c2r + s2r + cd + sd),
      0.25 * (1 - c2t + s2t - c2r + s2r + cd - sd),
  };
}

MatrixLoop two_param_loop(double theta, double rho) {
  return build_loop(hadamard2(), {{line_projection(theta), 1}, {line_projection(rho), 1}});
}

bool norm_bound_check(const MatrixLoop& A, const std::vector<cplx>& zs) {
  const int g = genus(A);
  for (cplx z : zs) {
    const double r2 = std::norm(z);
    const double lo = std::pow(std::min(1.0, r2), g - 1);
    const double hi = std::pow(std::max(1.0, r2), g - 1);
    CMat U = matpoly_eval(A, z);
    Eigen::SelfAdjointEigenSolver<CMat> es(U.adjoint() * U);
    const auto& ev = es.eigenvalues();
    const double slack = 1e-9 * std::max(1.0, hi);
    if (ev.minCoeff() < lo - slack || ev.maxCoeff() > hi + slack) return false;
  }
  return true;
}

std::string to_string(DiagonalStructure::Kind k) {
  switch (k) {
    case DiagonalStructure::Kind::FullyDiagonal: return "fully_diagonal";
    case DiagonalStructure::Kind::DiagonalCorner: return "diagonal_corner";
    default: return "purely_non_diagonal";
  }
}

DiagonalStructure detect_diagonal_structure(const MatrixLoop& A) {
  const MatrixLoop t = trim(A);
  const int N = t.N, g = static_cast<int>(t.coeffs.size());
  DiagonalStructure ds;
  ds.exponents.assign(N, -1);
  // column j is diagonal iff A(z) e_j = z^m w for a fixed unit vector w
  for (int j = 0; j < N; ++j) {
    int hit = -1, count = 0;
    for (int k = 0; k < g; ++k)
      if (t.coeffs[k].col(j).norm() > 1e-10) {
        hit = k;
        ++count;
      }
    if (count == 1 && std::abs(t.coeffs[hit].col(j).norm() - 1.0) < 1e-10) {
      ds.exponents[j] = hit;
      ds.diagonal_columns.push_back(j);
    }
  }
  const int nd = static_cast<int>(ds.diagonal_columns.size());
  if (nd == N) {
    ds.kind = DiagonalStructure::Kind::FullyDiagonal;
    ds.V = CMat::Zero(N, N);
    for (int j = 0; j < N; ++j) ds.V.col(j) = t.coeffs[ds.exponents[j]].col(j);
    ds.d0 = N;
    return ds;
  }
  if (nd == 0) return ds;
  ds.kind = DiagonalStructure::Kind::DiagonalCorner;
  int trailing = 0;
  for (int j = N - 1; j >= 0 && ds.exponents[j] >= 0; --j) ++trailing;
  ds.d1 = trailing;
  ds.d0 = nd - trailing;
  ds.b = N - nd;
  return ds;
}

}  // namespace wll

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "wll/cuntzrep.hpp"
#include "wll/filterbank.hpp"

using namespace wll;
using namespace wll::testing;

namespace {

// (T_i* f)(z) = (1/N) sum over w^N = z of conj(m_i(w)) f(w), with f = z^-k, on |z| = 1
cplx adjoint_by_averaging(const FilterBank& fb, int i, int k, double phase) {
  const int N = fb.N;
  cplx acc = 0;
  for (int t = 0; t < N; ++t) {
    const cplx w = std::polar(1.0, (phase + 2 * pi * t) / N);
    acc += std::conj(poly_eval(fb.m[i], w)) * std::pow(w, -k);
  }
  return acc / double(N);
}

// dimension of the smallest subspace containing the columns of B and invariant under all V
int invariant_closure_dim(const std::vector<CMat>& V, CMat B) {
  auto rank_of = [](const CMat& X) {
    Eigen::JacobiSVD<CMat> svd(X);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > 1e-9;
    return r;
  };
  int r = rank_of(B);
  for (;;) {
    CMat next = B;
    for (const auto& v : V) {
      CMat ext(next.rows(), next.cols() + B.cols());
      ext << next, v * B;
      next = ext;
    }
    const int r2 = rank_of(next);
    if (r2 == r) return r;
    r = r2;
    B = next;
  }
}

}  // namespace

TEST_CASE("window size") {
  CHECK(window_size(2, 1) == 1);
  CHECK(window_size(2, 2) == 3);
  CHECK(window_size(2, 3) == 5);
  CHECK(window_size(3, 2) == 2);
  CHECK(window_size(4, 3) == 3);
  CHECK_THROWS_AS(window_size(1, 2), std::invalid_argument);
}

TEST_CASE("adjoint matrices agree with root-of-unity averaging") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const int N = 2 + t % 3, g = 1 + t % 4;
    const MatrixLoop A = random_loop(rng, N, g);
    const FilterBank fb = filters_from_loop(A);
    const auto M = adjoint_matrices(A);
    const int d = window_size(N, g) + 1;
    REQUIRE(static_cast<int>(M.size()) == N);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < d; ++k)
        for (double ph : {0.4, 2.9}) {
          const cplx z = std::polar(1.0, ph);
          cplx series = 0;
          for (int r = 0; r < d; ++r) series += M[i](r, k) * std::pow(z, -r);
          CHECK(std::abs(series - adjoint_by_averaging(fb, i, k, ph)) < 1e-12);
        }
  }
}

TEST_CASE("lambda0 and R") {
  std::mt19937_64 rng(32);
  const MatrixLoop A = random_loop(rng, 2, 3);
  const FilterBank fb = filters_from_loop(A);
  CHECK(lambda0(A) == doctest::Approx(std::norm(fb.m[0].coeff(0)) + std::norm(fb.m[1].coeff(0))));
  CHECK(std::abs(R_matrix(A, 0, 0)(0, 0) - lambda0(A)) < 1e-14);
  CHECK_THROWS_AS(R_matrix(A, 3, 0), std::out_of_range);
  CHECK(lambda0(loop_B()) == doctest::Approx(0.5));
}

TEST_CASE("sigma and its trace dual") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    const auto M = adjoint_matrices(random_loop(rng, 2 + t % 2, 2 + t % 3));
    const int d = static_cast<int>(M[0].rows());
    const CMat X = random_complex(rng, d, d), D = random_complex(rng, d, d);
    CHECK(std::abs((apply_sigma(M, X) * D).trace() - (X * apply_sigma_dual(M, D)).trace()) < 1e-10);
    // unital: sigma(I) = I follows from sum_i T_i T_i* = I restricted to the co-invariant window
    CHECK(max_abs(apply_sigma(M, CMat::Identity(d, d)) - CMat::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("fixed space on the worked examples") {
  const auto hd = sigma_fixed_space(loop_haar_diag());
  CHECK(hd.dimension >= 2);
  CHECK_FALSE(hd.ambiguous);
  CHECK(sigma_fixed_space(loop_B()).dimension == 1);
  CHECK(sigma_fixed_space(direct_sum(identity_loop(1), loop_B())).dimension >= 2);
  CHECK(sigma_fixed_space(direct_sum(loop_B(), loop_B())).dimension == 1);
  CHECK(sigma_fixed_space(two_param_loop(1.0, 2.0)).dimension == 1);
  // fixed elements really are fixed
  const auto M = adjoint_matrices(loop_haar_diag());
  for (const auto& X : hd.basis) CHECK(max_abs(apply_sigma(M, X) - X) < 1e-9);
}

TEST_CASE("classify") {
  const Classification b = classify(loop_B());
  CHECK(b.irreducible);
  CHECK(b.diagonal.kind == DiagonalStructure::Kind::PurelyNonDiagonal);
  const Classification h = classify(loop_haar_diag());
  CHECK_FALSE(h.irreducible);
  CHECK(h.projections_diagonal);
  CHECK(h.fixed_projections.size() >= 2);
  const Classification c = classify(direct_sum(identity_loop(1), loop_B()));
  CHECK_FALSE(c.irreducible);
  CHECK(c.projections_diagonal);
  CHECK(c.diagonal.kind == DiagonalStructure::Kind::DiagonalCorner);
  // purely non-diagonal loops are irreducible
  std::mt19937_64 rng(34);
  for (int t = 0; t < 30; ++t) {
    const MatrixLoop A = random_loop(rng, 2 + t % 2, 2 + t % 3);
    const Classification r = classify(A);
    if (r.diagonal.kind == DiagonalStructure::Kind::PurelyNonDiagonal) CHECK(r.irreducible);
  }
}

TEST_CASE("minimal subspace") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 30; ++t) {
    const int g = 2 + t % 3;
    const MatrixLoop A = random_loop(rng, 2, g);
    REQUIRE(lambda0(A) > 1e-6);
    CHECK(minimal_subspace(A).cols() == 2 * g);
  }
  // lambda0 = 0: e_0 is orthogonal to the subspace
  const CMat L = minimal_subspace(two_param_loop(0, 0));
  CHECK(L.cols() < 6);
  CHECK(L.row(0).norm() < 1e-12);
  CHECK_THROWS_AS(minimal_subspace(direct_sum(loop_B(), identity_loop(1))), std::invalid_argument);
}

TEST_CASE("truncation keeps the window cyclic") {
  std::mt19937_64 rng(36);
  std::vector<MatrixLoop> loops = {loop_B(), two_param_loop(0, 0), two_param_loop(pi / 4, pi / 2),
                                   two_param_loop(pi / 2, pi / 2), two_param_loop(1.0, 2.0)};
  for (int t = 0; t < 20; ++t) loops.push_back(random_loop(rng, 2, 2 + t % 3));
  for (const auto& A : loops) {
    const Truncation tr = truncate_window(A);
    const int d = window_size(2, genus(A)) + 1;
    CHECK(0 <= tr.p);
    CHECK(tr.p <= tr.q);
    CHECK(tr.q < d);
    if (lambda0(A) < 1 - 1e-10) CHECK(tr.p >= 1);
    std::vector<CMat> V;
    for (const auto& Mi : adjoint_matrices(A)) V.push_back(Mi.adjoint());
    const CMat B = CMat::Identity(d, d).middleCols(tr.p, tr.q - tr.p + 1);
    CHECK(invariant_closure_dim(V, B) == d);
  }
  // lambda0 = 1: no left truncation
  CHECK(truncate_window(loop_haar_diag()).p == 0);
}

TEST_CASE("fixed density matrix") {
  std::mt19937_64 rng(37);
  std::vector<MatrixLoop> loops = {loop_B(), two_param_loop(1.0, 2.0)};
  for (int t = 0; t < 10; ++t) loops.push_back(random_loop(rng, 2, 2 + t % 3));
  for (const auto& A : loops) {
    const CMat D = fixed_density_matrix(A);
    const auto M = adjoint_matrices(A);
    const int d = static_cast<int>(D.rows());
    CHECK(max_abs(apply_sigma_dual(M, D) - D) < 1e-9);
    CHECK(std::abs(D.trace() - 1.0) < 1e-12);
    CHECK(max_abs(D - D.adjoint()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMat> es(D);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    int rank = 0;
    for (int k = 0; k < d; ++k) rank += es.eigenvalues()(k) > 1e-9;
    // not faithful: e_0 and e_-r0 carry no weight
    CHECK(rank < d);
    CHECK(D.row(0).norm() < 1e-9);
    CHECK(D.row(d - 1).norm() < 1e-9);
    for (int s = 0; s < 20; ++s) {
      const CMat X = random_complex(rng, d, d);
      CHECK(std::abs((D * apply_sigma(M, X)).trace() - (D * X).trace()) < 1e-9);
    }
  }
  // B has a diagonal fixed state on the interior indices
  const CMat DB = fixed_density_matrix(loop_B());
  CHECK(max_abs(DB - CMat(DB.diagonal().asDiagonal())) == 0);
  // generic genus-3 loops have no diagonal fixed state
  const CMat Dg = fixed_density_matrix(two_param_loop(1.0, 2.0));
  CHECK(max_abs(Dg - CMat(Dg.diagonal().asDiagonal())) > 1e-3);

  // genus 2: D proportional to lambda_0 E_11 + (1 - lambda_1) E_22 with lambda_i = R(0,0)_ii
  for (int t = 0; t < 10; ++t) {
    const MatrixLoop A = random_loop(rng, 2, 2);
    const CMat R = R_matrix(A, 0, 0);
    const double l0 = R(0, 0).real(), l1 = R(1, 1).real();
    CMat want = CMat::Zero(4, 4);
    want(1, 1) = l0;
    want(2, 2) = 1 - l1;
    want /= want.trace();
    CHECK(max_abs(fixed_density_matrix(A) - want) < 1e-9);
  }
}

TEST_CASE("projection products") {
  const CMat e0 = CMat::Identity(2, 2).col(0);
  auto r = projection_product_test({CMat(CMat::Identity(3, 3).col(0).asDiagonal()), CMat::Identity(3, 3)});
  CHECK(r.is_projection);
  CHECK(r.all_commute);
  r = projection_product_test({line_projection(pi / 4), line_projection(0)});
  CHECK_FALSE(r.is_projection);
  CHECK_FALSE(r.all_commute);
  r = projection_product_test({line_projection(0.3), line_projection(0.3 + pi)});
  CHECK(r.is_projection);
  CHECK(r.all_commute);
  CHECK_THROWS_AS(projection_product_test({2 * line_projection(0.1)}), std::invalid_argument);
  (void)e0;

  // three projections: R can be a projection without the family commuting
  CMat P1 = CMat::Zero(3, 3), P2 = CMat::Zero(3, 3), P3 = CMat::Zero(3, 3);
  P1(0, 0) = P1(1, 1) = 1;
  P2(0, 0) = 1;
  P3(0, 0) = 1;
  P3.block(1, 1, 2, 2) << 0.5, 0.5, 0.5, 0.5;
  r = projection_product_test({P1, P2, P3});
  CHECK(r.is_projection);
  CHECK(r.r_norm > 0.5);
  CHECK_FALSE(r.all_commute);
}

TEST_CASE("R identities") {
  const double th = 0.8, rh = 2.3;
  const MatrixLoop A = two_param_loop(th, rh);
  const CMat Qt = line_projection(th), Qr = line_projection(rh);
  CHECK(max_abs(R_matrix(A, 2, 2) - Qr * Qt * Qr) < 1e-14);
  std::mt19937_64 rng(38);
  for (int t = 0; t < 10; ++t) {
    const MatrixLoop L = random_loop(rng, 2 + t % 3, 1 + t % 4);
    CMat S = CMat::Zero(L.N, L.N);
    for (int p = 0; p < genus(L); ++p) S += R_matrix(L, p, p);
    CHECK(max_abs(S - CMat::Identity(L.N, L.N)) < 1e-12);
  }
  CHECK(std::abs(R_matrix(two_param_loop(0, 0), 0, 0)(0, 0)) < 1e-15);
}

TEST_CASE("adjoint matrices of simple loops") {
  CHECK(window_size(3, 3) == 4);
  const MatrixLoop B = loop_B();
  const auto M = adjoint_matrices(B);
  for (int i = 0; i < 2; ++i)
    for (int p = 0; p < 3; ++p) CHECK(M[i](p, 0) == std::conj(B.coeffs[p](i, 0)));
  const auto I = adjoint_matrices(identity_loop(2));
  CHECK(I[0](0, 0) == 1.0);
  CHECK(I[0](1, 1) == 0.0);
  CHECK(I[1](1, 1) == 1.0);
  CHECK(I[1](0, 0) == 0.0);
}

TEST_CASE("lambda0 and minimal subspace on named loops") {
  CHECK(lambda0(loop_B()) == doctest::Approx(0.5));
  CHECK(lambda0(two_param_loop(pi / 2, pi / 2)) == doctest::Approx(1));
  CHECK(std::abs(lambda0(two_param_loop(0, 0))) < 1e-15);
  CHECK(minimal_subspace(loop_B()).cols() == 6);
  // the diagonal Haar loop already fills its window
  CHECK(minimal_subspace(loop_haar_diag()).cols() == 4);
  // the diagonal Haar loop doubles as the mock Haar loop with k = 1
  CHECK(sigma_fixed_space(loop_haar_diag()).dimension >= 3);
}

TEST_CASE("right truncation in the two-angle family") {
  // the right end drops at most one index, so K_red = span{z^-2, z^-3} cannot occur here
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const MatrixLoop A = two_param_loop(i * pi / 12, j * pi / 12);
      const Truncation t = truncate_window(A);
      CHECK(t.q >= window_size(2, genus(A)) - 1);
    }
}

#include "wll/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wll {

namespace {

std::vector<cplx> scaled_coeffs(const ComplexPoly& p, int N) {
  std::vector<cplx> v = p.coeffs();
  for (auto& c : v) c *= std::sqrt(double(N));
  return v;
}

void prune(SparseSeq& s) {
  for (auto it = s.begin(); it != s.end();) {
    if (it->second == cplx(0.0)) it = s.erase(it);
    else ++it;
  }
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<cplx> FilterBank::lowpass() const { return m.empty() ? std::vector<cplx>{} : scaled_coeffs(m[0], N); }

std::vector<cplx> FilterBank::highpass() const { return m.size() < 2 ? std::vector<cplx>{} : scaled_coeffs(m[1], N); }

FilterBank filters_from_loop(const MatrixLoop& A) {
  const int N = A.N, g = static_cast<int>(A.coeffs.size());
  FilterBank fb{N, {}};
  for (int j = 0; j < N; ++j) {
    std::vector<cplx> c(N * g, 0.0);
    for (int p = 0; p < g; ++p)
      for (int k = 0; k < N; ++k) c[p * N + k] = A.coeffs[p](j, k);
    fb.m.emplace_back(std::move(c));
  }
  return fb;
}

MatrixLoop loop_from_filters(const FilterBank& fb) {
  const int N = fb.N;
  if (static_cast<int>(fb.m.size()) != N) throw std::invalid_argument("loop_from_filters: need N filters");
  int deg = 0;
  for (const auto& p : fb.m) deg = std::max(deg, p.degree());
  const int g = deg / N + 1;
  MatrixLoop A{N, std::vector<CMat>(g, CMat::Zero(N, N))};
  // coefficient of z^p in A_{j,k} is the coefficient of z^{pN+k} in m_j
  for (int j = 0; j < N; ++j)
    for (int p = 0; p < g; ++p)
      for (int k = 0; k < N; ++k) A.coeffs[p](j, k) = fb.m[j].coeff(p * N + k);
  A = trim(A);
  if (A.coeffs.empty()) throw std::invalid_argument("loop_from_filters: zero filters");
  if (!validate_loop(A, 1e-10).valid()) throw std::invalid_argument("loop_from_filters: polyphase matrix is not unitary");
  return A;
}

std::vector<cplx> highpass_from_lowpass(const std::vector<cplx>& a) {
  if (a.size() % 2 != 0) throw std::invalid_argument("highpass_from_lowpass: odd length");
  const int L = static_cast<int>(a.size());
  std::vector<cplx> b(L);
  for (int k = 0; k < L; ++k) b[k] = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(a[L - 1 - k]);
  return b;
}

FilterBank filters_from_lowpass(const std::vector<cplx>& a) {
  std::vector<cplx> aa = a;
  if (aa.size() % 2 != 0) aa.push_back(0.0);
  const std::vector<cplx> b = highpass_from_lowpass(aa);
  const double s = 1 / std::sqrt(2.0);
  std::vector<cplx> m0(aa.size()), m1(b.size());
  for (size_t k = 0; k < aa.size(); ++k) {
    m0[k] = s * aa[k];
    m1[k] = s * b[k];
  }
  return {2, {ComplexPoly(m0), ComplexPoly(m1)}};
}

QmfReport qmf_check(const FilterBank& fb) {
  QmfReport r;
  const int N = fb.N;
  if (fb.m.empty()) throw std::invalid_argument("qmf_check: empty bank");
  const double sN = std::sqrt(double(N));
  std::vector<cplx> w(N);
  for (int k = 0; k < N; ++k) w[k] = std::polar(1.0, 2 * std::numbers::pi * k / N);
  const bool full = static_cast<int>(fb.m.size()) == N;
  for (cplx z : circle_samples(128)) {
    double s = 0;
    for (int k = 0; k < N; ++k) s += std::norm(poly_eval(fb.m[0], z * w[k]));
    r.circle_residual = std::max(r.circle_residual, std::abs(s - N));
    if (full) {
      CMat M(N, N);
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) M(j, k) = poly_eval(fb.m[j], w[k] * z) / sN;
      r.polyphase_residual =
          std::max(r.polyphase_residual, (M.adjoint() * M - CMat::Identity(N, N)).cwiseAbs().maxCoeff());
    }
  }
  r.normalization_residual = std::abs(poly_eval(fb.m[0], 1.0) - sN);
  const std::vector<cplx> a = fb.lowpass();
  const int L = static_cast<int>(a.size());
  for (int l = 0; l * N < std::max(L, 1); ++l) {
    cplx s = 0;
    for (int k = 0; k + l * N < L; ++k) s += a[k + l * N] * std::conj(a[k]);
    if (l == 0) s -= double(N);
    r.orthogonality_residual = std::max(r.orthogonality_residual, std::abs(s));
  }
  return r;
}

SparseSeq apply_S(const FilterBank& fb, int j, const SparseSeq& xi) {
  const auto& c = fb.m.at(j).coeffs();
  SparseSeq out;
  for (const auto& [l, v] : xi)
    for (size_t t = 0; t < c.size(); ++t) out[l * fb.N + static_cast<long>(t)] += c[t] * v;
  prune(out);
  return out;
}

SparseSeq apply_S_adjoint(const FilterBank& fb, int j, const SparseSeq& xi) {
  const auto& c = fb.m.at(j).coeffs();
  const long N = fb.N;
  SparseSeq out;
  // (S_j* eta)_l = sum_k conj(m_j[k - lN]) eta_k
  for (const auto& [k, v] : xi) {
    const long lmax = floor_div(k, N);
    for (long l = lmax; k - l * N < static_cast<long>(c.size()); --l) out[l] += std::conj(c[k - l * N]) * v;
  }
  prune(out);
  return out;
}

SparseSeq subband_projection(const FilterBank& fb, int n, const SparseSeq& xi) {
  if (n < 1) throw std::invalid_argument("subband_projection: n must be >= 1");
  auto down_up = [&](int p) {
    SparseSeq s = xi;
    for (int i = 0; i < p; ++i) s = apply_S_adjoint(fb, 0, s);
    for (int i = 0; i < p; ++i) s = apply_S(fb, 0, s);
    return s;
  };
  return seq_add(down_up(n - 1), down_up(n), -1.0);
}

SparseSeq seq_add(const SparseSeq& a, const SparseSeq& b, cplx s) {
  SparseSeq out = a;
  for (const auto& [k, v] : b) out[k] += s * v;
  prune(out);
  return out;
}

double seq_norm(const SparseSeq& a) {
  double s = 0;
  for (const auto& kv : a) s += std::norm(kv.second);
  return std::sqrt(s);
}

cplx seq_inner(const SparseSeq& a, const SparseSeq& b) {
  cplx s = 0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end()) s += std::conj(v) * it->second;
  }
  return s;
}

FiltrationResult monomial_filtration(const FilterBank& fb) {
  FiltrationResult r;
  int s = -1;
  for (const auto& p : fb.m) {
    const int v = p.valuation();
    if (v < 0) continue;
    s = s < 0 ? v : std::min(s, v);
  }
  r.shift = std::max(s, 0);
  r.reduced.N = fb.N;
  for (const auto& p : fb.m) r.reduced.m.push_back(p.shifted(-r.shift));
  for (const auto& p : fb.m) r.lambda0 += std::norm(p.coeff(0));
  r.degenerate_diagonal = std::abs(r.lambda0 - 1.0) < 1e-10;
  return r;
}

}  // namespace wll

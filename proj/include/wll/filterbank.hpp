#pragma once

#include <map>
#include <vector>

#include "wll/loopgroup.hpp"
#include "wll/polyalg.hpp"

namespace wll {

/** Subband filters m_0..m_{N-1} of scale N. */
struct FilterBank {
  int N = 2;
  std::vector<ComplexPoly> m;

  // a_k = sqrt(N) * coefficient of z^k in m_0
  std::vector<cplx> lowpass() const;
  // b_k = sqrt(N) * coefficient of z^k in m_1
  std::vector<cplx> highpass() const;
};

FilterBank filters_from_loop(const MatrixLoop& A);
// Throws std::invalid_argument when the polyphase matrix is not unitary.
MatrixLoop loop_from_filters(const FilterBank& fb);

std::vector<cplx> highpass_from_lowpass(const std::vector<cplx>& a);
// N = 2 bank completed with the canonical highpass.
FilterBank filters_from_lowpass(const std::vector<cplx>& a);

struct QmfReport {
  double circle_residual = 0;         // max |sum_k |m0(z w^k)|^2 - N|
  double polyphase_residual = 0;      // unitarity of (1/sqrt N)(m_j(w^k z)), 0 with a single filter
  double normalization_residual = 0;  // |m0(1) - sqrt N|
  double orthogonality_residual = 0;  // max_l |sum_k a_{k+Nl} conj(a_k) - N delta_l|
  bool ok(double tol) const {
    return circle_residual < tol && polyphase_residual < tol && normalization_residual < tol &&
           orthogonality_residual < tol;
  }
};

QmfReport qmf_check(const FilterBank& fb);

using SparseSeq = std::map<long, cplx>;

SparseSeq apply_S(const FilterBank& fb, int j, const SparseSeq& xi);
SparseSeq apply_S_adjoint(const FilterBank& fb, int j, const SparseSeq& xi);
// P_n = S0^{n-1} S0*^{n-1} - S0^n S0*^n
SparseSeq subband_projection(const FilterBank& fb, int n, const SparseSeq& xi);

SparseSeq seq_add(const SparseSeq& a, const SparseSeq& b, cplx s = 1.0);
double seq_norm(const SparseSeq& a);
cplx seq_inner(const SparseSeq& a, const SparseSeq& b);

struct FiltrationResult {
  int shift = 0;  // largest s with z^s dividing every m_i
  FilterBank reduced;
  double lambda0 = 0;
  bool degenerate_diagonal = false;  // lambda0 = 1: loop is V diag(1, b z^g)
};

FiltrationResult monomial_filtration(const FilterBank& fb);

}  // namespace wll

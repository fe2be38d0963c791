#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "wll/cascade.hpp"
#include "wll/loopgroup.hpp"
#include "wll/polyalg.hpp"

namespace wll {

// largest p with (1+z)^p | m0, remainder norm below tol
int moment_order(const ComplexPoly& m0, double tol = 1e-9);

/** Orbit of z -> z^2 on roots of unity of order 2^k - 1. */
struct Cycle {
  std::vector<cplx> points;
  std::vector<long> numerators;  // points[i] = exp(2 pi i numerators[i] / order)
  long order = 0;
  int length = 0;
};

std::vector<Cycle> enumerate_cycles(int max_len);

struct CohenResult {
  bool strict = true;
  Cycle cycle;  // witness when not strict
};

CohenResult cohen_classify(const ComplexPoly& m0);

struct CensusRecord {
  std::array<double, 6> coeffs{};
  double lambda0 = 0;
  int cycle_length = 0;
  double theta = 0, rho = 0;
  bool irreducible = false;
  int fixed_dim = 0;
  MatrixLoop loop;
};

std::vector<CensusRecord> tight_frame_census();

struct ScanRecord {
  double theta = 0, rho = 0;
  std::array<double, 6> a{};
  double lambda0 = 0;
  DivergenceFlags div;
  int moment_order = 0;
  CohenResult cohen;
  bool embed0_3 = false, embed1_4 = false, embed2_5 = false;
};

ScanRecord scan_point(double theta, double rho);

// Cells theta0 + i*step < theta1, rho0 + j*step < rho1, row-major in (theta, rho).
// threads <= 0 uses WLL_THREADS or the hardware count.
std::vector<ScanRecord> grid_scan(double theta0, double theta1, double rho0, double rho1, double step,
                                  int threads = 0);

inline constexpr const char* kScanHeader =
    "theta,rho,a0,a1,a2,a3,a4,a5,lambda0,div_left,div_right,marginal,moment_order,cohen,embed0_3,embed1_4,embed2_5";

std::string cohen_label(const CohenResult& c);
void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& recs);

// Supports of the embedded genus-2 family and the continuity ranges quoted for them.
struct EmbeddingLine {
  std::string name;
  std::string line;
  int support_lo, support_hi;
  std::string continuous;
};

std::vector<EmbeddingLine> embedding_lines();

}  // namespace wll

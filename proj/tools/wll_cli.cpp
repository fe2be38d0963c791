// Command-line front end: family, cascade, classify, scan, factor.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "wll/cascade.hpp"
#include "wll/cuntzrep.hpp"
#include "wll/filterbank.hpp"
#include "wll/io.hpp"
#include "wll/loopgroup.hpp"
#include "wll/waveclass.hpp"

namespace {

using namespace wll;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitAmbiguous = 4;
constexpr int kMaxLevels = 24;

std::string fmt(double v) {
  if (std::abs(v) < 1e-14) v = 0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

MatrixLoop load_valid_loop(const std::string& path) {
  MatrixLoop A = read_loop_file(path);
  const ValidationReport v = validate_loop(A);
  if (!v.valid())
    throw InputError("loop is not unitary (residual " + fmt(std::max(v.unitarity_residual, v.orthogonality_residual)) + ")");
  return trim(A);
}

int cmd_family(double theta, double rho, const std::string& out) {
  const auto a = two_param_coeffs(theta, rho);
  const MatrixLoop A = two_param_loop(theta, rho);
  const auto f = divergence_flags(a);
  std::ostringstream os;
  os << "a = ";
  for (int k = 0; k < 6; ++k) os << (k ? "," : "") << fmt(a[k]);
  os << "\nlambda0 = " << fmt(lambda0(A)) << "\ndiv_left = " << f.diverges_left << "\ndiv_right = " << f.diverges_right
     << "\nmarginal = " << f.marginal << '\n';
  std::cout << os.str();
  if (!out.empty()) write_json_file(out, loop_to_json(A));
  return 0;
}

int cmd_cascade(const std::string& loop, const std::vector<double>& angles, int levels, bool wavelet,
                const std::string& out) {
  if (levels < 0 || levels > kMaxLevels) throw UsageError("--levels must be in [0, 24]");
  std::vector<cplx> a, b;
  if (!loop.empty()) {
    const MatrixLoop A = load_valid_loop(loop);
    if (A.N != 2) throw InputError("cascade needs a scale-2 loop");
    const FilterBank fb = filters_from_loop(A);
    const size_t L = 2 * A.coeffs.size();
    a = fb.lowpass();
    b = fb.highpass();
    a.resize(L, 0.0);
    b.resize(L, 0.0);
  } else {
    if (angles.size() != 2) throw UsageError("need --loop or both --theta and --rho");
    const auto c = two_param_coeffs(angles[0], angles[1]);
    a.assign(c.begin(), c.end());
    b = filters_from_loop(two_param_loop(angles[0], angles[1])).highpass();
    b.resize(6, 0.0);
  }
  bool real = true;
  for (size_t k = 0; k < a.size(); ++k) real = real && a[k].imag() == 0 && b[k].imag() == 0;
  std::ostringstream os;
  if (real) {
    std::vector<double> ar(a.size()), br(b.size());
    for (size_t k = 0; k < a.size(); ++k) {
      ar[k] = a[k].real();
      br[k] = b[k].real();
    }
    write_grid_csv(os, wavelet ? wavelet_run(ar, br, levels) : cascade_run(ar, levels));
  } else {
    write_grid_csv(os, wavelet ? wavelet_run(a, b, levels) : cascade_run(a, levels));
  }
  emit(os.str(), out);
  return 0;
}

int cmd_classify(const std::string& loop) {
  const MatrixLoop A = load_valid_loop(loop);
  json r;
  r["N"] = A.N;
  r["genus"] = genus(A);
  r["lambda0"] = lambda0(A);
  r["r0"] = window_size(A.N, genus(A));
  Classification c;
  try {
    c = classify(A);
  } catch (const AmbiguousRank& e) {
    std::cerr << "error: ambiguous rank decision; singular values:";
    for (double s : e.singular_values) std::cerr << ' ' << fmt(s);
    std::cerr << '\n';
    return kExitAmbiguous;
  }
  r["fixed_dim"] = c.fixed_dim;
  r["classification"] = c.irreducible ? "irreducible" : "reducible";
  json diag;
  diag["kind"] = to_string(c.diagonal.kind);
  diag["d0"] = c.diagonal.d0;
  diag["b"] = c.diagonal.b;
  diag["d1"] = c.diagonal.d1;
  diag["columns"] = c.diagonal.diagonal_columns;
  if (!c.irreducible) {
    diag["fixed_projections"] = c.fixed_projections;
    diag["projections_diagonal"] = c.projections_diagonal;
  }
  r["diagonal_data"] = diag;
  if (A.N == 2) {
    const FilterBank fb = filters_from_loop(A);
    r["minimal_subspace_dim"] = minimal_subspace(A).cols();
    r["cohen"] = cohen_label(cohen_classify(fb.m[0]));
    r["moment_order"] = moment_order(fb.m[0]);
  } else {
    r["minimal_subspace_dim"] = nullptr;
    r["cohen"] = nullptr;
    r["moment_order"] = nullptr;
  }
  std::cout << r.dump(2) << '\n';
  return 0;
}

void write_pgm(const std::string& path, const std::vector<ScanRecord>& recs, long nt, long nr,
               const std::string& field) {
  auto value = [&](const ScanRecord& r) -> double {
    if (field.size() == 2 && field[0] == 'a' && field[1] >= '0' && field[1] <= '5') return r.a[field[1] - '0'];
    if (field == "lambda0") return r.lambda0;
    if (field == "moment_order") return r.moment_order;
    if (field == "divergence") return r.div.diverges_left || r.div.diverges_right ? 1.0 : 0.0;
    throw UsageError("unknown --field " + field);
  };
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : recs) {
    lo = std::min(lo, value(r));
    hi = std::max(hi, value(r));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "P5\n" << nt << ' ' << nr << "\n255\n";
  // theta runs left to right, rho bottom to top
  for (long j = nr - 1; j >= 0; --j)
    for (long i = 0; i < nt; ++i) {
      const double v = value(recs[i * nr + j]);
      const double s = hi > lo ? (v - lo) / (hi - lo) : 0.0;
      f.put(static_cast<char>(static_cast<unsigned char>(std::lround(255 * s))));
    }
}

int cmd_scan(double step, const std::vector<double>& window, const std::string& out, const std::string& pgm,
             const std::string& field, int threads) {
  if (!(step > 0)) throw UsageError("--step must be positive");
  std::vector<double> w = window;
  if (w.empty()) w = {0, std::numbers::pi, 0, std::numbers::pi};
  if (w.size() != 4 || !(w[1] > w[0]) || !(w[3] > w[2])) throw UsageError("--window needs theta0 theta1 rho0 rho1");
  const auto recs = grid_scan(w[0], w[1], w[2], w[3], step, threads);
  std::ostringstream os;
  write_scan_csv(os, recs);
  emit(os.str(), out);
  if (!pgm.empty()) {
    long nr = 0;
    while (nr < static_cast<long>(recs.size()) && recs[nr].theta == recs[0].theta) ++nr;
    write_pgm(pgm, recs, nr ? static_cast<long>(recs.size()) / nr : 0, nr, field);
  }
  return 0;
}

int cmd_factor(const std::string& loop) {
  const MatrixLoop A = load_valid_loop(loop);
  Factorization f;
  try {
    f = factorize(A);
  } catch (const FactorizationFailed& e) {
    throw InputError(e.what());
  }
  json r;
  r["V"] = matrix_to_json(f.V);
  json fs = json::array();
  for (const auto& fac : f.factors) fs.push_back({{"P", matrix_to_json(fac.P)}, {"exponent", fac.exponent}});
  r["factors"] = fs;
  r["residual"] = f.residual;
  std::cout << r.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet filters from unitary polynomial loops"};
  app.require_subcommand(1);

  auto* family = app.add_subcommand("family", "coefficients of the two-angle genus-3 family");
  double f_theta = 0, f_rho = 0;
  std::string f_out;
  family->add_option("--theta", f_theta, "theta in radians")->required();
  family->add_option("--rho", f_rho, "rho in radians")->required();
  family->add_option("--out", f_out, "write the loop as JSON");

  auto* cascade = app.add_subcommand("cascade", "cascade grid of the scaling or wavelet function");
  std::string c_loop, c_out;
  double c_theta = 0, c_rho = 0;
  int c_levels = 8;
  bool c_wavelet = false;
  auto* c_loop_opt = cascade->add_option("--loop", c_loop, "loop JSON file");
  auto* c_theta_opt = cascade->add_option("--theta", c_theta, "theta in radians");
  auto* c_rho_opt = cascade->add_option("--rho", c_rho, "rho in radians");
  c_loop_opt->excludes(c_theta_opt)->excludes(c_rho_opt);
  cascade->add_option("--levels", c_levels, "cascade levels (<= 24)");
  cascade->add_flag("--wavelet", c_wavelet, "psi from the highpass filter instead of phi");
  cascade->add_option("--out", c_out, "CSV output path");

  auto* cls = app.add_subcommand("classify", "irreducibility and filter diagnostics of a loop");
  std::string k_loop;
  cls->add_option("--loop", k_loop, "loop JSON file")->required();

  auto* scan = app.add_subcommand("scan", "scan the (theta, rho) family");
  double s_step = 0;
  std::vector<double> s_window;
  std::string s_out, s_pgm, s_field = "a0";
  int s_threads = 0;
  scan->add_option("--step", s_step, "grid step in radians")->required();
  scan->add_option("--window", s_window, "theta0 theta1 rho0 rho1")->expected(4);
  scan->add_option("--out", s_out, "CSV output path");
  scan->add_option("--pgm", s_pgm, "grayscale raster of one field");
  scan->add_option("--field", s_field, "field for --pgm: a0..a5, lambda0, moment_order, divergence");
  scan->add_option("--threads", s_threads, "worker threads (0 = auto)");

  auto* factor = app.add_subcommand("factor", "factorize a loop into degree-one projection factors");
  std::string p_loop;
  factor->add_option("--loop", p_loop, "loop JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*family) return cmd_family(f_theta, f_rho, f_out);
    if (*cascade) {
      std::vector<double> angles;
      if (*c_theta_opt) angles.push_back(c_theta);
      if (*c_rho_opt) angles.push_back(c_rho);
      if (!angles.empty() && angles.size() != 2) throw UsageError("need both --theta and --rho");
      return cmd_cascade(c_loop, angles, c_levels, c_wavelet, c_out);
    }
    if (*cls) return cmd_classify(k_loop);
    if (*scan) return cmd_scan(s_step, s_window, s_out, s_pgm, s_field, s_threads);
    if (*factor) return cmd_factor(p_loop);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

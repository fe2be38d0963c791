#include "wll/waveclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "wll/cuntzrep.hpp"
#include "wll/filterbank.hpp"

namespace wll {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Cycle> cycles_upto(int max_len) {
  std::vector<Cycle> out;
  for (int k = 2; k <= max_len; ++k) {
    const long order = (1L << k) - 1;
    std::vector<bool> seen(order, false);
    for (long j = 1; j < order; ++j) {
      if (seen[j]) continue;
      std::vector<long> orbit;
      long x = j;
      do {
        orbit.push_back(x);
        seen[x] = true;
        x = (2 * x) % order;
      } while (x != j);
      // shorter orbits were already listed at a smaller k
      if (static_cast<int>(orbit.size()) != k) continue;
      Cycle c;
      c.order = order;
      c.length = k;
      c.numerators = orbit;
      for (long n : orbit) c.points.push_back(std::polar(1.0, 2 * kPi * double(n) / double(order)));
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

int moment_order(const ComplexPoly& m0, double tol) {
  if (m0.is_zero()) throw std::invalid_argument("moment_order: zero polynomial");
  const ComplexPoly d{1.0, 1.0};
  ComplexPoly q = m0;
  int p = 0;
  while (q.degree() >= 1) {
    DivMod dm = poly_divmod(q, d);
    if (dm.remainder.norm() >= tol) break;
    q = dm.quotient;
    ++p;
  }
  return p;
}

std::vector<Cycle> enumerate_cycles(int max_len) {
  if (max_len > 6) throw std::invalid_argument("enumerate_cycles: max_len <= 6");
  return cycles_upto(max_len);
}

CohenResult cohen_classify(const ComplexPoly& m0) {
  if (m0.is_zero()) throw std::invalid_argument("cohen_classify: zero polynomial");
  double scale = 0;
  for (cplx c : m0.coeffs()) scale = std::max(scale, std::abs(c));
  // a cycle inside the zero set has at most deg m0 points
  const int max_len = std::min(m0.degree(), 12);
  CohenResult r;
  for (const Cycle& c : cycles_upto(max_len)) {
    bool all = true;
    for (cplx z : c.points)
      if (std::abs(poly_eval(m0, -z)) >= 1e-8 * scale) {
        all = false;
        break;
      }
    if (all) {
      r.strict = false;
      r.cycle = c;
      return r;
    }
  }
  return r;
}

std::vector<CensusRecord> tight_frame_census() {
  const std::vector<std::array<double, 6>> rows = {
      {0, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 1, 0}, {1, 0, 0, 0, 0, 1}};
  std::vector<CensusRecord> out;
  for (const auto& row : rows) {
    CensusRecord rec;
    rec.coeffs = row;
    bool found = false;
    // the witnesses sit on the pi/12 lattice of the fundamental square
    for (int i = 0; i < 12 && !found; ++i)
      for (int j = 0; j < 12 && !found; ++j) {
        const double t = i * kPi / 12, p = j * kPi / 12;
        const auto a = two_param_coeffs(t, p);
        double err = 0;
        for (int k = 0; k < 6; ++k) err = std::max(err, std::abs(a[k] - row[k]));
        if (err < 1e-10) {
          rec.theta = t;
          rec.rho = p;
          found = true;
        }
      }
    if (!found) throw std::logic_error("tight_frame_census: no witness for a census row");
    rec.loop = two_param_loop(rec.theta, rec.rho);
    rec.lambda0 = lambda0(rec.loop);
    const FilterBank fb = filters_from_loop(rec.loop);
    rec.cycle_length = cohen_classify(fb.m[0]).cycle.length;
    const Classification cls = classify(rec.loop);
    rec.irreducible = cls.irreducible;
    rec.fixed_dim = cls.fixed_dim;
    out.push_back(rec);
  }
  return out;
}

ScanRecord scan_point(double theta, double rho) {
  constexpr double tol = 1e-10;
  ScanRecord r;
  r.theta = theta;
  r.rho = rho;
  r.a = two_param_coeffs(theta, rho);
  r.lambda0 = lambda0(two_param_loop(theta, rho));
  r.div = divergence_flags(r.a);
  std::vector<cplx> m(6);
  for (int k = 0; k < 6; ++k) m[k] = r.a[k] / std::sqrt(2.0);
  const ComplexPoly m0(m);
  r.moment_order = moment_order(m0);
  r.cohen = cohen_classify(m0);
  auto zero = [&](int k) { return std::abs(r.a[k]) < tol; };
  r.embed0_3 = zero(4) && zero(5);
  r.embed1_4 = zero(0) && zero(5);
  r.embed2_5 = zero(0) && zero(1);
  return r;
}

std::vector<ScanRecord> grid_scan(double theta0, double theta1, double rho0, double rho1, double step, int threads) {
  if (!(step > 0)) throw std::invalid_argument("grid_scan: step must be positive");
  auto count = [&](double lo, double hi) {
    long n = 0;
    while (lo + n * step < hi - 1e-9 * step) ++n;
    return n;
  };
  const long nt = count(theta0, theta1), nr = count(rho0, rho1);
  std::vector<ScanRecord> out(nt * nr);
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("WLL_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) threads = std::min(threads, cap);
    }
  }
  const long total = nt * nr;
  threads = static_cast<int>(std::max(1L, std::min<long>(threads, total)));
  auto work = [&](int tid) {
    for (long idx = tid; idx < total; idx += threads)
      out[idx] = scan_point(theta0 + (idx / nr) * step, rho0 + (idx % nr) * step);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string cohen_label(const CohenResult& c) {
  return c.strict ? "strict" : "tight_frame_" + std::to_string(c.cycle.length);
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& recs) {
  auto f = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << kScanHeader << '\n';
  for (const auto& r : recs) {
    os << f(r.theta) << ',' << f(r.rho);
    for (double a : r.a) os << ',' << f(a);
    os << ',' << f(r.lambda0) << ',' << r.div.diverges_left << ',' << r.div.diverges_right << ','
       << r.div.marginal << ',' << r.moment_order << ',' << cohen_label(r.cohen) << ',' << r.embed0_3 << ','
       << r.embed1_4 << ',' << r.embed2_5 << '\n';
  }
}

std::vector<EmbeddingLine> embedding_lines() {
  return {
      {"embed0_3", "theta = 3pi/4", 0, 3, "rho in (0, pi/4) U (3pi/4, pi)"},
      {"embed1_4", "rho = 0", 1, 4, "theta in (pi/4, pi/2) U (pi/2, 3pi/4)"},
      {"embed2_5", "theta = pi/4", 2, 5, "rho in (0, pi/4) U (3pi/4, pi)"},
  };
}

}  // namespace wll

#include "wll/io.hpp"

#include <cmath>
#include <fstream>

namespace wll {

using nlohmann::json;

namespace {

cplx parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError("expected [re, im] pair");
  cplx c{v[0].get<double>(), v[1].get<double>()};
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("non-finite coefficient");
  return c;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

}  // namespace

json matrix_to_json(const CMat& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(complex_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json loop_to_json(const MatrixLoop& A) {
  json c = json::array();
  for (const auto& M : A.coeffs) c.push_back(matrix_to_json(M));
  return {{"N", A.N}, {"coeffs", c}};
}

MatrixLoop loop_from_json(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("coeffs")) throw InputError("loop: need N and coeffs");
  if (!j["N"].is_number_integer()) throw InputError("loop: N must be an integer");
  MatrixLoop A;
  A.N = j["N"].get<int>();
  if (A.N < 2) throw InputError("loop: N must be >= 2");
  const json& cs = j["coeffs"];
  if (!cs.is_array() || cs.empty()) throw InputError("loop: coeffs must be a non-empty list");
  for (const auto& m : cs) {
    if (!m.is_array() || static_cast<int>(m.size()) != A.N) throw InputError("loop: coefficient has wrong row count");
    CMat M(A.N, A.N);
    for (int r = 0; r < A.N; ++r) {
      if (!m[r].is_array() || static_cast<int>(m[r].size()) != A.N)
        throw InputError("loop: coefficient has wrong column count");
      for (int c = 0; c < A.N; ++c) M(r, c) = parse_complex(m[r][c]);
    }
    A.coeffs.push_back(M);
  }
  return A;
}

json filters_to_json(const FilterBank& fb) {
  json m = json::array();
  for (const auto& p : fb.m) {
    json c = json::array();
    for (cplx v : p.coeffs()) c.push_back(complex_json(v));
    m.push_back(c);
  }
  return {{"N", fb.N}, {"m", m}};
}

FilterBank filters_from_json(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("m")) throw InputError("filters: need N and m");
  if (!j["N"].is_number_integer()) throw InputError("filters: N must be an integer");
  FilterBank fb;
  fb.N = j["N"].get<int>();
  if (!j["m"].is_array()) throw InputError("filters: m must be a list");
  for (const auto& p : j["m"]) {
    if (!p.is_array()) throw InputError("filters: each m_j must be a list");
    std::vector<cplx> c;
    for (const auto& v : p) c.push_back(parse_complex(v));
    fb.m.emplace_back(std::move(c));
  }
  return fb;
}

MatrixLoop read_loop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return loop_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace wll

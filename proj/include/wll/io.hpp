#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wll/filterbank.hpp"
#include "wll/loopgroup.hpp"

namespace wll {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"N": int, "coeffs": [A0, A1, ...]}, each A row-major with [re, im] entries
nlohmann::json loop_to_json(const MatrixLoop& A);
MatrixLoop loop_from_json(const nlohmann::json& j);

// {"N": int, "m": [[[re, im], ...], ...]}
nlohmann::json filters_to_json(const FilterBank& fb);
FilterBank filters_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMat& M);

MatrixLoop read_loop_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace wll

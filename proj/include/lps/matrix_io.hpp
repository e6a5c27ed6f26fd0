#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lps/matrix.hpp"

namespace lps {

/// {"n": <int>, "data": [[row], ...]}; rows are real, row-major. The reader
/// symmetrizes and rejects non-finite or ragged data with InputError.
SymMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const SymMatrix& m);

SymMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const SymMatrix& m);

}  // namespace lps

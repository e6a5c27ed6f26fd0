#include "lps/matrix_io.hpp"

#include <fstream>
#include <vector>

#include "lps/errors.hpp"

namespace lps {

SymMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw InputError("matrix JSON must be an object with \"n\" and \"data\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw InputError("matrix JSON: \"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != n) {
    throw InputError("matrix JSON: \"data\" must hold n rows");
  }
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = data[i];
    if (!row.is_array() || row.size() != n) {
      throw InputError("matrix JSON: row " + std::to_string(i) + " must hold n entries");
    }
    rows[i].reserve(n);
    for (const auto& x : row) {
      if (!x.is_number()) throw InputError("matrix JSON: entries must be numbers");
      rows[i].push_back(x.get<double>());
    }
  }
  return SymMatrix(rows);
}

nlohmann::json matrix_to_json(const SymMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  return {{"n", m.dim()}, {"data", std::move(data)}};
}

SymMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("matrix file " + path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const SymMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file " + path.string());
  out << matrix_to_json(m).dump() << '\n';
}

}  // namespace lps

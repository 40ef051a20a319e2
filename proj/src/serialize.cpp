#include "spectra/serialize.hpp"

#include "spectra/errors.hpp"

#include <fstream>

namespace spectra::serialize {

using nlohmann::json;

json to_json(const pencil::SymTuple& tuple) {
  json coeffs = json::array();
  for (const Matrix& m : tuple.mats()) {
    json row_major = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index k = 0; k < m.cols(); ++k) row_major.push_back(m(i, k));
    coeffs.push_back(std::move(row_major));
  }
  return json{{"nu", tuple.n()}, {"g", tuple.g()}, {"coeffs", std::move(coeffs)}};
}

json to_json(const pencil::MonicPencil& pencil) { return to_json(pencil.coeffs()); }

pencil::SymTuple tuple_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nu") || !j.contains("g") || !j.contains("coeffs"))
    throw DomainError("tuple JSON needs keys nu, g and coeffs");
  if (!j["nu"].is_number_integer() || !j["g"].is_number_integer() || !j["coeffs"].is_array())
    throw DomainError("tuple JSON: nu and g must be integers, coeffs an array");
  const long nu = j["nu"].get<long>();
  const long g = j["g"].get<long>();
  if (nu < 1 || g < 1) throw DomainError("tuple JSON: nu and g must be positive");
  const json& coeffs = j["coeffs"];
  if (static_cast<long>(coeffs.size()) != g) throw DomainError("tuple JSON: coeffs has the wrong length");
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(g));
  for (const json& entries : coeffs) {
    if (!entries.is_array() || static_cast<long>(entries.size()) != nu * nu)
      throw DomainError("tuple JSON: each coefficient needs nu*nu row-major entries");
    Matrix m(nu, nu);
    for (long i = 0; i < nu; ++i)
      for (long k = 0; k < nu; ++k) {
        const json& v = entries[static_cast<std::size_t>(i * nu + k)];
        if (!v.is_number()) throw DomainError("tuple JSON: non-numeric entry");
        m(i, k) = v.get<double>();
      }
    mats.push_back(std::move(m));
  }
  return pencil::SymTuple(std::move(mats));
}

pencil::MonicPencil pencil_from_json(const json& j) { return pencil::MonicPencil(tuple_from_json(j)); }

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

} // namespace

pencil::SymTuple read_tuple_file(const std::string& path) { return tuple_from_json(read_json(path)); }

pencil::MonicPencil read_pencil_file(const std::string& path) { return pencil_from_json(read_json(path)); }

} // namespace spectra::serialize

#pragma once

// JSON schema shared by pencils and tuples:
//   {"nu": <matrix size>, "g": <count>, "coeffs": [[row-major entries], ...]}
// Entries are IEEE doubles written in shortest round-trip form.

#include "spectra/pencil.hpp"

#include <json.hpp>

#include <string>

namespace spectra::serialize {

nlohmann::json to_json(const pencil::SymTuple& tuple);
nlohmann::json to_json(const pencil::MonicPencil& pencil);

/// Throws DomainError on schema violations (missing keys, wrong counts,
/// asymmetric matrices).
pencil::SymTuple tuple_from_json(const nlohmann::json& j);
pencil::MonicPencil pencil_from_json(const nlohmann::json& j);

pencil::SymTuple read_tuple_file(const std::string& path);
pencil::MonicPencil read_pencil_file(const std::string& path);

} // namespace spectra::serialize

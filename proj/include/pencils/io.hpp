#pragma once

// JSON file formats. Three document kinds, all with exact rational entries
// (plain integers, or strings "p/q"):
//   pencil file:    {"rows": r, "cols": c, "E": [[..]..], "A": [[..]..]}
//   matrix file:    {"rows": r, "cols": c, "entries": [[..]..]}
//   structure file: {"nilpotent": {"k": count, ..}, "l_blocks": {..},
//                    "lt_blocks": {..}, "core_dim": d, "core": [[..]..]|null}
// Serialization is deterministic: keys sorted, fixed indentation, trailing
// newline, small integral rationals written as JSON integers.

#include <cstddef>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pencils/canonical.hpp"
#include "pencils/pencil.hpp"

namespace pencils {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);

// Bare 2D entry array (no shape header); shape is supplied by the caller on
// the way in so that zero-row and zero-column matrices round-trip.
nlohmann::json matrix_entries(const Matrix& m);
Matrix matrix_from_entries(const nlohmann::json& j, std::size_t rows,
                           std::size_t cols);

nlohmann::json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json structure_to_json(const KroneckerStructure& st);
KroneckerStructure structure_from_json(const nlohmann::json& j);

// Deterministic rendering used for every document this library writes.
std::string dump_json(const nlohmann::json& j);

nlohmann::json parse_json(const std::string& text);
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pencils

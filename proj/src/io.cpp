#include "pencils/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace pencils {

namespace {

std::size_t size_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
  const nlohmann::json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0))
    throw ParseError(std::string(key) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t positive_key(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw ParseError("block size keys must be positive integers, got \"" + text + "\"");
  return value;
}

void read_block_map(const nlohmann::json& j, const char* key,
                    std::map<std::size_t, std::size_t>& out) {
  if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
  const nlohmann::json& m = j.at(key);
  if (!m.is_object()) throw ParseError(std::string(key) + " must be an object");
  for (const auto& [size_text, count_json] : m.items()) {
    std::size_t size = positive_key(size_text);
    if (!count_json.is_number_integer() || !count_json.is_number_unsigned() ||
        count_json.get<std::uint64_t>() == 0)
      throw ParseError(std::string(key) + "[" + size_text +
                       "]: counts must be positive integers");
    out[size] = count_json.get<std::size_t>();
  }
}

nlohmann::json block_map_to_json(const std::map<std::size_t, std::size_t>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [size, count] : m) j[std::to_string(size)] = count;
  return j;
}

}  // namespace

nlohmann::json rat_to_json(const Rat& r) {
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (den == 1 && num.fits_slong_p()) return nlohmann::json(num.get_si());
  return nlohmann::json(rat_to_string(r));
}

Rat rat_from_json(const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return rat_from_string(j.dump());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad rational: ") + e.what());
  }
  throw ParseError("expected a rational (integer or \"p/q\" string), got " +
                   j.dump());
}

nlohmann::json matrix_entries(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_entries(const nlohmann::json& j, std::size_t rows,
                           std::size_t cols) {
  if (!j.is_array()) throw ParseError("matrix entries must be an array of rows");
  if (j.size() != rows)
    throw ParseError("expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const nlohmann::json& row = j.at(r);
    if (!row.is_array() || row.size() != cols)
      throw ParseError("ragged or non-array row " + std::to_string(r) +
                       ": expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rat_from_json(row.at(c));
  }
  return m;
}

nlohmann::json pencil_to_json(const Pencil& p) {
  nlohmann::json j;
  j["rows"] = p.codomain_dim();
  j["cols"] = p.domain_dim();
  j["E"] = matrix_entries(p.e);
  j["A"] = matrix_entries(p.a);
  return j;
}

Pencil pencil_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("pencil file must be a JSON object");
  std::size_t rows = size_field(j, "rows");
  std::size_t cols = size_field(j, "cols");
  if (!j.contains("E") || !j.contains("A"))
    throw ParseError("pencil file needs E and A");
  Matrix e = matrix_from_entries(j.at("E"), rows, cols);
  Matrix a = matrix_from_entries(j.at("A"), rows, cols);
  return Pencil(std::move(e), std::move(a));
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = matrix_entries(m);
  return j;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix file must be a JSON object");
  std::size_t rows = size_field(j, "rows");
  std::size_t cols = size_field(j, "cols");
  if (!j.contains("entries")) throw ParseError("matrix file needs entries");
  return matrix_from_entries(j.at("entries"), rows, cols);
}

nlohmann::json structure_to_json(const KroneckerStructure& st) {
  nlohmann::json j;
  j["nilpotent"] = block_map_to_json(st.nilpotent);
  j["l_blocks"] = block_map_to_json(st.l_blocks);
  j["lt_blocks"] = block_map_to_json(st.lt_blocks);
  j["core_dim"] = st.core_dim;
  j["core"] = st.core ? matrix_entries(*st.core) : nlohmann::json();
  return j;
}

KroneckerStructure structure_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("structure file must be a JSON object");
  KroneckerStructure st;
  read_block_map(j, "nilpotent", st.nilpotent);
  read_block_map(j, "l_blocks", st.l_blocks);
  read_block_map(j, "lt_blocks", st.lt_blocks);
  st.core_dim = size_field(j, "core_dim");
  if (j.contains("core") && !j.at("core").is_null())
    st.core = matrix_from_entries(j.at("core"), st.core_dim, st.core_dim);
  return st;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("write failed: " + path);
}

}  // namespace pencils

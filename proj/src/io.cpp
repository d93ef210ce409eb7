#include "bimetric/io.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>
#include <sstream>

namespace bimetric::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  return v.get<int>();
}

}  // namespace

LieAlgebra parse_algebra(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("algebra document must be an object");
  if (!doc.contains("dim")) fail("algebra document is missing \"dim\"");
  const int dim = as_int(doc["dim"], "\"dim\"");
  if (dim <= 0) fail("\"dim\" must be positive");
  std::string name = "unnamed";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  BracketTable table;
  if (doc.contains("brackets")) {
    const json& brackets = doc["brackets"];
    if (!brackets.is_array()) fail("\"brackets\" must be an array");
    for (const json& entry : brackets) {
      if (!entry.is_object() || !entry.contains("i") || !entry.contains("j") ||
          !entry.contains("terms")) {
        fail("each bracket needs \"i\", \"j\" and \"terms\"");
      }
      const int i = as_int(entry["i"], "\"i\"");
      const int j = as_int(entry["j"], "\"j\"");
      if (i >= j) fail("bracket entries require i < j");
      if (i < 0 || j >= dim) fail("bracket index out of range");
      if (table.contains({i, j})) fail("duplicate bracket entry");
      if (!entry["terms"].is_array()) fail("\"terms\" must be an array");
      std::vector<BracketTerm> terms;
      for (const json& term : entry["terms"]) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_number()) {
          fail("each term must be [k, c]");
        }
        const int k = as_int(term[0], "term index");
        if (k < 0 || k >= dim) fail("term index out of range");
        terms.push_back({k, term[1].get<double>()});
      }
      table[{i, j}] = std::move(terms);
    }
  }
  return LieAlgebra(std::move(name), dim, table);
}

std::string algebra_to_json(const LieAlgebra& lie) {
  json brackets = json::array();
  for (const auto& [pair, terms] : lie.table()) {
    json t = json::array();
    for (const auto& term : terms) t.push_back(json::array({term.index, term.coeff}));
    brackets.push_back(json{{"i", pair.first}, {"j", pair.second}, {"terms", t}});
  }
  nlohmann::ordered_json doc;
  doc["name"] = lie.name();
  doc["dim"] = lie.dim();
  doc["brackets"] = brackets;
  return doc.dump(2) + "\n";
}

Matrix parse_metric_matrix(const std::string& text, std::ostream& warnings) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("matrix")) fail("metric document needs \"matrix\"");
  const json& rows = doc["matrix"];
  if (!rows.is_array() || rows.empty()) fail("\"matrix\" must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail("\"matrix\" must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) fail("matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  if (!m.allFinite()) fail("matrix entries must be finite");
  const double asym = max_abs(m - m.transpose());
  if (asym > 1e-12) {
    warnings << "warning: metric matrix asymmetric by " << asym << "; symmetrizing\n";
  }
  return symmetrized(m);
}

std::string metric_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return json{{"matrix", rows}}.dump() + "\n";
}

std::string read_text(const std::string& path, std::istream& standard_input) {
  std::ostringstream buf;
  if (path == "-") {
    buf << standard_input.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bimetric::io

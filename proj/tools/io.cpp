#include "io.hpp"

#include <fstream>
#include <sstream>

#include "tropical/errors.hpp"
#include "tropical/format.hpp"

namespace tropical::cli {

namespace {

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t p = 0; p < offset && p < text.size(); ++p) {
    if (text[p] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class ExactDomBuilder : public nlohmann::json_sax<json> {
 public:
  explicit ExactDomBuilder(std::string_view text) : text_(text) {}

  json take() { return std::move(root_); }

  bool null() override { return value(nullptr); }
  bool boolean(bool v) override { return value(v); }
  bool number_integer(number_integer_t v) override { return value(v); }
  bool number_unsigned(number_unsigned_t v) override { return value(v); }
  bool number_float(number_float_t, const string_t& raw) override { return value(raw); }
  bool string(string_t& v) override { return value(v); }
  bool binary(binary_t& v) override { return value(json::binary(v)); }

  bool start_object(std::size_t) override {
    stack_.push_back(place(json::object()));
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    stack_.push_back(place(json::array()));
    return true;
  }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string& last_token, const nlohmann::detail::exception&) override {
    const std::size_t offset = position == 0 ? 0 : position - 1;
    auto [line, col] = line_and_column(text_, offset);
    throw ParseError("JSON syntax error near '" + last_token + "' at line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     line, col);
  }

 private:
  json* place(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(v));
      return &top.back();
    }
    top[key_] = std::move(v);
    return &top[key_];
  }

  template <class T>
  bool value(T&& v) {
    place(json(std::forward<T>(v)));
    return true;
  }

  std::string_view text_;
  json root_;
  std::vector<json*> stack_;
  std::string key_;
};

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

}  // namespace

json parse_exact_json(std::string_view text) {
  ExactDomBuilder builder(text);
  json::sax_parse(text.begin(), text.end(), &builder);
  return builder.take();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Scalar(Rational(mpz_class(std::to_string(j.get<std::uint64_t>()))))
                                  : Scalar(Rational(mpz_class(std::to_string(j.get<std::int64_t>()))));
  }
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  bad("expected a weight (integer, \"p/q\", decimal or \"-inf\"), got " + j.dump());
}

MatrixXq matrix_from_json(const json& rows, Index expected_rows, Index expected_cols) {
  if (!rows.is_array()) bad("matrix must be an array of rows");
  const Index r = static_cast<Index>(rows.size());
  if (expected_rows >= 0 && r != expected_rows) {
    bad("matrix has " + std::to_string(r) + " rows, expected " + std::to_string(expected_rows));
  }
  Index c = expected_cols;
  MatrixXq m;
  for (Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) bad("row " + std::to_string(i + 1) + " is not an array");
    if (c < 0) c = static_cast<Index>(row.size());
    if (static_cast<Index>(row.size()) != c) {
      bad("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " entries, expected " +
          std::to_string(c));
    }
    if (i == 0) m.resize(r, c);
    for (Index j = 0; j < c; ++j) {
      try {
        m(i, j) = scalar_from_json(row[static_cast<std::size_t>(j)]);
      } catch (const ParseError& e) {
        bad("row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) + ": " + e.what());
      }
    }
  }
  if (r == 0) m.resize(0, 0);
  return m;
}

VectorXq vector_from_json(const json& values, Index expected_size) {
  if (!values.is_array()) bad("vector must be an array");
  if (expected_size >= 0 && static_cast<Index>(values.size()) != expected_size) {
    bad("vector has " + std::to_string(values.size()) + " entries, expected " + std::to_string(expected_size));
  }
  VectorXq v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      v(static_cast<Index>(i)) = scalar_from_json(values[i]);
    } catch (const ParseError& e) {
      bad("entry " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return v;
}

json to_json(const Scalar& s) { return to_string(s); }

json to_json(const MatrixXq& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const VectorXq& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

FamilyFile parse_family(std::string_view text) {
  const json doc = parse_exact_json(text);
  if (!doc.is_object()) bad("family file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 1) {
    bad("family file needs a positive integer \"n\"");
  }
  if (!doc.contains("members") || !doc["members"].is_array() || doc["members"].empty()) {
    bad("family file needs a non-empty \"members\" array");
  }

  FamilyFile f;
  f.n = doc["n"].get<Index>();
  for (std::size_t m = 0; m < doc["members"].size(); ++m) {
    const json& entry = doc["members"][m];
    const std::string label = "member " + std::to_string(m + 1);
    if (!entry.is_object() || !entry.contains("rows")) bad(label + ": expected {\"name\": ..., \"rows\": [...]}");
    std::string name = "A" + std::to_string(m + 1);
    if (entry.contains("name")) {
      if (!entry["name"].is_string()) bad(label + ": name must be a string");
      name = entry["name"].get<std::string>();
    }
    try {
      f.members.push_back(matrix_from_json(entry["rows"], f.n, f.n));
    } catch (const ParseError& e) {
      bad(label + " (" + name + "), " + e.what());
    }
    f.names.push_back(std::move(name));
  }
  if (doc.contains("expected")) {
    if (!doc["expected"].is_object()) bad("\"expected\" must be an object");
    f.expected = doc["expected"];
  }
  return f;
}

FamilyFile read_family_file(const std::string& path) { return parse_family(read_text(path)); }

std::string write_family(const FamilyFile& file) {
  json doc;
  doc["n"] = file.n;
  doc["members"] = json::array();
  for (std::size_t m = 0; m < file.members.size(); ++m) {
    doc["members"].push_back({{"name", file.names.at(m)}, {"rows", to_json(file.members[m])}});
  }
  if (file.expected) doc["expected"] = *file.expected;
  return doc.dump(2) + "\n";
}

ProductSequence parse_sequence(std::string_view text) {
  const json doc = parse_exact_json(text);
  if (!doc.is_array() || doc.empty()) bad("sequence file must be a non-empty JSON array of member indices");
  ProductSequence seq;
  for (std::size_t p = 0; p < doc.size(); ++p) {
    const json& x = doc[p];
    if (!x.is_number_integer() || x.get<std::int64_t>() < 1) {
      bad("sequence position " + std::to_string(p + 1) + ": expected a member index >= 1, got " + x.dump());
    }
    seq.members.push_back(x.get<std::size_t>());
  }
  return seq;
}

ProductSequence read_sequence_file(const std::string& path) { return parse_sequence(read_text(path)); }

std::string write_sequence(const ProductSequence& seq) { return json(seq.members).dump() + "\n"; }

}  // namespace tropical::cli

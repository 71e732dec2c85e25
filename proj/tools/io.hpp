#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropical/family.hpp"
#include "tropical/product_lab.hpp"

namespace tropical::cli {

using nlohmann::json;

/// Contents of a family file before validation.
struct FamilyFile {
  Index n = 0;
  std::vector<std::string> names;
  std::vector<MatrixXq> members;
  // reference values to diff the computed quantities against
  std::optional<json> expected;

  MatrixFamily to_family() const { return MatrixFamily(members, names); }
};

/**
 * Parses JSON with non-integer numbers kept as their source text, so 0.1
 * becomes exactly 1/10. Syntax errors throw ParseError with line and column.
 */
json parse_exact_json(std::string_view text);

std::string read_text(const std::string& path);

/// {"n": 5, "members": [{"name": "A1", "rows": [[0, "-1/2", "-inf", ...], ...]}, ...], "expected": {...}}
FamilyFile parse_family(std::string_view text);
FamilyFile read_family_file(const std::string& path);
std::string write_family(const FamilyFile& file);

/// JSON array of 1-based member indices.
ProductSequence parse_sequence(std::string_view text);
ProductSequence read_sequence_file(const std::string& path);
std::string write_sequence(const ProductSequence& seq);

/// Entry of a matrix/vector in a JSON document; numbers or strings accepted.
Scalar scalar_from_json(const json& j);

MatrixXq matrix_from_json(const json& rows, Index expected_rows = -1, Index expected_cols = -1);
VectorXq vector_from_json(const json& values, Index expected_size = -1);

json to_json(const Scalar& s);
json to_json(const MatrixXq& m);
json to_json(const VectorXq& v);

}  // namespace tropical::cli

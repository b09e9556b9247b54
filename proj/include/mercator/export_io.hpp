#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mercator/layout.hpp"
#include "mercator/rational_approx.hpp"

namespace mercator {

// Scala scale file. Degree 0 (1/1) is implicit; the last degree is "2/1".
struct SclDocument {
  std::string name;  // written as "! <name>.scl"
  std::string description;
  int degree_count = 0;
  std::vector<std::string> degrees;  // each line without its leading space
};

// Throws std::domain_error for q < 1. Name defaults to "c<q>".
SclDocument build_scl(int q, std::string description, std::optional<std::string> name = std::nullopt);
std::string render_scl(const SclDocument& doc);

inline std::string emit_scl(int q, std::string description, std::optional<std::string> name = std::nullopt) {
  return render_scl(build_scl(q, std::move(description), std::move(name)));
}

// Header plus one line per row; reals with 8 decimals, LF line endings.
std::string emit_table_csv(std::span<const TemperamentRow> rows);
std::string emit_table_csv(std::span<const OvertoneRow> rows);

// RFC 4180 quoting: fields containing a comma, quote or line break are quoted.
std::string csv_field(std::string_view text);

inline constexpr int kLayoutSchemaVersion = 1;

// Canonical JSON for the keyboard UI: sorted keys, 2-space indent, trailing LF.
// Refuses layouts that fail validation (LayoutError).
std::string emit_layout_json(const LayoutVariant& layout);

// One key per line: manual,row,x,step,color.
std::string emit_layout_csv(const LayoutVariant& layout);

}  // namespace mercator

#pragma once

#include <span>
#include <string_view>

namespace mercator::detail {

struct ShippedVariant {
  std::string_view id;
  std::string_view text;
};

// Contents of data/layouts/*.txt, embedded at configure time.
std::span<const ShippedVariant> shipped_variants();

}  // namespace mercator::detail

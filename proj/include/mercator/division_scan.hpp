#pragma once

#include <cstdint>
#include <vector>

namespace mercator {

// How well q-EDO approximates the pure fifth.
struct DivisionError {
  int q = 0;
  std::int64_t p = 0;    // round(q * alpha)
  double cents = 0.0;    // 1200 * (alpha - p / q)
  double steps = 0.0;    // q * alpha - p, the error in units of one q-step
};

DivisionError division_error(int q);

// Evaluates every q in [q_first, q_last]. The parallel kernel and the serial
// reference must produce identical vectors.
std::vector<DivisionError> scan_divisions(int q_first, int q_last);
std::vector<DivisionError> scan_divisions_serial(int q_first, int q_last);

}  // namespace mercator

#include "mercator/division_scan.hpp"

#include <cmath>
#include <stdexcept>

#include "mercator/pitch_math.hpp"

namespace mercator {

namespace {

void check_range(int q_first, int q_last) {
  if (q_first < 1 || q_last < q_first) {
    throw std::invalid_argument("division range must satisfy 1 <= first <= last");
  }
}

DivisionError evaluate(int q, double alpha) {
  const double scaled = q * alpha;
  const double p = std::round(scaled);
  return DivisionError{q, static_cast<std::int64_t>(p), 1200.0 * (alpha - p / q), scaled - p};
}

}  // namespace

DivisionError division_error(int q) {
  if (q < 1) throw std::domain_error("division count must be at least 1");
  return evaluate(q, pure_fifth_height());
}

std::vector<DivisionError> scan_divisions(int q_first, int q_last) {
  check_range(q_first, q_last);
  const double alpha = pure_fifth_height();
  const std::int64_t count = static_cast<std::int64_t>(q_last) - q_first + 1;
  std::vector<DivisionError> out(static_cast<std::size_t>(count));
  DivisionError* dst = out.data();

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    dst[i] = evaluate(static_cast<int>(q_first + i), alpha);
  }
  return out;
}

std::vector<DivisionError> scan_divisions_serial(int q_first, int q_last) {
  check_range(q_first, q_last);
  const double alpha = pure_fifth_height();
  std::vector<DivisionError> out;
  out.reserve(static_cast<std::size_t>(q_last - q_first) + 1);
  for (int q = q_first; q <= q_last; ++q) out.push_back(evaluate(q, alpha));
  return out;
}

}  // namespace mercator

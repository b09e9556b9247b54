#include "mercator/pitch_math.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mercator {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return out;
}

// Strips factors of two so that log2 can be taken of the odd parts only.
std::int64_t odd_part(std::int64_t v) {
  while (v % 2 == 0) v /= 2;
  return v;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (num < 1 || den < 1) {
    throw std::invalid_argument("ratio terms must be positive");
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Ratio(parse_int(text), 1);
  return Ratio(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Ratio::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
  // Cross-reduce first to keep intermediates small.
  const std::int64_t g1 = std::gcd(a.num(), b.den());
  const std::int64_t g2 = std::gcd(b.num(), a.den());
  return Ratio((a.num() / g1) * (b.num() / g2), (a.den() / g2) * (b.den() / g1));
}

Height::Height(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw std::domain_error("height must lie in [0, 1)");
  }
}

Height Height::from_log2(double log2_value) {
  double frac = log2_value - std::floor(log2_value);
  // A tiny negative input can round up to exactly 1.
  if (frac >= 1.0) frac = 0.0;
  return Height(frac);
}

EdoSystem EdoSystem::of(int divisions) {
  return EdoSystem{divisions, edo_step_cents(divisions).value};
}

double pure_fifth_height() { return std::log(3.0) / std::log(2.0) - 1.0; }

Height height_of_ratio(const Ratio& r) {
  const std::int64_t n = odd_part(r.num());
  const std::int64_t d = odd_part(r.den());
  return Height::from_log2(std::log2(static_cast<double>(n)) - std::log2(static_cast<double>(d)));
}

Cents cents_of_height(Height h) { return Cents{1200.0 * h.value()}; }

Cents edo_step_cents(int q) {
  if (q < 1) throw std::domain_error("division count must be at least 1");
  return Cents{1200.0 / q};
}

Height step_height(int q, int n) {
  if (q < 1) throw std::domain_error("division count must be at least 1");
  if (n < 1 || n > q) throw std::out_of_range("step index out of range 1.." + std::to_string(q));
  return Height(static_cast<double>(n - 1) / q);
}

NearestStep nearest_step(int q, Height h) {
  if (q < 1) throw std::domain_error("division count must be at least 1");
  const double unwrapped = std::round(q * h.value());
  const int index = static_cast<int>(unwrapped);
  const double deviation = 1200.0 * h.value() - 1200.0 * unwrapped / q;
  return NearestStep{index % q + 1, Cents{deviation}};
}

double frequency_of_step(double base_hz, int q, int n, int octave) {
  if (!(base_hz > 0.0)) throw std::domain_error("base frequency must be positive");
  const Height h = step_height(q, n);
  return base_hz * std::exp2(static_cast<double>(octave) + h.value());
}

}  // namespace mercator

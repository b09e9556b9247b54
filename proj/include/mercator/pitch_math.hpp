#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mercator {

// Exact positive frequency ratio, always in lowest terms.
class Ratio {
 public:
  Ratio(std::int64_t num, std::int64_t den);

  // Accepts "a/b" or a bare integer "a".
  static Ratio parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

Ratio operator*(const Ratio& a, const Ratio& b);

// Octave-reduced pitch position: fractional part of log2 of a ratio, in [0, 1).
class Height {
 public:
  Height() = default;
  explicit Height(double value);

  // Wraps any real log2 value into [0, 1).
  static Height from_log2(double log2_value);

  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

struct Cents {
  double value = 0.0;
};

struct EdoSystem {
  int divisions = 0;
  double step_cents = 0.0;

  static EdoSystem of(int divisions);
};

struct NearestStep {
  int step = 1;  // 1-based
  Cents deviation;
};

// Height of 3/2, computed as ln 3 / ln 2 - 1.
double pure_fifth_height();

Height height_of_ratio(const Ratio& r);
Cents cents_of_height(Height h);

// Throws std::domain_error for q < 1.
Cents edo_step_cents(int q);

// Height (n - 1) / q of step n. Throws std::out_of_range unless 1 <= n <= q.
Height step_height(int q, int n);

// Closest step of q-EDO to h. Ties round away from zero; the step number wraps
// into 1..q but the deviation is measured against the unwrapped step, so
// |deviation| <= 600 / q always holds.
NearestStep nearest_step(int q, Height h);

// base * 2^(octave + (n - 1) / q).
double frequency_of_step(double base_hz, int q, int n, int octave = 0);

}  // namespace mercator

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mercator/pitch_math.hpp"

namespace mercator {

// [a0; a1, a2, ...]; every term after a0 is at least 1.
struct ContinuedFraction {
  std::vector<std::int64_t> terms;
};

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// One row of the fifth-approximation table.
struct TemperamentRow {
  int q = 0;
  std::int64_t p = 0;
  double fifth_height = 0.0;  // p / q
  double fifth_cents = 0.0;   // 1200 p / q
  double delta_cents = 0.0;   // 1200 (alpha - p / q)
};

struct OvertoneRow {
  std::string label;
  Ratio ratio{1, 1};       // harmonic k as k/1, or 6/5 for the derived minor third
  double log2_value = 0.0; // log2 of the ratio, octaves included
  Height height;
  Cents mantissa;
  int nearest = 1;         // q + 1 for the octave row
  Cents deviation;
};

struct BestFifth {
  std::int64_t p = 0;
  double delta_cents = 0.0;
};

enum class ScanMetric {
  cents,  // |alpha - p/q|, the fifth's error in cents
  steps,  // |q alpha - p|, the error as a fraction of one q-step
};

// Standard expansion of x in (0, 1). Stops at max_terms, when the remainder
// drops below 1e-12, or once convergent denominators pass 1e6, where double
// input no longer carries meaningful terms.
ContinuedFraction continued_fraction(double x, int max_terms);

// Exact expansion by Euclid's algorithm; a0 may be non-zero.
ContinuedFraction continued_fraction(const Ratio& r);

std::vector<Fraction> convergents(const ContinuedFraction& cf);

// Intermediate fractions (p[n-1] + m p[n]) / (q[n-1] + m q[n]) for
// 0 < m < a[n+1], in ascending denominator order.
std::vector<Fraction> semiconvergents(const ContinuedFraction& cf);

BestFifth best_fifth_step(int q);

// q values reproducing the classic fifth-approximation table.
std::span<const int> default_fifth_divisions();

std::vector<TemperamentRow> fifth_table(std::span<const int> q_list);
inline std::vector<TemperamentRow> fifth_table() { return fifth_table(default_fifth_divisions()); }

// Published-table errata relevant to a row, if any.
std::optional<std::string> fifth_table_note(const TemperamentRow& row);

// Every q in (q0, q_max] whose fifth beats q0's under the metric, ascending.
std::vector<TemperamentRow> next_better_division(int q0, int q_max,
                                                 ScanMetric metric = ScanMetric::cents);

// Only the record-setters: each entry strictly improves on all before it.
std::vector<TemperamentRow> record_divisions(int q0, int q_max,
                                             ScanMetric metric = ScanMetric::cents);

// |delta(q_other)| / |delta(q_ref)|.
double improvement_ratio(int q_ref, int q_other);

std::vector<OvertoneRow> overtone_table(int q = 53);

}  // namespace mercator

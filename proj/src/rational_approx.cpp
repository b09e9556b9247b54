#include "mercator/rational_approx.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "mercator/division_scan.hpp"

namespace mercator {

namespace {

constexpr long double kRemainderFloor = 1e-12L;
constexpr std::int64_t kMaxDenominator = 1'000'000;

constexpr std::array<int, 12> kClassicDivisions = {5, 7, 12, 17, 21, 24, 29, 31, 41, 53, 65, 359};

void require_division(int q) {
  if (q < 2) throw std::domain_error("division count must be at least 2");
}

TemperamentRow to_row(const DivisionError& e) {
  const double height = static_cast<double>(e.p) / e.q;
  return TemperamentRow{e.q, e.p, height, 1200.0 * height, e.cents};
}

double metric_value(const DivisionError& e, ScanMetric metric) {
  return metric == ScanMetric::cents ? std::abs(e.cents) : std::abs(e.steps);
}

struct OvertoneDef {
  const char* label;
  std::int64_t num;
  std::int64_t den;
};

constexpr std::array<OvertoneDef, 12> kOvertones = {{
    {"prime", 1, 1},
    {"octave", 2, 1},
    {"fifth", 3, 1},
    {"major third", 5, 1},
    {"minor third (6:5)", 6, 5},
    {"minor seventh", 7, 1},
    {"major second", 9, 1},
    {"diminished fifth", 11, 1},
    {"minor sixth", 13, 1},
    {"major seventh", 15, 1},
    {"minor second", 17, 1},
    {"minor third", 19, 1},
}};

}  // namespace

ContinuedFraction continued_fraction(double x, int max_terms) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("continued fraction input must lie in (0, 1)");
  if (max_terms < 1) throw std::invalid_argument("max_terms must be at least 1");

  ContinuedFraction cf;
  cf.terms.push_back(0);
  long double rem = x;
  std::int64_t q_prev = 0;
  std::int64_t q_cur = 1;
  while (static_cast<int>(cf.terms.size()) < max_terms) {
    if (rem < kRemainderFloor || q_cur > kMaxDenominator) break;
    const long double y = 1.0L / rem;
    auto term = static_cast<std::int64_t>(std::floor(y));
    long double frac = y - static_cast<long double>(term);
    if (1.0L - frac < kRemainderFloor) {
      ++term;
      frac = 0.0L;
    }
    cf.terms.push_back(term);
    const std::int64_t q_next = term * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    rem = frac;
  }
  return cf;
}

ContinuedFraction continued_fraction(const Ratio& r) {
  ContinuedFraction cf;
  std::int64_t num = r.num();
  std::int64_t den = r.den();
  while (den != 0) {
    cf.terms.push_back(num / den);
    const std::int64_t rest = num % den;
    num = den;
    den = rest;
  }
  return cf;
}

std::vector<Fraction> convergents(const ContinuedFraction& cf) {
  std::vector<Fraction> out;
  std::int64_t p2 = 0, p1 = 1;
  std::int64_t q2 = 1, q1 = 0;
  for (const std::int64_t a : cf.terms) {
    const std::int64_t p = a * p1 + p2;
    const std::int64_t q = a * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }
  return out;
}

std::vector<Fraction> semiconvergents(const ContinuedFraction& cf) {
  const std::vector<Fraction> conv = convergents(cf);
  std::vector<Fraction> out;
  Fraction before{1, 0};
  for (std::size_t n = 0; n + 1 < cf.terms.size(); ++n) {
    const Fraction& cur = conv[n];
    for (std::int64_t m = 1; m < cf.terms[n + 1]; ++m) {
      out.push_back({before.p + m * cur.p, before.q + m * cur.q});
    }
    before = cur;
  }
  return out;
}

BestFifth best_fifth_step(int q) {
  require_division(q);
  const DivisionError e = division_error(q);
  return BestFifth{e.p, e.cents};
}

std::span<const int> default_fifth_divisions() { return kClassicDivisions; }

std::vector<TemperamentRow> fifth_table(std::span<const int> q_list) {
  std::vector<TemperamentRow> rows;
  rows.reserve(q_list.size());
  for (const int q : q_list) {
    require_division(q);
    rows.push_back(to_row(division_error(q)));
  }
  return rows;
}

std::optional<std::string> fifth_table_note(const TemperamentRow& row) {
  if (row.q == 29 && row.p == 17) {
    return fmt::format("erratum: classic table prints +1.49327508; 17/29 is above the pure fifth, "
                       "so delta is {:.8f}",
                       row.delta_cents);
  }
  if (row.q == 359 && row.p == 210) {
    const auto records = record_divisions(53, 358);
    if (!records.empty()) {
      return fmt::format("erratum: 210/359 is often cited as the next improvement after 31/53, "
                         "but {}/{} already is",
                         records.front().p, records.front().q);
    }
  }
  return std::nullopt;
}

std::vector<TemperamentRow> next_better_division(int q0, int q_max, ScanMetric metric) {
  require_division(q0);
  if (q_max <= q0) throw std::invalid_argument("q_max must exceed the reference division");
  const double reference = metric_value(division_error(q0), metric);
  std::vector<TemperamentRow> out;
  for (const DivisionError& e : scan_divisions(q0 + 1, q_max)) {
    if (metric_value(e, metric) < reference) out.push_back(to_row(e));
  }
  return out;
}

std::vector<TemperamentRow> record_divisions(int q0, int q_max, ScanMetric metric) {
  require_division(q0);
  if (q_max <= q0) throw std::invalid_argument("q_max must exceed the reference division");
  double best = metric_value(division_error(q0), metric);
  std::vector<TemperamentRow> out;
  for (const DivisionError& e : scan_divisions(q0 + 1, q_max)) {
    const double v = metric_value(e, metric);
    if (v < best) {
      best = v;
      out.push_back(to_row(e));
    }
  }
  return out;
}

double improvement_ratio(int q_ref, int q_other) {
  require_division(q_ref);
  require_division(q_other);
  return std::abs(division_error(q_other).cents) / std::abs(division_error(q_ref).cents);
}

std::vector<OvertoneRow> overtone_table(int q) {
  require_division(q);
  std::vector<OvertoneRow> rows;
  rows.reserve(kOvertones.size());
  for (const OvertoneDef& def : kOvertones) {
    OvertoneRow row;
    row.label = def.label;
    row.ratio = Ratio(def.num, def.den);
    row.log2_value = std::log2(static_cast<double>(def.num)) - std::log2(static_cast<double>(def.den));
    row.height = height_of_ratio(row.ratio);
    row.mantissa = cents_of_height(row.height);
    const NearestStep ns = nearest_step(q, row.height);
    // A pure octave above the fundamental lands on the first step of the next octave.
    const bool octave = row.ratio != Ratio(1, 1) && row.height.value() == 0.0;
    row.nearest = octave ? q + 1 : ns.step;
    row.deviation = ns.deviation;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mercator

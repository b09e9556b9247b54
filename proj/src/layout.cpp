#include "mercator/layout.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include <fmt/format.h>

#include "layout_data.hpp"
#include "mercator/rational_approx.hpp"

namespace mercator {

namespace {

constexpr int kNamedDivisions = 53;
constexpr FifthIndex kCenteredWindowLo = -26;

int parse_int(std::string_view text, std::string_view what) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("bad {} '{}'", what, text));
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

KeyRow parse_row(std::string_view text) {
  if (text == "front") return KeyRow::front;
  if (text == "back") return KeyRow::back;
  throw std::invalid_argument(fmt::format("bad row '{}'", text));
}

KeyColor color_of_row(KeyRow row) { return row == KeyRow::front ? KeyColor::white : KeyColor::black; }

// Manual sizes realizing 12 + 17 + 24 = 53, 12 + 17 = 29 and 17 + 24 = 41.
std::map<Manual, int> expected_manual_sizes(int q) {
  switch (q) {
    case 53: return {{Manual::lower, 12}, {Manual::middle, 17}, {Manual::upper, 24}};
    case 29: return {{Manual::lower, 12}, {Manual::middle, 17}};
    case 41: return {{Manual::middle, 17}, {Manual::upper, 24}};
    default: return {};
  }
}

int manual_rank(Manual m) {
  switch (m) {
    case Manual::upper: return 0;
    case Manual::middle: return 1;
    case Manual::lower: return 2;
  }
  return 3;
}

const std::string& ordinal(std::int64_t k) {
  static const std::map<std::int64_t, std::string> names = [] {
    std::map<std::int64_t, std::string> m;
    for (std::int64_t i = 1; i <= 32; ++i) {
      const char* suffix = "th";
      if (i % 10 == 1 && i != 11) suffix = "st";
      if (i % 10 == 2 && i != 12) suffix = "nd";
      if (i % 10 == 3 && i != 13) suffix = "rd";
      m[i] = std::to_string(i) + suffix;
    }
    return m;
  }();
  return names.at(k);
}

}  // namespace

std::string_view to_string(Manual m) {
  switch (m) {
    case Manual::lower: return "lower";
    case Manual::middle: return "middle";
    case Manual::upper: return "upper";
  }
  return "?";
}

std::string_view to_string(KeyRow r) { return r == KeyRow::front ? "front" : "back"; }

std::string_view to_string(KeyColor c) { return c == KeyColor::white ? "white" : "black"; }

Manual parse_manual(std::string_view text) {
  if (text == "lower") return Manual::lower;
  if (text == "middle") return Manual::middle;
  if (text == "upper") return Manual::upper;
  throw std::invalid_argument(fmt::format("bad manual '{}'", text));
}

std::vector<Key> LayoutVariant::keys_on(Manual m) const {
  std::vector<Key> out;
  std::copy_if(keys.begin(), keys.end(), std::back_inserter(out),
               [m](const Key& k) { return k.manual == m; });
  return out;
}

std::vector<Manual> LayoutVariant::manuals() const {
  std::vector<Manual> out;
  for (const Manual m : {Manual::upper, Manual::middle, Manual::lower}) {
    if (std::any_of(keys.begin(), keys.end(), [m](const Key& k) { return k.manual == m; })) {
      out.push_back(m);
    }
  }
  return out;
}

std::vector<std::string> variant_ids() {
  std::vector<std::string> ids;
  for (const auto& v : detail::shipped_variants()) ids.emplace_back(v.id);
  return ids;
}

std::string_view variant_text(std::string_view id) {
  for (const auto& v : detail::shipped_variants()) {
    if (v.id == id) return v.text;
  }
  throw std::invalid_argument(fmt::format("unknown layout variant '{}'", id));
}

LayoutVariant parse_variant(std::string_view text, std::string source) {
  LayoutVariant layout;
  layout.source = std::move(source);
  bool have_header = false;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    try {
      if (!have_header) {
        int q = 0;
        for (const std::string_view token : tokens) {
          const auto eq = token.find('=');
          if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value header");
          const std::string_view key = token.substr(0, eq);
          const std::string_view value = token.substr(eq + 1);
          if (key == "id") {
            layout.id = std::string(value);
          } else if (key == "q") {
            q = parse_int(value, "q");
          } else if (key == "window") {
            const auto dots = value.find("..");
            if (dots == std::string_view::npos) throw std::invalid_argument("window must be lo..hi");
            layout.fifth_window = FifthWindow{parse_int(value.substr(0, dots), "window"),
                                              parse_int(value.substr(dots + 2), "window")};
          } else {
            throw std::invalid_argument(fmt::format("unknown header field '{}'", key));
          }
        }
        if (layout.id.empty() || q < 1) throw std::invalid_argument("header needs id and q >= 1");
        layout.system = EdoSystem::of(q);
        have_header = true;
        continue;
      }

      if (tokens.size() != 4) throw std::invalid_argument("expected '<manual> <row> <x> <step>'");
      Key key;
      key.manual = parse_manual(tokens[0]);
      key.row = parse_row(tokens[1]);
      key.x = parse_int(tokens[2], "x");
      key.step = parse_int(tokens[3], "step");
      if (key.x < 0) throw std::invalid_argument("x must be non-negative");
      key.color = color_of_row(key.row);
      layout.keys.push_back(key);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  if (!have_header) throw std::invalid_argument("missing header line");
  return layout;
}

std::string format_variant(const LayoutVariant& layout) {
  std::string out = fmt::format("id={} q={}", layout.id, layout.system.divisions);
  if (layout.fifth_window) out += fmt::format(" window={}..{}", layout.fifth_window->lo, layout.fifth_window->hi);
  out += '\n';

  std::vector<Key> keys = layout.keys;
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.manual != b.manual) return manual_rank(a.manual) < manual_rank(b.manual);
    if (a.row != b.row) return a.row == KeyRow::back;
    return a.x < b.x;
  });
  for (const Key& k : keys) {
    out += fmt::format("{} {} {} {}\n", to_string(k.manual), to_string(k.row), k.x, k.step);
  }
  return out;
}

std::vector<std::string> validate(const LayoutVariant& layout) {
  std::vector<std::string> problems;
  const int q = layout.system.divisions;
  if (q < 1) {
    problems.push_back("system has no divisions");
    return problems;
  }

  std::vector<int> seen(static_cast<std::size_t>(q) + 1, 0);
  for (const Key& k : layout.keys) {
    if (k.step < 1 || k.step > q) {
      problems.push_back(fmt::format("step {} out of range 1..{}", k.step, q));
      continue;
    }
    if (++seen[static_cast<std::size_t>(k.step)] == 2) problems.push_back(fmt::format("duplicate step {}", k.step));
  }
  for (int s = 1; s <= q; ++s) {
    if (seen[static_cast<std::size_t>(s)] == 0) problems.push_back(fmt::format("missing step {}", s));
  }

  const auto expected = expected_manual_sizes(q);
  if (!expected.empty()) {
    for (const Manual m : {Manual::upper, Manual::middle, Manual::lower}) {
      const auto count = static_cast<int>(layout.keys_on(m).size());
      const auto it = expected.find(m);
      if (it == expected.end()) {
        if (count > 0) problems.push_back(fmt::format("manual {} not used in {}-step layouts", to_string(m), q));
      } else if (count != it->second) {
        problems.push_back(fmt::format("manual {} has {} keys, expected {}", to_string(m), count, it->second));
      }
    }
  }

  for (const Manual m : {Manual::upper, Manual::middle, Manual::lower}) {
    for (const KeyRow r : {KeyRow::back, KeyRow::front}) {
      std::vector<Key> row;
      for (const Key& k : layout.keys) {
        if (k.manual == m && k.row == r) row.push_back(k);
      }
      std::sort(row.begin(), row.end(), [](const Key& a, const Key& b) { return a.x < b.x; });
      for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i].x == row[i - 1].x) {
          problems.push_back(fmt::format("x slot {} repeated on {} {} row", row[i].x, to_string(m), to_string(r)));
        } else if (row[i].step < row[i - 1].step) {
          problems.push_back(fmt::format("{} {} row: x order does not follow ascending step at step {}",
                                         to_string(m), to_string(r), row[i].step));
        }
      }
    }
  }

  for (const Key& k : layout.keys) {
    if (k.color != color_of_row(k.row)) {
      problems.push_back(fmt::format("step {}: {} key on {} row", k.step, to_string(k.color), to_string(k.row)));
    }
  }

  if (layout.fifth_window && layout.fifth_window->hi - layout.fifth_window->lo + 1 != q) {
    problems.push_back(fmt::format("fifth window {}..{} does not span {} indices", layout.fifth_window->lo,
                                   layout.fifth_window->hi, q));
  }
  return problems;
}

LayoutVariant checked(LayoutVariant layout) {
  auto problems = validate(layout);
  if (!problems.empty()) {
    std::string what = fmt::format("layout {} failed validation: {}", layout.id, problems.front());
    throw LayoutError(what, std::move(problems));
  }
  return layout;
}

LayoutVariant load_variant(std::string_view id) {
  return checked(parse_variant(variant_text(id), fmt::format("data/layouts/{}.txt", id)));
}

std::set<FifthIndex> manual_fifth_window(const LayoutVariant& layout, Manual manual) {
  if (layout.system.divisions != kNamedDivisions || !layout.fifth_window) {
    throw std::invalid_argument(fmt::format("layout {} has no fifth naming window", layout.id));
  }
  const FifthChain chain;
  std::set<FifthIndex> out;
  for (const Key& k : layout.keys_on(manual)) out.insert(chain.fifth_of_step(k.step, layout.fifth_window->lo));
  return out;
}

std::vector<int> subsystem_steps(const LayoutVariant& layout, const std::set<Manual>& manuals) {
  if (manuals.empty()) throw std::invalid_argument("no manuals selected");
  std::vector<int> steps;
  for (const Key& k : layout.keys) {
    if (manuals.contains(k.manual)) steps.push_back(k.step);
  }
  if (steps.empty()) throw std::invalid_argument(fmt::format("layout {} has no keys on those manuals", layout.id));
  std::sort(steps.begin(), steps.end());
  return steps;
}

StepAnnotation annotate(int step) {
  if (step < 1 || step > kNamedDivisions) throw std::out_of_range("step index out of range 1..53");
  static const std::vector<OvertoneRow> overtones = overtone_table(kNamedDivisions);

  StepAnnotation note{step, std::nullopt, std::nullopt};
  const FifthIndex f = FifthChain().fifth_of_step(step, kCenteredWindowLo);
  if (f >= -6 && f <= 6) note.diatonic = diatonic_interval_name(f);

  for (const OvertoneRow& row : overtones) {
    if ((row.nearest - 1) % kNamedDivisions + 1 != step) continue;
    if (row.ratio.den() == 1 && row.ratio.num() > 1) {
      note.overtone = fmt::format("{} ({} harmonic)", row.label, ordinal(row.ratio.num()));
    } else {
      note.overtone = row.label;
    }
    break;
  }
  return note;
}

std::vector<int> adjacent_interval_profile(const LayoutVariant& layout, Manual manual,
                                           std::optional<KeyColor> color, bool cyclic) {
  std::vector<int> steps;
  for (const Key& k : layout.keys_on(manual)) {
    if (!color || k.color == *color) steps.push_back(k.step);
  }
  std::sort(steps.begin(), steps.end());
  std::vector<int> profile;
  for (std::size_t i = 1; i < steps.size(); ++i) profile.push_back(steps[i] - steps[i - 1]);
  if (cyclic && !steps.empty()) profile.push_back(steps.front() + layout.system.divisions - steps.back());
  return profile;
}

}  // namespace mercator

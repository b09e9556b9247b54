#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mercator/fifth_chain.hpp"
#include "mercator/pitch_math.hpp"

namespace mercator {

enum class Manual { lower, middle, upper };
enum class KeyRow { front, back };
enum class KeyColor { white, black };

std::string_view to_string(Manual m);
std::string_view to_string(KeyRow r);
std::string_view to_string(KeyColor c);
Manual parse_manual(std::string_view text);

struct Key {
  int step = 1;
  Manual manual = Manual::middle;
  KeyRow row = KeyRow::front;
  int x = 0;
  KeyColor color = KeyColor::white;
};

struct FifthWindow {
  FifthIndex lo = 0;
  FifthIndex hi = 0;
};

struct LayoutVariant {
  std::string id;
  EdoSystem system;
  std::vector<Key> keys;
  std::string source;
  // Fifth indices used to name steps; only for variants with a naming scheme.
  std::optional<FifthWindow> fifth_window;

  std::vector<Key> keys_on(Manual m) const;
  std::vector<Manual> manuals() const;  // present manuals, top (upper) first
};

struct StepAnnotation {
  int step = 0;
  std::optional<std::string> diatonic;
  std::optional<std::string> overtone;
};

class LayoutError : public std::runtime_error {
 public:
  LayoutError(const std::string& what, std::vector<std::string> problems)
      : std::runtime_error(what), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Ids of the shipped variants, 53-v1 .. 53-v6, 29-v1, 29-v2, 41-v1, 41-v2.
std::vector<std::string> variant_ids();

// Raw text of a shipped variant data file. Throws std::invalid_argument for unknown ids.
std::string_view variant_text(std::string_view id);

// Parses the line format:
//   header     id=<id> q=<q> [window=<lo>..<hi>]
//   key lines  <manual> <row> <x> <step>
// '#' starts a comment. Colours follow rows (front = white). Throws
// std::invalid_argument on malformed text; does not validate.
LayoutVariant parse_variant(std::string_view text, std::string source = {});

// Inverse of parse_variant, without comments.
std::string format_variant(const LayoutVariant& layout);

// Every broken invariant, one message each; empty means valid.
std::vector<std::string> validate(const LayoutVariant& layout);

// Loads and validates a shipped variant. Throws std::invalid_argument for an
// unknown id and LayoutError if the data fails validation.
LayoutVariant load_variant(std::string_view id);

// Throws LayoutError if validation fails.
LayoutVariant checked(LayoutVariant layout);

// Representative fifth index of every step on the manual, taken from the
// variant's fifth window. Throws std::invalid_argument for variants without one.
std::set<FifthIndex> manual_fifth_window(const LayoutVariant& layout, Manual manual);

// Sorted union of the manuals' steps. Throws std::invalid_argument when empty.
std::vector<int> subsystem_steps(const LayoutVariant& layout, const std::set<Manual>& manuals);

// Labels for a 53-EDO step above C: diatonic interval and nearest harmonic.
StepAnnotation annotate(int step);

// Step differences between consecutive keys of the manual ordered by step,
// optionally only keys of one colour. Cyclic adds the wrap back to the first
// key an octave up, so the profile then sums to q.
std::vector<int> adjacent_interval_profile(const LayoutVariant& layout, Manual manual,
                                           std::optional<KeyColor> color = std::nullopt,
                                           bool cyclic = false);

}  // namespace mercator

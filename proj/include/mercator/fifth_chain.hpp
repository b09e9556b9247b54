#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mercator {

// Position on the chain of fifths, C = 0, G = 1, F = -1.
using FifthIndex = int;

enum class Letter { F, C, G, D, A, E, H };

// German spelling: H is English B natural, "B" is H-flat.
struct NoteName {
  Letter letter = Letter::C;
  int accidentals = 0;  // > 0 sharps, < 0 flats

  // "C", "F#", "Abbb", "F4#", "D4b"; beyond four: "C5#".
  std::string to_string() const;
  // As to_string, except H-flat shows as "B=Hb".
  std::string display() const;

  // Accepts to_string/display forms plus the bare alias "B".
  static NoteName parse(std::string_view text);

  friend bool operator==(const NoteName&, const NoteName&) = default;
};

NoteName spelling_of_fifth(FifthIndex f);
FifthIndex fifth_of_spelling(const NoteName& name);

// Diatonic interval above C for |f| <= 6, e.g. "perfect fifth"; throws otherwise.
std::string diatonic_interval_name(FifthIndex f);

struct EnharmonicPair {
  int step = 0;
  NoteName sharp;
  NoteName flat;
};

struct ChainSegment {
  FifthIndex f_start = 0;
  int count = 0;
  std::vector<int> steps;  // in chain order
};

// Chain of tempered fifths in a q-EDO whose fifth spans p steps (gcd(p, q) = 1).
class FifthChain {
 public:
  FifthChain() : FifthChain(53, 31) {}
  FifthChain(int divisions, int fifth_steps);

  int divisions() const { return divisions_; }
  int fifth_steps() const { return fifth_steps_; }
  // Multiplicative inverse of fifth_steps modulo divisions (12 for 53-EDO).
  int inverse() const { return inverse_; }

  int step_of_fifth(FifthIndex f) const;

  // The fifth index congruent to step n that lies in [lo, lo + q).
  FifthIndex fifth_of_step(int n, FifthIndex lo) const;

  // Spellings of step n using the fewest accidentals, provided that count is
  // at most max_acc; when a sharp and a flat spelling tie, both are listed,
  // sharp first. Throws std::out_of_range for n outside 1..q.
  std::vector<NoteName> names_of_step(int n, int max_acc = 4) const;

  std::vector<EnharmonicPair> enharmonic_pairs(int max_acc = 4) const;

  // Throws std::invalid_argument unless 1 <= count <= q.
  ChainSegment pythagorean_chain(FifthIndex f_start, int count) const;

 private:
  int divisions_;
  int fifth_steps_;
  int inverse_;
};

}  // namespace mercator

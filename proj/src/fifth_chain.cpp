#include "mercator/fifth_chain.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace mercator {

namespace {

constexpr std::array<char, 7> kLetterChars = {'F', 'C', 'G', 'D', 'A', 'E', 'H'};

constexpr std::array<const char*, 13> kDiatonicNames = {
    "diminished fifth", "minor second", "minor sixth",  "minor third",    "minor seventh",
    "perfect fourth",   "prime",        "perfect fifth", "major second",  "major sixth",
    "major third",      "major seventh", "augmented fourth",
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t m) { return (a - floor_mod(a, m)) / m; }

int modular_inverse(int a, int m) {
  // Extended Euclid on (a mod m, m).
  std::int64_t old_r = floor_mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quotient = old_r / r;
    old_r -= quotient * r;
    std::swap(old_r, r);
    old_s -= quotient * s;
    std::swap(old_s, s);
  }
  return static_cast<int>(floor_mod(old_s, m));
}

}  // namespace

std::string NoteName::to_string() const {
  std::string out(1, kLetterChars[static_cast<std::size_t>(letter)]);
  const int count = std::abs(accidentals);
  const char sign = accidentals > 0 ? '#' : 'b';
  if (count <= 3) {
    out.append(static_cast<std::size_t>(count), sign);
  } else {
    out += std::to_string(count);
    out += sign;
  }
  return out;
}

std::string NoteName::display() const {
  if (letter == Letter::H && accidentals == -1) return "B=Hb";
  return to_string();
}

NoteName NoteName::parse(std::string_view text) {
  const auto fail = [&]() -> NoteName {
    throw std::invalid_argument("not a note name: '" + std::string(text) + "'");
  };
  if (text == "B" || text == "B=Hb") return NoteName{Letter::H, -1};
  if (text.empty()) return fail();

  const auto* it = std::find(kLetterChars.begin(), kLetterChars.end(), text.front());
  if (it == kLetterChars.end()) return fail();
  const auto letter = static_cast<Letter>(it - kLetterChars.begin());
  const std::string_view rest = text.substr(1);
  if (rest.empty()) return NoteName{letter, 0};

  const char sign = rest.back();
  if (sign != '#' && sign != 'b') return fail();
  const int direction = sign == '#' ? 1 : -1;

  if (rest.find_first_not_of(sign) == std::string_view::npos) {
    return NoteName{letter, direction * static_cast<int>(rest.size())};
  }
  const std::string_view digits = rest.substr(0, rest.size() - 1);
  if (digits.find_first_not_of("0123456789") != std::string_view::npos || digits.size() > 6) {
    return fail();
  }
  const int count = std::stoi(std::string(digits));
  if (count < 1) return fail();
  return NoteName{letter, direction * count};
}

NoteName spelling_of_fifth(FifthIndex f) {
  const std::int64_t t = static_cast<std::int64_t>(f) + 1;
  return NoteName{static_cast<Letter>(floor_mod(t, 7)), static_cast<int>(floor_div(t, 7))};
}

FifthIndex fifth_of_spelling(const NoteName& name) {
  return static_cast<int>(name.letter) + 7 * name.accidentals - 1;
}

std::string diatonic_interval_name(FifthIndex f) {
  if (f < -6 || f > 6) throw std::out_of_range("diatonic intervals span fifth indices -6..6");
  return kDiatonicNames[static_cast<std::size_t>(f + 6)];
}

FifthChain::FifthChain(int divisions, int fifth_steps)
    : divisions_(divisions), fifth_steps_(fifth_steps), inverse_(0) {
  if (divisions < 1) throw std::invalid_argument("division count must be at least 1");
  if (std::gcd(divisions, fifth_steps) != 1) {
    throw std::invalid_argument("fifth must generate every step (gcd(p, q) = 1)");
  }
  inverse_ = modular_inverse(fifth_steps, divisions);
}

int FifthChain::step_of_fifth(FifthIndex f) const {
  return static_cast<int>(floor_mod(static_cast<std::int64_t>(fifth_steps_) * f, divisions_)) + 1;
}

FifthIndex FifthChain::fifth_of_step(int n, FifthIndex lo) const {
  if (n < 1 || n > divisions_) throw std::out_of_range("step index out of range");
  const std::int64_t residue = static_cast<std::int64_t>(inverse_) * (n - 1);
  return static_cast<FifthIndex>(lo + floor_mod(residue - lo, divisions_));
}

std::vector<NoteName> FifthChain::names_of_step(int n, int max_acc) const {
  if (max_acc < 0) throw std::invalid_argument("max_acc must be non-negative");
  // Spellings with at most max_acc accidentals have fifth indices in this range.
  const FifthIndex lo = -7 * max_acc - 1;
  const FifthIndex hi = 7 * max_acc + 5;

  std::vector<NoteName> names;
  for (FifthIndex f = fifth_of_step(n, lo); f <= hi; f += divisions_) {
    names.push_back(spelling_of_fifth(f));
  }
  if (names.empty()) return names;

  const auto fewest = std::min_element(names.begin(), names.end(), [](const auto& a, const auto& b) {
                        return std::abs(a.accidentals) < std::abs(b.accidentals);
                      })->accidentals;
  std::erase_if(names, [&](const NoteName& name) {
    return std::abs(name.accidentals) != std::abs(fewest);
  });
  std::sort(names.begin(), names.end(),
            [](const NoteName& a, const NoteName& b) { return a.accidentals > b.accidentals; });
  return names;
}

std::vector<EnharmonicPair> FifthChain::enharmonic_pairs(int max_acc) const {
  std::vector<EnharmonicPair> pairs;
  for (int n = 1; n <= divisions_; ++n) {
    const std::vector<NoteName> names = names_of_step(n, max_acc);
    if (names.size() >= 2) pairs.push_back({n, names[0], names[1]});
  }
  return pairs;
}

ChainSegment FifthChain::pythagorean_chain(FifthIndex f_start, int count) const {
  if (count < 1 || count > divisions_) {
    throw std::invalid_argument("chain length must lie in 1.." + std::to_string(divisions_));
  }
  ChainSegment segment{f_start, count, {}};
  segment.steps.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) segment.steps.push_back(step_of_fifth(f_start + i));
  return segment;
}

}  // namespace mercator

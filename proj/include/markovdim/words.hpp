#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace markovdim {

// Finite word over the alphabet {1, 2}, optionally with a marked (centered)
// position.  Serialized form puts '*' right after the centered digit, e.g.
// "12*111122" has digits 1,2,1,1,1,1,2,2 with center index 1.
struct Word {
  std::vector<std::uint8_t> digits;
  int center = -1;  // -1 when no position is marked

  Word() = default;
  explicit Word(std::vector<std::uint8_t> d, int c = -1)
      : digits(std::move(d)), center(c) {}

  static Word parse(const std::string& text);
  std::string str() const;

  std::size_t size() const { return digits.size(); }
  Word reversed() const;

  bool operator==(const Word& o) const {
    return digits == o.digits && center == o.center;
  }
  bool operator<(const Word& o) const {
    if (digits != o.digits) return digits < o.digits;
    return center < o.center;
  }
};

// Does `haystack` contain `needle` as a (contiguous) factor?
bool contains_factor(const std::vector<std::uint8_t>& haystack,
                     const std::vector<std::uint8_t>& needle);

// A finite set of forbidden words; factor semantics ignore center marks.
struct ForbiddenSet {
  std::vector<Word> words;  // kept sorted and duplicate-free by digits

  ForbiddenSet() = default;
  explicit ForbiddenSet(std::vector<Word> w);
  static ForbiddenSet parse(const std::vector<std::string>& texts);

  void add(const Word& w);
  bool empty() const { return words.empty(); }
  std::size_t size() const { return words.size(); }
  std::size_t max_len() const;

  // Does `w` contain some member as a factor?
  bool matches(const std::vector<std::uint8_t>& w) const;
  // Does some member occur as a suffix of `w`?  (Incremental check when one
  // digit was just appended: any new factor occurrence ends at the last digit.)
  bool matches_suffix(const std::vector<std::uint8_t>& w) const;

  bool is_reversal_closed() const;
};

// Remove every member that contains another (distinct) member as a factor;
// the reduced set defines the same avoidance language.
ForbiddenSet reduce(const ForbiddenSet& s);

}  // namespace markovdim

#include "markovdim/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace markovdim {

Word Word::parse(const std::string& text) {
  Word w;
  for (char ch : text) {
    if (ch == '1' || ch == '2') {
      w.digits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch == '*') {
      if (w.digits.empty() || w.center != -1)
        throw std::invalid_argument("Word::parse: misplaced '*' in '" + text + "'");
      w.center = static_cast<int>(w.digits.size()) - 1;
    } else {
      throw std::invalid_argument("Word::parse: bad character in '" + text + "'");
    }
  }
  if (w.digits.empty())
    throw std::invalid_argument("Word::parse: empty word");
  return w;
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    out += static_cast<char>('0' + digits[i]);
    if (static_cast<int>(i) == center) out += '*';
  }
  return out;
}

Word Word::reversed() const {
  Word w;
  w.digits.assign(digits.rbegin(), digits.rend());
  w.center = center < 0 ? -1 : static_cast<int>(digits.size()) - 1 - center;
  return w;
}

bool contains_factor(const std::vector<std::uint8_t>& haystack,
                     const std::vector<std::uint8_t>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

ForbiddenSet::ForbiddenSet(std::vector<Word> w) {
  for (auto& x : w) add(x);
}

ForbiddenSet ForbiddenSet::parse(const std::vector<std::string>& texts) {
  ForbiddenSet s;
  for (const auto& t : texts) s.add(Word::parse(t));
  return s;
}

void ForbiddenSet::add(const Word& w) {
  auto it = std::lower_bound(
      words.begin(), words.end(), w,
      [](const Word& a, const Word& b) { return a.digits < b.digits; });
  if (it != words.end() && it->digits == w.digits) return;  // digit-set semantics
  words.insert(it, w);
}

std::size_t ForbiddenSet::max_len() const {
  std::size_t m = 0;
  for (const auto& w : words) m = std::max(m, w.size());
  return m;
}

bool ForbiddenSet::matches(const std::vector<std::uint8_t>& w) const {
  for (const auto& f : words)
    if (contains_factor(w, f.digits)) return true;
  return false;
}

bool ForbiddenSet::matches_suffix(const std::vector<std::uint8_t>& w) const {
  for (const auto& f : words) {
    if (f.size() > w.size()) continue;
    if (std::equal(f.digits.begin(), f.digits.end(), w.end() - f.size()))
      return true;
  }
  return false;
}

bool ForbiddenSet::is_reversal_closed() const {
  for (const auto& w : words) {
    auto rev = w.reversed();
    bool found = false;
    for (const auto& v : words)
      if (v.digits == rev.digits) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

ForbiddenSet reduce(const ForbiddenSet& s) {
  ForbiddenSet out;
  for (const auto& w : s.words) {
    bool implied = false;
    for (const auto& v : s.words) {
      if (v.digits == w.digits) continue;
      if (contains_factor(w.digits, v.digits)) {
        implied = true;
        break;
      }
    }
    if (!implied) out.add(w);
  }
  return out;
}

}  // namespace markovdim

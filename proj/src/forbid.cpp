#include "markovdim/forbid.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "markovdim/cf.hpp"
#include "markovdim/quadsurd.hpp"

namespace markovdim {

namespace {

struct Search {
  Interval s_iv;
  int full_len;
  ForbidResult* out;

  // left is nearest-first (left[0] is adjacent to the center).
  std::vector<std::uint8_t> left, right;

  void classify(int center) {
    ++out->nodes;
    Interval iv = lambda0_bounds(left, center, right);
    const int len = 1 + static_cast<int>(left.size() + right.size());
    if (iv.lo > s_iv.hi) {
      save(center);
      return;
    }
    if (iv.hi < s_iv.lo) {
      out->s_prime = std::max(out->s_prime, iv.hi);
      return;
    }
    if (len < full_len) {
      // Window still straddles the threshold: grow right on even length,
      // left on odd length, and classify both child windows.
      auto& side = (len % 2 == 0) ? right : left;
      for (std::uint8_t d = 1; d <= 2; ++d) {
        side.push_back(d);
        classify(center);
        side.pop_back();
      }
      return;
    }
    // Full-length window that still straddles: its upper hull bound feeds
    // the running maximum (this is how s_prime can exceed s).
    out->s_prime = std::max(out->s_prime, iv.hi);
    out->straddle = true;
  }

  void save(int center) {
    Word w;
    w.digits.assign(left.rbegin(), left.rend());
    w.digits.push_back(static_cast<std::uint8_t>(center));
    w.digits.insert(w.digits.end(), right.begin(), right.end());
    w.center = static_cast<int>(left.size());
    out->forbidden.add(w);
    out->forbidden.add(w.reversed());
    out->lmax = std::max(out->lmax, static_cast<int>(w.size()));
  }
};

}  // namespace

ForbidResult forbidden_words(const mpq_class& s, int n) {
  if (n < 1) throw std::invalid_argument("forbidden_words: n must be >= 1");
  ForbidResult res;
  res.s = s;
  res.n = n;
  res.s_prime = -std::numeric_limits<double>::infinity();
  if (s <= mpq_class(29, 10) || s >= mpq_class(34, 10)) res.threshold_warning = true;

  Search search;
  search.s_iv = QuadSurd(s).to_interval();
  search.full_len = 2 * n + 1;
  search.out = &res;
  for (int center = 1; center <= 2; ++center) search.classify(center);
  return res;
}

SoundnessReport soundness_check(const ForbidResult& result, int L) {
  if (L < 0 || L > 16)
    throw std::invalid_argument("soundness_check: L out of range");
  const QuadSurd s_exact{result.s};
  const std::vector<std::uint8_t> tail12{1, 2}, tail21{2, 1};

  // lambda0 of a two-sided completion splits as an independent sum of a
  // right-side value [center; right...] and a left-side value [0; left...],
  // so checking min(right values) + min(left values) > s is equivalent to
  // checking every combination.
  auto side_min = [&](int head, const std::vector<std::uint8_t>& base,
                      std::string* argmin) {
    QuadSurd best;
    bool have = false;
    std::vector<std::uint8_t> ext(L);
    const std::uint64_t total = std::uint64_t(1) << L;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      for (int i = 0; i < L; ++i)
        ext[i] = static_cast<std::uint8_t>(((mask >> i) & 1) + 1);
      std::vector<std::uint8_t> digits = base;
      digits.insert(digits.end(), ext.begin(), ext.end());
      for (const auto& tail : {tail12, tail21}) {
        QuadSurd v = eval_periodic(PeriodicCF{head, digits, tail});
        if (!have || v < best) {
          best = v;
          have = true;
          if (argmin) {
            *argmin = "[" + std::to_string(head) + ";";
            for (auto d : digits) *argmin += static_cast<char>('0' + d);
            *argmin += ",(";
            for (auto d : tail) *argmin += static_cast<char>('0' + d);
            *argmin += ")]";
          }
        }
      }
    }
    return best;
  };

  for (const auto& w : result.forbidden.words) {
    const int c = w.center >= 0 ? w.center : static_cast<int>(w.size()) / 2;
    std::vector<std::uint8_t> left(w.digits.rend() - c, w.digits.rend());
    std::vector<std::uint8_t> right(w.digits.begin() + c + 1, w.digits.end());
    std::string arg_r, arg_l;
    QuadSurd min_r = side_min(w.digits[c], right, &arg_r);
    QuadSurd min_l = side_min(0, left, &arg_l);
    if (!((min_r + min_l) > s_exact)) {
      SoundnessReport rep;
      rep.ok = false;
      rep.detail = "word " + w.str() + " admits lambda0 <= s at " + arg_r +
                   " + " + arg_l;
      return rep;
    }
  }
  return {};
}

std::string forbid_to_json(const ForbidResult& result) {
  nlohmann::json j;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", result.s_prime);
  j["s"] = result.s.get_str();
  j["n"] = result.n;
  std::vector<std::string> words;
  for (const auto& w : result.forbidden.words) words.push_back(w.str());
  j["forbidden"] = words;
  j["s_prime"] = buf;
  j["lmax"] = result.lmax;
  j["nodes"] = result.nodes;
  j["straddle"] = result.straddle;
  if (result.threshold_warning)
    j["warning"] = "threshold outside supported range (2.9, 3.4)";
  return j.dump(2);
}

}  // namespace markovdim

#include "markovdim/cf.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace markovdim {

namespace {

void check_digits(const std::vector<std::uint8_t>& ds, const char* what) {
  for (auto d : ds)
    if (d != 1 && d != 2)
      throw std::invalid_argument(std::string(what) + ": digits must be 1 or 2");
}

}  // namespace

PeriodicCF PeriodicCF::parse(const std::string& text) {
  if (text.size() < 4 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("PeriodicCF::parse: expected [h;...] in '" + text + "'");
  std::string body = text.substr(1, text.size() - 2);
  auto semi = body.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("PeriodicCF::parse: missing ';' in '" + text + "'");
  PeriodicCF cf;
  cf.head = std::stoi(body.substr(0, semi));
  bool in_period = false;
  bool period_done = false;
  for (std::size_t i = semi + 1; i < body.size(); ++i) {
    char ch = body[i];
    if (ch == ',' || ch == ' ') continue;
    if (ch == '(') {
      if (in_period || period_done)
        throw std::invalid_argument("PeriodicCF::parse: stray '(' in '" + text + "'");
      in_period = true;
    } else if (ch == ')') {
      if (!in_period)
        throw std::invalid_argument("PeriodicCF::parse: stray ')' in '" + text + "'");
      in_period = false;
      period_done = true;
    } else if (ch >= '1' && ch <= '2') {
      if (period_done)
        throw std::invalid_argument("PeriodicCF::parse: digits after period in '" + text + "'");
      (in_period ? cf.period : cf.preamble)
          .push_back(static_cast<std::uint8_t>(ch - '0'));
    } else {
      throw std::invalid_argument("PeriodicCF::parse: bad character in '" + text + "'");
    }
  }
  if (in_period || cf.period.empty())
    throw std::invalid_argument("PeriodicCF::parse: missing period in '" + text + "'");
  return cf;
}

std::string PeriodicCF::str() const {
  std::string out = "[" + std::to_string(head) + ";";
  bool first = true;
  for (auto d : preamble) {
    if (!first) out += ',';
    out += static_cast<char>('0' + d);
    first = false;
  }
  if (!first) out += ',';
  out += '(';
  first = true;
  for (auto d : period) {
    if (!first) out += ',';
    out += static_cast<char>('0' + d);
    first = false;
  }
  out += ")]";
  return out;
}

QuadSurd eval_periodic(const PeriodicCF& cf) {
  if (cf.period.empty())
    throw std::invalid_argument("eval_periodic: empty period");
  check_digits(cf.period, "eval_periodic");
  check_digits(cf.preamble, "eval_periodic");
  if (cf.head < 0)
    throw std::invalid_argument("eval_periodic: negative head");
  // Convergent matrix of one period: M = prod [[digit,1],[1,0]].
  mpz_class a = 1, b = 0, c = 0, d = 1;
  for (auto dig : cf.period) {
    mpz_class a2 = a * static_cast<long>(dig) + b;
    mpz_class c2 = c * static_cast<long>(dig) + d;
    b = a;
    d = c;
    a = a2;
    c = c2;
  }
  // Purely periodic value u = [p1; p2, ..., pk, u] is the positive fixed
  // point of x -> (a x + b)/(c x + d): c x^2 + (d - a) x - b = 0.  Its Galois
  // conjugate lies in (-1, 0), so the root with '+sqrt' is the right one.
  mpz_class disc = (a + d) * (a + d) - 4 * (a * d - b * c);
  QuadSurd u(a - d, 1, disc, 2 * c);
  if (u.cmp(QuadSurd(1)) <= 0)
    throw std::logic_error("eval_periodic: fixed point not > 1");
  QuadSurd v = u;
  for (auto it = cf.preamble.rbegin(); it != cf.preamble.rend(); ++it)
    v = v.reciprocal().shifted(*it);
  return v.reciprocal().shifted(cf.head);
}

QuadSurd lambda0_exact(std::span<const std::uint8_t> left, int center,
                       std::span<const std::uint8_t> right,
                       const std::vector<std::uint8_t>& tail_left,
                       const std::vector<std::uint8_t>& tail_right) {
  PeriodicCF r{center, {right.begin(), right.end()}, tail_right};
  PeriodicCF l{0, {left.begin(), left.end()}, tail_left};
  return eval_periodic(r) + eval_periodic(l);
}

namespace {

// Value of [0; digits..., T] where T is the value of the infinite tail
// [0; tail...] in (0,1).  Empty digits give T itself.
Interval fold_tail(std::span<const std::uint8_t> digits, Interval tail) {
  if (digits.empty()) return tail;
  Interval v = static_cast<double>(digits.back()) + tail;
  for (std::size_t i = digits.size() - 1; i-- > 0;)
    v = static_cast<double>(digits[i]) + reciprocal(v);
  return reciprocal(v);
}

struct TailConstants {
  Interval t12;  // [0; (1,2)] = sqrt(3) - 1
  Interval t21;  // [0; (2,1)] = (sqrt(3) - 1)/2
};

const TailConstants& tails() {
  static const TailConstants tc = [] {
    TailConstants t;
    t.t12 = eval_periodic(PeriodicCF{0, {}, {1, 2}}).to_interval();
    t.t21 = eval_periodic(PeriodicCF{0, {}, {2, 1}}).to_interval();
    return t;
  }();
  return tc;
}

}  // namespace

Interval lambda0_bounds(std::span<const std::uint8_t> left, int center,
                        std::span<const std::uint8_t> right) {
  if (center != 1 && center != 2)
    throw std::invalid_argument("lambda0_bounds: center must be 1 or 2");
  const auto& tc = tails();
  const std::size_t k = left.size(), j = right.size();
  // Extremal periodic tails by side-length parity: the supremum over all
  // extensions is attained with tail (1,2) on a side with an even number of
  // fixed digits and (2,1) on an odd side; the infimum swaps them.
  Interval up = static_cast<double>(center) +
                fold_tail(right, j % 2 == 0 ? tc.t12 : tc.t21) +
                fold_tail(left, k % 2 == 0 ? tc.t12 : tc.t21);
  Interval dn = static_cast<double>(center) +
                fold_tail(right, j % 2 == 0 ? tc.t21 : tc.t12) +
                fold_tail(left, k % 2 == 0 ? tc.t21 : tc.t12);
  return {dn.lo, up.hi};
}

namespace {

// Suffix automaton over {1,2} words of length L with forbidden-factor
// rejection and coinductive liveness (a state is alive iff some admissible
// infinite continuation exists).
struct SuffixAutomaton {
  int L;
  std::vector<char> valid;  // word of length L avoids forbidden
  std::vector<char> alive;
  const ForbiddenSet* fs;

  explicit SuffixAutomaton(const ForbiddenSet& forbidden) : fs(&forbidden) {
    L = std::max<int>(1, static_cast<int>(forbidden.max_len()) - 1);
    if (L > 16)
      throw std::runtime_error(
          "extremal_continuation: forbidden words too long for the suffix automaton");
    const std::size_t n = std::size_t(1) << L;
    valid.assign(n, 0);
    std::vector<std::uint8_t> buf(L);
    for (std::size_t s = 0; s < n; ++s) {
      decode(s, buf);
      valid[s] = !forbidden.matches(buf);
    }
    alive = valid;
    // Greatest fixpoint: strip states with no admissible live successor.
    bool changed = true;
    std::vector<std::uint8_t> ext(L + 1);
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        bool ok = false;
        for (int d = 1; d <= 2 && !ok; ++d) {
          decode(s, buf);
          ext.assign(buf.begin(), buf.end());
          ext.push_back(static_cast<std::uint8_t>(d));
          if (forbidden.matches_suffix(ext)) continue;
          if (alive[step(s, d)]) ok = true;
        }
        if (!ok) {
          alive[s] = 0;
          changed = true;
        }
      }
    }
  }

  void decode(std::size_t s, std::vector<std::uint8_t>& out) const {
    for (int i = 0; i < L; ++i)
      out[i] = static_cast<std::uint8_t>(((s >> (L - 1 - i)) & 1) + 1);
  }
  std::size_t encode(const std::uint8_t* w) const {
    std::size_t s = 0;
    for (int i = 0; i < L; ++i) s = (s << 1) | (w[i] - 1);
    return s;
  }
  std::size_t step(std::size_t s, int digit) const {
    const std::size_t mask = (std::size_t(1) << L) - 1;
    return ((s << 1) | std::size_t(digit - 1)) & mask;
  }
};

}  // namespace

PeriodicCF extremal_continuation(int head,
                                 const std::vector<std::uint8_t>& prefix,
                                 const ForbiddenSet& forbidden, bool want_max,
                                 int length_bound) {
  check_digits(prefix, "extremal_continuation");
  if (head < 0 || head > 2)
    throw std::invalid_argument("extremal_continuation: head must be 0, 1 or 2");
  SuffixAutomaton aut(forbidden);

  // The digit stream subject to factor constraints includes the head digit
  // when it is 1 or 2 (a head of 0 is not part of the symbolic sequence).
  std::vector<std::uint8_t> stream;
  if (head == 1 || head == 2) stream.push_back(static_cast<std::uint8_t>(head));
  stream.insert(stream.end(), prefix.begin(), prefix.end());
  if (forbidden.matches(stream))
    throw std::invalid_argument("extremal_continuation: prefix hits a forbidden word");

  // Liveness of a short stream (fewer than L digits seen): memoized search.
  std::map<std::vector<std::uint8_t>, char> short_alive;
  auto alive_after = [&](const std::vector<std::uint8_t>& w) -> bool {
    if (static_cast<int>(w.size()) >= aut.L)
      return aut.alive[aut.encode(w.data() + w.size() - aut.L)];
    auto probe = [&](auto&& self, std::vector<std::uint8_t> v) -> bool {
      auto it = short_alive.find(v);
      if (it != short_alive.end()) return it->second == 1;
      short_alive[v] = 2;  // in-progress marker (lengths only grow, no cycles)
      bool ok = false;
      for (int d = 1; d <= 2 && !ok; ++d) {
        v.push_back(static_cast<std::uint8_t>(d));
        if (!forbidden.matches_suffix(v)) {
          if (static_cast<int>(v.size()) >= aut.L)
            ok = aut.alive[aut.encode(v.data() + v.size() - aut.L)];
          else
            ok = self(self, v);
        }
        v.pop_back();
      }
      short_alive[v] = ok ? 1 : 0;
      return ok;
    };
    return probe(probe, w);
  };

  const std::size_t prefix_len = prefix.size();
  std::vector<std::uint8_t> frac(prefix.begin(), prefix.end());
  // State key for periodicity: (last L stream digits, parity of next index).
  std::map<std::pair<std::size_t, int>, std::size_t> seen;

  while (static_cast<int>(frac.size()) <= length_bound) {
    const std::size_t t = frac.size() + 1;  // CF index of the next digit
    // Value is decreasing in the digit at odd CF depth, increasing at even.
    const bool decreasing = (t % 2 == 1);
    int first = (want_max == decreasing) ? 1 : 2;
    int chosen = 0;
    for (int attempt = 0; attempt < 2 && !chosen; ++attempt) {
      int d = attempt == 0 ? first : 3 - first;
      stream.push_back(static_cast<std::uint8_t>(d));
      if (!forbidden.matches_suffix(stream) && alive_after(stream))
        chosen = d;
      else
        stream.pop_back();
    }
    if (!chosen)
      throw std::runtime_error("extremal_continuation: dead end (no admissible digit)");
    frac.push_back(static_cast<std::uint8_t>(chosen));

    if (static_cast<int>(stream.size()) >= aut.L && frac.size() > prefix_len) {
      auto key = std::make_pair(
          aut.encode(stream.data() + stream.size() - aut.L),
          static_cast<int>((frac.size() + 1) % 2));
      auto [it, inserted] = seen.emplace(key, frac.size());
      if (!inserted) {
        const std::size_t t0 = it->second;
        PeriodicCF out;
        out.head = head;
        out.preamble.assign(frac.begin(), frac.begin() + t0);
        out.period.assign(frac.begin() + t0, frac.end());
        // Minimize the period (w^k -> w).
        for (std::size_t p = 1; p <= out.period.size() / 2; ++p) {
          if (out.period.size() % p) continue;
          bool rep = true;
          for (std::size_t i = p; i < out.period.size() && rep; ++i)
            rep = out.period[i] == out.period[i % p];
          if (rep) {
            out.period.resize(p);
            break;
          }
        }
        // Roll matching trailing preamble digits into the period.
        while (!out.preamble.empty() &&
               out.preamble.back() == out.period.back()) {
          out.preamble.pop_back();
          out.period.insert(out.period.begin(), out.period.back());
          out.period.pop_back();
        }
        return out;
      }
    }
  }
  throw std::runtime_error("extremal_continuation: no period within length bound");
}

}  // namespace markovdim

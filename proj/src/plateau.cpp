#include "markovdim/plateau.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace markovdim {

namespace {

PlateauRecord make_record(int index, const std::vector<std::string>& fw,
                          QuadSurd left, const char* lcf_a, const char* lcf_b,
                          const char* left_printed, QuadSurd right,
                          const char* rcf_a, const char* rcf_b,
                          const char* right_printed, const char* value,
                          const char* length) {
  PlateauRecord r;
  r.index = index;
  r.fw = ForbiddenSet::parse(fw);
  r.left = std::move(left);
  r.right = std::move(right);
  r.left_cf_a = PeriodicCF::parse(lcf_a);
  r.left_cf_b = PeriodicCF::parse(lcf_b);
  r.right_cf_a = PeriodicCF::parse(rcf_a);
  r.right_cf_b = PeriodicCF::parse(rcf_b);
  r.left_printed = left_printed;
  r.right_printed = right_printed;
  r.plateau_value = value;
  r.plateau_length = length;
  if (!(r.left < r.right))
    throw std::logic_error("plateau_table: endpoints out of order");
  if (!r.fw.is_reversal_closed())
    throw std::logic_error("plateau_table: forbidden set not reversal-closed");
  return r;
}

std::vector<PlateauRecord> build_table() {
  std::vector<PlateauRecord> t;
  t.push_back(make_record(
      2, {"121"}, QuadSurd(0, 4, 30, 7), "[2;(1,2,2,2)]", "[0;(2,2,1,2)]",
      "3.1298431857", QuadSurd(16351, 720, 30, 6409), "[2;1,(1,2,2,2)]",
      "[0;1,1,2,1,(1,2,2,2)]", "3.166578626", "0.812150", "0.03673544"));
  t.push_back(make_record(
      3, {"121", "212"}, QuadSurd(0, 4, 210, 19), "[2;(1,1,1,2,2,2)]",
      "[0;(2,2,1,1,1,2)]", "3.050816157", QuadSurd(74613, 4096, 210, 43449),
      "[2;2,1,1,(1,2,2,2,1,1)]", "[0;1,2,2,1,2,2,1,1,(1,2,2,2,1,1)]",
      "3.08337773", "0.728108", "0.03256158"));
  t.push_back(make_record(
      4, {"121", "21222", "22212"}, QuadSurd(58473, -745, 210, 15422),
      "[2;1,2,2,(1,1,2,2,2,1)]", "[0;2,(1,1,2,2,2,1)]", "3.09148776579",
      QuadSurd(1341491634738L, 14336533, 210, 430566005892L),
      "[2;2,2,2,1,2,2,1,2,2,(1,1,2,2,2,1)]", "[0;1,2,2,1,2,2,(1,1,2,2,2,1)]",
      "3.1161294028759882", "0.750628", "0.02464164"));
  t.push_back(make_record(
      5, {"1212", "2121", "12111", "11121"}, QuadSurd(15, -1, 30, 3),
      "[2;1,1,(2,2,1,2)]", "[0;1,1,(2,2,1,2)]", "3.174258141649",
      QuadSurd(332001, 3760, 30, 110409), "[2;1,1,1,(1,2,2,2)]",
      "[0;1,1,2,1,1,1,(1,2,2,2)]", "3.1935382818628", "0.827194",
      "0.01928014"));
  t.push_back(make_record(
      6, {"1212", "2121"}, QuadSurd(0, 4, 6, 3), "[2;(1,1,1,2)]",
      "[0;(1,1,1,2)]", "3.26598632371", QuadSurd(18879, 800, 30, 7089),
      "[2;1,(2,2,1,2)]", "[0;1,1,2,1,(2,2,1,2)]", "3.28124988856557",
      "0.938646", "0.01526356"));
  t.push_back(make_record(
      7, {"121", "212", "111222", "222111"}, QuadSurd(0, 28, 213378, 4287),
      "[2;2,1,1,(2,2,2,1,1,2,2,1,1,1,2,2,1,1)]",
      "[0;1,1,1,(2,2,1,1,2,2,2,1,1,2,2,1,1,1)]", "3.017028188796",
      QuadSurd(2497149255L, 2842763, 213378, 1258910718L),
      "[2;(2,2,2,1,1,2,2,1,1,1,2,2,1,1)]",
      "[0;1,1,1,1,2,(2,2,2,1,1,2,2,1,1,1,2,2,1,1)]", "3.026666336477",
      "0.569770", "0.00963815"));
  t.push_back(make_record(
      8, {"1212", "2121", "211121112"}, QuadSurd(0, 1, 66045, 79),
      "[2;(1,1,1,1,1,2,1,1,1,2)]", "[0;(1,1,1,2,1,1,1,1,1,2)]",
      "3.25306604786", QuadSurd(190, 4, 30, 65), "[2;1,1,1,2,(2,1,2,2)]",
      "[0;1,1,1,2,(2,1,2,2)]", "3.2601369584647", "0.932262", "0.00707091"));
  t.push_back(make_record(
      9, {"21212", "111212", "212111"}, QuadSurd(11, 35, 87, 102),
      "[2;(1,1,2,2,1,2)]", "[0;(1,2,1,1,2,2)]", "3.30841438096",
      QuadSurd(56508, 2716, 87, 24687), "[2;(1,2,2,1,2,1)]",
      "[0;1,1,1,1,2,(1,2,2,1,2,1)]", "3.3151521654", "0.971588",
      "0.00673778"));
  t.push_back(make_record(
      10, {"1212", "2121", "1112111"}, QuadSurd(14775, -599, 30, 3570),
      "[2;1,1,1,2,1,1,2,2,(1,2,2,2)]", "[0;1,1,2,2,(1,2,2,2)]",
      "3.21964758558657", QuadSurd(9537392579L, 1230099, 30, 2959418678L),
      "[2;1,1,1,1,2,1,1,2,(2,1,2,2)]",
      "[0;1,1,1,1,2,1,1,1,1,2,1,1,2,(2,1,2,2)]", "3.22500164632", "0.889660",
      "0.00535406"));
  t.push_back(make_record(
      11, {"121", "212", "111222", "222111", "21112"},
      QuadSurd(0, 10, 718341, 2819),
      "[2;(1,1,1,1,1,2,2,1,1,2,2,2,1,1,2,2)]",
      "[0;2,(1,1,2,2,2,1,1,2,2,1,1,1,1,1,2,2)]", "3.006562605623",
      QuadSurd(14264157401L, 16294182, 718341, 9321104530L),
      "[2;2,(1,1,1,1,1,2,2,1,1,2,2,2,1,1,2,2)]",
      "[0;1,1,1,2,2,1,1,1,2,2,(1,1,1,1,1,2,2,1,1,2,2,2,1,1,2,2)]",
      "3.011906071937", "0.536334", "0.00534347"));
  t.push_back(make_record(
      12, {"121", "212", "12221112", "21112221"}, QuadSurd(0, 8, 1785, 111),
      "[2;(1,1,1,2,2,2,2,2)]", "[0;(2,2,2,2,1,1,1,2)]", "3.0449917368328",
      QuadSurd(89042158285L, 148687392, 1785, 31262231449L),
      "[2;1,1,1,2,2,(1,1,1,2,2,2,2,2)]",
      "[0;2,2,1,1,2,2,2,1,1,1,2,2,(1,1,1,2,2,2,2,2)]", "3.049177432380786",
      "0.709914", "0.0041857"));
  t.push_back(make_record(
      13, {"21212", "111212", "212111", "12121122", "22112121"},
      QuadSurd(0, 24, 35, 43), "[2;(1,1,2,1,1,2,1,2)]",
      "[0;(1,2,1,1,2,1,1,2)]", "3.3019980184742",
      QuadSurd(457878845, -1713407, 87, 133663998),
      "[2;1,1,2,2,(2,1,2,1,1,2)]",
      "[0;1,2,1,1,2,1,2,1,1,2,2,(2,1,2,1,1,2)]", "3.3060304573471179",
      "0.967812", "0.00403244"));
  return t;
}

}  // namespace

const std::vector<PlateauRecord>& plateau_table() {
  static const std::vector<PlateauRecord> table = build_table();
  return table;
}

const PlateauRecord& plateau_by_index(int i) {
  for (const auto& r : plateau_table())
    if (r.index == i) return r;
  throw std::invalid_argument("plateau_by_index: no plateau " +
                              std::to_string(i));
}

const std::vector<int>& occurrence_order() {
  static const std::vector<int> order = {0, 11, 7, 12, 3,  4, 2,
                                         5, 10, 8, 6,  13, 9, 1};
  return order;
}

mpq_class pseudo_right_endpoint_p0() { return mpq_class(3); }

mpq_class pseudo_left_endpoint_p1() { return parse_decimal("3.334384"); }

namespace {

int fractional_digits(const std::string& printed) {
  auto dot = printed.find('.');
  return dot == std::string::npos ? 0
                                  : static_cast<int>(printed.size() - dot - 1);
}

void check_endpoint(VerifyReport& rep, int index, const char* side,
                    const PeriodicCF& a, const PeriodicCF& b,
                    const QuadSurd& closed, const std::string& printed) {
  ++rep.checked;
  QuadSurd sum = eval_periodic(a) + eval_periodic(b);
  if (sum != closed) {
    rep.ok = false;
    rep.failures.push_back("P_" + std::to_string(index) + " " + side +
                           ": CF sum " + sum.str() + " != closed form " +
                           closed.str());
    return;
  }
  std::string dec = closed.decimal(fractional_digits(printed));
  if (dec != printed) {
    rep.ok = false;
    rep.failures.push_back("P_" + std::to_string(index) + " " + side +
                           ": decimal " + dec + " != published " + printed);
  }
}

}  // namespace

VerifyReport verify_endpoint_identities() {
  VerifyReport rep;
  for (const auto& r : plateau_table()) {
    check_endpoint(rep, r.index, "left", r.left_cf_a, r.left_cf_b, r.left,
                   r.left_printed);
    check_endpoint(rep, r.index, "right", r.right_cf_a, r.right_cf_b, r.right,
                   r.right_printed);
  }
  return rep;
}

std::vector<InequalityClaim> load_inequalities(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  std::vector<InequalityClaim> claims;
  std::string line;
  while (std::getline(in, line)) {
    std::string work = line;
    std::string tag;
    if (auto hash = work.find('#'); hash != std::string::npos) {
      tag = work.substr(hash + 1);
      work = work.substr(0, hash);
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    work = trim(work);
    tag = trim(tag);
    if (work.empty()) continue;

    auto close1 = work.find(']');
    auto plus = work.find('+', close1);
    auto close2 = work.find(']', plus);
    if (close1 == std::string::npos || plus == std::string::npos ||
        close2 == std::string::npos)
      throw std::runtime_error("bad manifest line: " + line);
    std::string rest = trim(work.substr(close2 + 1));
    if (rest.empty() || (rest[0] != '>' && rest[0] != '<'))
      throw std::runtime_error("bad relation in manifest line: " + line);

    InequalityClaim c;
    c.lhs_a = PeriodicCF::parse(trim(work.substr(0, close1 + 1)));
    c.lhs_b = PeriodicCF::parse(trim(work.substr(plus + 1, close2 - plus)));
    c.greater = rest[0] == '>';
    c.rhs = parse_decimal(trim(rest.substr(1)));
    c.tag = tag;
    c.line = line;
    claims.push_back(std::move(c));
  }
  return claims;
}

bool check_inequality(const InequalityClaim& claim) {
  QuadSurd a = eval_periodic(claim.lhs_a);
  QuadSurd b = eval_periodic(claim.lhs_b);
  // sign(a + b - rhs) over the common positive denominator, allowing the two
  // summands to live in different quadratic fields.
  const mpz_class tn = claim.rhs.get_num(), td = claim.rhs.get_den();
  mpz_class a0 = a.p() * b.r() * td + b.p() * a.r() * td - tn * a.r() * b.r();
  mpz_class b0 = a.q() * b.r() * td;
  mpz_class c0 = b.q() * a.r() * td;
  int s = QuadSurd::sign_two_radical(a0, b0, a.d(), c0, b.d());
  return claim.greater ? s > 0 : s < 0;
}

VerifyReport verify_inequalities(const std::string& manifest_path) {
  VerifyReport rep;
  for (const auto& c : load_inequalities(manifest_path)) {
    ++rep.checked;
    if (!check_inequality(c)) {
      rep.ok = false;
      rep.failures.push_back("claim failed: " + c.line);
    }
  }
  return rep;
}

namespace {

void validate_theta(const std::vector<std::uint8_t>& theta) {
  if (theta.size() % 2 != 0)
    throw std::invalid_argument("theta must have even length");
  std::vector<std::uint8_t> rev(theta.rbegin(), theta.rend());
  if (rev != theta) throw std::invalid_argument("theta must be symmetric");
  for (auto d : theta)
    if (d != 1 && d != 2)
      throw std::invalid_argument("theta digits must be 1 or 2");
}

}  // namespace

QuadSurd plateau_h(const std::vector<std::uint8_t>& theta, const QuadSurd& x,
                   const QuadSurd& y) {
  validate_theta(theta);
  QuadSurd v = x.shifted(2);  // innermost tail value 2 + x
  for (auto it = theta.rbegin(); it != theta.rend(); ++it)
    v = v.reciprocal().shifted(*it);
  return y.shifted(2) + v.reciprocal();
}

QuadSurd plateaux_minimum(const std::vector<std::uint8_t>& theta,
                          const std::vector<std::uint8_t>& beta,
                          const ForbiddenSet& forbidden) {
  validate_theta(theta);
  PeriodicCF omega = extremal_continuation(0, beta, forbidden, false);
  QuadSurd y = eval_periodic(omega);
  return plateau_h(theta, y, y);
}

namespace {

struct MinSearch {
  int center;
  int depth;
  const ForbiddenSet* forbidden;
  std::vector<std::uint8_t> left, right;  // left nearest-first
  std::size_t left0, right0;              // pattern sizes
  double best_lo = std::numeric_limits<double>::infinity();
  double best_hi = std::numeric_limits<double>::infinity();

  bool admissible() const {
    std::vector<std::uint8_t> w(left.rbegin(), left.rend());
    w.push_back(static_cast<std::uint8_t>(center));
    w.insert(w.end(), right.begin(), right.end());
    return !forbidden->matches(w);
  }

  void visit() {
    Interval iv = lambda0_bounds(left, center, right);
    if (iv.lo >= best_lo) return;  // cannot improve the certified minimum
    const int added_l = static_cast<int>(left.size() - left0);
    const int added_r = static_cast<int>(right.size() - right0);
    if (added_l >= depth && added_r >= depth) {
      best_lo = iv.lo;
      best_hi = iv.hi;
      return;
    }
    // Extend the shorter side; order digits so that value-decreasing choices
    // come first (odd CF depth: larger digit decreases the value).
    auto& side = (added_r <= added_l && added_r < depth) ? right : left;
    const std::size_t cf_index = side.size() + 1;
    const std::uint8_t first = (cf_index % 2 == 1) ? 2 : 1;
    for (int k = 0; k < 2; ++k) {
      std::uint8_t d = k == 0 ? first : static_cast<std::uint8_t>(3 - first);
      side.push_back(d);
      if (admissible()) visit();
      side.pop_back();
    }
  }
};

}  // namespace

Interval min_markov_search(const Word& pattern, const ForbiddenSet& forbidden,
                           int depth) {
  if (pattern.center < 0)
    throw std::invalid_argument("min_markov_search: pattern needs a center");
  if (depth < 0 || depth > 16)
    throw std::invalid_argument("min_markov_search: depth out of range");
  if (forbidden.matches(pattern.digits))
    throw std::invalid_argument("min_markov_search: pattern hits forbidden set");
  MinSearch ms;
  ms.center = pattern.digits[pattern.center];
  ms.depth = depth;
  ms.forbidden = &forbidden;
  ms.left.assign(pattern.digits.rend() - pattern.center, pattern.digits.rend());
  ms.right.assign(pattern.digits.begin() + pattern.center + 1,
                  pattern.digits.end());
  ms.left0 = ms.left.size();
  ms.right0 = ms.right.size();
  ms.visit();
  if (!std::isfinite(ms.best_lo))
    throw std::runtime_error("min_markov_search: no admissible extension");
  return {ms.best_lo, ms.best_hi};
}

bool h_monotonicity_check(const std::vector<std::uint8_t>& theta,
                          const std::vector<mpq_class>& samples) {
  validate_theta(theta);
  std::vector<mpq_class> xs = samples;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const auto& fixed : xs) {
    QuadSurd qf{fixed};
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      QuadSurd lo{xs[i]}, hi{xs[i + 1]};
      // increasing in y:
      if (!(plateau_h(theta, qf, lo) < plateau_h(theta, qf, hi))) return false;
      // decreasing in x:
      if (!(plateau_h(theta, lo, qf) > plateau_h(theta, hi, qf))) return false;
    }
  }
  return true;
}

VerifyReport verify_order() {
  VerifyReport rep;
  const auto& order = occurrence_order();
  // Occurrence chain: right endpoint of each plateau strictly below the left
  // endpoint of the next.
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    ++rep.checked;
    const int i = order[k], j = order[k + 1];
    QuadSurd b_i = i == 0 ? QuadSurd(pseudo_right_endpoint_p0())
                          : plateau_by_index(i).right;
    QuadSurd a_j = j == 1 ? QuadSurd(pseudo_left_endpoint_p1())
                          : plateau_by_index(j).left;
    if (!(b_i < a_j)) {
      rep.ok = false;
      rep.failures.push_back("occurrence order violated between P_" +
                             std::to_string(i) + " and P_" + std::to_string(j));
    }
  }
  // Length order: strictly decreasing with the index 2..13; compared through
  // exact scaled floors at 20 digits (lengths differ by far more than 1e-20).
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 20);
  std::vector<mpz_class> floors;
  for (const auto& r : plateau_table())
    floors.push_back(difference_floor_scaled(r.left, r.right, scale));
  for (std::size_t k = 0; k + 1 < floors.size(); ++k) {
    ++rep.checked;
    if (!(floors[k] > floors[k + 1] + 1)) {
      rep.ok = false;
      rep.failures.push_back("length order violated between P_" +
                             std::to_string(k + 2) + " and P_" +
                             std::to_string(k + 3));
    }
  }
  // Theorem threshold: P_2..P_11 longer than 0.005, P_12 and P_13 shorter.
  for (const auto& r : plateau_table()) {
    ++rep.checked;
    mpz_class f = difference_floor_scaled(r.left, r.right, 100000);
    const bool above = f >= 500;  // length >= 0.005
    if (above != (r.index <= 11)) {
      rep.ok = false;
      rep.failures.push_back("0.005 threshold misclassified for P_" +
                             std::to_string(r.index));
    }
  }
  return rep;
}

}  // namespace markovdim

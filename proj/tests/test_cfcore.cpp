#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "markovdim/cf.hpp"
#include "markovdim/quadsurd.hpp"
#include "markovdim/words.hpp"

using namespace markovdim;

namespace {

bool encloses(const Interval& iv, const QuadSurd& v) {
  return QuadSurd(mpq_class(iv.lo)) <= v && v <= QuadSurd(mpq_class(iv.hi));
}

}  // namespace

TEST_CASE("periodic CF parsing round-trips") {
  PeriodicCF cf = PeriodicCF::parse("[2;1,2,(2,1)]");
  CHECK(cf.head == 2);
  CHECK(cf.preamble == std::vector<std::uint8_t>{1, 2});
  CHECK(cf.period == std::vector<std::uint8_t>{2, 1});
  CHECK(cf.str() == "[2;1,2,(2,1)]");
  CHECK(PeriodicCF::parse("[0;(1)]").str() == "[0;(1)]");
  CHECK_THROWS(PeriodicCF::parse("[2;1,2]"));      // no period
  CHECK_THROWS(PeriodicCF::parse("[2;(1,3)]"));    // bad digit
  CHECK_THROWS(PeriodicCF::parse("[2;(1,(2))]"));  // nested parens
}

TEST_CASE("eval_periodic produces exact surds") {
  // [0; 1,1,1,...] is the golden-ratio tail (sqrt(5)-1)/2.
  CHECK(eval_periodic(PeriodicCF::parse("[0;(1)]")) == QuadSurd(-1, 1, 5, 2));

  QuadSurd s10 = eval_periodic(PeriodicCF::parse("[2;(1,1,2)]")) +
                 eval_periodic(PeriodicCF::parse("[0;(1,1,2)]"));
  CHECK(s10 == QuadSurd::sqrt_of(10));

  QuadSurd p2l = eval_periodic(PeriodicCF::parse("[2;(1,2,2,2)]")) +
                 eval_periodic(PeriodicCF::parse("[0;(2,2,1,2)]"));
  CHECK(p2l == QuadSurd(0, 4, 30, 7));
  CHECK(p2l.decimal(10) == "3.1298431857");

  // Evaluation is invariant under repeating the period.
  CHECK(eval_periodic(PeriodicCF::parse("[0;(1,2)]")) ==
        eval_periodic(PeriodicCF::parse("[0;(1,2,1,2)]")));
  CHECK(eval_periodic(PeriodicCF::parse("[2;1,(2,1)]")) ==
        eval_periodic(PeriodicCF::parse("[2;1,(2,1,2,1,2,1)]")));

  // The two canonical tails.
  CHECK(eval_periodic(PeriodicCF::parse("[0;(1,2)]")) == QuadSurd(-1, 1, 3, 1));
  CHECK(eval_periodic(PeriodicCF::parse("[0;(2,1)]")) == QuadSurd(-1, 1, 3, 2));
}

TEST_CASE("lambda0_bounds single-digit windows match the coarse brackets") {
  Interval c1 = lambda0_bounds({}, 1, {});
  CHECK(c1.lo > 1.73);
  CHECK(c1.lo < 1.74);
  CHECK(c1.hi > 2.46);
  CHECK(c1.hi < 2.48);

  Interval c2 = lambda0_bounds({}, 2, {});
  CHECK(c2.lo > 2.73);
  CHECK(c2.lo < 2.74);
  CHECK(c2.hi > 3.46);
  CHECK(c2.hi < 3.47);

  CHECK_THROWS(lambda0_bounds({}, 3, {}));
}

TEST_CASE("lambda0_bounds contains exact values of sampled extensions") {
  std::mt19937 rng(20240817);
  auto rand_digits = [&](int len) {
    std::vector<std::uint8_t> d(len);
    for (auto& x : d) x = static_cast<std::uint8_t>(1 + (rng() & 1));
    return d;
  };
  const std::vector<std::vector<std::uint8_t>> tails = {
      {1, 2}, {2, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}};
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto left = rand_digits(static_cast<int>(rng() % 6));
    auto right = rand_digits(static_cast<int>(rng() % 6));
    int center = 1 + static_cast<int>(rng() & 1);
    Interval iv = lambda0_bounds(left, center, right);
    // Extend with same-orbit periodic tails so the two sides share a field.
    std::size_t base = rng() % 2 ? 0 : 2;  // {12,21} or rotations of 112
    std::size_t span = base == 0 ? 2 : 3;
    auto tl = tails[base + rng() % span];
    auto tr = tails[base + rng() % span];
    QuadSurd v = lambda0_exact(left, center, right, tl, tr);
    CHECK(encloses(iv, v));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("extremal continuations reach the published extremes") {
  // Largest CF value with integer part 2 avoiding the factor 121.
  PeriodicCF a =
      extremal_continuation(2, {}, ForbiddenSet::parse({"121"}), true);
  CHECK(a == PeriodicCF::parse("[2;(1,2,2,2)]"));

  // Largest value starting [0;2,...] avoiding 121 and 212.
  PeriodicCF b = extremal_continuation(0, {2}, ForbiddenSet::parse({"121", "212"}),
                                       true);
  CHECK(eval_periodic(b) ==
        eval_periodic(PeriodicCF::parse("[0;(2,2,1,1,1,2)]")));

  // Unconstrained maximum with integer part 1 alternates 2,1.
  PeriodicCF c = extremal_continuation(1, {}, ForbiddenSet{}, true);
  CHECK(eval_periodic(c) == eval_periodic(PeriodicCF::parse("[1;(1,2)]")));

  // Unconstrained minimum with head 0 alternates 2,1 the other way.
  PeriodicCF d = extremal_continuation(0, {}, ForbiddenSet{}, false);
  CHECK(eval_periodic(d) == eval_periodic(PeriodicCF::parse("[0;(2,1)]")));

  CHECK_THROWS(extremal_continuation(0, {1, 2, 1},
                                     ForbiddenSet::parse({"121"}), true));
}

TEST_CASE("extremal maximum dominates random admissible continuations") {
  ForbiddenSet fs = ForbiddenSet::parse({"121"});
  QuadSurd best = eval_periodic(extremal_continuation(2, {}, fs, true));
  std::mt19937 rng(991);
  // Periodic tails whose infinite repetition avoids 121 (alternating tails
  // would always contain it).
  const std::vector<std::vector<std::uint8_t>> tails = {
      {2}, {1, 2, 2, 2}, {2, 2, 1, 2}};
  int tested = 0;
  while (tested < 1000) {
    std::vector<std::uint8_t> digits;
    std::vector<std::uint8_t> stream{2};
    bool dead = false;
    for (int i = 0; i < 12 && !dead; ++i) {
      std::uint8_t d = static_cast<std::uint8_t>(1 + (rng() & 1));
      stream.push_back(d);
      if (fs.matches_suffix(stream)) {
        stream.back() = static_cast<std::uint8_t>(3 - d);
        if (fs.matches_suffix(stream)) dead = true;
      }
    }
    if (dead) continue;
    for (const auto& tail : tails) {
      // Tail must keep the word admissible where it joins the prefix.
      auto probe = stream;
      for (int rep = 0; rep < 3; ++rep)
        probe.insert(probe.end(), tail.begin(), tail.end());
      if (fs.matches(probe)) continue;
      PeriodicCF cf{2, {stream.begin() + 1, stream.end()}, tail};
      CHECK(eval_periodic(cf) <= best);
      ++tested;
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "markovdim/cf.hpp"
#include "markovdim/plateau.hpp"
#include "markovdim/quadsurd.hpp"

using namespace markovdim;

#ifndef MARKOVDIM_DATA_DIR
#define MARKOVDIM_DATA_DIR "data"
#endif

static const std::string kManifest =
    std::string(MARKOVDIM_DATA_DIR) + "/inequalities.manifest";

TEST_CASE("catalog shape and lengths") {
  const auto& table = plateau_table();
  REQUIRE(table.size() == 12);
  for (std::size_t k = 0; k < table.size(); ++k)
    CHECK(table[k].index == static_cast<int>(k) + 2);

  const PlateauRecord& p2 = plateau_by_index(2);
  CHECK(p2.left == QuadSurd(0, 4, 30, 7));
  CHECK(difference_decimal(p2.left, p2.right, 8) == "0.03673544");

  const PlateauRecord& p12 = plateau_by_index(12);
  // The published 7-digit length 0.0041857 is rounded up; the exact value
  // starts 0.00418569.
  CHECK(difference_decimal(p12.left, p12.right, 8) == "0.00418569");
  CHECK(p12.plateau_length == "0.0041857");

  CHECK_THROWS(plateau_by_index(14));
  CHECK_THROWS(plateau_by_index(1));
}

TEST_CASE("endpoint identities hold exactly") {
  VerifyReport rep = verify_endpoint_identities();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);
  CHECK(rep.checked == 24);

  // Spot checks straight against the closed forms.
  CHECK(eval_periodic(PeriodicCF::parse("[2;(1,1,1,2,2,2)]")) +
            eval_periodic(PeriodicCF::parse("[0;(2,2,1,1,1,2)]")) ==
        QuadSurd(0, 4, 210, 19));
  CHECK(eval_periodic(PeriodicCF::parse("[2;1,1,(2,2,1,2)]")) +
            eval_periodic(PeriodicCF::parse("[0;1,1,(2,2,1,2)]")) ==
        QuadSurd(15, -1, 30, 3));
  CHECK(eval_periodic(PeriodicCF::parse("[2;(1,1,1,2,2)]")) +
            eval_periodic(PeriodicCF::parse("[0;(2,1,1,1,2)]")) ==
        QuadSurd(0, 1, 145, 4));
  CHECK(QuadSurd(0, 1, 145, 4).decimal(12) == "3.010398644698");
}

TEST_CASE("inequality manifest verifies in full") {
  VerifyReport rep = verify_inequalities(kManifest);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);
  CHECK(rep.checked == 59);

  auto claims = load_inequalities(kManifest);
  REQUIRE(claims.size() == 59);
  for (const auto& c : claims) CHECK(!c.tag.empty());

  // Flipping a relation must flip the verdict.
  InequalityClaim flipped = claims[0];
  flipped.greater = !flipped.greater;
  CHECK(check_inequality(claims[0]));
  CHECK_FALSE(check_inequality(flipped));

  // A deliberately false claim with mixed radicands.
  InequalityClaim wrong;
  wrong.lhs_a = PeriodicCF::parse("[2;(1,1,2)]");
  wrong.lhs_b = PeriodicCF::parse("[0;(1)]");
  wrong.greater = true;
  wrong.rhs = parse_decimal("3.2");
  CHECK_FALSE(check_inequality(wrong));
  wrong.rhs = parse_decimal("3.19");
  CHECK(check_inequality(wrong));  // (sqrt(10)+2)/2 + (sqrt(5)-1)/2 = 3.1991...
}

TEST_CASE("manifest parser rejects malformed lines") {
  std::string path = "/tmp/bad_manifest.txt";
  {
    std::ofstream out(path);
    out << "[2;(1,2)] [0;(1,2)] > 3.0\n";
  }
  CHECK_THROWS(load_inequalities(path));
  std::remove(path.c_str());
  CHECK_THROWS(load_inequalities("/nonexistent/manifest"));
}

TEST_CASE("plateaux minimum reproduces the right endpoints") {
  QuadSurd pm1 = plateaux_minimum(
      {1, 1}, {1, 1, 2, 2},
      ForbiddenSet::parse({"1212", "2121", "12111", "11121"}));
  CHECK(pm1 == QuadSurd(16351, 720, 30, 6409));

  QuadSurd pm2 = plateaux_minimum({1, 2, 2, 1}, {2, 1, 1},
                                  ForbiddenSet::parse({"121", "21222", "22212"}));
  CHECK(pm2 == plateau_by_index(3).right);
  CHECK(pm2 == QuadSurd(74613, 4096, 210, 43449));

  // Unconstrained degenerate case: y = [0;(2,1)], h = 2 + y + 1/(2+y).
  QuadSurd y = eval_periodic(PeriodicCF::parse("[0;(2,1)]"));
  QuadSurd expect = y.shifted(2) + y.shifted(2).reciprocal();
  CHECK(plateaux_minimum({}, {}, ForbiddenSet{}) == expect);
  CHECK(expect == QuadSurd(15, 1, 3, 6));  // frozen exact form

  CHECK_THROWS(plateaux_minimum({1, 2}, {}, ForbiddenSet{}));  // not symmetric
}

TEST_CASE("branch-and-bound corroboration of minimal Markov values") {
  Interval iv = min_markov_search(
      Word::parse("2112*1122"),
      ForbiddenSet::parse({"1212", "2121", "12111", "11121"}), 12);
  Interval target = QuadSurd(16351, 720, 30, 6409).to_interval();
  CHECK(iv.lo <= target.hi);
  CHECK(iv.lo >= target.lo - 1e-3);

  Interval iv2 = min_markov_search(Word::parse("12*12"), ForbiddenSet{}, 10);
  Interval s689 = QuadSurd(0, 1, 689, 8).to_interval();
  CHECK(iv2.lo <= s689.hi);
  CHECK(iv2.lo >= s689.lo - 1e-2);

  Interval iv3 = min_markov_search(Word::parse("2*"), ForbiddenSet{}, 6);
  CHECK(iv3.lo <= 3.0);
  CHECK(iv3.lo > 2.73);  // frozen: approaches 1 + sqrt(3) from above

  CHECK_THROWS(min_markov_search(Word::parse("212"), ForbiddenSet{}, 4));
  CHECK_THROWS(min_markov_search(Word::parse("12*1"),
                                 ForbiddenSet::parse({"121"}), 4));
}

TEST_CASE("h is decreasing in x and increasing in y") {
  std::vector<mpq_class> grid;
  for (int k = 0; k < 5; ++k)
    grid.push_back(parse_decimal("0.36") + k * mpq_class(13, 200));
  CHECK(h_monotonicity_check({2, 2}, grid));
  CHECK(h_monotonicity_check({}, grid));
  CHECK_THROWS(h_monotonicity_check({1, 1, 2, 2}, grid));
  CHECK_THROWS(h_monotonicity_check({1}, grid));
}

TEST_CASE("occurrence and length orderings verify exactly") {
  VerifyReport rep = verify_order();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);

  const auto& order = occurrence_order();
  REQUIRE(order.size() == 14);
  CHECK(order.front() == 0);
  CHECK(order.back() == 1);

  CHECK(pseudo_right_endpoint_p0() == 3);
  CHECK(pseudo_left_endpoint_p1() == parse_decimal("3.334384"));
}

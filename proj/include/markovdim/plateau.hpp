#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "markovdim/cf.hpp"
#include "markovdim/interval.hpp"
#include "markovdim/quadsurd.hpp"
#include "markovdim/words.hpp"

namespace markovdim {

// One catalogued plateau of the dimension function: exact endpoints, their
// defining continued-fraction expressions, the forbidden-word set of the
// associated Gauss-Cantor set, and the published reference decimals.
struct PlateauRecord {
  int index = 0;                      // 2..13
  ForbiddenSet fw;                    // FW_i
  QuadSurd left, right;               // exact endpoints, left < right
  PeriodicCF left_cf_a, left_cf_b;    // left == eval(a) + eval(b)
  PeriodicCF right_cf_a, right_cf_b;  // right == eval(a) + eval(b)
  std::string left_printed, right_printed;  // truncated decimals as published
  std::string plateau_value;          // published d value on the plateau (2*D_i)
  std::string plateau_length;         // published truncated length
};

const std::vector<PlateauRecord>& plateau_table();
const PlateauRecord& plateau_by_index(int i);

// Occurrence order along the real line, with pseudo entries 0 (everything
// below 3) and 1 (everything above t_1).
const std::vector<int>& occurrence_order();
// Right endpoint of pseudo plateau P_0 (exactly 3).
mpq_class pseudo_right_endpoint_p0();
// Left endpoint of pseudo plateau P_1: t_1 truncated to 3.334384 (enough
// digits to settle every 1e-4 floor used by the gap intervals).
mpq_class pseudo_left_endpoint_p1();

struct VerifyReport {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;
};

// For each of the 24 endpoints: evaluate the CF sum exactly, compare with
// the closed-form surd, and compare the truncated decimal with the published
// digits.
VerifyReport verify_endpoint_identities();

struct InequalityClaim {
  PeriodicCF lhs_a, lhs_b;
  bool greater = true;  // lhs > rhs (else lhs < rhs)
  mpq_class rhs;
  std::string tag;
  std::string line;
};

std::vector<InequalityClaim> load_inequalities(const std::string& path);
bool check_inequality(const InequalityClaim& claim);  // exact
VerifyReport verify_inequalities(const std::string& manifest_path);

// Exact h(x, y) = 2 + y + [0; theta, 2+x] (theta symmetric of even length).
QuadSurd plateau_h(const std::vector<std::uint8_t>& theta, const QuadSurd& x,
                   const QuadSurd& y);

// Minimal Markov value of words omega2^t beta^t 2 theta 2 beta omega1 (value
// attained at a 2 next to theta): h(y,y) with y = min [0; beta, omega] over
// admissible continuations omega.
QuadSurd plateaux_minimum(const std::vector<std::uint8_t>& theta,
                          const std::vector<std::uint8_t>& beta,
                          const ForbiddenSet& forbidden);

// Branch-and-bound corroboration: a certified lower bound (interval .lo) for
// the minimal Markov value over sequences containing `pattern` around its
// center, avoiding `forbidden`, exploring `depth` extra digits per side.
// Corroborative only - not a minimality proof.
Interval min_markov_search(const Word& pattern, const ForbiddenSet& forbidden,
                           int depth);

// Exact monotonicity check of plateau_h on a sample grid: increasing in y,
// decreasing in x.
bool h_monotonicity_check(const std::vector<std::uint8_t>& theta,
                          const std::vector<mpq_class>& samples);

// Exact order verifications (occurrence chain and length ordering).
VerifyReport verify_order();

}  // namespace markovdim

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "markovdim/dimension.hpp"
#include "markovdim/forbid.hpp"

namespace markovdim {

// One certified evaluation of the dimension function: d(s) <= d_upper and
// d(s_prime) >= d_lower_at_s_prime.
struct CheckpointRecord {
  mpq_class s;
  int n = 0;
  double d_upper = 1.0;
  double s_prime = 0.0;
  double d_lower_at_s_prime = 0.0;
  DimEnclosure dim;                    // lo from the inner graph, hi from the
                                       // outer graph (see d_bounds)
  std::uint64_t forbidden_digest = 0;  // FNV-1a of the reduced forbidden set
};

// Runs the forbidden-word search at threshold s with window radius n, reduces
// the result, and computes a certified dimension enclosure at block depth m.
// Words longer than m+1 digits cannot enter the transition graph directly:
// the upper bound drops them (larger set), the lower bound replaces them by
// their (m+1)-digit prefix (smaller set), so both directions stay certified.
CheckpointRecord d_bounds(const mpq_class& s, int n, int m, double tol = 1e-4);

struct SweepResult {
  std::vector<CheckpointRecord> records;  // sorted by s
  // Staircase envelopes sampled at the record thresholds (same order):
  std::vector<double> upper_envelope;  // cumulative max of d_upper
  std::vector<double> lower_envelope;  // max d_lower over records with s' < s
};

// Certified sweep over the grid a + k*step (k >= 1) strictly inside [a, b];
// a degenerate interval [a, a] yields the single record at a.  Records are
// computed in parallel; the lower staircase folds in the s' values of every
// record handed in through `extra` as well (the monotonicity argument is
// global, not per-interval).
SweepResult sweep(const mpq_class& a, const mpq_class& b,
                  const mpq_class& step, int n, int m, double tol = 1e-4,
                  const std::vector<CheckpointRecord>& extra = {});

// CSV emission: header "s,d_lower,d_upper", one row per record with the
// envelope values.
std::string sweep_to_csv(const SweepResult& result);

std::string checkpoint_to_json(const CheckpointRecord& rec);

// Gap interval between two plateaux adjacent in the occurrence order:
// [1e-4*(floor(1e4*b_i) - 1), 1e-4*(floor(1e4*a_j) + 1)], exact rationals
// with denominator 10^4.
struct GapInterval {
  int i = 0, j = 0;
  mpq_class lo, hi;
  bool no_estimate_needed = false;  // width < 0.005
  double width() const { return mpq_class(hi - lo).get_d(); }
};

GapInterval gap_interval(int i, int j);

// 2*W(c*|log eps|)/|log eps| with c = 1/log((3+sqrt(5))/2) and W the Lambert
// function, computed by Newton iteration to residual 1e-12.
double lambert_asymptotic(double eps);

// FNV-1a 64 digest of a forbidden set's serialized words.
std::uint64_t digest_forbidden(const ForbiddenSet& fs);

}  // namespace markovdim

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "markovdim/words.hpp"

namespace markovdim {

// Result of the forbidden-word search at threshold s with window radius n
// (windows grow up to 2n+1 digits).
struct ForbidResult {
  mpq_class s;
  int n = 0;
  ForbiddenSet forbidden;   // centered words, closed under reversal
  double s_prime = 0.0;     // running max of window upper bounds kept below s
                            // (may exceed s via the degenerate straddle branch)
  int lmax = 0;             // longest saved word (diagnostic)
  std::uint64_t nodes = 0;  // classified windows
  bool straddle = false;    // some full-length window still straddled s
  bool threshold_warning = false;  // s outside the supported range (2.9, 3.4)
};

// Centered-window bisection search: classifies every window around a center
// digit by its certified lambda0 enclosure and saves the windows that force
// lambda0 > s (together with their reversals).
ForbidResult forbidden_words(const mpq_class& s, int n);

struct SoundnessReport {
  bool ok = true;
  std::string detail;  // counterexample description when !ok
};

// Independent check: for every saved word, every extension by L digits on
// each side, completed with both periodic tails (1,2) and (2,1), must have
// exact lambda0 > s.  Exact quadratic-surd arithmetic throughout.
SoundnessReport soundness_check(const ForbidResult& result, int L);

std::string forbid_to_json(const ForbidResult& result);

}  // namespace markovdim

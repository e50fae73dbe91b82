#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "markovdim/interval.hpp"
#include "markovdim/quadsurd.hpp"
#include "markovdim/words.hpp"

namespace markovdim {

// Eventually periodic continued fraction [head; preamble..., (period...)].
// head may be 0 (value in (0,1)) or a digit; all fractional digits are 1 or 2.
struct PeriodicCF {
  int head = 0;
  std::vector<std::uint8_t> preamble;
  std::vector<std::uint8_t> period;  // nonempty

  static PeriodicCF parse(const std::string& text);  // "[2;1,2,(2,1)]"
  std::string str() const;

  bool operator==(const PeriodicCF& o) const {
    return head == o.head && preamble == o.preamble && period == o.period;
  }
};

// Exact value of an eventually periodic CF as a quadratic surd.
QuadSurd eval_periodic(const PeriodicCF& cf);

// Exact value of [center; right..., (tail_right...)] + [0; left..., (tail_left...)]
// where `left` lists the digits to the left of the center, nearest first.
// Both tails must generate the same quadratic field.
QuadSurd lambda0_exact(std::span<const std::uint8_t> left, int center,
                       std::span<const std::uint8_t> right,
                       const std::vector<std::uint8_t>& tail_left,
                       const std::vector<std::uint8_t>& tail_right);

// Certified enclosure of the set of values
//   [center; right..., *] + [0; left..., *]
// over all infinite {1,2}-extensions '*' on both sides (left nearest-first).
// The endpoints come from the four-parity extremal periodic tails.
Interval lambda0_bounds(std::span<const std::uint8_t> left, int center,
                        std::span<const std::uint8_t> right);

// Greedy extremal continuation: the infinite {1,2}-sequence omega such that
// [head; prefix..., omega...] avoids `forbidden` and is maximal (want_max) or
// minimal among all admissible continuations.  The result is eventually
// periodic; throws std::runtime_error if no periodic pattern emerges within
// `length_bound` digits or if the prefix admits no infinite continuation.
PeriodicCF extremal_continuation(int head,
                                 const std::vector<std::uint8_t>& prefix,
                                 const ForbiddenSet& forbidden, bool want_max,
                                 int length_bound = 4096);

}  // namespace markovdim

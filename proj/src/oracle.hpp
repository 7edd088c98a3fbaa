#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "exact_table.hpp"

namespace monohurwitz {

// Order in which a tuple of transpositions is multiplied out.
enum class Composition { left_to_right, right_to_left };

struct OracleCount {
  std::uint32_t d = 0;  // symbols
  std::uint32_t k = 0;  // factors
  mpz_class raw_count;  // tuples whose product is some d-cycle
};

inline constexpr std::uint32_t kOracleMaxSymbols = 7;
inline constexpr std::uint32_t kOracleMaxFactors = 14;

// Counts k-tuples of transpositions on {1..d} whose larger elements are
// weakly nondecreasing along the tuple and whose product is a single
// d-cycle (aggregated over all long cycles). Dynamic program over
// (partial product, current maximum) states; deliberately independent of
// the two-term recurrence it validates.
// Throws std::domain_error outside the enumeration guard
// (1 <= d <= 7, 0 <= k <= 14).
OracleCount count_monotone_long_cycle(std::uint32_t d, std::uint32_t k,
                                      Composition comp = Composition::left_to_right);

// E(n,g) from the raw count: raw(d, d+2g-1) / (d-1)! with d = n+1.
ExactValue oracle_value(std::uint32_t n, std::uint32_t g);

// CSV "d,k,raw_count,normalized" over the full guarded range.
void oracle_export_csv(const std::string& path);

}  // namespace monohurwitz

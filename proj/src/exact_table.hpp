#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "real.hpp"

namespace monohurwitz {

struct GridPoint {
  std::uint32_t n = 0;
  std::uint32_t g = 0;
};

// Reduced rational, denominator > 0.
using ExactValue = mpq_class;

// Thrown when a requested grid is larger than the configured cell cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCellCap = 4'000'000;

// Catalan number (2n)!/((n+1)! n!) by direct binomial evaluation,
// independent of the recurrence.
mpz_class catalan_reference(std::uint32_t n);

// Natural log of a positive rational, relative error within a few ulps
// at the requested precision.
Real log_rational(const mpq_class& v, mpfr_prec_t prec);
Real log_integer(const mpz_class& v, mpfr_prec_t prec);

// Dense table of the one-part monotone Hurwitz numbers E(n,g), filled from
//   (n+1) E(n,g) = 2(2n-1) E(n-1,g) + n^2 (n+1) E(n,g-1)
// with base column E(0,0) = 1, E(0,g) = 0 for g >= 1.
//
// Internally the table stores the integer rescaling a(n,g) = E(n,g)*(n+1)!,
// which satisfies the division-free recurrence
//   a(n,g) = 2(2n-1) a(n-1,g) + n^2 a(n,g-1).
// Entries are reduced back to rationals on access, so every public value is
// exact. The table is immutable once built and safe for concurrent reads.
class ExactTable {
 public:
  ExactTable(std::uint32_t n_max, std::uint32_t g_max,
             std::uint64_t cell_cap = kDefaultCellCap, unsigned threads = 1);

  std::uint32_t n_max() const { return n_max_; }
  std::uint32_t g_max() const { return g_max_; }
  bool contains(GridPoint p) const { return p.n <= n_max_ && p.g <= g_max_; }

  // Exact reduced E(n,g). Throws std::out_of_range outside the grid.
  ExactValue entry(GridPoint p) const;

  // E(n,g) * (n+1)!, the stored integer form.
  const mpz_class& scaled(GridPoint p) const;

  // ln E(n,g); requires E(n,g) > 0.
  Real log_entry(GridPoint p, mpfr_prec_t prec = 128) const;

  // CSV "n,g,numerator,denominator,log_value" in (n,g) lexicographic order,
  // log_value with 18 significant digits ("-inf" for the zero base cells).
  // Written atomically (temp file + rename).
  void export_csv(const std::string& path) const;

 private:
  const mpz_class& factorial(std::uint32_t k) const { return factorial_[k]; }
  std::size_t index(GridPoint p) const {
    return std::size_t(p.g) * (n_max_ + 1) + p.n;
  }
  void fill_serial();
  void fill_parallel(unsigned threads);

  std::uint32_t n_max_, g_max_;
  std::vector<mpz_class> cells_;      // scaled values, row-major in g
  std::vector<mpz_class> factorial_;  // factorial_[k] = k!, k <= n_max+1
};

// ln E at selected points without materializing the table, by streaming the
// integer recurrence one g-row at a time. Returns one value per input point,
// -inf for zero cells. Memory is one row of integers over n <= max point n.
std::vector<Real> log_e_stream(std::span<const GridPoint> points,
                               mpfr_prec_t prec = 128);

}  // namespace monohurwitz

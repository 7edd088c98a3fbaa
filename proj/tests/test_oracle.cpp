#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "exact_table.hpp"
#include "oracle.hpp"

using namespace monohurwitz;

TEST_CASE("tiny cases by hand") {
  // d=2: the only transposition is (1 2); a single factor gives the 2-cycle.
  CHECK(count_monotone_long_cycle(2, 1).raw_count == 1);
  // No way to reach a 2-cycle with an even number of transpositions.
  CHECK(count_monotone_long_cycle(2, 2).raw_count == 0);
  CHECK(count_monotone_long_cycle(2, 0).raw_count == 0);
  // d=1: the empty product is the trivial long cycle.
  CHECK(count_monotone_long_cycle(1, 0).raw_count == 1);
}

TEST_CASE("parity: counts vanish unless k = d-1 (mod 2)") {
  for (std::uint32_t d = 2; d <= 5; ++d)
    for (std::uint32_t k = 0; k <= 8; ++k)
      if ((k + d) % 2 == 0) CHECK(count_monotone_long_cycle(d, k).raw_count == 0);
}

TEST_CASE("composition convention does not matter") {
  for (std::uint32_t d = 2; d <= 5; ++d)
    for (std::uint32_t k = d - 1; k <= d + 5; k += 2)
      CHECK(count_monotone_long_cycle(d, k, Composition::left_to_right).raw_count ==
            count_monotone_long_cycle(d, k, Composition::right_to_left).raw_count);
}

TEST_CASE("normalized values match the recurrence") {
  ExactTable t(5, 4);
  for (std::uint32_t n = 1; n <= 5; ++n)
    for (std::uint32_t g = 0; n + 2 * g <= 9; ++g)
      CHECK(oracle_value(n, g) == t.entry({n, g}));
}

TEST_CASE("normalization is (d-1)!, not d!") {
  // Negative control: dividing by d! instead would halve E(1,1) = 1.
  mpz_class raw = count_monotone_long_cycle(2, 3).raw_count;
  CHECK(ExactValue(raw) / 1 == 1);   // (d-1)! = 1
  CHECK(ExactValue(raw) / 2 != 1);   // d! = 2 is the wrong convention
  // And for d=3: raw(3,2)/2! = E(2,0) = 2.
  mpz_class raw3 = count_monotone_long_cycle(3, 2).raw_count;
  CHECK(ExactValue(raw3) / 2 == 2);
  CHECK(ExactValue(raw3) / 6 != 2);
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(count_monotone_long_cycle(8, 7), std::domain_error);
  CHECK_THROWS_AS(count_monotone_long_cycle(3, 15), std::domain_error);
  CHECK_THROWS_AS(count_monotone_long_cycle(0, 0), std::domain_error);
}

TEST_CASE("csv export") {
  const std::string p = "oracle_counts.csv";
  oracle_export_csv(p);
  std::ifstream f(p);
  std::string header;
  std::getline(f, header);
  CHECK(header == "d,k,raw_count,normalized");
  std::string line;
  bool found = false;
  while (std::getline(f, line))
    if (line.rfind("2,1,1,1", 0) == 0) found = true;
  CHECK(found);
  std::remove(p.c_str());
}

#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "csv.hpp"

namespace monohurwitz {

namespace {

using Perm = std::array<std::uint8_t, kOracleMaxSymbols>;

std::uint32_t pack(const Perm& p, std::uint32_t d) {
  std::uint32_t key = 0;
  for (std::uint32_t i = 0; i < d; ++i) key |= std::uint32_t(p[i]) << (3 * i);
  return key;
}

bool is_long_cycle(const Perm& p, std::uint32_t d) {
  std::uint32_t len = 1;
  for (std::uint8_t x = p[0]; x != 0; x = p[x]) ++len;
  return len == d;
}

}  // namespace

OracleCount count_monotone_long_cycle(std::uint32_t d, std::uint32_t k,
                                      Composition comp) {
  if (d < 1 || d > kOracleMaxSymbols || k > kOracleMaxFactors)
    throw std::domain_error("oracle enumeration guard exceeded");

  // Enumerate S_d and rank permutations through their packed form.
  Perm id{};
  std::iota(id.begin(), id.begin() + d, std::uint8_t(0));
  std::vector<Perm> perms;
  {
    Perm p = id;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + d));
  }
  std::vector<std::int32_t> rank(std::size_t(1) << (3 * d), -1);
  for (std::size_t r = 0; r < perms.size(); ++r) rank[pack(perms[r], d)] = std::int32_t(r);

  // State: (partial product, largest element used so far; 0 = no factor yet).
  // Transitions multiply by a transposition (a b), a < b, with b+1 >= max.
  const std::uint32_t maxima = d + 1;
  std::vector<mpz_class> cur(perms.size() * maxima), next(cur.size());
  cur[rank[pack(id, d)] * maxima] = 1;

  for (std::uint32_t step = 0; step < k; ++step) {
    for (auto& c : next) c = 0;
    for (std::size_t r = 0; r < perms.size(); ++r) {
      const Perm& p = perms[r];
      for (std::uint32_t m = 0; m < maxima; ++m) {
        const mpz_class& c = cur[r * maxima + m];
        if (sgn(c) == 0) continue;
        const std::uint32_t b_min = m <= 2 ? 1 : m - 1;  // b+1 >= m, 1-based max
        for (std::uint8_t b = std::uint8_t(b_min); b < d; ++b) {
          for (std::uint8_t a = 0; a < b; ++a) {
            Perm q = p;
            if (comp == Composition::left_to_right) {
              // product applies the new factor last: q = (a b) o p
              for (std::uint32_t i = 0; i < d; ++i) {
                if (q[i] == a)
                  q[i] = b;
                else if (q[i] == b)
                  q[i] = a;
              }
            } else {
              // q = p o (a b)
              std::swap(q[a], q[b]);
            }
            next[rank[pack(q, d)] * maxima + (b + 1)] += c;
          }
        }
      }
    }
    cur.swap(next);
  }

  OracleCount out{d, k, 0};
  for (std::size_t r = 0; r < perms.size(); ++r) {
    if (!is_long_cycle(perms[r], d)) continue;
    for (std::uint32_t m = 0; m < maxima; ++m) out.raw_count += cur[r * maxima + m];
  }
  return out;
}

ExactValue oracle_value(std::uint32_t n, std::uint32_t g) {
  const std::uint32_t d = n + 1;
  const std::uint32_t k = n + 2 * g;
  OracleCount c = count_monotone_long_cycle(d, k);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), d - 1);
  ExactValue v(c.raw_count, fact);
  v.canonicalize();
  return v;
}

void oracle_export_csv(const std::string& path) {
  AtomicFileWriter file(path);
  auto& out = file.stream();
  out << "d,k,raw_count,normalized\n";
  for (std::uint32_t d = 1; d <= kOracleMaxSymbols; ++d) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), d - 1);
    for (std::uint32_t k = 0; k <= kOracleMaxFactors; ++k) {
      OracleCount c = count_monotone_long_cycle(d, k);
      ExactValue norm(c.raw_count, fact);
      norm.canonicalize();
      out << d << ',' << k << ',' << c.raw_count.get_str() << ','
          << norm.get_num().get_str();
      if (norm.get_den() != 1) out << '/' << norm.get_den().get_str();
      out << '\n';
    }
  }
  file.commit();
}

}  // namespace monohurwitz

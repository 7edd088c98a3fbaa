#include "exact_table.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "csv.hpp"

namespace monohurwitz {

mpz_class catalan_reference(std::uint32_t n) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), 2ul * n, n);
  mpz_class c;
  mpz_divexact_ui(c.get_mpz_t(), b.get_mpz_t(), n + 1ul);
  return c;
}

Real log_integer(const mpz_class& v, mpfr_prec_t prec) {
  if (sgn(v) <= 0) throw std::domain_error("log_integer: nonpositive input");
  Real r = Real::from_mpz(v, prec);
  return log(std::move(r));
}

Real log_rational(const mpq_class& v, mpfr_prec_t prec) {
  if (sgn(v) <= 0) throw std::domain_error("log_rational: nonpositive input");
  return log_integer(v.get_num(), prec) - log_integer(v.get_den(), prec);
}

namespace {

// a(n,g) = 2(2n-1) a(n-1,g) + n^2 a(n,g-1), accumulated into `cell` which
// holds a(n,g-1) on entry.
void advance_cell(mpz_class& cell, const mpz_class& left, std::uint32_t n) {
  cell *= std::uint64_t(n) * n;
  mpz_addmul_ui(cell.get_mpz_t(), left.get_mpz_t(), 2ul * (2ul * n - 1ul));
}

}  // namespace

ExactTable::ExactTable(std::uint32_t n_max, std::uint32_t g_max,
                       std::uint64_t cell_cap, unsigned threads)
    : n_max_(n_max), g_max_(g_max) {
  const std::uint64_t cells = std::uint64_t(n_max) + 1;
  if (cells * (std::uint64_t(g_max) + 1) > cell_cap)
    throw CapExceeded("grid exceeds cell cap");
  cells_.resize(cells * (std::uint64_t(g_max) + 1));
  factorial_.resize(std::size_t(n_max) + 2);
  factorial_[0] = 1;
  for (std::uint32_t k = 1; k < factorial_.size(); ++k)
    factorial_[k] = factorial_[k - 1] * k;
  if (threads > 1)
    fill_parallel(threads);
  else
    fill_serial();
}

void ExactTable::fill_serial() {
  cells_[0] = 1;
  for (std::uint32_t n = 1; n <= n_max_; ++n)
    cells_[n] = cells_[n - 1] * (2ul * (2ul * n - 1ul));
  for (std::uint32_t g = 1; g <= g_max_; ++g) {
    const std::size_t row = std::size_t(g) * (n_max_ + 1);
    const std::size_t prev = row - (n_max_ + 1);
    cells_[row] = 0;
    for (std::uint32_t n = 1; n <= n_max_; ++n) {
      cells_[row + n] = cells_[prev + n];
      advance_cell(cells_[row + n], cells_[row + n - 1], n);
    }
  }
}

// Wave fill along anti-diagonals n+g = c: every cell of one anti-diagonal
// depends only on the previous one, so the cells of a wave can be computed
// concurrently. Exact arithmetic makes the result bit-identical to the
// serial fill.
void ExactTable::fill_parallel(unsigned threads) {
  cells_[0] = 1;
  const std::uint32_t c_max = n_max_ + g_max_;
  for (std::uint32_t c = 1; c <= c_max; ++c) {
    const std::uint32_t n_lo = c > g_max_ ? c - g_max_ : 0;
    const std::uint32_t n_hi = std::min(c, n_max_);
    if (n_lo > n_hi) continue;
    const std::uint32_t count = n_hi - n_lo + 1;
    const unsigned workers = std::min<unsigned>(threads, count);
    auto work = [&](unsigned w) {
      for (std::uint32_t i = w; i < count; i += workers) {
        const std::uint32_t n = n_lo + i;
        const std::uint32_t g = c - n;
        mpz_class& cell = cells_[index({n, g})];
        if (n == 0) {
          cell = 0;  // base column, g >= 1 here
          continue;
        }
        cell = g > 0 ? cells_[index({n, g - 1})] : mpz_class(0);
        advance_cell(cell, cells_[index({n - 1, g})], n);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
  }
}

const mpz_class& ExactTable::scaled(GridPoint p) const {
  if (!contains(p)) throw std::out_of_range("ExactTable: index out of bounds");
  return cells_[index(p)];
}

ExactValue ExactTable::entry(GridPoint p) const {
  ExactValue v(scaled(p), factorial(p.n + 1));
  v.canonicalize();
  return v;
}

Real ExactTable::log_entry(GridPoint p, mpfr_prec_t prec) const {
  return log_integer(scaled(p), prec) - log_integer(factorial(p.n + 1), prec);
}

void ExactTable::export_csv(const std::string& path) const {
  AtomicFileWriter file(path);
  auto& out = file.stream();
  out << "n,g,numerator,denominator,log_value\n";
  for (std::uint32_t n = 0; n <= n_max_; ++n) {
    for (std::uint32_t g = 0; g <= g_max_; ++g) {
      const ExactValue v = entry({n, g});
      out << n << ',' << g << ',' << v.get_num().get_str() << ','
          << v.get_den().get_str() << ',';
      if (sgn(v) > 0)
        out << log_entry({n, g}).str(18);
      else
        out << "-inf";
      out << '\n';
    }
  }
  file.commit();
}

std::vector<Real> log_e_stream(std::span<const GridPoint> points,
                               mpfr_prec_t prec) {
  std::vector<Real> result(points.size(), Real(prec));
  if (points.empty()) return result;
  std::uint32_t n_top = 0, g_top = 0;
  std::map<std::uint32_t, std::vector<std::size_t>> by_g;
  for (std::size_t i = 0; i < points.size(); ++i) {
    n_top = std::max(n_top, points[i].n);
    g_top = std::max(g_top, points[i].g);
    by_g[points[i].g].push_back(i);
  }

  std::vector<mpz_class> row(std::size_t(n_top) + 1);
  row[0] = 1;
  for (std::uint32_t n = 1; n <= n_top; ++n)
    row[n] = row[n - 1] * (2ul * (2ul * n - 1ul));

  auto emit = [&](std::uint32_t g) {
    auto it = by_g.find(g);
    if (it == by_g.end()) return;
    for (std::size_t i : it->second) {
      const std::uint32_t n = points[i].n;
      if (sgn(row[n]) == 0) {
        result[i] = Real::neg_inf(prec);
        continue;
      }
      result[i] = log_integer(row[n], prec) -
                  lgamma(Real((unsigned long)n + 2, prec));
    }
  };
  emit(0);

  for (std::uint32_t g = 1; g <= g_top; ++g) {
    row[0] = 0;
    // In-place update: row[n-1] already holds generation g, row[n] holds g-1.
    for (std::uint32_t n = 1; n <= n_top; ++n)
      advance_cell(row[n], row[n - 1], n);
    emit(g);
  }
  return result;
}

}  // namespace monohurwitz

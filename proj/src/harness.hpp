#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exact_table.hpp"
#include "omega.hpp"

namespace monohurwitz {

// One grid point's convergence diagnostics. alpha, beta, s and the residual
// come from log-space differences of Omega; q additionally needs ln E.
struct ConvergenceRecord {
  std::uint32_t n = 0, g = 0;
  double x = 0;         // n + g
  double theta = 0;     // g / n
  double q = 0;         // E/Omega; NaN when ln E was not available
  bool has_q = false;
  double alpha = 0;     // NaN at n = 1 (Omega(0,g) is undefined)
  double beta = 0;
  double residual = 0;  // alpha + beta - 1
  double s = 0;         // beta / n^2
  bool boundary = false;  // g = 0: beta and s are 0 by convention
};

// ln E lookup used by the harness; an implementation may decline points.
class LogESource {
 public:
  virtual ~LogESource() = default;
  virtual std::optional<Real> log_e(std::uint32_t n, std::uint32_t g) const = 0;
};

class TableLogE final : public LogESource {
 public:
  explicit TableLogE(const ExactTable& t, mpfr_prec_t prec = 128)
      : table_(&t), prec_(prec) {}
  std::optional<Real> log_e(std::uint32_t n, std::uint32_t g) const override;

 private:
  const ExactTable* table_;
  mpfr_prec_t prec_;
};

// Precomputes ln E for a fixed point set via the streaming recurrence.
class BatchLogE final : public LogESource {
 public:
  BatchLogE(std::span<const GridPoint> points, mpfr_prec_t prec = 128);
  std::optional<Real> log_e(std::uint32_t n, std::uint32_t g) const override;

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, Real> values_;
};

// Declines everything; for omega-only scans.
class NoLogE final : public LogESource {
 public:
  std::optional<Real> log_e(std::uint32_t, std::uint32_t) const override {
    return std::nullopt;
  }
};

// q_log_offset is subtracted from ln E - ln Omega before exponentiation;
// a global recalibration of Omega by a constant kappa enters as ln(kappa).
ConvergenceRecord record(std::uint32_t n, std::uint32_t g, const LogESource& src,
                         const PrecisionConfig& cfg = {}, double q_log_offset = 0);

// Records along the diagonal g = round(theta * n), ties up.
std::vector<ConvergenceRecord> residual_scan(double theta,
                                             std::span<const std::uint32_t> n_list,
                                             const LogESource& src,
                                             const PrecisionConfig& cfg = {},
                                             double q_log_offset = 0);

void export_records_csv(const std::string& path,
                        std::span<const ConvergenceRecord> records);

enum class FitQuantity { residual, s, q_error };

struct SlopeFit {
  double slope = 0, intercept = 0, r_squared = 0;
  unsigned points = 0;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least squares of ln|quantity| against ln x (residual, q_error) or
// ln n (s). Boundary rows and NaN/zero quantities are skipped; needs at
// least 5 usable records, throws DegenerateFit when the quantity carries
// no variation.
SlopeFit fit_decay(std::span<const ConvergenceRecord> records, FitQuantity what,
                   double kappa = 1.0);

// One Aitken/Richardson step on the last three points of a power-law
// converging sequence.
double richardson(double a, double b, double c);

struct ReportOptions {
  std::vector<std::uint32_t> boundary_n = {500, 1000, 2000, 4000};
  std::uint32_t q1_g_max = 200;    // Q(1,g) bound scan
  std::uint32_t s2_g_max = 200;    // min s(2,g)
  std::vector<double> thetas = {0.25, 1.0, 4.0};
  double diag_x_max = 10000;       // reach of the omega-only residual scan
  double low_genus_x = 10000;      // anti-diagonal probed at theta = x^-0.8
  std::vector<std::uint32_t> diag_q_n = {50, 100, 200, 400};  // Q trend (needs E)
  std::uint32_t grid_n_max = 150;  // n^2 s grid
  std::uint32_t grid_g_max = 300;
  bool calibrated = false;         // rescale Omega globally by measured kappa0
};

struct AssumptionReport {
  std::string text;                    // human-readable + key=value section
  std::map<std::string, double> keys;  // kappa0, max_residual, slope_residual,
                                       // slope_s, max_n2s, qbound_n1, ...
  std::vector<std::string> failures;   // empty iff pass
  bool pass = false;
};

AssumptionReport assumption_report(const PrecisionConfig& cfg = {},
                                   const ReportOptions& opt = {});

struct OdeResidualRow {
  double theta = 0;
  double core_identity = 0;    // |4 lambda + exp(-f') - 1|
  double j_equation = 0;       // heuristic j-equation residual
  double lambda_prime_fd = 0;  // central difference vs closed-form lambda'
  double theta_ode_fd = 0;     // central difference vs closed-form dtheta/dlambda
};

struct OdeScan {
  std::vector<OdeResidualRow> rows;
  double max_core = 0, max_j = 0, max_lambda_fd = 0, max_theta_fd = 0;
};

// The finite-difference columns are evaluated at >= 256 bits regardless of
// cfg, with step 1e-8.
OdeScan ode_residual_scan(std::span<const double> theta_grid,
                          const PrecisionConfig& cfg = {});

void export_ode_csv(const std::string& path, const OdeScan& scan);

}  // namespace monohurwitz

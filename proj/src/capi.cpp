#include "monohurwitz/monohurwitz.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <vector>

#include "asym.hpp"
#include "csv.hpp"
#include "exact_table.hpp"
#include "harness.hpp"
#include "omega.hpp"
#include "oracle.hpp"

using namespace monohurwitz;

struct mh_table {
  ExactTable impl;
};
struct mh_evaluator {
  PrecisionConfig cfg;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
mh_status wrap(Fn&& fn) {
  try {
    return fn();
  } catch (const CapExceeded& e) {
    t_last_error = e.what();
    return MH_CAP_EXCEEDED;
  } catch (const std::invalid_argument& e) {
    t_last_error = e.what();
    return MH_BAD_ARGUMENT;
  } catch (const std::domain_error& e) {
    t_last_error = e.what();
    return MH_BAD_ARGUMENT;
  } catch (const std::out_of_range& e) {
    t_last_error = e.what();
    return MH_BAD_ARGUMENT;
  } catch (const std::runtime_error& e) {
    t_last_error = e.what();
    return MH_IO_ERROR;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MH_INTERNAL_ERROR;
  }
}

PrecisionConfig precision_from(const mh_run_config* cfg) {
  PrecisionConfig p;
  if (cfg && cfg->mantissa_bits) p.mantissa_bits = cfg->mantissa_bits;
  if (!p.valid()) throw std::invalid_argument("invalid precision configuration");
  return p;
}

std::vector<double> thetas_from(const mh_run_config* cfg) {
  if (cfg && cfg->theta_list && cfg->theta_count)
    return {cfg->theta_list, cfg->theta_list + cfg->theta_count};
  return {0.25, 1.0, 4.0};
}

}  // namespace

extern "C" {

void mh_run_config_defaults(mh_run_config* cfg) {
  *cfg = mh_run_config{};
  cfg->n_max = 1000;
  cfg->g_max = 1000;
  cfg->mantissa_bits = 128;
  cfg->cell_cap = kDefaultCellCap;
  cfg->threads = 1;
}

void mh_string_free(char* s) { std::free(s); }

const char* mh_status_message(mh_status s) {
  switch (s) {
    case MH_OK: return "ok";
    case MH_CHECK_FAILED: return "a mathematical invariant failed";
    case MH_BAD_ARGUMENT: return "argument or domain error";
    case MH_CAP_EXCEEDED: return "cell cap exceeded";
    case MH_IO_ERROR: return "i/o error";
    case MH_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* mh_last_error(void) { return t_last_error.c_str(); }

/* ---- exact table ------------------------------------------------------ */

mh_status mh_table_build(uint32_t n_max, uint32_t g_max, uint64_t cell_cap,
                         uint32_t threads, mh_table** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("null output handle");
    *out = new mh_table{ExactTable(n_max, g_max,
                                   cell_cap ? cell_cap : kDefaultCellCap,
                                   threads ? threads : 1)};
    return MH_OK;
  });
}

void mh_table_free(mh_table* t) { delete t; }

mh_status mh_table_entry(const mh_table* t, uint32_t n, uint32_t g,
                         char** numerator, char** denominator) {
  return wrap([&] {
    if (!t || !numerator || !denominator)
      throw std::invalid_argument("null argument");
    ExactValue v = t->impl.entry({n, g});
    *numerator = dup_string(v.get_num().get_str());
    *denominator = dup_string(v.get_den().get_str());
    return MH_OK;
  });
}

mh_status mh_table_log_entry(const mh_table* t, uint32_t n, uint32_t g,
                             double* out) {
  return wrap([&] {
    if (!t || !out) throw std::invalid_argument("null argument");
    *out = t->impl.log_entry({n, g}).to_double();
    return MH_OK;
  });
}

mh_status mh_table_export_csv(const mh_table* t, const char* path) {
  return wrap([&] {
    if (!t || !path) throw std::invalid_argument("null argument");
    t->impl.export_csv(path);
    return MH_OK;
  });
}

mh_status mh_catalan(uint32_t n, char** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("null argument");
    *out = dup_string(catalan_reference(n).get_str());
    return MH_OK;
  });
}

/* ---- enumeration oracle ------------------------------------------------ */

mh_status mh_oracle_raw_count(uint32_t d, uint32_t k, char** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("null argument");
    *out = dup_string(count_monotone_long_cycle(d, k).raw_count.get_str());
    return MH_OK;
  });
}

mh_status mh_oracle_check(uint32_t d_max, uint32_t k_max, const char* csv_path) {
  return wrap([&] {
    if (d_max < 2 || d_max > kOracleMaxSymbols || k_max > kOracleMaxFactors)
      throw std::domain_error("oracle check range outside the enumeration guard");
    if (csv_path) oracle_export_csv(csv_path);
    std::uint32_t g_top = k_max / 2;
    ExactTable table(d_max - 1, g_top, kDefaultCellCap);
    for (std::uint32_t d = 2; d <= d_max; ++d) {
      const std::uint32_t n = d - 1;
      for (std::uint32_t g = 0; n + 2 * g <= k_max; ++g) {
        if (oracle_value(n, g) != table.entry({n, g})) {
          t_last_error = "oracle/recurrence mismatch at n=" + std::to_string(n) +
                         " g=" + std::to_string(g);
          return MH_CHECK_FAILED;
        }
      }
    }
    return MH_OK;
  });
}

/* ---- asymptotic evaluator ---------------------------------------------- */

mh_status mh_evaluator_create(uint32_t mantissa_bits, double theta_switch,
                              uint32_t series_terms, mh_evaluator** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("null argument");
    PrecisionConfig cfg;
    if (mantissa_bits) cfg.mantissa_bits = mantissa_bits;
    if (theta_switch > 0) cfg.theta_switch = theta_switch;
    if (series_terms) cfg.series_terms = series_terms;
    if (!cfg.valid()) throw std::invalid_argument("invalid precision configuration");
    *out = new mh_evaluator{cfg};
    return MH_OK;
  });
}

void mh_evaluator_free(mh_evaluator* e) { delete e; }

#define MH_EVAL_ONE(name, expr)                                          \
  mh_status name(const mh_evaluator* e, double theta, double* out) {     \
    return wrap([&] {                                                    \
      if (!e || !out) throw std::invalid_argument("null argument");      \
      const Real t(theta, e->cfg.work_prec());                           \
      *out = (expr).to_double();                                         \
      return MH_OK;                                                      \
    });                                                                  \
  }

MH_EVAL_ONE(mh_eval_lambda_of_theta, lambda_of_theta(t, e->cfg))
MH_EVAL_ONE(mh_eval_lambda_prime, lambda_prime(t, e->cfg))
MH_EVAL_ONE(mh_eval_f, f_of_theta(t, e->cfg))
MH_EVAL_ONE(mh_eval_j, j_of_theta(t, e->cfg))
MH_EVAL_ONE(mh_eval_f_double_prime, f_double_prime(t, e->cfg))
MH_EVAL_ONE(mh_eval_j_prime, j_prime(t, e->cfg))
#undef MH_EVAL_ONE

mh_status mh_eval_theta_of_lambda(const mh_evaluator* e, double lambda,
                                  double* out) {
  return wrap([&] {
    if (!e || !out) throw std::invalid_argument("null argument");
    *out = theta_of_lambda(Real(lambda, e->cfg.work_prec()), e->cfg).to_double();
    return MH_OK;
  });
}

mh_status mh_eval_f_prime(const mh_evaluator* e, double theta, double* out,
                          int* infinite) {
  return wrap([&] {
    if (!e || !out) throw std::invalid_argument("null argument");
    Real v = f_prime(Real(theta, e->cfg.work_prec()), e->cfg);
    if (infinite) *infinite = v.is_inf() ? 1 : 0;
    *out = v.to_double();
    return MH_OK;
  });
}

mh_status mh_eval_f0_j0(const mh_evaluator* e, double theta, double* f0,
                        double* j0) {
  return wrap([&] {
    if (!e || !f0 || !j0) throw std::invalid_argument("null argument");
    auto pair = f0_j0(Real(theta, e->cfg.work_prec()), e->cfg);
    *f0 = pair.f0.to_double();
    *j0 = pair.j0.to_double();
    return MH_OK;
  });
}

mh_status mh_eval_log_omega(const mh_evaluator* e, uint32_t n, uint32_t g,
                            double* log_value, int* branch) {
  return wrap([&] {
    if (!e || !log_value) throw std::invalid_argument("null argument");
    LogOmega lo = log_omega(n, g, e->cfg);
    *log_value = lo.log_value.to_double();
    if (branch) *branch = int(lo.branch);
    return MH_OK;
  });
}

mh_status mh_eval_log_c(const mh_evaluator* e, uint32_t g, double* out) {
  return wrap([&] {
    if (!e || !out) throw std::invalid_argument("null argument");
    *out = log_c(g, e->cfg.work_prec()).to_double();
    return MH_OK;
  });
}

mh_status mh_functions_export_csv(const mh_evaluator* e, const double* thetas,
                                  size_t count, const char* path) {
  return wrap([&] {
    if (!e || !thetas || !path) throw std::invalid_argument("null argument");
    AtomicFileWriter file(path);
    auto& out = file.stream();
    out << "theta,lambda,f,j,f_prime,f_double_prime,j_prime,lambda_prime\n";
    for (size_t i = 0; i < count; ++i) {
      AsymPoint p = asym_point(Real(thetas[i], e->cfg.work_prec()), e->cfg);
      out << p.theta.str(18) << ',' << p.lambda.str(18) << ',' << p.f.str(18)
          << ',' << p.j.str(18) << ',' << p.f_prime.str(18) << ','
          << p.f_double_prime.str(18) << ',' << p.j_prime.str(18) << ','
          << p.lambda_prime.str(18) << '\n';
    }
    file.commit();
    return MH_OK;
  });
}

/* ---- verification harness --------------------------------------------- */

mh_status mh_converge_run(const mh_run_config* cfg, const char* out_dir,
                          char** report_text) {
  return wrap([&] {
    PrecisionConfig prec = precision_from(cfg);
    const std::uint32_t n_max = cfg && cfg->n_max ? cfg->n_max : 1000;
    const std::uint32_t g_max = cfg && cfg->g_max ? cfg->g_max : 1000;
    std::vector<double> thetas = thetas_from(cfg);

    ReportOptions opt;
    opt.thetas = thetas;
    opt.calibrated = cfg && cfg->boundary_calibrated;
    for (auto& n : opt.diag_q_n) n = std::min(n, n_max);
    AssumptionReport rep = assumption_report(prec, opt);
    const double q_log_offset =
        opt.calibrated ? std::log(rep.keys.at("kappa0")) : 0.0;

    if (out_dir) {
      std::filesystem::create_directories(out_dir);
      for (double theta : thetas) {
        std::vector<std::uint32_t> ns;
        for (std::uint32_t n = 10; n <= n_max; n *= 2) {
          if (double(n) * theta > double(g_max) + 0.5) break;
          ns.push_back(n);
        }
        if (ns.empty()) continue;
        std::vector<GridPoint> pts;
        for (auto n : ns)
          pts.push_back({n, std::uint32_t(std::floor(theta * n + 0.5))});
        BatchLogE src(pts, prec.mantissa_bits);
        auto records = residual_scan(theta, ns, src, prec, q_log_offset);
        std::ostringstream name;
        name << out_dir << "/converge_theta_" << theta << ".csv";
        export_records_csv(name.str(), records);
      }
    }
    if (report_text) *report_text = dup_string(rep.text);
    return rep.pass ? MH_OK : MH_CHECK_FAILED;
  });
}

mh_status mh_ode_check_run(const mh_run_config* cfg, const char* out_path,
                           char** report_text) {
  return wrap([&] {
    PrecisionConfig prec = precision_from(cfg);
    // Log-spaced grid over [1e-4, 50].
    std::vector<double> grid;
    for (double t = 1e-4; t <= 50.0 * (1 + 1e-12); t *= 1.5) grid.push_back(t);
    OdeScan scan = ode_residual_scan(grid, prec);
    if (out_path) export_ode_csv(out_path, scan);

    double max_core = 0, max_j = 0, max_lfd = 0, max_tfd = 0;
    for (const auto& r : scan.rows) {
      max_core = std::max(max_core, r.core_identity);
      max_tfd = std::max(max_tfd, r.theta_ode_fd);
      if (r.theta >= 0.1 && r.theta <= 20.0) {
        max_j = std::max(max_j, r.j_equation);
        max_lfd = std::max(max_lfd, r.lambda_prime_fd);
      }
    }
    const bool pass = max_core <= 1e-25 && max_j <= 1e-20 && max_lfd <= 1e-10 &&
                      max_tfd <= 1e-10;
    std::ostringstream txt;
    txt << "ODE residual suite (" << scan.rows.size() << " grid points)\n"
        << "max |4 lambda + exp(-f') - 1|      = " << max_core << "  (bound 1e-25)\n"
        << "max j-equation residual            = " << max_j << "  (bound 1e-20)\n"
        << "max lambda' central-diff mismatch  = " << max_lfd << "  (bound 1e-10)\n"
        << "max dtheta/dlambda FD mismatch     = " << max_tfd << "  (bound 1e-10)\n"
        << (pass ? "ode checks passed\n" : "ode checks FAILED\n");
    if (report_text) *report_text = dup_string(txt.str());
    return pass ? MH_OK : MH_CHECK_FAILED;
  });
}

mh_status mh_report_run(const mh_run_config* cfg, const char* out_dir,
                        char** report_text) {
  return wrap([&] {
    if (out_dir) std::filesystem::create_directories(out_dir);
    std::ostringstream txt;

    std::string oracle_csv =
        out_dir ? std::string(out_dir) + "/oracle.csv" : std::string();
    mh_status oracle =
        mh_oracle_check(6, 11, out_dir ? oracle_csv.c_str() : nullptr);
    if (oracle != MH_OK && oracle != MH_CHECK_FAILED) return oracle;
    txt << "oracle vs recurrence (d <= 6, k <= 11): "
        << (oracle == MH_OK ? "match" : "MISMATCH") << "\n\n";

    char* sub = nullptr;
    std::string ode_csv =
        out_dir ? std::string(out_dir) + "/ode_residuals.csv" : std::string();
    mh_status ode = mh_ode_check_run(cfg, out_dir ? ode_csv.c_str() : nullptr, &sub);
    if (ode != MH_OK && ode != MH_CHECK_FAILED) return ode;
    if (sub) {
      txt << sub << "\n";
      mh_string_free(sub);
      sub = nullptr;
    }

    mh_status conv = mh_converge_run(cfg, out_dir, &sub);
    if (conv != MH_OK && conv != MH_CHECK_FAILED) return conv;
    if (sub) {
      txt << sub;
      mh_string_free(sub);
    }
    if (report_text) *report_text = dup_string(txt.str());
    return (oracle == MH_OK && ode == MH_OK && conv == MH_OK) ? MH_OK
                                                              : MH_CHECK_FAILED;
  });
}

}  // extern "C"

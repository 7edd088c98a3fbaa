// Command-line front end; talks to the engine only through the C API.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monohurwitz/monohurwitz.h"

namespace {

int exit_code(mh_status s) {
  switch (s) {
    case MH_OK: return 0;
    case MH_CHECK_FAILED: return 1;
    case MH_BAD_ARGUMENT: return 2;
    case MH_CAP_EXCEEDED: return 3;
    case MH_IO_ERROR: return 2;
    case MH_INTERNAL_ERROR: return 1;
  }
  return 1;
}

int finish(mh_status s) {
  if (s != MH_OK) {
    std::fprintf(stderr, "error: %s", mh_status_message(s));
    const char* detail = mh_last_error();
    if (detail && *detail) std::fprintf(stderr, " (%s)", detail);
    std::fputc('\n', stderr);
  }
  return exit_code(s);
}

void print_report(char* text) {
  if (text) {
    std::fputs(text, stdout);
    mh_string_free(text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact one-part monotone Hurwitz numbers and their asymptotic "
               "verification scans"};
  app.require_subcommand(1);

  std::uint32_t n_max = 1000, g_max = 1000;
  std::uint32_t precision_bits = 128, threads = 1;
  std::uint64_t cell_cap = 0;  // 0 = library default
  std::vector<double> thetas;
  std::string boundary_constant = "paper";
  std::string out;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n-max", n_max, "largest n in the scans");
    cmd->add_option("--g-max", g_max, "largest genus in the scans");
    cmd->add_option("--theta", thetas, "diagonal g/n ratio (repeatable)");
    cmd->add_option("--precision-bits", precision_bits, "mantissa bits");
    cmd->add_option("--boundary-constant", boundary_constant,
                    "'paper' or 'calibrated'")
        ->check(CLI::IsMember({"paper", "calibrated"}));
    cmd->add_option("--cell-cap", cell_cap, "max table cells");
    cmd->add_option("--threads", threads, "table fill workers");
  };
  auto make_cfg = [&]() {
    mh_run_config cfg;
    mh_run_config_defaults(&cfg);
    cfg.n_max = n_max;
    cfg.g_max = g_max;
    if (!thetas.empty()) {
      cfg.theta_list = thetas.data();
      cfg.theta_count = thetas.size();
    }
    cfg.mantissa_bits = precision_bits;
    cfg.boundary_calibrated = boundary_constant == "calibrated" ? 1 : 0;
    if (cell_cap) cfg.cell_cap = cell_cap;
    cfg.threads = threads;
    return cfg;
  };

  auto* table = app.add_subcommand("table", "fill the exact table, write CSV");
  table->add_option("--n-max", n_max, "largest n")->required();
  table->add_option("--g-max", g_max, "largest genus")->required();
  table->add_option("--cell-cap", cell_cap, "max table cells");
  table->add_option("--threads", threads, "fill workers");
  table->add_option("--out", out, "output CSV path")->required();

  std::uint32_t d_max = 6, k_max = 11;
  auto* oracle = app.add_subcommand(
      "oracle-check", "compare brute-force enumeration with the recurrence");
  oracle->add_option("--d-max", d_max, "largest symbol count (<= 7)");
  oracle->add_option("--k-max", k_max, "largest factor count (<= 14)");
  oracle->add_option("--out", out, "optional CSV of raw counts");

  auto* dump = app.add_subcommand("dump-functions",
                                  "tabulate lambda, f, j and derivatives");
  dump->add_option("--theta", thetas, "evaluation point (repeatable)")
      ->required();
  dump->add_option("--precision-bits", precision_bits, "mantissa bits");
  dump->add_option("--out", out, "output CSV path")->required();

  auto* converge =
      app.add_subcommand("converge", "convergence and residual scans");
  add_run_flags(converge);
  converge->add_option("--out", out, "output directory for scan CSVs");

  auto* ode = app.add_subcommand("ode-check",
                                 "residuals of the heuristic ODE system");
  ode->add_option("--precision-bits", precision_bits, "mantissa bits");
  ode->add_option("--out", out, "output CSV path");

  auto* report = app.add_subcommand("report", "run every check, print summary");
  add_run_flags(report);
  report->add_option("--out", out, "output directory for CSV artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (table->parsed()) {
    mh_table* t = nullptr;
    mh_status s = mh_table_build(n_max, g_max, cell_cap, threads, &t);
    if (s == MH_OK) {
      s = mh_table_export_csv(t, out.c_str());
      mh_table_free(t);
    }
    return finish(s);
  }
  if (oracle->parsed()) {
    mh_status s = mh_oracle_check(d_max, k_max, out.empty() ? nullptr : out.c_str());
    if (s == MH_OK) std::puts("oracle and recurrence agree");
    return finish(s);
  }
  if (dump->parsed()) {
    mh_evaluator* e = nullptr;
    mh_status s = mh_evaluator_create(precision_bits, 0, 0, &e);
    if (s == MH_OK) {
      s = mh_functions_export_csv(e, thetas.data(), thetas.size(), out.c_str());
      mh_evaluator_free(e);
    }
    return finish(s);
  }
  if (converge->parsed()) {
    mh_run_config cfg = make_cfg();
    char* text = nullptr;
    mh_status s = mh_converge_run(&cfg, out.empty() ? nullptr : out.c_str(), &text);
    print_report(text);
    return finish(s);
  }
  if (ode->parsed()) {
    mh_run_config cfg = make_cfg();
    char* text = nullptr;
    mh_status s = mh_ode_check_run(&cfg, out.empty() ? nullptr : out.c_str(), &text);
    print_report(text);
    return finish(s);
  }
  if (report->parsed()) {
    mh_run_config cfg = make_cfg();
    char* text = nullptr;
    mh_status s = mh_report_run(&cfg, out.empty() ? nullptr : out.c_str(), &text);
    print_report(text);
    return finish(s);
  }
  return 2;
}

#include "omega.hpp"

#include <stdexcept>

namespace monohurwitz {

Real log_c(std::uint32_t g, mpfr_prec_t prec) {
  if (g == 0) throw std::domain_error("C_g is undefined at g = 0");
  Real gg((unsigned long)g, prec);
  Real lg = log(gg);
  return lg / 2ul + gg * lg - gg - lgamma(gg + 1ul) - half_log_two_pi(prec);
}

Real log_c_tilde(std::uint32_t g, mpfr_prec_t prec) {
  Real gg((unsigned long)g, prec);
  return -lgamma(gg + 1ul) - gg - half_log_two_pi(prec);
}

LogOmega log_omega_forced(std::uint32_t n, std::uint32_t g, OmegaBranch branch,
                          const PrecisionConfig& cfg) {
  if (n == 0) throw std::invalid_argument("Omega is not evaluated at n = 0");
  const mpfr_prec_t wp = cfg.work_prec();
  Real nn((unsigned long)n, wp);
  Real ln_n = log(nn);
  switch (branch) {
    case OmegaBranch::boundary_g0:
      if (g != 0) throw std::invalid_argument("boundary branch needs g = 0");
      return {n, g, nn * log(Real(4ul, wp)) - ln_n * 3ul / 2ul - half_log_two_pi(wp),
              branch};
    case OmegaBranch::low_theta: {
      if (g == 0) throw std::invalid_argument("low_theta branch needs g >= 1");
      Real theta = Real((unsigned long)g, wp) / nn;
      auto [f0, j0] = f0_j0(theta, cfg);
      Real lv = log_c_tilde(g, wp) +
                ln_n * Real(6ul * (unsigned long)g - 3ul, wp) / 2ul + nn * f0 + j0;
      return {n, g, std::move(lv), branch};
    }
    case OmegaBranch::general: {
      if (g == 0) throw std::invalid_argument("general branch needs g >= 1");
      Real theta = Real((unsigned long)g, wp) / nn;
      Real lv = log_c(g, wp) + ln_n * (Real(2ul * (unsigned long)g, wp) - 2ul) +
                nn * f_of_theta(theta, cfg) + j_of_theta(theta, cfg);
      return {n, g, std::move(lv), branch};
    }
  }
  throw std::logic_error("unreachable");
}

LogOmega log_omega(std::uint32_t n, std::uint32_t g, const PrecisionConfig& cfg) {
  if (n == 0) throw std::invalid_argument("Omega is not evaluated at n = 0");
  if (g == 0) return log_omega_forced(n, g, OmegaBranch::boundary_g0, cfg);
  const bool low = double(g) / double(n) < cfg.theta_switch;
  return log_omega_forced(n, g, low ? OmegaBranch::low_theta : OmegaBranch::general, cfg);
}

const char* branch_name(OmegaBranch b) {
  switch (b) {
    case OmegaBranch::boundary_g0: return "boundary_g0";
    case OmegaBranch::low_theta: return "low_theta";
    case OmegaBranch::general: return "general";
  }
  return "?";
}

}  // namespace monohurwitz

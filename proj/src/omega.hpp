#pragma once

#include <cstdint>

#include "asym.hpp"

namespace monohurwitz {

enum class OmegaBranch { boundary_g0, low_theta, general };

struct LogOmega {
  std::uint32_t n = 0, g = 0;
  Real log_value;
  OmegaBranch branch = OmegaBranch::general;
};

// ln C_g, C_g = sqrt(g) g^g / (sqrt(2 pi) e^g g!), g >= 1. 2 pi C_g -> 1.
Real log_c(std::uint32_t g, mpfr_prec_t prec = 128);

// ln C~_g, C~_g = C_g / (g^g sqrt(g)) = 1 / (sqrt(2 pi) g! e^g), g >= 0.
Real log_c_tilde(std::uint32_t g, mpfr_prec_t prec = 128);

// ln Omega(n,g), n >= 1, stable in every regime:
//   g = 0:                 n ln 4 - (3/2) ln n - ln(2 pi)/2
//   g >= 1, g/n < switch:  ln C~_g + (3g - 3/2) ln n + n f0 + j0
//   otherwise:             ln C_g  + (2g - 2)  ln n + n f  + j
// The low-theta rewriting is algebraically identical to the general form
// but avoids the -theta ln theta cancellation.
LogOmega log_omega(std::uint32_t n, std::uint32_t g,
                   const PrecisionConfig& cfg = {});

// Same, but forcing a branch (for the overlap-agreement checks). The forced
// branch must be applicable: low_theta and general need g >= 1.
LogOmega log_omega_forced(std::uint32_t n, std::uint32_t g, OmegaBranch branch,
                          const PrecisionConfig& cfg = {});

const char* branch_name(OmegaBranch b);

}  // namespace monohurwitz

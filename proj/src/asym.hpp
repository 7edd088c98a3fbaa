#pragma once

#include <optional>
#include <stdexcept>

#include "real.hpp"

namespace monohurwitz {

struct PrecisionConfig {
  mpfr_prec_t mantissa_bits = 128;
  double theta_switch = 1e-2;   // below this the u-series route is used
  unsigned series_terms = 40;   // minimum term count for the u-series
  // Additive constant of j; defaults to ln(2)/2 evaluated at full precision.
  std::optional<double> j_constant;

  bool valid() const {
    return mantissa_bits >= 64 && theta_switch > 0 && theta_switch < 0.1;
  }
  // Internal working precision; results carry a few guard bits over the
  // configured mantissa.
  mpfr_prec_t work_prec() const { return mantissa_bits + 32; }
};

// All quantities attached to one parameter value theta:
// lambda in (0, 1/4], f, j and the derivatives entering the heuristic
// system. At theta = 0, f_prime is +inf and f_double_prime, j_prime, j
// carry the (signed) infinite limits.
struct AsymPoint {
  Real theta, lambda, f, j, f_prime, f_double_prime, j_prime, lambda_prime;
};

// theta(lambda) = -1 + artanh(sqrt(1-4 lambda)) / sqrt(1-4 lambda) on
// (0, 1/4]; strictly decreasing, theta(1/4) = 0. Near lambda = 1/4 the
// cancellation-free series sum_{k>=1} u^k/(2k+1) in u = 1-4 lambda is used.
Real theta_of_lambda(const Real& lambda, const PrecisionConfig& cfg = {});

// Inverse of the above: the unique lambda in (0, 1/4] with
// theta_of_lambda(lambda) = theta. Bracketed bisection refined by Newton
// steps; round-trip error within 2^(-mantissa_bits+8).
Real lambda_of_theta(const Real& theta, const PrecisionConfig& cfg = {});

// lambda'(theta) = -2 lambda (1-4 lambda) / (1-4(theta+1) lambda);
// the 0/0 form at theta = 0 is resolved through the series, lambda'(0) = -3/4.
Real lambda_prime(const Real& theta, const PrecisionConfig& cfg = {});

// f(theta) = -ln(lambda) - 2 theta - theta ln(1-4 lambda); f(0) = ln 4.
Real f_of_theta(const Real& theta, const PrecisionConfig& cfg = {});

// j(theta) = -ln(1-4(theta+1) lambda)/2 + c_j for theta > 0.
Real j_of_theta(const Real& theta, const PrecisionConfig& cfg = {});

// f'  = -ln(1-4 lambda), +inf at theta = 0.
Real f_prime(const Real& theta, const PrecisionConfig& cfg = {});
// f'' = 4 lambda' / (1-4 lambda), theta > 0.
Real f_double_prime(const Real& theta, const PrecisionConfig& cfg = {});
// j'  = -g'(theta) / (2 g(theta)) with g = 1-4(theta+1) lambda, theta > 0.
Real j_prime(const Real& theta, const PrecisionConfig& cfg = {});

// Regularized parts (f + theta ln theta, j + ln(theta)/2), with the limits
// (ln 4, 0) at theta = 0. Both are analytic at 0; inputs slightly below 0
// (|theta| < theta_switch) are accepted so difference quotients can straddle
// the origin.
struct RegularizedPair {
  Real f0, j0;
};
RegularizedPair f0_j0(const Real& theta, const PrecisionConfig& cfg = {});

AsymPoint asym_point(const Real& theta, const PrecisionConfig& cfg = {});

}  // namespace monohurwitz

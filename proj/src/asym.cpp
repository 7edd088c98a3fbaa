#include "asym.hpp"

#include <algorithm>
#include <cmath>

namespace monohurwitz {

namespace {

// The series route is used whenever |u| stays below this; 40+ terms give
// remainders far under the working precision there.
constexpr double kSeriesUCut = 0.05;

unsigned series_terms_for(const PrecisionConfig& cfg) {
  // Remainder of sum u^k/(2k+1) at |u| <= 0.05 decays by a factor 20 per
  // term; pick enough terms for the working precision.
  const double needed = double(cfg.work_prec()) * 0.6931 / std::log(1.0 / kSeriesUCut) + 8;
  return std::max(cfg.series_terms, unsigned(needed));
}

// S(u) = sum_{k=1..terms} u^k / (2k+1)  ( = artanh(sqrt u)/sqrt(u) - 1 )
Real series_theta(const Real& u, unsigned terms, mpfr_prec_t prec) {
  Real s(prec);
  for (unsigned k = terms; k >= 1; --k) {
    s *= u;
    s += 1ul / Real(2ul * k + 1ul, prec);
  }
  return s * u;
}

// S'(u) = sum_{k=1..terms} k u^(k-1) / (2k+1)
Real series_dtheta(const Real& u, unsigned terms, mpfr_prec_t prec) {
  Real s(prec);
  for (unsigned k = terms; k >= 1; --k) {
    s *= u;
    s += Real((unsigned long)k, prec) / (2ul * k + 1ul);
  }
  return s;
}

Real quarter(mpfr_prec_t prec) { return Real(1ul, prec) / 4ul; }

// Solves S(u) = theta for |theta| < ~0.017 by Newton from u = 3 theta.
// Valid for slightly negative theta as well (the series is analytic at 0).
Real solve_u_of_theta(const Real& theta, const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  const unsigned terms = series_terms_for(cfg);
  Real u = theta * 3ul;
  for (int it = 0; it < 60; ++it) {
    Real step = (series_theta(u, terms, wp) - theta) / series_dtheta(u, terms, wp);
    u -= step;
    if (abs(step) <= abs(u) * exp(-Real((long)wp - 4, wp) * log2_const(wp)))
      break;
  }
  return u;
}

struct Inversion {
  Real lambda, u;  // u = 1 - 4 lambda, full relative accuracy on both
};

Inversion invert(const Real& theta, const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  if (theta.is_zero()) return {quarter(wp), Real(wp)};
  if (theta < cfg.theta_switch) {
    Real u = solve_u_of_theta(theta, cfg);
    return {(1ul - u) / 4ul, std::move(u)};
  }
  // Bracketed bisection in ln(lambda). theta(e^{-2(theta+2)}) > theta for
  // all theta >= 0, so the bracket below always contains the root.
  Real lo = -(theta + 2ul) * 2ul;
  while (theta_of_lambda(exp(lo), cfg) <= theta) lo = lo * 2ul;
  Real hi = log(quarter(wp));
  for (int it = 0; it < 50; ++it) {
    Real mid = (lo + hi) / 2ul;
    if (theta_of_lambda(exp(mid), cfg) > theta)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
  Real lam = exp((lo + hi) / 2ul);
  // Newton refinement with dtheta/dlambda = 2 theta/(1-4 lambda) - 1/(2 lambda).
  const Real tiny = exp(-Real((long)wp - 6, wp) * log2_const(wp));
  for (int it = 0; it < 40; ++it) {
    Real th = theta_of_lambda(lam, cfg);
    Real d = (th * 2ul) / (1ul - lam * 4ul) - 1ul / (lam * 2ul);
    Real step = (th - theta) / d;
    Real next = lam - step;
    if (next.sign() <= 0) next = lam / 2ul;
    if (next > quarter(wp)) next = (lam + quarter(wp)) / 2ul;
    bool done = abs(next - lam) <= abs(lam) * tiny;
    lam = std::move(next);
    if (done) break;
  }
  return {lam, 1ul - lam * 4ul};
}

void check_theta_nonneg(const Real& theta) {
  if (theta.sign() < 0) throw std::domain_error("theta must be >= 0");
}

void check_theta_pos(const Real& theta) {
  if (theta.sign() <= 0) throw std::domain_error("theta must be > 0");
}

Real j_const(const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  if (cfg.j_constant) return Real(*cfg.j_constant, wp);
  return log2_const(wp) / 2ul;
}

// -ln(lambda): the log1p form keeps accuracy near lambda = 1/4, the direct
// log is exact for small lambda where u rounds to 1.
Real neg_log_lambda(const Inversion& inv, mpfr_prec_t wp) {
  if (inv.u < 0.5) return log(Real(4ul, wp)) - log1p(-inv.u);
  return -log(inv.lambda);
}

// lambda'(theta) from an inversion result.
Real lambda_prime_at(const Real& theta, const Inversion& inv,
                     const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  if (theta < cfg.theta_switch)
    return -(1ul / (series_dtheta(inv.u, series_terms_for(cfg), wp) * 4ul));
  // -2 lambda (1-4 lambda) / (1-4(theta+1) lambda)
  Real g = inv.u - inv.lambda * theta * 4ul;
  return -(inv.lambda * 2ul * inv.u) / g;
}

}  // namespace

Real theta_of_lambda(const Real& lambda, const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  if (lambda.sign() <= 0 || lambda > quarter(wp))
    throw std::domain_error("lambda must lie in (0, 1/4]");
  Real u = 1ul - lambda * 4ul;
  if (u.is_zero()) return Real(wp);
  if (u < kSeriesUCut) return series_theta(u, series_terms_for(cfg), wp);
  // artanh(s) = ln(1+s) - ln(4 lambda)/2 since 1 - s = 4 lambda / (1+s);
  // stays finite when u rounds to 1 for tiny lambda.
  Real su = sqrt(u);
  return (log(su + 1ul) - log(lambda * 4ul) / 2ul) / su - 1ul;
}

Real lambda_of_theta(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_nonneg(theta);
  return invert(theta, cfg).lambda;
}

Real lambda_prime(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_nonneg(theta);
  return lambda_prime_at(theta, invert(theta, cfg), cfg);
}

Real f_of_theta(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_nonneg(theta);
  const mpfr_prec_t wp = cfg.work_prec();
  if (theta.is_zero()) return log(Real(4ul, wp));
  Inversion inv = invert(theta, cfg);
  return neg_log_lambda(inv, wp) - theta * 2ul - theta * log(inv.u);
}

Real j_of_theta(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_pos(theta);
  Inversion inv = invert(theta, cfg);
  Real g = inv.u - inv.lambda * theta * 4ul;
  return j_const(cfg) - log(g) / 2ul;
}

Real f_prime(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_nonneg(theta);
  if (theta.is_zero()) return Real::pos_inf(cfg.work_prec());
  return -log(invert(theta, cfg).u);
}

Real f_double_prime(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_pos(theta);
  Inversion inv = invert(theta, cfg);
  return lambda_prime_at(theta, inv, cfg) * 4ul / inv.u;
}

Real j_prime(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_pos(theta);
  Inversion inv = invert(theta, cfg);
  Real lp = lambda_prime_at(theta, inv, cfg);
  Real g = inv.u - inv.lambda * theta * 4ul;
  Real gp = -(inv.lambda * 4ul) - (theta + 1ul) * lp * 4ul;
  return -gp / (g * 2ul);
}

RegularizedPair f0_j0(const Real& theta, const PrecisionConfig& cfg) {
  const mpfr_prec_t wp = cfg.work_prec();
  if (theta.is_zero()) return {log(Real(4ul, wp)), Real(wp)};
  if (abs(theta) < cfg.theta_switch) {
    // Through u/theta (-> 3 at 0) both parts stay analytic across 0.
    Real u = solve_u_of_theta(theta, cfg);
    Real lambda = (1ul - u) / 4ul;
    Real ratio = u / theta;
    Real f0 = log(Real(4ul, wp)) - log1p(-u) - theta * 2ul - theta * log(ratio);
    Real j0 = j_const(cfg) - log(ratio - lambda * 4ul) / 2ul;
    return {std::move(f0), std::move(j0)};
  }
  check_theta_nonneg(theta);
  Real lt = log(theta);
  return {f_of_theta(theta, cfg) + theta * lt, j_of_theta(theta, cfg) + lt / 2ul};
}

AsymPoint asym_point(const Real& theta, const PrecisionConfig& cfg) {
  check_theta_nonneg(theta);
  const mpfr_prec_t wp = cfg.work_prec();
  if (theta.is_zero()) {
    return AsymPoint{Real(wp),
                     quarter(wp),
                     log(Real(4ul, wp)),
                     Real::pos_inf(wp),
                     Real::pos_inf(wp),
                     Real::neg_inf(wp),
                     Real::neg_inf(wp),
                     Real(-3l, wp) / 4ul};
  }
  Inversion inv = invert(theta, cfg);
  Real lp = lambda_prime_at(theta, inv, cfg);
  Real g = inv.u - inv.lambda * theta * 4ul;
  Real gp = -(inv.lambda * 4ul) - (theta + 1ul) * lp * 4ul;
  AsymPoint p{theta,
              inv.lambda,
              neg_log_lambda(inv, wp) - theta * 2ul - theta * log(inv.u),
              j_const(cfg) - log(g) / 2ul,
              -log(inv.u),
              lp * 4ul / inv.u,
              -gp / (g * 2ul),
              std::move(lp)};
  return p;
}

}  // namespace monohurwitz

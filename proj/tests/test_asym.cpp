#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asym.hpp"

using namespace monohurwitz;

namespace {
const PrecisionConfig cfg{};
double d(const Real& r) { return r.to_double(); }
}  // namespace

TEST_CASE("endpoint constants") {
  const mpfr_prec_t wp = cfg.work_prec();
  CHECK(d(theta_of_lambda(Real(1ul, wp) / 4ul, cfg)) == 0.0);
  CHECK(d(lambda_of_theta(Real(0ul, wp), cfg)) == 0.25);
  CHECK(d(lambda_prime(Real(0ul, wp), cfg)) == -0.75);
  CHECK(d(f_of_theta(Real(0ul, wp), cfg)) == doctest::Approx(std::log(4.0)));
  auto [f0, j0] = f0_j0(Real(0ul, wp), cfg);
  CHECK(d(f0) == doctest::Approx(std::log(4.0)));
  CHECK(d(j0) == 0.0);
}

TEST_CASE("reference point lambda = 0.1") {
  const mpfr_prec_t wp = cfg.work_prec();
  const Real lam(0.1, wp);
  const Real theta = theta_of_lambda(lam, cfg);
  CHECK(d(theta) == doctest::Approx(0.3319419).epsilon(1e-6));
  CHECK(d(lambda_of_theta(theta, cfg)) == doctest::Approx(0.1).epsilon(1e-25));
  CHECK(d(lambda_prime(theta, cfg)) == doctest::Approx(-0.256836).epsilon(1e-5));
  CHECK(d(f_of_theta(theta, cfg)) == doctest::Approx(1.808266).epsilon(1e-6));
  CHECK(d(j_of_theta(theta, cfg)) == doctest::Approx(0.727041).epsilon(1e-5));
  CHECK(d(f_prime(theta, cfg)) == doctest::Approx(-std::log(0.6)).epsilon(1e-12));
}

TEST_CASE("round trip over a log grid") {
  const mpfr_prec_t wp = cfg.work_prec();
  const double tol = std::ldexp(1.0, -120);
  for (int i = 0; i <= 200; ++i) {
    const double e = -6.0 + 6.0 * i / 200.0;  // lambda from 1e-6 towards 1/4
    Real lam = exp(Real(e * std::log(10.0), wp));
    if (lam > 0.25 - 1e-6) lam = Real(0.25 - 1e-6, wp);
    Real back = lambda_of_theta(theta_of_lambda(lam, cfg), cfg);
    CHECK(d(abs(back - lam)) <= tol);
  }
}

TEST_CASE("theta_of_lambda strictly decreasing") {
  const mpfr_prec_t wp = cfg.work_prec();
  Real prev = theta_of_lambda(Real(1e-9, wp), cfg);
  for (double lam = 1e-6; lam <= 0.25; lam += 0.01) {
    Real t = theta_of_lambda(Real(std::min(lam, 0.25), wp), cfg);
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("core identity 4 lambda + exp(-f') = 1") {
  const mpfr_prec_t wp = cfg.work_prec();
  for (double th = 1e-4; th <= 50; th *= 3) {
    AsymPoint p = asym_point(Real(th, wp), cfg);
    CHECK(d(abs(p.lambda * 4ul + exp(-p.f_prime) - 1ul)) <= 1e-25);
  }
}

TEST_CASE("series and closed-form branches agree across the switch") {
  // Evaluate just below theta_switch twice: once on the series route, once
  // forced onto the closed form by lowering the switch.
  PrecisionConfig low = cfg;
  low.theta_switch = 1e-3;
  const mpfr_prec_t wp = cfg.work_prec();
  for (double th : {0.002, 0.005, 0.009}) {
    const Real theta(th, wp);
    CHECK(d(abs(lambda_of_theta(theta, cfg) - lambda_of_theta(theta, low))) <= 1e-30);
    CHECK(d(abs(f_of_theta(theta, cfg) - f_of_theta(theta, low))) <= 1e-28);
    CHECK(d(abs(lambda_prime(theta, cfg) - lambda_prime(theta, low))) <= 1e-28);
    auto a = f0_j0(theta, cfg);
    auto b = f0_j0(theta, low);
    CHECK(d(abs(a.f0 - b.f0)) <= 1e-28);
    CHECK(d(abs(a.j0 - b.j0)) <= 1e-28);
  }
}

TEST_CASE("derivative identity theta f'' = 2 + lambda'/lambda") {
  const mpfr_prec_t wp = cfg.work_prec();
  for (double th : {0.05, 0.3319419, 1.0, 5.0}) {
    const Real theta(th, wp);
    Real lhs = theta * f_double_prime(theta, cfg);
    Real rhs = lambda_prime(theta, cfg) / lambda_of_theta(theta, cfg) + 2ul;
    CHECK(d(abs(lhs - rhs)) <= 1e-25);
  }
}

TEST_CASE("theta f'' tends to -1 at the origin") {
  const mpfr_prec_t wp = cfg.work_prec();
  double prev_gap = 1.0;
  for (double th : {1e-3, 1e-4, 1e-5}) {
    double v = d(Real(th, wp) * f_double_prime(Real(th, wp), cfg));
    double gap = std::abs(v + 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("exponential decay of f'' and j' at large theta") {
  const mpfr_prec_t wp = cfg.work_prec();
  const double cf = std::abs(d(f_double_prime(Real(5.0, wp), cfg))) * std::exp(7.5);
  const double cj = std::abs(d(j_prime(Real(5.0, wp), cfg))) * std::exp(7.5);
  for (double th = 5; th <= 40; th += 5) {
    CHECK(std::abs(d(f_double_prime(Real(th, wp), cfg))) <=
          cf * std::exp(-1.5 * th) * (1 + 1e-9));
    CHECK(std::abs(d(j_prime(Real(th, wp), cfg))) <=
          cj * std::exp(-1.5 * th) * (1 + 1e-9));
  }
}

TEST_CASE("f0_j0 admits small negative arguments") {
  const mpfr_prec_t wp = cfg.work_prec();
  auto lo = f0_j0(Real(-1e-6, wp), cfg);
  auto hi = f0_j0(Real(1e-6, wp), cfg);
  CHECK(lo.f0.is_finite());
  CHECK(lo.j0.is_finite());
  // Central difference across 0 approximates f0'(0) = 1 - ln 3.
  double fd = d((hi.f0 - lo.f0) / 2ul) * 1e6;
  CHECK(fd == doctest::Approx(1.0 - std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("f' infinite flag at the origin, finite elsewhere") {
  const mpfr_prec_t wp = cfg.work_prec();
  CHECK(f_prime(Real(0ul, wp), cfg).is_inf());
  CHECK(f_prime(Real(1e-5, wp), cfg).is_finite());
}

TEST_CASE("very large theta stays finite") {
  const mpfr_prec_t wp = cfg.work_prec();
  for (double th : {60.0, 100.0, 146.0, 200.0}) {
    AsymPoint p = asym_point(Real(th, wp), cfg);
    CHECK(p.f.is_finite());
    CHECK(p.j.is_finite());
    CHECK(p.lambda.sign() > 0);
    // theta(lambda(theta)) must reproduce theta even when u rounds to 1.
    CHECK(d(abs(theta_of_lambda(p.lambda, cfg) - p.theta)) <= 1e-25 * th);
  }
}

TEST_CASE("domain violations") {
  const mpfr_prec_t wp = cfg.work_prec();
  CHECK_THROWS_AS(theta_of_lambda(Real(0.3, wp), cfg), std::domain_error);
  CHECK_THROWS_AS(theta_of_lambda(Real(0ul, wp), cfg), std::domain_error);
  CHECK_THROWS_AS(lambda_of_theta(Real(-1l, wp), cfg), std::domain_error);
  CHECK_THROWS_AS(j_of_theta(Real(0ul, wp), cfg), std::domain_error);
  CHECK_THROWS_AS(f_double_prime(Real(0ul, wp), cfg), std::domain_error);
}

TEST_CASE("precision config validation") {
  PrecisionConfig bad;
  bad.mantissa_bits = 32;
  CHECK_FALSE(bad.valid());
  bad = PrecisionConfig{};
  bad.theta_switch = 0.5;
  CHECK_FALSE(bad.valid());
  CHECK(PrecisionConfig{}.valid());
}

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>

namespace monohurwitz {

// Extended-precision real backed by MPFR. The precision travels with the
// value; binary operations widen to the larger operand's precision.
// All roundings are to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(unsigned long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real from_mpq(const mpq_class& q, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real pos_inf(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_inf(r.v_, 1);
    return r;
  }
  static Real neg_inf(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_inf(r.v_, -1);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Scientific decimal with the requested number of significant digits.
  std::string str(int sig_digits = 18) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", sig_digits - 1, v_);
    return buf;
  }

  Real& operator+=(const Real& o) {
    widen(o.prec());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o.prec());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o.prec());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o.prec());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend Real operator+(Real a, unsigned long b) {
    mpfr_add_ui(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator-(Real a, unsigned long b) {
    mpfr_sub_ui(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator*(Real a, unsigned long b) {
    mpfr_mul_ui(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator/(Real a, unsigned long b) {
    mpfr_div_ui(a.v_, a.v_, b, MPFR_RNDN);
    return a;
  }
  friend Real operator-(unsigned long a, Real b) {
    mpfr_ui_sub(b.v_, a, b.v_, MPFR_RNDN);
    return b;
  }
  friend Real operator/(unsigned long a, Real b) {
    mpfr_ui_div(b.v_, a, b.v_, MPFR_RNDN);
    return b;
  }
  friend Real operator-(Real a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

 private:
  void widen(mpfr_prec_t p) {
    if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
  }
  mpfr_t v_;
};

inline Real abs(Real a) {
  mpfr_abs(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real log(Real a) {
  mpfr_log(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real log1p(Real a) {
  mpfr_log1p(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real exp(Real a) {
  mpfr_exp(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real sqrt(Real a) {
  mpfr_sqrt(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real atanh(Real a) {
  mpfr_atanh(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
// ln Gamma(a), a > 0.
inline Real lgamma(Real a) {
  mpfr_lngamma(a.raw(), a.raw(), MPFR_RNDN);
  return a;
}
inline Real log2_const(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}
inline Real pi_const(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
// ln(2*pi)/2, shared by the Stirling-type prefactors.
inline Real half_log_two_pi(mpfr_prec_t prec) {
  return log(pi_const(prec) * 2ul) / 2ul;
}

}  // namespace monohurwitz

#pragma once

#include "badflow/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

namespace badflow {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// RAII wrapper around mpfr_t. All operations take an explicit rounding mode;
/// the interval layer relies on that for outward rounding.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_rational(const Rational& r, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat x(prec);
    mpfr_set_q(x.v_, r.backend().data(), rnd);
    return x;
  }
  static BigFloat from_double(double d, mpfr_prec_t prec = 64) {
    BigFloat x(prec);
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  int sgn() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  std::string str(int digits = 20) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoint arithmetic.
struct Interval {
  BigFloat lo, hi;

  static Interval exact(const Rational& r, mpfr_prec_t prec) {
    return {BigFloat::from_rational(r, prec, MPFR_RNDD),
            BigFloat::from_rational(r, prec, MPFR_RNDU)};
  }
  static Interval zero(mpfr_prec_t prec) { return {BigFloat(prec), BigFloat(prec)}; }

  mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }
  bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
  // -1 / +1 when the sign is certain, 0 when the interval straddles zero.
  int sign_certain() const {
    if (hi.sgn() < 0) return -1;
    if (lo.sgn() > 0) return 1;
    return 0;
  }
  double mid() const { return 0.5 * (lo.to_double() + hi.to_double()); }
};

inline Interval iv_add(const Interval& a, const Interval& b) {
  Interval r{BigFloat(std::max(a.prec(), b.prec())), BigFloat(std::max(a.prec(), b.prec()))};
  mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval iv_sub(const Interval& a, const Interval& b) {
  Interval r{BigFloat(std::max(a.prec(), b.prec())), BigFloat(std::max(a.prec(), b.prec()))};
  mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return r;
}

inline Interval iv_neg(const Interval& a) {
  Interval r{BigFloat(a.prec()), BigFloat(a.prec())};
  mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

inline Interval iv_mul(const Interval& a, const Interval& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  BigFloat c(p);
  Interval r{BigFloat(p), BigFloat(p)};
  bool first = true;
  auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_mul(c.get(), x, y, MPFR_RNDD);
    if (first || cmp(c, r.lo) < 0) mpfr_set(r.lo.get(), c.get(), MPFR_RNDD);
    mpfr_mul(c.get(), x, y, MPFR_RNDU);
    if (first || cmp(c, r.hi) > 0) mpfr_set(r.hi.get(), c.get(), MPFR_RNDU);
    first = false;
  };
  consider(a.lo.get(), b.lo.get());
  consider(a.lo.get(), b.hi.get());
  consider(a.hi.get(), b.lo.get());
  consider(a.hi.get(), b.hi.get());
  return r;
}

inline Interval iv_div(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("iv_div: divisor interval contains zero");
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  BigFloat c(p);
  Interval r{BigFloat(p), BigFloat(p)};
  bool first = true;
  auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_div(c.get(), x, y, MPFR_RNDD);
    if (first || cmp(c, r.lo) < 0) mpfr_set(r.lo.get(), c.get(), MPFR_RNDD);
    mpfr_div(c.get(), x, y, MPFR_RNDU);
    if (first || cmp(c, r.hi) > 0) mpfr_set(r.hi.get(), c.get(), MPFR_RNDU);
    first = false;
  };
  consider(a.lo.get(), b.lo.get());
  consider(a.lo.get(), b.hi.get());
  consider(a.hi.get(), b.lo.get());
  consider(a.hi.get(), b.hi.get());
  return r;
}

inline Interval iv_sqr(const Interval& a) {
  Interval r = iv_mul(a, a);
  if (r.lo.sgn() < 0) mpfr_set_zero(r.lo.get(), 1);  // squares are nonnegative
  return r;
}

inline Interval iv_sqrt(const Interval& a) {
  if (a.lo.sgn() < 0) throw std::domain_error("iv_sqrt: negative interval");
  Interval r{BigFloat(a.prec()), BigFloat(a.prec())};
  mpfr_sqrt(r.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

/// exp(c * t) for rational c and interval t.
inline Interval iv_exp(const Interval& t) {
  Interval r{BigFloat(t.prec()), BigFloat(t.prec())};
  mpfr_exp(r.lo.get(), t.lo.get(), MPFR_RNDD);
  mpfr_exp(r.hi.get(), t.hi.get(), MPFR_RNDU);
  return r;
}

inline Interval iv_scale(const Interval& a, const Rational& c, mpfr_prec_t prec) {
  return iv_mul(a, Interval::exact(c, prec));
}

/// radicand^{1/index} as an interval (radicand > 0).
inline Interval iv_root(const Rational& radicand, unsigned long index, mpfr_prec_t prec) {
  Interval r{BigFloat(prec), BigFloat(prec)};
  BigFloat x = BigFloat::from_rational(radicand, prec, MPFR_RNDD);
  mpfr_rootn_ui(r.lo.get(), x.get(), index, MPFR_RNDD);
  x = BigFloat::from_rational(radicand, prec, MPFR_RNDU);
  mpfr_rootn_ui(r.hi.get(), x.get(), index, MPFR_RNDU);
  return r;
}

// a strictly below b as intervals?
inline bool iv_certainly_less(const Interval& a, const Interval& b) {
  return cmp(a.hi, b.lo) < 0;
}

}  // namespace badflow

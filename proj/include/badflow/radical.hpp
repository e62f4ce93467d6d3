#pragma once

#include "badflow/interval.hpp"
#include "badflow/rational.hpp"

#include <numeric>
#include <vector>

namespace badflow {

/// One term coeff * radicand^(1/index) with radicand > 0.
/// Sums of such terms cover every exact comparison the library needs:
/// q^{m/w} bounds, Delta_eps interval endpoints, gamma-sums of rational
/// widths, and height-window endpoints.
struct RadTerm {
  Rational coeff;
  Rational radicand;  // > 0
  unsigned long index = 1;
};

namespace detail {

inline void normalize_term(RadTerm& t) {
  if (t.radicand <= 0) throw std::domain_error("RadTerm: radicand must be positive");
  if (t.index == 0) throw std::domain_error("RadTerm: zero index");
  // Pull perfect p-th powers out of the radicand for primes p | index.
  for (unsigned long p = 2; p <= t.index; ++p) {
    while (t.index % p == 0) {
      Rational root;
      if (t.index > 1 && perfect_power(t.radicand, p, &root)) {
        t.radicand = root;
        t.index /= p;
      } else {
        break;
      }
    }
    if (t.index == 1) break;
  }
  if (t.index == 1) {
    t.coeff *= t.radicand;
    t.radicand = 1;
  }
}

}  // namespace detail

/// coeff * base^(en/ed) as a RadTerm; base > 0.
inline RadTerm power_term(const Rational& coeff, const Rational& base, const Rational& exp) {
  if (base <= 0) throw std::domain_error("power_term: base must be positive");
  Int en = numerator(exp), ed = denominator(exp);
  if (ed > 10000) throw std::overflow_error("power_term: exponent denominator too large");
  long en_l = en.convert_to<long>();
  RadTerm t{coeff, pow_q(base, en_l), ed.convert_to<unsigned long>()};
  detail::normalize_term(t);
  return t;
}

inline RadTerm rational_term(const Rational& value) { return RadTerm{value, 1, 1}; }

/// Exact sign of sum(terms). Zero is detected exactly: after merging terms
/// whose radicals have rational ratio, the remaining radicals are linearly
/// independent over Q, so a mixed sum can only vanish term class by class.
inline int radical_sum_sign(std::vector<RadTerm> terms) {
  for (auto& t : terms) detail::normalize_term(t);

  unsigned long common = 1;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    common = std::lcm(common, t.index);
    if (common > 4096) throw std::overflow_error("radical_sum_sign: common index too large");
  }

  struct Class {
    Rational radicand;  // at common index
    Rational coeff;
  };
  std::vector<Class> classes;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    Rational lifted = pow_q(t.radicand, static_cast<long>(common / t.index));
    bool merged = false;
    for (auto& c : classes) {
      Rational root;
      if (perfect_power(lifted / c.radicand, common, &root)) {
        c.coeff += t.coeff * root;
        merged = true;
        break;
      }
    }
    if (!merged) classes.push_back({lifted, t.coeff});
  }
  std::erase_if(classes, [](const Class& c) { return c.coeff == 0; });

  if (classes.empty()) return 0;
  if (classes.size() == 1) return sign(classes[0].coeff);
  if (classes.size() == 2) {
    int s0 = sign(classes[0].coeff), s1 = sign(classes[1].coeff);
    if (s0 == s1) return s0;
    // Opposite signs: |c0|^M r0 vs |c1|^M r1 decides, and cannot tie
    // (the classes are inequivalent).
    Rational l = pow_q(abs_q(classes[0].coeff), static_cast<long>(common)) * classes[0].radicand;
    Rational r = pow_q(abs_q(classes[1].coeff), static_cast<long>(common)) * classes[1].radicand;
    if (l == r) throw std::logic_error("radical_sum_sign: inequivalent classes tied");
    return l > r ? s0 : s1;
  }

  // >= 3 inequivalent classes: the sum is irrational, hence nonzero;
  // refine intervals until the sign resolves.
  for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
    Interval sum = Interval::zero(prec);
    for (const auto& c : classes) {
      Interval t = iv_mul(Interval::exact(c.coeff, prec), iv_root(c.radicand, common, prec));
      sum = iv_add(sum, t);
    }
    int s = sum.sign_certain();
    if (s != 0) return s;
  }
  throw PrecisionExhausted("radical_sum_sign: sign did not resolve");
}

/// Exact order of c versus q^{m/w} + shift. Pure rational arithmetic:
/// (c - shift) <= 0 settles the sign, otherwise compare (c-shift)^w with q^m.
inline Ordering cmp_power(const Rational& c, const Int& q, long m, long w, const Rational& shift) {
  if (q < 1) throw std::domain_error("cmp_power: q must be >= 1");
  if (w < 1) throw std::domain_error("cmp_power: w must be >= 1");
  Rational t = c - shift;
  if (t <= 0) return Ordering::LT;  // q^{m/w} > 0 always
  Rational lhs = pow_q(t, w);
  Rational rhs = m >= 0 ? Rational(pow_z(q, static_cast<unsigned long>(m)))
                        : Rational(1) / Rational(pow_z(q, static_cast<unsigned long>(-m)));
  if (lhs < rhs) return Ordering::LT;
  if (lhs > rhs) return Ordering::GT;
  return Ordering::EQ;
}

/// Order of c versus q^{exp} + shift with rational exponent.
inline Ordering cmp_power(const Rational& c, const Int& q, const Rational& exp,
                          const Rational& shift) {
  return cmp_power(c, q, numerator(exp).convert_to<long>(),
                   denominator(exp).convert_to<long>(), shift);
}

/// sign(sum(lhs) - sum(rhs)).
inline int compare_sums(std::vector<RadTerm> lhs, const std::vector<RadTerm>& rhs) {
  for (const auto& t : rhs) lhs.push_back(RadTerm{-t.coeff, t.radicand, t.index});
  return radical_sum_sign(std::move(lhs));
}

inline int compare_terms(const RadTerm& a, const RadTerm& b) {
  return radical_sum_sign({a, RadTerm{-b.coeff, b.radicand, b.index}});
}

/// Exact rational bounds enclosing the term's value.
inline Rational rational_below(const RadTerm& t, mpfr_prec_t prec = 96) {
  Interval r = iv_mul(Interval::exact(t.coeff, prec), iv_root(t.radicand, t.index, prec));
  Rational out;
  mpfr_get_q(out.backend().data(), r.lo.get());
  return out;
}

inline Rational rational_above(const RadTerm& t, mpfr_prec_t prec = 96) {
  Interval r = iv_mul(Interval::exact(t.coeff, prec), iv_root(t.radicand, t.index, prec));
  Rational out;
  mpfr_get_q(out.backend().data(), r.hi.get());
  return out;
}

inline double term_to_double(const RadTerm& t) {
  Interval r = iv_mul(Interval::exact(t.coeff, 96), iv_root(t.radicand, t.index, 96));
  return r.mid();
}

inline std::string term_decimal(const RadTerm& t, int digits = 30) {
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
  Interval r = iv_mul(Interval::exact(t.coeff, prec), iv_root(t.radicand, t.index, prec));
  return r.lo.str(digits);
}

}  // namespace badflow

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <compare>
#include <stdexcept>
#include <string>

namespace badflow {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

enum class Ordering { LT, EQ, GT };

inline Ordering ordering_of(int sign) {
  return sign < 0 ? Ordering::LT : (sign > 0 ? Ordering::GT : Ordering::EQ);
}

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const Int& n) { return n.sign(); }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

inline Int floor_q(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

inline Int ceil_q(const Rational& r) {
  Int q;
  mpz_cdiv_q(q.backend().data(), numerator(r).backend().data(), denominator(r).backend().data());
  return q;
}

inline Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Exact integer power with signed exponent; e < 0 requires b != 0.
inline Rational pow_q(const Rational& b, long e) {
  if (e == 0) return Rational(1);
  if (b == 0) {
    if (e < 0) throw std::domain_error("pow_q: zero base, negative exponent");
    return Rational(0);
  }
  Rational base = e < 0 ? Rational(1) / b : b;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

inline Int pow_z(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), b.backend().data(), e);
  return r;
}

/// floor(x^{1/n}) for x >= 0; sets *exact if the root is an integer.
inline Int iroot(const Int& x, unsigned long n, bool* exact = nullptr) {
  if (x < 0) throw std::domain_error("iroot: negative radicand");
  Int r;
  int ex = mpz_root(r.backend().data(), x.backend().data(), n);
  if (exact) *exact = ex != 0;
  return r;
}

/// If r = v^n for rational v > 0 (r > 0), store v and return true.
inline bool perfect_power(const Rational& r, unsigned long n, Rational* root_out = nullptr) {
  if (r <= 0) throw std::domain_error("perfect_power: nonpositive input");
  if (n == 1) {
    if (root_out) *root_out = r;
    return true;
  }
  bool en = false, ed = false;
  Int rn = iroot(numerator(r), n, &en);
  if (!en) return false;
  Int rd = iroot(denominator(r), n, &ed);
  if (!ed) return false;
  if (root_out) *root_out = Rational(rn, rd);
  return true;
}

inline Rational rational_from_string(const std::string& s) {
  Rational r(s);
  return r;
}

inline std::string to_string(const Rational& r) {
  return r.str();
}

}  // namespace badflow

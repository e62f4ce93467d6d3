#pragma once

#include "badflow/interval.hpp"
#include "badflow/rational.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace badflow {

using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntervalMatrix = std::vector<std::vector<Interval>>;  // column-major: [col][row]

struct SystoleResult {
  Interval length;      // certified enclosure of the shortest nonzero vector length
  VecZ coeffs;          // integer coordinates of a witness in the given basis
  mpfr_prec_t bits = 0; // working precision of the final pass
};

namespace detail {

/// Textbook LLL on a floating copy of the basis; only the integer transform
/// matters (any unimodular change of basis keeps the certification exact).
inline MatZ lll_transform(std::vector<std::vector<double>> b, double delta = 0.99) {
  const int n = static_cast<int>(b.size());
  MatZ T = MatZ::Identity(n, n);
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<double>> bstar(n);
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> Bn(n, 0.0);
  auto gso = [&]() {
    for (int i = 0; i < n; ++i) {
      bstar[i] = b[i];
      for (int j = 0; j < i; ++j) {
        mu[i][j] = Bn[j] > 0 ? dot(b[i], bstar[j]) / Bn[j] : 0.0;
        for (size_t k = 0; k < bstar[i].size(); ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
      }
      Bn[i] = dot(bstar[i], bstar[i]);
    }
  };
  gso();
  int k = 1, guard = 0;
  while (k < n && ++guard < 20000) {
    for (int j = k - 1; j >= 0; --j) {
      double r = std::round(mu[k][j]);
      if (std::abs(r) > 0.5 && std::isfinite(r)) {
        long long c = static_cast<long long>(r);
        for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= static_cast<double>(c) * b[j][t];
        T.col(k) -= Int(c) * T.col(j);
        gso();
      }
    }
    if (Bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      T.col(k).swap(T.col(k - 1));
      gso();
      k = std::max(k - 1, 1);
    }
  }
  return T;
}

struct LdlFactors {
  std::vector<Interval> d;
  std::vector<std::vector<Interval>> mu;  // mu[i][j], i > j
};

inline std::optional<LdlFactors> interval_ldl(const IntervalMatrix& G, mpfr_prec_t prec) {
  const int n = static_cast<int>(G.size());
  LdlFactors f;
  f.d.assign(n, Interval::zero(prec));
  f.mu.assign(n, std::vector<Interval>(n, Interval::zero(prec)));
  for (int i = 0; i < n; ++i) {
    Interval di = G[i][i];
    for (int k = 0; k < i; ++k) di = iv_sub(di, iv_mul(iv_sqr(f.mu[i][k]), f.d[k]));
    if (di.lo.sgn() <= 0) return std::nullopt;  // needs more precision (or singular)
    f.d[i] = di;
    for (int j = i + 1; j < n; ++j) {
      Interval m = G[j][i];
      for (int k = 0; k < i; ++k)
        m = iv_sub(m, iv_mul(iv_mul(f.mu[j][k], f.mu[i][k]), f.d[k]));
      f.mu[j][i] = iv_div(m, di);
    }
  }
  return f;
}

inline Interval quad_form(const IntervalMatrix& G, const VecZ& x, mpfr_prec_t prec) {
  const int n = static_cast<int>(G.size());
  Interval s = Interval::zero(prec);
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (x(j) == 0) continue;
      Rational c(x(i) * x(j));
      s = iv_add(s, iv_scale(G[j][i], c, prec));
    }
  }
  return s;
}

struct EnumBest {
  Interval norm2;
  VecZ x;
  bool set = false;
};

/// Fincke-Pohst over the interval LDL factors; conservative coefficient
/// ranges guarantee no admissible vector is skipped.
inline void fp_enumerate(const IntervalMatrix& G, const LdlFactors& f, double C, int level,
                         VecZ& x, mpfr_prec_t prec, EnumBest& best) {
  const int n = static_cast<int>(G.size());
  if (level < 0) {
    if (x.isZero()) return;
    Interval norm2 = quad_form(G, x, prec);
    if (!best.set || cmp(norm2.hi, best.norm2.hi) < 0) {
      best.norm2 = norm2;
      best.x = x;
      best.set = true;
    }
    return;
  }
  // center c = sum_{j>level} mu[j][level] x_j
  double c_lo = 0, c_hi = 0;
  for (int j = level + 1; j < n; ++j) {
    double xv = x(j).convert_to<double>();
    double a = f.mu[j][level].lo.to_double() * xv;
    double b2 = f.mu[j][level].hi.to_double() * xv;
    c_lo += std::min(a, b2);
    c_hi += std::max(a, b2);
  }
  double dk = f.d[level].lo.to_double();
  if (!(dk > 0)) dk = 1e-300;
  double radius = std::sqrt(std::max(0.0, C / dk)) + 1e-9;
  long lo = static_cast<long>(std::floor(-radius - c_hi)) - 1;
  long hi = static_cast<long>(std::ceil(radius - c_lo)) + 1;
  for (long v = lo; v <= hi; ++v) {
    x(level) = v;
    fp_enumerate(G, f, C, level - 1, x, prec, best);
  }
  x(level) = 0;
}

}  // namespace detail

/// Shortest nonzero vector of the lattice spanned by the basis columns,
/// certified to relative error 2^{-target_bits/2}. The basis is supplied as
/// a function of working precision so that the automatic doubling can
/// re-enclose transcendental entries.
inline SystoleResult shortest_vector(
    const std::function<IntervalMatrix(mpfr_prec_t)>& basis_at, mpfr_prec_t target_bits) {
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(2 * target_bits, 192);
       prec <= (mpfr_prec_t{1} << 20); prec *= 2) {
    IntervalMatrix cols = basis_at(prec);
    const int n = static_cast<int>(cols.size());
    // Gram of the raw basis.
    IntervalMatrix G(n, std::vector<Interval>(n, Interval::zero(prec)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        Interval s = Interval::zero(prec);
        for (int r = 0; r < n; ++r) s = iv_add(s, iv_mul(cols[i][r], cols[j][r]));
        G[i][j] = s;
        G[j][i] = s;
      }
    // LLL on midpoints, then transform the Gram exactly.
    std::vector<std::vector<double>> mid(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < n; ++r) mid[i][r] = cols[i][r].mid();
    MatZ T = detail::lll_transform(mid);
    IntervalMatrix Gr(n, std::vector<Interval>(n, Interval::zero(prec)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Interval s = Interval::zero(prec);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Rational c(T(a, i) * T(b, j));
            if (c != 0) s = iv_add(s, iv_scale(G[a][b], c, prec));
          }
        Gr[i][j] = s;
      }
    auto f = detail::interval_ldl(Gr, prec);
    if (!f) continue;  // retry at higher precision
    double C = Gr[0][0].hi.to_double();
    for (int i = 1; i < n; ++i) C = std::min(C, Gr[i][i].hi.to_double());
    C *= 1.0 + 1e-9;
    detail::EnumBest best;
    VecZ x = VecZ::Zero(n);
    detail::fp_enumerate(Gr, *f, C, n - 1, x, prec, best);
    if (!best.set || best.norm2.lo.sgn() <= 0) continue;
    // certified relative width of the squared norm
    Interval width = iv_sub(best.norm2, Interval{best.norm2.lo, best.norm2.lo});
    BigFloat tol(prec);
    mpfr_mul_2si(tol.get(), best.norm2.lo.get(), -static_cast<long>(target_bits / 2), MPFR_RNDD);
    if (cmp(width.hi, tol) > 0) continue;
    SystoleResult out;
    out.length = iv_sqrt(best.norm2);
    out.coeffs = T * best.x;
    out.bits = prec;
    return out;
  }
  throw PrecisionExhausted("shortest_vector: certification failed at maximum precision");
}

/// Exact-rational basis entry point with a singularity check.
inline SystoleResult systole(const MatQ& basis, mpfr_prec_t precision_bits) {
  if (basis.rows() != basis.cols()) throw std::invalid_argument("systole: basis must be square");
  if (basis.determinant() == 0) throw std::invalid_argument("systole: singular basis");
  auto fn = [&basis](mpfr_prec_t prec) {
    IntervalMatrix cols(basis.cols(), std::vector<Interval>(basis.rows(), Interval::zero(prec)));
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
      for (Eigen::Index i = 0; i < basis.rows(); ++i)
        cols[j][i] = Interval::exact(basis(i, j), prec);
    return cols;
  };
  return shortest_vector(fn, precision_bits);
}

}  // namespace badflow

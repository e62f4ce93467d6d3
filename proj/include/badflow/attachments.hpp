#pragma once

#include "badflow/diophantine.hpp"

#include <functional>

namespace badflow {

/// Raised when a search whose nonemptiness is mathematically guaranteed
/// comes back empty; indicates an arithmetic bug, not a valid outcome.
struct SearchInvariantFailure : std::logic_error {
  using std::logic_error::logic_error;
};

/// Minimizing dual vector (a, b) of the admissible set of (B, P):
/// a.p + b.s = 0 mod q, |a|_inf <= q^lambda, |b + z_B.a| <= q^mu + sigma(B),
/// xi = max(|a|_inf, |b + z_B.a|) minimal.
struct DualVector {
  VecZ a;
  Int b;
  Rational xi;
};

/// Integer-coefficient affine functional w -> a.w_x + b.w_y - C attached to
/// (B, P); C = a^+ . (p/q, s/q) is an integer because of the congruence.
struct AttachedHyperplane {
  VecZ a;
  Int b;
  Int C;
};

/// Lattice point (v, u) in Lambda_P = Z^d + Z(p/q, s/q) with the parallelism
/// bounds; c is the combination coefficient: q(v, u) = c(p, s) mod qZ^d.
struct LinePoint {
  VecQ v;
  Rational u;
  Int c;
};

namespace detail {

inline Int mod_pos(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

inline Int mod_inverse(const Int& a, const Int& q) {
  Int g, x, y;
  mpz_gcdext(g.backend().data(), x.backend().data(), y.backend().data(), a.backend().data(),
             q.backend().data());
  if (g != 1) throw std::logic_error("mod_inverse: not invertible");
  return mod_pos(x, q);
}

/// Iterate a over the integer box [-amax, amax]^n in lexicographic order.
inline bool next_box_point(VecZ& a, const Int& amax) {
  for (Eigen::Index i = a.size(); i-- > 0;) {
    if (a(i) < amax) {
      a(i) += 1;
      for (Eigen::Index j = i + 1; j < a.size(); ++j) a(j) = -amax;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// floor(q^{m/w}) for integer q >= 1 and rational exponent m/w >= 0.
inline Int floor_power(const Int& q, const Rational& exp) {
  Int m = numerator(exp);
  if (m < 0) throw std::domain_error("floor_power: negative exponent");
  return iroot(pow_z(q, m.convert_to<unsigned long>()),
               denominator(exp).convert_to<unsigned long>());
}

/// Minimizer of xi over the admissible set, ties broken lexicographically on
/// (a_1, ..., a_{d-1}, b). Existence is guaranteed (Minkowski's linear forms
/// theorem gives a member with |b + z.a| <= q^mu already).
inline DualVector dual_search(const Ball& B, const RationalPoint& P, const Weight& w) {
  if (B.d() != w.d || P.d() != w.d) throw std::invalid_argument("dual_search: dimension mismatch");
  const Rational& sigma = B.sigma();
  const Int q = P.q;
  const VecQ z = B.z_part();
  const Int amax = floor_power(q, w.lambda);
  // conservative integer bound for the b-window half-width q^mu + sigma
  Rational half_ub = Rational(floor_power(q, w.mu) + 1) + sigma;

  const Int s_mod = detail::mod_pos(P.s, q);
  const Int g = gcd(s_mod, q);
  const Int qg = q / g;
  const Int inv = qg == 1 ? Int(0) : detail::mod_inverse((s_mod / g) % qg, qg);

  std::optional<DualVector> best;
  VecZ a = VecZ::Constant(w.d - 1, -amax);
  while (true) {
    Int ap = 0;
    for (int i = 0; i < w.d - 1; ++i) ap += a(i) * P.p(i);
    Int r = detail::mod_pos(-ap, q);
    if (r % g == 0) {
      // b runs over a residue class mod q/g inside the window
      Int b0 = qg == 1 ? Int(0) : detail::mod_pos(((r / g) % qg) * inv, qg);
      Rational za = dot_zq(a, z);
      Rational lo = -za - half_ub, hi = -za + half_ub;
      Int k_lo = floor_div(ceil_q(lo) - b0, qg);
      if (Rational(b0 + k_lo * qg) < lo) k_lo += 1;
      for (Int k = k_lo; Rational(b0 + k * qg) <= hi; ++k) {
        Int b = b0 + k * qg;
        bool a_zero = a.isZero();
        if (a_zero && b == 0) continue;
        Rational mval = abs_q(Rational(b) + za);
        // exact membership: |b + z.a| <= q^mu + sigma
        if (cmp_power(mval, q, w.mu, sigma) == Ordering::GT) continue;
        Rational amax_q = 0;
        for (int i = 0; i < w.d - 1; ++i)
          if (Rational av = Rational(abs(a(i))); av > amax_q) amax_q = av;
        Rational xi = amax_q > mval ? amax_q : mval;
        if (!best || xi < best->xi) best = DualVector{a, b, xi};
      }
    }
    if (!detail::next_box_point(a, amax)) break;
  }
  if (!best) throw SearchInvariantFailure("dual_search: admissible set came back empty");
  return *best;
}

/// Height H_B(P) = q(P) * xi(B, P); satisfies q <= H <= q^{1+lambda}.
inline Rational height(const Ball& B, const RationalPoint& P, const Weight& w) {
  return Rational(P.q) * dual_search(B, P, w).xi;
}

inline AttachedHyperplane attach_hyperplane(const Ball& B, const RationalPoint& P,
                                            const Weight& w) {
  DualVector dv = dual_search(B, P, w);
  Int num = 0;
  for (int i = 0; i < w.d - 1; ++i) num += dv.a(i) * P.p(i);
  num += dv.b * P.s;
  if (num % P.q != 0) throw std::logic_error("attach_hyperplane: C not integral");
  return AttachedHyperplane{dv.a, dv.b, num / P.q};
}

/// F_{B,P}(w) = a.w_x + b.w_y - C, exact on rational points of Q^d.
inline Rational functional_eval(const AttachedHyperplane& H, const VecQ& wpt) {
  if (wpt.size() != H.a.size() + 1) throw std::invalid_argument("functional_eval: dimension mismatch");
  Rational r = -Rational(H.C);
  for (Eigen::Index i = 0; i < H.a.size(); ++i) r += Rational(H.a(i)) * wpt(i);
  r += Rational(H.b) * wpt(H.a.size());
  return r;
}

namespace detail {

// Valid integer corrections c_i for one coordinate: |target - c_i| <= bound,
// bound given as a radical term. Returns the window in ascending order with
// exact per-candidate checks.
inline std::vector<Int> correction_window(const Rational& target, const RadTerm& bound,
                                          const Rational& bound_ub) {
  std::vector<Int> out;
  Int lo = ceil_q(target - bound_ub) - 1;
  Int hi = floor_q(target + bound_ub) + 1;
  for (Int c = lo; c <= hi; ++c) {
    Rational dist = abs_q(target - Rational(c));
    if (radical_sum_sign({rational_term(dist), RadTerm{-bound.coeff, bound.radicand, bound.index}}) <= 0)
      out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// First (in lexicographic (c, c_d, c_1, ...) order) nonzero point of
/// Lambda_P satisfying the parallelism bounds
///   ||v - u z_B||_inf <= 2d q^{-lambda},  |u| <= 2d xi q^{-lambda-mu}.
inline LinePoint attach_line(const Ball& B, const RationalPoint& P, const Weight& w) {
  if (B.d() != w.d || P.d() != w.d) throw std::invalid_argument("attach_line: dimension mismatch");
  const int d = w.d;
  const Int q = P.q;
  DualVector dv = dual_search(B, P, w);

  RadTerm u_bound = power_term(Rational(2 * d) * dv.xi, Rational(q), -w.lambda - w.mu);
  RadTerm v_bound = power_term(Rational(2 * d), Rational(q), -w.lambda);
  Rational u_ub = rational_above(u_bound) + Rational(1, 1000);
  Rational v_ub = rational_above(v_bound) + Rational(1, 1000);

  for (Int c = 0; c < q; ++c) {
    Rational cs = Rational(c * P.s, q);
    std::vector<Int> cd_window = detail::correction_window(-cs, u_bound, u_ub);
    for (const Int& cd : cd_window) {
      Rational u = cs + Rational(cd);
      // per-coordinate windows around u z_i - c p_i / q
      std::vector<std::vector<Int>> windows(d - 1);
      bool ok = true;
      for (int i = 0; i < d - 1 && ok; ++i) {
        Rational target = u * B.z(i) - Rational(c * P.p(i), q);
        windows[i] = detail::correction_window(target, v_bound, v_ub);
        if (windows[i].empty()) ok = false;
      }
      if (!ok) continue;
      VecZ ci(d - 1);
      for (int i = 0; i < d - 1; ++i) ci(i) = windows[i][0];
      auto build = [&](const VecZ& corr) {
        VecQ v(d - 1);
        for (int i = 0; i < d - 1; ++i) v(i) = Rational(c * P.p(i), q) + Rational(corr(i));
        return v;
      };
      VecQ v = build(ci);
      bool zero = u == 0 && v.isZero();
      if (zero) {
        // lexicographic successor of the all-minimal choice, latest coordinate first
        bool advanced = false;
        for (int j = d - 2; j >= 0 && !advanced; --j) {
          if (windows[j].size() > 1) {
            ci(j) = windows[j][1];
            for (int i = j + 1; i < d - 1; ++i) ci(i) = windows[i][0];
            advanced = true;
          }
        }
        if (!advanced) continue;
        v = build(ci);
      }
      return LinePoint{v, u, c};
    }
  }
  throw SearchInvariantFailure("attach_line: no lattice point in the search window");
}

}  // namespace badflow

#pragma once

#include "badflow/attachments.hpp"

#include <map>
#include <set>

namespace badflow {

enum class ParamsMode { paper, relaxed };

/// Caller-supplied constants for relaxed mode; the derivation formulas are
/// waived and the waived flags record which inequalities no longer hold.
struct RelaxedOverrides {
  Int R;
  Rational eps;
};

struct StrategyParams {
  int d = 2;
  Rational beta;
  Rational gamma;
  Rational rho0;
  Rational kappa;
  Int R;
  Rational eps;
  ParamsMode mode = ParamsMode::paper;
  bool waived_R_size = false;   // R >= max(4/beta, 10^4 d^6 kappa^4)
  bool waived_R_gamma = false;  // (R^gamma - 1)^-1 <= (beta^2/3)^gamma
  bool waived_eps = false;      // eps = 10^-2 d^-6 kappa^-2 R^-20d^2 rho0

  /// H_n = 2 d^2 eps kappa rho0^-1 R^{n+1}, exact.
  Rational H(long n) const {
    return Rational(2 * d * d) * eps * kappa / rho0 * Rational(pow_z(R, static_cast<unsigned long>(n + 1)));
  }
  /// R^{-n} rho0, exact.
  Rational level_radius(long n) const {
    return rho0 / Rational(pow_z(R, static_cast<unsigned long>(n)));
  }
};

/// kappa = max_{(x,y,z) in B0} max(|x|_inf, |y|, |z|_inf) + 1.
inline Rational kappa_of(const Ball& B0) {
  Rational m = 0;
  for (Eigen::Index i = 0; i < B0.center.size(); ++i) {
    Rational v = abs_q(B0.center(i)) + B0.radius;
    if (v > m) m = v;
  }
  return m + 1;
}

namespace detail {

// (R^gamma - 1)^-1 <= (beta^2/3)^gamma, i.e. R^gamma >= 1 + (3/beta^2)^gamma.
inline bool r_gamma_condition(const Int& R, const Rational& beta, const Rational& gamma) {
  return radical_sum_sign({power_term(1, Rational(R), gamma), rational_term(-1),
                           power_term(-1, Rational(3) / (beta * beta), gamma)}) >= 0;
}

}  // namespace detail

inline StrategyParams derive_params(const Ball& B0, const Rational& beta, const Rational& gamma,
                                    const Weight& w, ParamsMode mode,
                                    const std::optional<RelaxedOverrides>& overrides = std::nullopt) {
  if (beta <= 0 || beta >= 1) throw std::invalid_argument("derive_params: beta must be in (0,1)");
  if (gamma <= 0) throw std::invalid_argument("derive_params: gamma must be positive");
  if (B0.radius > Rational(1, w.d))
    throw std::invalid_argument("derive_params: rho(B0) must be <= 1/d");
  StrategyParams p;
  p.d = w.d;
  p.beta = beta;
  p.gamma = gamma;
  p.rho0 = B0.radius;
  p.kappa = kappa_of(B0);
  p.mode = mode;

  const long d = w.d;
  Rational size_bound = Rational(4) / beta;
  Rational kappa4 = pow_q(p.kappa, 4);
  Rational second = Rational(10000) * Rational(pow_z(Int(d), 6)) * kappa4;
  if (second > size_bound) size_bound = second;

  if (mode == ParamsMode::paper) {
    Int R = ceil_q(size_bound);
    if (!detail::r_gamma_condition(R, beta, gamma)) {
      // gallop then bisect for the least R satisfying the gamma condition
      Int lo = R, hi = R;
      Int step = 1;
      while (!detail::r_gamma_condition(hi, beta, gamma)) {
        lo = hi;
        hi += step;
        step *= 2;
      }
      while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (detail::r_gamma_condition(mid, beta, gamma))
          hi = mid;
        else
          lo = mid;
      }
      R = hi;
    }
    p.R = R;
    p.eps = Rational(1, 100) / Rational(pow_z(Int(d), 6)) / (p.kappa * p.kappa) /
            Rational(pow_z(R, static_cast<unsigned long>(20 * d * d))) * p.rho0;
  } else {
    if (!overrides) throw std::invalid_argument("derive_params: relaxed mode needs overrides");
    p.R = overrides->R;
    p.eps = overrides->eps;
    if (p.R < 2) throw std::invalid_argument("derive_params: R must be >= 2");
    if (p.eps <= 0) throw std::invalid_argument("derive_params: eps must be positive");
    p.waived_R_size = Rational(p.R) < size_bound;
    p.waived_R_gamma = !detail::r_gamma_condition(p.R, beta, gamma);
    Rational eps_formula = Rational(1, 100) / Rational(pow_z(Int(d), 6)) / (p.kappa * p.kappa) /
                           Rational(pow_z(p.R, static_cast<unsigned long>(20 * d * d))) * p.rho0;
    p.waived_eps = p.eps != eps_formula;
  }
  return p;
}

/// The unique n >= 0 with beta R^-n rho0 < rho(B) <= R^-n rho0, if any.
inline std::optional<long> classify_ball(const Ball& B, const StrategyParams& p) {
  Rational x = p.rho0;
  for (long n = 0;; ++n) {
    if (B.radius > x) return std::nullopt;  // gap above window n
    if (B.radius > p.beta * x) return n;
    x /= Rational(p.R);
  }
}

/// Smallest k whose denominator window [Hn^{1/(1+lambda)} R^{10d^2+(2k-4)d},
/// Hn^{1/(1+lambda)} R^{10d^2+(2k-2)d}] contains q (windows share endpoints;
/// smallest k wins the tie). Assumes q >= Hn^{1/(1+lambda)}.
inline long vb_k_for(const Int& q, const Rational& Hn, const StrategyParams& p, const Weight& w) {
  Rational inv_exp = Rational(1) / (1 + w.lambda);
  const long d = w.d;
  auto below_or_equal = [&](long e) {
    // q <= Hn^{1/(1+lambda)} R^e ?
    return radical_sum_sign({rational_term(Rational(q)),
                             power_term(-Rational(pow_z(p.R, static_cast<unsigned long>(e))),
                                        Hn, inv_exp)}) <= 0;
  };
  if (below_or_equal(10 * d * d)) return 1;
  for (long k = 2;; ++k) {
    if (below_or_equal(10 * d * d + (2 * k - 2) * d)) return k;
  }
}

/// Smallest k whose q-window contains q(P), given H_B(P) lands in the height
/// window of level n; none when the height window misses.
inline std::optional<long> vb_class(const Ball& B, const RationalPoint& P, long n,
                                    const StrategyParams& p, const Weight& w) {
  Rational H = height(B, P, w);
  if (H < p.H(n) || H > 2 * p.H(n + 1)) return std::nullopt;
  return vb_k_for(P.q, p.H(n), p, w);
}

namespace detail {

struct RatInterval {
  Rational lo, hi;
};

inline RatInterval ri_mul(const RatInterval& a, const RatInterval& b) {
  Rational v1 = a.lo * b.lo, v2 = a.lo * b.hi, v3 = a.hi * b.lo, v4 = a.hi * b.hi;
  Rational lo = v1, hi = v1;
  for (const Rational& v : {v2, v3, v4}) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

/// Enumerate reduced P with denominator q whose Delta_eps(P) meets B,
/// walking the s / p_i windows induced by B's coordinate ranges. Candidates
/// are filtered by the exact intersection test before fn sees them.
template <typename Fn>
void for_each_delta_candidate(const Ball& B, const Rational& eps, const Weight& w, const Int& q,
                              Budget& bud, Fn&& fn) {
  const int d = w.d;
  const Rational rho = B.radius;
  Rational hw_mu = upper_bound_eps_qpow(eps, q, w.mu_num(), w.mu_den());
  Rational hw_la = upper_bound_eps_qpow(eps, q, w.lambda_num(), w.lambda_den());
  Int s_lo = ceil_q(Rational(q) * (B.y() - rho) - hw_mu) - 1;
  Int s_hi = floor_q(Rational(q) * (B.y() + rho) + hw_mu) + 1;
  for (Int s = s_lo; s <= s_hi; ++s) {
    bud.charge();
    // T = qy - s range over B, clipped by the mu-window
    RatInterval T{Rational(q) * (B.y() - rho) - Rational(s),
                  Rational(q) * (B.y() + rho) - Rational(s)};
    if (T.lo < -hw_mu) T.lo = -hw_mu;
    if (T.hi > hw_mu) T.hi = hw_mu;
    if (T.lo > T.hi) continue;
    // per-coordinate windows for p_i over the (x_i, z_i, T) box
    std::vector<std::pair<Int, Int>> ranges(d - 1);
    bool ok = true;
    for (int i = 0; i < d - 1 && ok; ++i) {
      RatInterval tz = ri_mul(T, {B.z(i) - rho, B.z(i) + rho});
      Rational e_lo = Rational(q) * (B.x(i) - rho) - tz.hi;
      Rational e_hi = Rational(q) * (B.x(i) + rho) - tz.lo;
      Int p_lo = ceil_q(e_lo - hw_la) - 1;
      Int p_hi = floor_q(e_hi + hw_la) + 1;
      if (p_lo > p_hi) ok = false;
      ranges[i] = {p_lo, p_hi};
    }
    if (!ok) continue;
    VecZ pv(d - 1);
    for (int i = 0; i < d - 1; ++i) pv(i) = ranges[i].first;
    while (true) {
      bud.charge();
      Int g = gcd(q, abs(s));
      for (int i = 0; i < d - 1; ++i) g = gcd(g, abs(pv(i)));
      if (g == 1) {
        RationalPoint P;
        P.p = pv;
        P.s = s;
        P.q = q;
        if (delta_intersects_ball(P, eps, B, w)) {
          if (fn(P)) return;
        }
      }
      int i = d - 2;
      for (; i >= 0; --i) {
        if (pv(i) < ranges[i].second) {
          pv(i) += 1;
          for (int j = i + 1; j < d - 1; ++j) pv(j) = ranges[j].first;
          break;
        }
      }
      if (i < 0) break;
    }
  }
}

/// Smallest integer >= Hn^{a/b} * R^e, exactly: the value's b-th power is the
/// rational R^{eb} Hn^a, so its floor root comes from integer root isolation.
inline Int ceil_window_bound(const Rational& Hn, const Rational& inv_exp, const Int& R, long e) {
  long a = numerator(inv_exp).convert_to<long>();
  long b = denominator(inv_exp).convert_to<long>();
  Rational x = pow_q(Rational(pow_z(R, static_cast<unsigned long>(e))), b) * pow_q(Hn, a);
  const Int& num = numerator(x);
  const Int& den = denominator(x);
  Int f = iroot(num / den, static_cast<unsigned long>(b));
  while (pow_z(f + 1, static_cast<unsigned long>(b)) * den <= num) ++f;
  while (f > 0 && pow_z(f, static_cast<unsigned long>(b)) * den > num) --f;
  // f = floor(x^{1/b}); bump unless the root is exactly an integer
  if (pow_z(f, static_cast<unsigned long>(b)) * den == num) return f;
  return f + 1;
}

}  // namespace detail

/// Membership test for the pruned family at level n: no P in the level's
/// height window may have Delta_eps(P) meeting B. Level 0 is primal by
/// definition. parent_flag asserts B sits inside a primal ball of level n-1
/// (tracked by the caller's game history).
inline bool prime_check(const Ball& B, long n, const StrategyParams& p, const Weight& w,
                        bool parent_flag = true, Budget* budget = nullptr) {
  if (n == 0) return true;
  if (!parent_flag) return false;
  Budget local;
  Budget& bud = budget ? *budget : local;
  Rational inv_exp = Rational(1) / (1 + w.lambda);
  Int q_lo = detail::ceil_window_bound(p.H(n), inv_exp, p.R, 0);
  Int q_hi = floor_q(2 * p.H(n + 1));
  bool clean = true;
  for (Int q = q_lo; q <= q_hi && clean; ++q) {
    detail::for_each_delta_candidate(B, p.eps, w, q, bud, [&](const RationalPoint& P) {
      Rational H = height(B, P, w);
      if (H >= p.H(n) && H <= 2 * p.H(n + 1)) {
        clean = false;
        return true;  // stop enumeration
      }
      return false;
    });
  }
  return clean;
}

/// One member of the candidate family at level n+k: the witness pair and the
/// integer-coefficient hyperplane attached to the minimal-q witness.
struct EkRecord {
  long k = 1;
  Int e_k;                      // 10 d^2 for k = 1, 2d for k > 1
  AttachedHyperplane plane;     // on (x, y) coordinates of Q^d
  RationalPoint P0;
  Ball witness_ball;
  Rational omega;               // width bound, <= R^{-(n+k)} rho0

  /// Lift to R^{2d-1}: normal (a, b, 0, ..., 0), offset C.
  HyperplaneNbhd lifted(int d, const Rational& width) const {
    VecZ n = VecZ::Zero(2 * d - 1);
    for (int i = 0; i < d - 1; ++i) n(i) = plane.a(i);
    n(d - 1) = plane.b;
    return HyperplaneNbhd(n, plane.C, width);
  }
};

/// sigma for grid balls of level m: a rational whose square lies in
/// (beta R^-m rho0, R^-m rho0].
inline Rational grid_sigma(const StrategyParams& p, long m) {
  Rational X = p.level_radius(m);
  Interval s = iv_sqrt(Interval::exact(X, 96));
  Rational sig;
  mpfr_get_q(sig.backend().data(), s.lo.get());
  if (sig * sig > X || sig * sig <= p.beta * X)
    throw std::logic_error("grid_sigma: rounding failed to land in the level window");
  return sig;
}

/// Search for the minimal-q witness of the candidate family: B' ranges over
/// a z-grid of level-(n+k) balls inside B (spacing beta R^{-(n+k)} rho0 / 2),
/// P over denominators in the k-window with Delta_eps(P) meeting B. Grid
/// search is a documented approximation of the uncountable quantifier over
/// witness balls.
inline std::optional<EkRecord> find_Ek(const Ball& B, long n, long k, const StrategyParams& p,
                                       const Weight& w, Budget* budget = nullptr) {
  Budget local;
  Budget& bud = budget ? *budget : local;
  const long d = w.d;
  const long m = n + k;
  Rational inv_exp = Rational(1) / (1 + w.lambda);

  Int q_lo = k == 1 ? detail::ceil_window_bound(p.H(m), inv_exp, p.R, 0)
                    : detail::ceil_window_bound(p.H(m), inv_exp, p.R, 10 * d * d + (2 * k - 4) * d);
  Int q_hi = floor_q(2 * p.H(m + 1));
  if (q_lo > q_hi) return std::nullopt;
  if (q_lo < 1) q_lo = 1;

  Rational sigma = grid_sigma(p, m);
  Rational rho_prime = sigma * sigma;
  if (rho_prime >= B.radius) return std::nullopt;  // no level-m ball fits inside B
  Rational reach = B.radius - rho_prime;
  Rational h = p.beta * p.level_radius(m) / 2;

  std::optional<EkRecord> found;
  for (Int q = q_lo; q <= q_hi && !found; ++q) {
    detail::for_each_delta_candidate(B, p.eps, w, q, bud, [&](const RationalPoint& P) {
      // z-grid odometer over [z_i - reach, z_i + reach], spacing h
      std::vector<long> idx(d - 1, 0);
      long steps = (ceil_q(2 * reach / h)).convert_to<long>();
      while (true) {
        bud.charge();
        VecQ c = B.center;
        for (long i = 0; i < d - 1; ++i) {
          Rational zi = B.z(static_cast<int>(i)) - reach + Rational(idx[i]) * h;
          Rational zmax = B.z(static_cast<int>(i)) + reach;
          c(d + i) = zi < zmax ? zi : zmax;
        }
        Ball Bp = Ball::from_sigma(c, sigma);
        if (vb_class(Bp, P, m, p, w) == k) {
          EkRecord rec;
          rec.k = k;
          rec.e_k = k == 1 ? Int(10 * d * d) : Int(2 * d);
          rec.plane = attach_hyperplane(Bp, P, w);
          rec.P0 = P;
          rec.witness_ball = Bp;
          rec.omega = Rational(d + 1) * (1 + Rational(d - 1) * p.kappa) * p.eps / p.H(m);
          if (rec.omega > p.level_radius(m))
            throw std::logic_error("find_Ek: width bound exceeds the level radius");
          found = rec;
          return true;
        }
        long i = d - 2;
        for (; i >= 0; --i) {
          if (idx[i] < steps) {
            ++idx[i];
            for (long j = i + 1; j < d - 1; ++j) idx[j] = 0;
            break;
          }
        }
        if (i < 0) break;
      }
      return false;
    });
  }
  return found;
}

}  // namespace badflow

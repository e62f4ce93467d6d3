#pragma once

#include "badflow/geometry.hpp"
#include "badflow/radical.hpp"
#include "badflow/weight.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace badflow {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration budget shared by the searching operations. Counts candidate
/// evaluations; throws once exhausted.
struct Budget {
  long long remaining = 1'000'000'000;
  void charge(long long n = 1) {
    remaining -= n;
    if (remaining < 0) throw BudgetExceeded("enumeration budget exceeded");
  }
};

/// Reduced rational point (p/q, s/q) in Q^d: q > 0, gcd(p_1..p_{d-1}, s, q) = 1.
struct RationalPoint {
  VecZ p;
  Int s;
  Int q;

  int d() const { return static_cast<int>(p.size()) + 1; }
  Rational x(int i) const { return Rational(p(i), q); }
  Rational y() const { return Rational(s, q); }
  /// The point (p/q, s/q) as a vector in Q^d.
  VecQ coords() const {
    VecQ v(d());
    for (int i = 0; i + 1 < d(); ++i) v(i) = Rational(p(i), q);
    v(d() - 1) = Rational(s, q);
    return v;
  }
  bool operator==(const RationalPoint& o) const { return q == o.q && s == o.s && p == o.p; }
};

inline RationalPoint reduce_point(VecZ p_raw, Int s_raw, Int q_raw) {
  if (q_raw == 0) throw std::invalid_argument("reduce_point: zero denominator");
  Int g = abs(q_raw);
  g = gcd(g, abs(s_raw));
  for (Eigen::Index i = 0; i < p_raw.size(); ++i) g = gcd(g, abs(p_raw(i)));
  if (g == 0) g = 1;
  if (q_raw < 0) g = -g;
  RationalPoint P;
  P.p = VecZ(p_raw.size());
  for (Eigen::Index i = 0; i < p_raw.size(); ++i) P.p(i) = p_raw(i) / g;
  P.s = s_raw / g;
  P.q = q_raw / g;
  return P;
}

/// coeff * q^exp with rational exponent; the exact "(coefficient, power of q)"
/// pair the quality terms are reported in.
struct PowerOfQ {
  Rational coeff;
  Rational q_exp;
  Int q;

  RadTerm term() const { return power_term(coeff, Rational(q), q_exp); }
  double to_double() const { return term_to_double(term()); }
  std::string decimal(int digits = 30) const { return term_decimal(term(), digits); }
};

inline int compare_power_of_q(const PowerOfQ& a, const PowerOfQ& b) {
  return compare_terms(a.term(), b.term());
}

/// Quality terms of P at pt: term_y = q^mu |qy - s|,
/// term_x = q^lambda ||qx - p - (qy - s) z||_inf. Both nonnegative.
struct QualityWitness {
  RationalPoint P;
  PowerOfQ term_y;
  PowerOfQ term_x;

  PowerOfQ max_term() const { return compare_power_of_q(term_y, term_x) >= 0 ? term_y : term_x; }
};

inline QualityWitness quality(const RationalPoint& P, const VecQ& pt, const Weight& w) {
  if (pt.size() != 2 * w.d - 1 || P.d() != w.d)
    throw std::invalid_argument("quality: dimension mismatch");
  const int d = w.d;
  Rational y = pt(d - 1);
  Rational T = Rational(P.q) * y - Rational(P.s);
  Rational mx = 0;
  for (int i = 0; i < d - 1; ++i) {
    Rational v = abs_q(Rational(P.q) * pt(i) - Rational(P.p(i)) - T * pt(d + i));
    if (v > mx) mx = v;
  }
  return QualityWitness{P, PowerOfQ{abs_q(T), w.mu, P.q}, PowerOfQ{mx, w.lambda, P.q}};
}

namespace detail {

/// sign of coeff * q^{m/w} - eps for coeff >= 0 (pure rational: compare
/// coeff^w * q^m against eps^w).
inline int cmp_scaled_power_eps(const Rational& coeff, const Int& q, long m, long w,
                                const Rational& eps) {
  if (coeff == 0) return eps > 0 ? -1 : (eps == 0 ? 0 : 1);
  Rational lhs = pow_q(coeff, w);
  if (m >= 0)
    lhs *= Rational(pow_z(q, static_cast<unsigned long>(m)));
  else
    lhs /= Rational(pow_z(q, static_cast<unsigned long>(-m)));
  Rational rhs = pow_q(eps, w);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Conservative rational upper bound for eps * q^{-e}, e = m/w >= 0:
/// eps / floor(q^e), floor >= 1 for q >= 1.
inline Rational upper_bound_eps_qpow(const Rational& eps, const Int& q, long m, long w) {
  Int f = iroot(pow_z(q, static_cast<unsigned long>(m)), static_cast<unsigned long>(w));
  if (f < 1) f = 1;
  return eps / Rational(f);
}

}  // namespace detail

/// Both strict inequalities of Delta_eps(P) at pt, decided exactly.
inline bool delta_contains(const RationalPoint& P, const Rational& eps, const VecQ& pt,
                           const Weight& w) {
  if (eps <= 0) throw std::invalid_argument("delta_contains: eps must be positive");
  QualityWitness Q = quality(P, pt, w);
  return detail::cmp_scaled_power_eps(Q.term_y.coeff, P.q, w.mu_num(), w.mu_den(), eps) < 0 &&
         detail::cmp_scaled_power_eps(Q.term_x.coeff, P.q, w.lambda_num(), w.lambda_den(), eps) < 0;
}

namespace detail {

// Endpoint u + vl * (eps q^-lambda) + vm * (eps q^-mu) of a one-variable
// constraint in T = qy - s.
struct TBound {
  Rational u, vl, vm;
  bool strict = false;
};

struct TSystem {
  std::vector<TBound> lower, upper;
  bool infeasible = false;

  void add_lower(TBound b) { lower.push_back(std::move(b)); }
  void add_upper(TBound b) { upper.push_back(std::move(b)); }
};

inline int cmp_tbounds(const TBound& a, const TBound& b, const RadTerm& sl, const RadTerm& sm) {
  std::vector<RadTerm> terms;
  terms.push_back(rational_term(a.u - b.u));
  Rational dl = a.vl - b.vl, dm = a.vm - b.vm;
  if (dl != 0) terms.push_back(RadTerm{dl * sl.coeff, sl.radicand, sl.index});
  if (dm != 0) terms.push_back(RadTerm{dm * sm.coeff, sm.radicand, sm.index});
  return radical_sum_sign(std::move(terms));
}

inline bool tsystem_feasible(const TSystem& sys, const RadTerm& sl, const RadTerm& sm) {
  if (sys.infeasible) return false;
  for (const auto& l : sys.lower) {
    for (const auto& u : sys.upper) {
      int c = cmp_tbounds(l, u, sl, sm);
      if (c > 0) return false;
      if (c == 0 && (l.strict || u.strict)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exact emptiness decision for Delta_eps(P) cap B. The y-constraint and the
/// per-coordinate (x_i, z_i) box envelopes reduce to a one-variable linear
/// system in T = qy - s whose endpoints are rational combinations of
/// eps q^{-lambda} and eps q^{-mu}; feasibility is checked per sign branch.
inline bool delta_intersects_ball(const RationalPoint& P, const Rational& eps, const Ball& B,
                                  const Weight& w) {
  if (eps <= 0) throw std::invalid_argument("delta_intersects_ball: eps must be positive");
  if (B.d() != w.d || P.d() != w.d)
    throw std::invalid_argument("delta_intersects_ball: dimension mismatch");
  const int d = w.d;
  const Rational rho = B.radius;
  const Rational qQ(P.q);

  RadTerm sl = power_term(eps, Rational(P.q), -w.lambda);
  RadTerm sm = power_term(eps, Rational(P.q), -w.mu);

  Rational Tlo = qQ * (B.y() - rho) - Rational(P.s);
  Rational Thi = qQ * (B.y() + rho) - Rational(P.s);

  for (int branch : {+1, -1}) {
    detail::TSystem sys;
    // Ball y-range and branch sign (closed), mu-window (strict).
    sys.add_lower({Tlo, 0, 0, false});
    sys.add_upper({Thi, 0, 0, false});
    if (branch > 0) {
      sys.add_lower({0, 0, 0, false});
      sys.add_upper({0, 0, 1, true});  // T < eps q^-mu
    } else {
      sys.add_upper({0, 0, 0, false});
      sys.add_lower({0, 0, -1, true});  // T > -eps q^-mu
    }
    for (int i = 0; i < d - 1 && !sys.infeasible; ++i) {
      Rational A = qQ * (B.x(i) - rho) - Rational(P.p(i));
      Rational A2 = qQ * (B.x(i) + rho) - Rational(P.p(i));
      Rational k1 = B.z(i) + Rational(branch) * rho;
      Rational k2 = B.z(i) - Rational(branch) * rho;
      // f_min(T) = A - k1*T < eps q^-lambda
      if (k1 > 0) {
        sys.add_lower({A / k1, -1 / k1, 0, true});
      } else if (k1 < 0) {
        sys.add_upper({A / k1, -1 / k1, 0, true});
      } else if (radical_sum_sign({rational_term(A), RadTerm{-sl.coeff, sl.radicand, sl.index}}) >= 0) {
        sys.infeasible = true;
      }
      // f_max(T) = A2 - k2*T > -eps q^-lambda
      if (k2 > 0) {
        sys.add_upper({A2 / k2, 1 / k2, 0, true});
      } else if (k2 < 0) {
        sys.add_lower({A2 / k2, 1 / k2, 0, true});
      } else if (radical_sum_sign({rational_term(A2), RadTerm{sl.coeff, sl.radicand, sl.index}}) <= 0) {
        sys.infeasible = true;
      }
    }
    if (detail::tsystem_feasible(sys, sl, sm)) return true;
  }
  return false;
}

struct CertificateHolds {};
struct CertificateViolated {
  QualityWitness witness;
};
using CertificateResult = std::variant<CertificateHolds, CertificateViolated>;

inline bool certificate_holds(const CertificateResult& r) {
  return std::holds_alternative<CertificateHolds>(r);
}

/// Truncated membership test for S_eps(r): "holds" iff every rational P with
/// q(P) <= Q has quality max-term >= eps at pt. The search walks the closed
/// integer windows around qy (and per-coordinate centers) with one guard
/// integer on each side; non-reduced candidates are searched as-is and only
/// reported witnesses are reduced.
inline CertificateResult bad_certificate(const VecQ& pt, const Weight& w, const Rational& eps,
                                         const Int& Q, Budget* budget = nullptr) {
  if (eps <= 0) throw std::invalid_argument("bad_certificate: eps must be positive");
  if (Q < 1) throw std::invalid_argument("bad_certificate: Q must be >= 1");
  if (pt.size() != 2 * w.d - 1) throw std::invalid_argument("bad_certificate: dimension mismatch");
  const int d = w.d;
  Budget local;
  Budget& bud = budget ? *budget : local;

  for (Int q = 1; q <= Q; ++q) {
    Rational qy = Rational(q) * pt(d - 1);
    Rational hw_y = detail::upper_bound_eps_qpow(eps, q, w.mu_num(), w.mu_den());
    Int s_lo = ceil_q(qy - hw_y) - 1;
    Int s_hi = floor_q(qy + hw_y) + 1;
    for (Int s = s_lo; s <= s_hi; ++s) {
      bud.charge();
      Rational T = qy - Rational(s);
      if (detail::cmp_scaled_power_eps(abs_q(T), q, w.mu_num(), w.mu_den(), eps) >= 0) continue;
      // y-term is < eps; look for p making every coordinate term < eps.
      VecZ p(d - 1);
      bool ok = true;
      Rational hw_x = detail::upper_bound_eps_qpow(eps, q, w.lambda_num(), w.lambda_den());
      for (int i = 0; i < d - 1 && ok; ++i) {
        Rational center = Rational(q) * pt(i) - T * pt(d + i);
        Int lo = ceil_q(center - hw_x) - 1;
        Int hi = floor_q(center + hw_x) + 1;
        bool found = false;
        Rational best_dist;
        Int best_p;
        for (Int c = lo; c <= hi; ++c) {
          bud.charge();
          Rational dist = abs_q(center - Rational(c));
          if (detail::cmp_scaled_power_eps(dist, q, w.lambda_num(), w.lambda_den(), eps) < 0) {
            if (!found || dist < best_dist || (dist == best_dist && c < best_p)) {
              best_dist = dist;
              best_p = c;
            }
            found = true;
          }
        }
        if (!found) ok = false;
        else p(i) = best_p;
      }
      if (ok) {
        RationalPoint P = reduce_point(p, s, q);
        return CertificateViolated{quality(P, pt, w)};
      }
    }
  }
  return CertificateHolds{};
}

struct BestEpsilonResult {
  PowerOfQ value;        // exact min of the quality max-term over q <= Q
  QualityWitness argmin; // reduced witness attaining it
};

/// Minimum over reduced P with q(P) <= Q of the quality max-term; exact,
/// nonincreasing in Q.
inline BestEpsilonResult best_epsilon(const VecQ& pt, const Weight& w, const Int& Q,
                                      Budget* budget = nullptr) {
  if (Q < 1) throw std::invalid_argument("best_epsilon: Q must be >= 1");
  if (pt.size() != 2 * w.d - 1) throw std::invalid_argument("best_epsilon: dimension mismatch");
  const int d = w.d;
  Budget local;
  Budget& bud = budget ? *budget : local;

  std::optional<QualityWitness> best;
  auto better = [&](const QualityWitness& cand) {
    if (!best) return true;
    int c = compare_power_of_q(cand.max_term(), best->max_term());
    if (c != 0) return c < 0;
    if (cand.P.q != best->P.q) return cand.P.q < best->P.q;
    if (cand.P.s != best->P.s) return cand.P.s < best->P.s;
    for (Eigen::Index i = 0; i < cand.P.p.size(); ++i)
      if (cand.P.p(i) != best->P.p(i)) return cand.P.p(i) < best->P.p(i);
    return false;
  };

  for (Int q = 1; q <= Q; ++q) {
    Rational qy = Rational(q) * pt(d - 1);
    Int s0 = floor_q(qy);
    // Walk s outward from qy; the y-term alone eventually dominates the best.
    for (Int k = 0;; ++k) {
      for (Int s : {Int(s0 - k), Int(s0 + 1 + k)}) {
        bud.charge();
        Rational T = qy - Rational(s);
        VecZ p(d - 1);
        for (int i = 0; i < d - 1; ++i) {
          Rational center = Rational(q) * pt(i) - T * pt(d + i);
          Int c_near = floor_q(center);
          Rational d1 = abs_q(center - Rational(c_near));
          Rational d2 = abs_q(center - Rational(c_near + 1));
          p(i) = d2 < d1 ? c_near + 1 : c_near;
        }
        QualityWitness cand = quality(reduce_point(p, s, q), pt, w);
        if (better(cand)) best = cand;
      }
      if (best->max_term().coeff == 0) break;
      Rational r1 = abs_q(qy - Rational(s0 - k - 1));
      Rational r2 = abs_q(qy - Rational(s0 + k + 2));
      PowerOfQ ty{r1 < r2 ? r1 : r2, w.mu, q};
      if (compare_power_of_q(ty, best->max_term()) >= 0) break;
    }
    if (best->max_term().coeff == 0) break;
  }
  return BestEpsilonResult{best->max_term(), *best};
}

}  // namespace badflow

// Acceptance suite: one pass/fail line per criterion, exact tolerances pinned
// in code, wall-clock budgets enforced. Exit code = number of failures.

#include "badflow/dynamics.hpp"
#include "badflow/players.hpp"
#include "badflow/serialize.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace badflow;
using Clock = std::chrono::steady_clock;

namespace {

VecQ vecq(std::initializer_list<Rational> xs) {
  VecQ v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

Rational rand_q(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rational(num(rng), den(rng));
}

Weight rand_weight(std::mt19937_64& rng, int d) {
  if (d == 2) {
    static const Rational lam[] = {Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(3, 4)};
    Rational l = lam[rng() % 4];
    return Weight{2, l, 1 - l};
  }
  static const Rational mus[] = {Rational(1, 3), Rational(1, 4), Rational(1, 5)};
  Rational m = mus[rng() % 3];
  return Weight{3, (1 - m) / 2, m};
}

RationalPoint rand_point(std::mt19937_64& rng, int d, long qmax) {
  std::uniform_int_distribution<long> qd(1, qmax), pd(-2 * qmax, 2 * qmax);
  VecZ p(d - 1);
  for (int i = 0; i < d - 1; ++i) p(i) = pd(rng);
  return reduce_point(p, Int(pd(rng)), Int(qd(rng)));
}

Ball rand_ball(std::mt19937_64& rng, int d) {
  VecQ c(2 * d - 1);
  for (int i = 0; i < 2 * d - 1; ++i) c(i) = rand_q(rng, 12, 8);
  std::uniform_int_distribution<long> sd(3, 12);
  return Ball::from_sigma(c, Rational(1, sd(rng)));
}

// Independent exhaustive oracle for xi (no residue shortcuts).
Rational xi_oracle(const Ball& B, const RationalPoint& P, const Weight& w) {
  Int amax = floor_power(P.q, w.lambda);
  VecQ z = B.z_part();
  Rational zsum = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) zsum += abs_q(z(i));
  Int bmax = ceil_q(Rational(floor_power(P.q, w.mu) + 1) + B.sigma() + zsum * Rational(amax)) + 1;
  std::optional<Rational> best;
  VecZ a = VecZ::Constant(w.d - 1, -amax);
  while (true) {
    for (Int b = -bmax; b <= bmax; ++b) {
      if (!(a.isZero() && b == 0)) {
        Int lin = b * P.s;
        for (int i = 0; i < w.d - 1; ++i) lin += a(i) * P.p(i);
        if (lin % P.q == 0) {
          Rational m = abs_q(Rational(b) + dot_zq(a, z));
          if (cmp_power(m, P.q, w.mu, B.sigma()) != Ordering::GT) {
            Rational an = 0;
            for (int i = 0; i < w.d - 1; ++i)
              if (Rational v = Rational(abs(a(i))); v > an) an = v;
            Rational xi = an > m ? an : m;
            if (!best || xi < *best) best = xi;
          }
        }
      }
    }
    bool done = true;
    for (Eigen::Index i = a.size(); i-- > 0;) {
      if (a(i) < amax) {
        a(i) += 1;
        for (Eigen::Index j = i + 1; j < a.size(); ++j) a(j) = -amax;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return *best;
}

// Davenport-style cubic pair, truncated to 50 decimal digits (frozen from the
// pre-build oracle run; x* approximates 2 cos(2 pi / 7), y* = x*^2).
const char* kCubicX =
    "1558724504646833826312512210010599526580686827241/"
    "1250000000000000000000000000000000000000000000000";

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------- criteria 1+2

bool crit_dual_and_heights(std::string& detail, bool check_heights) {
  std::mt19937_64 rng(check_heights ? 811u : 810u);
  long long failures = 0;
  const long long trials = 100000;
  for (long long t = 0; t < trials; ++t) {
    int d = t % 2 ? 3 : 2;
    Weight w = rand_weight(rng, d);
    RationalPoint P = rand_point(rng, d, 60);
    Ball B = rand_ball(rng, d);
    try {
      DualVector dv = dual_search(B, P, w);
      if (check_heights) {
        Rational H = Rational(P.q) * dv.xi;
        if (H < Rational(P.q)) ++failures;
        if (cmp_power(dv.xi, P.q, w.lambda, Rational(0)) == Ordering::GT) ++failures;
      }
    } catch (const std::exception&) {
      ++failures;
    }
  }
  std::ostringstream os;
  os << trials << " random (B,P,w), q<=60, d in {2,3}, failures=" << failures;
  detail = os.str();
  return failures == 0;
}

// ------------------------------------------------------------------ criterion 3

bool crit_xi_minimality(std::string& detail) {
  std::mt19937_64 rng(803);
  long long failures = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    int d = t % 3 ? 2 : 3;
    Weight w = rand_weight(rng, d);
    RationalPoint P = rand_point(rng, d, 25);
    Ball B = rand_ball(rng, d);
    if (dual_search(B, P, w).xi != xi_oracle(B, P, w)) ++failures;
  }
  std::ostringstream os;
  os << trials << " instances q<=25 vs independent oracle, disagreements=" << failures;
  detail = os.str();
  return failures == 0;
}

// ------------------------------------------------------------------ criterion 4

bool crit_line_attachment(std::string& detail) {
  std::mt19937_64 rng(804);
  long long failures = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    int d = t % 2 ? 3 : 2;
    Weight w = rand_weight(rng, d);
    RationalPoint P = rand_point(rng, d, 40);
    Ball B = rand_ball(rng, d);
    DualVector dv = dual_search(B, P, w);
    LinePoint L = attach_line(B, P, w);
    bool ok = !(L.u == 0 && L.v.isZero());
    ok = ok && radical_sum_sign({rational_term(abs_q(L.u)),
                                 power_term(-Rational(2 * d) * dv.xi, Rational(P.q),
                                            -w.lambda - w.mu)}) <= 0;
    for (int i = 0; i < d - 1 && ok; ++i)
      ok = radical_sum_sign({rational_term(abs_q(L.v(i) - L.u * B.z(i))),
                             power_term(-Rational(2 * d), Rational(P.q), -w.lambda)}) <= 0;
    for (int i = 0; i < d - 1 && ok; ++i)
      ok = denominator((Rational(P.q) * L.v(i) - Rational(L.c * P.p(i))) / Rational(P.q)) == 1;
    ok = ok && denominator((Rational(P.q) * L.u - Rational(L.c * P.s)) / Rational(P.q)) == 1;
    if (!ok) ++failures;
  }
  std::ostringstream os;
  os << trials << " instances q<=40, bound+membership failures=" << failures;
  detail = os.str();
  return failures == 0;
}

// ------------------------------------------------------------------ criterion 5

bool crit_integrality(std::string& detail) {
  std::mt19937_64 rng(805);
  long long failures = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    int d = t % 2 ? 3 : 2;
    Weight w = rand_weight(rng, d);
    RationalPoint P = rand_point(rng, d, 40);
    Ball B = rand_ball(rng, d);
    AttachedHyperplane H = attach_hyperplane(B, P, w);  // throws if C non-integral
    if (functional_eval(H, P.coords()) != 0) ++failures;
    RationalPoint Pp = rand_point(rng, d, 60);
    if (denominator(Rational(Pp.q) * functional_eval(H, Pp.coords())) != 1) ++failures;
  }
  std::ostringstream os;
  os << trials << " instances, non-integral values=" << failures;
  detail = os.str();
  return failures == 0;
}

// ------------------------------------------------------------------ criterion 6

bool crit_parameters(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  Ball B0 = Ball::from_sigma(vecq({0, 0, 0}), Rational(1, 2));
  StrategyParams p = derive_params(B0, Rational(1, 3), Rational(1), w2, ParamsMode::paper);
  bool ok = p.kappa == Rational(5, 4);
  ok = ok && p.R == 1562500;
  ok = ok && p.eps == Rational(1, 40000) / Rational(pow_z(Int(1562500), 80));
  ok = ok && 2 * p.H(1) < 1;
  ok = ok && Rational(p.R) > 1 / p.beta;  // window disjointness
  // windows disjoint, stated directly: top of window n+1 <= bottom of window n
  for (long n = 0; n < 3 && ok; ++n)
    ok = p.level_radius(n + 1) <= p.beta * p.level_radius(n);
  detail = ok ? "kappa=5/4, R=1562500, eps=(1/40000)R^-80, 2H(1)<1, windows disjoint"
              : "parameter formula mismatch";
  return ok;
}

// ------------------------------------------------------------------ criterion 7

bool crit_window_exponent(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  Ball B0 = Ball::from_sigma(vecq({0, 0, 0}), Rational(1, 2));
  StrategyParams p = derive_params(B0, Rational(1, 3), Rational(1), w2, ParamsMode::paper);
  const long d = 2;
  bool ok = true;
  for (long k = 2; k <= 5 && ok; ++k) {
    // window endpoints: H = 2 H_{n+1}, q^{1+lambda} = H_n R^{(1+lambda) e_lo}:
    // the ratio is 2 R^{1 - (1+lambda) e_lo}; compare against 2 R^{-8d^2-2kd+1}.
    Rational e_lo = Rational(10 * d * d + (2 * k - 4) * d);
    Rational lhs_exp = 1 - (1 + w2.lambda) * e_lo;
    long rhs_exp = -8 * d * d - 2 * k * d + 1;
    // 2 R^{lhs} <= 2 R^{rhs}  <=>  1 <= R^{rhs - lhs}, decided by cmp_power
    Rational diff = Rational(rhs_exp) - lhs_exp;
    ok = cmp_power(Rational(1), p.R, numerator(diff).convert_to<long>(),
                   denominator(diff).convert_to<long>(), Rational(0)) != Ordering::GT;
    // and by the radical-sum route on the endpoint values themselves
    ok = ok && radical_sum_sign({power_term(2, Rational(p.R), lhs_exp),
                                 power_term(-2, Rational(p.R), Rational(rhs_exp))}) <= 0;
  }
  detail = ok ? "H/q^(1+lambda) <= 2R^(-8d^2-2kd+1) at window endpoints, k=2..5"
              : "window exponent inequality failed";
  return ok;
}

// ------------------------------------------------------------------ criterion 8

bool crit_nested_chains(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  std::mt19937_64 rng(808);
  int built = 0, counterexamples = 0, attempts = 0;
  while (built < 50 && attempts < 4000) {
    ++attempts;
    VecQ c0(3);
    for (int i = 0; i < 3; ++i) c0(i) = Rational((long)(rng() % 161) - 80, 409);
    Ball B0 = Ball::from_sigma(c0, Rational(1, 2));
    StrategyParams p = derive_params(B0, Rational(1, 2), Rational(1), w2, ParamsMode::relaxed,
                                     RelaxedOverrides{Int(16), Rational(1, 300000)});
    // chain B2 in B1 in B0 at levels 0,1,2 (window-top radii 1/8, 1/32)
    VecQ c1 = c0, c2 = c0;
    for (int i = 0; i < 3; ++i) {
      c1(i) += Rational((long)(rng() % 11) - 5, 100);
      c2(i) = c1(i) + Rational((long)(rng() % 11) - 5, 3000);
    }
    Ball B1 = Ball::from_sigma(c1, Rational(1, 8));
    Ball B2 = Ball::from_sigma(c2, Rational(1, 32));
    if (!ball_subset(B1, B0) || !ball_subset(B2, B1)) continue;
    if (classify_ball(B1, p) != 1 || classify_ball(B2, p) != 2) continue;
    if (!prime_check(B1, 1, p, w2)) continue;
    if (!prime_check(B2, 2, p, w2)) continue;
    ++built;
    // conclusion: every P with q^{1+lambda} <= 2 H_3, i.e. q <= (2H_3)^{2/3},
    // misses B2
    Int qmax;
    {
      Rational bound = pow_q(2 * p.H(3), 2);
      Int f = iroot(numerator(bound) / denominator(bound), 3);
      while (pow_q(Rational(f + 1), 3) <= bound) ++f;
      while (f > 0 && pow_q(Rational(f), 3) > bound) --f;
      qmax = f;
    }
    Budget bud{100'000'000};
    for (Int q = 1; q <= qmax; ++q) {
      detail::for_each_delta_candidate(B2, p.eps, w2, q, bud, [&](const RationalPoint&) {
        ++counterexamples;
        return true;
      });
    }
  }
  std::ostringstream os;
  os << built << " primal chains (levels 0-2), counterexamples=" << counterexamples;
  detail = os.str();
  return built == 50 && counterexamples == 0;
}

// ------------------------------------------------------------------ criterion 9

bool crit_candidate_hyperplane(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  std::ostringstream os;
  bool ok = true;

  // (a) fixtures satisfying the inequality flag of the k=1 colinearity case:
  // 30 d^4 kappa^2 eps R^{e_1+2} < 1 with enumerable windows at level 46.
  {
    Ball B0 = Ball::from_sigma(vecq({Rational(1, 2), Rational(1, 2), 0}), Rational(7, 10));
    StrategyParams p = derive_params(B0, Rational(1, 2), Rational(1), w2, ParamsMode::relaxed,
                                     RelaxedOverrides{Int(2), Rational(Int(1), pow_z(10, 16))});
    Rational flag = Rational(30 * 16) * p.kappa * p.kappa * p.eps *
                    Rational(pow_z(p.R, 10 * 4 + 1 + 1));
    ok = flag < 1;
    int fixtures = 0, members_checked = 0, samples_checked = 0;
    const long n = 46, k = 1, m = 47;
    Rational sigma_B = Rational(7, 10 * (Int(1) << 23));  // rho(B) = 0.49 * 2^-46
    for (const auto& [px, py, qq, z0] :
         {std::tuple{1L, 1L, 2L, Rational(1, 8)}, std::tuple{1L, 1L, 2L, Rational(-1, 5)},
          std::tuple{1L, 2L, 3L, Rational(0)}, std::tuple{2L, 1L, 3L, Rational(1, 16)},
          std::tuple{1L, 1L, 3L, Rational(1, 3)}, std::tuple{2L, 2L, 3L, Rational(-1, 7)}}) {
      if (!ok) break;
      VecQ c = vecq({Rational(px, qq), Rational(py, qq), z0});
      Ball B = Ball::from_sigma(c, sigma_B);
      ok = ok && ball_subset(B, B0) && classify_ball(B, p) == n;
      auto rec = find_Ek(B, n, k, p, w2);
      ok = ok && rec.has_value();
      if (!ok) break;
      ++fixtures;
      // every member P of the candidate set lies on the returned hyperplane;
      // enumerate members over the q-window
      Int q_lo = detail::ceil_window_bound(p.H(m), Rational(2, 3), p.R, 0);
      Int q_hi = floor_q(2 * p.H(m + 1));
      Budget bud{50'000'000};
      Rational gsig = grid_sigma(p, m);
      for (Int q = q_lo; q <= q_hi && ok; ++q) {
        detail::for_each_delta_candidate(B, p.eps, w2, q, bud, [&](const RationalPoint& P) {
          // is P a member for some grid ball? reuse the level test on a grid scan
          Rational reach = B.radius - gsig * gsig;
          Rational h = p.beta * p.level_radius(m) / 2;
          for (Rational z = B.z(0) - reach; z <= B.z(0) + reach; z += h) {
            Ball Bp = Ball::from_sigma(vecq({B.x(0), B.y(), z}), gsig);
            if (vb_class(Bp, P, m, p, w2) == k) {
              ++members_checked;
              if (functional_eval(rec->plane, P.coords()) != 0) ok = false;
              break;
            }
          }
          return false;
        });
      }
      // sample points of Delta_eps(P0) cap B': must lie in the slab of width
      // R^{-(n+k)} rho0 around the hyperplane
      HyperplaneNbhd slab = rec->lifted(2, p.level_radius(m));
      const Ball& Bp = rec->witness_ball;
      const RationalPoint& P0 = rec->P0;
      for (long iy : {-1L, 0L, 1L}) {
        for (long ix : {-1L, 0L, 1L}) {
          Rational ty = Rational(iy) * p.eps / (4 * P0.q * P0.q);
          Rational y = P0.y() + ty;
          Rational z = Bp.z(0);
          Rational x = P0.x(0) + ty * Rational(P0.q) * z + Rational(ix) * p.eps / (4 * P0.q * P0.q);
          VecQ pt = vecq({x, y, z});
          if (!delta_contains(P0, p.eps, pt, w2) || !ball_contains(Bp, pt)) {
            ok = false;
            continue;
          }
          ++samples_checked;
          if (!nbhd_contains(slab, pt)) ok = false;
        }
      }
    }
    os << "flag<1 fixtures=" << fixtures << " members=" << members_checked
       << " slab_samples=" << samples_checked;
  }

  // (b) relaxed: the constant-free intermediate bound on 1000 witness pairs.
  {
    std::mt19937_64 rng(809);
    Ball B0 = Ball::from_sigma(vecq({0, 0, 0}), Rational(1, 2));
    Rational kappa = kappa_of(B0);
    Rational eps(1, 1000);
    int pairs = 0;
    long long bound_failures = 0;
    while (pairs < 1000) {
      // big ball B inside B0, witness pair (B_j, P_j) with points of
      // Delta_eps(P_j) cap B constructed explicitly
      VecQ cB(3);
      for (int i = 0; i < 3; ++i) cB(i) = rand_q(rng, 10, 8) / 8;
      Ball B = Ball::from_sigma(cB, Rational(1, 16));
      if (!ball_subset(B, B0)) continue;
      std::uniform_int_distribution<long> qd(8, 40), off(-3, 3);
      bool built_pair = true;
      std::array<RationalPoint, 2> P;
      std::array<Ball, 2> Bj;
      for (int j = 0; j < 2 && built_pair; ++j) {
        long q = qd(rng);
        Int s = floor_q(Rational(q) * B.y() + Rational(1, 2));
        Rational t = Rational(off(rng), 4) * eps / Rational(floor_power(q, w2.mu) + 1);
        Rational y = (Rational(s) + t) / q;
        Rational z = B.z(0) + rand_q(rng, 1, 3) * B.radius / 2;
        Int px = floor_q(Rational(q) * B.x(0) - t * z + Rational(1, 2));
        Rational u = Rational(off(rng), 4) * eps / Rational(floor_power(q, w2.lambda) + 1);
        Rational x = (Rational(px) + t * z + u) / q;
        VecZ pv(1);
        pv(0) = px;
        RationalPoint Pj;
        Pj.p = pv;
        Pj.s = s;
        Pj.q = q;
        VecQ pt = vecq({x, y, z});
        if (!ball_contains(B, pt) || !delta_contains(Pj, eps, pt, w2)) {
          built_pair = false;
          break;
        }
        P[j] = Pj;
        VecQ cj = cB;
        for (int i = 0; i < 3; ++i) cj(i) += rand_q(rng, 1, 4) * B.radius / 2;
        Bj[j] = Ball::from_sigma(cj, Rational(1, 64));
        if (!ball_subset(Bj[j], B)) built_pair = false;
      }
      if (!built_pair) continue;
      ++pairs;
      DualVector a2 = dual_search(Bj[1], P[1], w2);
      AttachedHyperplane H2 = attach_hyperplane(Bj[1], P[1], w2);
      Rational F = abs_q(functional_eval(H2, P[0].coords()));
      Rational a2norm = 0;
      for (int i = 0; i < 1; ++i)
        if (Rational v = Rational(abs(a2.a(i))); v > a2norm) a2norm = v;
      Rational m2 = abs_q(Rational(a2.b) + dot_zq(a2.a, Bj[1].z_part()));
      // |F| <= d|a2|(eps q1^{-1-l} + eps q2^{-1-l} + 10 k rho(B))
      //      + |b2+z.a2|(eps q1^{-1-m} + eps q2^{-1-m} + 2 rho(B))
      std::vector<RadTerm> terms{rational_term(F)};
      Rational dc = Rational(2) * a2norm;
      terms.push_back(power_term(-dc * eps, Rational(P[0].q), -1 - w2.lambda));
      terms.push_back(power_term(-dc * eps, Rational(P[1].q), -1 - w2.lambda));
      terms.push_back(rational_term(-dc * 10 * kappa * B.radius));
      terms.push_back(power_term(-m2 * eps, Rational(P[0].q), -1 - w2.mu));
      terms.push_back(power_term(-m2 * eps, Rational(P[1].q), -1 - w2.mu));
      terms.push_back(rational_term(-m2 * 2 * B.radius));
      if (radical_sum_sign(std::move(terms)) > 0) ++bound_failures;
    }
    os << "; relaxed pairs=1000 bound_failures=" << bound_failures;
    ok = ok && bound_failures == 0;
  }
  detail = os.str();
  return ok;
}

// ----------------------------------------------------------------- criterion 10

bool crit_referee_soundness(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  std::mt19937_64 rng(810);
  long long violations = 0;
  int games = 0;
  for (int g = 0; g < 1000; ++g) {
    GameConfig c;
    c.variant = g % 2 ? GameVariant::HAG : GameVariant::HPG;
    c.beta = c.variant == GameVariant::HAG ? Rational(1, 4) : Rational(1, 2);
    c.gamma = g % 4 == 0 ? Rational(1, 2) : Rational(1);
    c.max_turns = 10;
    c.resolution = Rational(1, 1 << 12);
    VecQ center(3);
    for (int i = 0; i < 3; ++i) center(i) = rand_q(rng, 4, 8);
    Ball B0 = Ball::from_sigma(center, Rational(1, 2));
    unsigned long alice_seed = rng();
    auto alice = [alice_seed](const GameTrace& t) {
      std::mt19937_64 local(alice_seed + static_cast<unsigned long>(t.turn()));
      AliceMove mv;
      int n_slabs = t.config.variant == GameVariant::HAG ? 1 : 1 + static_cast<int>(local() % 3);
      for (int s = 0; s < n_slabs; ++s) {
        VecZ n(3);
        std::uniform_int_distribution<long> nz(-2, 2);
        for (int j = 0; j < 3; ++j) n(j) = nz(local);
        if (n.isZero()) n(0) = 1;
        // sometimes deliberately illegal (too wide): the referee must void it
        Rational width = local() % 5 == 0 ? t.current().radius
                                          : t.config.beta * t.current().radius / (2 * n_slabs);
        mv.push_back(HyperplaneNbhd(n, floor_q(dot_zq(n, t.current().center)), width));
      }
      return mv;
    };
    GameTrace t = run_game(alice, make_random_bob(rng()), c, B0, w2);
    ++games;
    // full post-hoc revalidation
    for (size_t i = 1; i < t.turns.size(); ++i) {
      if (!ball_subset(t.turns[i].ball, t.turns[i - 1].ball)) ++violations;
      if (t.turns[i].ball.radius < c.beta * t.turns[i - 1].ball.radius) ++violations;
      if (c.variant == GameVariant::HAG)
        for (const auto& L : t.turns[i - 1].alice)
          if (!ball_avoids_nbhd(t.turns[i].ball, L)) ++violations;
    }
    for (const auto& rec : t.turns) {
      if (rec.alice.empty()) continue;
      if (c.variant == GameVariant::HAG) {
        if (rec.alice.size() > 1 || rec.alice[0].delta > c.beta * rec.ball.radius) ++violations;
      } else {
        std::vector<RadTerm> terms;
        for (const auto& L : rec.alice) terms.push_back(power_term(1, L.delta, c.gamma));
        terms.push_back(power_term(-1, c.beta * rec.ball.radius, c.gamma));
        if (radical_sum_sign(std::move(terms)) > 0) ++violations;
      }
    }
  }
  // Alice's constructive family legality display, exact:
  // (3 R^-n rho0)^gamma (R^gamma - 1)^-1 <= (beta rho_{i_n})^gamma
  int displays = 0;
  {
    Ball B0 = Ball::from_sigma(vecq({Rational(1, 100), Rational(-1, 100), 0}), Rational(12, 25));
    StrategyParams p = derive_params(B0, Rational(1, 2), Rational(1), w2, ParamsMode::relaxed,
                                     RelaxedOverrides{Int(16), Rational(1, 10000)});
    GameConfig c;
    c.variant = GameVariant::HPG;
    c.beta = Rational(1, 2);
    c.gamma = 1;
    c.max_turns = 40;
    c.resolution = Rational(1, 10000);
    for (unsigned long seed = 1; seed <= 8; ++seed) {
      GameTrace t = run_game(make_constructive_alice(p, w2), make_random_bob(seed), c, B0, w2, p);
      for (const auto& rec : t.turns) {
        if (rec.alice.empty() || !rec.new_level || !rec.prime) continue;
        ++displays;
        long n = *rec.level;
        // (3 R^-n rho0)^g + (beta rho)^g - (beta rho)^g R^g <= 0
        Rational g = c.gamma;
        std::vector<RadTerm> terms{power_term(1, 3 * p.level_radius(n), g),
                                   power_term(1, c.beta * rec.ball.radius, g)};
        Rational brg = c.beta * rec.ball.radius;
        terms.push_back(power_term(-1, brg * pow_q(Rational(p.R), 1), g));
        // note: for gamma = 1 the term above is (beta rho) R; keep exact either way
        if (radical_sum_sign(std::move(terms)) > 0) ++violations;
      }
    }
  }
  std::ostringstream os;
  os << games << " fuzzed games revalidated, " << displays
     << " constructive families checked, violations=" << violations;
  detail = os.str();
  return violations == 0 && displays > 0;
}

// ----------------------------------------------------------------- criterion 11

bool crit_dichotomy(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  std::mt19937_64 rng(20260810);
  int decided = 0, games = 0;
  for (int g = 0; g < 100; ++g) {
    bool chaser_game = g < 50;
    VecQ c0(3);
    for (int i = 0; i < 3; ++i) c0(i) = Rational((long)(rng() % 21) - 10, 1000);
    Ball B0 = Ball::from_sigma(c0, Rational(12, 25));
    StrategyParams p = derive_params(B0, Rational(1, 2), Rational(1), w2, ParamsMode::relaxed,
                                     RelaxedOverrides{Int(16), Rational(1, 10000)});
    GameConfig cfg;
    cfg.variant = GameVariant::HPG;
    cfg.beta = Rational(1, 2);
    cfg.gamma = 1;
    cfg.max_turns = 40;
    cfg.resolution = Rational(1, 10000);
    auto alice = make_constructive_alice(p, w2, 400'000'000);
    GameTrace t;
    if (chaser_game) {
      auto rec = find_Ek(B0, 0, 1, p, w2);
      if (!rec) continue;
      VecQ target = vecq({rec->P0.x(0), rec->P0.y(), Rational((long)(rng() % 9) - 4, 25)});
      t = run_game(alice, make_chaser_bob(target), cfg, B0, w2, p);
    } else {
      t = run_game(alice, make_random_bob(7000 + g), cfg, B0, w2, p);
    }
    if (t.outcome == GameOutcome::bob_forfeit || t.outcome == GameOutcome::bob_stalled) continue;
    ++games;
    Verdict v = evaluate_win(t, w2, Rational(1, 10000000), Int(128));
    if (v.kind != VerdictKind::undecided) ++decided;
  }
  std::ostringstream os;
  os << games << " completed games (50 chaser / 50 random), decided=" << decided;
  detail = os.str();
  return games == 100 && decided == games;
}

// ----------------------------------------------------------------- criterion 12

bool crit_dynamics(std::string& detail) {
  const Weight w2{2, Rational(1, 2), Rational(1, 2)};
  std::ostringstream os;
  bool ok = true;

  // (a) rational collapse with exact witness
  {
    std::mt19937_64 rng(812);
    std::uniform_int_distribution<long> qd(1, 30), nd(-30, 30), td(0, 8);
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
      long q = qd(rng);
      UnipotentParams par{vecq({Rational(nd(rng), q)}), Rational(nd(rng), q),
                          vecq({rand_q(rng, 8, 8)})};
      VecQ win(3);
      win << Rational(q) * par.x(0), Rational(q) * par.y, Rational(q);
      VecQ mapped = u_inverse(par) * win;
      if (!(mapped(0) == 0 && mapped(1) == 0 && mapped(2) == q)) ++failures;
      Rational tt(td(rng), 2);
      SystoleTrace tr = orbit_trace(par, w2, {tt}, 96);
      Interval qe = iv_mul(Interval::exact(Rational(q), 192),
                           iv_exp(iv_neg(Interval::exact(tt, 192))));
      BigFloat lim(192);
      mpfr_mul_2si(lim.get(), qe.hi.get(), -60, MPFR_RNDU);
      mpfr_add(lim.get(), qe.hi.get(), lim.get(), MPFR_RNDU);
      if (cmp(tr.points[0].length.hi, lim) > 0) ++failures;
    }
    os << "collapse failures=" << failures;
    ok = ok && failures == 0;
  }

  // (b) cubic-pair regression: min systole over t in [0,15] stays above the
  // frozen floor 79/100 (first-run value ~0.79333 at t = 1035/199)
  {
    Rational x_star(kCubicX);
    UnipotentParams par{vecq({x_star}), x_star * x_star, vecq({Rational(0)})};
    std::vector<Rational> times;
    for (int i = 0; i < 200; ++i) times.push_back(Rational(15 * i, 199));
    SystoleTrace tr = orbit_trace(par, w2, times, 192);
    BoundednessVerdict v = boundedness_verdict(tr, Rational(79, 100));
    os << "; cubic-pair floor_holds=" << (v.escaped ? "no" : "yes");
    ok = ok && !v.escaped;
  }

  // (c) unimodular invariance + Hermite bound
  {
    std::mt19937_64 rng(813);
    int failures = 0;
    Interval hermite = iv_root(2, 6, 128);
    BigFloat lim(128);
    BigFloat tol = BigFloat::from_rational(Rational(1, 1000000), 128, MPFR_RNDU);
    mpfr_add(lim.get(), hermite.hi.get(), tol.get(), MPFR_RNDU);
    for (int t = 0; t < 50; ++t) {
      MatZ U = MatZ::Identity(3, 3);
      std::uniform_int_distribution<int> idx(0, 2), cd(-3, 3);
      for (int k = 0; k < 8; ++k) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        MatZ e = MatZ::Identity(3, 3);
        e(i, j) = cd(rng);
        U = U * e;
      }
      MatQ S = MatQ::Identity(3, 3);
      S(0, 0) = Rational(3, 2);
      S(2, 2) = Rational(2, 3);
      SystoleResult r1 = systole(U.cast<Rational>(), 96);
      if (cmp(r1.length.lo, lim) > 0) ++failures;  // Hermite for covolume 1
      SystoleResult r2 = systole(S * U.cast<Rational>(), 96);
      MatZ U2 = MatZ::Identity(3, 3);
      for (int k = 0; k < 6; ++k) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        MatZ e = MatZ::Identity(3, 3);
        e(i, j) = cd(rng);
        U2 = U2 * e;
      }
      SystoleResult r3 = systole(S * U.cast<Rational>() * U2.cast<Rational>(), 96);
      if (cmp(r2.length.lo, r3.length.hi) > 0 || cmp(r3.length.lo, r2.length.hi) > 0) ++failures;
    }
    os << "; unimodular/hermite failures=" << failures;
    ok = ok && failures == 0;
  }
  detail = os.str();
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "dual-vector existence", 120.0,
       [](std::string& d) { return crit_dual_and_heights(d, false); }},
      {2, "height bounds q <= H <= q^(1+lambda)", 120.0,
       [](std::string& d) { return crit_dual_and_heights(d, true); }},
      {3, "xi minimality vs independent oracle", 600.0, crit_xi_minimality},
      {4, "line attachment bounds and membership", 120.0, crit_line_attachment},
      {5, "integrality of C and q'F(P')", 600.0, crit_integrality},
      {6, "parameter formulas", 1.0, crit_parameters},
      {7, "window exponent inequality", 10.0, crit_window_exponent},
      {8, "primal chains empty of low candidates", 600.0, crit_nested_chains},
      {9, "candidate hyperplane colinearity and bound", 600.0, crit_candidate_hyperplane},
      {10, "referee soundness under fuzzing", 600.0, crit_referee_soundness},
      {11, "end-to-end dichotomy", 600.0, crit_dichotomy},
      {12, "dynamics correspondence", 180.0, crit_dynamics},
  };
  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_budget = secs <= c.budget_seconds;
    bool overall = pass && in_budget;
    if (!overall) ++failures;
    std::printf("[%s] criterion %2d (%s): %s (%.2fs, budget %.0fs)\n",
                overall ? "PASS" : "FAIL", c.id, c.name.c_str(), detail.c_str(), secs,
                c.budget_seconds);
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}

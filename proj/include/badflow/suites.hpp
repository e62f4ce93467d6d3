#pragma once

#include "badflow/dynamics.hpp"
#include "badflow/players.hpp"

#include <functional>
#include <map>
#include <random>

namespace badflow {

/// Named property suites behind `verify-lemmas`: each runs `trials` random
/// instances and reports the failure count. All suites are deterministic for
/// a fixed seed.
struct SuiteReport {
  long long trials = 0;
  long long failures = 0;
};

namespace suites_detail {

inline Rational rand_q(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rational(num(rng), den(rng));
}

inline Weight rand_weight(std::mt19937_64& rng, int d) {
  if (d == 2) {
    static const Rational lam[] = {Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(3, 4)};
    Rational l = lam[rng() % 4];
    return Weight{2, l, 1 - l};
  }
  static const Rational mus[] = {Rational(1, 3), Rational(1, 4), Rational(1, 5)};
  Rational m = mus[rng() % 3];
  return Weight{3, (1 - m) / 2, m};
}

inline RationalPoint rand_point(std::mt19937_64& rng, int d, long qmax) {
  std::uniform_int_distribution<long> qd(1, qmax), pd(-2 * qmax, 2 * qmax);
  VecZ p(d - 1);
  for (int i = 0; i < d - 1; ++i) p(i) = pd(rng);
  return reduce_point(p, Int(pd(rng)), Int(qd(rng)));
}

inline Ball rand_ball(std::mt19937_64& rng, int d) {
  VecQ c(2 * d - 1);
  for (int i = 0; i < 2 * d - 1; ++i) c(i) = rand_q(rng, 12, 8);
  std::uniform_int_distribution<long> sd(3, 12);
  return Ball::from_sigma(c, Rational(1, sd(rng)));
}

}  // namespace suites_detail

inline SuiteReport suite_dual_existence(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  for (long long i = 0; i < trials; ++i) {
    int d = i % 2 ? 3 : 2;
    Weight w = suites_detail::rand_weight(rng, d);
    RationalPoint P = suites_detail::rand_point(rng, d, 60);
    Ball B = suites_detail::rand_ball(rng, d);
    try {
      DualVector dv = dual_search(B, P, w);
      Int lin = dv.b * P.s;
      for (int j = 0; j < d - 1; ++j) lin += dv.a(j) * P.p(j);
      bool member = lin % P.q == 0 && !(dv.a.isZero() && dv.b == 0) &&
                    cmp_power(dv.xi, P.q, w.lambda, Rational(0)) != Ordering::GT;
      if (!member) ++rep.failures;
    } catch (const std::exception&) {
      ++rep.failures;
    }
  }
  return rep;
}

inline SuiteReport suite_height_bounds(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  for (long long i = 0; i < trials; ++i) {
    int d = i % 2 ? 3 : 2;
    Weight w = suites_detail::rand_weight(rng, d);
    RationalPoint P = suites_detail::rand_point(rng, d, 60);
    Ball B = suites_detail::rand_ball(rng, d);
    DualVector dv = dual_search(B, P, w);
    Rational H = Rational(P.q) * dv.xi;
    if (H < Rational(P.q) || cmp_power(dv.xi, P.q, w.lambda, Rational(0)) == Ordering::GT)
      ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_line_bounds(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  for (long long i = 0; i < trials; ++i) {
    int d = i % 2 ? 3 : 2;
    Weight w = suites_detail::rand_weight(rng, d);
    RationalPoint P = suites_detail::rand_point(rng, d, 40);
    Ball B = suites_detail::rand_ball(rng, d);
    DualVector dv = dual_search(B, P, w);
    LinePoint L = attach_line(B, P, w);
    bool ok = !(L.u == 0 && L.v.isZero());
    ok = ok && radical_sum_sign({rational_term(abs_q(L.u)),
                                 power_term(-Rational(2 * d) * dv.xi, Rational(P.q),
                                            -w.lambda - w.mu)}) <= 0;
    for (int j = 0; j < d - 1 && ok; ++j) {
      Rational dist = abs_q(L.v(j) - L.u * B.z(j));
      ok = radical_sum_sign({rational_term(dist),
                             power_term(-Rational(2 * d), Rational(P.q), -w.lambda)}) <= 0;
    }
    for (int j = 0; j < d - 1 && ok; ++j)
      ok = denominator((Rational(P.q) * L.v(j) - Rational(L.c * P.p(j))) / Rational(P.q)) == 1;
    ok = ok && denominator((Rational(P.q) * L.u - Rational(L.c * P.s)) / Rational(P.q)) == 1;
    if (!ok) ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_integrality(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  for (long long i = 0; i < trials; ++i) {
    int d = i % 2 ? 3 : 2;
    Weight w = suites_detail::rand_weight(rng, d);
    RationalPoint P = suites_detail::rand_point(rng, d, 40);
    Ball B = suites_detail::rand_ball(rng, d);
    AttachedHyperplane H = attach_hyperplane(B, P, w);
    RationalPoint Pp = suites_detail::rand_point(rng, d, 60);
    bool ok = functional_eval(H, P.coords()) == 0 &&
              denominator(Rational(Pp.q) * functional_eval(H, Pp.coords())) == 1;
    if (!ok) ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_delta_quality(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  for (long long i = 0; i < trials; ++i) {
    int d = i % 2 ? 3 : 2;
    Weight w = suites_detail::rand_weight(rng, d);
    RationalPoint P = suites_detail::rand_point(rng, d, 30);
    VecQ pt(2 * d - 1);
    for (int j = 0; j < 2 * d - 1; ++j) pt(j) = suites_detail::rand_q(rng, 40, 20);
    Rational eps = abs_q(suites_detail::rand_q(rng, 10, 40)) + Rational(1, 100);
    bool lt = compare_power_of_q(quality(P, pt, w).max_term(), PowerOfQ{eps, 0, P.q}) < 0;
    if (delta_contains(P, eps, pt, w) != lt) ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_scaling_monotonicity(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  std::uniform_int_distribution<long> qd(1, 20), sd(-6, 6), md(2, 5);
  for (long long i = 0; i < trials; ++i) {
    RationalPoint base;
    base.p = VecZ(1);
    base.p(0) = sd(rng);
    base.s = sd(rng);
    base.q = qd(rng);
    VecQ pt(3);
    for (int j = 0; j < 3; ++j) pt(j) = suites_detail::rand_q(rng, 30, 20);
    Weight w{2, Rational(1, 2), Rational(1, 2)};
    long m = md(rng);
    RationalPoint scaled;
    scaled.p = VecZ(1);
    scaled.p(0) = m * base.p(0);
    scaled.s = m * base.s;
    scaled.q = m * base.q;
    if (compare_power_of_q(quality(scaled, pt, w).max_term(), quality(base, pt, w).max_term()) < 0)
      ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_game_soundness(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  const Weight w{2, Rational(1, 2), Rational(1, 2)};
  for (long long i = 0; i < trials; ++i) {
    GameConfig c;
    c.variant = i % 2 ? GameVariant::HAG : GameVariant::HPG;
    c.beta = c.variant == GameVariant::HAG ? Rational(1, 4) : Rational(1, 2);
    c.gamma = 1;
    c.max_turns = 12;
    c.resolution = Rational(1, 1 << 12);
    VecQ center(3);
    for (int j = 0; j < 3; ++j) center(j) = suites_detail::rand_q(rng, 4, 8);
    Ball B0 = Ball::from_sigma(center, Rational(1, 2));
    auto alice = [&rng](const GameTrace& t) {
      AliceMove mv;
      std::mt19937_64 local(rng());
      int n_slabs = t.config.variant == GameVariant::HAG ? 1 : 2;
      for (int s = 0; s < n_slabs; ++s) {
        VecZ n(3);
        std::uniform_int_distribution<long> nz(-2, 2);
        for (int j = 0; j < 3; ++j) n(j) = nz(local);
        if (n.isZero()) continue;
        Rational width = t.config.beta * t.current().radius / (n_slabs + 1);
        mv.push_back(HyperplaneNbhd(n, floor_q(dot_zq(n, t.current().center)), width));
      }
      return mv;
    };
    GameTrace t = run_game(alice, make_random_bob(static_cast<unsigned long>(rng())), c, B0, w);
    // post-hoc revalidation
    bool ok = true;
    for (size_t j = 1; j < t.turns.size(); ++j) {
      ok = ok && ball_subset(t.turns[j].ball, t.turns[j - 1].ball);
      ok = ok && t.turns[j].ball.radius >= c.beta * t.turns[j - 1].ball.radius;
      if (c.variant == GameVariant::HAG)
        for (const auto& L : t.turns[j - 1].alice) ok = ok && ball_avoids_nbhd(t.turns[j].ball, L);
    }
    for (const auto& rec : t.turns) {
      if (rec.alice.empty() || rec.alice_voided) continue;
      if (c.variant == GameVariant::HAG) {
        ok = ok && rec.alice.size() == 1;
      } else {
        std::vector<RadTerm> terms;
        for (const auto& L : rec.alice) terms.push_back(power_term(1, L.delta, c.gamma));
        terms.push_back(power_term(-1, c.beta * rec.ball.radius, c.gamma));
        ok = ok && radical_sum_sign(std::move(terms)) <= 0;
      }
    }
    if (!ok) ++rep.failures;
  }
  return rep;
}

inline SuiteReport suite_order_consistency(long long trials, unsigned long seed) {
  std::mt19937_64 rng(seed);
  SuiteReport rep{trials, 0};
  std::uniform_int_distribution<long> qd(1, 40), md(-6, 6), wd(1, 5);
  for (long long i = 0; i < trials; ++i) {
    Rational c = suites_detail::rand_q(rng, 100, 20);
    Int q = qd(rng);
    long m = md(rng), ww = wd(rng);
    Rational shift = suites_detail::rand_q(rng, 4, 8);
    Interval target = iv_root(pow_q(Rational(q), m), static_cast<unsigned long>(ww), 128);
    target = iv_add(target, Interval::exact(shift, 128));
    double gap = std::abs(Interval::exact(c, 128).mid() - target.mid());
    if (gap <= std::ldexp(1.0, -40)) continue;
    Ordering ord = cmp_power(c, q, m, ww, shift);
    bool expect_lt = Interval::exact(c, 128).mid() < target.mid();
    if (ord == Ordering::EQ || (ord == Ordering::LT) != expect_lt) ++rep.failures;
  }
  return rep;
}

inline const std::map<std::string, std::function<SuiteReport(long long, unsigned long)>>&
suite_registry() {
  static const std::map<std::string, std::function<SuiteReport(long long, unsigned long)>> reg = {
      {"dual-existence", suite_dual_existence},
      {"height-bounds", suite_height_bounds},
      {"line-bounds", suite_line_bounds},
      {"integrality", suite_integrality},
      {"delta-quality", suite_delta_quality},
      {"scaling-monotonicity", suite_scaling_monotonicity},
      {"game-soundness", suite_game_soundness},
      {"order-consistency", suite_order_consistency},
  };
  return reg;
}

}  // namespace badflow

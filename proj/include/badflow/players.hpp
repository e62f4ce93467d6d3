#pragma once

#include "badflow/game.hpp"

#include <random>

namespace badflow {

inline AliceStrategy make_empty_alice() {
  return [](const GameTrace&) { return AliceMove{}; };
}

/// Alice's constructive strategy: at the first turn of each primal level n
/// declare the family of slabs around the candidate hyperplanes, widths
/// 3 R^{-(n+k)} rho0, truncated once the level radius drops below the game
/// resolution (narrower slabs cannot affect a finite play).
inline AliceStrategy make_constructive_alice(const StrategyParams& params, const Weight& w,
                                      long long budget_per_move = 200'000'000) {
  return [params, w, budget_per_move](const GameTrace& t) {
    AliceMove mv;
    const TurnRecord& rec = t.turns.back();
    if (!rec.level || !rec.new_level || !rec.prime) return mv;
    long n = *rec.level;
    Budget bud{budget_per_move};
    for (long k = 1; params.level_radius(n + k) >= t.config.resolution; ++k) {
      auto ek = find_Ek(rec.ball, n, k, params, w, &bud);
      if (ek) mv.push_back(ek->lifted(w.d, 3 * params.level_radius(n + k)));
    }
    return mv;
  };
}

namespace detail {

/// Shrink factor f (as a rational) with f^2 >= beta, applied to sigma so the
/// radius stays a rational square.
inline Rational default_sigma_factor(const Rational& beta) {
  if (beta <= Rational(1, 4)) return Rational(1, 2);
  if (beta <= Rational(841, 1681)) return Rational(29, 41);  // ~ sqrt(1/2)
  if (beta <= Rational(9, 16)) return Rational(3, 4);
  return Rational(9, 10);  // covers beta <= 81/100
}

inline Rational clamp(const Rational& v, const Rational& lo, const Rational& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

/// Smallest axis shift making the ball avoid the slab, scanning signed axis
/// directions; exact verification after a rational upper bound for the
/// irrational slab width.
inline std::optional<Ball> shift_to_avoid(const Ball& b, const HyperplaneNbhd& L,
                                          const Ball& parent) {
  // delta |n|_2 is rational exactly when |n|_2^2 is a perfect square; then the
  // minimal legal shift is attained. Otherwise round the bound up a hair.
  Rational root;
  Rational slab = perfect_power(L.norm2_sq(), 2, &root)
                      ? L.delta * root
                      : rational_above(power_term(L.delta, L.norm2_sq(), Rational(1, 2)), 192) +
                            Rational(1, Int(1) << 64);
  Rational W = b.radius * L.norm1() + slab;
  Rational v = dot_zq(L.normal, b.center) - Rational(L.offset);
  std::optional<Ball> best;
  Rational best_shift;
  for (Eigen::Index j = 0; j < b.center.size(); ++j) {
    if (L.normal(j) == 0) continue;
    Rational nj(L.normal(j));
    for (int side : {+1, -1}) {
      Rational target = side > 0 ? W : -W;
      Rational tshift = (target - v) / nj;
      VecQ c = b.center;
      c(j) += tshift;
      // keep the shifted ball inside the parent
      c(j) = clamp(c(j), parent.center(j) - (parent.radius - b.radius),
                   parent.center(j) + (parent.radius - b.radius));
      Ball cand = Ball::from_sigma(c, b.sigma());
      if (!ball_subset(cand, parent) || !ball_avoids_nbhd(cand, L)) continue;
      Rational shift = abs_q(c(j) - b.center(j));
      if (!best || shift < best_shift) {
        best = cand;
        best_shift = shift;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Bob shrinking concentrically by a fixed sigma factor; ignores slabs.
inline BobStrategy make_concentric_bob(std::optional<Rational> sigma_factor = std::nullopt) {
  return [sigma_factor](const GameTrace& t, const AliceMove&) {
    const Ball& cur = t.current();
    Rational f = sigma_factor ? *sigma_factor : detail::default_sigma_factor(t.config.beta);
    return Ball::from_sigma(cur.center, cur.sigma() * f);
  };
}

/// Bob steering toward a target point as closely as legality allows;
/// deterministic. In the absolute game a blocking slab is dodged by the
/// minimal legal axis shift.
inline BobStrategy make_chaser_bob(VecQ target, std::optional<Rational> sigma_factor = std::nullopt) {
  return [target, sigma_factor](const GameTrace& t, const AliceMove& active) {
    const Ball& cur = t.current();
    if (target.size() != cur.center.size())
      throw std::invalid_argument("chaser bob: target dimension mismatch");
    Rational f = sigma_factor ? *sigma_factor : detail::default_sigma_factor(t.config.beta);
    Rational sigma = cur.sigma() * f;
    Rational reach = cur.radius - sigma * sigma;
    VecQ c(cur.center.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) = detail::clamp(target(i), cur.center(i) - reach, cur.center(i) + reach);
    Ball cand = Ball::from_sigma(c, sigma);
    if (t.config.variant == GameVariant::HAG) {
      for (const auto& L : active) {
        if (ball_avoids_nbhd(cand, L)) continue;
        auto shifted = detail::shift_to_avoid(cand, L, cur);
        if (!shifted) throw NoLegalMove("chaser bob: no legal dodge");
        cand = *shifted;
      }
      for (const auto& L : active)
        if (!ball_avoids_nbhd(cand, L)) throw NoLegalMove("chaser bob: conflicting slabs");
    }
    return cand;
  };
}

/// Bob choosing uniformly from a rational grid of legal centers;
/// deterministic for a fixed seed.
inline BobStrategy make_random_bob(unsigned long seed,
                                   std::optional<Rational> sigma_factor = std::nullopt) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, sigma_factor](const GameTrace& t, const AliceMove& active) {
    const Ball& cur = t.current();
    Rational f = sigma_factor ? *sigma_factor : detail::default_sigma_factor(t.config.beta);
    Rational sigma = cur.sigma() * f;
    Rational reach = cur.radius - sigma * sigma;
    std::uniform_int_distribution<long> grid(-12, 12);
    for (int attempt = 0; attempt < 80; ++attempt) {
      VecQ c(cur.center.size());
      for (Eigen::Index i = 0; i < c.size(); ++i)
        c(i) = cur.center(i) + Rational(grid(*rng), 12) * reach;
      Ball cand = Ball::from_sigma(c, sigma);
      bool ok = true;
      if (t.config.variant == GameVariant::HAG) {
        for (const auto& L : active)
          if (!ball_avoids_nbhd(cand, L)) ok = false;
      }
      if (ok) return cand;
    }
    throw NoLegalMove("random bob: no legal center found");
  };
}

}  // namespace badflow

#pragma once

#include "badflow/strategy.hpp"

#include <functional>

namespace badflow {

enum class GameVariant { HAG, HPG };

struct NoLegalMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  GameVariant variant = GameVariant::HPG;
  Rational beta{1, 2};
  Rational gamma{1};     // HPG only
  long max_turns = 64;
  Rational resolution{1, 100000};
  long stall_turns = 64;

  void validate() const {
    if (variant == GameVariant::HAG) {
      if (!(beta > 0 && beta < Rational(1, 3)))
        throw std::invalid_argument("GameConfig: HAG requires beta in (0, 1/3)");
    } else {
      if (!(beta > 0 && beta < 1))
        throw std::invalid_argument("GameConfig: HPG requires beta in (0, 1)");
      if (!(gamma > 0)) throw std::invalid_argument("GameConfig: HPG requires gamma > 0");
    }
    if (max_turns < 0 || resolution <= 0)
      throw std::invalid_argument("GameConfig: bad horizon");
  }
};

using AliceMove = std::vector<HyperplaneNbhd>;

struct TurnRecord {
  Ball ball;                 // Bob's ball B_i
  AliceMove alice;           // family declared after seeing B_i (post-validation)
  bool alice_voided = false; // an illegal family was replaced by the empty move
  std::optional<long> level; // window index of rho(B_i), when params are known
  bool new_level = false;    // this turn is i_n for level n
  bool prime = false;        // level is in the primal prefix
};

enum class GameOutcome {
  in_progress,
  resolution_reached,
  max_turns_reached,
  bob_forfeit,
  bob_stalled,
};

enum class VerdictKind { undecided, alice_by_certificate, alice_by_neighborhood };

struct Verdict {
  VerdictKind kind = VerdictKind::undecided;
  long turn = -1;  // neighborhood branch: turn that declared the catching slab
  long k = -1;     // index of the slab within that turn's family (1-based)
};

/// Full record of one play; doubles as the state handed to strategies.
struct GameTrace {
  GameConfig config;
  std::optional<StrategyParams> params;
  Weight w;
  std::vector<TurnRecord> turns;
  std::map<long, long> first_turn_at_level;  // i_n
  std::set<long> prime_levels;               // the primal prefix
  GameOutcome outcome = GameOutcome::in_progress;
  VecQ final_point;
  Verdict verdict;
  bool alice_budget_error = false;
  bool referee_budget_error = false;

  const Ball& current() const { return turns.back().ball; }
  long turn() const { return static_cast<long>(turns.size()) - 1; }
};

using AliceStrategy = std::function<AliceMove(const GameTrace&)>;
using BobStrategy = std::function<Ball(const GameTrace&, const AliceMove&)>;

namespace detail {

inline bool alice_move_legal(const GameTrace& t, const AliceMove& mv) {
  const Rational rho = t.current().radius;
  if (t.config.variant == GameVariant::HAG) {
    if (mv.size() > 1) return false;
    return mv.empty() || mv[0].delta <= t.config.beta * rho;
  }
  if (mv.empty()) return true;
  std::vector<RadTerm> terms;
  for (const auto& L : mv) terms.push_back(power_term(1, L.delta, t.config.gamma));
  terms.push_back(power_term(-1, t.config.beta * rho, t.config.gamma));
  return radical_sum_sign(std::move(terms)) <= 0;
}

inline bool bob_move_legal(const GameTrace& t, const AliceMove& active, const Ball& next) {
  const Ball& cur = t.current();
  if (!ball_subset(next, cur)) return false;
  if (next.radius < t.config.beta * cur.radius) return false;
  if (t.config.variant == GameVariant::HAG) {
    for (const auto& L : active)
      if (!ball_avoids_nbhd(next, L)) return false;
  }
  return true;
}

inline void record_level(GameTrace& t, Budget* budget) {
  if (!t.params) return;
  TurnRecord& rec = t.turns.back();
  auto lvl = classify_ball(rec.ball, *t.params);
  rec.level = lvl;
  if (!lvl) return;
  long n = *lvl;
  if (t.first_turn_at_level.count(n)) return;
  t.first_turn_at_level[n] = t.turn();
  rec.new_level = true;
  bool parent = n == 0 || t.prime_levels.count(n - 1) > 0;
  bool prime = false;
  try {
    prime = prime_check(rec.ball, n, *t.params, t.w, parent, budget);
  } catch (const BudgetExceeded&) {
    t.referee_budget_error = true;
    prime = false;
  }
  rec.prime = prime;
  if (prime) t.prime_levels.insert(n);
}

}  // namespace detail

/// One referee round: validate Alice's family against B_i (illegal families
/// are voided, not fatal), then Bob's reply (illegal replies forfeit).
/// Returns false when the game ended on Bob's move.
inline bool referee_step(GameTrace& t, AliceMove alice_family, const Ball& bob_reply,
                         Budget* budget = nullptr) {
  if (t.outcome != GameOutcome::in_progress) throw std::logic_error("referee_step: game over");
  TurnRecord& rec = t.turns.back();
  if (detail::alice_move_legal(t, alice_family)) {
    rec.alice = std::move(alice_family);
  } else {
    rec.alice.clear();
    rec.alice_voided = true;
  }
  if (!detail::bob_move_legal(t, rec.alice, bob_reply)) {
    t.outcome = GameOutcome::bob_forfeit;
    return false;
  }
  t.turns.push_back(TurnRecord{bob_reply, {}, false, std::nullopt, false, false});
  detail::record_level(t, budget);
  return true;
}

/// Absolute-game round: Alice declares at most one slab of width <= beta rho_i.
inline bool hag_step(GameTrace& t, const std::optional<HyperplaneNbhd>& alice_move,
                     const Ball& bob_reply, Budget* budget = nullptr) {
  AliceMove mv;
  if (alice_move) mv.push_back(*alice_move);
  return referee_step(t, std::move(mv), bob_reply, budget);
}

/// Potential-game round: Alice declares a family with sum(delta^gamma)
/// <= (beta rho_i)^gamma; Bob needs no avoidance.
inline bool hpg_step(GameTrace& t, AliceMove alice_family, const Ball& bob_reply,
                     Budget* budget = nullptr) {
  return referee_step(t, std::move(alice_family), bob_reply, budget);
}

inline GameTrace start_game(const GameConfig& config, const Ball& B0, const Weight& w,
                            std::optional<StrategyParams> params = std::nullopt,
                            Budget* budget = nullptr) {
  config.validate();
  GameTrace t;
  t.config = config;
  t.params = std::move(params);
  t.w = w;
  t.turns.push_back(TurnRecord{B0, {}, false, std::nullopt, false, false});
  detail::record_level(t, budget);
  return t;
}

/// Drive a full play. Alice budget errors downgrade her move to the empty
/// family and are flagged; Bob's NoLegalMove forfeits.
inline GameTrace run_game(const AliceStrategy& alice, const BobStrategy& bob,
                          const GameConfig& config, const Ball& B0, const Weight& w,
                          std::optional<StrategyParams> params = std::nullopt,
                          Budget* budget = nullptr) {
  GameTrace t = start_game(config, B0, w, std::move(params), budget);
  long last_new_level_turn = 0;
  while (true) {
    if (t.current().radius < config.resolution) {
      t.outcome = GameOutcome::resolution_reached;
      break;
    }
    if (t.turn() >= config.max_turns) {
      t.outcome = GameOutcome::max_turns_reached;
      break;
    }
    AliceMove mv;
    try {
      mv = alice(t);
    } catch (const BudgetExceeded&) {
      t.alice_budget_error = true;
      mv.clear();
    }
    Ball reply = t.current();
    bool forfeited = false;
    try {
      // Bob sees the validated family.
      AliceMove effective = detail::alice_move_legal(t, mv) ? mv : AliceMove{};
      reply = bob(t, effective);
    } catch (const NoLegalMove&) {
      forfeited = true;
    }
    if (forfeited) {
      if (detail::alice_move_legal(t, mv))
        t.turns.back().alice = mv;
      else
        t.turns.back().alice_voided = true;
      t.outcome = GameOutcome::bob_forfeit;
      break;
    }
    if (!referee_step(t, std::move(mv), reply, budget)) break;
    if (t.turns.back().new_level) last_new_level_turn = t.turn();
    if (t.params && t.turn() - last_new_level_turn > config.stall_turns) {
      t.outcome = GameOutcome::bob_stalled;
      break;
    }
  }
  t.final_point = t.current().center;
  return t;
}

/// Finite-horizon win verdict: the final point either certifies membership in
/// the truncated target set, or lies inside a declared slab; otherwise the
/// play is honestly undecided.
inline Verdict evaluate_win(const GameTrace& trace, const Weight& w, const Rational& eps,
                            const Int& Q, Budget* budget = nullptr) {
  Verdict v;
  if (trace.turns.empty()) return v;
  const VecQ& pt = trace.turns.back().ball.center;
  if (certificate_holds(bad_certificate(pt, w, eps, Q, budget))) {
    v.kind = VerdictKind::alice_by_certificate;
    return v;
  }
  for (long i = 0; i < static_cast<long>(trace.turns.size()); ++i) {
    const auto& family = trace.turns[i].alice;
    for (long k = 0; k < static_cast<long>(family.size()); ++k) {
      if (nbhd_contains(family[k], pt)) {
        v.kind = VerdictKind::alice_by_neighborhood;
        v.turn = i;
        v.k = k + 1;
        return v;
      }
    }
  }
  return v;
}

}  // namespace badflow

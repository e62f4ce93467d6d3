#pragma once

#include "badflow/attachments.hpp"
#include "badflow/game.hpp"

#include <json.hpp>

#include <string>

namespace badflow {

using Json = nlohmann::ordered_json;

inline std::string q_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational q_parse(const std::string& s) {
  if (s.find('/') == std::string::npos) return Rational(Int(s));
  return Rational(s);
}

inline Json vecq_json(const VecQ& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(q_str(v(i)));
  return a;
}

inline Json vecz_json(const VecZ& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i).str());
  return a;
}

inline Json ball_json(const Ball& b) {
  Json j;
  j["center"] = vecq_json(b.center);
  j["rho"] = q_str(b.radius);
  if (b.sqrt_radius) j["sigma"] = q_str(*b.sqrt_radius);
  return j;
}

inline Json nbhd_json(const HyperplaneNbhd& L) {
  Json j;
  j["normal"] = vecz_json(L.normal);
  j["offset"] = L.offset.str();
  j["delta"] = q_str(L.delta);
  return j;
}

inline Json power_of_q_json(const PowerOfQ& t) {
  Json j;
  j["coeff"] = q_str(t.coeff);
  j["q_exp"] = q_str(t.q_exp);
  return j;
}

inline Json witness_json(const QualityWitness& w) {
  Json j;
  j["p"] = vecz_json(w.P.p);
  j["s"] = w.P.s.str();
  j["q"] = w.P.q.str();
  j["term_y"] = power_of_q_json(w.term_y);
  j["term_x"] = power_of_q_json(w.term_x);
  return j;
}

inline Json weight_json(const Weight& w) {
  Json j;
  j["d"] = w.d;
  j["lambda"] = q_str(w.lambda);
  j["mu"] = q_str(w.mu);
  return j;
}

inline Json params_json(const StrategyParams& p) {
  Json j;
  j["d"] = p.d;
  j["beta"] = q_str(p.beta);
  j["gamma"] = q_str(p.gamma);
  j["rho0"] = q_str(p.rho0);
  j["kappa"] = q_str(p.kappa);
  j["R"] = p.R.str();
  j["eps"] = q_str(p.eps);
  j["mode"] = p.mode == ParamsMode::paper ? "paper" : "relaxed";
  j["waived"] = Json{{"R_size", p.waived_R_size},
                     {"R_gamma", p.waived_R_gamma},
                     {"eps_formula", p.waived_eps}};
  return j;
}

inline std::string outcome_str(GameOutcome o) {
  switch (o) {
    case GameOutcome::in_progress: return "in_progress";
    case GameOutcome::resolution_reached: return "resolution_reached";
    case GameOutcome::max_turns_reached: return "max_turns_reached";
    case GameOutcome::bob_forfeit: return "bob_forfeit";
    case GameOutcome::bob_stalled: return "bob_stalled";
  }
  return "?";
}

inline std::string verdict_str(VerdictKind k) {
  switch (k) {
    case VerdictKind::undecided: return "undecided";
    case VerdictKind::alice_by_certificate: return "alice_by_certificate";
    case VerdictKind::alice_by_neighborhood: return "alice_by_neighborhood";
  }
  return "?";
}

inline Json trace_json(const GameTrace& t) {
  Json j;
  Json cfg;
  cfg["variant"] = t.config.variant == GameVariant::HAG ? "HAG" : "HPG";
  cfg["beta"] = q_str(t.config.beta);
  if (t.config.variant == GameVariant::HPG) cfg["gamma"] = q_str(t.config.gamma);
  cfg["max_turns"] = t.config.max_turns;
  cfg["resolution"] = q_str(t.config.resolution);
  j["config"] = cfg;
  j["params"] = t.params ? params_json(*t.params) : Json(nullptr);
  Json turns = Json::array();
  for (const auto& rec : t.turns) {
    Json r;
    r["ball"] = ball_json(rec.ball);
    Json fam = Json::array();
    for (const auto& L : rec.alice) fam.push_back(nbhd_json(L));
    r["alice"] = fam;
    Json flags;
    flags["alice_voided"] = rec.alice_voided;
    if (rec.level) flags["level"] = *rec.level;
    flags["new_level"] = rec.new_level;
    flags["prime"] = rec.prime;
    r["flags"] = flags;
    turns.push_back(r);
  }
  j["turns"] = turns;
  j["outcome"] = outcome_str(t.outcome);
  j["final_point"] = vecq_json(t.final_point);
  Json v;
  v["kind"] = verdict_str(t.verdict.kind);
  if (t.verdict.kind == VerdictKind::alice_by_neighborhood) {
    v["turn"] = t.verdict.turn;
    v["k"] = t.verdict.k;
  }
  j["verdict"] = v;
  j["alice_budget_error"] = t.alice_budget_error;
  j["referee_budget_error"] = t.referee_budget_error;
  return j;
}

inline VecQ parse_point(const std::string& csv, int expect_dim = -1) {
  std::vector<Rational> vals;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t next = csv.find(',', pos);
    std::string tok = csv.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!tok.empty()) vals.push_back(q_parse(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (expect_dim >= 0 && static_cast<int>(vals.size()) != expect_dim)
    throw std::invalid_argument("parse_point: expected " + std::to_string(expect_dim) + " coordinates");
  VecQ v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

/// "d:lambda:mu", e.g. "2:1/2:1/2".
inline Weight parse_weight(const std::string& s) {
  size_t a = s.find(':');
  size_t b = s.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw std::invalid_argument("parse_weight: expected d:lambda:mu");
  return Weight(std::stoi(s.substr(0, a)), q_parse(s.substr(a + 1, b - a - 1)),
                q_parse(s.substr(b + 1)));
}

}  // namespace badflow

#include "badflow/serialize.hpp"
#include "badflow/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace badflow;

namespace {

struct OutputSink {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

Ball make_ball(const std::string& center_csv, const std::string& sigma, int dim) {
  return Ball::from_sigma(parse_point(center_csv, dim), q_parse(sigma));
}

int cmd_params(const std::string& weight_s, const std::string& center, const std::string& sigma,
               const std::string& beta, const std::string& gamma, const std::string& mode,
               const std::string& R_over, const std::string& eps_over, OutputSink& out) {
  Weight w = parse_weight(weight_s);
  Ball B0 = make_ball(center, sigma, 2 * w.d - 1);
  StrategyParams p;
  if (mode == "paper") {
    p = derive_params(B0, q_parse(beta), q_parse(gamma), w, ParamsMode::paper);
  } else if (mode == "relaxed") {
    if (R_over.empty() || eps_over.empty())
      throw CLI::ValidationError("--mode relaxed requires --R and --eps");
    p = derive_params(B0, q_parse(beta), q_parse(gamma), w, ParamsMode::relaxed,
                      RelaxedOverrides{Int(R_over), q_parse(eps_over)});
  } else {
    throw CLI::ValidationError("--mode must be paper or relaxed");
  }
  out.stream() << params_json(p).dump(2) << "\n";
  return 0;
}

int cmd_certify(const std::string& weight_s, const std::string& point, const std::string& eps,
                const std::string& Q, long long budget, OutputSink& out) {
  Weight w = parse_weight(weight_s);
  VecQ pt = parse_point(point, 2 * w.d - 1);
  Budget bud{budget};
  Json j;
  try {
    auto r = bad_certificate(pt, w, q_parse(eps), Int(Q), &bud);
    if (certificate_holds(r)) {
      j["verdict"] = "holds";
      out.stream() << j.dump(2) << "\n";
      return 0;
    }
    j["verdict"] = "violated";
    j["violated_by"] = witness_json(std::get<CertificateViolated>(r).witness);
    out.stream() << j.dump(2) << "\n";
    return 1;
  } catch (const BudgetExceeded&) {
    j["verdict"] = "budget_exceeded";
    out.stream() << j.dump(2) << "\n";
    return 3;
  }
}

int cmd_orbit(const std::string& weight_s, const std::string& point, const std::string& times_csv,
              long precision, OutputSink& out) {
  Weight w = parse_weight(weight_s);
  VecQ pt = parse_point(point, 2 * w.d - 1);
  UnipotentParams params;
  params.x = pt.segment(0, w.d - 1);
  params.y = pt(w.d - 1);
  params.z = pt.segment(w.d, w.d - 1);
  VecQ tv = parse_point(times_csv);
  std::vector<Rational> times;
  for (Eigen::Index i = 0; i < tv.size(); ++i) times.push_back(tv(i));
  SystoleTrace tr = orbit_trace(params, w, times, precision);
  std::ostream& os = out.stream();
  os << "t,systole";
  for (int i = 0; i <= w.d; ++i) os << ",v" << i + 1;
  os << ",precision_bits\n";
  MatQ Ui = u_inverse(params);
  for (const auto& ppt : tr.points) {
    os << ppt.t.convert_to<double>() << "," << ppt.length.mid();
    // witness vector g_t u^{-1} x, evaluated at the trace precision
    VecQ ux = Ui * ppt.coeffs.cast<Rational>();
    FlowMatrix g = make_flow(w, ppt.t, ppt.bits);
    for (int i = 0; i <= w.d; ++i)
      os << "," << iv_scale(g.diag[i], ux(i), ppt.bits).mid();
    os << "," << ppt.bits << "\n";
  }
  return 0;
}

int cmd_attach(const std::string& weight_s, const std::string& center, const std::string& sigma,
               const std::string& point_s, OutputSink& out) {
  Weight w = parse_weight(weight_s);
  Ball B = make_ball(center, sigma, 2 * w.d - 1);
  VecQ raw = parse_point(point_s, w.d + 1);  // p_1..p_{d-1}, s, q as integers
  VecZ p(w.d - 1);
  for (int i = 0; i < w.d - 1; ++i) {
    if (denominator(raw(i)) != 1) throw CLI::ValidationError("--P entries must be integers");
    p(i) = numerator(raw(i));
  }
  RationalPoint P = reduce_point(p, numerator(raw(w.d - 1)), numerator(raw(w.d)));
  DualVector dv = dual_search(B, P, w);
  AttachedHyperplane H = attach_hyperplane(B, P, w);
  LinePoint L = attach_line(B, P, w);
  Json j;
  j["a"] = vecz_json(dv.a);
  j["b"] = dv.b.str();
  j["xi"] = q_str(dv.xi);
  j["H"] = q_str(Rational(P.q) * dv.xi);
  j["C"] = H.C.str();
  j["v"] = vecq_json(L.v);
  j["u"] = q_str(L.u);
  j["c"] = L.c.str();
  out.stream() << j.dump(2) << "\n";
  return 0;
}

struct PlayOptions {
  std::string weight = "2:1/2:1/2";
  std::string variant = "HPG";
  std::string beta = "1/2";
  std::string gamma = "1";
  std::string center = "0,0,0";
  std::string sigma = "1/2";
  std::string alice = "empty";
  std::string bob = "concentric";
  std::string target = "";
  std::string mode = "relaxed";
  std::string R = "16";
  std::string eps = "1/10000";
  std::string eval_eps = "1/10000000";
  std::string eval_Q = "128";
  std::string resolution = "1/10000";
  long max_turns = 64;
  unsigned long seed = 1;
  long long budget = 200'000'000;
  bool with_params = true;
};

int cmd_play(const PlayOptions& o, OutputSink& out) {
  Weight w = parse_weight(o.weight);
  Ball B0 = make_ball(o.center, o.sigma, 2 * w.d - 1);
  GameConfig cfg;
  cfg.variant = o.variant == "HAG" ? GameVariant::HAG : GameVariant::HPG;
  cfg.beta = q_parse(o.beta);
  cfg.gamma = q_parse(o.gamma);
  cfg.max_turns = o.max_turns;
  cfg.resolution = q_parse(o.resolution);

  std::optional<StrategyParams> params;
  if (o.with_params) {
    if (o.mode == "paper")
      params = derive_params(B0, cfg.beta, cfg.gamma, w, ParamsMode::paper);
    else
      params = derive_params(B0, cfg.beta, cfg.gamma, w, ParamsMode::relaxed,
                             RelaxedOverrides{Int(o.R), q_parse(o.eps)});
  }

  AliceStrategy alice;
  if (o.alice == "constructive") {
    if (!params) throw CLI::ValidationError("--alice constructive requires strategy parameters");
    alice = make_constructive_alice(*params, w, o.budget);
  } else if (o.alice == "empty") {
    alice = make_empty_alice();
  } else {
    throw CLI::ValidationError("--alice must be constructive or empty");
  }

  BobStrategy bob;
  if (o.bob == "chaser") {
    if (o.target.empty()) throw CLI::ValidationError("--bob chaser requires --target");
    bob = make_chaser_bob(parse_point(o.target, 2 * w.d - 1));
  } else if (o.bob == "random") {
    bob = make_random_bob(o.seed);
  } else if (o.bob == "concentric") {
    bob = make_concentric_bob();
  } else {
    throw CLI::ValidationError("--bob must be chaser, random or concentric");
  }

  Budget bud{o.budget};
  GameTrace t = run_game(alice, bob, cfg, B0, w, params, &bud);
  t.verdict = evaluate_win(t, w, q_parse(o.eval_eps), Int(o.eval_Q));
  out.stream() << trace_json(t).dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, long long trials, unsigned long seed, OutputSink& out) {
  Json report = Json::array();
  long long total_failures = 0;
  auto run_one = [&](const std::string& name) {
    auto it = suite_registry().find(name);
    if (it == suite_registry().end()) throw CLI::ValidationError("unknown suite: " + name);
    SuiteReport r = it->second(trials, seed);
    total_failures += r.failures;
    Json j;
    j["suite"] = name;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    report.push_back(j);
  };
  if (suite == "all") {
    for (const auto& [name, fn] : suite_registry()) run_one(name);
  } else {
    run_one(suite);
  }
  out.stream() << report.dump(2) << "\n";
  return total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact hyperplane-game and weighted-approximation toolkit"};
  app.require_subcommand(1);

  OutputSink out;
  app.add_option("--out", out.path, "write output to this file instead of stdout");

  std::string weight = "2:1/2:1/2";
  app.add_option("--weight", weight, "weight as d:lambda:mu, e.g. 2:1/2:1/2");

  int rc = 0;

  auto* params_cmd = app.add_subcommand("params", "derive strategy parameters");
  std::string p_center = "0,0,0", p_sigma = "1/2", p_beta = "1/3", p_gamma = "1",
              p_mode = "paper", p_R, p_eps;
  params_cmd->add_option("--center", p_center, "center of B0");
  params_cmd->add_option("--sigma", p_sigma, "sqrt radius of B0");
  params_cmd->add_option("--beta", p_beta, "game parameter beta");
  params_cmd->add_option("--gamma", p_gamma, "game parameter gamma");
  params_cmd->add_option("--mode", p_mode, "paper | relaxed");
  params_cmd->add_option("--R", p_R, "relaxed-mode R override");
  params_cmd->add_option("--eps", p_eps, "relaxed-mode eps override");
  params_cmd->callback([&] { rc = cmd_params(weight, p_center, p_sigma, p_beta, p_gamma, p_mode, p_R, p_eps, out); });

  auto* certify_cmd = app.add_subcommand("certify", "truncated membership certificate");
  std::string c_point, c_eps = "1/100", c_Q = "100";
  long long c_budget = 1'000'000'000;
  certify_cmd->add_option("--point", c_point, "point x_1..x_{d-1},y,z_1..z_{d-1}")->required();
  certify_cmd->add_option("--eps", c_eps, "scale eps");
  certify_cmd->add_option("--Q", c_Q, "denominator bound");
  certify_cmd->add_option("--budget", c_budget, "enumeration budget");
  certify_cmd->callback([&] { rc = cmd_certify(weight, c_point, c_eps, c_Q, c_budget, out); });

  auto* orbit_cmd = app.add_subcommand("orbit", "systole trace of the diagonal-flow orbit");
  std::string o_point, o_times = "0,1,2,3,4,5";
  long o_prec = 192;
  orbit_cmd->add_option("--point", o_point, "point x,y,z")->required();
  orbit_cmd->add_option("--times", o_times, "comma-separated times (rationals)");
  orbit_cmd->add_option("--precision", o_prec, "certification bits");
  orbit_cmd->callback([&] { rc = cmd_orbit(weight, o_point, o_times, o_prec, out); });

  auto* attach_cmd = app.add_subcommand("attach", "dual vector, hyperplane and line for (B, P)");
  std::string a_center = "0,0,0", a_sigma = "1/10", a_P;
  attach_cmd->add_option("--center", a_center, "ball center");
  attach_cmd->add_option("--sigma", a_sigma, "ball sqrt radius");
  attach_cmd->add_option("--P", a_P, "rational point p_1..p_{d-1},s,q")->required();
  attach_cmd->callback([&] { rc = cmd_attach(weight, a_center, a_sigma, a_P, out); });

  auto* play_cmd = app.add_subcommand("play", "run a refereed game");
  PlayOptions po;
  play_cmd->add_option("--variant", po.variant, "HAG | HPG");
  play_cmd->add_option("--beta", po.beta, "beta");
  play_cmd->add_option("--gamma", po.gamma, "gamma (HPG)");
  play_cmd->add_option("--center", po.center, "center of B0");
  play_cmd->add_option("--sigma", po.sigma, "sqrt radius of B0");
  play_cmd->add_option("--alice", po.alice, "constructive | empty");
  play_cmd->add_option("--bob", po.bob, "chaser | random | concentric");
  play_cmd->add_option("--target", po.target, "chaser target point");
  play_cmd->add_option("--mode", po.mode, "paper | relaxed");
  play_cmd->add_option("--R", po.R, "relaxed R");
  play_cmd->add_option("--eps", po.eps, "relaxed eps");
  play_cmd->add_option("--eval-eps", po.eval_eps, "verdict eps");
  play_cmd->add_option("--eval-Q", po.eval_Q, "verdict denominator bound");
  play_cmd->add_option("--resolution", po.resolution, "stop radius");
  play_cmd->add_option("--max-turns", po.max_turns, "turn limit");
  play_cmd->add_option("--seed", po.seed, "random-bob seed");
  play_cmd->add_option("--budget", po.budget, "strategy enumeration budget");
  play_cmd->callback([&] {
    po.weight = weight;
    rc = cmd_play(po, out);
  });

  auto* verify_cmd = app.add_subcommand("verify-lemmas", "run named property suites");
  std::string v_suite = "all";
  long long v_trials = 1000;
  unsigned long v_seed = 20240810;
  verify_cmd->add_option("--suite", v_suite, "suite name or 'all'");
  verify_cmd->add_option("--trials", v_trials, "trials per suite");
  verify_cmd->add_option("--seed", v_seed, "rng seed");
  verify_cmd->callback([&] { rc = cmd_verify(v_suite, v_trials, v_seed, out); });

  for (CLI::App* sc : app.get_subcommands({})) {
    sc->fallthrough();
    sc->set_config("--config", "", "TOML config file (flags win on conflict)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

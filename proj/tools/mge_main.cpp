// Copyright 2026 The MGE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mge/cases.hpp"
#include "mge/dsl.hpp"
#include "mge/loader.hpp"

namespace {

using namespace mge;

constexpr int kExitHolds = 0;
constexpr int kExitError = 1;
constexpr int kExitFails = 2;

struct CommonOpts {
  std::string game_path;
  std::vector<std::string> profile_labels;
  std::string epsilon = "0";
  std::string mode = "exact";
  uint64_t seed = 0;
  bool seed_set = false;
  int64_t samples = 10000;
  double confidence = 0.99;
  std::string out_path;
  std::string format = "json";
  std::string class_path;  // side-loaded candidate class
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_profile = true) {
  cmd->add_option("game", o->game_path, "game file (JSON)")->required();
  if (with_profile)
    cmd->add_option("--profile", o->profile_labels,
                    "machine labels, one per player")
        ->delimiter(',')
        ->required();
  cmd->add_option("--mode", o->mode, "exact | sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  auto* seed = cmd->add_option("--seed", o->seed, "sampled-mode seed");
  seed->each([o](const std::string&) { o->seed_set = true; });
  cmd->add_option("--samples", o->samples, "sampled-mode sample count");
  cmd->add_option("--confidence", o->confidence, "sampled-mode confidence");
  cmd->add_option("--out", o->out_path, "write the report to this file");
  cmd->add_option("--format", o->format, "json | human")
      ->check(CLI::IsMember({"json", "human"}));
  cmd->add_option("--class", o->class_path,
                  "side-loaded candidate class file (JSON)");
}

EvalMode make_mode(const CommonOpts& o) {
  if (o.mode == "exact") return EvalMode::exact_mode();
  if (!o.seed_set)
    throw MgeError("sampled mode requires an explicit --seed");
  return EvalMode::sampled(o.seed, o.samples, o.confidence);
}

void emit(const CommonOpts& o, const Json& doc, const std::string& human) {
  std::string text =
      o.format == "human" ? human : doc.dump(2) + "\n";
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out_path);
    out << text;
  }
}

CandidateClass candidates_for(const GameSpec& game,
                              const std::string& class_path = "") {
  CandidateClass cls;
  if (!class_path.empty()) {
    // Side-loaded class file: {"label": ..., "players": [[labels...]...]};
    // labels resolve against the game's machines, inline DSL is accepted too.
    std::ifstream in(class_path);
    if (!in) throw SchemaError("cannot open class file '" + class_path + "'");
    Json doc = Json::parse(in);
    cls.label = doc.value("label", class_path);
    for (const auto& row : doc.at("players")) {
      std::vector<MachineProgram> progs;
      for (const auto& entry : row) {
        std::string text = entry.get<std::string>();
        if (text.find('\n') != std::string::npos)
          progs.push_back(parse_program(text));
        else
          progs.push_back(game.machine(text));
      }
      cls.per_player.push_back(std::move(progs));
    }
    return cls;
  }
  if (game.candidates) {
    cls.label = game.candidates->label;
    for (const auto& labels : game.candidates->per_player) {
      std::vector<MachineProgram> progs;
      for (const auto& l : labels) progs.push_back(game.machine(l));
      cls.per_player.push_back(std::move(progs));
    }
  } else {
    cls.label = "machine_class";
    std::vector<MachineProgram> progs;
    for (const auto& l : game.machine_class) progs.push_back(game.machine(l));
    cls.per_player.assign(game.player_count, progs);
  }
  return cls;
}

int finish_report(const CommonOpts& o, const EquilibriumReport& rep) {
  emit(o, report_to_json(rep), report_to_human(rep));
  return rep.verdict_holds ? kExitHolds : kExitFails;
}

struct UniversalBundle {
  std::vector<GameSpec> family;
  MediatorSpec f, f_prime;
  StrategyProfile protocol;
  std::vector<Coalition> coalitions;
  SpeedupSpec p;
  Rat epsilon;
  CandidateClass candidates;
  int zprime_cap = 3;
};

UniversalBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open bundle '" + path + "'");
  Json doc = Json::parse(in);
  UniversalBundle b;
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  for (const auto& g : doc.at("family")) {
    if (g.is_string())
      b.family.push_back(load_game_file((dir / g.get<std::string>()).string()));
    else
      b.family.push_back(load_game(g));
  }
  if (b.family.empty()) throw SchemaError("bundle has an empty family");
  // Mediators are parsed through a one-off game wrapper to reuse the schema.
  auto parse_mediator = [&](const Json& mj) {
    Json wrapper = game_to_json(b.family.front());
    wrapper["mediator"] = mj;
    return *load_game(wrapper).mediator;
  };
  b.f = parse_mediator(doc.at("f"));
  b.f_prime = parse_mediator(doc.at("f_prime"));
  for (const auto& text : doc.at("protocol"))
    b.protocol.assignment.push_back(parse_program(text.get<std::string>()));
  for (const auto& row : doc.at("coalitions")) {
    Coalition z;
    for (const auto& v : row) z.push_back(v.get<int>());
    std::sort(z.begin(), z.end());
    b.coalitions.push_back(std::move(z));
  }
  b.p.p = parse_expr(doc.value("p", "t"));
  b.p.homogeneous = doc.value("homogeneous", true);
  b.p.label = doc.value("p", "t");
  b.epsilon = rat_from_string(doc.value("epsilon", "0"));
  b.zprime_cap = doc.value("zprime_cap", 3);
  b.candidates.label = "bundle candidates";
  if (doc.contains("candidates")) {
    for (const auto& row : doc.at("candidates")) {
      std::vector<MachineProgram> progs;
      for (const auto& l : row) {
        std::string label = l.get<std::string>();
        bool found = false;
        for (const auto& p : b.protocol.assignment)
          if (p.label == label) {
            progs.push_back(p);
            found = true;
          }
        if (!found) progs.push_back(b.family.front().machine(label));
      }
      b.candidates.per_player.push_back(std::move(progs));
    }
  } else {
    b.candidates = candidates_for(b.family.front());
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"machine game engine: metered strategies, exact equilibria"};
  app.require_subcommand(1);

  CommonOpts eval_o, nash_o, robust_o, coal_o, solve_o;
  std::string eval_subject = "1";
  std::string eval_transcript;
  auto* eval = app.add_subcommand("eval-utility", "expected utility");
  add_common(eval, &eval_o);
  eval->add_option("--subject", eval_subject,
                   "player index or coalition like 1,2");
  eval->add_option("--transcript", eval_transcript,
                   "dump one mediated transcript to this file");

  auto* nash = app.add_subcommand("check-nash", "epsilon-Nash check");
  add_common(nash, &nash_o);
  nash->add_option("--eps", nash_o.epsilon, "tolerance as p/q");

  std::string robust_p = "t";
  bool robust_homog = true;
  auto* robust = app.add_subcommand("check-robust", "p-robust check");
  add_common(robust, &robust_o);
  robust->add_option("--eps", robust_o.epsilon, "tolerance as p/q");
  robust->add_option("--p", robust_p, "speedup p(n,t) as an expression");
  robust->add_flag("--homogeneous,!--no-homogeneous", robust_homog,
                   "p(n,0)=0 flag");

  std::string coal_spec;
  auto* coal = app.add_subcommand("check-coalition", "Z-safe check");
  add_common(coal, &coal_o);
  coal->add_option("--eps", coal_o.epsilon, "tolerance as p/q");
  coal->add_option("--coalitions", coal_spec,
                   "semicolon-separated member lists, e.g. 1;2;1,2")
      ->required();

  CommonOpts uni_o;
  std::string bundle_path;
  auto* uni =
      app.add_subcommand("check-universal", "universal implementation check");
  uni->add_option("bundle", bundle_path, "bundle file (JSON)")->required();
  uni->add_option("--out", uni_o.out_path, "write the report to this file");
  uni->add_option("--format", uni_o.format, "json | human")
      ->check(CLI::IsMember({"json", "human"}));

  CommonOpts suni_o;
  std::string sbundle_path;
  auto* suni = app.add_subcommand("check-strong-universal",
                                  "strong universal implementation check");
  suni->add_option("bundle", sbundle_path, "bundle file (JSON)")->required();
  suni->add_option("--out", suni_o.out_path, "write the report to this file");
  suni->add_option("--format", suni_o.format, "json | human")
      ->check(CLI::IsMember({"json", "human"}));

  std::vector<std::string> solve_base;
  bool assume_cheap = false, free_rand = false, emit_lifted = false;
  std::string solve_eps;
  int64_t solve_cap = 20000;
  auto* solve = app.add_subcommand("solve", "equilibrium for cheap games");
  add_common(solve, &solve_o, /*with_profile=*/false);
  solve->add_option("--base", solve_base, "machine base labels")
      ->delimiter(',')
      ->required();
  solve->add_flag("--assume-cheap", assume_cheap,
                  "verify utilities ignore complexity and reduce");
  solve->add_flag("--free-randomization", free_rand,
                  "same reduction; lifted machines are charged per base");
  solve->add_option("--regret-eps", solve_eps,
                    "use regret minimization with this epsilon");
  solve->add_option("--iteration-cap", solve_cap,
                    "fictitious-play iteration cap");
  solve->add_flag("--emit-lifted", emit_lifted,
                  "include lifted sampler machines in DSL form");

  std::string case_name;
  std::vector<std::string> case_params;
  std::string export_dir;
  CommonOpts case_o;
  std::map<std::string, std::string> named_params;
  auto* runcase = app.add_subcommand("run-case", "run a paper case study");
  runcase->add_option("name", case_name, "case name")->required();
  runcase->add_option("--param", case_params, "key=value overrides");
  for (const char* key : {"N", "delta", "alpha", "state_cap", "n", "k",
                          "cost_det", "cost_rand", "safe_reward",
                          "correct_reward", "wrong_penalty", "time_threshold",
                          "time_penalty"})
    runcase->add_option("--" + std::string(key), named_params[key],
                        std::string("case parameter ") + key);
  runcase->add_option("--export-dir", export_dir,
                      "export the case's game file here");
  runcase->add_option("--out", case_o.out_path, "write the report here");
  runcase->add_option("--format", case_o.format, "json | human")
      ->check(CLI::IsMember({"json", "human"}));

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a game file");
  validate->add_option("game", validate_path, "game file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      GameSpec g = load_game_file(validate_path);
      std::cout << "ok: " << g.name << " (" << g.player_count << " players, "
                << g.type_space.size() << " type profiles)\n";
      return kExitHolds;
    }
    if (eval->parsed()) {
      GameSpec g = load_game_file(eval_o.game_path);
      StrategyProfile prof = profile_from_labels(g, eval_o.profile_labels);
      Subject subject = Subject::of_player(1);
      if (eval_subject.find(',') != std::string::npos) {
        Coalition z;
        std::stringstream ss(eval_subject);
        std::string tok;
        while (std::getline(ss, tok, ',')) z.push_back(std::stoi(tok));
        std::sort(z.begin(), z.end());
        subject = Subject::of_coalition(z);
      } else {
        subject = Subject::of_player(std::stoi(eval_subject));
      }
      UtilityOutcome out =
          expected_utility(g, prof, subject, make_mode(eval_o));
      if (!eval_transcript.empty()) {
        if (!g.mediator) throw MgeError("--transcript needs a mediated game");
        std::vector<PlayerBinding> bindings;
        for (int i = 0; i < g.player_count; ++i)
          bindings.push_back(PlayerBinding{&prof.assignment[i], i});
        std::vector<std::string> types(g.type_space[0].entries.begin(),
                                       g.type_space[0].entries.begin() +
                                           g.player_count);
        std::vector<std::string> tapes(g.player_count + 1,
                                       std::string(64, '0'));
        Transcript t =
            execute_mediated(bindings, *g.mediator, types, tapes, g.budget);
        std::ofstream tf(eval_transcript);
        tf << transcript_to_text(t);
      }
      Json doc = utility_outcome_to_json(out);
      emit(eval_o, doc, doc.dump(2) + "\n");
      return kExitHolds;
    }
    if (nash->parsed()) {
      GameSpec g = load_game_file(nash_o.game_path);
      StrategyProfile prof = profile_from_labels(g, nash_o.profile_labels);
      EquilibriumReport rep = check_epsilon_nash(
          g, prof, rat_from_string(nash_o.epsilon),
          candidates_for(g, nash_o.class_path), make_mode(nash_o));
      return finish_report(nash_o, rep);
    }
    if (robust->parsed()) {
      GameSpec g = load_game_file(robust_o.game_path);
      StrategyProfile prof = profile_from_labels(g, robust_o.profile_labels);
      SpeedupSpec p;
      p.p = parse_expr(robust_p);
      p.homogeneous = robust_homog;
      p.label = robust_p;
      EquilibriumReport rep = check_p_robust(
          g, prof, p, rat_from_string(robust_o.epsilon),
          candidates_for(g, robust_o.class_path), make_mode(robust_o));
      return finish_report(robust_o, rep);
    }
    if (coal->parsed()) {
      GameSpec g = load_game_file(coal_o.game_path);
      StrategyProfile prof = profile_from_labels(g, coal_o.profile_labels);
      std::vector<Coalition> zs;
      std::stringstream ss(coal_spec);
      std::string group;
      while (std::getline(ss, group, ';')) {
        Coalition z;
        std::stringstream gs(group);
        std::string tok;
        while (std::getline(gs, tok, ',')) z.push_back(std::stoi(tok));
        std::sort(z.begin(), z.end());
        zs.push_back(std::move(z));
      }
      EquilibriumReport rep = check_coalition_safe(
          g, prof, zs, rat_from_string(coal_o.epsilon),
          candidates_for(g, coal_o.class_path), make_mode(coal_o));
      return finish_report(coal_o, rep);
    }
    if (uni->parsed() || suni->parsed()) {
      const bool strong = suni->parsed();
      UniversalBundle b = load_bundle(strong ? sbundle_path : bundle_path);
      EquilibriumReport rep =
          strong ? check_strong_universal_implementation(
                       b.protocol, b.f_prime, b.f, b.family, b.coalitions, b.p,
                       b.epsilon, b.candidates, b.zprime_cap)
                 : check_universal_implementation(
                       b.protocol, b.f_prime, b.f, b.family, b.coalitions, b.p,
                       b.epsilon, b.candidates, b.zprime_cap);
      return finish_report(strong ? suni_o : uni_o, rep);
    }
    if (solve->parsed()) {
      GameSpec g = load_game_file(solve_o.game_path);
      if (!assume_cheap && !free_rand)
        throw MgeError("solve needs --assume-cheap or --free-randomization");
      FiniteBayesianGame fg = induce_finite_game(g, solve_base);
      Json doc;
      MixedEquilibrium eq;
      if (!solve_eps.empty()) {
        eq = epsilon_ne_regret(fg, rat_from_string(solve_eps), solve_cap);
      } else {
        eq = solve_support_enumeration(fg);
      }
      doc["equilibrium"] = mixed_equilibrium_to_json(eq, fg);
      doc["certificate"] = {{"max_regret", rat_to_string(max_regret(fg, eq))}};
      if (emit_lifted) {
        std::vector<MachineProgram> base;
        for (const auto& l : solve_base) base.push_back(g.machine(l));
        Json lifted = Json::array();
        for (int i = 1; i <= fg.players; ++i)
          for (size_t t = 0; t < fg.type_names[i - 1].size(); ++t)
            lifted.push_back(program_to_text(lift_to_sampler_machine(
                eq, i, static_cast<int>(t), fg, base)));
        doc["lifted"] = lifted;
      }
      emit(solve_o, doc, doc.dump(2) + "\n");
      return kExitHolds;
    }
    if (runcase->parsed()) {
      std::map<std::string, std::string> params;
      for (const auto& [key, value] : named_params)
        if (!value.empty()) params[key] = value;
      for (const auto& kv : case_params) {
        auto eq_pos = kv.find('=');
        if (eq_pos == std::string::npos)
          throw MgeError("--param needs key=value, got '" + kv + "'");
        params[kv.substr(0, eq_pos)] = kv.substr(eq_pos + 1);
      }
      if (!export_dir.empty()) {
        CaseStudy cs = build_case(case_name, params);
        std::filesystem::create_directories(export_dir);
        std::ofstream out(std::filesystem::path(export_dir) /
                          (case_name + ".game.json"));
        out << game_to_json(cs.game).dump(2) << "\n";
        if (case_name == "universal-sanity") {
          // Also export a check-universal bundle over the whole family.
          UniversalFixture fx = build_universal_fixture();
          Json bundle;
          Json family = Json::array();
          for (const auto& g : fx.family) family.push_back(game_to_json(g));
          bundle["family"] = family;
          GameSpec with_f = fx.family.front();
          with_f.mediator = fx.f;
          bundle["f"] = game_to_json(with_f)["mediator"];
          bundle["f_prime"] = bundle["f"];
          Json protocol = Json::array();
          for (const auto& p : fx.lambda_profile.assignment)
            protocol.push_back(program_to_text(p));
          bundle["protocol"] = protocol;
          bundle["coalitions"] = Json::array({Json::array({1}),
                                              Json::array({2})});
          bundle["p"] = "t";
          bundle["homogeneous"] = true;
          bundle["epsilon"] = "0";
          Json cand = Json::array();
          for (int i = 0; i < 2; ++i)
            cand.push_back(Json::array({"lambda", "const0", "const1"}));
          bundle["candidates"] = cand;
          std::ofstream bout(std::filesystem::path(export_dir) /
                             "universal-sanity.bundle.json");
          bout << bundle.dump(2) << "\n";
        }
      }
      CaseResult res = run_case(case_name, params);
      Json doc;
      doc["case"] = res.name;
      doc["pass"] = res.pass;
      doc["expectations"] = res.lines;
      std::string human = "case " + res.name + ": " +
                          (res.pass ? "PASS" : "FAIL") + "\n";
      for (const auto& l : res.lines) human += "  " + l + "\n";
      emit(case_o, doc, human);
      return res.pass ? kExitHolds : kExitFails;
    }
  } catch (const MgeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

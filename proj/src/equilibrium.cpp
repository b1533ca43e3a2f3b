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

#include "mge/equilibrium.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>

#include "mge/mediator.hpp"

namespace mge {

namespace {

int parallelism_degree() {
  const char* env = std::getenv("MGE_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

// Evaluates fn(0..n-1) with up to MGE_THREADS workers; results are collected
// by index so reports stay in candidate-declaration order.
std::vector<Rat> parallel_map(int64_t n, const std::function<Rat(int64_t)>& fn) {
  std::vector<Rat> out(n);
  const int threads = parallelism_degree();
  if (threads <= 1 || n <= 1) {
    for (int64_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int64_t> next{0};
  auto worker = [&]() {
    while (true) {
      int64_t i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futs;
  for (int t = 0; t < threads; ++t)
    futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace

std::string coalition_to_string(const Coalition& z) {
  std::string s = "{";
  for (size_t i = 0; i < z.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(z[i]);
  }
  return s + "}";
}

int64_t SpeedupSpec::eval(int64_t n, int64_t t) const {
  ExprEnv env;
  env.locals["n"] = Rat(n);
  env.locals["t"] = Rat(t);
  Rat v = eval_expr_rat(p, env);
  if (denominator(v) != 1 || v < 0)
    throw ModeAssumptionViolated("p(n,t) must be a natural number, got " +
                                 rat_to_string(v));
  return numerator(v).convert_to<int64_t>();
}

void SpeedupSpec::validate() const {
  // Nondecreasing in t on a probe range, and homogeneous means p(n,0)=0.
  for (int64_t n : {int64_t{0}, int64_t{1}, int64_t{4}, int64_t{8}}) {
    int64_t prev = eval(n, 0);
    if (homogeneous && prev != 0)
      throw ModeAssumptionViolated("p flagged homogeneous but p(n,0) != 0");
    for (int64_t t = 1; t <= 32; ++t) {
      int64_t cur = eval(n, t);
      if (cur < prev)
        throw ModeAssumptionViolated("p(n,t) must be nondecreasing in t");
      prev = cur;
    }
  }
}

SpeedupSpec SpeedupSpec::identity() {
  SpeedupSpec s;
  s.p = parse_expr("t");
  s.homogeneous = true;
  s.label = "identity";
  return s;
}

namespace {

Rat outcome_value(const UtilityOutcome& o) {
  return o.exact ? o.value : Rat(o.estimate);  // sampled gaps are estimates
}

std::string subject_name(const Subject& s) {
  return s.is_coalition ? "coalition " + coalition_to_string(s.coalition)
                        : "player " + std::to_string(s.player);
}

// Deviation candidates for a player: declared ones plus the incumbent and
// bot, deduplicated by program identity.
std::vector<MachineProgram> player_candidates(const CandidateClass& cls,
                                              int player,
                                              const MachineProgram& incumbent) {
  std::vector<MachineProgram> out;
  auto push = [&](const MachineProgram& p) {
    for (const auto& q : out)
      if (q == p) return;
    out.push_back(p);
  };
  push(incumbent);
  push(canonical_bot());
  if (player - 1 < static_cast<int>(cls.per_player.size()))
    for (const auto& p : cls.per_player[player - 1]) push(p);
  return out;
}

CoalitionMachine bot_coalition(const Coalition& z) {
  CoalitionMachine cm;
  cm.members = z;
  cm.member_programs.assign(z.size(), canonical_bot());
  cm.label = "bot" + coalition_to_string(z);
  return cm;
}

std::vector<CoalitionMachine> coalition_candidates(
    const CandidateClass& cls, const Coalition& z,
    const StrategyProfile& profile) {
  std::vector<CoalitionMachine> out;
  auto push = [&](const CoalitionMachine& cm) {
    for (const auto& q : out)
      if (q.label == cm.label && q.member_programs == cm.member_programs &&
          q.shared_tape == cm.shared_tape)
        return;
    out.push_back(cm);
  };
  push(benign_coalition_machine(profile, z));
  push(bot_coalition(z));
  auto it = cls.per_coalition.find(z);
  if (it != cls.per_coalition.end())
    for (const auto& cm : it->second) push(cm);
  // Singleton coalitions inherit the player's candidate list, so the
  // singleton check reduces exactly to the Nash check.
  if (z.size() == 1) {
    const int i = z.front();
    for (const auto& p :
         player_candidates(cls, i, profile.assignment[i - 1])) {
      CoalitionMachine cm;
      cm.members = z;
      cm.member_programs = {p};
      cm.label = p.label;
      push(cm);
    }
  }
  return out;
}

}  // namespace

SubjectReport best_response_gap(
    const GameSpec& game, const StrategyProfile& profile,
    const Subject& subject, const CandidateClass& candidates,
    const EvalMode& mode, const std::optional<MediatorSpec>& mediator,
    const std::function<int64_t(int64_t)>* deviator_speedup,
    const std::optional<CoalitionMachine>& incumbent_override) {
  const auto& med = mediator ? mediator : game.mediator;
  SubjectReport report;
  report.subject = subject_name(subject);

  if (!subject.is_coalition) {
    const int i = subject.player;
    const MachineProgram& incumbent = profile.assignment[i - 1];
    report.incumbent = incumbent.label;
    Rat base = outcome_value(
        expected_utility_ex(game, profile, subject, mode, med, nullptr));
    auto cands = player_candidates(candidates, i, incumbent);
    std::vector<Rat> values =
        parallel_map(static_cast<int64_t>(cands.size()), [&](int64_t c) {
          StrategyProfile dev = profile;
          dev.assignment[i - 1] = cands[c];
          return outcome_value(expected_utility_ex(game, dev, subject, mode,
                                                   med, deviator_speedup));
        });
    for (size_t c = 0; c < cands.size(); ++c) {
      Rat gap = values[c] - base;
      report.gaps.push_back(GapEntry{cands[c].label, gap});
      if (c == 0 || gap > report.max_gap) {
        report.max_gap = gap;
        report.witness = cands[c].label;
      }
    }
    return report;
  }

  const Coalition& z = subject.coalition;
  StrategyProfile incumbent_profile = profile;
  if (incumbent_override) {
    incumbent_profile.coalition = *incumbent_override;
    report.incumbent = incumbent_override->label;
  } else {
    incumbent_profile.coalition.reset();  // benign: members play their own
    report.incumbent = benign_coalition_machine(profile, z).label;
  }
  Rat base = outcome_value(expected_utility_ex(game, incumbent_profile,
                                               subject, mode, med, nullptr));
  bool first = true;
  for (const auto& cand : coalition_candidates(candidates, z, profile)) {
    StrategyProfile dev = profile;
    dev.coalition = cand;
    Rat u = outcome_value(
        expected_utility_ex(game, dev, subject, mode, med, deviator_speedup));
    Rat gap = u - base;
    report.gaps.push_back(GapEntry{cand.label, gap});
    if (first || gap > report.max_gap) {
      report.max_gap = gap;
      report.witness = cand.label;
      first = false;
    }
  }
  return report;
}

EquilibriumReport check_epsilon_nash(
    const GameSpec& game, const StrategyProfile& profile, const Rat& epsilon,
    const CandidateClass& candidates, const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator) {
  EquilibriumReport rep;
  rep.check = "nash";
  rep.epsilon = epsilon;
  rep.class_label = candidates.label;
  rep.mode = mode.exact ? "exact" : "sampled";
  rep.verdict_holds = true;
  for (int i = 1; i <= game.player_count; ++i) {
    SubjectReport sr = best_response_gap(game, profile, Subject::of_player(i),
                                         candidates, mode, mediator);
    sr.holds = sr.max_gap <= epsilon;  // weak inequality: ties hold
    rep.verdict_holds = rep.verdict_holds && sr.holds;
    rep.subjects.push_back(std::move(sr));
  }
  return rep;
}

namespace {

// Favorable-deviator reduction: the deviation's complexity c is replaced by
// the smallest x >= 1 with p(n,x) >= c (0 stays 0).
std::function<int64_t(int64_t)> make_speedup_transform(const SpeedupSpec& p,
                                                       int64_t n) {
  return [&p, n](int64_t c) -> int64_t {
    if (c <= 0) return c;
    if (p.eval(n, c) < c)
      throw ModeAssumptionViolated(
          "p(n,t) < t at t=" + std::to_string(c) +
          ": the game is not within its own p-speedup family");
    for (int64_t x = 1; x <= c; ++x)
      if (p.eval(n, x) >= c) return x;
    return c;
  };
}

void require_favorable_assumptions(const GameSpec& game,
                                   const StrategyProfile& profile,
                                   const std::optional<MediatorSpec>& med) {
  if (!game.monotone)
    throw ModeAssumptionViolated(
        "favorable-deviator robustness requires the monotone flag");
  for (int i = 0; i < game.player_count; ++i) {
    auto vars = complexity_vars(game.utilities[i]);
    for (const auto& v : vars)
      if (v != "c" + std::to_string(i + 1))
        throw ModeAssumptionViolated(
            "utility of player " + std::to_string(i + 1) + " references " + v +
            "; favorable-deviator mode needs own-complexity-only utilities");
  }
  for (const auto& [z, u] : game.coalition_utilities) {
    auto vars = complexity_vars(u);
    for (const auto& v : vars)
      if (v != "cz")
        throw ModeAssumptionViolated(
            "coalition utility references " + v +
            "; favorable-deviator mode needs own-complexity-only utilities");
  }
  // Probe the declared monotonicity on realized playouts: pinning the
  // subject's complexity to successive constants must not raise utility.
  for (int i = 1; i <= game.player_count; ++i) {
    Rat prev;
    for (int64_t c = 0; c <= 3; ++c) {
      std::function<int64_t(int64_t)> pin = [c](int64_t) { return c; };
      Rat u = expected_utility_ex(game, profile, Subject::of_player(i),
                                  EvalMode::exact_mode(), med, &pin)
                  .value;
      if (c > 0 && u > prev)
        throw ModeAssumptionViolated(
            "utility of player " + std::to_string(i) +
            " increases with its own complexity despite the monotone flag");
      prev = u;
    }
  }
}

}  // namespace

EquilibriumReport check_p_robust(
    const GameSpec& game, const StrategyProfile& profile, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates, const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator) {
  p.validate();
  EquilibriumReport rep;
  rep.check = "robust";
  rep.epsilon = epsilon;
  rep.class_label = candidates.label;
  rep.mode = mode.exact ? "exact" : "sampled";
  rep.verdict_holds = true;

  if (p.mode == SpeedupSpec::Mode::kFavorableDeviator) {
    require_favorable_assumptions(game, profile,
                                  mediator ? mediator : game.mediator);
    auto transform = make_speedup_transform(p, game.input_length);
    for (int i = 1; i <= game.player_count; ++i) {
      SubjectReport sr =
          best_response_gap(game, profile, Subject::of_player(i), candidates,
                            mode, mediator, &transform);
      sr.holds = sr.max_gap <= epsilon;
      rep.verdict_holds = rep.verdict_holds && sr.holds;
      rep.subjects.push_back(std::move(sr));
    }
    rep.notes.push_back("favorable-deviator reduction under p=" + p.label);
    return rep;
  }

  // Explicit-list mode: verify each listed complexity assignment is a
  // p-speedup of the game's, then re-run the Nash check under each.
  std::vector<MachineProgram> probes{canonical_bot()};
  for (const auto& label : game.machine_class) {
    const auto& prog = game.machine(label);
    if (!is_bot(prog)) probes.push_back(prog);
  }
  auto battery = battery_runs(probes);
  int listed = 0;
  for (const auto& specs : p.explicit_games) {
    ++listed;
    if (static_cast<int>(specs.size()) != game.player_count)
      throw ModeAssumptionViolated("listed speedup needs one spec per player");
    for (int i = 0; i < game.player_count; ++i) {
      std::string witness;
      auto pfn = [&](int64_t t) { return p.eval(game.input_length, t); };
      if (!is_at_most_p_speedup(specs[i], game.complexity[i], pfn, battery,
                                &witness))
        throw ModeAssumptionViolated("listed game " + std::to_string(listed) +
                                     " is not a p-speedup: " + witness);
    }
    GameSpec sped = game;
    sped.complexity = specs;
    EquilibriumReport sub =
        check_epsilon_nash(sped, profile, epsilon, candidates, mode, mediator);
    for (auto& sr : sub.subjects) {
      sr.subject += " [speedup " + std::to_string(listed) + "]";
      rep.verdict_holds = rep.verdict_holds && sr.holds;
      rep.subjects.push_back(std::move(sr));
    }
  }
  EquilibriumReport base =
      check_epsilon_nash(game, profile, epsilon, candidates, mode, mediator);
  for (auto& sr : base.subjects) {
    rep.verdict_holds = rep.verdict_holds && sr.holds;
    rep.subjects.push_back(std::move(sr));
  }
  rep.notes.push_back("explicit speedup list of size " +
                      std::to_string(listed));
  return rep;
}

EquilibriumReport check_coalition_safe(
    const GameSpec& game, const StrategyProfile& profile,
    const std::vector<Coalition>& coalition_set, const Rat& epsilon,
    const CandidateClass& candidates, const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator) {
  EquilibriumReport rep;
  rep.check = "coalition";
  rep.epsilon = epsilon;
  rep.class_label = candidates.label;
  rep.mode = mode.exact ? "exact" : "sampled";
  rep.verdict_holds = true;
  for (const auto& z : coalition_set) {
    SubjectReport sr = best_response_gap(
        game, profile, Subject::of_coalition(z), candidates, mode, mediator);
    sr.holds = sr.max_gap <= epsilon;
    rep.verdict_holds = rep.verdict_holds && sr.holds;
    rep.subjects.push_back(std::move(sr));
  }
  return rep;
}

namespace {

std::vector<Coalition> all_subsets_upto(int m, int cap) {
  std::vector<Coalition> out;
  for (int mask = 1; mask < (1 << m); ++mask) {
    Coalition z;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) z.push_back(i + 1);
    if (static_cast<int>(z.size()) <= cap) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

AcceptabilityReport check_M_acceptable(const GameSpec& game,
                                       const StrategyProfile& m_profile,
                                       const MediatorSpec& mediator_f,
                                       int coalition_size_cap) {
  AcceptabilityReport rep;
  StrategyProfile lambda_profile;
  for (int i = 0; i < game.player_count; ++i)
    lambda_profile.assignment.push_back(lambda_machine());

  bool have_c0 = false;
  auto visit = [&](const StrategyProfile& prof, const Coalition& z,
                   const char* who) -> bool {
    const ComplexityFnSpec& spec =
        z.size() == 1 ? game.complexity[z.front() - 1] : game.coalition_spec(z);
    if (!have_c0 && spec.kind == ComplexityKind::kConstantForProtocol) {
      rep.c0 = spec.c0;
      have_c0 = true;
    }
    for (const auto& tp : game.type_space) {
      TypeOutcome oc = enumerate_playouts(game, prof, mediator_f, tp);
      for (const auto& leaf : oc.leaves) {
        View merged_view;
        RunMeter merged_meter;
        merged_meter.halted = true;
        for (int i : z) {
          merged_view.type_prefix += leaf.views[i - 1].type_prefix;
          merged_view.random_prefix += leaf.views[i - 1].random_prefix;
          merged_meter.steps += leaf.meters[i - 1].steps;
          merged_meter.program_size += leaf.meters[i - 1].program_size;
          merged_meter.rand_bits += leaf.meters[i - 1].rand_bits;
        }
        bool nothing = true;
        for (int i : z)
          if (!is_bot(prof.assignment[i - 1])) nothing = false;
        std::string label = "benign(";
        bool all_protocol = true;
        for (size_t k = 0; k < z.size(); ++k) {
          label += (k ? "," : "") + prof.assignment[z[k] - 1].label;
          if (!spec.protocol_labels.count(prof.assignment[z[k] - 1].label))
            all_protocol = false;
        }
        label += ")";
        // A benign controller of protocol machines counts as protocol too.
        ComplexityFnSpec keyed = spec;
        if (keyed.kind == ComplexityKind::kConstantForProtocol && all_protocol)
          keyed.protocol_labels.insert(label);
        int64_t c = evaluate_complexity_meter(keyed, nothing, label,
                                              merged_view, merged_meter,
                                              tp.entries[game.player_count]);
        if (!have_c0) {
          rep.c0 = c;
          have_c0 = true;
        }
        if (c != rep.c0) {
          rep.acceptable = false;
          rep.witness = std::string(who) + " " + label + " on coalition " +
                        coalition_to_string(z) + " has complexity " +
                        std::to_string(c) + " != c0 " + std::to_string(rep.c0);
          return false;
        }
      }
    }
    return true;
  };

  for (const auto& z :
       all_subsets_upto(game.player_count, coalition_size_cap)) {
    if (!visit(lambda_profile, z, "lambda-profile")) return rep;
    if (!visit(m_profile, z, "M-profile")) return rep;
  }
  rep.acceptable = true;
  return rep;
}

namespace {

struct UniversalParts {
  // Per coalition in the declared set: antecedent and consequent verdicts.
  std::vector<bool> antecedent;
  std::vector<bool> clause1;
  bool clause2 = false;
  std::string clause2_note;
  std::vector<bool> bot_antecedent;
  std::vector<bool> bot_consequent;
};

UniversalParts universal_parts(const StrategyProfile& m_profile,
                               const MediatorSpec& f_prime,
                               const MediatorSpec& f, const GameSpec& game,
                               const std::vector<Coalition>& zset,
                               const SpeedupSpec& p, const Rat& epsilon,
                               const CandidateClass& candidates,
                               bool strong) {
  StrategyProfile lambda_profile;
  for (int i = 0; i < game.player_count; ++i)
    lambda_profile.assignment.push_back(lambda_machine());

  // The favorable reduction is exact for complexity-free utilities under any
  // p and for identity p in general; otherwise the gated assumptions apply.
  bool prices_computation = false;
  for (const auto& u : game.utilities)
    if (references_complexity(u)) prices_computation = true;
  bool p_identity = true;
  for (int64_t t = 0; t <= 16 && p_identity; ++t)
    if (p.eval(game.input_length, t) != t) p_identity = false;
  if (prices_computation && !p_identity)
    require_favorable_assumptions(game, lambda_profile, f);

  auto transform = make_speedup_transform(p, game.input_length);
  UniversalParts parts;
  for (const auto& z : zset) {
    SubjectReport ant = best_response_gap(
        game, lambda_profile, Subject::of_coalition(z), candidates,
        EvalMode::exact_mode(), f, &transform);
    parts.antecedent.push_back(ant.max_gap <= 0);
    SubjectReport cons = best_response_gap(
        game, m_profile, Subject::of_coalition(z), candidates,
        EvalMode::exact_mode(), f_prime);
    parts.clause1.push_back(cons.max_gap <= epsilon);
    if (strong) {
      auto botz = bot_coalition(z);
      SubjectReport bot_ant = best_response_gap(
          game, lambda_profile, Subject::of_coalition(z), candidates,
          EvalMode::exact_mode(), f, &transform, botz);
      parts.bot_antecedent.push_back(bot_ant.max_gap <= 0);
      SubjectReport bot_cons = best_response_gap(
          game, m_profile, Subject::of_coalition(z), candidates,
          EvalMode::exact_mode(), f_prime, nullptr, botz);
      parts.bot_consequent.push_back(bot_cons.max_gap <= epsilon);
    }
  }

  ActionDistribution lambda_dist =
      action_distribution(game, lambda_profile, f);
  ActionDistribution m_dist = action_distribution(game, m_profile, f_prime);
  parts.clause2 = lambda_dist == m_dist;
  if (!parts.clause2) {
    // Total-variation witness at the worst type profile.
    Rat worst = 0;
    size_t worst_t = 0;
    for (size_t t = 0; t < lambda_dist.size(); ++t) {
      Rat tv = 0;
      std::map<std::vector<std::string>, Rat> diff = lambda_dist[t];
      for (const auto& [k, v] : m_dist[t]) diff[k] -= v;
      for (const auto& [k, v] : diff) tv += (v < 0 ? -v : v);
      tv /= 2;
      if (tv > worst) {
        worst = tv;
        worst_t = t;
      }
    }
    parts.clause2_note = "total variation " + rat_to_string(worst) +
                         " at type profile " + std::to_string(worst_t);
  }
  return parts;
}

EquilibriumReport universal_check(const StrategyProfile& m_profile,
                                  const MediatorSpec& f_prime,
                                  const MediatorSpec& f,
                                  const std::vector<GameSpec>& family,
                                  const std::vector<Coalition>& zset,
                                  const SpeedupSpec& p, const Rat& epsilon,
                                  const CandidateClass& candidates,
                                  int zprime_size_cap, bool strong) {
  p.validate();
  EquilibriumReport rep;
  rep.check = strong ? "strong-universal" : "universal";
  rep.epsilon = epsilon;
  rep.class_label = candidates.label;
  rep.verdict_holds = true;
  rep.notes.push_back("coalition subsets enumerated up to size " +
                      std::to_string(zprime_size_cap));

  for (const auto& game : family) {
    for (const auto& tp : game.type_space) {
      const std::string& t0 = tp.entries[0];
      auto sep = t0.find(';');
      if (static_cast<int64_t>(sep == std::string::npos ? t0.size() : sep) !=
          game.input_length)
        throw SchemaError("game '" + game.name +
                          "' is not canonical with the declared input length");
    }
    UniversalParts parts = universal_parts(m_profile, f_prime, f, game, zset,
                                           p, epsilon, candidates, strong);

    // Rows: one per nonempty subset Z' of the coalition set up to the cap.
    const int zn = static_cast<int>(zset.size());
    for (int mask = 1; mask < (1 << zn); ++mask) {
      int size = 0;
      for (int b = 0; b < zn; ++b)
        if (mask & (1 << b)) ++size;
      if (size > zprime_size_cap) continue;
      UniversalRow row;
      row.game_name = game.name;
      row.antecedent = true;
      row.clause1 = true;
      std::string zs;
      for (int b = 0; b < zn; ++b) {
        if (!(mask & (1 << b))) continue;
        zs += (zs.empty() ? "" : ",") + coalition_to_string(zset[b]);
        row.antecedent = row.antecedent && parts.antecedent[b];
        row.clause1 = row.clause1 && parts.clause1[b];
      }
      row.zprime = "{" + zs + "}";
      row.clause2 = parts.clause2;
      if (!row.antecedent) {
        row.vacuous = true;
        row.holds = true;
        row.note = "antecedent fails; implication vacuous";
      } else {
        row.holds = row.clause1 && row.clause2;
        if (!row.clause2) row.note = parts.clause2_note;
      }
      rep.verdict_holds = rep.verdict_holds && row.holds;
      rep.universal_rows.push_back(std::move(row));
    }

    if (strong) {
      for (int b = 0; b < zn; ++b) {
        UniversalRow row;
        row.game_name = game.name;
        row.zprime = coalition_to_string(zset[b]);
        row.bot_antecedent = parts.bot_antecedent[b];
        row.bot_consequent = parts.bot_consequent[b];
        row.antecedent = parts.bot_antecedent[b];
        row.clause1 = row.clause2 = true;
        if (!row.bot_antecedent) {
          row.vacuous = true;
          row.holds = true;
          row.note = "bot not a robust best response under F; vacuous";
        } else {
          row.holds = row.bot_consequent;
          row.note = "strong clause (bot stays a best response)";
        }
        rep.verdict_holds = rep.verdict_holds && row.holds;
        rep.universal_rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

}  // namespace

EquilibriumReport check_universal_implementation(
    const StrategyProfile& m_profile, const MediatorSpec& f_prime,
    const MediatorSpec& f, const std::vector<GameSpec>& family,
    const std::vector<Coalition>& coalition_set, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates,
    int zprime_size_cap) {
  return universal_check(m_profile, f_prime, f, family, coalition_set, p,
                         epsilon, candidates, zprime_size_cap, false);
}

EquilibriumReport check_strong_universal_implementation(
    const StrategyProfile& m_profile, const MediatorSpec& f_prime,
    const MediatorSpec& f, const std::vector<GameSpec>& family,
    const std::vector<Coalition>& coalition_set, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates,
    int zprime_size_cap) {
  return universal_check(m_profile, f_prime, f, family, coalition_set, p,
                         epsilon, candidates, zprime_size_cap, true);
}

}  // namespace mge

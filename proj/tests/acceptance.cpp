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
//
// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. Exact means exact: all comparisons are rational.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "mge/cases.hpp"
#include "mge/equilibrium.hpp"
#include "mge/loader.hpp"
#include "mge/solver.hpp"
#include "testgen.hpp"

using namespace mge;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(int number, const std::string& title)
      : number_(number), title_(title),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    all_ok_ = all_ok_ && ok;
    details_.push_back(std::string(ok ? "  - ok: " : "  - FAIL: ") + detail);
  }

  ~Criterion() {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    std::printf("%s criterion %d: %s (%.1fs)\n", all_ok_ ? "PASS" : "FAIL",
                number_, title_.c_str(), elapsed / 1000.0);
    for (const auto& d : details_) std::printf("%s\n", d.c_str());
    if (!all_ok_) ++g_failures;
  }

 private:
  int number_;
  std::string title_;
  bool all_ok_ = true;
  std::vector<std::string> details_;
  std::chrono::steady_clock::time_point start_;
};

void criterion1_roshambo() {
  Criterion c(1, "roshambo nonexistence and the uniform solver equilibrium");
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  int failures_with_witness = 0;
  for (const std::string l1 : {"rock", "paper", "scissors", "uniform"})
    for (const std::string l2 : {"rock", "paper", "scissors", "uniform"}) {
      StrategyProfile prof = profile_from_labels(cs.game, {l1, l2});
      EquilibriumReport rep =
          check_epsilon_nash(cs.game, prof, Rat(0), cs.candidates);
      if (rep.verdict_holds) continue;
      bool witness_ok = false;
      for (const auto& s : rep.subjects)
        if (!s.holds && s.max_gap > 0 && !s.witness.empty()) witness_ok = true;
      if (witness_ok) ++failures_with_witness;
    }
  c.expect(failures_with_witness == 16,
           "all 16 profiles fail eps=0 with exact-rational witnesses (" +
               std::to_string(failures_with_witness) + "/16)");

  CaseStudy free_cs = build_roshambo_free();
  FiniteBayesianGame fg =
      induce_finite_game(free_cs.game, {"rock", "paper", "scissors"});
  MixedEquilibrium eq = solve_support_enumeration(fg);
  bool uniform = true;
  for (int i = 0; i < 2; ++i)
    for (const auto& v : eq.sigma[i][0])
      if (v != Rat(1, 3)) uniform = false;
  c.expect(uniform && eq.residual == 0,
           "with costs stripped the solver returns (1/3,1/3,1/3) exactly");
}

void criterion2_frpd() {
  Criterion c(2, "FRPD tit-for-tat over the state-cap-2 automaton class");
  const int rounds = 10;
  const Rat delta(9, 10);
  const Rat two_dn = Rat(2) * rat_pow(delta, rounds);

  CaseStudy holds_cs = build_frpd(rounds, delta, Rat(7, 10), 2);
  EquilibriumReport holds_rep = check_epsilon_nash(
      holds_cs.game, holds_cs.profile, Rat(0), holds_cs.candidates);
  c.expect(holds_rep.verdict_holds,
           "alpha=7/10 >= 2 delta^10: (tft, tft) passes eps=0 over " +
               std::to_string(holds_cs.candidates.per_player[0].size()) +
               " candidates per player");

  CaseStudy flips_cs = build_frpd(rounds, delta, Rat(1, 2), 2);
  EquilibriumReport flips_rep = check_epsilon_nash(
      flips_cs.game, flips_cs.profile, Rat(0), flips_cs.candidates);
  Rat expected_gap = two_dn - Rat(1, 2);
  bool witness_gap_ok = false;
  for (const auto& s : flips_rep.subjects)
    if (!s.holds && s.max_gap == expected_gap) witness_gap_ok = true;
  c.expect(!flips_rep.verdict_holds && witness_gap_ok,
           "alpha=1/2 flips the verdict with witness gap exactly " +
               rat_to_string(expected_gap));

  // Every pure deviant defecting first at round k < N loses at least
  // 6 delta^(k+1) - 2 delta^k against tit-for-tat, exactly.
  const GameSpec& g = holds_cs.game;
  StrategyProfile tft_pair = holds_cs.profile;
  Rat u_tft = expected_utility(g, tft_pair, Subject::of_player(1),
                               EvalMode::exact_mode())
                  .value;
  bool sweep_ok = true;
  int swept = 0;
  for (const auto& dev : holds_cs.candidates.per_player[0]) {
    StrategyProfile prof = tft_pair;
    prof.assignment[0] = dev;
    TypeOutcome oc =
        enumerate_playouts(g, prof, std::nullopt, g.type_space[0]);
    if (oc.leaves.size() != 1) continue;  // deterministic class
    const std::string& moves = oc.leaves[0].outputs[0];
    auto first_defect = moves.find('1');
    if (first_defect == std::string::npos) continue;
    int k = static_cast<int>(first_defect) + 1;
    if (k >= rounds) continue;
    Rat u_dev = expected_utility(g, prof, Subject::of_player(1),
                                 EvalMode::exact_mode())
                    .value;
    Rat bound = Rat(6) * rat_pow(delta, k + 1) - Rat(2) * rat_pow(delta, k);
    if (!(u_tft - u_dev >= bound)) {
      sweep_ok = false;
      c.expect(false, "deviant " + dev.label + " (first defection round " +
                          std::to_string(k) + ") loses only " +
                          rat_to_string(u_tft - u_dev) + " < bound " +
                          rat_to_string(bound));
      break;
    }
    ++swept;
  }
  if (sweep_ok)
    c.expect(swept > 3000, "loss >= 6 delta^(k+1) - 2 delta^k held exactly "
                           "for all " +
                               std::to_string(swept) +
                               " pure deviants defecting before round 10");
}

void criterion3_primality() {
  Criterion c(3, "primality: safe play, exact gap table, conditional failure");
  CaseStudy cs = build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2));
  EquilibriumReport rep =
      check_epsilon_nash(cs.game, cs.profile, Rat(0), cs.candidates);
  std::map<std::string, Rat> gaps;
  for (const auto& g : rep.subjects[0].gaps) gaps[g.candidate] = g.gap;
  c.expect(rep.verdict_holds, "constant-\"2\" is a 0-best response");
  c.expect(gaps.at("const1") == Rat(-500) && gaps.at("const0") == Rat(-500) &&
               gaps.at("tester") == Rat(-1),
           "gap table is exactly {const1: -500, const0: -500, tester: -1}");

  GameSpec cond = cs.game;
  cond.type_space = {TypeProfile{{"1011", ""}, Rat(1)}};  // t = 11, prime
  Rat u_c1 = expected_utility(cond, profile_from_labels(cond, {"const1"}),
                              Subject::of_player(1), EvalMode::exact_mode())
                 .value;
  Rat u_safe = expected_utility(cond, profile_from_labels(cond, {"safe"}),
                                Subject::of_player(1), EvalMode::exact_mode())
                   .value;
  c.expect(u_c1 == Rat(2) && u_safe == Rat(1),
           "conditional on t=11, const1 earns 2 > safe 1");
}

void criterion4_revelation() {
  Criterion c(4, "revelation counterexample at (n,k) = (5,1), full enumeration");
  CaseStudy cs = build_revelation(5, 1);
  bool comparator_ok = true;
  for (const auto& tp : cs.game.type_space) {
    bool equal = tp.entries[0] == tp.entries[1];
    bool prefix_equal = tp.entries[0].compare(0, 2, tp.entries[1], 0, 2) == 0;
    if (equal != prefix_equal) comparator_ok = false;
  }
  c.expect(comparator_ok, "comparator correct on all " +
                              std::to_string(cs.game.type_space.size()) +
                              " admissible type pairs");
  EquilibriumReport rep =
      check_epsilon_nash(cs.game, cs.profile, Rat(0), cs.candidates);
  c.expect(rep.verdict_holds, "prefix-sending profile is a 0-Nash equilibrium");
  StrategyProfile full = profile_from_labels(cs.game, {"full", "full"});
  Rat u_full = expected_utility(cs.game, full, Subject::of_player(1),
                                EvalMode::exact_mode())
                   .value;
  EquilibriumReport frep =
      check_epsilon_nash(cs.game, full, Rat(0), cs.candidates);
  c.expect(u_full == 0 && !frep.verdict_holds,
           "full-type reporting earns exactly 0 and is not an equilibrium");
}

void criterion5_roundtrip() {
  Criterion c(5, "solver round trip with the binary-decimal sampler");
  CaseStudy free_cs = build_roshambo_free();
  FiniteBayesianGame fg =
      induce_finite_game(free_cs.game, {"rock", "paper", "scissors"});
  MixedEquilibrium eq = solve_support_enumeration(fg);
  std::vector<MachineProgram> base = {free_cs.game.machine("rock"),
                                      free_cs.game.machine("paper"),
                                      free_cs.game.machine("scissors")};
  MachineProgram s1 = lift_to_sampler_machine(eq, 1, 0, fg, base);
  MachineProgram s2 = lift_to_sampler_machine(eq, 2, 0, fg, base);

  GameSpec g = build_roshambo(Rat(1), Rat(2)).game;
  for (auto& spec : g.complexity) spec.free_randomization = true;
  StrategyProfile prof;
  prof.assignment = {s1, s2};
  CandidateClass cls = build_roshambo(Rat(1), Rat(2)).candidates;
  cls.label = "roundtrip candidates plus lifted samplers";
  cls.per_player[0].push_back(s1);
  cls.per_player[1].push_back(s2);
  EquilibriumReport rep = check_epsilon_nash(g, prof, Rat(0), cls);
  c.expect(rep.verdict_holds,
           "induce -> solve -> lift profile certified eps=0 Nash under "
           "free randomization");

  // Exact conditional law at bit depth 8 and unresolved mass.
  RunBudget budget{4096, 64, 64};
  std::map<std::string, Rat> law;
  Rat resolved = 0, residual = 0;
  std::vector<std::string> stack = {""};
  while (!stack.empty()) {
    std::string tape = std::move(stack.back());
    stack.pop_back();
    try {
      RunResult r = run_machine(s1, "", tape, budget);
      Rat mass(Int(1), Int(1) << static_cast<unsigned>(tape.size()));
      law[r.output] += mass;
      resolved += mass;
    } catch (const TapeExhausted&) {
      if (tape.size() >= 8) {
        residual += Rat(Int(1), Int(1) << static_cast<unsigned>(tape.size()));
        continue;
      }
      stack.push_back(tape + "1");
      stack.push_back(tape + "0");
    }
  }
  for (auto& [k, v] : law) v /= resolved;
  c.expect(law.size() == 3 && law.at("0") == Rat(1, 3) &&
               law.at("1") == Rat(1, 3) && law.at("2") == Rat(1, 3),
           "conditional output law at depth 8 equals (1/3, 1/3, 1/3) exactly");
  c.expect(residual <= Rat(1, 256),
           "unresolved mass at depth 8 is " + rat_to_string(residual) +
               " <= 2^-8");
}

void criterion6_universal() {
  Criterion c(6, "universal implementation sanity on a 3-game family");
  UniversalFixture fx = build_universal_fixture();
  SpeedupSpec p = SpeedupSpec::identity();

  EquilibriumReport ident = check_universal_implementation(
      fx.lambda_profile, fx.f, fx.f, fx.family, fx.coalition_set, p, Rat(0),
      fx.candidates);
  bool nonvacuous = false;
  for (const auto& row : ident.universal_rows)
    if (!row.vacuous) nonvacuous = true;
  c.expect(ident.verdict_holds && nonvacuous,
           "identity implementation passes on the family (antecedents "
           "non-vacuous)");

  EquilibriumReport corrupt = check_universal_implementation(
      fx.corrupted_profile, fx.f, fx.f, fx.family, fx.coalition_set, p, Rat(0),
      fx.candidates);
  bool tv_one = false;
  for (const auto& row : corrupt.universal_rows)
    if (!row.vacuous && !row.clause2 &&
        row.note.find("total variation 1 ") != std::string::npos)
      tv_one = true;
  c.expect(!corrupt.verdict_holds && tv_one,
           "one-bit-corrupted protocol fails clause 2 with total-variation "
           "witness 1");

  AcceptabilityReport acc_l =
      check_M_acceptable(fx.family[0], fx.lambda_profile, fx.f, 1);
  AcceptabilityReport acc_s =
      check_M_acceptable(fx.family[0], fx.slow_profile, fx.f, 1);
  c.expect(acc_l.acceptable && !acc_s.acceptable,
           "steps-complexity M-acceptability accepts Lambda and rejects the "
           "slowed protocol");
}

GameSpec normalize_affine(const GameSpec& in, const Rat& lo, const Rat& hi) {
  GameSpec g = in;
  std::vector<ExprPtr> rescaled;
  for (const auto& u : g.utilities)
    rescaled.push_back(parse_expr("((" + expr_to_text(u) + ") - (" +
                                  rat_to_string(lo) + ")) / (" +
                                  rat_to_string(hi - lo) + ")"));
  g.utilities = std::move(rescaled);
  g.normalized = true;
  return g;
}

void criterion7_properties() {
  Criterion c(7, "property suites");

  {  // The bot-zero law across shipped specs and 100 generated programs.
    std::mt19937_64 rng(101);
    auto specs = shipped_complexity_specs();
    bool ok = true;
    int halting = 0;
    for (int i = 0; i < 100; ++i) {
      MachineProgram prog = random_closed_program(rng);
      auto outcome =
          run_outcome(prog, random_bits(rng, 3), random_bits(rng, 8));
      if (!outcome.ok) continue;
      ++halting;
      for (const auto& spec : specs)
        if (evaluate_complexity(spec, prog, outcome.result.view,
                                outcome.result.meter, std::nullopt) < 1)
          ok = false;
    }
    View v;
    RunMeter m;
    for (const auto& spec : specs)
      if (evaluate_complexity(spec, canonical_bot(), v, m, std::nullopt) != 0)
        ok = false;
    c.expect(ok && halting >= 30, "bot-zero law over " +
                                      std::to_string(halting) +
                                      " halting generated programs x " +
                                      std::to_string(specs.size()) + " specs");
  }

  {  // Determinism and view sufficiency over 1000 generated triples.
    std::mt19937_64 rng(103);
    bool ok = true;
    int sufficiency = 0;
    for (int i = 0; i < 1000; ++i) {
      MachineProgram prog = random_closed_program(rng);
      std::string type = random_bits(rng, static_cast<int>(rng() % 5));
      std::string tape = random_bits(rng, static_cast<int>(rng() % 10));
      auto a = run_outcome(prog, type, tape);
      auto b = run_outcome(prog, type, tape);
      if (a.ok != b.ok) ok = false;
      if (a.ok && !(a.result.output == b.result.output &&
                    a.result.view == b.result.view &&
                    a.result.meter == b.result.meter))
        ok = false;
      if (!a.ok && a.error != b.error) ok = false;
      if (a.ok && !a.result.view.type_eof_read) {
        auto padded = run_outcome(prog, a.result.view.type_prefix + "0101",
                                  a.result.view.random_prefix + "1100");
        if (!padded.ok || padded.result.output != a.result.output ||
            !(padded.result.meter == a.result.meter))
          ok = false;
        ++sufficiency;
      }
    }
    c.expect(ok, "determinism on 1000 triples, view sufficiency on " +
                     std::to_string(sufficiency) + " proper-prefix runs");
  }

  {  // Hoeffding agreement: 99% confidence, 1e4 samples, 200 seeds per game.
    struct Entry {
      std::string name;
      GameSpec game;
      std::vector<std::string> labels;
    };
    std::vector<Entry> entries;
    entries.push_back({"roshambo", normalized_roshambo_game(),
                       {"uniform", "rock"}});
    entries.push_back(
        {"primality",
         normalize_affine(
             build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2)).game,
             Rat(-1002), Rat(2)),
         {"tester"}});
    entries.push_back({"frpd",
                       normalize_affine(
                           build_frpd(10, Rat(9, 10), Rat(7, 10), 1).game,
                           Rat(-40), Rat(40)),
                       {"tft", "tft"}});
    entries.push_back({"revelation", build_revelation(5, 1).game,
                       {"prefix", "prefix"}});
    entries.back().game.normalized = true;
    bool all_ok = true;
    for (auto& e : entries) {
      e.game.validate();
      StrategyProfile prof = profile_from_labels(e.game, e.labels);
      Rat exact = expected_utility(e.game, prof, Subject::of_player(1),
                                   EvalMode::exact_mode())
                      .value;
      double exact_d = rat_to_double(exact);
      int failures = 0;
      for (uint64_t seed = 1; seed <= 200; ++seed) {
        UtilityOutcome s =
            expected_utility(e.game, prof, Subject::of_player(1),
                             EvalMode::sampled(seed, 10000, 0.99));
        if (std::abs(s.estimate - exact_d) > s.half_width) ++failures;
      }
      bool ok = failures <= 4;  // 2% of 200 seeds
      all_ok = all_ok && ok;
      c.expect(ok, e.name + ": " + std::to_string(failures) +
                       "/200 seeds outside the Hoeffding half-width");
    }
    (void)all_ok;
  }

  {  // Positive-affine gap scaling on 50 generated games.
    std::mt19937_64 rng(107);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      GeneratedGame gg = random_small_game(rng);
      Rat a(1 + static_cast<int64_t>(rng() % 5), 1 + (rng() % 3));
      Rat b(static_cast<int64_t>(rng() % 7) - 3, 1 + (rng() % 2));
      GameSpec scaled = gg.game;
      for (auto& u : scaled.utilities)
        u = parse_expr(rat_to_string(a) + " * (" + expr_to_text(u) + ") + " +
                       rat_to_string(b));
      EquilibriumReport base =
          check_epsilon_nash(gg.game, gg.profile, Rat(1, 7), gg.candidates);
      EquilibriumReport after = check_epsilon_nash(
          scaled, gg.profile, Rat(1, 7) * a, gg.candidates);
      if (base.verdict_holds != after.verdict_holds) ok = false;
      for (size_t i = 0; i < base.subjects.size() && ok; ++i)
        for (size_t j = 0; j < base.subjects[i].gaps.size(); ++j)
          if (after.subjects[i].gaps[j].gap !=
              a * base.subjects[i].gaps[j].gap)
            ok = false;
    }
    c.expect(ok, "gap tables scale exactly under u -> a*u + b on 50 games");
  }

  {  // Speedup and candidate-class monotonicity on 50 generated games.
    std::mt19937_64 rng(109);
    SpeedupSpec p_big, p_small;
    p_big.p = parse_expr("4*t");
    p_big.homogeneous = true;
    p_small.p = parse_expr("2*t");
    p_small.homogeneous = true;
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      GeneratedGame gg = random_small_game(rng, /*monotone_own_c=*/true);
      EquilibriumReport big =
          check_p_robust(gg.game, gg.profile, p_big, Rat(0), gg.candidates);
      EquilibriumReport small =
          check_p_robust(gg.game, gg.profile, p_small, Rat(0), gg.candidates);
      if (big.verdict_holds && !small.verdict_holds) ok = false;
      EquilibriumReport full =
          check_epsilon_nash(gg.game, gg.profile, Rat(0), gg.candidates);
      CandidateClass sub = gg.candidates;
      for (auto& list : sub.per_player) list.resize(1);
      EquilibriumReport subrep =
          check_epsilon_nash(gg.game, gg.profile, Rat(0), sub);
      if (full.verdict_holds && !subrep.verdict_holds) ok = false;
    }
    c.expect(ok, "speedup and candidate-class monotonicity on 50 games");
  }
}

}  // namespace

int main() {
  std::printf("acceptance suite: exact reproduction of the worked examples\n");
  criterion1_roshambo();
  criterion2_frpd();
  criterion3_primality();
  criterion4_revelation();
  criterion5_roundtrip();
  criterion6_universal();
  criterion7_properties();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "mge/cases.hpp"
#include "mge/equilibrium.hpp"
#include "testgen.hpp"

using namespace mge;

TEST_CASE("bot-zero law on generated programs, all complexity kinds") {
  std::mt19937_64 rng(11);
  std::vector<ComplexityFnSpec> specs = shipped_complexity_specs();
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    MachineProgram prog = random_closed_program(rng);
    auto outcome = run_outcome(prog, random_bits(rng, 3), random_bits(rng, 8));
    if (!outcome.ok) continue;
    for (const auto& spec : specs) {
      int64_t c = evaluate_complexity(spec, prog, outcome.result.view,
                                      outcome.result.meter, std::nullopt);
      CHECK(c >= 1);
      ++checked;
    }
  }
  CHECK(checked > 100);  // plenty of halting runs
  View v;
  RunMeter m;
  for (const auto& spec : specs)
    CHECK(evaluate_complexity(spec, canonical_bot(), v, m, std::nullopt) == 0);
}

TEST_CASE("determinism and view sufficiency on generated triples") {
  std::mt19937_64 rng(23);
  int sufficiency_checked = 0;
  for (int i = 0; i < 1000; ++i) {
    MachineProgram prog = random_closed_program(rng);
    std::string type = random_bits(rng, static_cast<int>(rng() % 5));
    std::string tape = random_bits(rng, static_cast<int>(rng() % 10));
    auto a = run_outcome(prog, type, tape);
    auto b = run_outcome(prog, type, tape);
    CHECK(a.ok == b.ok);
    if (a.ok) {
      CHECK(a.result.output == b.result.output);
      CHECK(a.result.view == b.result.view);
      CHECK(a.result.meter == b.result.meter);
    } else {
      CHECK(a.error == b.error);
    }
    if (a.ok && !a.result.view.type_eof_read) {
      auto padded = run_outcome(prog, a.result.view.type_prefix + "0110",
                                a.result.view.random_prefix + "1010");
      REQUIRE(padded.ok);
      CHECK(padded.result.output == a.result.output);
      CHECK(padded.result.meter == a.result.meter);
      ++sufficiency_checked;
    }
    if (a.ok) {
      // Budget monotonicity: a larger budget never changes a halting run.
      RunBudget big{4000, 640, 320};
      RunResult r = run_machine(prog, type, tape, big);
      CHECK(r.output == a.result.output);
      CHECK(r.meter == a.result.meter);
    }
  }
  CHECK(sufficiency_checked > 200);
}

TEST_CASE("positive-affine rescaling multiplies every gap by the factor") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratedGame gg = random_small_game(rng);
    Rat a(1 + static_cast<int64_t>(rng() % 5), 1 + (rng() % 3));
    Rat b(static_cast<int64_t>(rng() % 7) - 3, 1 + (rng() % 2));
    GameSpec scaled = gg.game;
    for (auto& u : scaled.utilities) {
      ExprPtr original = u;
      u = parse_expr(rat_to_string(a) + " * (" + expr_to_text(original) +
                     ") + " + rat_to_string(b));
    }
    Rat eps(static_cast<int64_t>(rng() % 3), 2);
    EquilibriumReport base =
        check_epsilon_nash(gg.game, gg.profile, eps, gg.candidates);
    EquilibriumReport after =
        check_epsilon_nash(scaled, gg.profile, eps * a, gg.candidates);
    CHECK(base.verdict_holds == after.verdict_holds);
    REQUIRE(base.subjects.size() == after.subjects.size());
    for (size_t i = 0; i < base.subjects.size(); ++i) {
      CHECK(after.subjects[i].max_gap == a * base.subjects[i].max_gap);
      for (size_t j = 0; j < base.subjects[i].gaps.size(); ++j)
        CHECK(after.subjects[i].gaps[j].gap ==
              a * base.subjects[i].gaps[j].gap);
    }
  }
}

TEST_CASE("speedup monotonicity and the identity reduction") {
  std::mt19937_64 rng(41);
  SpeedupSpec p_big, p_small;
  p_big.p = parse_expr("4*t");
  p_big.homogeneous = true;
  p_big.label = "4t";
  p_small.p = parse_expr("2*t");
  p_small.homogeneous = true;
  p_small.label = "2t";
  for (int trial = 0; trial < 50; ++trial) {
    GeneratedGame gg = random_small_game(rng, /*monotone_own_c=*/true);
    EquilibriumReport big =
        check_p_robust(gg.game, gg.profile, p_big, Rat(0), gg.candidates);
    EquilibriumReport small =
        check_p_robust(gg.game, gg.profile, p_small, Rat(0), gg.candidates);
    if (big.verdict_holds) CHECK(small.verdict_holds);

    EquilibriumReport ident = check_p_robust(
        gg.game, gg.profile, SpeedupSpec::identity(), Rat(0), gg.candidates);
    EquilibriumReport nash =
        check_epsilon_nash(gg.game, gg.profile, Rat(0), gg.candidates);
    CHECK(ident.verdict_holds == nash.verdict_holds);
    for (size_t i = 0; i < nash.subjects.size(); ++i)
      CHECK(ident.subjects[i].max_gap == nash.subjects[i].max_gap);
  }
}

TEST_CASE("candidate-class monotonicity on generated games") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratedGame gg = random_small_game(rng);
    EquilibriumReport full =
        check_epsilon_nash(gg.game, gg.profile, Rat(0), gg.candidates);
    CandidateClass sub = gg.candidates;
    for (auto& list : sub.per_player)
      if (list.size() > 1) list.resize(list.size() / 2);
    EquilibriumReport subrep =
        check_epsilon_nash(gg.game, gg.profile, Rat(0), sub);
    if (full.verdict_holds) CHECK(subrep.verdict_holds);
  }
}

TEST_CASE("exact and sampled evaluations agree within the half-width") {
  // Light version of the Hoeffding suite (the acceptance binary runs the
  // full 200-seed load): 30 seeds on the normalized roshambo variant.
  GameSpec g = normalized_roshambo_game();
  StrategyProfile prof = profile_from_labels(g, {"uniform", "rock"});
  Rat exact = expected_utility(g, prof, Subject::of_player(1),
                               EvalMode::exact_mode())
                  .value;
  int failures = 0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    UtilityOutcome s = expected_utility(g, prof, Subject::of_player(1),
                                        EvalMode::sampled(seed, 2000, 0.99));
    if (std::abs(s.estimate - rat_to_double(exact)) > s.half_width)
      ++failures;
  }
  CHECK(failures <= 2);
}

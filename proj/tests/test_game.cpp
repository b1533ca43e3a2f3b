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

#include "mge/cases.hpp"
#include "mge/loader.hpp"

using namespace mge;

TEST_CASE("load_game: roshambo export round trip") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  Json doc = game_to_json(cs.game);
  GameSpec again = load_game(doc);
  CHECK(again.player_count == 2);
  CHECK(again.type_space.size() == 1);
  CHECK(again.machine_class == cs.game.machine_class);
  StrategyProfile prof = profile_from_labels(again, {"rock", "rock"});
  Rat u = expected_utility(again, prof, Subject::of_player(1),
                           EvalMode::exact_mode())
              .value;
  CHECK(u == Rat(-1));
}

TEST_CASE("load_game: probabilities must sum to one") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  Json doc = game_to_json(cs.game);
  doc["types"][0]["p"] = "255/256";
  CHECK_THROWS_AS(load_game(doc), ProbabilityNotOne);
}

TEST_CASE("primality type space: odd numbers strictly between 8 and 16") {
  CaseStudy cs = build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2));
  std::vector<std::string> types;
  for (const auto& tp : cs.game.type_space) types.push_back(tp.entries[0]);
  CHECK(types == std::vector<std::string>{"1001", "1011", "1101", "1111"});
  for (const auto& tp : cs.game.type_space) CHECK(tp.prob == Rat(1, 4));
}

TEST_CASE("expected utility: roshambo (rock, rock) is exactly -1") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  StrategyProfile prof = profile_from_labels(cs.game, {"rock", "rock"});
  UtilityOutcome u =
      expected_utility(cs.game, prof, Subject::of_player(1),
                       EvalMode::exact_mode());
  CHECK(u.value == Rat(-1));
  CHECK(u.max_residual == 0);
}

TEST_CASE("expected utility: FRPD tit-for-tat pair earns the geometric sum") {
  CaseStudy cs = build_frpd(10, Rat(9, 10), Rat(7, 10), 1);
  Rat expected = 0;
  for (int k = 1; k <= 10; ++k) expected += Rat(3) * rat_pow(Rat(9, 10), k);
  Rat u = expected_utility(cs.game, cs.profile, Subject::of_player(1),
                           EvalMode::exact_mode())
              .value;
  CHECK(u == expected);
}

TEST_CASE("always-defect against tit-for-tat, N=3: 5d - 3d^2 - 3d^3") {
  CaseStudy cs = build_frpd(3, Rat(9, 10), Rat(7, 10), 1);
  // always-defect is the stateless automaton playing D on every signal.
  MachineProgram ad;
  for (const auto& p : stateless_round_automata())
    if (p.label == "s1_111") ad = p;
  REQUIRE(!ad.label.empty());
  StrategyProfile prof;
  prof.assignment = {ad, cs.game.machine("tft")};
  Rat d(9, 10);
  Rat expected = Rat(5) * d - Rat(3) * d * d - Rat(3) * d * d * d;
  Rat u = expected_utility(cs.game, prof, Subject::of_player(1),
                           EvalMode::exact_mode())
              .value;
  CHECK(u == expected);
}

TEST_CASE("bot profile in a constant game earns the constant") {
  GameSpec g;
  g.name = "const";
  g.player_count = 1;
  g.type_space.push_back(TypeProfile{{"", ""}, Rat(1)});
  g.machines["bot"] = canonical_bot();
  g.machine_class = {"bot"};
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kSteps;
  g.complexity = {spec};
  g.utilities.push_back(parse_expr("7/3"));
  g.validate();
  StrategyProfile prof;
  prof.assignment = {canonical_bot()};
  CHECK(expected_utility(g, prof, Subject::of_player(1),
                         EvalMode::exact_mode())
            .value == Rat(7, 3));
}

TEST_CASE("action distribution: deterministic point mass, sampler thirds") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  StrategyProfile det = profile_from_labels(cs.game, {"rock", "paper"});
  ActionDistribution d1 = action_distribution(cs.game, det, std::nullopt);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].at({"0", "1"}) == Rat(1));

  StrategyProfile mixed = profile_from_labels(cs.game, {"uniform", "rock"});
  ActionDistribution d2 = action_distribution(cs.game, mixed, std::nullopt);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].at({"0", "0"}) == Rat(1, 3));
  CHECK(d2[0].at({"1", "0"}) == Rat(1, 3));
  CHECK(d2[0].at({"2", "0"}) == Rat(1, 3));
}

TEST_CASE("benign coalition playouts equal individual playouts") {
  CaseStudy cs = build_frpd(5, Rat(9, 10), Rat(7, 10), 1);
  ActionDistribution individual =
      action_distribution(cs.game, cs.profile, std::nullopt);
  StrategyProfile with_benign = cs.profile;
  with_benign.coalition = benign_coalition_machine(cs.profile, {1, 2});
  ActionDistribution benign =
      action_distribution(cs.game, with_benign, std::nullopt);
  CHECK(individual == benign);

  CoalitionMachine bot_ctrl = benign_coalition_machine(
      [] {
        StrategyProfile p;
        p.assignment = {canonical_bot(), canonical_bot()};
        return p;
      }(),
      {1});
  CHECK(bot_ctrl.label != "bot");  // the controller is not the bot program
}

TEST_CASE("linearity: expected utility is affine in the type distribution") {
  CaseStudy cs = build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2));
  StrategyProfile prof = profile_from_labels(cs.game, {"const1"});
  GameSpec a = cs.game, b = cs.game, mid = cs.game;
  a.type_space[0].prob = Rat(1, 2);
  a.type_space[1].prob = Rat(1, 6);
  a.type_space[2].prob = Rat(1, 6);
  a.type_space[3].prob = Rat(1, 6);
  b.type_space[0].prob = Rat(1, 8);
  b.type_space[1].prob = Rat(3, 8);
  b.type_space[2].prob = Rat(1, 4);
  b.type_space[3].prob = Rat(1, 4);
  for (size_t i = 0; i < 4; ++i)
    mid.type_space[i].prob =
        (a.type_space[i].prob + b.type_space[i].prob) / 2;
  auto value = [&](const GameSpec& g) {
    return expected_utility(g, prof, Subject::of_player(1),
                            EvalMode::exact_mode())
        .value;
  };
  CHECK(value(mid) == (value(a) + value(b)) / 2);
}

TEST_CASE("nature's type can drive utilities") {
  // The uncertainty-about-primality device: nature's state decides which
  // answer pays, independently of the visible type.
  GameSpec g;
  g.name = "nature";
  g.player_count = 1;
  g.type_space.push_back(TypeProfile{{"1", "0"}, Rat(1, 3)});
  g.type_space.push_back(TypeProfile{{"1", "1"}, Rat(2, 3)});
  g.machines["bot"] = canonical_bot();
  MachineProgram c1;
  c1.label = "const1";
  c1.register_count = 0;
  c1.instructions = {Instruction{Op::kEmit, 0, 0, 0, 0, "1"},
                     Instruction{Op::kHalt, 0, 0, 0, 0, ""}};
  g.machines["const1"] = c1;
  g.machine_class = {"const1"};
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kSteps;
  g.complexity = {spec};
  g.utilities.push_back(
      parse_expr("if(eq(a1, tn), 2, if(eq(a1, \"\"), 0, -2))"));
  g.validate();
  StrategyProfile prof = profile_from_labels(g, {"const1"});
  // Correct when nature says "1" (probability 2/3): 2*(2/3) - 2*(1/3).
  CHECK(expected_utility(g, prof, Subject::of_player(1),
                         EvalMode::exact_mode())
            .value == Rat(2, 3));
}

TEST_CASE("rejection residual is reported and bounded") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  StrategyProfile prof = profile_from_labels(cs.game, {"uniform", "uniform"});
  UtilityOutcome u = expected_utility(cs.game, prof, Subject::of_player(1),
                                      EvalMode::exact_mode());
  CHECK(u.value == Rat(-2));  // uniform payoff 0, randomized cost 2
  // Two samplers at depth cap 8 each: residual mass 2*(1/256) - (1/256)^2.
  CHECK(u.max_residual ==
        Rat(2, 256) - Rat(1, 256 * 256));
  CHECK(u.max_residual <= cs.game.limits.residual_tolerance);
}

TEST_CASE("exact enumeration respects the configured limit") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  GameSpec g = cs.game;
  g.limits.exact_limit = 3;  // the two-sampler enumeration needs far more
  StrategyProfile prof = profile_from_labels(g, {"uniform", "uniform"});
  CHECK_THROWS_AS(
      expected_utility(g, prof, Subject::of_player(1), EvalMode::exact_mode()),
      ExactModeOverflow);
}

TEST_CASE("sampled mode: reproducible, memoized, Hoeffding half-width") {
  CaseStudy cs = build_roshambo(Rat(1), Rat(2));
  GameSpec g = cs.game;
  // Normalize: payoffs lie in [-3, 1], rescale to [0,1].
  g.utilities.clear();
  g.utilities.push_back(parse_expr(
      "(if(eq(a1, a2), 0, if(eq(a1, \"0\"), if(eq(a2, \"2\"), 1, -1),"
      " if(eq(a1, \"1\"), if(eq(a2, \"0\"), 1, -1),"
      " if(eq(a2, \"1\"), 1, -1)))) - if(eq(c1, 0), 0, if(ge(c1, 2), 2, 1))"
      " + 3) / 4"));
  g.utilities.push_back(parse_expr("1/2"));
  g.normalized = true;
  g.validate();
  StrategyProfile prof = profile_from_labels(g, {"uniform", "rock"});
  UtilityOutcome exact =
      expected_utility(g, prof, Subject::of_player(1), EvalMode::exact_mode());
  UtilityOutcome s1 = expected_utility(g, prof, Subject::of_player(1),
                                       EvalMode::sampled(42, 4000, 0.99));
  UtilityOutcome s2 = expected_utility(g, prof, Subject::of_player(1),
                                       EvalMode::sampled(42, 4000, 0.99));
  CHECK(s1.estimate == s2.estimate);  // same seed, identical runs
  CHECK(std::abs(s1.estimate - rat_to_double(exact.value)) <= s1.half_width);
  CHECK(s1.half_width == doctest::Approx(
                             std::sqrt(std::log(200.0) / 8000.0)));
}

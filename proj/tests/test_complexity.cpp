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

#include "mge/cases.hpp"
#include "mge/complexity.hpp"
#include "mge/dsl.hpp"

using namespace mge;

namespace {

RunResult run_on(const MachineProgram& p, const std::string& type,
                 const std::string& tape = "") {
  RunBudget budget;
  return run_machine(p, type, tape, budget);
}

MachineProgram rock() {
  MachineProgram p;
  p.label = "rock";
  p.register_count = 0;
  p.instructions = {Instruction{Op::kEmit, 0, 0, 0, 0, "0"},
                    Instruction{Op::kHalt, 0, 0, 0, 0, ""}};
  return p;
}

}  // namespace

TEST_CASE("steps kind maps bot to zero and non-bot runs to their step count") {
  ComplexityFnSpec steps;
  steps.kind = ComplexityKind::kSteps;
  View empty_view;
  RunMeter empty_meter;
  CHECK(evaluate_complexity(steps, canonical_bot(), empty_view, empty_meter,
                            std::nullopt) == 0);
  RunResult r = run_on(rock(), "01");
  CHECK(evaluate_complexity(steps, rock(), r.view, r.meter, std::nullopt) == 2);
}

TEST_CASE("roshambo cost spec: deterministic 1, randomized 2") {
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kRandCharge;
  RunResult det = run_on(rock(), "");
  CHECK(evaluate_complexity(spec, rock(), det.view, det.meter, std::nullopt) ==
        1);
  MachineProgram coin = parse_program(
      "label: coin\nregisters: 1\nREAD_RAND r0\nEMITR r0\nHALT\n");
  RunResult rnd = run_on(coin, "", "1");
  CHECK(evaluate_complexity(spec, coin, rnd.view, rnd.meter, std::nullopt) ==
        2);
}

TEST_CASE("coarse threshold reports the band; the tester is never free") {
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kCoarseThreshold;
  spec.threshold = 2;
  CaseStudy cs = build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2));
  const MachineProgram& tester = cs.game.machine("tester");
  for (const auto& tp : cs.game.type_space) {
    RunResult r = run_on(tester, tp.entries[0]);
    CHECK(r.meter.steps > 2);  // the band boundary, confirmed by running
    CHECK(evaluate_complexity(spec, tester, r.view, r.meter, std::nullopt) ==
          2);
  }
  const MachineProgram& safe = cs.game.machine("safe");
  RunResult s = run_on(safe, "1011");
  CHECK(evaluate_complexity(spec, safe, s.view, s.meter, std::nullopt) == 1);
}

TEST_CASE("state charge keys on carried bits") {
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kStateCharge;
  RunMeter stateless;
  stateless.steps = 5;
  RunMeter stateful = stateless;
  stateful.carried_state_bits = 4;
  View v;
  CHECK(evaluate_complexity_meter(spec, false, "x", v, stateless,
                                  std::nullopt) == 1);
  CHECK(evaluate_complexity_meter(spec, false, "x", v, stateful,
                                  std::nullopt) == 2);
}

TEST_CASE("worst-case complexity enumerates all same-length inputs") {
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kWorstCasePlusSize;
  RunBudget budget;
  CHECK(worst_case_complexity(spec, canonical_bot(), 4, budget) == 0);

  MachineProgram c2 =
      parse_program("label: c2\nregisters: 0\nEMIT \"2\"\nHALT\n");
  CHECK(worst_case_complexity(spec, c2, 4, budget) ==
        2 + static_cast<int64_t>(c2.instructions.size()));

  CaseStudy cs = build_primality(4, Rat(1), Rat(2), Rat(-1000), 2, Rat(2));
  const MachineProgram& tester = cs.game.machine("tester");
  int64_t max_steps = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::string t;
    for (int b = 3; b >= 0; --b) t.push_back((mask >> b) & 1 ? '1' : '0');
    max_steps = std::max(max_steps, run_on(tester, t).meter.steps);
  }
  CHECK(worst_case_complexity(spec, tester, 4, budget) ==
        max_steps + static_cast<int64_t>(tester.instructions.size()));
}

TEST_CASE("validation enforces the bot-zero law") {
  CaseStudy frpd = build_frpd(4, Rat(9, 10), Rat(7, 10), 1);
  std::vector<MachineProgram> probes = {canonical_bot(),
                                        frpd.game.machine("tft")};
  ComplexityFnSpec steps;
  steps.kind = ComplexityKind::kSteps;
  CHECK(validate_complexity_spec(steps, probes).ok);

  ComplexityFnSpec zero;
  zero.kind = ComplexityKind::kWeightedSum;
  zero.w_steps = 0;
  CHECK_FALSE(validate_complexity_spec(zero, probes).ok);

  ComplexityFnSpec c0;
  c0.kind = ComplexityKind::kConstantForProtocol;
  c0.c0 = 1;
  c0.protocol_labels = {"lambda", "tft"};
  auto report = validate_complexity_spec(c0, probes);
  CHECK(report.ok);

  std::vector<MachineProgram> no_bot = {frpd.game.machine("tft")};
  CHECK_THROWS_AS(validate_complexity_spec(steps, no_bot), InvalidSpec);
}

TEST_CASE("pointwise speedup partial order") {
  CaseStudy frpd = build_frpd(4, Rat(9, 10), Rat(7, 10), 1);
  std::vector<MachineProgram> probes = {canonical_bot(),
                                        frpd.game.machine("tft")};
  auto battery = battery_runs(probes);
  REQUIRE(!battery.empty());
  ComplexityFnSpec fast;
  fast.kind = ComplexityKind::kSteps;
  ComplexityFnSpec slow;
  slow.kind = ComplexityKind::kWeightedSum;
  slow.w_steps = 2;
  auto doubling = [](int64_t t) { return 2 * t; };
  auto ident = [](int64_t t) { return t; };
  CHECK(is_at_most_p_speedup(fast, slow, doubling, battery));
  std::string witness;
  CHECK_FALSE(is_at_most_p_speedup(fast, slow, ident, battery, &witness));
  CHECK(!witness.empty());
}

TEST_CASE("free randomization charges the handed-off base machine only") {
  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kRandCharge;
  spec.free_randomization = true;
  RunMeter meter;
  meter.steps = 12;
  meter.rand_bits = 3;
  meter.has_handoff = true;
  meter.handoff_label = "rock";
  meter.steps_at_handoff = 10;
  meter.rand_at_handoff = 3;  // all randomness spent selecting
  meter.handoff_size = 2;
  View v;
  // The base machine used no random bits of its own: deterministic price.
  CHECK(evaluate_complexity_meter(spec, false, "sampler", v, meter,
                                  std::nullopt) == 1);
}

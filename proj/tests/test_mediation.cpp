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
#include "mge/dsl.hpp"
#include "mge/mediator.hpp"

using namespace mge;

namespace {

RunBudget budget() { return RunBudget{512, 64, 16}; }

MachineProgram send_literal(const std::string& label,
                            const std::string& payload) {
  return parse_program("label: " + label +
                       "\nregisters: 0\nAPPEND \"" + payload +
                       "\"\nSEND\nHALT\n");
}

MachineProgram receive_and_echo(const std::string& label) {
  return parse_program("label: " + label +
                       "\nregisters: 2\n"
                       "RECV r0\n"
                       "RECVSENDER r0\n"
                       "EMITR r0\n"
                       "EMIT \":\"\n"
                       "copy:\n"
                       "READMSG r1\n"
                       "JEQI r1 -1 done\n"
                       "EMITCODE r1\n"
                       "JMP copy\n"
                       "done:\n"
                       "HALT\n");
}

Transcript run2(const MachineProgram& m1, const MachineProgram& m2,
                const MediatorSpec& med,
                const std::vector<std::string>& types = {"", ""},
                const std::vector<std::string>& tapes = {"", "", ""}) {
  std::vector<PlayerBinding> players = {{&m1, 0}, {&m2, 1}};
  return execute_mediated(players, med, types, tapes, budget());
}

}  // namespace

TEST_CASE("comm forwards m;j with sender identity, readable next stage") {
  MachineProgram sender = send_literal("sender", "10;2");
  MachineProgram receiver = receive_and_echo("receiver");
  Transcript t = run2(sender, receiver, comm_mediator());
  CHECK(t.outputs[1] == "1:10");  // sender identity 1, payload "10"
  REQUIRE(t.stages.size() >= 2);
  CHECK(t.stages[0].deliveries.size() == 1);   // forwarded at stage 1
  CHECK(t.stages[0].deliveries[0].first == 2);
  CHECK_FALSE(t.stages[0].deliveries[0].second.mediator_signed);
}

TEST_CASE("comm ignores payloads without a recipient tag") {
  MachineProgram sender = send_literal("sender", "hello");
  MachineProgram idle = parse_program(
      "label: idle\nregisters: 0\nEMIT \"x\"\nHALT\n");
  Transcript t = run2(sender, idle, comm_mediator());
  CHECK(t.stages[0].deliveries.empty());
}

TEST_CASE("two same-stage messages to one recipient arrive in sender order") {
  MediatorSpec med = comm_mediator();
  MachineProgram s1 = send_literal("s1", "0;3");
  MachineProgram s2 = send_literal("s2", "1;3");
  MachineProgram sink = parse_program(
      "label: sink\nregisters: 2\n"
      "RECV r0\nREADMSG r1\nEMITCODE r1\n"
      "RECV r0\nREADMSG r1\nEMITCODE r1\nHALT\n");
  std::vector<PlayerBinding> players = {{&s1, 0}, {&s2, 1}, {&sink, 2}};
  Transcript t = execute_mediated(players, med, {"", "", ""},
                                  {"", "", "", ""}, budget());
  CHECK(t.outputs[2] == "01");  // player 1's payload first
}

TEST_CASE("functionality mediator computes XOR for the Lambda profile") {
  FunctionalitySpec f;
  f.kind = FunctionalitySpec::Kind::kTable;
  f.input_length = 1;
  for (const char* a : {"0", "1"})
    for (const char* b : {"0", "1"}) {
      std::string y = (a[0] != b[0]) ? "1" : "0";
      f.table[{a, b}] = {y, y};
    }
  MediatorSpec med = functionality_mediator(f);
  MachineProgram l1 = lambda_machine();
  MachineProgram l2 = lambda_machine();
  Transcript t = run2(l1, l2, med, {"1;z", "1;z"});
  CHECK(t.outputs[0] == "0");
  CHECK(t.outputs[1] == "0");
  // The Lambda machine reads x and the separator, never z.
  CHECK(t.views[0].type_prefix == "1;");

  // A silent player is treated as having sent 0^n.
  MachineProgram idle = parse_program(
      "label: idle\nregisters: 0\nEMIT \"-\"\nHALT\n");
  Transcript t2 = run2(idle, l2, med, {"1;z", "1;z"});
  CHECK(t2.outputs[1] == "1");  // xor(0, 1)
}

TEST_CASE("shared-coin functionality gives both players the same bit") {
  FunctionalitySpec f;
  f.kind = FunctionalitySpec::Kind::kSharedCoin;
  f.input_length = 1;
  MediatorSpec med = functionality_mediator(f);
  for (const std::string mediator_tape : {"0", "1"}) {
    MachineProgram l1 = lambda_machine();
    MachineProgram l2 = lambda_machine();
    Transcript t = run2(l1, l2, med, {"0;", "1;"}, {"", "", mediator_tape});
    CHECK(t.outputs[0] == mediator_tape);
    CHECK(t.outputs[1] == mediator_tape);
    CHECK(t.mediator_random_prefix == mediator_tape);
  }
}

TEST_CASE("Lambda ignores replies not signed by the mediator") {
  // Under comm, the forwarded message carries a sender identity but no
  // mediator signature: Lambda skips it, waits forever, and outputs nothing.
  MachineProgram chatter = send_literal("chatter", "11;2");
  MachineProgram lambda = lambda_machine();
  std::vector<PlayerBinding> players = {{&chatter, 0}, {&lambda, 1}};
  MediatorSpec med = comm_mediator();
  Transcript t = execute_mediated(players, med, {"", "0;"}, {"", "", ""},
                                  budget());
  CHECK(t.outputs[1] == "");
  CHECK_FALSE(t.meters[1].halted);
}

TEST_CASE("a ping-pong pair still running at the stage limit is an error") {
  // Each player forwards every received message back to the other.
  auto pinger = [](const std::string& label, const std::string& dest,
                   bool kickoff) {
    std::string text = "label: " + label + "\nregisters: 2\n";
    if (kickoff) text += "APPEND \"x;" + dest + "\"\nSEND\n";
    text +=
        "loop:\n"
        "RECV r0\n"
        "APPEND \"x;" + dest + "\"\n"
        "SEND\n"
        "JMP loop\n";
    return parse_program(text);
  };
  MachineProgram a = pinger("a", "2", true);
  MachineProgram b = pinger("b", "1", false);
  std::vector<PlayerBinding> players = {{&a, 0}, {&b, 1}};
  MediatorSpec med = comm_mediator();
  med.stage_limit = 6;
  CHECK_THROWS_AS(
      execute_mediated(players, med, {"", ""}, {"", "", ""}, budget()),
      StageLimitExceeded);
}

TEST_CASE("comparator replies whether the received prefixes are identical") {
  MediatorSpec med;
  med.kind = MediatorKind::kScripted;
  med.script = ScriptedSpec{ScriptedSpec::Kind::kComparator, 3, 0};
  med.stage_limit = 4;
  MachineProgram a = send_literal("a", "1010");
  MachineProgram b = send_literal("b", "1011");
  Transcript t = run2(a, b, med);
  // First three characters agree: the comparator answers "equal" to both.
  REQUIRE(t.stages[0].deliveries.size() == 2);
  CHECK(t.stages[0].deliveries[0].second.text == "1");
  CHECK(t.stages[0].deliveries[0].second.mediator_signed);
}

TEST_CASE("repeated harness: tit-for-tat pair cooperates throughout") {
  CaseStudy cs = build_frpd(10, Rat(9, 10), Rat(7, 10), 1);
  TypeOutcome oc = enumerate_playouts(cs.game, cs.profile, std::nullopt,
                                      cs.game.type_space[0]);
  REQUIRE(oc.leaves.size() == 1);
  CHECK(oc.leaves[0].outputs[0] == "0000000000");
  CHECK(oc.leaves[0].outputs[1] == "0000000000");
  CHECK(oc.leaves[0].meters[0].carried_state_bits == 0);  // tft is stateless
}

TEST_CASE("repeated harness: counting deviant carries four state bits") {
  CaseStudy cs = build_frpd(10, Rat(9, 10), Rat(7, 10), 1);
  StrategyProfile prof;
  prof.assignment = {count_defect_program(10, 10), cs.game.machine("tft")};
  TypeOutcome oc = enumerate_playouts(cs.game, prof, std::nullopt,
                                      cs.game.type_space[0]);
  REQUIRE(oc.leaves.size() == 1);
  CHECK(oc.leaves[0].outputs[0] == "0000000001");  // defects at the last round
  CHECK(oc.leaves[0].outputs[1] == "0000000000");
  CHECK(oc.leaves[0].meters[0].carried_state_bits == 4);  // ceil(log2 10)
}

TEST_CASE("Lambda profile under a functionality mediator realizes f exactly") {
  UniversalFixture fx = build_universal_fixture();
  const GameSpec& g = fx.family[0];
  ActionDistribution dist = action_distribution(g, fx.lambda_profile, fx.f);
  REQUIRE(dist.size() == g.type_space.size());
  for (size_t t = 0; t < dist.size(); ++t) {
    char x1 = g.type_space[t].entries[0][0];
    char x2 = g.type_space[t].entries[1][0];
    std::string y(1, (x1 != x2) ? '1' : '0');
    REQUIRE(dist[t].size() == 1);  // point mass on (f_1(x), f_2(x))
    CHECK(dist[t].at({y, y}) == Rat(1));
  }
}

TEST_CASE("transcript determinism under fixed tapes") {
  FunctionalitySpec f;
  f.kind = FunctionalitySpec::Kind::kSharedCoin;
  f.input_length = 1;
  MediatorSpec med = functionality_mediator(f);
  MachineProgram l1 = lambda_machine();
  MachineProgram l2 = lambda_machine();
  Transcript a = run2(l1, l2, med, {"0;", "1;"}, {"", "", "1"});
  Transcript b = run2(l1, l2, med, {"0;", "1;"}, {"", "", "1"});
  CHECK(a.outputs == b.outputs);
  CHECK(a.views == b.views);
  CHECK(transcript_to_text(a) == transcript_to_text(b));
}

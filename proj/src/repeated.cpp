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

#include "mge/repeated.hpp"

namespace mge {

std::pair<GameSpec, MediatorSpec> repeated_game_harness(
    const RepeatedGameParams& params) {
  if (params.rounds < 1) throw MgeError("repeated game needs rounds >= 1");
  if (!(params.discount > 0 && params.discount < 1))
    throw MgeError("repeated game needs 0 < discount < 1");
  if (params.memory_charge.size() != 2)
    throw MgeError("repeated harness is two-player: two memory charges");

  MediatorSpec nature;
  nature.kind = MediatorKind::kScripted;
  nature.script =
      ScriptedSpec{ScriptedSpec::Kind::kRepeatRelay, 0, params.rounds};
  nature.stage_limit = params.rounds;
  nature.label = "nature";

  GameSpec g;
  g.player_count = 2;
  g.input_length = 0;
  g.type_space.push_back(TypeProfile{{"", "", ""}, Rat(1)});
  g.repeated = RepeatedConfig{params.rounds};
  g.mediator = nature;
  g.machines["bot"] = canonical_bot();

  ComplexityFnSpec spec;
  spec.kind = ComplexityKind::kStateCharge;
  // Stateful band 3, stateless 1: a time-halving speedup maps 3 to 2, which
  // still sits in the charged band, so memory is not erased by fast clocks.
  spec.stateful_cost = 3;
  g.complexity = {spec, spec};

  // Per-player stage tables keyed (a1 move, a2 move).
  auto& pd1 = g.tables["pd1"];
  auto& pd2 = g.tables["pd2"];
  for (const auto& [moves, pay] : params.stage_payoff) {
    pd1[{std::string(1, moves.first), std::string(1, moves.second)}] = pay;
    pd2[{std::string(1, moves.second), std::string(1, moves.first)}] = pay;
  }
  if (pd1.size() != 4) throw MgeError("stage payoff table must cover 2x2");

  for (int player = 1; player <= 2; ++player) {
    std::string score =
        "sum(k, 1, " + std::to_string(params.rounds) + ", pow(" +
        rat_to_string(params.discount) + ", k) * table(\"pd" +
        std::to_string(player) + "\", charat(a1, k), charat(a2, k)))";
    const Rat& charge = params.memory_charge[player - 1];
    if (charge != 0)
      score += " - if(ge(c" + std::to_string(player) + ", 2), " +
               rat_to_string(charge) + ", 0)";
    g.utilities.push_back(parse_expr(score));
  }
  g.budget = RunBudget{256, 64, 8};
  g.monotone = true;
  return {std::move(g), std::move(nature)};
}

}  // namespace mge

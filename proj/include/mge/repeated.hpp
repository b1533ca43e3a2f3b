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

#ifndef MGE_REPEATED_HPP_
#define MGE_REPEATED_HPP_

#include <utility>

#include "mge/game.hpp"

namespace mge {

// Two-player repeated games via nature as a mediator: per-round automata
// receive the opponent's previous move as their signal ("" in round one),
// carry an explicit state slot between rounds, and the per-player utility is
// the discounted stage-payoff sum minus a memory charge for carried state.
struct RepeatedGameParams {
  int rounds = 10;
  Rat discount;                       // delta, in (1/2, 1)
  // Stage payoff to the row player, keyed (own move, opponent move) over
  // moves '0' (cooperate) and '1' (defect). Used symmetrically.
  std::map<std::pair<char, char>, Rat> stage_payoff;
  std::vector<Rat> memory_charge;     // per player; 0 disables the charge
};

std::pair<GameSpec, MediatorSpec> repeated_game_harness(
    const RepeatedGameParams& params);

}  // namespace mge

#endif  // MGE_REPEATED_HPP_

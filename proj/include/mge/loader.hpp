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

#ifndef MGE_LOADER_HPP_
#define MGE_LOADER_HPP_

#include <string>

#include <json.hpp>

#include "mge/equilibrium.hpp"
#include "mge/game.hpp"
#include "mge/solver.hpp"

namespace mge {

using Json = nlohmann::ordered_json;

// Game files are JSON documents; machines are inline DSL text, rationals are
// "p/q" strings, utilities are expression text.
GameSpec load_game(const Json& doc);
GameSpec load_game_text(const std::string& text);
GameSpec load_game_file(const std::string& path);

Json game_to_json(const GameSpec& game);

Json report_to_json(const EquilibriumReport& report);
std::string report_to_human(const EquilibriumReport& report);

Json utility_outcome_to_json(const UtilityOutcome& outcome);
Json mixed_equilibrium_to_json(const MixedEquilibrium& eq,
                               const FiniteBayesianGame& fg);

}  // namespace mge

#endif  // MGE_LOADER_HPP_

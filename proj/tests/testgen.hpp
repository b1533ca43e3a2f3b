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
// Test-only generators: random closed programs for the VM property suites
// and small random machine games for the equilibrium invariants.

#ifndef MGE_TESTS_TESTGEN_HPP_
#define MGE_TESTS_TESTGEN_HPP_

#include <random>
#include <string>
#include <vector>

#include "mge/complexity.hpp"
#include "mge/equilibrium.hpp"
#include "mge/game.hpp"

namespace mge {

struct ProgramOutcome {
  bool ok = false;
  RunResult result;
  std::string error;
};

// Runs under a fixed small budget, capturing errors as outcomes so that
// determinism can be asserted on faulting programs too.
ProgramOutcome run_outcome(const MachineProgram& prog, const std::string& type,
                           const std::string& tape);

std::string random_bits(std::mt19937_64& rng, int n);

// A random program over the port-free instruction subset: always
// syntactically valid, may loop or fault at runtime.
MachineProgram random_closed_program(std::mt19937_64& rng);

// One spec per shipped complexity kind that is evaluable from a meter.
std::vector<ComplexityFnSpec> shipped_complexity_specs();

struct GeneratedGame {
  GameSpec game;
  StrategyProfile profile;
  CandidateClass candidates;
};

// Two players, machines {c0, c1, coin}, random rational payoff table plus a
// nonnegative own-complexity charge (monotone by construction).
GeneratedGame random_small_game(std::mt19937_64& rng,
                                bool monotone_own_c = false);

// The roshambo case rescaled into [0,1] for sampled-mode tests.
GameSpec normalized_roshambo_game();

}  // namespace mge

#endif  // MGE_TESTS_TESTGEN_HPP_

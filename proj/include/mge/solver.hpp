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

#ifndef MGE_SOLVER_HPP_
#define MGE_SOLVER_HPP_

#include <string>
#include <vector>

#include "mge/game.hpp"

namespace mge {

struct NotComputationallyCheap : MgeError {
  using MgeError::MgeError;
};
struct SizeLimit : MgeError {
  using MgeError::MgeError;
};
struct NoEquilibriumInSupports : MgeError {
  using MgeError::MgeError;
};

// The finite standard Bayesian game the existence proof reduces to.
struct FiniteBayesianGame {
  int players = 1;
  std::vector<std::vector<std::string>> type_names;    // per player
  std::vector<std::vector<std::string>> action_names;  // per player
  std::vector<Rat> prior;               // joint over type profiles, row-major
  // utility[i][flat_type * action_profiles + flat_action]
  std::vector<std::vector<Rat>> utility;

  int64_t type_profiles() const;
  int64_t action_profiles() const;
  int64_t flat_type(const std::vector<int>& t) const;
  int64_t flat_action(const std::vector<int>& a) const;
};

struct MixedEquilibrium {
  // sigma[player][type][action]
  std::vector<std::vector<std::vector<Rat>>> sigma;
  Rat residual;  // certified max regret (0 for exact solutions)
  std::string provenance;
};

struct IterationCapExceeded : MgeError {
  IterationCapExceeded(std::string what, MixedEquilibrium best, Rat residual)
      : MgeError(std::move(what)),
        best(std::move(best)),
        residual(std::move(residual)) {}
  MixedEquilibrium best;
  Rat residual;
};

// Reduction for computationally cheap games: actions are the distinct output
// behaviors of the deterministic base machines per type; nature's type is
// folded into the prior.
FiniteBayesianGame induce_finite_game(const GameSpec& game,
                                      const std::vector<std::string>& base);

// Exact rational equilibrium via support enumeration (1 or 2 players),
// verifying the proof's Nash inequalities with zero tolerance. Supports are
// explored by increasing total size, lexicographic within a size.
MixedEquilibrium solve_support_enumeration(const FiniteBayesianGame& fg);

// Fictitious play with an exact best-response regret certificate; returns
// the first averaged profile with max regret <= epsilon.
MixedEquilibrium epsilon_ne_regret(const FiniteBayesianGame& fg,
                                   const Rat& epsilon, int64_t iteration_cap);

// The binary-decimal sampler from the existence proof, compiled to a machine:
// reads random bits in minimal-width blocks, early-selects as soon as the
// dyadic range fits one cumulative interval, rejects values >= the common
// denominator, and hands control to the base machine for the selected action
// (MARK records the handoff for free-randomization complexity).
MachineProgram lift_to_sampler_machine(const MixedEquilibrium& mixed,
                                       int player, int type_index,
                                       const FiniteBayesianGame& fg,
                                       const std::vector<MachineProgram>& base);

// Exact regret of each player's strategy in `mixed` (max over deviations of
// the ex-ante gain); the certificate behind epsilon_ne_regret.
Rat max_regret(const FiniteBayesianGame& fg, const MixedEquilibrium& mixed);

}  // namespace mge

#endif  // MGE_SOLVER_HPP_

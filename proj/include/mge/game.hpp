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

#ifndef MGE_GAME_HPP_
#define MGE_GAME_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mge/complexity.hpp"
#include "mge/expr.hpp"
#include "mge/machine.hpp"
#include "mge/mediator.hpp"

namespace mge {

struct SchemaError : MgeError {
  using MgeError::MgeError;
};
struct ProbabilityNotOne : MgeError {
  using MgeError::MgeError;
};

// A type profile has one entry per player plus nature's type last.
struct TypeProfile {
  std::vector<std::string> entries;
  Rat prob;
};

using Coalition = std::vector<int>;  // sorted 1-based player indices

struct EnumerationLimits {
  int64_t rand_depth_cap = 16;  // random bits enumerated per tape slot
  Rat residual_tolerance = Rat(1, 64);
  int64_t exact_limit = 1 << 20;  // playout leaves per type profile
};

// Repeated-game configuration (set by the harness): players are per-round
// automata reading "signal;state" and emitting "move;state".
struct RepeatedConfig {
  int rounds = 1;
};

struct CandidateClassDecl {
  std::string label;
  std::vector<std::vector<std::string>> per_player;  // machine labels
};

struct GameSpec {
  int player_count = 1;
  int64_t input_length = 0;
  std::vector<TypeProfile> type_space;
  std::map<std::string, MachineProgram> machines;
  std::vector<std::string> machine_class;
  std::vector<ComplexityFnSpec> complexity;  // per player
  std::map<Coalition, ComplexityFnSpec> coalition_complexity;
  std::vector<ExprPtr> utilities;  // per player
  std::map<Coalition, ExprPtr> coalition_utilities;
  TableMap tables;
  RunBudget budget;
  EnumerationLimits limits;
  bool normalized = false;
  bool monotone = false;
  bool computationally_cheap = false;
  std::optional<MediatorSpec> mediator;
  std::optional<RepeatedConfig> repeated;
  std::optional<CandidateClassDecl> candidates;
  std::string name = "game";

  const MachineProgram& machine(const std::string& label) const {
    auto it = machines.find(label);
    if (it == machines.end())
      throw SchemaError("unknown machine label '" + label + "'");
    return it->second;
  }
  // Coalition complexity defaults to the spec of the lowest-indexed member
  // when no explicit per-coalition spec is declared.
  const ComplexityFnSpec& coalition_spec(const Coalition& z) const {
    auto it = coalition_complexity.find(z);
    if (it != coalition_complexity.end()) return it->second;
    return complexity.at(z.front() - 1);
  }

  void validate() const;
};

// A coalition controller: it feeds each member its true input and runs the
// member program; a shared tape makes the members' randomness common.
struct CoalitionMachine {
  Coalition members;
  std::vector<MachineProgram> member_programs;  // aligned with members
  bool shared_tape = false;
  std::string label;
};

struct StrategyProfile {
  std::vector<MachineProgram> assignment;  // one machine per player
  std::optional<CoalitionMachine> coalition;
};

StrategyProfile profile_from_labels(const GameSpec& game,
                                    const std::vector<std::string>& labels);

// M^b_Z: members play their own machines; the controller adds nothing.
CoalitionMachine benign_coalition_machine(const StrategyProfile& profile,
                                          const Coalition& z);

struct Subject {
  bool is_coalition = false;
  int player = 1;      // 1-based
  Coalition coalition;

  static Subject of_player(int i) { return Subject{false, i, {}}; }
  static Subject of_coalition(Coalition z) {
    return Subject{true, 0, std::move(z)};
  }
};

struct EvalMode {
  bool exact = true;
  uint64_t seed = 0;
  int64_t samples = 0;
  double confidence = 0.99;

  static EvalMode exact_mode() { return EvalMode{}; }
  static EvalMode sampled(uint64_t seed, int64_t samples, double confidence) {
    return EvalMode{false, seed, samples, confidence};
  }
};

struct UtilityOutcome {
  bool exact = true;
  Rat value;          // exact mode
  Rat max_residual;   // worst per-type non-halting mass (exact mode)
  double estimate = 0, half_width = 0, confidence = 0;
  int64_t samples = 0;
  uint64_t seed = 0;
};

// One fully resolved playout for a type profile: its raw probability and
// everything utilities and complexity functions may consume.
struct PlayoutLeaf {
  Rat prob;
  std::vector<std::string> outputs;
  std::vector<View> views;
  std::vector<RunMeter> meters;
  std::vector<int64_t> payload_sent;
  std::optional<View> coalition_view;
  std::optional<RunMeter> coalition_meter;
  bool coalition_is_nothing = false;
};

struct TypeOutcome {
  std::vector<PlayoutLeaf> leaves;
  Rat residual;  // mass of paths still running at the tape depth cap
};

// Exhaustively enumerates the playout distribution for one type profile by
// forking random tapes bit-by-bit on demand.
TypeOutcome enumerate_playouts(const GameSpec& game,
                               const StrategyProfile& profile,
                               const std::optional<MediatorSpec>& mediator,
                               const TypeProfile& types);

// Expected utility of `subject` under the profile. Exact mode integrates the
// enumerated playout distribution with exact rationals (normalizing out the
// sub-tolerance residual); sampled mode draws i.i.d. playouts and reports a
// Hoeffding half-width (requires normalized utilities).
UtilityOutcome expected_utility(const GameSpec& game,
                                const StrategyProfile& profile,
                                const Subject& subject, const EvalMode& mode);
UtilityOutcome expected_utility(const GameSpec& game,
                                const StrategyProfile& profile,
                                const Subject& subject, const EvalMode& mode,
                                const std::optional<MediatorSpec>& mediator);
// Variant with a hook that rewrites the subject's own complexity value
// before the utility is evaluated (the favorable-deviator speedup).
UtilityOutcome expected_utility_ex(
    const GameSpec& game, const StrategyProfile& profile,
    const Subject& subject, const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator,
    const std::function<int64_t(int64_t)>* subject_complexity_transform);

// Exact distribution over output profiles, one per type profile, normalized
// conditional on halting.
using ActionDistribution =
    std::vector<std::map<std::vector<std::string>, Rat>>;
ActionDistribution action_distribution(
    const GameSpec& game, const StrategyProfile& profile,
    const std::optional<MediatorSpec>& mediator);

}  // namespace mge

#endif  // MGE_GAME_HPP_

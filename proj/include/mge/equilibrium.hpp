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

#ifndef MGE_EQUILIBRIUM_HPP_
#define MGE_EQUILIBRIUM_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mge/game.hpp"

namespace mge {

struct ModeAssumptionViolated : MgeError {
  using MgeError::MgeError;
};

// Every universal quantifier over machines is discharged over a declared
// finite class; the class label travels with every report. The incumbent and
// bot are always treated as members.
struct CandidateClass {
  std::string label = "candidates";
  std::vector<std::vector<MachineProgram>> per_player;
  std::map<Coalition, std::vector<CoalitionMachine>> per_coalition;
};

struct SpeedupSpec {
  ExprPtr p;  // expression in n and t
  bool homogeneous = false;
  enum class Mode { kFavorableDeviator, kExplicitList };
  Mode mode = Mode::kFavorableDeviator;
  // Explicit-list mode: each entry is a full per-player complexity
  // assignment, verified pointwise as a p-speedup of the game's own specs.
  std::vector<std::vector<ComplexityFnSpec>> explicit_games;
  std::string label = "p";

  int64_t eval(int64_t n, int64_t t) const;
  void validate() const;
  static SpeedupSpec identity();
};

struct GapEntry {
  std::string candidate;
  Rat gap;
};

struct SubjectReport {
  std::string subject;  // "player 1" or "coalition {1,2}"
  std::string incumbent;
  Rat max_gap;
  std::string witness;
  bool holds = false;
  std::vector<GapEntry> gaps;
};

struct UniversalRow {
  std::string game_name;
  std::string zprime;  // rendered subset of the coalition set
  bool antecedent = false;
  bool clause1 = false;          // equilibrium preserved
  bool clause2 = false;          // action distributions preserved
  bool bot_antecedent = false;   // strong variant, per coalition
  bool bot_consequent = false;
  bool holds = false;
  bool vacuous = false;
  std::string note;
};

struct EquilibriumReport {
  std::string check;
  bool verdict_holds = false;
  Rat epsilon;
  std::string class_label;
  std::string mode = "exact";
  std::vector<SubjectReport> subjects;
  std::vector<UniversalRow> universal_rows;
  std::vector<std::string> notes;
  Rat max_residual;
};

// Max over the candidate class of U(deviation) - U(incumbent) for `subject`,
// with the worst deviation as witness. For coalitions the incumbent is the
// benign machine (or `incumbent_override` when supplied, e.g. bot for the
// strong-implementation clause).
SubjectReport best_response_gap(
    const GameSpec& game, const StrategyProfile& profile,
    const Subject& subject, const CandidateClass& candidates,
    const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator = std::nullopt,
    const std::function<int64_t(int64_t)>* deviator_speedup = nullptr,
    const std::optional<CoalitionMachine>& incumbent_override = std::nullopt);

EquilibriumReport check_epsilon_nash(
    const GameSpec& game, const StrategyProfile& profile, const Rat& epsilon,
    const CandidateClass& candidates,
    const EvalMode& mode = EvalMode::exact_mode(),
    const std::optional<MediatorSpec>& mediator = std::nullopt);

EquilibriumReport check_p_robust(
    const GameSpec& game, const StrategyProfile& profile, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates,
    const EvalMode& mode = EvalMode::exact_mode(),
    const std::optional<MediatorSpec>& mediator = std::nullopt);

EquilibriumReport check_coalition_safe(
    const GameSpec& game, const StrategyProfile& profile,
    const std::vector<Coalition>& coalition_set, const Rat& epsilon,
    const CandidateClass& candidates,
    const EvalMode& mode = EvalMode::exact_mode(),
    const std::optional<MediatorSpec>& mediator = std::nullopt);

// True iff the benign Lambda-profile machine and the benign M-profile
// machine have one constant complexity c0 across every enumerated view, for
// every coalition up to the subset cap.
struct AcceptabilityReport {
  bool acceptable = false;
  int64_t c0 = 0;
  std::string witness;
};
AcceptabilityReport check_M_acceptable(const GameSpec& game,
                                       const StrategyProfile& m_profile,
                                       const MediatorSpec& mediator_f,
                                       int coalition_size_cap = 2);

// clause 1 (preserving equilibrium) and clause 2 (preserving action
// distributions) for every game in the family and every nonempty subset of
// the coalition set up to `zprime_size_cap`.
EquilibriumReport check_universal_implementation(
    const StrategyProfile& m_profile, const MediatorSpec& f_prime,
    const MediatorSpec& f, const std::vector<GameSpec>& family,
    const std::vector<Coalition>& coalition_set, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates,
    int zprime_size_cap = 3);

// Additionally: whenever bot is a robust best response against the Lambda
// profile under F, it stays an epsilon-best response against M under F'.
EquilibriumReport check_strong_universal_implementation(
    const StrategyProfile& m_profile, const MediatorSpec& f_prime,
    const MediatorSpec& f, const std::vector<GameSpec>& family,
    const std::vector<Coalition>& coalition_set, const SpeedupSpec& p,
    const Rat& epsilon, const CandidateClass& candidates,
    int zprime_size_cap = 3);

std::string coalition_to_string(const Coalition& z);

}  // namespace mge

#endif  // MGE_EQUILIBRIUM_HPP_

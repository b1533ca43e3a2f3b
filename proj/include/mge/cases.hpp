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

#ifndef MGE_CASES_HPP_
#define MGE_CASES_HPP_

#include <map>
#include <string>
#include <vector>

#include "mge/equilibrium.hpp"
#include "mge/game.hpp"
#include "mge/solver.hpp"

namespace mge {

struct UnknownCase : MgeError {
  using MgeError::MgeError;
};

// A worked example: the constructed game, the profile under test, the
// candidate class the checks quantify over, and machine-checkable
// expectations. Builders are parameter-pure: equal parameters, equal specs.
struct CaseStudy {
  std::string name;
  GameSpec game;
  StrategyProfile profile;
  CandidateClass candidates;
  std::vector<std::string> notes;
};

// Rock-paper-scissors with priced strategies: deterministic play costs
// cost_det, randomizing costs cost_rand. With cost_rand > cost_det no profile
// over {rock, paper, scissors, uniform} survives the eps=0 check.
CaseStudy build_roshambo(const Rat& cost_det, const Rat& cost_rand);
// The free-computation variant used by the solver round trip.
CaseStudy build_roshambo_free();

// One player decides primality of an n-bit odd type; answers pay
// correct_reward or wrong_penalty, playing safe ("2") pays safe_reward, and
// running longer than time_threshold steps costs time_penalty.
CaseStudy build_primality(int n, const Rat& safe_reward,
                          const Rat& correct_reward, const Rat& wrong_penalty,
                          int64_t time_threshold, const Rat& time_penalty);
// Variant with a randomized tester that beats every deterministic candidate
// strictly once the step threshold sits between their measured step counts.
CaseStudy build_primality_strict();

// Finitely repeated prisoner's dilemma with a memory charge alpha; the
// candidate class is every deterministic per-round automaton with at most
// `state_cap` states plus the round-counting deviants.
CaseStudy build_frpd(int rounds, const Rat& delta, const Rat& alpha,
                     int state_cap, bool memory_free_p2 = false);

// The revelation-principle counterexample: n-bit types that are equal or
// agree in at most k positions, a comparator mediator over k+1 bit prefixes,
// and a budget of k+1 communicated bits.
CaseStudy build_revelation(int n, int k, uint64_t sample_seed = 7,
                           int max_enumerated_bits = 6);

// The mediated family for the universal-implementation sanity checks.
struct UniversalFixture {
  std::vector<GameSpec> family;       // canonical, computationally cheap
  MediatorSpec f;                     // XOR functionality
  StrategyProfile lambda_profile;
  StrategyProfile corrupted_profile;  // flips the mediator's reply bit
  StrategyProfile slow_profile;       // extra steps before the protocol
  std::vector<Coalition> coalition_set;
  CandidateClass candidates;
};
UniversalFixture build_universal_fixture();

// Strong-implementation fixture: F replies a constant, F' leaks the other
// player's input, and participation only pays under F'.
struct StrongFixture {
  GameSpec reward_idle;   // rewards exactly complexity-0 play
  GameSpec leak_game;
  MediatorSpec f;         // constant functionality
  MediatorSpec f_leak;    // swap functionality
  StrategyProfile lambda_profile;
  std::vector<Coalition> coalition_set;
  CandidateClass candidates;
  SpeedupSpec p;
};
StrongFixture build_strong_fixture();

// Per-round automaton program generators (exposed for tests).
MachineProgram tft_program();
MachineProgram count_defect_program(int defect_round, int rounds);
std::vector<MachineProgram> stateless_round_automata();
std::vector<MachineProgram> two_state_round_automata();

struct CaseResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;  // one "ok:"/"FAIL:" line per expectation
};

// Builds the named case, runs its declared checks, and compares them against
// the expected verdicts. Known names: roshambo, primality, primality-strict,
// frpd, frpd-asymmetric, revelation, solver-roundtrip, universal-sanity.
CaseResult run_case(const std::string& name,
                    const std::map<std::string, std::string>& params);

std::vector<std::string> known_cases();

// Builds the named case's game (for export); cases with several games export
// the primary one.
CaseStudy build_case(const std::string& name,
                     const std::map<std::string, std::string>& params);

}  // namespace mge

#endif  // MGE_CASES_HPP_

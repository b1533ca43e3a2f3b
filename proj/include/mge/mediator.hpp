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

#ifndef MGE_MEDIATOR_HPP_
#define MGE_MEDIATOR_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mge/machine.hpp"
#include "mge/vm.hpp"

namespace mge {

struct StageLimitExceeded : MgeError {
  using MgeError::MgeError;
};

enum class MediatorKind { kComm, kFunctionality, kScripted };

// An m-ary functionality: one input string per player (length n), one output
// per player, possibly consuming mediator random bits.
struct FunctionalitySpec {
  enum class Kind { kTable, kSharedCoin };
  Kind kind = Kind::kTable;
  int64_t input_length = 1;
  std::map<std::vector<std::string>, std::vector<std::string>> table;
};

// Deterministic per-stage response rules for mediators that are not plain
// forwarders or functionalities (the revelation comparator, repeated-game
// nature).
struct ScriptedSpec {
  enum class Kind { kComparator, kRepeatRelay };
  Kind kind = Kind::kComparator;
  int64_t prefix_len = 0;  // comparator: compare the first prefix_len chars
  int64_t rounds = 0;      // repeat relay: number of rounds
};

struct MediatorSpec {
  MediatorKind kind = MediatorKind::kComm;
  std::optional<FunctionalitySpec> functionality;
  std::optional<ScriptedSpec> script;
  int64_t stage_limit = 8;
  std::string label = "mediator";
};

// The forwarding mediator: a payload "m;j" from player i is delivered to
// player j next stage with sender identity i; other payloads are dropped.
MediatorSpec comm_mediator();

// Collects one input per player in the first stage (0^n for absent or
// ill-formed inputs), computes f, and replies with a signed message each.
MediatorSpec functionality_mediator(FunctionalitySpec f);

// The machine that parses its type x;z, sends x to the mediator, outputs the
// first mediator-signed reply verbatim, and halts. Untagged messages are
// skipped.
MachineProgram lambda_machine(const std::string& label = "lambda");

// Who runs for each player and which random-tape slot they draw from.
// Coalition members under a shared tape point at the same slot.
struct PlayerBinding {
  const MachineProgram* program = nullptr;
  int tape_slot = 0;
};

struct StageRecord {
  std::vector<std::pair<int, std::string>> to_mediator;  // (player, payload)
  std::vector<std::pair<int, DeliveredMessage>> deliveries;  // (player, msg)
  std::vector<std::pair<int, std::string>> actions;  // per-stage output delta
};

struct Transcript {
  std::vector<StageRecord> stages;
  std::vector<std::string> outputs;      // final, per player
  std::vector<View> views;               // per player
  std::vector<RunMeter> meters;          // per player
  std::vector<int64_t> payload_sent;     // chars sent to mediator, per player
  std::string mediator_random_prefix;
  int stages_used = 0;
};

// Runs the synchronous stage game to completion: every stage, each machine
// runs until it sends one message, blocks on RECV, or halts; the mediator's
// responses become readable at the start of the next stage. Throws
// TapeExhausted with the offending participant (players 0..m-1, mediator m)
// so exact enumeration can fork tapes. `tapes` has one slot per player plus
// the mediator slot last.
Transcript execute_mediated(const std::vector<PlayerBinding>& players,
                            const MediatorSpec& mediator,
                            const std::vector<std::string>& type_inputs,
                            const std::vector<std::string>& tapes,
                            const RunBudget& budget);

std::string transcript_to_text(const Transcript& t);

}  // namespace mge

#endif  // MGE_MEDIATOR_HPP_

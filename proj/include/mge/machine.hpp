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

#ifndef MGE_MACHINE_HPP_
#define MGE_MACHINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mge/rational.hpp"

namespace mge {

// Strategies are programs in a fixed register-machine instruction set with
// explicit type/random/message ports, so every run has a closed finite-step
// trace that the meter can account for exactly.
enum class Op {
  kReadType,   // rd := code of next own-type char (-1 once past the end)
  kReadRand,   // rd := next random tape bit (0/1)
  kLoadI,      // rd := imm
  kMov,        // rd := rs
  kAdd,        // rd := rd + rs
  kSub,        // rd := rd - rs
  kAddI,       // rd := rd + imm
  kMulI,       // rd := rd * imm
  kJmp,        // pc := target
  kJeq,        // if rd == rs
  kJne,        // if rd != rs
  kJlt,        // if rd < rs (signed)
  kJeqI,       // if rd == imm
  kJneI,       // if rd != imm
  kJltI,       // if rd < imm
  kJgeI,       // if rd >= imm
  kEmit,       // append literal to the output string
  kEmitR,      // append decimal digit for rd (0..9)
  kEmitCode,   // append char for code in rd (0->'0', 1->'1', 2->';')
  kAppend,     // append literal to the outgoing message buffer
  kAppendCode, // append coded char to the outgoing message buffer
  kSend,       // flush message buffer as one message to the mediator
  kRecv,       // rd := 1 if next delivered message is mediator-signed, else 0
  kRecvSender, // rd := sender index of the current message (0 = mediator)
  kReadMsg,    // rd := code of next char of the current message (-1 at end)
  kMark,       // control-handoff marker (records label + meter snapshot)
  kHalt,
};

const char* op_name(Op op);

// Character codes seen by READ_TYPE / READMSG and emitted by EMITCODE.
inline int char_to_code(char c) {
  if (c == '0') return 0;
  if (c == '1') return 1;
  if (c == ';') return 2;
  return 100 + static_cast<unsigned char>(c);
}
inline char code_to_char(int64_t code) {
  if (code == 0) return '0';
  if (code == 1) return '1';
  if (code == 2) return ';';
  if (code >= 100 && code < 356) return static_cast<char>(code - 100);
  throw MgeError("EMITCODE/APPENDCODE with unmapped code " +
                 std::to_string(code));
}

struct Instruction {
  Op op = Op::kHalt;
  int rd = 0;
  int rs = 0;
  int64_t imm = 0;
  int target = 0;   // jump target, instruction index
  std::string lit;  // EMIT/APPEND/MARK literal

  bool operator==(const Instruction&) const = default;
};

struct MachineProgram {
  std::string label;
  int register_count = 0;
  std::vector<Instruction> instructions;

  bool operator==(const MachineProgram&) const = default;
};

// The do-nothing machine. It is the only program with zero instructions that
// passes validation, so "meter is all zeros iff bot" holds by construction.
MachineProgram canonical_bot();
bool is_bot(const MachineProgram& p);

// Rejects operand references outside [0, register_count), jump targets
// outside the program, and zero-instruction programs other than canonical bot.
void validate_program(const MachineProgram& p);

struct RunBudget {
  int64_t max_steps = 4096;
  int64_t max_output_bits = 256;
  int64_t max_rand_bits = 64;

  void validate() const {
    if (max_steps <= 0 || max_output_bits <= 0 || max_rand_bits <= 0)
      throw MgeError("RunBudget fields must be positive");
  }
};

// What the run actually consumed: exactly the inputs a complexity function is
// allowed to see, plus replay material.
struct ViewMessage {
  int stage = 0;
  bool outgoing = false;
  std::string text;

  bool operator==(const ViewMessage&) const = default;
};

struct View {
  std::string type_prefix;    // portion of own type actually read
  bool type_eof_read = false; // whether end-of-type was observed
  std::vector<ViewMessage> message_history;
  std::string random_prefix;  // '0'/'1' chars actually consumed

  bool operator==(const View&) const = default;
};

struct RunMeter {
  int64_t steps = 0;
  int64_t program_size = 0;
  int64_t rand_bits = 0;
  int64_t registers_touched = 0;
  int64_t carried_state_bits = 0;  // filled by the repeated-game harness
  bool halted = false;
  bool budget_exceeded = false;
  // MARK handoff (used by free-randomization complexity evaluation).
  bool has_handoff = false;
  std::string handoff_label;
  int64_t steps_at_handoff = 0;
  int64_t rand_at_handoff = 0;
  int64_t handoff_size = 0;  // instruction count of the selected base machine

  bool operator==(const RunMeter&) const = default;
};

struct RunResult {
  std::string output;
  View view;
  RunMeter meter;
};

struct BudgetExceeded : MgeError {
  using MgeError::MgeError;
};
// Raised when READ_RAND runs past the supplied finite tape within budget; the
// exact-mode enumerator catches it to fork the tape one bit at a time.
struct TapeExhausted : BudgetExceeded {
  explicit TapeExhausted(int participant)
      : BudgetExceeded("random tape exhausted"), participant(participant) {}
  int participant;
};
struct PortFault : MgeError {
  using MgeError::MgeError;
};
struct VmFault : MgeError {
  using MgeError::MgeError;
};

bool uses_ports(const MachineProgram& p);

// Runs a non-interactive program to completion. `ports` must be absent; use
// MachineSession/execute_mediated for programs with SEND/RECV.
RunResult run_machine(const MachineProgram& program,
                      const std::string& type_input, const std::string& tape,
                      const RunBudget& budget, int participant_index = 0);

// Static upper bound on READ_RAND executions within the step budget; exact
// tape enumeration uses it to size the fork depth.
int64_t max_random_bits(const MachineProgram& program, const RunBudget& budget);

}  // namespace mge

#endif  // MGE_MACHINE_HPP_

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

#ifndef MGE_VM_HPP_
#define MGE_VM_HPP_

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "mge/machine.hpp"

namespace mge {

// A message as delivered to a machine. Mediator-originated deliveries carry
// the mediator's signature; comm forwards carry the sender identity instead.
struct DeliveredMessage {
  std::string text;
  int sender = 0;            // 0 = mediator, otherwise player index (1-based)
  bool mediator_signed = false;
};

enum class SessionStatus {
  kRunning,     // resumable, has not blocked or halted
  kWaiting,     // blocked on RECV with an empty inbox
  kSentMessage, // paused after SEND (one message per stage)
  kHalted,
};

// One interactive machine instance. The mediated executor resumes sessions
// stage by stage; registers, ports and the meter persist across stages.
class MachineSession {
 public:
  MachineSession(const MachineProgram& program, std::string type_input,
                 std::string tape, RunBudget budget, int participant_index);

  // Runs until SEND, RECV-with-empty-inbox, or HALT. `stage` is recorded on
  // message reads/sends. Throws BudgetExceeded/TapeExhausted/VmFault.
  SessionStatus resume(int stage);

  void deliver(DeliveredMessage msg) { inbox_.push_back(std::move(msg)); }
  // The message captured by the last resume() that ended in kSentMessage.
  std::optional<std::string> take_outgoing();

  SessionStatus status() const { return status_; }
  const std::string& output() const { return output_; }
  const View& view() const { return view_; }
  const RunMeter& meter() const { return meter_; }
  RunMeter& mutable_meter() { return meter_; }
  const MachineProgram& program() const { return program_; }
  int64_t payload_chars_sent() const { return payload_chars_sent_; }

  // Extends the random tape (exact-mode forking re-creates sessions instead;
  // this exists for sampled mode where bits are appended on demand).
  void append_tape(char bit) { tape_.push_back(bit); }
  int64_t tape_cursor() const { return tape_cursor_; }

 private:
  int64_t read_reg(int r) const;
  void write_reg(int r, int64_t v);

  const MachineProgram& program_;
  std::string type_input_;
  std::string tape_;
  RunBudget budget_;
  int participant_;

  std::vector<int64_t> regs_;
  std::vector<bool> reg_written_;
  int64_t pc_ = 0;
  int64_t type_cursor_ = 0;
  int64_t tape_cursor_ = 0;
  std::string out_buffer_;  // message under construction
  std::string output_;
  std::deque<DeliveredMessage> inbox_;
  std::optional<DeliveredMessage> current_msg_;
  size_t msg_cursor_ = 0;
  std::optional<std::string> outgoing_;
  int64_t payload_chars_sent_ = 0;
  View view_;
  RunMeter meter_;
  SessionStatus status_ = SessionStatus::kRunning;
};

}  // namespace mge

#endif  // MGE_VM_HPP_

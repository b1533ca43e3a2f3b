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

#include "mge/machine.hpp"

#include <unordered_map>

#include "mge/vm.hpp"

namespace mge {

const char* op_name(Op op) {
  switch (op) {
    case Op::kReadType: return "READ_TYPE";
    case Op::kReadRand: return "READ_RAND";
    case Op::kLoadI: return "LOADI";
    case Op::kMov: return "MOV";
    case Op::kAdd: return "ADD";
    case Op::kSub: return "SUB";
    case Op::kAddI: return "ADDI";
    case Op::kMulI: return "MULI";
    case Op::kJmp: return "JMP";
    case Op::kJeq: return "JEQ";
    case Op::kJne: return "JNE";
    case Op::kJlt: return "JLT";
    case Op::kJeqI: return "JEQI";
    case Op::kJneI: return "JNEI";
    case Op::kJltI: return "JLTI";
    case Op::kJgeI: return "JGEI";
    case Op::kEmit: return "EMIT";
    case Op::kEmitR: return "EMITR";
    case Op::kEmitCode: return "EMITCODE";
    case Op::kAppend: return "APPEND";
    case Op::kAppendCode: return "APPENDCODE";
    case Op::kSend: return "SEND";
    case Op::kRecv: return "RECV";
    case Op::kRecvSender: return "RECVSENDER";
    case Op::kReadMsg: return "READMSG";
    case Op::kMark: return "MARK";
    case Op::kHalt: return "HALT";
  }
  return "?";
}

MachineProgram canonical_bot() {
  MachineProgram p;
  p.label = "bot";
  p.register_count = 0;
  return p;
}

bool is_bot(const MachineProgram& p) { return p == canonical_bot(); }

namespace {

bool reads_reg(Op op) {
  switch (op) {
    case Op::kMov:
    case Op::kAdd:
    case Op::kSub:
    case Op::kJeq:
    case Op::kJne:
    case Op::kJlt:
      return true;
    default:
      return false;
  }
}

bool uses_rd(Op op) {
  switch (op) {
    case Op::kJmp:
    case Op::kEmit:
    case Op::kAppend:
    case Op::kSend:
    case Op::kMark:
    case Op::kHalt:
      return false;
    default:
      return true;
  }
}

bool is_jump(Op op) {
  switch (op) {
    case Op::kJmp:
    case Op::kJeq:
    case Op::kJne:
    case Op::kJlt:
    case Op::kJeqI:
    case Op::kJneI:
    case Op::kJltI:
    case Op::kJgeI:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool uses_ports(const MachineProgram& p) {
  for (const auto& ins : p.instructions) {
    switch (ins.op) {
      case Op::kSend:
      case Op::kRecv:
      case Op::kRecvSender:
      case Op::kReadMsg:
      case Op::kAppend:
      case Op::kAppendCode:
        return true;
      default:
        break;
    }
  }
  return false;
}

void validate_program(const MachineProgram& p) {
  if (p.instructions.empty()) {
    if (!is_bot(p))
      throw MgeError("zero-instruction program '" + p.label +
                     "' is not the canonical bot");
    return;
  }
  if (p.register_count < 0) throw MgeError("negative register count");
  const int n = static_cast<int>(p.instructions.size());
  for (int i = 0; i < n; ++i) {
    const auto& ins = p.instructions[i];
    if (uses_rd(ins.op) && (ins.rd < 0 || ins.rd >= p.register_count))
      throw MgeError("program '" + p.label + "': instruction " +
                     std::to_string(i) + " references undeclared register r" +
                     std::to_string(ins.rd));
    if (reads_reg(ins.op) && (ins.rs < 0 || ins.rs >= p.register_count))
      throw MgeError("program '" + p.label + "': instruction " +
                     std::to_string(i) + " references undeclared register r" +
                     std::to_string(ins.rs));
    if (is_jump(ins.op) && (ins.target < 0 || ins.target >= n))
      throw MgeError("program '" + p.label + "': instruction " +
                     std::to_string(i) + " jumps out of range");
  }
}

MachineSession::MachineSession(const MachineProgram& program,
                               std::string type_input, std::string tape,
                               RunBudget budget, int participant_index)
    : program_(program),
      type_input_(std::move(type_input)),
      tape_(std::move(tape)),
      budget_(budget),
      participant_(participant_index),
      regs_(std::max(program.register_count, 0), 0),
      reg_written_(std::max(program.register_count, 0), false) {
  budget_.validate();
  meter_.program_size = static_cast<int64_t>(program.instructions.size());
  if (program.instructions.empty()) {
    meter_.halted = true;
    status_ = SessionStatus::kHalted;
  }
}

int64_t MachineSession::read_reg(int r) const { return regs_[r]; }

void MachineSession::write_reg(int r, int64_t v) {
  regs_[r] = v;
  if (!reg_written_[r]) {
    reg_written_[r] = true;
    ++meter_.registers_touched;
  }
}

std::optional<std::string> MachineSession::take_outgoing() {
  auto m = std::move(outgoing_);
  outgoing_.reset();
  return m;
}

SessionStatus MachineSession::resume(int stage) {
  if (status_ == SessionStatus::kHalted) return status_;
  status_ = SessionStatus::kRunning;
  const auto& code = program_.instructions;
  const int64_t n = static_cast<int64_t>(code.size());
  while (true) {
    if (pc_ >= n) {  // fell off the end
      meter_.halted = true;
      status_ = SessionStatus::kHalted;
      return status_;
    }
    const Instruction& ins = code[pc_];
    // RECV with an empty inbox suspends *before* the step is charged, so a
    // machine waiting for the next stage pays only when it actually reads.
    if (ins.op == Op::kRecv && inbox_.empty()) {
      status_ = SessionStatus::kWaiting;
      return status_;
    }
    if (meter_.steps >= budget_.max_steps) {
      meter_.budget_exceeded = true;
      throw BudgetExceeded("program '" + program_.label +
                           "' exceeded max_steps");
    }
    ++meter_.steps;
    int64_t next = pc_ + 1;
    switch (ins.op) {
      case Op::kReadType: {
        if (type_cursor_ < static_cast<int64_t>(type_input_.size())) {
          char c = type_input_[type_cursor_++];
          view_.type_prefix.push_back(c);
          write_reg(ins.rd, char_to_code(c));
        } else {
          view_.type_eof_read = true;
          write_reg(ins.rd, -1);
        }
        break;
      }
      case Op::kReadRand: {
        if (meter_.rand_bits >= budget_.max_rand_bits) {
          meter_.budget_exceeded = true;
          throw BudgetExceeded("program '" + program_.label +
                               "' exceeded max_rand_bits");
        }
        if (tape_cursor_ >= static_cast<int64_t>(tape_.size())) {
          // Undo the step charge: the instruction did not complete, and a
          // forked re-execution must replay into an identical state.
          --meter_.steps;
          throw TapeExhausted(participant_);
        }
        char b = tape_[tape_cursor_++];
        if (b != '0' && b != '1')
          throw VmFault("random tape contains non-bit character");
        view_.random_prefix.push_back(b);
        ++meter_.rand_bits;
        write_reg(ins.rd, b - '0');
        break;
      }
      case Op::kLoadI:
        write_reg(ins.rd, ins.imm);
        break;
      case Op::kMov:
        write_reg(ins.rd, read_reg(ins.rs));
        break;
      case Op::kAdd:
        write_reg(ins.rd, read_reg(ins.rd) + read_reg(ins.rs));
        break;
      case Op::kSub:
        write_reg(ins.rd, read_reg(ins.rd) - read_reg(ins.rs));
        break;
      case Op::kAddI:
        write_reg(ins.rd, read_reg(ins.rd) + ins.imm);
        break;
      case Op::kMulI:
        write_reg(ins.rd, read_reg(ins.rd) * ins.imm);
        break;
      case Op::kJmp:
        next = ins.target;
        break;
      case Op::kJeq:
        if (read_reg(ins.rd) == read_reg(ins.rs)) next = ins.target;
        break;
      case Op::kJne:
        if (read_reg(ins.rd) != read_reg(ins.rs)) next = ins.target;
        break;
      case Op::kJlt:
        if (read_reg(ins.rd) < read_reg(ins.rs)) next = ins.target;
        break;
      case Op::kJeqI:
        if (read_reg(ins.rd) == ins.imm) next = ins.target;
        break;
      case Op::kJneI:
        if (read_reg(ins.rd) != ins.imm) next = ins.target;
        break;
      case Op::kJltI:
        if (read_reg(ins.rd) < ins.imm) next = ins.target;
        break;
      case Op::kJgeI:
        if (read_reg(ins.rd) >= ins.imm) next = ins.target;
        break;
      case Op::kEmit:
        output_ += ins.lit;
        break;
      case Op::kEmitR: {
        int64_t v = read_reg(ins.rd);
        if (v < 0 || v > 9)
          throw VmFault("EMITR with register value out of 0..9");
        output_.push_back(static_cast<char>('0' + v));
        break;
      }
      case Op::kEmitCode:
        output_.push_back(code_to_char(read_reg(ins.rd)));
        break;
      case Op::kAppend:
        out_buffer_ += ins.lit;
        break;
      case Op::kAppendCode:
        out_buffer_.push_back(code_to_char(read_reg(ins.rd)));
        break;
      case Op::kSend: {
        outgoing_ = out_buffer_;
        payload_chars_sent_ += static_cast<int64_t>(out_buffer_.size());
        view_.message_history.push_back(
            ViewMessage{stage, /*outgoing=*/true, out_buffer_});
        out_buffer_.clear();
        pc_ = next;
        status_ = SessionStatus::kSentMessage;
        if (static_cast<int64_t>(output_.size()) > budget_.max_output_bits) {
          meter_.budget_exceeded = true;
          throw BudgetExceeded("output budget exceeded");
        }
        return status_;
      }
      case Op::kRecv: {
        current_msg_ = inbox_.front();
        inbox_.pop_front();
        msg_cursor_ = 0;
        view_.message_history.push_back(
            ViewMessage{stage, /*outgoing=*/false, current_msg_->text});
        write_reg(ins.rd, current_msg_->mediator_signed ? 1 : 0);
        break;
      }
      case Op::kRecvSender:
        if (!current_msg_) throw VmFault("RECVSENDER with no current message");
        write_reg(ins.rd, current_msg_->sender);
        break;
      case Op::kReadMsg: {
        if (!current_msg_) throw VmFault("READMSG with no current message");
        if (msg_cursor_ < current_msg_->text.size())
          write_reg(ins.rd, char_to_code(current_msg_->text[msg_cursor_++]));
        else
          write_reg(ins.rd, -1);
        break;
      }
      case Op::kMark:
        meter_.has_handoff = true;
        meter_.handoff_label = ins.lit;
        meter_.steps_at_handoff = meter_.steps;
        meter_.rand_at_handoff = meter_.rand_bits;
        meter_.handoff_size = ins.imm;
        break;
      case Op::kHalt:
        meter_.halted = true;
        status_ = SessionStatus::kHalted;
        return status_;
    }
    if (static_cast<int64_t>(output_.size()) > budget_.max_output_bits) {
      meter_.budget_exceeded = true;
      throw BudgetExceeded("output budget exceeded");
    }
    pc_ = next;
  }
}

RunResult run_machine(const MachineProgram& program,
                      const std::string& type_input, const std::string& tape,
                      const RunBudget& budget, int participant_index) {
  validate_program(program);
  if (uses_ports(program))
    throw PortFault("program '" + program.label +
                    "' uses message ports; run it under a mediator");
  MachineSession session(program, type_input, tape, budget, participant_index);
  while (session.status() != SessionStatus::kHalted) {
    auto st = session.resume(0);
    if (st == SessionStatus::kWaiting || st == SessionStatus::kSentMessage)
      throw PortFault("port activity without a message environment");
  }
  return RunResult{session.output(), session.view(), session.meter()};
}

int64_t max_random_bits(const MachineProgram& program,
                        const RunBudget& budget) {
  validate_program(program);
  budget.validate();
  if (program.instructions.empty()) return 0;
  bool has_rand = false;
  for (const auto& ins : program.instructions)
    if (ins.op == Op::kReadRand) has_rand = true;
  if (!has_rand) return 0;

  // DP on steps remaining: f[pc] = max READ_RAND executions starting at pc
  // with s steps left. Only the previous steps row is needed, and the row
  // saturates once an extra step stops helping (no path can read more).
  const int64_t n = static_cast<int64_t>(program.instructions.size());
  std::vector<int64_t> prev(n, 0), cur(n, 0);
  for (int64_t s = 1; s <= budget.max_steps; ++s) {
    auto succ = [&](int64_t q) { return q >= n ? int64_t{0} : prev[q]; };
    for (int64_t pc = n - 1; pc >= 0; --pc) {
      const Instruction& ins = program.instructions[pc];
      int64_t best = 0;
      switch (ins.op) {
        case Op::kReadRand:
          best = 1 + succ(pc + 1);
          break;
        case Op::kJmp:
          best = succ(ins.target);
          break;
        case Op::kJeq:
        case Op::kJne:
        case Op::kJlt:
        case Op::kJeqI:
        case Op::kJneI:
        case Op::kJltI:
        case Op::kJgeI:
          best = std::max(succ(ins.target), succ(pc + 1));
          break;
        case Op::kHalt:
          best = 0;
          break;
        default:
          best = succ(pc + 1);
          break;
      }
      cur[pc] = best;
    }
    if (cur[0] >= budget.max_rand_bits) return budget.max_rand_bits;
    if (cur == prev) break;  // fixed point: more steps cannot add reads
    std::swap(prev, cur);
  }
  return std::min(prev[0], budget.max_rand_bits);
}

}  // namespace mge

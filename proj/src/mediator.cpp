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

#include "mge/mediator.hpp"

#include <sstream>

#include "mge/dsl.hpp"

namespace mge {

MediatorSpec comm_mediator() {
  MediatorSpec m;
  m.kind = MediatorKind::kComm;
  m.label = "comm";
  return m;
}

MediatorSpec functionality_mediator(FunctionalitySpec f) {
  MediatorSpec m;
  m.kind = MediatorKind::kFunctionality;
  m.functionality = std::move(f);
  m.label = "F";
  return m;
}

MachineProgram lambda_machine(const std::string& label) {
  // Reads x up to the ';' separator, sends it, then loops on RECV until a
  // mediator-signed reply arrives, copies it to the output, and halts.
  std::string text =
      "label: " + label + "\n" +
      "registers: 2\n"
      "readx:\n"
      "READ_TYPE r0\n"
      "JEQI r0 2 sendx\n"   // ';' ends x
      "JEQI r0 -1 sendx\n"  // no separator: the whole type is x
      "APPENDCODE r0\n"
      "JMP readx\n"
      "sendx:\n"
      "SEND\n"
      "wait:\n"
      "RECV r0\n"
      "JNEI r0 1 wait\n"    // unsigned messages are ignored
      "copy:\n"
      "READMSG r1\n"
      "JEQI r1 -1 done\n"
      "EMITCODE r1\n"
      "JMP copy\n"
      "done:\n"
      "HALT\n";
  return parse_program(text);
}

namespace {

// Comm payloads have the form "m;j" with j the recipient index; anything else
// is ignored.
std::optional<std::pair<std::string, int>> parse_comm_payload(
    const std::string& payload, int player_count) {
  auto sep = payload.rfind(';');
  if (sep == std::string::npos) return std::nullopt;
  std::string body = payload.substr(0, sep);
  std::string dest = payload.substr(sep + 1);
  if (dest.empty()) return std::nullopt;
  for (char c : dest)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  int j = std::stoi(dest);
  if (j < 1 || j > player_count) return std::nullopt;
  return std::make_pair(body, j);
}

bool well_formed_input(const std::string& s, int64_t n) {
  if (static_cast<int64_t>(s.size()) != n) return false;
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

}  // namespace

Transcript execute_mediated(const std::vector<PlayerBinding>& players,
                            const MediatorSpec& mediator,
                            const std::vector<std::string>& type_inputs,
                            const std::vector<std::string>& tapes,
                            const RunBudget& budget) {
  const int m = static_cast<int>(players.size());
  if (static_cast<int>(type_inputs.size()) != m)
    throw MgeError("one type input per player required");
  if (static_cast<int>(tapes.size()) != m + 1)
    throw MgeError("tapes must have a slot per player plus the mediator");

  // Members bound to a shared slot each read the slot's stream from the
  // start with their own cursor, so a shared tape is shared randomness.
  std::vector<MachineSession> sessions;
  sessions.reserve(m);
  for (int i = 0; i < m; ++i) {
    validate_program(*players[i].program);
    sessions.emplace_back(*players[i].program, type_inputs[i],
                          tapes[players[i].tape_slot], budget,
                          players[i].tape_slot);
  }

  Transcript out;
  out.outputs.resize(m);
  out.payload_sent.assign(m, 0);
  int64_t mediator_cursor = 0;
  auto mediator_tape_bit = [&]() -> char {
    if (mediator_cursor >= static_cast<int64_t>(tapes[m].size()))
      throw TapeExhausted(m);
    char b = tapes[m][mediator_cursor++];
    out.mediator_random_prefix.push_back(b);
    return b;
  };

  std::vector<std::vector<DeliveredMessage>> pending(m);
  std::vector<size_t> output_mark(m, 0);
  bool functionality_done = false;
  bool cut_short = false;

  for (int stage = 1;; ++stage) {
    bool all_halted = true;
    for (const auto& s : sessions)
      if (s.status() != SessionStatus::kHalted) all_halted = false;
    if (all_halted) break;
    if (stage > mediator.stage_limit) {
      cut_short = true;
      break;
    }

    StageRecord rec;
    bool delivered_now = false;
    for (int i = 0; i < m; ++i) {
      delivered_now = delivered_now || !pending[i].empty();
      for (auto& msg : pending[i]) sessions[i].deliver(std::move(msg));
      pending[i].clear();
    }

    // Phase 1 + 3: run each machine (sender-index order) until it sends,
    // waits, or halts. Output emitted this stage is its phase-3 action.
    std::vector<std::pair<int, std::string>> sent;
    for (int i = 0; i < m; ++i) {
      if (sessions[i].status() == SessionStatus::kHalted) continue;
      auto st = sessions[i].resume(stage);
      if (st == SessionStatus::kSentMessage) {
        auto payload = sessions[i].take_outgoing();
        sent.emplace_back(i + 1, *payload);
        rec.to_mediator.emplace_back(i + 1, *payload);
      }
      const std::string& outp = sessions[i].output();
      if (outp.size() > output_mark[i]) {
        rec.actions.emplace_back(i + 1, outp.substr(output_mark[i]));
        output_mark[i] = outp.size();
      }
    }

    // Phase 2: the mediator responds; deliveries become readable next stage.
    switch (mediator.kind) {
      case MediatorKind::kComm: {
        for (const auto& [sender, payload] : sent) {
          auto parsed = parse_comm_payload(payload, m);
          if (!parsed) continue;  // ignored
          DeliveredMessage msg{parsed->first, sender,
                               /*mediator_signed=*/false};
          rec.deliveries.emplace_back(parsed->second, msg);
          pending[parsed->second - 1].push_back(msg);
        }
        break;
      }
      case MediatorKind::kFunctionality: {
        if (functionality_done || stage != 1) break;
        functionality_done = true;
        const FunctionalitySpec& f = *mediator.functionality;
        std::vector<std::string> inputs(m,
                                        std::string(f.input_length, '0'));
        for (const auto& [sender, payload] : sent)
          if (well_formed_input(payload, f.input_length))
            inputs[sender - 1] = payload;
        std::vector<std::string> outputs;
        if (f.kind == FunctionalitySpec::Kind::kSharedCoin) {
          outputs.assign(m, std::string(1, mediator_tape_bit()));
        } else {
          auto it = f.table.find(inputs);
          if (it == f.table.end())
            throw MgeError("functionality table is not total");
          outputs = it->second;
        }
        for (int i = 0; i < m; ++i) {
          DeliveredMessage msg{outputs[i], 0, /*mediator_signed=*/true};
          rec.deliveries.emplace_back(i + 1, msg);
          pending[i].push_back(msg);
        }
        break;
      }
      case MediatorKind::kScripted: {
        const ScriptedSpec& sc = *mediator.script;
        if (sc.kind == ScriptedSpec::Kind::kComparator) {
          // Replies once both players have sent at least prefix_len chars.
          if (stage == 1 && m == 2 && sent.size() == 2) {
            const std::string& p1 = sent[0].second;
            const std::string& p2 = sent[1].second;
            if (static_cast<int64_t>(p1.size()) >= sc.prefix_len &&
                static_cast<int64_t>(p2.size()) >= sc.prefix_len) {
              bool same = p1.compare(0, sc.prefix_len, p2, 0, sc.prefix_len) == 0;
              DeliveredMessage msg{same ? "1" : "0", 0,
                                   /*mediator_signed=*/true};
              for (int i = 0; i < m; ++i) {
                rec.deliveries.emplace_back(i + 1, msg);
                pending[i].push_back(msg);
              }
            }
          }
        } else {
          throw MgeError(
              "repeat-relay mediators run through the repeated-game driver");
        }
        break;
      }
    }
    bool pending_any = false;
    for (const auto& q : pending) pending_any = pending_any || !q.empty();
    bool activity = delivered_now || !rec.to_mediator.empty() ||
                    !rec.deliveries.empty() || !rec.actions.empty();
    out.stages.push_back(std::move(rec));
    out.stages_used = stage;
    // Nothing happened and nothing is in flight: every later stage would be
    // identical, so waiting machines are stuck and the game is over.
    if (!activity && !pending_any) break;
  }

  if (cut_short)
    throw StageLimitExceeded("mediated game still active at stage limit " +
                             std::to_string(mediator.stage_limit));

  for (int i = 0; i < m; ++i) {
    out.outputs[i] = sessions[i].output();
    out.views.push_back(sessions[i].view());
    out.meters.push_back(sessions[i].meter());
    out.payload_sent[i] = sessions[i].payload_chars_sent();
  }
  return out;
}

std::string transcript_to_text(const Transcript& t) {
  std::ostringstream os;
  for (size_t s = 0; s < t.stages.size(); ++s) {
    os << "stage " << (s + 1) << "\n";
    for (const auto& [p, payload] : t.stages[s].to_mediator)
      os << "  player " << p << " -> mediator: \"" << payload << "\"\n";
    for (const auto& [p, msg] : t.stages[s].deliveries)
      os << "  mediator -> player " << p << ": \"" << msg.text << "\""
         << (msg.mediator_signed ? " (signed)" : "")
         << (msg.sender > 0 ? " from player " + std::to_string(msg.sender) : "")
         << "\n";
    for (const auto& [p, act] : t.stages[s].actions)
      os << "  player " << p << " outputs \"" << act << "\"\n";
  }
  for (size_t i = 0; i < t.outputs.size(); ++i)
    os << "final output player " << (i + 1) << ": \"" << t.outputs[i] << "\"\n";
  return os.str();
}

}  // namespace mge

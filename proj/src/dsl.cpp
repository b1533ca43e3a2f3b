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

#include "mge/dsl.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace mge {

namespace {

enum class ArgKind { kNone, kR, kRR, kRI, kL, kRL, kRRL, kRIL, kLit };

struct OpInfo {
  Op op;
  ArgKind args;
};

const std::map<std::string, OpInfo>& op_table() {
  static const std::map<std::string, OpInfo> table = {
      {"READ_TYPE", {Op::kReadType, ArgKind::kR}},
      {"READ_RAND", {Op::kReadRand, ArgKind::kR}},
      {"LOADI", {Op::kLoadI, ArgKind::kRI}},
      {"MOV", {Op::kMov, ArgKind::kRR}},
      {"ADD", {Op::kAdd, ArgKind::kRR}},
      {"SUB", {Op::kSub, ArgKind::kRR}},
      {"ADDI", {Op::kAddI, ArgKind::kRI}},
      {"MULI", {Op::kMulI, ArgKind::kRI}},
      {"JMP", {Op::kJmp, ArgKind::kL}},
      {"JEQ", {Op::kJeq, ArgKind::kRRL}},
      {"JNE", {Op::kJne, ArgKind::kRRL}},
      {"JLT", {Op::kJlt, ArgKind::kRRL}},
      {"JEQI", {Op::kJeqI, ArgKind::kRIL}},
      {"JNEI", {Op::kJneI, ArgKind::kRIL}},
      {"JLTI", {Op::kJltI, ArgKind::kRIL}},
      {"JGEI", {Op::kJgeI, ArgKind::kRIL}},
      {"EMIT", {Op::kEmit, ArgKind::kLit}},
      {"EMITR", {Op::kEmitR, ArgKind::kR}},
      {"EMITCODE", {Op::kEmitCode, ArgKind::kR}},
      {"APPEND", {Op::kAppend, ArgKind::kLit}},
      {"APPENDCODE", {Op::kAppendCode, ArgKind::kR}},
      {"SEND", {Op::kSend, ArgKind::kNone}},
      {"RECV", {Op::kRecv, ArgKind::kR}},
      {"RECVSENDER", {Op::kRecvSender, ArgKind::kR}},
      {"READMSG", {Op::kReadMsg, ArgKind::kR}},
      {"MARK", {Op::kMark, ArgKind::kLit}},
      {"HALT", {Op::kHalt, ArgKind::kNone}},
  };
  return table;
}

struct Token {
  std::string text;
};

// Splits a line into tokens; quoted strings keep spaces and commas.
std::vector<std::string> tokenize(const std::string& line, int lineno) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ';') break;  // comment
    if (c == ' ' || c == '\t' || c == ',') {
      ++i;
      continue;
    }
    if (c == '"') {
      size_t j = line.find('"', i + 1);
      if (j == std::string::npos)
        throw DslParseError(lineno, "unterminated string literal");
      out.push_back(line.substr(i, j - i + 1));
      i = j + 1;
      continue;
    }
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != ',' && line[j] != ';')
      ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_reg(const std::string& tok, int lineno) {
  if (tok.size() < 2 || tok[0] != 'r')
    throw DslParseError(lineno, "expected register, got '" + tok + "'");
  try {
    return std::stoi(tok.substr(1));
  } catch (...) {
    throw DslParseError(lineno, "bad register '" + tok + "'");
  }
}

int64_t parse_imm(const std::string& tok, int lineno) {
  try {
    return std::stoll(tok);
  } catch (...) {
    throw DslParseError(lineno, "bad immediate '" + tok + "'");
  }
}

std::string parse_lit(const std::string& tok, int lineno) {
  if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"')
    throw DslParseError(lineno, "expected quoted literal, got '" + tok + "'");
  return tok.substr(1, tok.size() - 2);
}

}  // namespace

MachineProgram parse_program(const std::string& text) {
  MachineProgram p;
  p.register_count = 0;
  std::map<std::string, int> labels;
  struct Pending {
    size_t instr;
    std::string label;
    int lineno;
  };
  std::vector<Pending> pending;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "label:") {
      if (toks.size() != 2) throw DslParseError(lineno, "label: needs a name");
      p.label = toks[1];
      continue;
    }
    if (head == "registers:") {
      if (toks.size() != 2)
        throw DslParseError(lineno, "registers: needs a count");
      p.register_count = static_cast<int>(parse_imm(toks[1], lineno));
      continue;
    }
    if (head.size() > 1 && head.back() == ':') {
      labels[head.substr(0, head.size() - 1)] =
          static_cast<int>(p.instructions.size());
      if (toks.size() != 1)
        throw DslParseError(lineno, "jump label must be alone on its line");
      continue;
    }
    auto it = op_table().find(head);
    if (it == op_table().end())
      throw DslParseError(lineno, "unknown opcode '" + head + "'");
    Instruction ins;
    ins.op = it->second.op;
    auto need = [&](size_t n) {
      if (toks.size() != n + 1)
        throw DslParseError(lineno, head + " takes " + std::to_string(n) +
                                        " operand(s)");
    };
    switch (it->second.args) {
      case ArgKind::kNone:
        need(0);
        break;
      case ArgKind::kR:
        need(1);
        ins.rd = parse_reg(toks[1], lineno);
        break;
      case ArgKind::kRR:
        need(2);
        ins.rd = parse_reg(toks[1], lineno);
        ins.rs = parse_reg(toks[2], lineno);
        break;
      case ArgKind::kRI:
        need(2);
        ins.rd = parse_reg(toks[1], lineno);
        ins.imm = parse_imm(toks[2], lineno);
        break;
      case ArgKind::kL:
        need(1);
        pending.push_back({p.instructions.size(), toks[1], lineno});
        break;
      case ArgKind::kRL:
        need(2);
        ins.rd = parse_reg(toks[1], lineno);
        pending.push_back({p.instructions.size(), toks[2], lineno});
        break;
      case ArgKind::kRRL:
        need(3);
        ins.rd = parse_reg(toks[1], lineno);
        ins.rs = parse_reg(toks[2], lineno);
        pending.push_back({p.instructions.size(), toks[3], lineno});
        break;
      case ArgKind::kRIL:
        need(3);
        ins.rd = parse_reg(toks[1], lineno);
        ins.imm = parse_imm(toks[2], lineno);
        pending.push_back({p.instructions.size(), toks[3], lineno});
        break;
      case ArgKind::kLit:
        need(1);
        ins.lit = parse_lit(toks[1], lineno);
        break;
    }
    p.instructions.push_back(ins);
  }
  for (const auto& pend : pending) {
    auto it = labels.find(pend.label);
    if (it == labels.end())
      throw DslParseError(pend.lineno, "undefined label '" + pend.label + "'");
    p.instructions[pend.instr].target = it->second;
  }
  validate_program(p);
  return p;
}

std::string program_to_text(const MachineProgram& program) {
  std::ostringstream out;
  out << "label: " << program.label << "\n";
  out << "registers: " << program.register_count << "\n";
  // Every jump target gets a synthetic label.
  std::map<int, std::string> labels;
  for (const auto& ins : program.instructions) {
    switch (ins.op) {
      case Op::kJmp:
      case Op::kJeq:
      case Op::kJne:
      case Op::kJlt:
      case Op::kJeqI:
      case Op::kJneI:
      case Op::kJltI:
      case Op::kJgeI:
        labels.emplace(ins.target, "L" + std::to_string(ins.target));
        break;
      default:
        break;
    }
  }
  for (size_t i = 0; i < program.instructions.size(); ++i) {
    auto li = labels.find(static_cast<int>(i));
    if (li != labels.end()) out << li->second << ":\n";
    const auto& ins = program.instructions[i];
    out << op_name(ins.op);
    auto lbl = [&](int t) { return labels.at(t); };
    switch (ins.op) {
      case Op::kReadType:
      case Op::kReadRand:
      case Op::kEmitR:
      case Op::kEmitCode:
      case Op::kAppendCode:
      case Op::kRecv:
      case Op::kRecvSender:
      case Op::kReadMsg:
        out << " r" << ins.rd;
        break;
      case Op::kLoadI:
      case Op::kAddI:
      case Op::kMulI:
        out << " r" << ins.rd << " " << ins.imm;
        break;
      case Op::kMov:
      case Op::kAdd:
      case Op::kSub:
        out << " r" << ins.rd << " r" << ins.rs;
        break;
      case Op::kJmp:
        out << " " << lbl(ins.target);
        break;
      case Op::kJeq:
      case Op::kJne:
      case Op::kJlt:
        out << " r" << ins.rd << " r" << ins.rs << " " << lbl(ins.target);
        break;
      case Op::kJeqI:
      case Op::kJneI:
      case Op::kJltI:
      case Op::kJgeI:
        out << " r" << ins.rd << " " << ins.imm << " " << lbl(ins.target);
        break;
      case Op::kEmit:
      case Op::kAppend:
      case Op::kMark:
        out << " \"" << ins.lit << "\"";
        break;
      case Op::kSend:
      case Op::kHalt:
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace mge

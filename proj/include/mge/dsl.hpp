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

#ifndef MGE_DSL_HPP_
#define MGE_DSL_HPP_

#include <string>

#include "mge/machine.hpp"

namespace mge {

struct DslParseError : MgeError {
  DslParseError(int line, const std::string& what)
      : MgeError("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// Machine text format: optional `label: name` and `registers: k` headers,
// one instruction per line, `;` starts a comment, `name:` alone on a line
// declares a jump target. Literals are double-quoted.
MachineProgram parse_program(const std::string& text);

std::string program_to_text(const MachineProgram& program);

}  // namespace mge

#endif  // MGE_DSL_HPP_

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

#ifndef MGE_EXPR_HPP_
#define MGE_EXPR_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mge/rational.hpp"

namespace mge {

// Utility functions u(t, a, c) are expressions in a small arithmetic
// language. Integer division of literals yields exact rationals, so "9/10"
// means what it looks like. Booleans are the rationals 0 and 1.
//
// Variables: t1..tm (player types), tn (nature), a1..am (outputs),
// c1..cm (complexities), cz (coalition complexity), b1..bm (message payload
// chars sent to the mediator), n (canonical input length), plus sum() locals.
//
// Functions: if(c,x,y), eq(x,y) on strings or numbers, ne, lt, le, gt, ge,
// and, or, not, num(s), len(s), charat(s,k) (1-based), pow(x,k),
// table(name, key...), sum(k, lo, hi, body), min(x,y), max(x,y).
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

using Value = std::variant<Rat, std::string>;

struct Expr {
  enum class Kind {
    kConstRat,
    kConstStr,
    kVar,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kCall,
  };
  Kind kind;
  Rat rat;
  std::string text;  // var name, string constant, or callee name
  std::vector<ExprPtr> args;
};

using TableMap = std::map<std::string, std::map<std::vector<std::string>, Rat>>;

struct ExprEnv {
  std::vector<std::string> types;        // size m
  std::string nature_type;
  std::vector<std::string> actions;      // size m
  std::vector<Rat> complexities;         // size m; entries for coalition
                                         // members are invalid to reference
  std::vector<bool> complexity_valid;
  std::optional<Rat> coalition_complexity;
  std::vector<int64_t> payload_sent;     // size m
  int64_t input_length = 0;
  const TableMap* tables = nullptr;
  std::map<std::string, Rat> locals;
};

struct ExprError : MgeError {
  using MgeError::MgeError;
};

ExprPtr parse_expr(const std::string& text);
std::string expr_to_text(const ExprPtr& e);

Value eval_expr(const ExprPtr& e, ExprEnv& env);
Rat eval_expr_rat(const ExprPtr& e, ExprEnv& env);

// True if the expression mentions any complexity variable (c1.., cz); the
// solver uses this to verify the computationally-cheap precondition.
bool references_complexity(const ExprPtr& e);

// Names of the complexity variables mentioned ("c1", "cz", ...); the robust
// checker uses this to gate the favorable-deviator reduction.
std::set<std::string> complexity_vars(const ExprPtr& e);

// Checks every variable is defined for an m-player game and every table
// reference exists; throws ExprError otherwise.
void validate_expr(const ExprPtr& e, int player_count, const TableMap& tables);

}  // namespace mge

#endif  // MGE_EXPR_HPP_

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

#include "mge/expr.hpp"

#include <cctype>
#include <functional>
#include <set>

namespace mge {

namespace {

struct Parser {
  const std::string& src;
  size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw ExprError("expected '" + std::string(1, c) + "' at offset " +
                      std::to_string(pos) + " in expression");
  }

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos != src.size())
      throw ExprError("trailing characters at offset " + std::to_string(pos));
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr lhs = parse_term();
    while (true) {
      skip_ws();
      if (eat('+'))
        lhs = binary(Expr::Kind::kAdd, lhs, parse_term());
      else if (eat('-'))
        lhs = binary(Expr::Kind::kSub, lhs, parse_term());
      else
        return lhs;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*'))
        lhs = binary(Expr::Kind::kMul, lhs, parse_factor());
      else if (eat('/'))
        lhs = binary(Expr::Kind::kDiv, lhs, parse_factor());
      else
        return lhs;
    }
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (eat('-')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kNeg;
      e->args.push_back(parse_factor());
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) throw ExprError("unexpected end of expression");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = parse_sum();
      expect(')');
      return e;
    }
    if (c == '"') {
      size_t j = src.find('"', pos + 1);
      if (j == std::string::npos) throw ExprError("unterminated string");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kConstStr;
      e->text = src.substr(pos + 1, j - pos - 1);
      pos = j + 1;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = pos;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kConstRat;
      e->rat = Rat(Int(src.substr(pos, j - pos)));
      pos = j;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = pos;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string name = src.substr(pos, j - pos);
      pos = j;
      skip_ws();
      if (pos < src.size() && src[pos] == '(') {
        ++pos;
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::kCall;
        e->text = name;
        skip_ws();
        if (!eat(')')) {
          while (true) {
            e->args.push_back(parse_sum());
            if (eat(')')) break;
            expect(',');
          }
        }
        return e;
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::kVar;
      e->text = name;
      return e;
    }
    throw ExprError("unexpected character '" + std::string(1, c) +
                    "' at offset " + std::to_string(pos));
  }

  static ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a), std::move(b)};
    return e;
  }
};

Rat as_rat(const Value& v, const char* ctx) {
  if (const Rat* r = std::get_if<Rat>(&v)) return *r;
  throw ExprError(std::string("expected a number in ") + ctx);
}

const std::string& as_str(const Value& v, const char* ctx) {
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  throw ExprError(std::string("expected a string in ") + ctx);
}

int64_t as_int(const Value& v, const char* ctx) {
  Rat r = as_rat(v, ctx);
  if (denominator(r) != 1)
    throw ExprError(std::string("expected an integer in ") + ctx);
  return numerator(r).convert_to<int64_t>();
}

// Parses "t3" style names; returns 0 if prefix doesn't match or index bad.
int indexed_var(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return 0;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
  return std::stoi(name.substr(1));
}

Value lookup_var(const std::string& name, ExprEnv& env) {
  auto local = env.locals.find(name);
  if (local != env.locals.end()) return local->second;
  if (name == "tn") return env.nature_type;
  if (name == "cz") {
    if (!env.coalition_complexity)
      throw ExprError("cz referenced outside a coalition utility");
    return *env.coalition_complexity;
  }
  if (name == "n") return Rat(env.input_length);
  if (int i = indexed_var(name, 't')) {
    if (i <= static_cast<int>(env.types.size())) return env.types[i - 1];
  } else if (int j = indexed_var(name, 'a')) {
    if (j <= static_cast<int>(env.actions.size())) return env.actions[j - 1];
  } else if (int k = indexed_var(name, 'c')) {
    if (k <= static_cast<int>(env.complexities.size())) {
      if (!env.complexity_valid.empty() && !env.complexity_valid[k - 1])
        throw ExprError("c" + std::to_string(k) +
                        " is controlled by the coalition; use cz");
      return env.complexities[k - 1];
    }
  } else if (int b = indexed_var(name, 'b')) {
    if (b <= static_cast<int>(env.payload_sent.size()))
      return Rat(env.payload_sent[b - 1]);
  }
  throw ExprError("unknown variable '" + name + "'");
}

Value eval_call(const Expr& e, ExprEnv& env);

Value eval_node(const Expr& e, ExprEnv& env) {
  switch (e.kind) {
    case Expr::Kind::kConstRat:
      return e.rat;
    case Expr::Kind::kConstStr:
      return e.text;
    case Expr::Kind::kVar:
      return lookup_var(e.text, env);
    case Expr::Kind::kAdd:
      return as_rat(eval_node(*e.args[0], env), "+") +
             as_rat(eval_node(*e.args[1], env), "+");
    case Expr::Kind::kSub:
      return as_rat(eval_node(*e.args[0], env), "-") -
             as_rat(eval_node(*e.args[1], env), "-");
    case Expr::Kind::kMul:
      return as_rat(eval_node(*e.args[0], env), "*") *
             as_rat(eval_node(*e.args[1], env), "*");
    case Expr::Kind::kDiv: {
      Rat d = as_rat(eval_node(*e.args[1], env), "/");
      if (d == 0) throw ExprError("division by zero");
      return as_rat(eval_node(*e.args[0], env), "/") / d;
    }
    case Expr::Kind::kNeg:
      return -as_rat(eval_node(*e.args[0], env), "negation");
    case Expr::Kind::kCall:
      return eval_call(e, env);
  }
  throw ExprError("corrupt expression");
}

Rat bool_rat(bool b) { return Rat(b ? 1 : 0); }

Value eval_call(const Expr& e, ExprEnv& env) {
  const std::string& f = e.text;
  auto need = [&](size_t k) {
    if (e.args.size() != k)
      throw ExprError(f + "() takes " + std::to_string(k) + " argument(s)");
  };
  if (f == "if") {
    need(3);
    Rat c = as_rat(eval_node(*e.args[0], env), "if condition");
    return eval_node(*e.args[c != 0 ? 1 : 2], env);
  }
  if (f == "eq" || f == "ne") {
    need(2);
    Value a = eval_node(*e.args[0], env), b = eval_node(*e.args[1], env);
    bool equal;
    if (std::holds_alternative<std::string>(a) ||
        std::holds_alternative<std::string>(b))
      equal = as_str(a, "eq") == as_str(b, "eq");
    else
      equal = std::get<Rat>(a) == std::get<Rat>(b);
    return bool_rat(f == "eq" ? equal : !equal);
  }
  if (f == "lt" || f == "le" || f == "gt" || f == "ge") {
    need(2);
    Rat a = as_rat(eval_node(*e.args[0], env), f.c_str());
    Rat b = as_rat(eval_node(*e.args[1], env), f.c_str());
    if (f == "lt") return bool_rat(a < b);
    if (f == "le") return bool_rat(a <= b);
    if (f == "gt") return bool_rat(a > b);
    return bool_rat(a >= b);
  }
  if (f == "and" || f == "or") {
    if (e.args.empty()) throw ExprError(f + "() needs arguments");
    bool acc = (f == "and");
    for (const auto& arg : e.args) {
      bool v = as_rat(eval_node(*arg, env), f.c_str()) != 0;
      acc = (f == "and") ? (acc && v) : (acc || v);
    }
    return bool_rat(acc);
  }
  if (f == "not") {
    need(1);
    return bool_rat(as_rat(eval_node(*e.args[0], env), "not") == 0);
  }
  if (f == "num") {
    need(1);
    const std::string& s = as_str(eval_node(*e.args[0], env), "num");
    if (s.empty()) throw ExprError("num() of empty string");
    try {
      return Rat(Int(s));
    } catch (...) {
      throw ExprError("num() of non-numeric string '" + s + "'");
    }
  }
  if (f == "len") {
    need(1);
    return Rat(static_cast<int64_t>(
        as_str(eval_node(*e.args[0], env), "len").size()));
  }
  if (f == "charat") {
    need(2);
    const std::string s = as_str(eval_node(*e.args[0], env), "charat");
    int64_t k = as_int(eval_node(*e.args[1], env), "charat index");
    if (k < 1 || k > static_cast<int64_t>(s.size()))
      throw ExprError("charat index " + std::to_string(k) +
                      " out of range for string of length " +
                      std::to_string(s.size()));
    return std::string(1, s[k - 1]);
  }
  if (f == "pow") {
    need(2);
    Rat base = as_rat(eval_node(*e.args[0], env), "pow");
    int64_t k = as_int(eval_node(*e.args[1], env), "pow exponent");
    if (k < 0) throw ExprError("pow() exponent must be nonnegative");
    return rat_pow(base, static_cast<unsigned>(k));
  }
  if (f == "min" || f == "max") {
    need(2);
    Rat a = as_rat(eval_node(*e.args[0], env), f.c_str());
    Rat b = as_rat(eval_node(*e.args[1], env), f.c_str());
    return (f == "min") ? std::min(a, b) : std::max(a, b);
  }
  if (f == "table") {
    if (e.args.size() < 2) throw ExprError("table() needs a name and keys");
    if (e.args[0]->kind != Expr::Kind::kConstStr)
      throw ExprError("table() name must be a string literal");
    if (!env.tables) throw ExprError("no tables bound");
    auto it = env.tables->find(e.args[0]->text);
    if (it == env.tables->end())
      throw ExprError("unknown table '" + e.args[0]->text + "'");
    std::vector<std::string> key;
    for (size_t i = 1; i < e.args.size(); ++i) {
      Value v = eval_node(*e.args[i], env);
      key.push_back(std::holds_alternative<std::string>(v)
                        ? std::get<std::string>(v)
                        : rat_to_string(std::get<Rat>(v)));
    }
    auto row = it->second.find(key);
    if (row == it->second.end()) {
      std::string ks;
      for (const auto& k : key) ks += "[" + k + "]";
      throw ExprError("table '" + e.args[0]->text + "' has no entry " + ks);
    }
    return row->second;
  }
  if (f == "sum") {
    need(4);
    if (e.args[0]->kind != Expr::Kind::kVar)
      throw ExprError("sum() index must be an identifier");
    const std::string& var = e.args[0]->text;
    int64_t lo = as_int(eval_node(*e.args[1], env), "sum lower bound");
    int64_t hi = as_int(eval_node(*e.args[2], env), "sum upper bound");
    Rat acc = 0;
    auto saved = env.locals.find(var) != env.locals.end()
                     ? std::optional<Rat>(env.locals[var])
                     : std::nullopt;
    for (int64_t k = lo; k <= hi; ++k) {
      env.locals[var] = Rat(k);
      acc += as_rat(eval_node(*e.args[3], env), "sum body");
    }
    if (saved)
      env.locals[var] = *saved;
    else
      env.locals.erase(var);
    return acc;
  }
  throw ExprError("unknown function '" + f + "'");
}

void walk(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
  fn(*e);
  for (const auto& a : e->args) walk(a, fn);
}

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  return p.parse();
}

Value eval_expr(const ExprPtr& e, ExprEnv& env) { return eval_node(*e, env); }

Rat eval_expr_rat(const ExprPtr& e, ExprEnv& env) {
  return as_rat(eval_node(*e, env), "utility");
}

bool references_complexity(const ExprPtr& e) {
  return !complexity_vars(e).empty();
}

std::set<std::string> complexity_vars(const ExprPtr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& node) {
    if (node.kind == Expr::Kind::kVar &&
        (node.text == "cz" || indexed_var(node.text, 'c') > 0))
      out.insert(node.text);
  });
  return out;
}

void validate_expr(const ExprPtr& e, int player_count, const TableMap& tables) {
  std::set<std::string> locals;
  std::function<void(const ExprPtr&)> visit = [&](const ExprPtr& node) {
    if (node->kind == Expr::Kind::kVar) {
      const std::string& name = node->text;
      if (locals.count(name) || name == "tn" || name == "cz" || name == "n")
        return;
      int idx = 0;
      for (char prefix : {'t', 'a', 'c', 'b'})
        if ((idx = indexed_var(name, prefix)) > 0) break;
      if (idx < 1 || idx > player_count)
        throw ExprError("variable '" + name + "' undefined for " +
                        std::to_string(player_count) + "-player game");
      return;
    }
    if (node->kind == Expr::Kind::kCall) {
      if (node->text == "table") {
        if (node->args.size() < 2 ||
            node->args[0]->kind != Expr::Kind::kConstStr ||
            !tables.count(node->args[0]->text))
          throw ExprError("table reference invalid or unknown");
        for (size_t i = 1; i < node->args.size(); ++i) visit(node->args[i]);
        return;
      }
      if (node->text == "sum") {
        if (node->args.size() != 4 || node->args[0]->kind != Expr::Kind::kVar)
          throw ExprError("malformed sum()");
        visit(node->args[1]);
        visit(node->args[2]);
        bool added = locals.insert(node->args[0]->text).second;
        visit(node->args[3]);
        if (added) locals.erase(node->args[0]->text);
        return;
      }
    }
    for (const auto& a : node->args) visit(a);
  };
  visit(e);
}

std::string expr_to_text(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::kConstRat:
      return rat_to_string(e->rat);
    case Expr::Kind::kConstStr:
      return "\"" + e->text + "\"";
    case Expr::Kind::kVar:
      return e->text;
    case Expr::Kind::kAdd:
      return "(" + expr_to_text(e->args[0]) + " + " + expr_to_text(e->args[1]) +
             ")";
    case Expr::Kind::kSub:
      return "(" + expr_to_text(e->args[0]) + " - " + expr_to_text(e->args[1]) +
             ")";
    case Expr::Kind::kMul:
      return "(" + expr_to_text(e->args[0]) + " * " + expr_to_text(e->args[1]) +
             ")";
    case Expr::Kind::kDiv:
      return "(" + expr_to_text(e->args[0]) + " / " + expr_to_text(e->args[1]) +
             ")";
    case Expr::Kind::kNeg:
      return "(-" + expr_to_text(e->args[0]) + ")";
    case Expr::Kind::kCall: {
      std::string s = e->text + "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += ", ";
        s += expr_to_text(e->args[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

}  // namespace mge

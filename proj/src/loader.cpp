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

#include "mge/loader.hpp"

#include <fstream>
#include <sstream>

#include "mge/dsl.hpp"

namespace mge {

namespace {

Rat jrat(const Json& j, const char* what) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<int64_t>());
  throw SchemaError(std::string("expected a rational for ") + what);
}

ComplexityFnSpec complexity_from_json(const Json& j) {
  ComplexityFnSpec s;
  if (!j.contains("kind")) throw SchemaError("complexity spec needs a kind");
  s.kind = complexity_kind_from_name(j.at("kind").get<std::string>());
  auto geti = [&](const char* key, int64_t dflt) {
    return j.contains(key) ? j.at(key).get<int64_t>() : dflt;
  };
  s.det_cost = geti("det_cost", s.det_cost);
  s.rand_surcharge = geti("rand_surcharge", s.rand_surcharge);
  s.stateless_cost = geti("stateless_cost", s.stateless_cost);
  s.stateful_cost = geti("stateful_cost", s.stateful_cost);
  s.threshold = geti("threshold", s.threshold);
  s.free_band = geti("free_band", s.free_band);
  s.penalty_band = geti("penalty_band", s.penalty_band);
  s.w_steps = geti("w_steps", s.w_steps);
  s.w_size = geti("w_size", s.w_size);
  s.w_rand = geti("w_rand", s.w_rand);
  s.w_state = geti("w_state", s.w_state);
  s.c0 = geti("c0", s.c0);
  s.worst_case_input_length = geti("worst_case_input_length", 0);
  if (j.contains("labels"))
    for (const auto& l : j.at("labels"))
      s.protocol_labels.insert(l.get<std::string>());
  if (j.contains("fallback"))
    s.fallback_kind =
        complexity_kind_from_name(j.at("fallback").get<std::string>());
  if (j.contains("free_randomization"))
    s.free_randomization = j.at("free_randomization").get<bool>();
  return s;
}

Json complexity_to_json(const ComplexityFnSpec& s) {
  Json j;
  j["kind"] = complexity_kind_name(s.kind);
  switch (s.kind) {
    case ComplexityKind::kRandCharge:
      j["det_cost"] = s.det_cost;
      j["rand_surcharge"] = s.rand_surcharge;
      break;
    case ComplexityKind::kStateCharge:
      j["stateless_cost"] = s.stateless_cost;
      j["stateful_cost"] = s.stateful_cost;
      break;
    case ComplexityKind::kCoarseThreshold:
      j["threshold"] = s.threshold;
      j["free_band"] = s.free_band;
      j["penalty_band"] = s.penalty_band;
      break;
    case ComplexityKind::kWeightedSum:
      j["w_steps"] = s.w_steps;
      j["w_size"] = s.w_size;
      j["w_rand"] = s.w_rand;
      j["w_state"] = s.w_state;
      break;
    case ComplexityKind::kConstantForProtocol: {
      j["c0"] = s.c0;
      Json labels = Json::array();
      for (const auto& l : s.protocol_labels) labels.push_back(l);
      j["labels"] = labels;
      j["fallback"] = complexity_kind_name(s.fallback_kind);
      break;
    }
    case ComplexityKind::kWorstCasePlusSize:
      j["worst_case_input_length"] = s.worst_case_input_length;
      break;
    default:
      break;
  }
  if (s.free_randomization) j["free_randomization"] = true;
  return j;
}

Coalition coalition_from_json(const Json& j) {
  Coalition z;
  for (const auto& v : j) z.push_back(v.get<int>());
  std::sort(z.begin(), z.end());
  return z;
}

MediatorSpec mediator_from_json(const Json& j) {
  MediatorSpec m;
  std::string kind = j.at("kind").get<std::string>();
  if (j.contains("stage_limit")) m.stage_limit = j.at("stage_limit").get<int64_t>();
  if (j.contains("label")) m.label = j.at("label").get<std::string>();
  if (kind == "comm") {
    m.kind = MediatorKind::kComm;
  } else if (kind == "functionality") {
    m.kind = MediatorKind::kFunctionality;
    FunctionalitySpec f;
    const Json& fj = j.at("functionality");
    std::string fk = fj.at("kind").get<std::string>();
    f.input_length = fj.at("n").get<int64_t>();
    if (fk == "shared_coin") {
      f.kind = FunctionalitySpec::Kind::kSharedCoin;
    } else if (fk == "table") {
      f.kind = FunctionalitySpec::Kind::kTable;
      for (const auto& row : fj.at("table")) {
        std::vector<std::string> x, y;
        for (const auto& v : row.at("x")) x.push_back(v.get<std::string>());
        for (const auto& v : row.at("y")) y.push_back(v.get<std::string>());
        f.table[x] = y;
      }
    } else {
      throw SchemaError("unknown functionality kind '" + fk + "'");
    }
    m.functionality = std::move(f);
  } else if (kind == "scripted") {
    m.kind = MediatorKind::kScripted;
    ScriptedSpec s;
    const Json& sj = j.at("script");
    std::string sk = sj.at("kind").get<std::string>();
    if (sk == "comparator") {
      s.kind = ScriptedSpec::Kind::kComparator;
      s.prefix_len = sj.at("prefix_len").get<int64_t>();
    } else if (sk == "repeat_relay") {
      s.kind = ScriptedSpec::Kind::kRepeatRelay;
      s.rounds = sj.at("rounds").get<int64_t>();
    } else {
      throw SchemaError("unknown script kind '" + sk + "'");
    }
    m.script = s;
  } else {
    throw SchemaError("unknown mediator kind '" + kind + "'");
  }
  return m;
}

Json mediator_to_json(const MediatorSpec& m) {
  Json j;
  j["stage_limit"] = m.stage_limit;
  j["label"] = m.label;
  switch (m.kind) {
    case MediatorKind::kComm:
      j["kind"] = "comm";
      break;
    case MediatorKind::kFunctionality: {
      j["kind"] = "functionality";
      Json fj;
      fj["n"] = m.functionality->input_length;
      if (m.functionality->kind == FunctionalitySpec::Kind::kSharedCoin) {
        fj["kind"] = "shared_coin";
      } else {
        fj["kind"] = "table";
        Json rows = Json::array();
        for (const auto& [x, y] : m.functionality->table) {
          Json row;
          row["x"] = x;
          row["y"] = y;
          rows.push_back(row);
        }
        fj["table"] = rows;
      }
      j["functionality"] = fj;
      break;
    }
    case MediatorKind::kScripted: {
      j["kind"] = "scripted";
      Json sj;
      if (m.script->kind == ScriptedSpec::Kind::kComparator) {
        sj["kind"] = "comparator";
        sj["prefix_len"] = m.script->prefix_len;
      } else {
        sj["kind"] = "repeat_relay";
        sj["rounds"] = m.script->rounds;
      }
      j["script"] = sj;
      break;
    }
  }
  return j;
}

}  // namespace

GameSpec load_game(const Json& doc) {
  GameSpec g;
  if (!doc.contains("players")) throw SchemaError("missing 'players'");
  g.player_count = doc.at("players").get<int>();
  if (doc.contains("name")) g.name = doc.at("name").get<std::string>();
  if (doc.contains("input_length"))
    g.input_length = doc.at("input_length").get<int64_t>();

  if (!doc.contains("types")) throw SchemaError("missing 'types'");
  for (const auto& row : doc.at("types")) {
    TypeProfile tp;
    for (const auto& e : row.at("t")) tp.entries.push_back(e.get<std::string>());
    tp.prob = jrat(row.at("p"), "type probability");
    g.type_space.push_back(std::move(tp));
  }

  if (doc.contains("machines"))
    for (const auto& [label, text] : doc.at("machines").items()) {
      MachineProgram p = parse_program(text.get<std::string>());
      if (p.label.empty()) p.label = label;
      if (p.label != label)
        throw SchemaError("machine '" + label + "' declares label '" +
                          p.label + "'");
      g.machines[label] = std::move(p);
    }
  g.machines["bot"] = canonical_bot();
  if (doc.contains("machine_class"))
    for (const auto& l : doc.at("machine_class"))
      g.machine_class.push_back(l.get<std::string>());

  if (!doc.contains("complexity")) throw SchemaError("missing 'complexity'");
  const Json& cj = doc.at("complexity");
  if (cj.contains("all")) {
    ComplexityFnSpec s = complexity_from_json(cj.at("all"));
    g.complexity.assign(g.player_count, s);
  } else {
    for (const auto& s : cj.at("players"))
      g.complexity.push_back(complexity_from_json(s));
  }
  if (cj.contains("coalitions"))
    for (const auto& row : cj.at("coalitions"))
      g.coalition_complexity[coalition_from_json(row.at("members"))] =
          complexity_from_json(row.at("spec"));

  if (doc.contains("tables"))
    for (const auto& [name, rows] : doc.at("tables").items()) {
      auto& table = g.tables[name];
      for (const auto& row : rows) {
        std::vector<std::string> key;
        for (const auto& k : row.at("key")) key.push_back(k.get<std::string>());
        table[key] = jrat(row.at("value"), "table value");
      }
    }

  if (!doc.contains("utilities")) throw SchemaError("missing 'utilities'");
  const Json& uj = doc.at("utilities");
  for (const auto& e : uj.at("players"))
    g.utilities.push_back(parse_expr(e.get<std::string>()));
  if (uj.contains("coalitions"))
    for (const auto& row : uj.at("coalitions"))
      g.coalition_utilities[coalition_from_json(row.at("members"))] =
          parse_expr(row.at("expr").get<std::string>());

  if (doc.contains("budget")) {
    const Json& b = doc.at("budget");
    if (b.contains("max_steps")) g.budget.max_steps = b.at("max_steps").get<int64_t>();
    if (b.contains("max_output_bits"))
      g.budget.max_output_bits = b.at("max_output_bits").get<int64_t>();
    if (b.contains("max_rand_bits"))
      g.budget.max_rand_bits = b.at("max_rand_bits").get<int64_t>();
  }
  if (doc.contains("limits")) {
    const Json& l = doc.at("limits");
    if (l.contains("rand_depth_cap"))
      g.limits.rand_depth_cap = l.at("rand_depth_cap").get<int64_t>();
    if (l.contains("residual_tolerance"))
      g.limits.residual_tolerance =
          jrat(l.at("residual_tolerance"), "residual tolerance");
    if (l.contains("exact_limit"))
      g.limits.exact_limit = l.at("exact_limit").get<int64_t>();
  }
  if (doc.contains("flags")) {
    const Json& f = doc.at("flags");
    if (f.contains("normalized")) g.normalized = f.at("normalized").get<bool>();
    if (f.contains("monotone")) g.monotone = f.at("monotone").get<bool>();
    if (f.contains("computationally_cheap"))
      g.computationally_cheap = f.at("computationally_cheap").get<bool>();
  }
  if (doc.contains("mediator")) g.mediator = mediator_from_json(doc.at("mediator"));
  if (doc.contains("repeated"))
    g.repeated = RepeatedConfig{doc.at("repeated").at("rounds").get<int>()};
  if (doc.contains("candidates")) {
    CandidateClassDecl c;
    c.label = doc.at("candidates").value("label", "declared");
    for (const auto& row : doc.at("candidates").at("players")) {
      std::vector<std::string> labels;
      for (const auto& l : row) labels.push_back(l.get<std::string>());
      c.per_player.push_back(std::move(labels));
    }
    g.candidates = std::move(c);
  }
  // Worst-case complexity enumerates inputs of the game's canonical length
  // under the game budget unless the spec pins its own.
  for (auto& spec : g.complexity) {
    if (spec.kind != ComplexityKind::kWorstCasePlusSize) continue;
    if (spec.worst_case_input_length == 0)
      spec.worst_case_input_length = g.input_length;
    spec.worst_case_budget = g.budget;
  }
  g.validate();
  return g;
}

GameSpec load_game_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("game file is not valid JSON: ") + e.what());
  }
  return load_game(doc);
}

GameSpec load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open game file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_game_text(ss.str());
}

Json game_to_json(const GameSpec& g) {
  Json doc;
  doc["schema_version"] = 1;
  doc["name"] = g.name;
  doc["players"] = g.player_count;
  doc["input_length"] = g.input_length;
  Json types = Json::array();
  for (const auto& tp : g.type_space) {
    Json row;
    row["t"] = tp.entries;
    row["p"] = rat_to_string(tp.prob);
    types.push_back(row);
  }
  doc["types"] = types;
  Json machines;
  for (const auto& [label, prog] : g.machines) {
    if (label == "bot") continue;
    machines[label] = program_to_text(prog);
  }
  doc["machines"] = machines;
  doc["machine_class"] = g.machine_class;
  Json complexity;
  Json per_player = Json::array();
  for (const auto& s : g.complexity) per_player.push_back(complexity_to_json(s));
  complexity["players"] = per_player;
  if (!g.coalition_complexity.empty()) {
    Json rows = Json::array();
    for (const auto& [z, s] : g.coalition_complexity) {
      Json row;
      row["members"] = z;
      row["spec"] = complexity_to_json(s);
      rows.push_back(row);
    }
    complexity["coalitions"] = rows;
  }
  doc["complexity"] = complexity;
  if (!g.tables.empty()) {
    Json tables;
    for (const auto& [name, table] : g.tables) {
      Json rows = Json::array();
      for (const auto& [key, value] : table) {
        Json row;
        row["key"] = key;
        row["value"] = rat_to_string(value);
        rows.push_back(row);
      }
      tables[name] = rows;
    }
    doc["tables"] = tables;
  }
  Json utilities;
  Json uplayers = Json::array();
  for (const auto& u : g.utilities) uplayers.push_back(expr_to_text(u));
  utilities["players"] = uplayers;
  if (!g.coalition_utilities.empty()) {
    Json rows = Json::array();
    for (const auto& [z, u] : g.coalition_utilities) {
      Json row;
      row["members"] = z;
      row["expr"] = expr_to_text(u);
      rows.push_back(row);
    }
    utilities["coalitions"] = rows;
  }
  doc["utilities"] = utilities;
  doc["budget"] = {{"max_steps", g.budget.max_steps},
                   {"max_output_bits", g.budget.max_output_bits},
                   {"max_rand_bits", g.budget.max_rand_bits}};
  doc["limits"] = {{"rand_depth_cap", g.limits.rand_depth_cap},
                   {"residual_tolerance", rat_to_string(g.limits.residual_tolerance)},
                   {"exact_limit", g.limits.exact_limit}};
  doc["flags"] = {{"normalized", g.normalized},
                  {"monotone", g.monotone},
                  {"computationally_cheap", g.computationally_cheap}};
  if (g.mediator) doc["mediator"] = mediator_to_json(*g.mediator);
  if (g.repeated) doc["repeated"] = {{"rounds", g.repeated->rounds}};
  if (g.candidates) {
    Json c;
    c["label"] = g.candidates->label;
    c["players"] = g.candidates->per_player;
    doc["candidates"] = c;
  }
  return doc;
}

Json utility_outcome_to_json(const UtilityOutcome& o) {
  Json j;
  if (o.exact) {
    j["mode"] = "exact";
    j["value"] = rat_to_string(o.value);
    j["max_residual"] = rat_to_string(o.max_residual);
  } else {
    j["mode"] = "sampled";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", o.estimate);
    j["estimate"] = buf;
    std::snprintf(buf, sizeof buf, "%.17g", o.half_width);
    j["half_width"] = buf;
    j["confidence"] = o.confidence;
    j["samples"] = o.samples;
    j["seed"] = o.seed;
  }
  return j;
}

Json report_to_json(const EquilibriumReport& r) {
  Json j;
  j["schema_version"] = 1;
  j["check"] = r.check;
  j["verdict"] = r.verdict_holds ? "holds" : "fails";
  j["epsilon"] = rat_to_string(r.epsilon);
  j["candidate_class"] = r.class_label;
  j["mode"] = r.mode;
  if (!r.subjects.empty()) {
    Json subjects = Json::array();
    for (const auto& s : r.subjects) {
      Json sj;
      sj["subject"] = s.subject;
      sj["incumbent"] = s.incumbent;
      sj["max_gap"] = rat_to_string(s.max_gap);
      sj["witness"] = s.witness;
      sj["holds"] = s.holds;
      Json gaps = Json::array();
      for (const auto& g : s.gaps) {
        Json gj;
        gj["candidate"] = g.candidate;
        gj["gap"] = rat_to_string(g.gap);
        gaps.push_back(gj);
      }
      sj["gaps"] = gaps;
      subjects.push_back(sj);
    }
    j["subjects"] = subjects;
  }
  if (!r.universal_rows.empty()) {
    Json rows = Json::array();
    for (const auto& u : r.universal_rows) {
      Json uj;
      uj["game"] = u.game_name;
      uj["zprime"] = u.zprime;
      uj["antecedent"] = u.antecedent;
      uj["clause1"] = u.clause1;
      uj["clause2"] = u.clause2;
      uj["vacuous"] = u.vacuous;
      uj["holds"] = u.holds;
      if (!u.note.empty()) uj["note"] = u.note;
      rows.push_back(uj);
    }
    j["universal"] = rows;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::string report_to_human(const EquilibriumReport& r) {
  std::ostringstream os;
  os << r.check << " check [" << r.mode << "], class '" << r.class_label
     << "', epsilon " << rat_to_string(r.epsilon) << ": "
     << (r.verdict_holds ? "HOLDS" : "FAILS") << "\n";
  for (const auto& s : r.subjects) {
    os << "  " << s.subject << " (incumbent " << s.incumbent
       << "): max gap " << rat_to_string(s.max_gap) << " via " << s.witness
       << " -> " << (s.holds ? "ok" : "violated") << "\n";
  }
  for (const auto& u : r.universal_rows) {
    os << "  [" << u.game_name << "] Z'=" << u.zprime;
    if (u.vacuous)
      os << " vacuous";
    else
      os << " antecedent=" << u.antecedent << " clause1=" << u.clause1
         << " clause2=" << u.clause2;
    os << " -> " << (u.holds ? "ok" : "violated");
    if (!u.note.empty()) os << " (" << u.note << ")";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

Json mixed_equilibrium_to_json(const MixedEquilibrium& eq,
                               const FiniteBayesianGame& fg) {
  Json j;
  j["provenance"] = eq.provenance;
  j["residual"] = rat_to_string(eq.residual);
  Json players = Json::array();
  for (int i = 0; i < fg.players; ++i) {
    Json pj = Json::array();
    for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
      Json tj;
      tj["type"] = fg.type_names[i][t];
      Json dist;
      for (size_t a = 0; a < fg.action_names[i].size(); ++a)
        dist[fg.action_names[i][a]] = rat_to_string(eq.sigma[i][t][a]);
      tj["distribution"] = dist;
      pj.push_back(tj);
    }
    players.push_back(pj);
  }
  j["players"] = players;
  return j;
}

}  // namespace mge

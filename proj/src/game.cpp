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

#include "mge/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace mge {

void GameSpec::validate() const {
  if (player_count < 1) throw SchemaError("player_count must be positive");
  Rat sum = 0;
  for (const auto& tp : type_space) {
    if (static_cast<int>(tp.entries.size()) != player_count + 1)
      throw SchemaError("type profile needs player_count + 1 entries "
                        "(nature last)");
    if (tp.prob <= 0) throw SchemaError("type probabilities must be positive");
    sum += tp.prob;
  }
  if (type_space.empty()) throw SchemaError("empty type space");
  if (sum != 1)
    throw ProbabilityNotOne("type probabilities sum to " + rat_to_string(sum));
  if (static_cast<int>(complexity.size()) != player_count)
    throw SchemaError("one complexity spec per player required");
  if (static_cast<int>(utilities.size()) != player_count)
    throw SchemaError("one utility per player required");
  budget.validate();

  std::vector<MachineProgram> probes{canonical_bot()};
  for (const auto& label : machine_class) {
    const auto& prog = machine(label);
    validate_program(prog);
    if (!is_bot(prog)) probes.push_back(prog);
  }
  if (probes.size() == 1)
    probes.push_back(MachineProgram{
        "probe", 0, {Instruction{Op::kEmit, 0, 0, 0, 0, "0"}}});
  for (const auto& spec : complexity) {
    auto report = validate_complexity_spec(spec, probes);
    if (!report.ok)
      throw InvalidSpec("complexity spec rejected: " +
                        (report.notes.empty() ? "" : report.notes.front()));
  }
  for (const auto& u : utilities) validate_expr(u, player_count, tables);
  for (const auto& [z, u] : coalition_utilities) {
    validate_expr(u, player_count, tables);
    for (int i : z)
      if (i < 1 || i > player_count)
        throw SchemaError("coalition member out of range");
  }
}

StrategyProfile profile_from_labels(const GameSpec& game,
                                    const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != game.player_count)
    throw SchemaError("profile needs one machine per player");
  StrategyProfile p;
  for (const auto& l : labels) p.assignment.push_back(game.machine(l));
  return p;
}

CoalitionMachine benign_coalition_machine(const StrategyProfile& profile,
                                          const Coalition& z) {
  if (z.empty()) throw MgeError("benign machine needs a nonempty coalition");
  CoalitionMachine cm;
  cm.members = z;
  cm.shared_tape = false;
  std::string names;
  for (int i : z) {
    if (i < 1 || i > static_cast<int>(profile.assignment.size()))
      throw MgeError("coalition member unassigned");
    cm.member_programs.push_back(profile.assignment[i - 1]);
    if (!names.empty()) names += ",";
    names += profile.assignment[i - 1].label;
  }
  cm.label = "benign(" + names + ")";
  return cm;
}

namespace {

struct ResolvedPlayers {
  std::vector<PlayerBinding> bindings;
  std::vector<bool> coalition_member;
  const CoalitionMachine* coalition = nullptr;
};

ResolvedPlayers resolve_players(const GameSpec& game,
                                const StrategyProfile& profile) {
  if (static_cast<int>(profile.assignment.size()) != game.player_count)
    throw SchemaError("profile/player count mismatch");
  ResolvedPlayers r;
  r.coalition_member.assign(game.player_count, false);
  r.bindings.resize(game.player_count);
  for (int i = 0; i < game.player_count; ++i)
    r.bindings[i] = PlayerBinding{&profile.assignment[i], i};
  if (profile.coalition) {
    r.coalition = &*profile.coalition;
    const auto& cm = *profile.coalition;
    if (cm.members.size() != cm.member_programs.size())
      throw MgeError("coalition members/programs mismatch");
    int shared_slot = cm.members.front() - 1;
    for (size_t k = 0; k < cm.members.size(); ++k) {
      int i = cm.members[k] - 1;
      r.coalition_member[i] = true;
      r.bindings[i].program = &cm.member_programs[k];
      if (cm.shared_tape) r.bindings[i].tape_slot = shared_slot;
    }
  }
  return r;
}

void merge_member_data(const std::vector<int>& members,
                       const std::vector<View>& views,
                       const std::vector<RunMeter>& meters, View* out_view,
                       RunMeter* out_meter) {
  for (int m : members) {
    const View& v = views[m - 1];
    const RunMeter& mt = meters[m - 1];
    out_view->type_prefix += v.type_prefix;
    out_view->type_eof_read = out_view->type_eof_read || v.type_eof_read;
    out_view->random_prefix += v.random_prefix;
    out_view->message_history.insert(out_view->message_history.end(),
                                     v.message_history.begin(),
                                     v.message_history.end());
    out_meter->steps += mt.steps;
    out_meter->program_size += mt.program_size;
    out_meter->rand_bits += mt.rand_bits;
    out_meter->registers_touched += mt.registers_touched;
    out_meter->carried_state_bits =
        std::max(out_meter->carried_state_bits, mt.carried_state_bits);
    out_meter->halted = out_meter->halted && mt.halted;
  }
}

// Two-player repeated playout: each round both automata run fresh on
// "signal;state", where the signal is the opponent's previous move.
PlayoutLeaf run_repeated_playout(const GameSpec& game,
                                 const ResolvedPlayers& rp,
                                 const std::vector<std::string>& tapes) {
  if (game.player_count != 2)
    throw MgeError("repeated-game harness supports two players");
  const int n_rounds = game.repeated->rounds;
  PlayoutLeaf leaf;
  leaf.outputs.assign(2, "");
  leaf.views.resize(2);
  leaf.meters.resize(2);
  leaf.payload_sent.assign(2, 0);
  std::vector<std::string> state(2, "");
  std::vector<int64_t> cursor(2, 0);
  for (int i = 0; i < 2; ++i) {
    leaf.meters[i].program_size =
        static_cast<int64_t>(rp.bindings[i].program->instructions.size());
    leaf.meters[i].halted = true;
  }
  for (int round = 1; round <= n_rounds; ++round) {
    for (int i = 0; i < 2; ++i) {
      std::string signal =
          round == 1 ? "" : std::string(1, leaf.outputs[1 - i][round - 2]);
      std::string input = signal + ";" + state[i];
      const int slot = rp.bindings[i].tape_slot;
      RunResult r = run_machine(*rp.bindings[i].program, input,
                                tapes[slot].substr(cursor[i]), game.budget,
                                slot);
      cursor[i] += r.meter.rand_bits;
      // Output convention "move;state": anything but a leading '0' plays
      // defect, so stage payoff tables stay total.
      std::string move = "1", next_state;
      if (!r.output.empty()) {
        auto sep = r.output.find(';');
        std::string move_part = r.output.substr(0, sep);
        if (move_part == "0") move = "0";
        if (sep != std::string::npos) next_state = r.output.substr(sep + 1);
      }
      leaf.outputs[i] += move;
      leaf.payload_sent[i] += 1;
      RunMeter& agg = leaf.meters[i];
      agg.steps += r.meter.steps;
      agg.rand_bits += r.meter.rand_bits;
      agg.registers_touched =
          std::max(agg.registers_touched, r.meter.registers_touched);
      if (round < n_rounds)
        agg.carried_state_bits =
            std::max(agg.carried_state_bits,
                     static_cast<int64_t>(next_state.size()));
      agg.halted = agg.halted && r.meter.halted;
      leaf.views[i].message_history.push_back(
          ViewMessage{round, false, r.view.type_prefix});
      leaf.views[i].message_history.push_back(
          ViewMessage{round, true, r.output});
      leaf.views[i].random_prefix += r.view.random_prefix;
      state[i] = next_state;
    }
  }
  return leaf;
}

// Runs a complete deterministic playout from fixed finite tapes, throwing
// TapeExhausted when any participant needs one more bit.
PlayoutLeaf run_playout(const GameSpec& game, const ResolvedPlayers& rp,
                        const std::optional<MediatorSpec>& mediator,
                        const TypeProfile& types,
                        const std::vector<std::string>& tapes) {
  PlayoutLeaf leaf;
  if (game.repeated) {
    leaf = run_repeated_playout(game, rp, tapes);
  } else if (mediator) {
    std::vector<std::string> player_types(types.entries.begin(),
                                          types.entries.begin() +
                                              game.player_count);
    Transcript t =
        execute_mediated(rp.bindings, *mediator, player_types, tapes,
                         game.budget);
    leaf.outputs = std::move(t.outputs);
    leaf.views = std::move(t.views);
    leaf.meters = std::move(t.meters);
    leaf.payload_sent = std::move(t.payload_sent);
  } else {
    leaf.outputs.resize(game.player_count);
    leaf.views.resize(game.player_count);
    leaf.meters.resize(game.player_count);
    leaf.payload_sent.assign(game.player_count, 0);
    for (int i = 0; i < game.player_count; ++i) {
      const int slot = rp.bindings[i].tape_slot;
      RunResult r = run_machine(*rp.bindings[i].program, types.entries[i],
                                tapes[slot], game.budget, slot);
      leaf.outputs[i] = std::move(r.output);
      leaf.views[i] = std::move(r.view);
      leaf.meters[i] = std::move(r.meter);
    }
  }
  if (rp.coalition) {
    View v;
    RunMeter m;
    m.halted = true;
    merge_member_data(rp.coalition->members, leaf.views, leaf.meters, &v, &m);
    leaf.coalition_view = std::move(v);
    leaf.coalition_meter = std::move(m);
    bool nothing = true;
    for (const auto& p : rp.coalition->member_programs)
      if (!is_bot(p)) nothing = false;
    leaf.coalition_is_nothing = nothing;
  }
  return leaf;
}

}  // namespace

TypeOutcome enumerate_playouts(const GameSpec& game,
                               const StrategyProfile& profile,
                               const std::optional<MediatorSpec>& mediator,
                               const TypeProfile& types) {
  ResolvedPlayers rp = resolve_players(game, profile);
  TypeOutcome out;
  out.residual = 0;
  const int slots = game.player_count + 1;  // mediator slot last
  std::vector<std::vector<std::string>> stack;
  stack.push_back(std::vector<std::string>(slots));
  int64_t work = 0;
  while (!stack.empty()) {
    if (++work > game.limits.exact_limit)
      throw ExactModeOverflow("playout enumeration exceeds exact limit");
    std::vector<std::string> tapes = std::move(stack.back());
    stack.pop_back();
    auto prob_of = [&]() {
      int64_t bits = 0;
      for (const auto& t : tapes) bits += static_cast<int64_t>(t.size());
      return Rat(Int(1), Int(1) << static_cast<unsigned>(bits));
    };
    try {
      PlayoutLeaf leaf = run_playout(game, rp, mediator, types, tapes);
      leaf.prob = prob_of();
      out.leaves.push_back(std::move(leaf));
    } catch (const TapeExhausted& ex) {
      int slot = ex.participant;
      if (slot < 0 || slot >= slots) throw;
      if (static_cast<int64_t>(tapes[slot].size()) >=
          game.limits.rand_depth_cap) {
        out.residual += prob_of();
        continue;
      }
      auto one = tapes;
      one[slot].push_back('1');
      stack.push_back(std::move(one));
      tapes[slot].push_back('0');
      stack.push_back(std::move(tapes));
    }
  }
  return out;
}

namespace {

struct LeafUtilityEvaluator {
  const GameSpec& game;
  const StrategyProfile& profile;
  const Subject& subject;
  const std::function<int64_t(int64_t)>* subject_transform = nullptr;

  int64_t maybe_transform(int64_t c) const {
    return subject_transform ? (*subject_transform)(c) : c;
  }

  Rat eval(const TypeProfile& types, const PlayoutLeaf& leaf) const {
    ExprEnv env;
    env.types.assign(types.entries.begin(),
                     types.entries.begin() + game.player_count);
    env.nature_type = types.entries[game.player_count];
    env.actions = leaf.outputs;
    env.payload_sent = leaf.payload_sent;
    env.input_length = game.input_length;
    env.tables = &game.tables;
    env.complexities.assign(game.player_count, Rat(0));
    env.complexity_valid.assign(game.player_count, true);

    std::vector<bool> member(game.player_count, false);
    if (profile.coalition)
      for (int i : profile.coalition->members) member[i - 1] = true;
    for (int i = 0; i < game.player_count; ++i) {
      if (member[i]) {
        env.complexity_valid[i] = false;
        continue;
      }
      int64_t c = evaluate_complexity(game.complexity[i],
                                      profile.assignment[i], leaf.views[i],
                                      leaf.meters[i], env.nature_type);
      if (!subject.is_coalition && subject.player == i + 1)
        c = maybe_transform(c);
      env.complexities[i] = Rat(c);
    }

    ExprPtr expr;
    if (subject.is_coalition) {
      const Coalition& z = subject.coalition;
      // Coalition complexity: from the explicit controller when present,
      // otherwise from the benign merge of the members' own runs.
      Rat cz;
      if (profile.coalition && profile.coalition->members == z) {
        cz = Rat(maybe_transform(evaluate_complexity_meter(
            game.coalition_spec(z), leaf.coalition_is_nothing,
            profile.coalition->label, *leaf.coalition_view,
            *leaf.coalition_meter, env.nature_type)));
      } else {
        View v;
        RunMeter mt;
        mt.halted = true;
        merge_member_data(z, leaf.views, leaf.meters, &v, &mt);
        bool nothing = true;
        for (int i : z)
          if (!is_bot(profile.assignment[i - 1])) nothing = false;
        cz = Rat(maybe_transform(
            evaluate_complexity_meter(game.coalition_spec(z), nothing,
                                      "benign", v, mt, env.nature_type)));
      }
      env.coalition_complexity = cz;
      auto it = game.coalition_utilities.find(z);
      if (it != game.coalition_utilities.end()) {
        expr = it->second;
      } else if (z.size() == 1) {
        // Singleton coalitions reduce to the player's own utility with the
        // coalition complexity standing in for c_i.
        expr = game.utilities[z.front() - 1];
        env.complexities[z.front() - 1] = cz;
        env.complexity_valid[z.front() - 1] = true;
      } else {
        throw SchemaError("no utility declared for coalition");
      }
    } else {
      expr = game.utilities[subject.player - 1];
    }
    Rat u = eval_expr_rat(expr, env);
    if (game.normalized && (u < 0 || u > 1))
      throw SchemaError("game declared normalized but utility " +
                        rat_to_string(u) + " is outside [0,1]");
    return u;
  }
};

}  // namespace

UtilityOutcome expected_utility(const GameSpec& game,
                                const StrategyProfile& profile,
                                const Subject& subject, const EvalMode& mode) {
  return expected_utility(game, profile, subject, mode, game.mediator);
}

UtilityOutcome expected_utility(const GameSpec& game,
                                const StrategyProfile& profile,
                                const Subject& subject, const EvalMode& mode,
                                const std::optional<MediatorSpec>& mediator) {
  return expected_utility_ex(game, profile, subject, mode, mediator, nullptr);
}

UtilityOutcome expected_utility_ex(
    const GameSpec& game, const StrategyProfile& profile,
    const Subject& subject, const EvalMode& mode,
    const std::optional<MediatorSpec>& mediator,
    const std::function<int64_t(int64_t)>* subject_complexity_transform) {
  LeafUtilityEvaluator evaluator{game, profile, subject,
                                 subject_complexity_transform};
  UtilityOutcome out;
  if (mode.exact) {
    out.exact = true;
    out.value = 0;
    out.max_residual = 0;
    for (const auto& tp : game.type_space) {
      TypeOutcome oc = enumerate_playouts(game, profile, mediator, tp);
      if (oc.residual > game.limits.residual_tolerance)
        throw MgeError("non-halting mass " + rat_to_string(oc.residual) +
                       " above declared tolerance " +
                       rat_to_string(game.limits.residual_tolerance));
      out.max_residual = std::max(out.max_residual, oc.residual);
      Rat halted = 0, weighted = 0;
      for (const auto& leaf : oc.leaves) {
        halted += leaf.prob;
        weighted += leaf.prob * evaluator.eval(tp, leaf);
      }
      if (halted == 0) throw MgeError("no halting playout within depth cap");
      out.value += tp.prob * (weighted / halted);
    }
    return out;
  }

  // Sampled mode. Unbiased mean with a Hoeffding half-width for range-[0,1]
  // utilities; playouts that hit the tape depth cap are redrawn, matching the
  // exact mode's conditioning on halting.
  if (!game.normalized)
    throw MgeError("sampled mode requires a normalized game");
  if (mode.samples <= 0) throw MgeError("sampled mode needs samples > 0");
  ResolvedPlayers rp = resolve_players(game, profile);
  std::mt19937_64 rng(mode.seed);
  const Rat two64 = Rat(Int(1) << 64);
  std::unordered_map<std::string, Rat> memo;
  Rat sum = 0;
  for (int64_t s = 0; s < mode.samples; ++s) {
    // Type draw by cumulative rational thresholds against a 64-bit uniform.
    Rat u = Rat(Int(rng())) / two64;
    size_t type_idx = 0;
    Rat cum = 0;
    for (size_t t = 0; t < game.type_space.size(); ++t) {
      cum += game.type_space[t].prob;
      if (u < cum) {
        type_idx = t;
        break;
      }
      type_idx = t;
    }
    const TypeProfile& tp = game.type_space[type_idx];
    std::vector<std::string> tapes(game.player_count + 1);
    PlayoutLeaf leaf;
    int restarts = 0;
    while (true) {
      try {
        leaf = run_playout(game, rp, mediator, tp, tapes);
        break;
      } catch (const TapeExhausted& ex) {
        int slot = ex.participant;
        if (static_cast<int64_t>(tapes[slot].size()) >=
            game.limits.rand_depth_cap) {
          if (++restarts > 1000)
            throw MgeError("sampled playout kept hitting the depth cap");
          for (auto& t : tapes) t.clear();
          continue;
        }
        tapes[slot].push_back((rng() & 1) ? '1' : '0');
      }
    }
    std::string key = std::to_string(type_idx);
    for (const auto& o : leaf.outputs) key += "|" + o;
    for (int i = 0; i < game.player_count; ++i)
      key += "#" + std::to_string(leaf.meters[i].steps) + ":" +
             std::to_string(leaf.meters[i].rand_bits) + ":" +
             std::to_string(leaf.meters[i].carried_state_bits);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, evaluator.eval(tp, leaf)).first;
    sum += it->second;
  }
  out.exact = false;
  out.estimate = rat_to_double(sum / mode.samples);
  out.confidence = mode.confidence;
  out.samples = mode.samples;
  out.seed = mode.seed;
  out.half_width =
      std::sqrt(std::log(2.0 / (1.0 - mode.confidence)) / (2.0 * mode.samples));
  return out;
}

ActionDistribution action_distribution(
    const GameSpec& game, const StrategyProfile& profile,
    const std::optional<MediatorSpec>& mediator) {
  ActionDistribution dist;
  for (const auto& tp : game.type_space) {
    TypeOutcome oc = enumerate_playouts(game, profile, mediator, tp);
    if (oc.residual > game.limits.residual_tolerance)
      throw MgeError("non-halting mass above declared tolerance");
    Rat halted = 0;
    std::map<std::vector<std::string>, Rat> d;
    for (const auto& leaf : oc.leaves) {
      halted += leaf.prob;
      d[leaf.outputs] += leaf.prob;
    }
    if (halted == 0) throw MgeError("no halting playout within depth cap");
    for (auto& [k, v] : d) v /= halted;
    dist.push_back(std::move(d));
  }
  return dist;
}

}  // namespace mge

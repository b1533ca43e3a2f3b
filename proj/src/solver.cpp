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

#include "mge/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mge {

int64_t FiniteBayesianGame::type_profiles() const {
  int64_t n = 1;
  for (const auto& t : type_names) n *= static_cast<int64_t>(t.size());
  return n;
}

int64_t FiniteBayesianGame::action_profiles() const {
  int64_t n = 1;
  for (const auto& a : action_names) n *= static_cast<int64_t>(a.size());
  return n;
}

int64_t FiniteBayesianGame::flat_type(const std::vector<int>& t) const {
  int64_t idx = 0;
  for (int i = 0; i < players; ++i)
    idx = idx * static_cast<int64_t>(type_names[i].size()) + t[i];
  return idx;
}

int64_t FiniteBayesianGame::flat_action(const std::vector<int>& a) const {
  int64_t idx = 0;
  for (int i = 0; i < players; ++i)
    idx = idx * static_cast<int64_t>(action_names[i].size()) + a[i];
  return idx;
}

FiniteBayesianGame induce_finite_game(const GameSpec& game,
                                      const std::vector<std::string>& base) {
  for (const auto& u : game.utilities)
    if (references_complexity(u))
      throw NotComputationallyCheap(
          "a utility references the complexity profile");
  if (game.mediator || game.repeated)
    throw NotComputationallyCheap(
        "the reduction applies to unmediated one-shot games");
  if (base.empty()) throw SchemaError("empty machine base");

  FiniteBayesianGame fg;
  fg.players = game.player_count;
  fg.type_names.resize(fg.players);
  fg.action_names.resize(fg.players);

  for (int i = 0; i < fg.players; ++i) {
    for (const auto& tp : game.type_space) {
      const std::string& t = tp.entries[i];
      if (std::find(fg.type_names[i].begin(), fg.type_names[i].end(), t) ==
          fg.type_names[i].end())
        fg.type_names[i].push_back(t);
    }
  }

  // Actions: distinct output behaviors of the base machines per type.
  for (int i = 0; i < fg.players; ++i) {
    for (const auto& t : fg.type_names[i]) {
      for (const auto& label : base) {
        const MachineProgram& prog = game.machine(label);
        RunResult r;
        try {
          r = run_machine(prog, t, "", game.budget);
        } catch (const TapeExhausted&) {
          throw SchemaError("base machine '" + label +
                            "' randomizes; the base must be deterministic");
        }
        if (std::find(fg.action_names[i].begin(), fg.action_names[i].end(),
                      r.output) == fg.action_names[i].end())
          fg.action_names[i].push_back(r.output);
      }
    }
  }

  // Prior over player-type profiles (nature folded in) and utility tables
  // u'_i(t, a) = E_nature[u_i | player types] with zero complexities.
  const int64_t tn = fg.type_profiles();
  const int64_t an = fg.action_profiles();
  if (tn * an > (int64_t{1} << 22)) throw SizeLimit("induced game too large");
  fg.prior.assign(tn, Rat(0));
  std::vector<std::vector<const TypeProfile*>> matching(tn);
  for (const auto& tp : game.type_space) {
    std::vector<int> idx(fg.players);
    for (int i = 0; i < fg.players; ++i) {
      auto it = std::find(fg.type_names[i].begin(), fg.type_names[i].end(),
                          tp.entries[i]);
      idx[i] = static_cast<int>(it - fg.type_names[i].begin());
    }
    int64_t flat = fg.flat_type(idx);
    fg.prior[flat] += tp.prob;
    matching[flat].push_back(&tp);
  }

  fg.utility.assign(fg.players, std::vector<Rat>(tn * an, Rat(0)));
  std::vector<int> tvec(fg.players, 0), avec(fg.players, 0);
  for (int64_t ft = 0; ft < tn; ++ft) {
    // Decode the flat type index.
    int64_t rem = ft;
    for (int i = fg.players - 1; i >= 0; --i) {
      tvec[i] = static_cast<int>(rem % fg.type_names[i].size());
      rem /= static_cast<int64_t>(fg.type_names[i].size());
    }
    if (fg.prior[ft] == 0) continue;
    for (int64_t fa = 0; fa < an; ++fa) {
      rem = fa;
      for (int i = fg.players - 1; i >= 0; --i) {
        avec[i] = static_cast<int>(rem % fg.action_names[i].size());
        rem /= static_cast<int64_t>(fg.action_names[i].size());
      }
      for (int i = 0; i < fg.players; ++i) {
        Rat acc = 0;
        for (const TypeProfile* tp : matching[ft]) {
          ExprEnv env;
          env.types.assign(tp->entries.begin(),
                           tp->entries.begin() + fg.players);
          env.nature_type = tp->entries[fg.players];
          for (int j = 0; j < fg.players; ++j)
            env.actions.push_back(fg.action_names[j][avec[j]]);
          env.payload_sent.assign(fg.players, 0);
          env.input_length = game.input_length;
          env.tables = &game.tables;
          env.complexities.assign(fg.players, Rat(0));
          env.complexity_valid.assign(fg.players, true);
          acc += tp->prob * eval_expr_rat(game.utilities[i], env);
        }
        fg.utility[i][ft * an + fa] = acc / fg.prior[ft];
      }
    }
  }
  return fg;
}

namespace {

// Expected payoff to (player, type, action) against the others' per-type
// mixed strategies, weighted by the prior restricted to the player's type.
Rat agent_payoff(const FiniteBayesianGame& fg,
                 const std::vector<std::vector<std::vector<Rat>>>& sigma,
                 int player, int type_idx, int action) {
  const int m = fg.players;
  const int64_t an = fg.action_profiles();
  Rat total = 0;
  std::vector<int> tvec(m, 0);
  std::function<void(int)> over_types = [&](int i) {
    if (i == m) {
      int64_t ft = fg.flat_type(tvec);
      Rat pr = fg.prior[ft];
      if (pr == 0) return;
      // Sum over the other players' actions.
      std::vector<int> avec(m, 0);
      std::function<void(int, Rat)> over_actions = [&](int j, Rat w) {
        if (w == 0) return;
        if (j == m) {
          total += pr * w * fg.utility[player][ft * an + fg.flat_action(avec)];
          return;
        }
        if (j == player) {
          avec[j] = action;
          over_actions(j + 1, w);
          return;
        }
        for (size_t a = 0; a < fg.action_names[j].size(); ++a) {
          avec[j] = static_cast<int>(a);
          over_actions(j + 1, w * sigma[j][tvec[j]][a]);
        }
      };
      over_actions(0, Rat(1));
      return;
    }
    if (i == player) {
      tvec[i] = type_idx;
      over_types(i + 1);
      return;
    }
    for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
      tvec[i] = static_cast<int>(t);
      over_types(i + 1);
    }
  };
  over_types(0);
  return total;
}

}  // namespace

Rat max_regret(const FiniteBayesianGame& fg, const MixedEquilibrium& mixed) {
  Rat worst = 0;
  for (int i = 0; i < fg.players; ++i) {
    Rat regret_i = 0;
    for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
      Rat current = 0;
      for (size_t a = 0; a < fg.action_names[i].size(); ++a)
        if (mixed.sigma[i][t][a] != 0)
          current += mixed.sigma[i][t][a] *
                     agent_payoff(fg, mixed.sigma, i, static_cast<int>(t),
                                  static_cast<int>(a));
      Rat best = current;
      for (size_t a = 0; a < fg.action_names[i].size(); ++a)
        best = std::max(best, agent_payoff(fg, mixed.sigma, i,
                                           static_cast<int>(t),
                                           static_cast<int>(a)));
      regret_i += best - current;
    }
    worst = std::max(worst, regret_i);
  }
  return worst;
}

namespace {

// Exact Gaussian elimination; returns false if inconsistent. Free variables
// are set to zero (the lexicographically-least basic solution for the fixed
// column order).
bool solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                  std::vector<Rat>* x) {
  const size_t rows = a.size();
  const size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<int> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    std::swap(b[sel], b[r]);
    Rat inv = a[r][c];
    for (size_t cc = c; cc < cols; ++cc) a[r][cc] /= inv;
    b[r] /= inv;
    for (size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rat f = a[rr][c];
      for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
      b[rr] -= f * b[r];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (size_t rr = r; rr < rows; ++rr)
    if (b[rr] != 0) return false;  // inconsistent
  x->assign(cols, Rat(0));
  for (size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) (*x)[c] = b[pivot_of_col[c]];
  return true;
}

struct SupportChoice {
  // For each (player, type): bitmask over that player's actions.
  std::vector<std::vector<uint32_t>> mask;
  int total_size = 0;
};

}  // namespace

MixedEquilibrium solve_support_enumeration(const FiniteBayesianGame& fg) {
  if (fg.players == 1) {
    MixedEquilibrium eq;
    eq.provenance = "argmax (single player)";
    eq.residual = 0;
    eq.sigma.resize(1);
    for (size_t t = 0; t < fg.type_names[0].size(); ++t) {
      std::vector<Rat> row(fg.action_names[0].size(), Rat(0));
      MixedEquilibrium probe;
      probe.sigma = {std::vector<std::vector<Rat>>(
          fg.type_names[0].size(),
          std::vector<Rat>(fg.action_names[0].size(), Rat(0)))};
      int best = 0;
      Rat best_val;
      for (size_t a = 0; a < fg.action_names[0].size(); ++a) {
        Rat v = agent_payoff(fg, probe.sigma, 0, static_cast<int>(t),
                             static_cast<int>(a));
        if (a == 0 || v > best_val) {
          best_val = v;
          best = static_cast<int>(a);
        }
      }
      row[best] = 1;
      eq.sigma[0].push_back(std::move(row));
    }
    return eq;
  }
  if (fg.players != 2)
    throw SizeLimit("exact support enumeration is limited to two players");

  // Enumerate joint supports by increasing total size, lexicographic within.
  struct Agent {
    int player;
    int type;
    int actions;
  };
  std::vector<Agent> agents;
  for (int i = 0; i < 2; ++i)
    for (size_t t = 0; t < fg.type_names[i].size(); ++t)
      agents.push_back({i, static_cast<int>(t),
                        static_cast<int>(fg.action_names[i].size())});

  std::vector<std::vector<uint32_t>> per_agent_masks(agents.size());
  int64_t combos = 1;
  for (size_t g = 0; g < agents.size(); ++g) {
    for (uint32_t m = 1; m < (1u << agents[g].actions); ++m)
      per_agent_masks[g].push_back(m);
    // Order masks by popcount then value for the size-then-lex exploration.
    std::stable_sort(per_agent_masks[g].begin(), per_agent_masks[g].end(),
                     [](uint32_t a, uint32_t b) {
                       int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
                       if (pa != pb) return pa < pb;
                       return a < b;
                     });
    combos *= static_cast<int64_t>(per_agent_masks[g].size());
    if (combos > (int64_t{1} << 24))
      throw SizeLimit("support enumeration space too large");
  }

  // All joint choices, sorted by total support size then lexicographic in
  // the per-agent mask order.
  std::vector<std::vector<size_t>> joint;
  std::vector<size_t> cur(agents.size(), 0);
  while (true) {
    joint.push_back(cur);
    size_t g = agents.size();
    while (g > 0) {
      --g;
      if (++cur[g] < per_agent_masks[g].size()) break;
      cur[g] = 0;
      if (g == 0) {
        g = SIZE_MAX;
        break;
      }
    }
    if (g == SIZE_MAX) break;
  }
  auto total_size = [&](const std::vector<size_t>& choice) {
    int s = 0;
    for (size_t g = 0; g < agents.size(); ++g)
      s += __builtin_popcount(per_agent_masks[g][choice[g]]);
    return s;
  };
  std::stable_sort(joint.begin(), joint.end(),
                   [&](const auto& a, const auto& b) {
                     return total_size(a) < total_size(b);
                   });

  const int64_t an = fg.action_profiles();
  (void)an;
  for (const auto& choice : joint) {
    // Build supports per (player,type).
    std::vector<std::vector<std::vector<int>>> support(2);
    for (int i = 0; i < 2; ++i)
      support[i].resize(fg.type_names[i].size());
    for (size_t g = 0; g < agents.size(); ++g) {
      uint32_t mask = per_agent_masks[g][choice[g]];
      for (int a = 0; a < agents[g].actions; ++a)
        if (mask & (1u << a))
          support[agents[g].player][agents[g].type].push_back(a);
    }

    // For player i, unknowns are the opponent's support probabilities plus
    // one value variable per own type; equal-payoff on support + simplex.
    auto solve_side = [&](int i,
                          std::vector<std::vector<Rat>>* opp_sigma) -> bool {
      const int j = 1 - i;
      std::vector<std::pair<int, int>> opp_vars;  // (type, action)
      for (size_t t = 0; t < fg.type_names[j].size(); ++t)
        for (int a : support[j][t]) opp_vars.emplace_back(static_cast<int>(t), a);
      const size_t vcount = opp_vars.size() + fg.type_names[i].size();
      std::vector<std::vector<Rat>> rows;
      std::vector<Rat> rhs;
      // Equal payoff within support: for each own type t and a in S_{i,t}:
      // sum_{opp var} coeff * x - V_t = 0, with V_t scaled by Pr(t_i).
      for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
        for (int a : support[i][t]) {
          std::vector<Rat> row(vcount, Rat(0));
          for (size_t v = 0; v < opp_vars.size(); ++v) {
            auto [ot, oa] = opp_vars[v];
            std::vector<int> tv(2), av(2);
            tv[i] = static_cast<int>(t);
            tv[j] = ot;
            av[i] = a;
            av[j] = oa;
            Rat pr = fg.prior[fg.flat_type(tv)];
            if (pr == 0) continue;
            row[v] += pr * fg.utility[i][fg.flat_type(tv) *
                                             fg.action_profiles() +
                                         fg.flat_action(av)];
          }
          row[opp_vars.size() + t] = -1;
          rows.push_back(std::move(row));
          rhs.push_back(Rat(0));
        }
      }
      // Simplex constraints for the opponent.
      for (size_t ot = 0; ot < fg.type_names[j].size(); ++ot) {
        std::vector<Rat> row(vcount, Rat(0));
        for (size_t v = 0; v < opp_vars.size(); ++v)
          if (opp_vars[v].first == static_cast<int>(ot)) row[v] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(Rat(1));
      }
      std::vector<Rat> x;
      if (!solve_linear(rows, rhs, &x)) return false;
      opp_sigma->assign(fg.type_names[j].size(),
                        std::vector<Rat>(fg.action_names[j].size(), Rat(0)));
      for (size_t v = 0; v < opp_vars.size(); ++v) {
        if (x[v] < 0) return false;
        (*opp_sigma)[opp_vars[v].first][opp_vars[v].second] = x[v];
      }
      return true;
    };

    MixedEquilibrium eq;
    eq.sigma.resize(2);
    if (!solve_side(0, &eq.sigma[1])) continue;
    if (!solve_side(1, &eq.sigma[0])) continue;
    if (max_regret(fg, eq) == 0) {
      eq.residual = 0;
      eq.provenance = "support enumeration, exact";
      return eq;
    }
  }
  throw NoEquilibriumInSupports(
      "no support pair satisfied the Nash inequalities (internal bug for "
      "valid finite games with rational equilibria)");
}

MixedEquilibrium epsilon_ne_regret(const FiniteBayesianGame& fg,
                                   const Rat& epsilon, int64_t iteration_cap) {
  if (epsilon <= 0) throw MgeError("epsilon_ne_regret needs epsilon > 0");
  MixedEquilibrium avg;
  avg.sigma.resize(fg.players);
  std::vector<std::vector<std::vector<int64_t>>> counts(fg.players);
  for (int i = 0; i < fg.players; ++i) {
    avg.sigma[i].assign(fg.type_names[i].size(),
                        std::vector<Rat>(fg.action_names[i].size(), Rat(0)));
    counts[i].assign(fg.type_names[i].size(),
                     std::vector<int64_t>(fg.action_names[i].size(), 0));
    for (auto& row : avg.sigma[i]) {
      Rat u = Rat(1, static_cast<int64_t>(row.size()));
      for (auto& v : row) v = u;
    }
  }

  Rat best_residual;
  bool have_best = false;
  MixedEquilibrium best = avg;
  for (int64_t it = 1; it <= iteration_cap; ++it) {
    // Simultaneous best responses against the current averages.
    std::vector<std::vector<int>> br(fg.players);
    for (int i = 0; i < fg.players; ++i) {
      br[i].resize(fg.type_names[i].size());
      for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
        int arg = 0;
        Rat val;
        for (size_t a = 0; a < fg.action_names[i].size(); ++a) {
          Rat v = agent_payoff(fg, avg.sigma, i, static_cast<int>(t),
                               static_cast<int>(a));
          if (a == 0 || v > val) {
            val = v;
            arg = static_cast<int>(a);
          }
        }
        br[i][t] = arg;
      }
    }
    for (int i = 0; i < fg.players; ++i)
      for (size_t t = 0; t < fg.type_names[i].size(); ++t) {
        ++counts[i][t][br[i][t]];
        for (size_t a = 0; a < fg.action_names[i].size(); ++a)
          avg.sigma[i][t][a] = Rat(counts[i][t][a], it);
      }
    Rat r = max_regret(fg, avg);
    if (!have_best || r < best_residual) {
      best_residual = r;
      best = avg;
      have_best = true;
    }
    if (r <= epsilon) {
      avg.residual = r;
      avg.provenance =
          "fictitious play, approximate (certified regret <= epsilon)";
      return avg;
    }
  }
  best.residual = best_residual;
  best.provenance = "fictitious play, approximate";
  throw IterationCapExceeded(
      "regret " + rat_to_string(best_residual) + " above epsilon " +
          rat_to_string(epsilon) + " after " + std::to_string(iteration_cap) +
          " iterations",
      best, best_residual);
}

MachineProgram lift_to_sampler_machine(const MixedEquilibrium& mixed,
                                       int player, int type_index,
                                       const FiniteBayesianGame& fg,
                                       const std::vector<MachineProgram>& base) {
  const std::vector<Rat>& dist = mixed.sigma.at(player - 1).at(type_index);
  const std::string& type_str = fg.type_names[player - 1][type_index];
  RunBudget budget;

  // Representative base machine per action: declaration-order first.
  const auto& actions = fg.action_names[player - 1];
  std::vector<int> rep(actions.size(), -1);
  for (size_t b = 0; b < base.size(); ++b) {
    RunResult r = run_machine(base[b], type_str, "", budget);
    for (size_t a = 0; a < actions.size(); ++a)
      if (actions[a] == r.output && rep[a] < 0) rep[a] = static_cast<int>(b);
  }
  for (size_t a = 0; a < actions.size(); ++a)
    if (dist[a] != 0 && rep[a] < 0)
      throw SchemaError("no base machine produces action '" + actions[a] +
                        "' at this type");

  // Cumulative thresholds scaled to the common denominator d.
  Int d = 1;
  for (const auto& p : dist) d = boost::multiprecision::lcm(d, denominator(p));
  std::vector<Int> bounds;  // s_k * d, k = 0..N
  bounds.push_back(0);
  Rat cum = 0;
  for (const auto& p : dist) {
    cum += p;
    Rat scaled = cum * Rat(d);
    bounds.push_back(numerator(scaled));
  }
  int block_bits = 0;
  while ((Int(1) << block_bits) < d) ++block_bits;

  MachineProgram prog;
  prog.label = "sampler_p" + std::to_string(player) + "_t" +
               std::to_string(type_index);
  prog.register_count = 1;

  // The decision tree reads one bit at a time; a node whose completion range
  // fits one action interval selects early, one inside the reject zone loops.
  struct Builder {
    MachineProgram& prog;
    const std::vector<Int>& bounds;
    const Int& d;
    int block_bits;
    std::vector<int>& action_entry;  // filled later with embed offsets
    std::vector<std::pair<size_t, int>> patch_select;  // (instr, action)
    std::vector<size_t> patch_reject;                  // jump to block start

    // Returns the action index covering [lo, hi) entirely, -2 for the reject
    // zone, -1 when unresolved.
    int classify(const Int& lo, const Int& hi) const {
      if (lo >= d) return -2;
      for (size_t k = 0; k + 1 < bounds.size(); ++k)
        if (bounds[k] <= lo && hi <= bounds[k + 1]) return static_cast<int>(k);
      return -1;
    }

    void node(Int value, int bits_read) {
      Int width = Int(1) << (block_bits - bits_read);
      Int lo = value * width, hi = (value + 1) * width;
      int cls = classify(lo, hi);
      if (cls == -2) {
        patch_reject.push_back(prog.instructions.size());
        prog.instructions.push_back(Instruction{Op::kJmp, 0, 0, 0, 0, ""});
        return;
      }
      if (cls >= 0) {
        patch_select.emplace_back(prog.instructions.size(), cls);
        prog.instructions.push_back(Instruction{Op::kJmp, 0, 0, 0, 0, ""});
        return;
      }
      prog.instructions.push_back(Instruction{Op::kReadRand, 0, 0, 0, 0, ""});
      size_t branch = prog.instructions.size();
      prog.instructions.push_back(Instruction{Op::kJeqI, 0, 0, 1, 0, ""});
      node(value * 2, bits_read + 1);        // bit 0
      prog.instructions[branch].target =
          static_cast<int>(prog.instructions.size());
      node(value * 2 + 1, bits_read + 1);    // bit 1
    }
  };

  std::vector<int> action_entry(actions.size(), -1);
  Builder builder{prog, bounds, d, block_bits, action_entry, {}, {}};
  int block_start = 0;
  builder.node(Int(0), 0);
  for (size_t idx : builder.patch_reject)
    prog.instructions[idx].target = block_start;

  // Embed each selected base machine once, preceded by its MARK handoff.
  std::map<int, int> entry_of_action;
  for (const auto& [instr, action] : builder.patch_select) {
    if (!entry_of_action.count(action)) {
      entry_of_action[action] = static_cast<int>(prog.instructions.size());
      const MachineProgram& bp = base[rep[action]];
      if (uses_ports(bp))
        throw SchemaError("base machines with message ports are not liftable");
      Instruction mark;
      mark.op = Op::kMark;
      mark.lit = bp.label;
      mark.imm = static_cast<int64_t>(bp.instructions.size());
      prog.instructions.push_back(mark);
      int offset = static_cast<int>(prog.instructions.size());
      for (Instruction ins : bp.instructions) {
        switch (ins.op) {
          case Op::kJmp:
          case Op::kJeq:
          case Op::kJne:
          case Op::kJlt:
          case Op::kJeqI:
          case Op::kJneI:
          case Op::kJltI:
          case Op::kJgeI:
            ins.target += offset;
            break;
          default:
            break;
        }
        prog.instructions.push_back(ins);
      }
      prog.instructions.push_back(Instruction{Op::kHalt, 0, 0, 0, 0, ""});
      prog.register_count = std::max(prog.register_count, bp.register_count);
    }
  }
  for (const auto& [instr, action] : builder.patch_select)
    prog.instructions[instr].target = entry_of_action[action];

  validate_program(prog);
  return prog;
}

}  // namespace mge

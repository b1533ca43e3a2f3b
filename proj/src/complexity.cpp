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

#include "mge/complexity.hpp"

#include <algorithm>
#include <functional>

#include "mge/vm.hpp"

namespace mge {

const char* complexity_kind_name(ComplexityKind k) {
  switch (k) {
    case ComplexityKind::kSteps: return "steps";
    case ComplexityKind::kSize: return "size";
    case ComplexityKind::kRandCharge: return "rand_charge";
    case ComplexityKind::kStateCharge: return "state_charge";
    case ComplexityKind::kWorstCasePlusSize: return "worst_case_plus_size";
    case ComplexityKind::kCoarseThreshold: return "coarse_threshold";
    case ComplexityKind::kWeightedSum: return "weighted_sum";
    case ComplexityKind::kConstantForProtocol: return "constant_for_protocol";
  }
  return "?";
}

ComplexityKind complexity_kind_from_name(const std::string& name) {
  for (ComplexityKind k :
       {ComplexityKind::kSteps, ComplexityKind::kSize,
        ComplexityKind::kRandCharge, ComplexityKind::kStateCharge,
        ComplexityKind::kWorstCasePlusSize, ComplexityKind::kCoarseThreshold,
        ComplexityKind::kWeightedSum, ComplexityKind::kConstantForProtocol})
    if (name == complexity_kind_name(k)) return k;
  throw InvalidSpec("unknown complexity kind '" + name + "'");
}

namespace {

int64_t eval_simple_kind(ComplexityKind kind, const ComplexityFnSpec& spec,
                         const RunMeter& meter) {
  switch (kind) {
    case ComplexityKind::kSteps:
      return meter.steps;
    case ComplexityKind::kSize:
      return meter.program_size;
    case ComplexityKind::kRandCharge:
      return spec.det_cost + (meter.rand_bits > 0 ? spec.rand_surcharge : 0);
    case ComplexityKind::kStateCharge:
      return meter.carried_state_bits > 0 ? spec.stateful_cost
                                          : spec.stateless_cost;
    case ComplexityKind::kCoarseThreshold:
      return meter.steps <= spec.threshold ? spec.free_band : spec.penalty_band;
    case ComplexityKind::kWeightedSum:
      return spec.w_steps * meter.steps + spec.w_size * meter.program_size +
             spec.w_rand * meter.rand_bits +
             spec.w_state * meter.carried_state_bits;
    default:
      throw InvalidSpec("kind not evaluable from a meter alone");
  }
}

}  // namespace

int64_t evaluate_complexity_meter(const ComplexityFnSpec& spec, bool is_bot,
                                  const std::string& label, const View& view,
                                  const RunMeter& meter,
                                  const std::optional<std::string>& nature) {
  (void)view;
  (void)nature;  // exposed for nature-dependent specs; none shipped
  if (is_bot) return 0;
  if (spec.free_randomization && meter.has_handoff) {
    // Charge only the selected base machine's portion of the run.
    RunMeter sub;
    sub.steps = meter.steps - meter.steps_at_handoff;
    sub.rand_bits = meter.rand_bits - meter.rand_at_handoff;
    sub.program_size = meter.handoff_size;
    sub.carried_state_bits = meter.carried_state_bits;
    sub.halted = meter.halted;
    ComplexityFnSpec base = spec;
    base.free_randomization = false;
    return evaluate_complexity_meter(base, false, meter.handoff_label, view,
                                     sub, nature);
  }
  switch (spec.kind) {
    case ComplexityKind::kConstantForProtocol:
      if (spec.protocol_labels.count(label)) return spec.c0;
      return eval_simple_kind(spec.fallback_kind, spec, meter);
    case ComplexityKind::kWorstCasePlusSize:
      throw InvalidSpec(
          "worst_case_plus_size must be evaluated through "
          "evaluate_complexity (it needs the program)");
    default:
      return eval_simple_kind(spec.kind, spec, meter);
  }
}

int64_t evaluate_complexity(const ComplexityFnSpec& spec,
                            const MachineProgram& program, const View& view,
                            const RunMeter& meter,
                            const std::optional<std::string>& nature) {
  if (is_bot(program)) return 0;
  if (spec.kind == ComplexityKind::kWorstCasePlusSize &&
      !(spec.free_randomization && meter.has_handoff)) {
    return worst_case_complexity(spec, program, spec.worst_case_input_length,
                                 spec.worst_case_budget);
  }
  return evaluate_complexity_meter(spec, false, program.label, view, meter,
                                   nature);
}

int64_t worst_case_complexity(const ComplexityFnSpec& spec,
                              const MachineProgram& program,
                              int64_t input_length, const RunBudget& budget,
                              int64_t exact_limit) {
  (void)spec;
  validate_program(program);
  budget.validate();
  if (is_bot(program)) return 0;
  if (uses_ports(program))
    throw InvalidSpec("worst-case complexity over interactive programs");
  if (exact_limit <= 0) exact_limit = 1 << 22;
  if (input_length < 0 || input_length > 24)
    throw ExactModeOverflow("input length too large for enumeration");

  int64_t leaves = 0;
  int64_t max_steps_seen = 0;
  // Adaptive tape forking: extend the tape one bit at a time only when the
  // run actually asks for it.
  std::function<void(const std::string&, const std::string&)> walk =
      [&](const std::string& type_input, const std::string& tape) {
        if (++leaves > exact_limit)
          throw ExactModeOverflow("worst-case enumeration exceeds limit");
        try {
          RunResult r = run_machine(program, type_input, tape, budget);
          max_steps_seen = std::max(max_steps_seen, r.meter.steps);
        } catch (const TapeExhausted&) {
          if (static_cast<int64_t>(tape.size()) >= budget.max_rand_bits)
            throw BudgetExceeded("machine not tape-bounded at this budget");
          walk(type_input, tape + "0");
          walk(type_input, tape + "1");
        }
      };
  for (int64_t mask = 0; mask < (int64_t{1} << input_length); ++mask) {
    std::string type_input;
    for (int64_t b = input_length - 1; b >= 0; --b)
      type_input.push_back((mask >> b) & 1 ? '1' : '0');
    walk(type_input, "");
  }
  return max_steps_seen + static_cast<int64_t>(program.instructions.size());
}

std::vector<BatteryItem> battery_runs(
    const std::vector<MachineProgram>& probes) {
  static const std::vector<std::string> kTypes = {"", "0", "1", "0101",
                                                  "1011", "1;01"};
  static const std::vector<std::string> kTapes = {"", "0", "1", "01010101",
                                                  "11110000"};
  RunBudget budget;
  std::vector<BatteryItem> items;
  for (const auto& probe : probes) {
    validate_program(probe);
    for (const auto& t : kTypes) {
      for (const auto& r : kTapes) {
        if (uses_ports(probe)) {
          // Drive the machine with one signed "0" delivery per stage.
          MachineSession s(probe, t, r, budget, 0);
          bool ok = true;
          for (int stage = 1; stage <= 8; ++stage) {
            try {
              auto st = s.resume(stage);
              while (st == SessionStatus::kSentMessage) st = s.resume(stage);
              if (st == SessionStatus::kHalted) break;
              s.deliver(DeliveredMessage{"0", 0, /*mediator_signed=*/true});
            } catch (const MgeError&) {
              ok = false;
              break;
            }
          }
          if (ok && s.status() == SessionStatus::kHalted)
            items.push_back(BatteryItem{&probe, s.view(), s.meter()});
        } else {
          try {
            RunResult res = run_machine(probe, t, r, budget);
            items.push_back(BatteryItem{&probe, res.view, res.meter});
          } catch (const MgeError&) {
            // Non-halting combination; the battery only keeps halting runs.
          }
        }
        if (is_bot(probe)) break;  // one view suffices, runs are identical
      }
      if (is_bot(probe)) break;
    }
  }
  return items;
}

ValidationReport validate_complexity_spec(
    const ComplexityFnSpec& spec, const std::vector<MachineProgram>& probes) {
  ValidationReport report;
  bool has_bot = false, has_nonbot = false;
  for (const auto& p : probes) (is_bot(p) ? has_bot : has_nonbot) = true;
  if (!has_bot || !has_nonbot)
    throw InvalidSpec("probe set must include bot and at least one non-bot");

  auto items = battery_runs(probes);
  for (const auto& item : items) {
    int64_t c;
    if (spec.kind == ComplexityKind::kWorstCasePlusSize &&
        uses_ports(*item.program))
      continue;  // worst-case enumeration is defined for closed runs only
    c = evaluate_complexity(spec, *item.program, item.view, item.meter,
                            std::nullopt);
    if (is_bot(*item.program)) {
      if (c != 0) {
        report.ok = false;
        report.notes.push_back("bot maps to " + std::to_string(c));
        return report;
      }
    } else if (c < 1) {
      report.ok = false;
      report.notes.push_back("non-bot machine '" + item.program->label +
                             "' maps to " + std::to_string(c));
      return report;
    }
  }
  report.ok = true;
  report.notes.push_back("bot-zero law holds on " +
                         std::to_string(items.size()) + " battery views");
  return report;
}

}  // namespace mge

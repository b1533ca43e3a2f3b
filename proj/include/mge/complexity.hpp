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

#ifndef MGE_COMPLEXITY_HPP_
#define MGE_COMPLEXITY_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mge/machine.hpp"

namespace mge {

struct InvalidSpec : MgeError {
  using MgeError::MgeError;
};
struct ExactModeOverflow : MgeError {
  using MgeError::MgeError;
};

// A complexity function maps (machine, view) to a natural number, zero
// exactly on the do-nothing machine. Kinds are declarative so game files can
// carry them and so the speedup partial order can be checked pointwise.
enum class ComplexityKind {
  kSteps,
  kSize,
  kRandCharge,          // det_cost, + rand_surcharge if any random bit read
  kStateCharge,         // stateless_cost / stateful_cost band (repeated games)
  kWorstCasePlusSize,   // max steps over same-length inputs and tapes, + size
  kCoarseThreshold,     // free band while steps <= threshold, else penalty band
  kWeightedSum,
  kConstantForProtocol, // c0 for designated labels, fallback kind otherwise
};

const char* complexity_kind_name(ComplexityKind k);
ComplexityKind complexity_kind_from_name(const std::string& name);

struct ComplexityFnSpec {
  ComplexityKind kind = ComplexityKind::kSteps;

  // rand_charge
  int64_t det_cost = 1;
  int64_t rand_surcharge = 1;
  // state_charge
  int64_t stateless_cost = 1;
  int64_t stateful_cost = 2;
  // coarse_threshold
  int64_t threshold = 2;
  int64_t free_band = 1;
  int64_t penalty_band = 2;
  // weighted_sum
  int64_t w_steps = 1;
  int64_t w_size = 0;
  int64_t w_rand = 0;
  int64_t w_state = 0;
  // constant_for_protocol
  int64_t c0 = 1;
  std::set<std::string> protocol_labels;
  ComplexityKind fallback_kind = ComplexityKind::kSteps;
  // worst_case_plus_size evaluation context
  int64_t worst_case_input_length = 0;
  RunBudget worst_case_budget;

  // When set, a lifted sampler (MARK handoff in the meter) is charged only
  // for the selected base machine's portion of the run.
  bool free_randomization = false;
};

// `nature_type` is exposed so complexity may depend on nature's type; none of
// the shipped kinds uses it.
int64_t evaluate_complexity(const ComplexityFnSpec& spec,
                            const MachineProgram& program, const View& view,
                            const RunMeter& meter,
                            const std::optional<std::string>& nature_type);

// Entry point for coalition controllers, which have no single program: the
// caller states bot-ness and supplies the merged meter/label directly.
int64_t evaluate_complexity_meter(const ComplexityFnSpec& spec, bool is_bot,
                                  const std::string& label, const View& view,
                                  const RunMeter& meter,
                                  const std::optional<std::string>& nature_type);

// Max over all 2^input_length type inputs and all tapes of steps, plus
// program size (the Appendix worst-case complexity). `exact_limit` bounds the
// enumeration (type count times tape leaves); 0 means the default limit.
int64_t worst_case_complexity(const ComplexityFnSpec& spec,
                              const MachineProgram& program,
                              int64_t input_length, const RunBudget& budget,
                              int64_t exact_limit = 0);

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> notes;
};

// Accepts iff the bot-zero law holds on the probes over a deterministic
// battery of views: bot maps to 0 everywhere, non-bot probes to >= 1.
ValidationReport validate_complexity_spec(
    const ComplexityFnSpec& spec, const std::vector<MachineProgram>& probes);

struct BatteryItem {
  const MachineProgram* program;
  View view;
  RunMeter meter;
};

// Deterministic battery of halting runs for the probe programs (used by
// validation and by the pointwise speedup check). Interactive programs are
// driven with one signed "0" delivery per stage.
std::vector<BatteryItem> battery_runs(const std::vector<MachineProgram>& probes);

// Pointwise p-speedup partial order: C'(M,v) <= C(M,v) <= p(C'(M,v)) on every
// battery item; p is supplied as a callable on int64.
template <typename PFn>
bool is_at_most_p_speedup(const ComplexityFnSpec& faster,
                          const ComplexityFnSpec& slower, PFn&& p,
                          const std::vector<BatteryItem>& items,
                          std::string* witness = nullptr) {
  for (const auto& item : items) {
    int64_t c_fast = evaluate_complexity(faster, *item.program, item.view,
                                         item.meter, std::nullopt);
    int64_t c_slow = evaluate_complexity(slower, *item.program, item.view,
                                         item.meter, std::nullopt);
    if (!(c_fast <= c_slow && c_slow <= p(c_fast))) {
      if (witness)
        *witness = "machine '" + item.program->label + "': C'=" +
                   std::to_string(c_fast) + " C=" + std::to_string(c_slow);
      return false;
    }
  }
  return true;
}

}  // namespace mge

#endif  // MGE_COMPLEXITY_HPP_

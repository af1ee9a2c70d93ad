#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtmwb/lts.hpp"
#include "rtmwb/machine.hpp"

namespace rtmwb {

/// Result of the static well-formedness check for stream-translation RTMs.
/// The input/execution partition is inferred from the rules: a state with an
/// in? rule is an input state, a state with an out! or tau rule is an
/// execution state, and rule-less states count as execution states.
struct OmegaFormResult {
  struct ClauseFailure {
    int clause;           // 1..5
    std::string witness;  // offending state or rule, rendered
  };
  std::vector<ClauseFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Clauses: 1 disjoint partition, 2 initial state is an input state,
/// 3 action/target discipline per class, 4 at most one rule per
/// (execution state, symbol), 5 exactly two input rules (in?0 and in?1)
/// per (input state, symbol).
OmegaFormResult check_rtm_omega_form(const Rtm &m);

/// Per-state check of the three i/o clauses on an explored graph. A witness,
/// when present, is a state violating the named clause. Horizon states are
/// unexpanded and exempt from the unambiguity/totality judgment.
struct IoClassification {
  std::optional<int> alternation, unambiguity, totality;
  bool pass() const { return !alternation && !unambiguity && !totality; }
};

IoClassification classify_io(const Lts &l);

/// Interactiveness on an explored window: after every input transition,
/// every path must produce an output. Fail carries a path into a cycle free
/// of out! actions; unknown means the horizon or the step bound was reached
/// before an output on some path.
struct InteractiveResult {
  enum class Value { Pass, Fail, Unknown };
  Value value = Value::Pass;
  std::vector<Transition> witness;  // on Fail: path from an input move into
                                    // and around the output-free cycle
  bool pass() const { return value == Value::Pass; }
};

InteractiveResult check_interactive(const Lts &l, int bound);

/// One finite-input run of a translator: the realized output prefix g(input)
/// plus how many input bits were consumed.
struct RunResult {
  enum class Status { Done, BudgetExhausted, Stuck, Nondeterminism };
  std::string output;
  int consumed = 0;
  Status status = Status::Done;
};

/// Deterministically step the machine, feeding `input` bits at input states
/// and collecting output bits (tau outputs are skipped). Stops when the
/// input is exhausted and an input state is re-reached (Done), or after
/// `step_budget` machine steps. RTMs must pass check_rtm_omega_form; ITMs
/// run input-active (no lambda inputs offered).
RunResult run_translation(const Rtm &m, const std::string &input,
                          int step_budget);
RunResult run_translation(const Itm &i, const std::string &input,
                          int step_budget);
RunResult run_translation(const Machine &m, const std::string &input,
                          int step_budget);

struct MonotoneResult {
  bool pass = true;
  std::optional<std::pair<std::string, std::string>> witness;  // (x, y)
};

/// Core monotonicity check over any realization of g: for all bit strings
/// x strictly below y in the prefix order with |y| <= max_len, g(x) must be
/// a prefix of g(y). `g` must throw or return a complete output.
MonotoneResult check_monotone_fn(
    const std::function<std::string(const std::string &)> &g, int max_len);

/// Machine wrapper; runs must complete (a non-Done status is an error).
MonotoneResult check_monotone_g(const Machine &m, int max_len,
                                int step_budget);

}  // namespace rtmwb

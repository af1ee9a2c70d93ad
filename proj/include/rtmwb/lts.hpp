#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtmwb {

/// An action label: either the internal action tau or a visible label.
/// Visible labels are nonempty, never "tau", and contain no whitespace or
/// double quotes.
class Action {
public:
  static Action tau() { return Action{}; }
  static Action visible(std::string label);

  bool is_tau() const { return label_.empty(); }
  /// Label of a visible action; empty string for tau.
  const std::string &label() const { return label_; }
  /// Printable form: the label, or "tau".
  std::string str() const { return is_tau() ? "tau" : label_; }

  /// Parse the printable form back (the string "tau" yields the tau action).
  static Action parse(const std::string &text);

  friend bool operator==(const Action &a, const Action &b) {
    return a.label_ == b.label_;
  }
  friend auto operator<=>(const Action &a, const Action &b) {
    return a.label_ <=> b.label_;  // tau (empty) sorts first
  }

private:
  Action() = default;
  std::string label_;  // empty = tau
};

struct Transition {
  int src = 0;
  Action act = Action::tau();
  int dst = 0;

  friend bool operator==(const Transition &, const Transition &) = default;
  friend auto operator<=>(const Transition &, const Transition &) = default;
};

/// A finite labelled transition system. States are dense integers 0..n-1;
/// transitions are kept as a sorted duplicate-free set. States in `horizon`
/// were discovered but not expanded by a bounded exploration.
struct Lts {
  int num_states = 0;
  int initial = 0;
  std::vector<Transition> transitions;  // sorted, unique
  std::set<int> horizon;

  void add_transition(int src, const Action &a, int dst);
  void validate() const;  // throws std::invalid_argument on broken invariants

  /// Outgoing transitions of `s` (requires sorted transitions).
  std::vector<Transition> out(int s) const;

  friend bool operator==(const Lts &, const Lts &) = default;
};

/// Renumber states in BFS discovery order from the initial state
/// (successors visited in transition order); unreachable states keep their
/// relative order after all reachable ones. Deterministic and idempotent.
Lts canonicalize(const Lts &l);

/// A lazily generated, possibly infinite transition system. Keys identify
/// configurations; `successors` must be a pure function returning a finite
/// list in a fixed order.
struct LazyLts {
  using Key = std::string;
  Key initial;
  std::function<std::vector<std::pair<Action, Key>>(const Key &)> successors;
};

/// Breadth-first window onto a LazyLts. States whose BFS depth equals
/// `depth` are not expanded and land in the horizon, as does everything
/// once `state_cap` distinct states exist. Identifiers are assigned in
/// first-discovery order starting at 0.
/// If `keys_out` is non-null it receives the configuration key per state id.
Lts explore(const LazyLts &lazy, int depth, int state_cap = 100000,
            std::vector<std::string> *keys_out = nullptr);

/// Parse error with 1-based line information.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string &msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Read an LTS in the Aldebaran-style text format:
///   des (I,T,S)
///   (src,"label",dst)      one line per transition, tau spelled "tau"
Lts read_lts(const std::string &text);

/// Serialize after canonical renumbering. Refuses systems with a nonempty
/// horizon (the truncation mark has no representation in the format).
std::string write_lts(const Lts &l);

}  // namespace rtmwb

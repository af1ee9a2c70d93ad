#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "rtmwb/lts.hpp"

namespace rtmwb {

/// Tape symbols are single printable characters; '_' is the blank.
using TapeSymbol = char;
inline constexpr TapeSymbol kBlank = '_';

/// A finite tape word with exactly one head-marked cell, kept in canonical
/// form: no leading or trailing blanks except the cell under the head.
struct TapeInstance {
  std::string cells = std::string(1, kBlank);
  int head = 0;

  static TapeInstance blank() { return {}; }

  TapeSymbol read() const { return cells[static_cast<size_t>(head)]; }

  /// Write `e` under the head and move the head (L, R or S), extending the
  /// tape by a blank when moving off either end, then trim to canonical form.
  void apply(TapeSymbol write, char move);

  void trim();

  friend bool operator==(const TapeInstance &, const TapeInstance &) = default;
  friend auto operator<=>(const TapeInstance &, const TapeInstance &) = default;
};

enum class Move : char { L = 'L', R = 'R', S = 'S' };
Move parse_move(char c);

struct RtmRule {
  std::string from;
  TapeSymbol read = kBlank;
  Action act = Action::tau();
  TapeSymbol write = kBlank;
  Move move = Move::R;
  std::string to;

  friend bool operator==(const RtmRule &, const RtmRule &) = default;
};

/// A reactive Turing machine. Rules are kept in declaration order; that
/// order fixes the successor order of the configuration graph.
struct Rtm {
  std::vector<std::string> states;  // declaration order, no duplicates
  std::vector<RtmRule> rules;
  std::string initial;
  bool allow_stay = false;

  void validate() const;
  /// Blank plus every symbol read or written by some rule.
  std::set<TapeSymbol> alphabet() const;

  friend bool operator==(const Rtm &, const Rtm &) = default;
};

/// Input/output port symbols of an ITM: '0', '1', or '-' for lambda
/// (nothing offered/produced this step).
using PortSymbol = char;
inline constexpr PortSymbol kLambda = '-';
inline const std::string kPortSymbols = "01-";

struct ItmStep {
  std::string next;
  TapeSymbol write = kBlank;
  Move move = Move::R;  // L or R only
  PortSymbol output = kLambda;

  friend bool operator==(const ItmStep &, const ItmStep &) = default;
};

/// A deterministic interactive Turing machine with a single work tape.
/// `delta` must be total on states x alphabet x {0,1,-}.
struct Itm {
  std::vector<std::string> states;
  std::string alphabet;  // includes the blank
  std::string initial;
  std::map<std::tuple<std::string, TapeSymbol, PortSymbol>, ItmStep> delta;

  void validate() const;  // totality check, reports the missing triple

  friend bool operator==(const Itm &, const Itm &) = default;
};

/// Validate a user-facing state name: nonempty, no whitespace, and none of
/// the reserved characters '@' and '%' used for generated state names.
void check_state_name(const std::string &name);

/// Configuration-graph semantics of an RTM: keys encode (state, tape);
/// successors are rule applications in rule-declaration order.
LazyLts rtm_semantics(const Rtm &m);

/// Same, but transitions that would leave the tape with more than
/// `cell_cap` cells are dropped; the reachable graph is then finite.
LazyLts rtm_semantics_bounded(const Rtm &m, int cell_cap);

/// Configuration-graph semantics of an ITM. Untagged configurations take
/// input steps (in?0, in?1, tau for lambda) into output-tagged ones; a
/// tagged configuration's sole step emits out!o (tau for lambda).
LazyLts itm_semantics(const Itm &i);

/// Human-readable configuration keys, also used by exploration.
std::string config_key(const std::string &control, const TapeInstance &tape);

using Machine = std::variant<Rtm, Itm>;

/// Parse a machine file (first line "rtm ..." or "itm").
Machine read_machine(const std::string &text);

std::string write_machine(const Rtm &m);
std::string write_machine(const Itm &i);
std::string write_machine(const Machine &m);

}  // namespace rtmwb

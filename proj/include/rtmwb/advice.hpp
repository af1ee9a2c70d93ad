#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rtmwb/lts.hpp"
#include "rtmwb/machine.hpp"

namespace rtmwb {

/// A total function on naturals, given either as a finite table or as one of
/// the builtin total functions (identity, double, successor). Table lookups
/// outside the domain throw std::out_of_range.
class AdviceFunction {
public:
  static AdviceFunction builtin(const std::string &name);
  static AdviceFunction table(std::map<std::uint64_t, std::uint64_t> entries);

  std::uint64_t apply(std::uint64_t n) const;

  bool is_builtin() const { return !name_.empty(); }
  const std::string &name() const { return name_; }
  const std::map<std::uint64_t, std::uint64_t> &entries() const {
    return table_;
  }

private:
  std::string name_;  // empty for table functions
  std::map<std::uint64_t, std::uint64_t> table_;
};

/// Advice spec file: either a single line `builtin <name>` or lines
/// `map <n> <f(n)>`.
AdviceFunction read_advice(const std::string &text);
std::string write_advice(const AdviceFunction &f);

/// The advice process A_f, cut off at s_cap: states s_0..s_cap and
/// t_0..t_max, transitions
///   s_i -in?1-> s_{i+1}   s_i -in?0-> t_{f(i)}
///   t_i -out!1-> t_{i-1}  t_0 -out!0-> s_0
/// with initial state s_0 and s_cap left unexpanded (horizon). Requires f
/// defined on 0..cap.
Lts advice_lts(const AdviceFunction &f, int cap);

/// The same process without a cutoff, for use in compositions. Keys are
/// "s:<i>" and "t:<j>".
LazyLts advice_process(const AdviceFunction &f);

/// Restricted parallel composition [M || A_f]_{in,out}: machine steps
/// labelled in!b / out?b synchronize with the matching advice step into a
/// single tau transition, unsynchronized channel actions are blocked, and
/// every other machine action interleaves freely. The advice never moves on
/// its own.
LazyLts compose_restrict(const Rtm &m, const AdviceFunction &f);

/// Unary codes over {0,1,#}: a natural n is n '1's followed by a '0';
/// a tuple is the unary arity followed by '#'-separated unary fields.
std::string encode_nat(std::uint64_t n);
std::uint64_t decode_nat(const std::string &text);
std::string encode_tuple(const std::vector<std::uint64_t> &xs);
std::vector<std::uint64_t> decode_tuple(const std::string &text);

struct Simulation {
  Rtm machine;
  AdviceFunction advice;
};

/// Machine-plus-advice simulating a finite LTS up to divergence-preserving
/// branching bisimilarity. The advice maps a state code to the code of that
/// state's transition menu; the machine writes the current state code in
/// unary, sends it over the in channel, receives the menu code, offers the
/// menu's actions as visible steps and loops with the chosen successor.
/// No tau cycle is introduced. `t` must have an empty horizon.
Simulation simulate_lts_bounded_branching(const Lts &t);

/// Machine-plus-advice simulating a finite LTS up to branching bisimilarity,
/// by the counter construction: the machine may keep incrementing a query
/// counter (a genuine tau cycle, so divergence is introduced) or commit and
/// ask the advice for the counter-th outgoing transition of the current
/// state. The counter wraps at `cap`; every state's branching degree must
/// be at most `cap`.
Simulation simulate_lts_countable(const Lts &t, int cap);

}  // namespace rtmwb

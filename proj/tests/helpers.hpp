#pragma once

// Shared test utilities: seeded generators for random systems and small
// graph helpers used by both the unit suites and the acceptance runner.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtmwb/lts.hpp"
#include "rtmwb/machine.hpp"

namespace testutil {

inline std::string read_fixture(const std::string &name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in)
    throw std::runtime_error("missing fixture: " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Random LTS over the given labels ("" meaning tau), every state reachable
/// is not guaranteed; duplicates collapse via add_transition.
inline rtmwb::Lts random_lts(std::mt19937 &rng, int max_states,
                             int max_transitions,
                             const std::vector<std::string> &labels) {
  rtmwb::Lts l;
  l.num_states = std::uniform_int_distribution<int>(1, max_states)(rng);
  l.initial = 0;
  int m = std::uniform_int_distribution<int>(0, max_transitions)(rng);
  std::uniform_int_distribution<int> state(0, l.num_states - 1);
  std::uniform_int_distribution<size_t> label(0, labels.size() - 1);
  for (int i = 0; i < m; ++i) {
    const std::string &lab = labels[label(rng)];
    l.add_transition(state(rng),
                     lab.empty() ? rtmwb::Action::tau()
                                 : rtmwb::Action::visible(lab),
                     state(rng));
  }
  l.validate();
  return l;
}

/// Equivalence-preserving perturbation: add a fresh state u carrying a copy
/// of some state's full transition menu plus a tau step s -> u. Because u
/// offers everything s offers, the new tau is inert, and no tau cycle is
/// created (u is fresh), so divergence-preserving branching bisimilarity is
/// untouched.
inline rtmwb::Lts tau_stutter(const rtmwb::Lts &l, std::mt19937 &rng) {
  rtmwb::Lts res = l;
  std::uniform_int_distribution<int> pick(0, l.num_states - 1);
  int s = pick(rng);
  int u = res.num_states++;
  for (const auto &t : l.out(s))
    res.add_transition(u, t.act, t.dst);
  res.add_transition(s, rtmwb::Action::tau(), u);
  res.validate();
  return res;
}

/// Equivalence-preserving perturbation: duplicate a non-initial state,
/// copying its outgoing transitions and splitting its incoming ones.
inline rtmwb::Lts split_state(const rtmwb::Lts &l, std::mt19937 &rng) {
  rtmwb::Lts res = l;
  if (l.num_states < 2)
    return res;
  std::uniform_int_distribution<int> pick(1, l.num_states - 1);
  int s = pick(rng);
  int copy = res.num_states++;
  for (const auto &t : l.transitions)
    if (t.src == s)
      res.add_transition(copy, t.act, t.dst);
  // Redirect every second incoming edge to the copy.
  bool flip = false;
  std::vector<rtmwb::Transition> incoming;
  for (const auto &t : l.transitions)
    if (t.dst == s && t.src != s)
      incoming.push_back(t);
  for (const auto &t : incoming) {
    if ((flip = !flip))
      continue;
    auto it = std::find(res.transitions.begin(), res.transitions.end(), t);
    res.transitions.erase(it);
    res.add_transition(t.src, t.act, copy);
  }
  res.validate();
  return res;
}

/// Random stream-translation RTM in input/execution discipline over the
/// alphabet {_, x}: every input state carries exactly one in?0 and one in?1
/// rule per symbol, every execution state exactly one tau/out! rule per
/// symbol, so the explored graph satisfies the three i/o clauses.
inline rtmwb::Rtm random_omega_rtm(std::mt19937 &rng) {
  using namespace rtmwb;
  int ni = std::uniform_int_distribution<int>(1, 3)(rng);
  int ne = std::uniform_int_distribution<int>(1, 3)(rng);
  Rtm m;
  for (int i = 0; i < ni; ++i)
    m.states.push_back("i" + std::to_string(i));
  for (int e = 0; e < ne; ++e)
    m.states.push_back("e" + std::to_string(e));
  m.initial = "i0";
  m.allow_stay = false;
  const std::string alpha = "_x";
  std::uniform_int_distribution<int> in_target(0, ni - 1);
  std::uniform_int_distribution<int> ex_target(0, ne - 1);
  std::uniform_int_distribution<int> sym(0, 1);
  std::uniform_int_distribution<int> mv(0, 1);
  std::uniform_int_distribution<int> outact(0, 2);
  auto move = [&] { return mv(rng) ? Move::L : Move::R; };
  for (int i = 0; i < ni; ++i)
    for (char d : alpha)
      for (const char *act : {"in?0", "in?1"})
        m.rules.push_back({"i" + std::to_string(i), d, Action::visible(act),
                           alpha[static_cast<size_t>(sym(rng))], move(),
                           "e" + std::to_string(ex_target(rng))});
  for (int e = 0; e < ne; ++e)
    for (char d : alpha) {
      int a = outact(rng);
      Action act = a == 0   ? Action::tau()
                   : a == 1 ? Action::visible("out!0")
                            : Action::visible("out!1");
      m.rules.push_back({"e" + std::to_string(e), d, act,
                         alpha[static_cast<size_t>(sym(rng))], move(),
                         "i" + std::to_string(in_target(rng))});
    }
  m.validate();
  return m;
}

inline bool has_tau_cycle(const rtmwb::Lts &l) {
  // Kahn-style elimination on the tau subgraph: nodes that survive all
  // "no outgoing tau edge to a survivor" removals lie on or reach a cycle.
  std::vector<std::vector<int>> out(static_cast<size_t>(l.num_states));
  for (const auto &t : l.transitions)
    if (t.act.is_tau())
      out[static_cast<size_t>(t.src)].push_back(t.dst);
  std::vector<char> alive(static_cast<size_t>(l.num_states), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < l.num_states; ++s) {
      if (!alive[static_cast<size_t>(s)])
        continue;
      bool keeps = false;
      for (int d : out[static_cast<size_t>(s)])
        if (alive[static_cast<size_t>(d)]) {
          keeps = true;
          break;
        }
      if (!keeps) {
        alive[static_cast<size_t>(s)] = 0;
        changed = true;
      }
    }
  }
  for (char a : alive)
    if (a)
      return true;
  return false;
}

/// Fully explore a finite lazy system (throws if the cap is hit).
inline rtmwb::Lts explore_all(const rtmwb::LazyLts &lazy,
                              int state_cap = 100000) {
  rtmwb::Lts l = rtmwb::explore(lazy, 1000000, state_cap);
  if (!l.horizon.empty())
    throw std::runtime_error("system not finite within the cap");
  return l;
}

}  // namespace testutil

#include "rtmwb/advice.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rtmwb {

AdviceFunction AdviceFunction::builtin(const std::string &name) {
  if (name != "identity" && name != "double" && name != "successor")
    throw std::invalid_argument("unknown builtin advice function: " + name);
  AdviceFunction f;
  f.name_ = name;
  return f;
}

AdviceFunction
AdviceFunction::table(std::map<std::uint64_t, std::uint64_t> entries) {
  AdviceFunction f;
  f.table_ = std::move(entries);
  return f;
}

std::uint64_t AdviceFunction::apply(std::uint64_t n) const {
  if (name_ == "identity")
    return n;
  if (name_ == "double")
    return 2 * n;
  if (name_ == "successor")
    return n + 1;
  auto it = table_.find(n);
  if (it == table_.end())
    throw std::out_of_range("advice function undefined at " +
                            std::to_string(n));
  return it->second;
}

AdviceFunction read_advice(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::uint64_t, std::uint64_t> entries;
  bool any_map = false;
  for (; std::getline(in, line); ) {
    ++lineno;
    if (line.empty())
      continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "builtin") {
      std::string name, extra;
      if (!(fields >> name) || fields >> extra || any_map)
        throw ParseError(lineno, "malformed builtin line");
      try {
        return AdviceFunction::builtin(name);
      } catch (const std::invalid_argument &e) {
        throw ParseError(lineno, e.what());
      }
    }
    if (head != "map")
      throw ParseError(lineno, "expected `map <n> <f(n)>` or `builtin <name>`");
    std::uint64_t n, v;
    std::string extra;
    if (!(fields >> n >> v) || fields >> extra)
      throw ParseError(lineno, "malformed map line");
    if (!entries.emplace(n, v).second)
      throw ParseError(lineno, "duplicate map entry for " + std::to_string(n));
    any_map = true;
  }
  if (!any_map)
    throw ParseError(lineno, "empty advice spec");
  return AdviceFunction::table(std::move(entries));
}

std::string write_advice(const AdviceFunction &f) {
  std::ostringstream out;
  if (f.is_builtin()) {
    out << "builtin " << f.name() << "\n";
  } else {
    for (const auto &[n, v] : f.entries())
      out << "map " << n << " " << v << "\n";
  }
  return out.str();
}

Lts advice_lts(const AdviceFunction &f, int cap) {
  if (cap < 1)
    throw std::invalid_argument("cap must be positive");
  for (int i = 0; i <= cap; ++i)
    f.apply(static_cast<std::uint64_t>(i));  // precondition: defined on 0..cap
  std::uint64_t tmax = 0;
  for (int i = 0; i < cap; ++i)
    tmax = std::max(tmax, f.apply(static_cast<std::uint64_t>(i)));

  Lts l;
  // s_i is state i for 0 <= i <= cap; t_j is state cap+1+j for 0 <= j <= tmax.
  l.num_states = cap + 1 + static_cast<int>(tmax) + 1;
  l.initial = 0;
  auto t_id = [cap](std::uint64_t j) { return cap + 1 + static_cast<int>(j); };
  for (int i = 0; i < cap; ++i) {
    l.add_transition(i, Action::visible("in?1"), i + 1);
    l.add_transition(i, Action::visible("in?0"),
                     t_id(f.apply(static_cast<std::uint64_t>(i))));
  }
  for (std::uint64_t j = 1; j <= tmax; ++j)
    l.add_transition(t_id(j), Action::visible("out!1"), t_id(j - 1));
  l.add_transition(t_id(0), Action::visible("out!0"), 0);
  l.horizon.insert(cap);  // s_cap is left unexpanded
  l.validate();
  return l;
}

LazyLts advice_process(const AdviceFunction &f) {
  LazyLts lazy;
  lazy.initial = "s:0";
  lazy.successors = [f](const LazyLts::Key &key) {
    std::uint64_t n = std::stoull(key.substr(2));
    std::vector<std::pair<Action, LazyLts::Key>> succ;
    if (key[0] == 's') {
      succ.emplace_back(Action::visible("in?1"),
                        "s:" + std::to_string(n + 1));
      succ.emplace_back(Action::visible("in?0"),
                        "t:" + std::to_string(f.apply(n)));
    } else if (n > 0) {
      succ.emplace_back(Action::visible("out!1"),
                        "t:" + std::to_string(n - 1));
    } else {
      succ.emplace_back(Action::visible("out!0"), "s:0");
    }
    return succ;
  };
  return lazy;
}

LazyLts compose_restrict(const Rtm &m, const AdviceFunction &f) {
  LazyLts machine = rtm_semantics(m);
  LazyLts advice = advice_process(f);
  LazyLts prod;
  // The advice key ("s:<i>" / "t:<j>") contains no spaces, so the first
  // " || " separates the components unambiguously.
  prod.initial = advice.initial + " || " + machine.initial;
  prod.successors = [machine, advice](const LazyLts::Key &key) {
    size_t sep = key.find(" || ");
    LazyLts::Key akey = key.substr(0, sep);
    LazyLts::Key mkey = key.substr(sep + 4);
    auto asucc = advice.successors(akey);
    auto pick = [&](const std::string &label) -> const LazyLts::Key * {
      for (const auto &[act, next] : asucc)
        if (act.label() == label)
          return &next;
      return nullptr;
    };
    std::vector<std::pair<Action, LazyLts::Key>> succ;
    for (const auto &[act, mnext] : machine.successors(mkey)) {
      const std::string &l = act.label();
      if (l == "in!0" || l == "in!1" || l == "out?0" || l == "out?1") {
        // Channel action: synchronize into tau, or block.
        std::string partner = (l[0] == 'i' ? "in?" : "out!") + l.substr(l.size() - 1);
        if (const LazyLts::Key *anext = pick(partner))
          succ.emplace_back(Action::tau(), *anext + " || " + mnext);
      } else {
        succ.emplace_back(act, akey + " || " + mnext);
      }
    }
    return succ;
  };
  return prod;
}

std::string encode_nat(std::uint64_t n) {
  return std::string(n, '1') + "0";
}

std::uint64_t decode_nat(const std::string &text) {
  size_t ones = text.find_first_not_of('1');
  if (ones == std::string::npos || ones + 1 != text.size() ||
      text[ones] != '0')
    throw std::invalid_argument("not a unary natural: " + text);
  return ones;
}

std::string encode_tuple(const std::vector<std::uint64_t> &xs) {
  std::string s = encode_nat(xs.size());
  for (std::uint64_t x : xs)
    s += "#" + encode_nat(x);
  return s;
}

std::vector<std::uint64_t> decode_tuple(const std::string &text) {
  size_t pos = text.find('#');
  std::uint64_t arity = decode_nat(text.substr(0, pos == std::string::npos
                                                      ? text.size()
                                                      : pos));
  std::vector<std::uint64_t> xs;
  while (pos != std::string::npos) {
    size_t next = text.find('#', pos + 1);
    xs.push_back(decode_nat(text.substr(
        pos + 1, (next == std::string::npos ? text.size() : next) - pos - 1)));
    pos = next;
  }
  if (xs.size() != arity)
    throw std::invalid_argument("tuple arity mismatch in: " + text);
  return xs;
}

namespace {

/// Outgoing transition menus, one per state, in the transition sort order.
std::vector<std::vector<Transition>> state_menus(const Lts &t) {
  std::vector<std::vector<Transition>> menus(
      static_cast<size_t>(t.num_states));
  for (int s = 0; s < t.num_states; ++s)
    menus[static_cast<size_t>(s)] = t.out(s);
  return menus;
}

void require_simulable(const Lts &t) {
  t.validate();
  if (!t.horizon.empty())
    throw std::invalid_argument(
        "cannot build a simulation from a truncated system");
}

}  // namespace

Simulation simulate_lts_bounded_branching(const Lts &t) {
  require_simulable(t);
  auto menus = state_menus(t);

  // Assign a dense code to every distinct menu, in state order; the advice
  // maps a state's number to its menu code, everything else is compiled
  // into the control states.
  std::map<std::vector<Transition>, int> code_of;
  std::vector<int> menu_code(menus.size(), 0);
  std::vector<const std::vector<Transition> *> menu_of_code;
  for (size_t s = 0; s < menus.size(); ++s) {
    // Menus are compared up to their (action, target) content.
    std::vector<Transition> shape = menus[s];
    for (auto &tr : shape)
      tr.src = 0;
    auto [it, fresh] =
        code_of.emplace(shape, static_cast<int>(menu_of_code.size()));
    if (fresh)
      menu_of_code.push_back(&menus[s]);
    menu_code[s] = it->second;
  }
  int ncodes = static_cast<int>(menu_of_code.size());

  Rtm m;
  m.allow_stay = true;
  auto add_state = [&m](std::string name) {
    m.states.push_back(name);
    return name;
  };
  const TapeSymbol one = '1';
  const Action tau = Action::tau();

  // Writer chain for the initial state code, then shared rewind/send states.
  int s0 = t.initial;
  for (int k = 0; k < s0; ++k)
    add_state("init." + std::to_string(k));
  std::string rewstep = add_state("rewstep");
  std::string rew = add_state("rew");
  std::string send = add_state("send");
  m.initial = s0 > 0 ? "init.0" : rewstep;
  for (int k = 0; k < s0; ++k)
    m.rules.push_back({"init." + std::to_string(k), kBlank, tau, one, Move::R,
                       k + 1 < s0 ? "init." + std::to_string(k + 1)
                                  : rewstep});
  // Step back onto the written word (if any), rewind to its left end, then
  // send it bit by bit, erasing as we go; the terminating blank becomes the
  // closing in!0.
  m.rules.push_back({rewstep, kBlank, tau, kBlank, Move::L, rew});
  m.rules.push_back({rew, one, tau, one, Move::L, rew});
  m.rules.push_back({rew, kBlank, tau, kBlank, Move::R, send});
  m.rules.push_back({send, one, Action::visible("in!1"), kBlank, Move::R,
                     send});
  m.rules.push_back({send, kBlank, Action::visible("in!0"), kBlank, Move::S,
                     "recv.0"});

  // Count the menu-code reply in the control state, then offer the decoded
  // menu: each entry's action leads to a writer chain for the successor's
  // state code.
  for (int j = 0; j < ncodes; ++j)
    add_state("recv." + std::to_string(j));
  for (int j = 0; j < ncodes; ++j)
    add_state("next." + std::to_string(j));
  for (int j = 0; j < ncodes; ++j) {
    std::string recv = "recv." + std::to_string(j);
    if (j + 1 < ncodes)
      m.rules.push_back({recv, kBlank, Action::visible("out?1"), kBlank,
                         Move::S, "recv." + std::to_string(j + 1)});
    m.rules.push_back({recv, kBlank, Action::visible("out?0"), kBlank,
                       Move::S, "next." + std::to_string(j)});
    const auto &menu = *menu_of_code[static_cast<size_t>(j)];
    for (size_t i = 0; i < menu.size(); ++i) {
      int target = menu[i].dst;
      std::string chain = "ch." + std::to_string(j) + "." + std::to_string(i);
      for (int k = 0; k < target; ++k)
        add_state(chain + "." + std::to_string(k));
      m.rules.push_back({"next." + std::to_string(j), kBlank, menu[i].act,
                         kBlank, Move::S,
                         target > 0 ? chain + ".0" : rewstep});
      for (int k = 0; k < target; ++k)
        m.rules.push_back({chain + "." + std::to_string(k), kBlank, tau, one,
                           Move::R,
                           k + 1 < target ? chain + "." + std::to_string(k + 1)
                                          : rewstep});
    }
  }
  m.validate();

  std::map<std::uint64_t, std::uint64_t> table;
  for (int s = 0; s < t.num_states; ++s)
    table[static_cast<std::uint64_t>(s)] =
        static_cast<std::uint64_t>(menu_code[static_cast<size_t>(s)]);
  return {std::move(m), AdviceFunction::table(std::move(table))};
}

Simulation simulate_lts_countable(const Lts &t, int cap) {
  require_simulable(t);
  if (cap < 1)
    throw std::invalid_argument("cap must be positive");
  auto menus = state_menus(t);
  for (const auto &menu : menus)
    if (static_cast<int>(menu.size()) > cap)
      throw std::invalid_argument(
          "branching degree exceeds cap; raise cap to at least " +
          std::to_string(menu.size()));

  // Global enumeration of the distinct (action, target) pairs of t; the
  // advice replies with an index into this list. This realizes the encoding
  // order <_T on transitions.
  std::set<std::pair<Action, int>> pair_set;
  for (const auto &tr : t.transitions)
    pair_set.insert({tr.act, tr.dst});
  std::vector<std::pair<Action, int>> pairs(pair_set.begin(), pair_set.end());
  auto pair_index = [&pairs](const Action &a, int dst) {
    return static_cast<int>(
        std::lower_bound(pairs.begin(), pairs.end(),
                         std::pair<Action, int>{a, dst}) -
        pairs.begin());
  };

  Rtm m;
  m.allow_stay = true;
  const Action tau = Action::tau();
  auto adv = [](int s, int i) {
    return "adv." + std::to_string(s) + "." + std::to_string(i);
  };
  // Everything lives in the control states; the tape is never written. Each
  // adv.s.i state can keep incrementing its counter (wrapping at cap: the
  // introduced tau cycle) or, when s has successors, commit to querying the
  // advice with the code of (s, i).
  for (int s = 0; s < t.num_states; ++s)
    for (int i = 1; i <= cap; ++i)
      m.states.push_back(adv(s, i));
  m.initial = adv(t.initial, 1);
  std::map<std::uint64_t, std::uint64_t> table;
  for (int s = 0; s < t.num_states; ++s) {
    int outdeg = static_cast<int>(menus[static_cast<size_t>(s)].size());
    for (int i = 1; i <= cap; ++i)
      m.rules.push_back({adv(s, i), kBlank, tau, kBlank, Move::S,
                         adv(s, i < cap ? i + 1 : 1)});
    if (outdeg == 0)
      continue;
    for (int i = 1; i <= cap; ++i) {
      // Send q = s*(cap+1)+i in unary over the in channel, via a fixed
      // burst of control states.
      int q = s * (cap + 1) + i;
      std::string burst = "qs." + std::to_string(s) + "." + std::to_string(i);
      for (int k = 1; k <= q; ++k)
        m.states.push_back(burst + "." + std::to_string(k));
      m.rules.push_back({adv(s, i), kBlank, Action::visible("in!1"), kBlank,
                         Move::S, burst + ".1"});
      for (int k = 1; k < q; ++k)
        m.rules.push_back({burst + "." + std::to_string(k), kBlank,
                           Action::visible("in!1"), kBlank, Move::S,
                           burst + "." + std::to_string(k + 1)});
      m.rules.push_back({burst + "." + std::to_string(q), kBlank,
                         Action::visible("in!0"), kBlank, Move::S,
                         "rc." + std::to_string(s) + ".0"});
      const auto &menu = menus[static_cast<size_t>(s)];
      const Transition &entry =
          menu[static_cast<size_t>((i - 1) % outdeg)];
      table[static_cast<std::uint64_t>(q)] =
          static_cast<std::uint64_t>(pair_index(entry.act, entry.dst));
    }
    // Count the reply index in the control, then either retry (tau back to
    // the counter) or perform the decoded action and move on.
    for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
      std::string rc = "rc." + std::to_string(s) + "." + std::to_string(c);
      std::string nx = "nx." + std::to_string(s) + "." + std::to_string(c);
      m.states.push_back(rc);
      m.states.push_back(nx);
      if (c + 1 < static_cast<int>(pairs.size()))
        m.rules.push_back({rc, kBlank, Action::visible("out?1"), kBlank,
                           Move::S,
                           "rc." + std::to_string(s) + "." +
                               std::to_string(c + 1)});
      m.rules.push_back({rc, kBlank, Action::visible("out?0"), kBlank,
                         Move::S, nx});
      m.rules.push_back({nx, kBlank, tau, kBlank, Move::S, adv(s, 1)});
      m.rules.push_back({nx, kBlank, pairs[static_cast<size_t>(c)].first,
                         kBlank, Move::S,
                         adv(pairs[static_cast<size_t>(c)].second, 1)});
    }
  }
  m.validate();
  // The advice process evaluates f eagerly at every counter state it passes
  // through, so fill the query codes the machine never commits to (including
  // 0) with a harmless default.
  std::uint64_t top = table.empty() ? 0 : table.rbegin()->first;
  for (std::uint64_t q = 0; q <= top; ++q)
    table.emplace(q, 0);
  return {std::move(m), AdviceFunction::table(std::move(table))};
}

}  // namespace rtmwb

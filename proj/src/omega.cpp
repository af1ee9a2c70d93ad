#include "rtmwb/omega.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <variant>

namespace rtmwb {

namespace {

enum class LabelKind { Input, Output, Tau, Other };

LabelKind label_kind(const Action &a) {
  if (a.is_tau())
    return LabelKind::Tau;
  const std::string &l = a.label();
  if (l == "in?0" || l == "in?1")
    return LabelKind::Input;
  if (l == "out!0" || l == "out!1")
    return LabelKind::Output;
  return LabelKind::Other;
}

std::string render_rule(const RtmRule &r) {
  return r.from + " -" + r.act.str() + "[" + std::string(1, r.read) + "/" +
         std::string(1, r.write) + "]" + static_cast<char>(r.move) + "-> " +
         r.to;
}

/// Input states are those with an in? rule; everything else (including
/// rule-less states) counts as an execution state.
std::set<std::string> input_states(const Rtm &m) {
  std::set<std::string> in;
  for (const auto &r : m.rules)
    if (label_kind(r.act) == LabelKind::Input)
      in.insert(r.from);
  return in;
}

}  // namespace

OmegaFormResult check_rtm_omega_form(const Rtm &m) {
  m.validate();
  OmegaFormResult res;
  auto fail = [&res](int clause, std::string witness) {
    res.failures.push_back({clause, std::move(witness)});
  };

  std::set<std::string> in = input_states(m);
  std::set<std::string> overlap;
  for (const auto &r : m.rules)
    if (label_kind(r.act) != LabelKind::Input && in.count(r.from))
      overlap.insert(r.from);
  for (const auto &s : overlap)
    fail(1, s);
  auto is_input = [&](const std::string &s) {
    return in.count(s) && !overlap.count(s);
  };

  if (!is_input(m.initial))
    fail(2, m.initial);

  for (const auto &r : m.rules) {
    switch (label_kind(r.act)) {
    case LabelKind::Other:
      fail(3, render_rule(r));
      break;
    case LabelKind::Input:
      if (is_input(r.to))
        fail(3, render_rule(r));
      break;
    case LabelKind::Output:
    case LabelKind::Tau:
      if (!overlap.count(r.from) && !is_input(r.to))
        fail(3, render_rule(r));
      break;
    }
  }

  std::map<std::pair<std::string, TapeSymbol>, int> exec_count;
  std::map<std::pair<std::string, TapeSymbol>, std::pair<int, int>> in_count;
  for (const auto &r : m.rules) {
    if (is_input(r.from)) {
      auto &[zeros, ones] = in_count[{r.from, r.read}];
      (r.act.label() == "in?0" ? zeros : ones)++;
    } else {
      exec_count[{r.from, r.read}]++;
    }
  }
  for (const auto &[key, count] : exec_count)
    if (count > 1)
      fail(4, key.first + " on " + std::string(1, key.second));
  std::set<TapeSymbol> alpha = m.alphabet();
  for (const auto &s : m.states) {
    if (!is_input(s))
      continue;
    for (TapeSymbol d : alpha) {
      auto it = in_count.find({s, d});
      auto [zeros, ones] =
          it == in_count.end() ? std::pair<int, int>{0, 0} : it->second;
      if (zeros != 1 || ones != 1)
        fail(5, s + " on " + std::string(1, d));
    }
  }
  return res;
}

namespace {

enum class IoClass { Input, Exec, None };

/// Classify explored states: by outgoing labels where possible, by incoming
/// labels for states without successors (an in? edge can only enter an
/// execution state, an out!/tau edge only an input state). States with
/// mixed outgoing labels classify as Input so the alternation check reports
/// them.
std::vector<IoClass> classify_states(const Lts &l) {
  std::vector<IoClass> cls(static_cast<size_t>(l.num_states), IoClass::None);
  for (const auto &t : l.transitions) {
    auto k = label_kind(t.act);
    auto &c = cls[static_cast<size_t>(t.src)];
    if (k == LabelKind::Input)
      c = IoClass::Input;
    else if (c == IoClass::None)
      c = IoClass::Exec;
  }
  for (const auto &t : l.transitions) {
    auto &c = cls[static_cast<size_t>(t.dst)];
    if (c == IoClass::None)
      c = label_kind(t.act) == LabelKind::Input ? IoClass::Exec
                                                : IoClass::Input;
  }
  return cls;
}

}  // namespace

IoClassification classify_io(const Lts &l) {
  l.validate();
  IoClassification res;
  auto cls = classify_states(l);

  for (const auto &t : l.transitions) {
    auto k = label_kind(t.act);
    bool ok;
    if (cls[static_cast<size_t>(t.src)] == IoClass::Input)
      ok = k == LabelKind::Input &&
           cls[static_cast<size_t>(t.dst)] != IoClass::Input;
    else
      ok = (k == LabelKind::Output || k == LabelKind::Tau) &&
           cls[static_cast<size_t>(t.dst)] != IoClass::Exec;
    if (!ok && !res.alternation) {
      res.alternation = t.src;
      break;
    }
  }

  for (int s = 0; s < l.num_states; ++s) {
    if (l.horizon.count(s))
      continue;
    auto edges = l.out(s);
    if (cls[static_cast<size_t>(s)] == IoClass::Exec) {
      if (edges.size() != 1 && !res.unambiguity)
        res.unambiguity = s;
    } else if (cls[static_cast<size_t>(s)] == IoClass::Input) {
      bool total = edges.size() == 2 &&
                   ((edges[0].act.label() == "in?0" &&
                     edges[1].act.label() == "in?1") ||
                    (edges[0].act.label() == "in?1" &&
                     edges[1].act.label() == "in?0"));
      if (!total && !res.totality)
        res.totality = s;
    }
  }
  return res;
}

InteractiveResult check_interactive(const Lts &l, int bound) {
  l.validate();
  if (bound <= 0)
    throw std::invalid_argument("bound must be positive");
  auto io = classify_io(l);
  if (io.alternation)
    throw std::invalid_argument(
        "alternation fails on the explored region (state " +
        std::to_string(*io.alternation) + ")");

  // Search the output-free subgraph (in? and tau edges only) from the target
  // of every input transition.
  std::vector<std::vector<Transition>> out(static_cast<size_t>(l.num_states));
  for (const auto &t : l.transitions)
    if (label_kind(t.act) != LabelKind::Output)
      out[static_cast<size_t>(t.src)].push_back(t);

  InteractiveResult res;
  bool unknown = false;
  for (const auto &start : l.transitions) {
    if (label_kind(start.act) != LabelKind::Input)
      continue;
    // Depth-limited DFS keeping the current path for witness extraction.
    std::vector<char> on_path(static_cast<size_t>(l.num_states), 0);
    std::vector<Transition> path;
    std::vector<std::pair<int, size_t>> stack{{start.dst, 0}};
    on_path[static_cast<size_t>(start.dst)] = 1;
    if (l.horizon.count(start.dst))
      unknown = true;
    while (!stack.empty()) {
      auto [node, idx] = stack.back();
      const auto &edges = out[static_cast<size_t>(node)];
      if (static_cast<int>(path.size()) >= bound) {
        unknown = true;
        idx = edges.size();  // do not descend further
      }
      if (idx == edges.size()) {
        on_path[static_cast<size_t>(node)] = 0;
        stack.pop_back();
        if (!path.empty())
          path.pop_back();
        continue;
      }
      stack.back().second = idx + 1;
      const Transition &t = edges[idx];
      if (on_path[static_cast<size_t>(t.dst)]) {
        res.value = InteractiveResult::Value::Fail;
        res.witness.push_back(start);
        res.witness.insert(res.witness.end(), path.begin(), path.end());
        res.witness.push_back(t);
        return res;
      }
      if (l.horizon.count(t.dst))
        unknown = true;
      on_path[static_cast<size_t>(t.dst)] = 1;
      path.push_back(t);
      stack.push_back({t.dst, 0});
    }
  }
  res.value = unknown ? InteractiveResult::Value::Unknown
                      : InteractiveResult::Value::Pass;
  return res;
}

RunResult run_translation(const Rtm &m, const std::string &input,
                          int step_budget) {
  if (!check_rtm_omega_form(m).pass())
    throw std::invalid_argument("machine is not in stream-translation form");
  for (char c : input)
    if (c != '0' && c != '1')
      throw std::invalid_argument("input must be a string over {0,1}");
  std::set<std::string> in = input_states(m);

  RunResult res;
  std::string control = m.initial;
  TapeInstance tape;
  int steps = 0;
  for (;;) {
    bool at_input = in.count(control) != 0;
    if (at_input && res.consumed == static_cast<int>(input.size()))
      return res;  // Done
    if (steps == step_budget) {
      res.status = RunResult::Status::BudgetExhausted;
      return res;
    }
    std::vector<const RtmRule *> matching;
    for (const auto &r : m.rules) {
      if (r.from != control || r.read != tape.read())
        continue;
      if (at_input) {
        if (r.act.label() == std::string("in?") + input[res.consumed])
          matching.push_back(&r);
      } else {
        matching.push_back(&r);
      }
    }
    if (matching.empty()) {
      res.status = RunResult::Status::Stuck;
      return res;
    }
    if (matching.size() > 1) {
      res.status = RunResult::Status::Nondeterminism;
      return res;
    }
    const RtmRule &r = *matching.front();
    tape.apply(r.write, static_cast<char>(r.move));
    control = r.to;
    ++steps;
    if (at_input)
      ++res.consumed;
    else if (label_kind(r.act) == LabelKind::Output)
      res.output += r.act.label().back();
  }
}

RunResult run_translation(const Itm &i, const std::string &input,
                          int step_budget) {
  i.validate();
  for (char c : input)
    if (c != '0' && c != '1')
      throw std::invalid_argument("input must be a string over {0,1}");

  RunResult res;
  std::string control = i.initial;
  TapeInstance tape;
  int steps = 0;
  std::optional<PortSymbol> pending;  // output tag awaiting emission
  for (;;) {
    if (!pending && res.consumed == static_cast<int>(input.size()))
      return res;  // Done, at the input boundary
    if (steps == step_budget) {
      res.status = RunResult::Status::BudgetExhausted;
      return res;
    }
    if (pending) {
      if (*pending != kLambda)
        res.output += *pending;
      pending.reset();
      ++steps;
      continue;
    }
    PortSymbol bit = input[static_cast<size_t>(res.consumed)];
    auto it = i.delta.find({control, tape.read(), bit});
    if (it == i.delta.end()) {
      res.status = RunResult::Status::Stuck;  // unreachable: delta is total
      return res;
    }
    const ItmStep &step = it->second;
    tape.apply(step.write, static_cast<char>(step.move));
    control = step.next;
    pending = step.output;
    ++res.consumed;
    ++steps;
  }
}

RunResult run_translation(const Machine &m, const std::string &input,
                          int step_budget) {
  return std::visit(
      [&](const auto &inner) {
        return run_translation(inner, input, step_budget);
      },
      m);
}

MonotoneResult check_monotone_fn(
    const std::function<std::string(const std::string &)> &g, int max_len) {
  // Immediate prefixes suffice: the strict-prefix order on bit strings is
  // generated by dropping the last bit, and prefix-of is transitive.
  MonotoneResult res;
  std::vector<std::pair<std::string, std::string>> frontier{{"", g("")}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<std::string, std::string>> next;
    for (const auto &[x, gx] : frontier)
      for (char b : {'0', '1'}) {
        std::string y = x + b;
        std::string gy = g(y);
        if (gy.compare(0, gx.size(), gx) != 0) {
          res.pass = false;
          res.witness = {x, y};
          return res;
        }
        next.emplace_back(std::move(y), std::move(gy));
      }
    frontier = std::move(next);
  }
  return res;
}

MonotoneResult check_monotone_g(const Machine &m, int max_len,
                                int step_budget) {
  return check_monotone_fn(
      [&](const std::string &x) {
        RunResult r = run_translation(m, x, step_budget);
        if (r.status != RunResult::Status::Done)
          throw std::runtime_error("run on input \"" + x +
                                   "\" did not complete");
        return r.output;
      },
      max_len);
}

}  // namespace rtmwb

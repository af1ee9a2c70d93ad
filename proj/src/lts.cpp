#include "rtmwb/lts.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace rtmwb {

Action Action::visible(std::string label) {
  if (label.empty())
    throw std::invalid_argument("visible action label must be nonempty");
  if (label == "tau")
    throw std::invalid_argument("\"tau\" is reserved for the internal action");
  for (char c : label)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"')
      throw std::invalid_argument("action label contains whitespace or quote: " +
                                  label);
  Action a;
  a.label_ = std::move(label);
  return a;
}

Action Action::parse(const std::string &text) {
  return text == "tau" ? tau() : visible(text);
}

void Lts::add_transition(int src, const Action &a, int dst) {
  Transition t{src, a, dst};
  auto it = std::lower_bound(transitions.begin(), transitions.end(), t);
  if (it != transitions.end() && *it == t)
    return;  // set semantics: duplicates collapse
  transitions.insert(it, t);
}

void Lts::validate() const {
  if (num_states <= 0)
    throw std::invalid_argument("LTS must have at least one state");
  if (initial < 0 || initial >= num_states)
    throw std::invalid_argument("initial state out of range");
  for (const auto &t : transitions)
    if (t.src < 0 || t.src >= num_states || t.dst < 0 || t.dst >= num_states)
      throw std::invalid_argument("transition endpoint out of range");
  for (int h : horizon)
    if (h < 0 || h >= num_states)
      throw std::invalid_argument("horizon state out of range");
  if (!std::is_sorted(transitions.begin(), transitions.end()))
    throw std::invalid_argument("transitions not sorted");
}

std::vector<Transition> Lts::out(int s) const {
  std::vector<Transition> res;
  auto it = std::lower_bound(transitions.begin(), transitions.end(),
                             Transition{s, Action::tau(), 0},
                             [](const Transition &t, const Transition &v) {
                               return t.src < v.src;
                             });
  for (; it != transitions.end() && it->src == s; ++it)
    res.push_back(*it);
  return res;
}

Lts canonicalize(const Lts &l) {
  std::vector<int> remap(l.num_states, -1);
  int next = 0;
  std::deque<int> queue;
  remap[l.initial] = next++;
  queue.push_back(l.initial);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto &t : l.out(s)) {
      if (remap[t.dst] == -1) {
        remap[t.dst] = next++;
        queue.push_back(t.dst);
      }
    }
  }
  for (int s = 0; s < l.num_states; ++s)
    if (remap[s] == -1)
      remap[s] = next++;

  Lts res;
  res.num_states = l.num_states;
  res.initial = remap[l.initial];
  for (const auto &t : l.transitions)
    res.add_transition(remap[t.src], t.act, remap[t.dst]);
  for (int h : l.horizon)
    res.horizon.insert(remap[h]);
  return res;
}

Lts explore(const LazyLts &lazy, int depth, int state_cap,
            std::vector<std::string> *keys_out) {
  if (depth < 0)
    throw std::invalid_argument("depth must be nonnegative");
  if (state_cap < 1)
    throw std::invalid_argument("state_cap must be positive");

  std::unordered_map<std::string, int> id_of;
  std::vector<std::string> keys;
  std::vector<int> depth_of;
  auto discover = [&](const std::string &key, int d) {
    int id = static_cast<int>(keys.size());
    id_of.emplace(key, id);
    keys.push_back(key);
    depth_of.push_back(d);
    return id;
  };

  Lts res;
  discover(lazy.initial, 0);
  std::deque<int> queue{0};
  std::set<int> expanded;
  bool capped = false;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (capped || depth_of[s] == depth)
      continue;  // left unexpanded; collected into the horizon below
    auto succs = lazy.successors(keys[s]);
    int fresh = 0;
    {
      std::set<std::string> seen;
      for (const auto &[act, key] : succs)
        if (!id_of.count(key) && seen.insert(key).second)
          ++fresh;
    }
    if (static_cast<int>(keys.size()) + fresh > state_cap) {
      capped = true;  // no further expansions at all
      continue;
    }
    expanded.insert(s);
    for (const auto &[act, key] : succs) {
      auto it = id_of.find(key);
      int dst;
      if (it == id_of.end()) {
        dst = discover(key, depth_of[s] + 1);
        queue.push_back(dst);
      } else {
        dst = it->second;
      }
      res.add_transition(s, act, dst);
    }
  }

  res.num_states = static_cast<int>(keys.size());
  res.initial = 0;
  for (int s = 0; s < res.num_states; ++s)
    if (!expanded.count(s))
      res.horizon.insert(s);
  if (keys_out)
    *keys_out = std::move(keys);
  return res;
}

namespace {

// Strict scan of "(src,"label",dst)" with no interior spaces.
bool parse_transition_line(const std::string &line, long &src,
                           std::string &label, long &dst) {
  size_t i = 0;
  auto number = [&](long &out) {
    size_t start = i;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
      ++i;
    if (i == start)
      return false;
    out = std::stol(line.substr(start, i - start));
    return true;
  };
  if (i >= line.size() || line[i++] != '(')
    return false;
  if (!number(src))
    return false;
  if (i >= line.size() || line[i++] != ',')
    return false;
  if (i >= line.size() || line[i++] != '"')
    return false;
  size_t lstart = i;
  while (i < line.size() && line[i] != '"')
    ++i;
  if (i >= line.size())
    return false;
  label = line.substr(lstart, i - lstart);
  ++i;  // closing quote
  if (i >= line.size() || line[i++] != ',')
    return false;
  if (!number(dst))
    return false;
  if (i >= line.size() || line[i++] != ')')
    return false;
  return i == line.size();
}

}  // namespace

Lts read_lts(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line))
    throw ParseError(1, "empty input, expected des header");
  ++lineno;
  long init, tcount, scount;
  {
    // des (I,T,S)
    long a, b, c;
    if (std::sscanf(line.c_str(), "des (%ld,%ld,%ld)", &a, &b, &c) != 3)
      throw ParseError(lineno, "malformed header, expected des (I,T,S)");
    init = a;
    tcount = b;
    scount = c;
  }
  if (scount < 1)
    throw ParseError(lineno, "state count must be positive");
  if (init < 0 || init >= scount)
    throw ParseError(lineno, "initial state out of declared range");

  Lts res;
  res.num_states = static_cast<int>(scount);
  res.initial = static_cast<int>(init);
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    long src, dst;
    std::string label;
    if (!parse_transition_line(line, src, label, dst))
      throw ParseError(lineno, "malformed transition line: " + line);
    if (seen == tcount)
      throw ParseError(lineno, "more transitions than the header declares");
    if (src >= scount || dst >= scount)
      throw ParseError(lineno, "transition references state >= declared count");
    try {
      res.add_transition(static_cast<int>(src), Action::parse(label),
                         static_cast<int>(dst));
    } catch (const std::invalid_argument &e) {
      throw ParseError(lineno, e.what());
    }
    ++seen;
  }
  if (seen != tcount)
    throw ParseError(lineno, "header declares " + std::to_string(tcount) +
                                 " transitions, body has " +
                                 std::to_string(seen));
  res.validate();
  return res;
}

std::string write_lts(const Lts &l) {
  if (!l.horizon.empty())
    throw std::invalid_argument(
        "cannot serialize an LTS with a nonempty horizon");
  Lts c = canonicalize(l);
  std::ostringstream out;
  out << "des (" << c.initial << ',' << c.transitions.size() << ','
      << c.num_states << ")\n";
  for (const auto &t : c.transitions)
    out << '(' << t.src << ",\"" << t.act.str() << "\"," << t.dst << ")\n";
  return out.str();
}

}  // namespace rtmwb

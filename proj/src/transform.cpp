#include "rtmwb/transform.hpp"

#include <algorithm>
#include <set>

namespace rtmwb {

namespace {

std::string fresh_name(std::string base, const std::set<std::string> &taken) {
  while (taken.count(base))
    base += "'";
  return base;
}

}  // namespace

Rtm eliminate_stay(const Rtm &m) {
  m.validate();
  Rtm res;
  res.initial = m.initial;
  res.allow_stay = false;
  res.states = m.states;
  std::set<std::string> taken(m.states.begin(), m.states.end());
  std::set<TapeSymbol> alpha = m.alphabet();

  std::map<std::pair<std::string, std::string>, std::string> split_name;
  for (const auto &r : m.rules) {
    if (r.move != Move::S) {
      res.rules.push_back(r);
      continue;
    }
    auto key = std::make_pair(r.from, r.to);
    auto it = split_name.find(key);
    bool first = it == split_name.end();
    if (first) {
      std::string name = fresh_name(r.from + "%" + r.to, taken);
      taken.insert(name);
      res.states.push_back(name);
      it = split_name.emplace(key, name).first;
    }
    const std::string &mid = it->second;
    res.rules.push_back({r.from, r.read, r.act, r.write, Move::L, mid});
    if (first)
      for (TapeSymbol d : alpha)
        res.rules.push_back({mid, d, Action::tau(), d, Move::R, r.to});
  }
  res.validate();
  return res;
}

Rtm itm_to_rtm(const Itm &i) {
  i.validate();
  Rtm res;
  res.initial = i.initial;
  res.allow_stay = true;
  res.states = i.states;
  for (const auto &s : i.states)
    for (char o : kPortSymbols)
      res.states.push_back(s + "@" + o);

  for (const auto &[key, step] : i.delta) {
    const auto &[from, read, input] = key;
    Action act = (input == kLambda)
                     ? Action::tau()
                     : Action::visible(std::string("in?") + input);
    res.rules.push_back({from, read, act, step.write, step.move,
                         step.next + "@" + step.output});
  }
  // Output rules are instantiated per tape symbol; the tagged state ignores
  // and preserves the symbol under the head.
  for (const auto &s : i.states)
    for (char o : kPortSymbols)
      for (TapeSymbol d : i.alphabet) {
        Action act = (o == kLambda)
                         ? Action::tau()
                         : Action::visible(std::string("out!") + o);
        res.rules.push_back({s + "@" + o, d, act, d, Move::S, s});
      }
  res.validate();
  return res;
}

}  // namespace rtmwb

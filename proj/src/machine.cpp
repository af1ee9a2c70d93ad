#include "rtmwb/machine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rtmwb {

void TapeInstance::trim() {
  size_t last = cells.find_last_not_of(kBlank);
  size_t end = (last == std::string::npos) ? 0 : last + 1;
  end = std::max(end, static_cast<size_t>(head) + 1);
  cells.erase(end);
  size_t first = cells.find_first_not_of(kBlank);
  if (first == std::string::npos)
    first = cells.size() - 1;
  first = std::min(first, static_cast<size_t>(head));
  cells.erase(0, first);
  head -= static_cast<int>(first);
}

void TapeInstance::apply(TapeSymbol write, char move) {
  cells[static_cast<size_t>(head)] = write;
  switch (move) {
  case 'L':
    if (head == 0)
      cells.insert(cells.begin(), kBlank);
    else
      --head;
    break;
  case 'R':
    ++head;
    if (head == static_cast<int>(cells.size()))
      cells.push_back(kBlank);
    break;
  case 'S':
    break;
  default:
    throw std::invalid_argument("bad head move");
  }
  trim();
}

Move parse_move(char c) {
  switch (c) {
  case 'L':
    return Move::L;
  case 'R':
    return Move::R;
  case 'S':
    return Move::S;
  }
  throw std::invalid_argument(std::string("bad move symbol: ") + c);
}

void check_state_name(const std::string &name) {
  if (name.empty())
    throw std::invalid_argument("state name must be nonempty");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument("state name contains whitespace: " + name);
    if (c == '@' || c == '%')
      throw std::invalid_argument("state name uses reserved character: " + name);
  }
}

void Rtm::validate() const {
  std::set<std::string> known(states.begin(), states.end());
  if (known.size() != states.size())
    throw std::invalid_argument("duplicate state name");
  if (!known.count(initial))
    throw std::invalid_argument("initial state not declared: " + initial);
  for (const auto &r : rules) {
    if (!known.count(r.from) || !known.count(r.to))
      throw std::invalid_argument("rule endpoint not a declared state");
    if (!allow_stay && r.move == Move::S)
      throw std::invalid_argument("stay move in a machine without stay moves");
  }
}

std::set<TapeSymbol> Rtm::alphabet() const {
  std::set<TapeSymbol> a{kBlank};
  for (const auto &r : rules) {
    a.insert(r.read);
    a.insert(r.write);
  }
  return a;
}

void Itm::validate() const {
  std::set<std::string> known(states.begin(), states.end());
  if (known.size() != states.size())
    throw std::invalid_argument("duplicate state name");
  if (!known.count(initial))
    throw std::invalid_argument("initial state not declared: " + initial);
  if (alphabet.find(kBlank) == std::string::npos)
    throw std::invalid_argument("ITM alphabet must contain the blank '_'");
  for (const auto &[key, step] : delta) {
    if (!known.count(std::get<0>(key)) || !known.count(step.next))
      throw std::invalid_argument("delta endpoint not a declared state");
    if (alphabet.find(std::get<1>(key)) == std::string::npos ||
        alphabet.find(step.write) == std::string::npos)
      throw std::invalid_argument("delta uses symbol outside the alphabet");
    if (step.move == Move::S)
      throw std::invalid_argument("ITM moves are L or R only");
  }
  for (const auto &s : states)
    for (char d : alphabet)
      for (char i : kPortSymbols)
        if (!delta.count({s, d, i}))
          throw std::invalid_argument("delta is not total, missing (" + s +
                                      ", " + d + ", " + i + ")");
}

std::string config_key(const std::string &control, const TapeInstance &tape) {
  return control + "|" + std::to_string(tape.head) + "|" + tape.cells;
}

namespace {

std::pair<std::string, TapeInstance> split_key(const std::string &key) {
  size_t p1 = key.find('|');
  size_t p2 = key.find('|', p1 + 1);
  TapeInstance tape;
  tape.head = std::stoi(key.substr(p1 + 1, p2 - p1 - 1));
  tape.cells = key.substr(p2 + 1);
  return {key.substr(0, p1), tape};
}

}  // namespace

LazyLts rtm_semantics(const Rtm &m) {
  LazyLts lazy;
  lazy.initial = config_key(m.initial, TapeInstance::blank());
  Rtm machine = m;  // own a copy; the successor function must outlive callers
  lazy.successors = [machine](const LazyLts::Key &key) {
    auto [control, tape] = split_key(key);
    std::vector<std::pair<Action, LazyLts::Key>> res;
    for (const auto &r : machine.rules) {
      if (r.from != control || r.read != tape.read())
        continue;
      TapeInstance next = tape;
      next.apply(r.write, static_cast<char>(r.move));
      res.emplace_back(r.act, config_key(r.to, next));
    }
    return res;
  };
  return lazy;
}

LazyLts rtm_semantics_bounded(const Rtm &m, int cell_cap) {
  LazyLts inner = rtm_semantics(m);
  LazyLts lazy;
  lazy.initial = inner.initial;
  lazy.successors = [inner, cell_cap](const LazyLts::Key &key) {
    auto succs = inner.successors(key);
    std::erase_if(succs, [cell_cap](const auto &s) {
      return split_key(s.second).second.cells.size() >
             static_cast<size_t>(cell_cap);
    });
    return succs;
  };
  return lazy;
}

LazyLts itm_semantics(const Itm &machine) {
  LazyLts lazy;
  lazy.initial = config_key(machine.initial, TapeInstance::blank());
  Itm itm = machine;
  lazy.successors = [itm](const LazyLts::Key &key) {
    auto [control, tape] = split_key(key);
    std::vector<std::pair<Action, LazyLts::Key>> res;
    size_t at = control.find('@');
    if (at != std::string::npos) {
      // Tagged configuration s@o: emit the pending output, tape unchanged.
      PortSymbol o = control[at + 1];
      Action act = (o == kLambda)
                       ? Action::tau()
                       : Action::visible(std::string("out!") + o);
      res.emplace_back(act, config_key(control.substr(0, at), tape));
      return res;
    }
    for (char i : kPortSymbols) {
      auto it = itm.delta.find({control, tape.read(), i});
      if (it == itm.delta.end())
        continue;
      const ItmStep &step = it->second;
      TapeInstance next = tape;
      next.apply(step.write, static_cast<char>(step.move));
      Action act = (i == kLambda)
                       ? Action::tau()
                       : Action::visible(std::string("in?") + i);
      res.emplace_back(act,
                       config_key(step.next + "@" + step.output, next));
    }
    return res;
  };
  return lazy;
}

// ---------------------------------------------------------------------------
// Machine file formats.

namespace {

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> res;
  std::string t;
  while (in >> t)
    res.push_back(t);
  return res;
}

// RTM files may contain tool-generated names with '@' or '%' (output of the
// itm2rtm and destay translations), so only ITM state names are checked
// against the reserved characters.
void note_state(std::vector<std::string> &states, std::set<std::string> &seen,
                const std::string &name, bool strict) {
  if (strict)
    check_state_name(name);
  else if (name.empty())
    throw std::invalid_argument("state name must be nonempty");
  if (seen.insert(name).second)
    states.push_back(name);
}

Rtm read_rtm(std::istringstream &in, bool allow_stay, int lineno) {
  Rtm m;
  m.allow_stay = allow_stay;
  std::set<std::string> seen;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(lineno + 1, "expected start line");
  ++lineno;
  auto start = tokens(line);
  if (start.size() != 2 || start[0] != "start")
    throw ParseError(lineno, "expected: start <state>");
  note_state(m.states, seen, start[1], /*strict=*/false);
  m.initial = start[1];
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    auto tok = tokens(line);
    if (tok.size() != 6 || tok[0] != "trans")
      throw ParseError(lineno,
                       "expected: trans <state> <action> <read>/<write> "
                       "<L|R|S> <state>");
    try {
      RtmRule r;
      note_state(m.states, seen, tok[1], /*strict=*/false);
      r.from = tok[1];
      r.act = Action::parse(tok[2]);
      if (tok[3].size() != 3 || tok[3][1] != '/')
        throw std::invalid_argument("expected <read>/<write> symbol pair");
      r.read = tok[3][0];
      r.write = tok[3][2];
      if (tok[4].size() != 1)
        throw std::invalid_argument("bad move");
      r.move = parse_move(tok[4][0]);
      if (!allow_stay && r.move == Move::S)
        throw std::invalid_argument("stay move in a file declaring no-stay");
      note_state(m.states, seen, tok[5], /*strict=*/false);
      r.to = tok[5];
      m.rules.push_back(r);
    } catch (const std::invalid_argument &e) {
      throw ParseError(lineno, e.what());
    }
  }
  m.validate();
  return m;
}

Itm read_itm(std::istringstream &in, int lineno) {
  Itm m;
  std::set<std::string> seen;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(lineno + 1, "expected alphabet line");
  ++lineno;
  auto alpha = tokens(line);
  if (alpha.size() != 2 || alpha[0] != "alphabet")
    throw ParseError(lineno, "expected: alphabet <chars including _>");
  m.alphabet = alpha[1];
  if (m.alphabet.find(kBlank) == std::string::npos)
    throw ParseError(lineno, "alphabet must contain the blank '_'");
  if (!std::getline(in, line))
    throw ParseError(lineno + 1, "expected start line");
  ++lineno;
  auto start = tokens(line);
  if (start.size() != 2 || start[0] != "start")
    throw ParseError(lineno, "expected: start <state>");
  note_state(m.states, seen, start[1], /*strict=*/true);
  m.initial = start[1];
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    auto tok = tokens(line);
    if (tok.size() != 9 || tok[0] != "delta" || tok[4] != "->")
      throw ParseError(lineno,
                       "expected: delta <state> <read> <0|1|-> -> <state> "
                       "<write> <L|R> <0|1|->");
    try {
      note_state(m.states, seen, tok[1], /*strict=*/true);
      if (tok[2].size() != 1 || tok[3].size() != 1 || tok[6].size() != 1 ||
          tok[7].size() != 1 || tok[8].size() != 1)
        throw std::invalid_argument("delta fields must be single characters");
      TapeSymbol read = tok[2][0];
      PortSymbol input = tok[3][0];
      if (kPortSymbols.find(input) == std::string::npos)
        throw std::invalid_argument("input symbol must be 0, 1 or -");
      ItmStep step;
      note_state(m.states, seen, tok[5], /*strict=*/true);
      step.next = tok[5];
      step.write = tok[6][0];
      step.move = parse_move(tok[7][0]);
      if (step.move == Move::S)
        throw std::invalid_argument("ITM moves are L or R only");
      step.output = tok[8][0];
      if (kPortSymbols.find(step.output) == std::string::npos)
        throw std::invalid_argument("output symbol must be 0, 1 or -");
      auto key = std::make_tuple(tok[1], read, input);
      if (m.delta.count(key))
        throw std::invalid_argument("nondeterministic delta: duplicate (" +
                                    tok[1] + ", " + read + ", " + input + ")");
      m.delta.emplace(key, step);
    } catch (const std::invalid_argument &e) {
      throw ParseError(lineno, e.what());
    }
  }
  m.validate();
  return m;
}

}  // namespace

Machine read_machine(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(1, "empty machine file");
  auto head = tokens(line);
  if (head.size() == 2 && head[0] == "rtm" &&
      (head[1] == "stay" || head[1] == "no-stay"))
    return read_rtm(in, head[1] == "stay", 1);
  if (head.size() == 1 && head[0] == "itm")
    return read_itm(in, 1);
  throw ParseError(1, "expected 'rtm stay', 'rtm no-stay' or 'itm'");
}

std::string write_machine(const Rtm &m) {
  std::ostringstream out;
  out << "rtm " << (m.allow_stay ? "stay" : "no-stay") << "\n";
  out << "start " << m.initial << "\n";
  for (const auto &r : m.rules)
    out << "trans " << r.from << ' ' << r.act.str() << ' ' << r.read << '/'
        << r.write << ' ' << static_cast<char>(r.move) << ' ' << r.to << "\n";
  return out.str();
}

std::string write_machine(const Itm &m) {
  std::ostringstream out;
  out << "itm\n";
  out << "alphabet " << m.alphabet << "\n";
  out << "start " << m.initial << "\n";
  for (const auto &[key, step] : m.delta)
    out << "delta " << std::get<0>(key) << ' ' << std::get<1>(key) << ' '
        << std::get<2>(key) << " -> " << step.next << ' ' << step.write << ' '
        << static_cast<char>(step.move) << ' ' << step.output << "\n";
  return out.str();
}

std::string write_machine(const Machine &m) {
  return std::visit([](const auto &v) { return write_machine(v); }, m);
}

}  // namespace rtmwb

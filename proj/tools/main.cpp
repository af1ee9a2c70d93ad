// rtmwb: workbench for reactive and interactive Turing machines.
//
// Exit codes: 0 yes/pass, 1 no/fail, 2 unknown/incomplete, 64 usage error,
// 65 input parse/validation error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtmwb/advice.hpp"
#include "rtmwb/bisim.hpp"
#include "rtmwb/lts.hpp"
#include "rtmwb/machine.hpp"
#include "rtmwb/omega.hpp"
#include "rtmwb/transform.hpp"

namespace {

using nlohmann::json;
using namespace rtmwb;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_lts(const std::string &text) {
  return text.rfind("des", 0) == 0;
}

/// Load an LTS from a file that holds either an LTS (complete, no horizon)
/// or a machine (explored to the given window).
Lts load_lts(const std::string &path, int depth, int state_cap) {
  std::string text = slurp(path);
  if (looks_like_lts(text))
    return read_lts(text);
  Machine m = read_machine(text);
  LazyLts lazy = std::visit(
      [](const auto &inner) {
        if constexpr (std::is_same_v<std::decay_t<decltype(inner)>, Rtm>)
          return rtm_semantics(inner);
        else
          return itm_semantics(inner);
      },
      m);
  return explore(lazy, depth, state_cap);
}

json lts_to_json(const Lts &l) {
  json j;
  j["states"] = l.num_states;
  j["initial"] = l.initial;
  j["transitions"] = json::array();
  for (const auto &t : l.transitions)
    j["transitions"].push_back({{"src", t.src},
                                {"label", t.act.str()},
                                {"dst", t.dst}});
  j["horizon"] = json::array();
  for (int h : l.horizon)
    j["horizon"].push_back(h);
  return j;
}

void print_lts(const Lts &l, bool as_json) {
  if (as_json) {
    std::cout << lts_to_json(l).dump(2) << "\n";
    return;
  }
  if (l.horizon.empty()) {
    std::cout << write_lts(l);
    return;
  }
  // Truncated windows have no file representation; print a report instead.
  std::cout << "states: " << l.num_states << "\n";
  std::cout << "initial: " << l.initial << "\n";
  std::cout << "transitions: " << l.transitions.size() << "\n";
  std::cout << "horizon:";
  for (int h : l.horizon)
    std::cout << " " << h;
  std::cout << "\n";
  for (const auto &t : l.transitions)
    std::cout << "(" << t.src << ",\"" << t.act.str() << "\"," << t.dst
              << ")\n";
}

const char *verdict_word(BisimVerdict::Value v) {
  switch (v) {
  case BisimVerdict::Value::Yes:
    return "yes";
  case BisimVerdict::Value::No:
    return "no";
  default:
    return "unknown";
  }
}

int verdict_exit(BisimVerdict::Value v) {
  switch (v) {
  case BisimVerdict::Value::Yes:
    return kExitYes;
  case BisimVerdict::Value::No:
    return kExitNo;
  default:
    return kExitUnknown;
  }
}

json witness_to_json(const BisimWitness &w) {
  json j;
  j["pair"] = {w.s1, w.s2};
  j["clause"] = w.clause;
  j["side"] = w.side;
  j["move"] = {{"src", w.move.src},
               {"label", w.move.act.str()},
               {"dst", w.move.dst}};
  return j;
}

int emit_bisim(const BisimVerdict &v, bool as_json) {
  if (as_json) {
    json j;
    j["verdict"] = verdict_word(v.value);
    if (v.witness)
      j["witness"] = witness_to_json(*v.witness);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict_word(v.value) << "\n";
    if (v.witness)
      std::cout << describe_witness(*v.witness);
  }
  return verdict_exit(v.value);
}

std::string fmt_transition(const Transition &t) {
  return "(" + std::to_string(t.src) + ",\"" + t.act.str() + "\"," +
         std::to_string(t.dst) + ")";
}

const char *status_word(RunResult::Status s) {
  switch (s) {
  case RunResult::Status::Done:
    return "done";
  case RunResult::Status::BudgetExhausted:
    return "budget-exhausted";
  case RunResult::Status::Stuck:
    return "stuck";
  default:
    return "nondeterminism";
  }
}

struct Options {
  int depth = 10;
  int state_cap = 100000;
  int budget = 10000;
  int bound = 50;
  bool divergence = false;
  bool bounded = false;
  bool as_json = false;
};

int cmd_explore(const std::string &file, const Options &o) {
  print_lts(load_lts(file, o.depth, o.state_cap), o.as_json);
  return kExitYes;
}

int cmd_translate(const std::string &mode, const std::string &file) {
  Machine m = read_machine(slurp(file));
  if (mode == "itm2rtm") {
    if (!std::holds_alternative<Itm>(m))
      throw std::runtime_error("itm2rtm expects an ITM file");
    std::cout << write_machine(itm_to_rtm(std::get<Itm>(m)));
  } else {
    if (!std::holds_alternative<Rtm>(m))
      throw std::runtime_error("destay expects an RTM file");
    std::cout << write_machine(eliminate_stay(std::get<Rtm>(m)));
  }
  return kExitYes;
}

int cmd_check_bisim(const std::string &file1, const std::string &file2,
                    const Options &o) {
  Lts l1 = load_lts(file1, o.depth, o.state_cap);
  Lts l2 = load_lts(file2, o.depth, o.state_cap);
  BisimVerdict v = o.bounded ? bounded_bisim(l1, l2, o.divergence)
                             : branching_bisim(l1, l2, o.divergence);
  return emit_bisim(v, o.as_json);
}

int cmd_check_io(const std::string &file, const Options &o) {
  IoClassification c = classify_io(load_lts(file, o.depth, o.state_cap));
  if (o.as_json) {
    json j;
    j["verdict"] = c.pass() ? "yes" : "no";
    if (c.alternation)
      j["alternation_witness"] = *c.alternation;
    if (c.unambiguity)
      j["unambiguity_witness"] = *c.unambiguity;
    if (c.totality)
      j["totality_witness"] = *c.totality;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << (c.pass() ? "yes" : "no") << "\n";
    if (c.alternation)
      std::cout << "alternation witness: state " << *c.alternation << "\n";
    if (c.unambiguity)
      std::cout << "unambiguity witness: state " << *c.unambiguity << "\n";
    if (c.totality)
      std::cout << "totality witness: state " << *c.totality << "\n";
  }
  return c.pass() ? kExitYes : kExitNo;
}

int cmd_check_interactive(const std::string &file, const Options &o) {
  InteractiveResult r =
      check_interactive(load_lts(file, o.depth, o.state_cap), o.bound);
  const char *word = r.value == InteractiveResult::Value::Pass ? "yes"
                     : r.value == InteractiveResult::Value::Fail ? "no"
                                                                 : "unknown";
  if (o.as_json) {
    json j;
    j["verdict"] = word;
    j["witness"] = json::array();
    for (const auto &t : r.witness)
      j["witness"].push_back({{"src", t.src},
                              {"label", t.act.str()},
                              {"dst", t.dst}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << word << "\n";
    if (!r.witness.empty()) {
      std::cout << "witness:\n";
      for (const auto &t : r.witness)
        std::cout << "  " << fmt_transition(t) << "\n";
    }
  }
  return r.value == InteractiveResult::Value::Pass ? kExitYes
         : r.value == InteractiveResult::Value::Fail ? kExitNo
                                                     : kExitUnknown;
}

int cmd_check_monotone(const std::string &file, int max_len,
                       const Options &o) {
  Machine m = read_machine(slurp(file));
  MonotoneResult r = check_monotone_g(m, max_len, o.budget);
  if (o.as_json) {
    json j;
    j["verdict"] = r.pass ? "yes" : "no";
    if (r.witness)
      j["witness"] = {r.witness->first, r.witness->second};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << (r.pass ? "yes" : "no") << "\n";
    if (r.witness)
      std::cout << "witness: x=\"" << r.witness->first << "\" y=\""
                << r.witness->second << "\"\n";
  }
  return r.pass ? kExitYes : kExitNo;
}

int cmd_check_omega_form(const std::string &file, const Options &o) {
  Machine m = read_machine(slurp(file));
  if (!std::holds_alternative<Rtm>(m))
    throw std::runtime_error("rtm-omega-form expects an RTM file");
  OmegaFormResult r = check_rtm_omega_form(std::get<Rtm>(m));
  if (o.as_json) {
    json j;
    j["verdict"] = r.pass() ? "yes" : "no";
    j["failures"] = json::array();
    for (const auto &f : r.failures)
      j["failures"].push_back({{"clause", f.clause}, {"witness", f.witness}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << (r.pass() ? "yes" : "no") << "\n";
    for (const auto &f : r.failures)
      std::cout << "clause " << f.clause << ": " << f.witness << "\n";
  }
  return r.pass() ? kExitYes : kExitNo;
}

int cmd_run(const std::string &file, const std::string &input,
            bool interactive, const Options &o) {
  Machine m = read_machine(slurp(file));
  if (interactive) {
    // One bit per stdin line; emitted bits are printed as they appear.
    // Determinism lets us recompute the run on the growing input.
    std::string acc, line, shown;
    while (std::getline(std::cin, line)) {
      if (line != "0" && line != "1") {
        std::cerr << "error: expected 0 or 1\n";
        return kExitParse;
      }
      acc += line;
      RunResult r = run_translation(m, acc, o.budget);
      if (r.output.size() > shown.size())
        std::cout << r.output.substr(shown.size()) << "\n" << std::flush;
      shown = r.output;
      if (r.status != RunResult::Status::Done) {
        std::cout << "status: " << status_word(r.status) << "\n";
        return kExitUnknown;
      }
    }
    return kExitYes;
  }
  RunResult r = run_translation(m, input, o.budget);
  if (o.as_json) {
    json j;
    j["output"] = r.output;
    j["consumed"] = r.consumed;
    j["status"] = status_word(r.status);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "output: " << r.output << "\n";
    std::cout << "consumed: " << r.consumed << "\n";
    std::cout << "status: " << status_word(r.status) << "\n";
  }
  return r.status == RunResult::Status::Done ? kExitYes : kExitUnknown;
}

int cmd_advice(const std::string &file, std::uint64_t query,
               const Options &o) {
  AdviceFunction f = read_advice(slurp(file));
  std::uint64_t value = f.apply(query);
  if (o.as_json) {
    json j;
    j["query"] = query;
    j["value"] = value;
    json trace = json::array();
    for (std::uint64_t i = 0; i < query; ++i)
      trace.push_back("in?1");
    trace.push_back("in?0");
    for (std::uint64_t i = 0; i < value; ++i)
      trace.push_back("out!1");
    trace.push_back("out!0");
    j["trace"] = trace;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "value: " << value << "\n";
    std::cout << "trace:";
    for (std::uint64_t i = 0; i < query; ++i)
      std::cout << " in?1";
    std::cout << " in?0";
    for (std::uint64_t i = 0; i < value; ++i)
      std::cout << " out!1";
    std::cout << " out!0\n";
  }
  return kExitYes;
}

int cmd_compose(const std::string &file, const std::string &advice_file,
                const Options &o) {
  Machine m = read_machine(slurp(file));
  if (!std::holds_alternative<Rtm>(m))
    throw std::runtime_error("compose expects an RTM file");
  AdviceFunction f = read_advice(slurp(advice_file));
  Lts window =
      explore(compose_restrict(std::get<Rtm>(m), f), o.depth, o.state_cap);
  print_lts(window, o.as_json);
  return kExitYes;
}

int cmd_simulate(const std::string &file, const std::string &mode, int cap,
                 bool check, const Options &o) {
  Lts t = read_lts(slurp(file));
  Simulation sim = mode == "bounded" ? simulate_lts_bounded_branching(t)
                                     : simulate_lts_countable(t, cap);
  if (!check) {
    std::cout << "machine:\n" << write_machine(sim.machine);
    std::cout << "advice:\n" << write_advice(sim.advice);
    return kExitYes;
  }
  Lts window = explore(compose_restrict(sim.machine, sim.advice), o.depth,
                       o.state_cap);
  return emit_bisim(bounded_bisim(window, t, o.divergence), o.as_json);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Workbench for reactive and interactive Turing machines"};
  app.require_subcommand(1);

  Options o;
  std::string file, file2, mode, input, advice_file;
  std::string sim_mode = "bounded";
  int max_len = 6, sim_cap = 8;
  std::uint64_t query = 0;
  bool interactive = false, sim_check = false;

  auto add_window = [&o](CLI::App *c) {
    c->add_option("--depth", o.depth, "exploration depth (default 10)");
    c->add_option("--state-cap", o.state_cap,
                  "exploration state cap (default 100000)");
  };
  auto add_json = [&o](CLI::App *c) {
    c->add_flag("--json", o.as_json, "structured output");
  };

  auto *explore_cmd = app.add_subcommand("explore", "explore a machine/LTS");
  explore_cmd->add_option("file", file)->required();
  add_window(explore_cmd);
  add_json(explore_cmd);

  auto *translate_cmd =
      app.add_subcommand("translate", "itm2rtm or destay a machine");
  translate_cmd->add_option("mode", mode)
      ->required()
      ->check(CLI::IsMember({"itm2rtm", "destay"}));
  translate_cmd->add_option("file", file)->required();

  auto *check_cmd = app.add_subcommand("check", "run a checker");
  check_cmd->require_subcommand(1);
  auto *bisim_cmd = check_cmd->add_subcommand("bisim");
  bisim_cmd->add_option("file1", file)->required();
  bisim_cmd->add_option("file2", file2)->required();
  bisim_cmd->add_flag("--divergence", o.divergence);
  bisim_cmd->add_flag("--bounded", o.bounded);
  add_window(bisim_cmd);
  add_json(bisim_cmd);
  auto *io_cmd = check_cmd->add_subcommand("io");
  io_cmd->add_option("file", file)->required();
  add_window(io_cmd);
  add_json(io_cmd);
  auto *inter_cmd = check_cmd->add_subcommand("interactive");
  inter_cmd->add_option("file", file)->required();
  inter_cmd->add_option("--bound", o.bound, "path bound (default 50)");
  add_window(inter_cmd);
  add_json(inter_cmd);
  auto *mono_cmd = check_cmd->add_subcommand("monotone");
  mono_cmd->add_option("file", file)->required();
  mono_cmd->add_option("--max-len", max_len, "input length bound (default 6)");
  mono_cmd->add_option("--budget", o.budget, "step budget (default 10000)");
  add_json(mono_cmd);
  auto *omega_cmd = check_cmd->add_subcommand("rtm-omega-form");
  omega_cmd->add_option("file", file)->required();
  add_json(omega_cmd);

  auto *run_cmd = app.add_subcommand("run", "run a stream translator");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--input", input, "input bits");
  run_cmd->add_option("--budget", o.budget, "step budget (default 10000)");
  run_cmd->add_flag("--interactive", interactive,
                    "read one bit per stdin line");
  add_json(run_cmd);

  auto *advice_cmd =
      app.add_subcommand("advice", "query an advice process trace");
  advice_cmd->add_option("file", advice_file)->required();
  advice_cmd->add_option("--query", query)->required();
  add_json(advice_cmd);

  auto *compose_cmd =
      app.add_subcommand("compose", "compose an RTM with an advice process");
  compose_cmd->add_option("file", file)->required();
  compose_cmd->add_option("--advice", advice_file)->required();
  add_window(compose_cmd);
  add_json(compose_cmd);

  auto *sim_cmd =
      app.add_subcommand("simulate-lts", "build an advice simulation");
  sim_cmd->add_option("file", file)->required();
  sim_cmd->add_option("--mode", sim_mode)
      ->check(CLI::IsMember({"bounded", "countable"}));
  sim_cmd->add_option("--cap", sim_cap, "counter cap (countable mode)");
  sim_cmd->add_flag("--check", sim_check, "verify against the input LTS");
  sim_cmd->add_flag("--divergence", o.divergence);
  add_window(sim_cmd);
  add_json(sim_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (explore_cmd->parsed())
      return cmd_explore(file, o);
    if (translate_cmd->parsed())
      return cmd_translate(mode, file);
    if (bisim_cmd->parsed())
      return cmd_check_bisim(file, file2, o);
    if (io_cmd->parsed())
      return cmd_check_io(file, o);
    if (inter_cmd->parsed())
      return cmd_check_interactive(file, o);
    if (mono_cmd->parsed())
      return cmd_check_monotone(file, max_len, o);
    if (omega_cmd->parsed())
      return cmd_check_omega_form(file, o);
    if (run_cmd->parsed())
      return cmd_run(file, input, interactive, o);
    if (advice_cmd->parsed())
      return cmd_advice(advice_file, query, o);
    if (compose_cmd->parsed())
      return cmd_compose(file, advice_file, o);
    if (sim_cmd->parsed())
      return cmd_simulate(file, sim_mode, sim_cap, sim_check, o);
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitUsage;
}

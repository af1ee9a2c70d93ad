#include <doctest.h>

#include "helpers.hpp"
#include "rtmwb/machine.hpp"

using namespace rtmwb;

TEST_CASE("tape apply and trim keep the canonical form") {
  TapeInstance t = TapeInstance::blank();
  CHECK(t.read() == kBlank);

  t.apply('1', 'R');
  CHECK(t == TapeInstance{"1_", 1});

  t.apply('_', 'L');  // back onto the 1, trailing blank trimmed
  CHECK(t == TapeInstance{"1", 0});

  t.apply('1', 'L');  // off the left end
  CHECK(t == TapeInstance{"_1", 0});

  t.apply('_', 'R');  // leading blank no longer under the head
  CHECK(t == TapeInstance{"1", 0});
}

TEST_CASE("blank tape stays blank under blank writes") {
  TapeInstance t;
  t.apply('_', 'L');
  CHECK(t == TapeInstance::blank());
  t.apply('_', 'R');
  CHECK(t == TapeInstance::blank());
  t.apply('_', 'S');
  CHECK(t == TapeInstance::blank());
}

TEST_CASE("stay move writes in place") {
  TapeInstance t;
  t.apply('x', 'S');
  CHECK(t == TapeInstance{"x", 0});
  t.apply('_', 'S');
  CHECK(t == TapeInstance::blank());
}

TEST_CASE("interior blanks are preserved") {
  TapeInstance t;
  t.apply('1', 'R');  // 1[_]
  t.apply('_', 'R');  // 1_[_]
  t.apply('1', 'L');  // 1[_]1
  CHECK(t == TapeInstance{"1_1", 1});
}

TEST_CASE("config_key is injective on (control, tape)") {
  CHECK(config_key("q", TapeInstance::blank()) !=
        config_key("p", TapeInstance::blank()));
  CHECK(config_key("q", {"1_", 1}) != config_key("q", {"1_", 0}));
  CHECK(config_key("q", {"1_", 1}) != config_key("q", {"1", 1}));
}

TEST_CASE("check_state_name rejects reserved characters") {
  check_state_name("q0");
  CHECK_THROWS_AS(check_state_name(""), std::invalid_argument);
  CHECK_THROWS_AS(check_state_name("a b"), std::invalid_argument);
  CHECK_THROWS_AS(check_state_name("a@b"), std::invalid_argument);
  CHECK_THROWS_AS(check_state_name("a%b"), std::invalid_argument);
}

TEST_CASE("rtm validation") {
  Rtm m;
  m.states = {"p"};
  m.initial = "p";
  m.rules.push_back(
      {"p", '_', Action::visible("a"), '_', Move::S, "p"});
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);  // stay not allowed
  m.allow_stay = true;
  m.validate();
  m.rules.push_back({"p", '_', Action::tau(), '_', Move::R, "q"});
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);  // undeclared target
}

TEST_CASE("rtm alphabet collects blank plus used symbols") {
  auto m = std::get<Rtm>(read_machine(testutil::read_fixture("stay1.rtm")));
  CHECK(m.alphabet() == std::set<TapeSymbol>{'_', 'x'});
}

TEST_CASE("echo rtm configuration graph is a 3-state cycle") {
  auto m = std::get<Rtm>(read_machine(testutil::read_fixture("echo.rtm")));
  Lts l = testutil::explore_all(rtm_semantics(m));
  // (qi,_) -in?b-> (eb,_) -out!b-> (qi,_): the tape never leaves the blank.
  CHECK(l.num_states == 3);
  CHECK(l.transitions.size() == 4);
  CHECK(l.horizon.empty());
}

TEST_CASE("rtm successor order follows rule declaration order") {
  auto m = std::get<Rtm>(read_machine(testutil::read_fixture("echo.rtm")));
  std::vector<std::string> keys;
  Lts l = explore(rtm_semantics(m), 1, 100000, &keys);
  // Rules in?0 then in?1 from qi, so e0's configuration is discovered first.
  REQUIRE(keys.size() == 3);
  CHECK(keys[1] == config_key("e0", TapeInstance::blank()));
  CHECK(keys[2] == config_key("e1", TapeInstance::blank()));
}

TEST_CASE("bounded rtm semantics cuts off tape growth") {
  Rtm m;
  m.states = {"p"};
  m.initial = "p";
  m.rules.push_back({"p", '_', Action::tau(), '1', Move::R, "p"});
  m.validate();
  // Unbounded: blank, 1[_], 11[_], ... is an infinite chain.
  Lts window = explore(rtm_semantics(m), 5);
  CHECK_FALSE(window.horizon.empty());
  // With at most 3 cells the growing step out of 11[_] is dropped.
  Lts l = testutil::explore_all(rtm_semantics_bounded(m, 3));
  CHECK(l.num_states == 3);
  CHECK(l.transitions.size() == 2);
}

TEST_CASE("echo itm depth-2 window, derived by hand") {
  auto i = std::get<Itm>(read_machine(testutil::read_fixture("echo.itm")));
  Lts l = explore(itm_semantics(i), 2);
  // Depth 1: tagged (q@0,0[_]), (q@1,1[_]), (q@-,blank). Depth 2: their
  // output steps reach (q,0[_]), (q,1[_]) and back to the initial
  // configuration. 6 states, 6 transitions, 2 unexpanded.
  CHECK(l.num_states == 6);
  CHECK(l.transitions.size() == 6);
  CHECK(l.horizon.size() == 2);
  // Tagged configurations have exactly one successor each.
  auto depth1 = l.out(l.initial);
  REQUIRE(depth1.size() == 3);
  for (const auto &t : depth1)
    if (!l.horizon.count(t.dst))
      CHECK(l.out(t.dst).size() == 1);
}

TEST_CASE("itm lambda cycle returns to the initial configuration") {
  auto i = std::get<Itm>(read_machine(testutil::read_fixture("echo.itm")));
  std::vector<std::string> keys;
  Lts l = explore(itm_semantics(i), 2, 100000, &keys);
  bool found = false;
  for (const auto &t : l.transitions)
    if (t.act.is_tau() && t.src != l.initial && t.dst == l.initial)
      found = true;
  CHECK(found);  // (q@-, blank) -tau-> (q, blank)
}

TEST_CASE("itm validate reports missing triples") {
  auto i = std::get<Itm>(read_machine(testutil::read_fixture("echo.itm")));
  i.delta.erase({"q", '0', '-'});
  CHECK_THROWS_AS(i.validate(), std::invalid_argument);
}

TEST_CASE("machine files round-trip byte-identically") {
  for (const char *name : {"echo.itm", "delay1.itm", "parity.itm", "echo.rtm",
                           "stay1.rtm", "stay2.rtm", "stay3.rtm", "stay4.rtm",
                           "stay5.rtm"}) {
    std::string text = testutil::read_fixture(name);
    Machine m = read_machine(text);
    CHECK(write_machine(m) == text);
    CHECK(read_machine(write_machine(m)) == m);
  }
}

TEST_CASE("machine parse errors carry line numbers") {
  CHECK_THROWS_AS(read_machine("pushdown\n"), ParseError);
  CHECK_THROWS_AS(read_machine("rtm maybe-stay\nstart p\n"), ParseError);
  CHECK_THROWS_AS(read_machine("rtm no-stay\ntrans p a _/_ R q\n"),
                  ParseError);  // no start line
  CHECK_THROWS_AS(
      read_machine("rtm no-stay\nstart p\ntrans p a _/_ X q\n"), ParseError);
  CHECK_THROWS_AS(
      read_machine("rtm no-stay\nstart p\ntrans p a _/_ S q\n"),
      std::exception);  // stay rule in a no-stay machine
  // An ITM missing part of its transition table is rejected.
  CHECK_THROWS_AS(
      read_machine("itm\nalphabet _01\nstart q\ndelta q _ - -> q _ R -\n"),
      std::exception);
}

#include <gtest/gtest.h>

#include <string>

#include "csync/errors.hpp"
#include "csync/generators.hpp"
#include "csync/io.hpp"
#include "oracles.hpp"

using namespace csync;

namespace {

const char* kCerny3 = R"(# comment line
alphabet a b
states 3
trans 0 a 1
trans 0 b 1   # trailing comment
trans 1 a 1
trans 1 b 2
trans 2 a 2
trans 2 b 0
)";

}  // namespace

TEST(Io, ParsesDcsaWithComments) {
  const Dcsa a = parse_dcsa(kCerny3);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a, cerny(3));
}

TEST(Io, InitialAndFinalMakeAPdfa) {
  const AnyAutomaton any = parse_automaton("alphabet a b\nstates 2\nfinal 1\ntrans 0 a 1\n");
  ASSERT_TRUE(std::holds_alternative<Pdfa>(any));
  const Pdfa& b = std::get<Pdfa>(any);
  EXPECT_EQ(b.start(), 0u);
  EXPECT_TRUE(b.accepts({0}));
  EXPECT_FALSE(b.defined(0, 1));
}

TEST(Io, EmptyFinalLineIsAllowed) {
  const Pdfa b = parse_pdfa("alphabet a\nstates 1\ninitial 0\nfinal\ntrans 0 a 0\n");
  EXPECT_TRUE(b.finals().empty());
}

TEST(Io, ErrorsCarryLineNumbers) {
  try {
    parse_automaton("alphabet a b\nstates 2\ntrans 0 c 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(parse_automaton("states 2\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\nstates 1\nstates 1\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\nstates 2\ntrans 0 a 5\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\nstates 1\ntrans 0 a 0\ntrans 0 a 0\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\nstates 1\nbogus\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet ab\nstates 1\n"), ParseError);
  EXPECT_THROW(parse_automaton("alphabet a\nstates x\n"), ParseError);
  // A semi-automaton must be total.
  EXPECT_THROW(parse_automaton("alphabet a b\nstates 1\ntrans 0 a 0\n"), ParseError);
  EXPECT_THROW(parse_dcsa("alphabet a\nstates 1\nfinal 0\ntrans 0 a 0\n"), ParseError);
}

TEST(Io, MissingFileIsAParseError) {
  EXPECT_THROW(load_automaton("/nonexistent/file.aut"), ParseError);
}

TEST(Io, RoundTripRandomAutomata) {
  SplitMix64 rng(Seed{7});
  const Alphabet ab = Alphabet::of("xyz");
  for (int i = 0; i < 200; ++i) {
    const Dcsa a = oracle::random_dcsa(1 + rng.below(8), ab, rng);
    EXPECT_EQ(parse_dcsa(serialize_automaton(a, "header\nsecond line")), a);
    const Pdfa b = oracle::random_pdfa(1 + rng.below(5), ab, rng);
    const Pdfa back = parse_pdfa(serialize_automaton(b));
    EXPECT_EQ(back, b);
  }
}

TEST(Io, SerializationIsCanonical) {
  const std::string text = serialize_automaton(cerny(2), "C2");
  EXPECT_EQ(text,
            "# C2\nalphabet a b\nstates 2\ntrans 0 a 1\ntrans 0 b 1\ntrans 1 a 1\ntrans 1 b 0\n");
}

TEST(Io, FixturesLoad) {
  for (const char* name : {"cerny_3", "cerny_4", "cerny_5", "sink_cycle_6", "sink_cycle_7",
                           "case2_7_3", "fig_commutative", "fig_commutative_nonsync"}) {
    const AnyAutomaton any = load_automaton(std::string(CSYNC_FIXTURE_DIR) + "/" + name + ".aut");
    EXPECT_TRUE(std::holds_alternative<Dcsa>(any)) << name;
  }
  EXPECT_EQ(std::get<Dcsa>(load_automaton(std::string(CSYNC_FIXTURE_DIR) + "/cerny_5.aut")),
            cerny(5));
  EXPECT_EQ(std::get<Dcsa>(load_automaton(std::string(CSYNC_FIXTURE_DIR) + "/case2_7_3.aut")),
            case2_automaton(7, 3));
}

TEST(Io, DotMentionsEveryTransition) {
  const std::string dot = to_dot(cerny(3));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("2 -> 0 [label=\"b\"]"), std::string::npos);
  const Pdfa b = parse_pdfa("alphabet a b\nstates 2\nfinal 1\ntrans 0 a 1\n");
  const std::string pdot = to_dot(b);
  EXPECT_NE(pdot.find("1 [shape=doublecircle]"), std::string::npos);
  EXPECT_NE(pdot.find("__start -> 0"), std::string::npos);
  EXPECT_EQ(pdot.find("[label=\"b\"]"), std::string::npos);
}

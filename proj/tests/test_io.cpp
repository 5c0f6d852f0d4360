#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "syncheck/builtins.hpp"
#include "syncheck/decide.hpp"
#include "syncheck/io.hpp"
#include "test_util.hpp"

using namespace syncheck;
using namespace syncheck::io;

namespace {

std::string systems_dir() {
    if (const char* env = std::getenv("SYNCHECK_SYSTEMS_DIR")) return env;
    return "systems";
}

}  // namespace

TEST_CASE("the shipped example22 file parses to the built-in system") {
    const System s = load_system(systems_dir() + "/example22.sys");
    CHECK(s.name() == "example22");
    CHECK(serialize_system(s) == serialize_system(testutil::example22()));
    CHECK(decide::k_synchronizable(s, SemanticsKind::P2pFifo, 1).equal);
    CHECK_FALSE(decide::k_synchronizable(s, SemanticsKind::P2pFifo, 2).equal);
}

TEST_CASE("parse errors carry locations") {
    const char* self_loop =
        "system bad\n"
        "peers 2\n"
        "msg a 1 1\n";
    try {
        parse_system(self_loop);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
    }

    const char* foreign =
        "system bad\n"
        "peers 2\n"
        "msg a 1 2\n"
        "peer 2\n"
        "initial q0\n"
        "q0 !a q1\n"
        "end\n"
        "peer 1\n"
        "initial q0\n"
        "end\n";
    try {
        parse_system(foreign);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
        CHECK(std::string(e.what()).find("foreign") != std::string::npos);
    }

    CHECK(parse_system("peers 1\npeer 1\ninitial q0\nend\n").peer_count() == 1);
    CHECK_THROWS_AS(parse_system("system x\n"), ParseError);
    CHECK_THROWS_AS(parse_system("system x\npeers 2\nmsg a 1 2\npeer 1\ninitial q0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_system("system x\npeers 2\nmsg a 1 2\npeer 1\ninitial q0\nend\n"),
                    ParseError);  // peer 2 has no block
    CHECK_THROWS_AS(parse_system("system x\npeers 2\nmsg a 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_system("system x\npeers 2\nmsg a 1 2\nmsg a 2 1\n"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    const char* text =
        "# leading comment\n"
        "system tiny   # trailing comment\n"
        "peers 2\n"
        "\n"
        "msg a 1 2\n"
        "peer 1\n"
        "initial q0\n"
        "q0 !a q1   # a transition\n"
        "end\n"
        "peer 2\n"
        "initial q0\n"
        "q0 ?a q1\n"
        "end\n";
    const System s = parse_system(text);
    CHECK(s.name() == "tiny");
    CHECK(s.peer(0).transitions.size() == 1);
}

TEST_CASE("system round-trips through the text format") {
    for (const auto& entry : reduce::builtin_systems()) {
        const std::string text = serialize_system(entry.system);
        CHECK(serialize_system(parse_system(text)) == text);
    }
}

TEST_CASE("fifo round-trip") {
    for (const auto& entry : reduce::builtin_fifo_automata()) {
        const std::string text = serialize_fifo(entry.automaton);
        const auto reparsed = parse_fifo(text);
        CHECK(serialize_fifo(reparsed) == text);
    }
    CHECK_THROWS_AS(parse_fifo("fifo x\nalphabet a\ninitial q0\nq0 !b q1\nend\n"), ParseError);
}

TEST_CASE("tiling round-trip and validation") {
    const auto instance = reduce::singleton_tiling();
    const std::string text = serialize_tiling(instance);
    const auto reparsed = parse_tiling(text);
    CHECK(serialize_tiling(reparsed) == text);
    CHECK_THROWS_AS(parse_tiling("tiling x\ntiles t\ninitial t\nfinal t\nblank t\nend\n"),
                    ValidationError);  // (t, t) missing from H and V
}

TEST_CASE("send words print with channel suffixes") {
    const System& s = testutil::example22();
    const std::vector<LetterId> word{*s.messages().find("a"), *s.messages().find("d")};
    CHECK(format_send_word(s.messages(), word) == "a@1>2 d@2>1");
}

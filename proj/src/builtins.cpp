#include "syncheck/builtins.hpp"

#include <map>

#include "syncheck/errors.hpp"

namespace syncheck::reduce {

const char* const kMailboxPlaceholderName = "mailbox-counterexample";
const char* const kMailboxPlaceholderNote =
    "reserved: the concrete machines of this mailbox counterexample are not publicly "
    "specified, so it cannot be emitted; mailbox behaviour is covered by property tests "
    "that compare mailbox and p2p verdicts on two-peer systems";

namespace {

struct SystemBuilder {
    MessageSet messages;
    std::vector<Peer> peers;
    std::map<std::pair<PeerId, std::string>, StateId> ids;

    SystemBuilder(int np, std::vector<Letter> letters)
        : messages(np, std::move(letters)), peers(static_cast<size_t>(np)) {}

    StateId state(PeerId p, const std::string& name) {
        auto key = std::make_pair(p, name);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        Peer& peer = peers[static_cast<size_t>(p)];
        const StateId id = static_cast<StateId>(peer.state_names.size());
        peer.state_names.push_back(name);
        ids.emplace(std::move(key), id);
        return id;
    }

    void chain(PeerId p, const std::vector<std::string>& tokens) {
        // tokens like {"q0","!a","q1","?b","q2"}
        for (size_t i = 0; i + 2 < tokens.size(); i += 2) {
            const StateId from = state(p, tokens[i]);
            const StateId to = state(p, tokens[i + 2]);
            const std::string& act = tokens[i + 1];
            const LetterId letter = *messages.find(act.substr(1));
            peers[static_cast<size_t>(p)].transitions.push_back(
                {from, Action{act[0] == '!', letter}, to});
        }
    }

    System build(const std::string& name) {
        for (Peer& p : peers)
            if (p.state_names.empty()) p.state_names.push_back("q0");
        return System(messages, peers, name);
    }
};

System example22() {
    SystemBuilder b(3, {{"a", 0, 1}, {"b", 0, 2}, {"c", 2, 1}, {"d", 1, 0}});
    b.chain(0, {"q0", "!a", "q1", "!a", "q2", "!b", "q3"});
    b.chain(1, {"q0", "?a", "q1", "?a", "q2", "?c", "q3"});
    b.chain(1, {"q0", "?c", "q4", "!d", "q5"});
    b.chain(2, {"q0", "?b", "q1", "!c", "q2"});
    return b.build("example22");
}

System intro_sync() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 0, 1}});
    b.chain(0, {"q0", "!a", "q1", "!b", "q2"});
    b.chain(1, {"q0", "?a", "q1", "?b", "q2"});
    return b.build("intro-sync");
}

System intro_unsync() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 1}});
    b.chain(0, {"q0", "!a", "q1", "!b", "q2", "!c", "q3"});
    b.chain(1, {"q0", "?a", "q1", "?b", "q2"});
    return b.build("intro-unsync");
}

System p1a_idle() {
    SystemBuilder b(2, {{"a", 0, 1}});
    b.chain(0, {"q0", "!a", "q1"});
    b.state(1, "q0");
    return b.build("p1a-idle");
}

// Two counters per peer, sends and receives freely interleaved: the
// single-automaton product of !a.!a || ?b.?b against ?a.?a || !b.!b.
System genest_sync() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 1, 0}});
    auto grid = [&b](PeerId p, LetterId fwd, bool fwd_send, LetterId back) {
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) {
                const std::string name = "s" + std::to_string(i) + std::to_string(j);
                const StateId from = b.state(p, name);
                if (i < 2) {
                    const StateId to = b.state(p, "s" + std::to_string(i + 1) + std::to_string(j));
                    b.peers[static_cast<size_t>(p)].transitions.push_back(
                        {from, Action{fwd_send, fwd}, to});
                }
                if (j < 2) {
                    const StateId to = b.state(p, "s" + std::to_string(i) + std::to_string(j + 1));
                    b.peers[static_cast<size_t>(p)].transitions.push_back(
                        {from, Action{!fwd_send, back}, to});
                }
            }
    };
    grid(0, 0, true, 1);   // peer 1: sends a, receives b
    grid(1, 1, true, 0);   // peer 2: sends b, receives a
    return b.build("genest-sync");
}

System ring_pingpong() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 1, 0}});
    b.chain(0, {"q0", "!a", "q1", "?b", "q2"});
    b.chain(1, {"q0", "?a", "q1", "!b", "q2"});
    return b.build("ring-pingpong");
}

System ring_loop() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 1, 0}});
    b.chain(0, {"q0", "!a", "q1", "?b", "q0"});
    b.chain(1, {"q0", "?a", "q1", "!b", "q0"});
    return b.build("ring-loop");
}

System ring_unsync_aa() {
    SystemBuilder b(2, {{"a", 0, 1}, {"b", 1, 0}});
    b.chain(0, {"q0", "!a", "q1", "!a", "q2"});
    b.chain(1, {"q0", "?a", "q1"});
    return b.build("ring-unsync-aa");
}

System ring3_token() {
    SystemBuilder b(3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}});
    b.chain(0, {"q0", "!a", "q1", "?c", "q2"});
    b.chain(1, {"q0", "?a", "q1", "!b", "q2"});
    b.chain(2, {"q0", "?b", "q1", "!c", "q2"});
    return b.build("ring3-token");
}

System ring3_unsync() {
    SystemBuilder b(3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}});
    b.chain(0, {"q0", "!a", "q1", "!a", "q2"});
    b.chain(1, {"q0", "?a", "q1", "!b", "q2"});
    b.chain(2, {"q0", "?b", "q1", "!c", "q2"});
    return b.build("ring3-unsync");
}

FifoAutomaton example33_a() {
    FifoAutomaton a;
    a.name = "example33-A";
    a.alphabet = {"a", "m"};
    a.state_names = {"q0", "q1"};
    a.initial = 0;
    a.transitions = {
        {0, snd(0), 0},  // !a loops
        {0, snd(1), 1},  // !m commits to a dequeue
        {1, rcv(0), 0},
        {1, rcv(1), 0},
    };
    return a;
}

FifoAutomaton example33_a_noqm() {
    FifoAutomaton a = example33_a();
    a.name = "example33-A-noqm";
    a.transitions.pop_back();  // drop (q1, ?m, q0): m is never dequeued
    return a;
}

std::vector<BuiltinSystem> make_systems() {
    std::vector<BuiltinSystem> out;
    out.push_back({"example22",
                   "three peers whose d-message appears only at buffer bound 2",
                   example22(),
                   {{1, true}, {2, false}, {3, false}},
                   false,
                   std::nullopt});
    out.push_back({"intro-sync",
                   "two peers, two messages, fully rendezvous-equivalent",
                   intro_sync(),
                   {{1, true}, {2, true}, {3, true}},
                   false,
                   std::nullopt});
    out.push_back({"intro-unsync",
                   "sender with a third message nobody receives",
                   intro_unsync(),
                   {{1, false}, {2, false}},
                   false,
                   std::nullopt});
    out.push_back({"p1a-idle",
                   "one unmatched send against an idle receiver",
                   p1a_idle(),
                   {{1, false}},
                   false,
                   std::nullopt});
    out.push_back({"genest-sync",
                   "two-sided counters: !a.!a||?b.?b against ?a.?a||!b.!b",
                   genest_sync(),
                   {{1, true}, {2, true}, {3, true}},
                   true,
                   true});
    out.push_back({"ring-pingpong",
                   "one request, one reply",
                   ring_pingpong(),
                   {{1, true}, {2, true}, {3, true}},
                   true,
                   true});
    out.push_back({"ring-loop",
                   "cyclic request/reply",
                   ring_loop(),
                   {{1, true}, {2, true}, {3, true}},
                   true,
                   true});
    out.push_back({"ring-unsync-aa",
                   "two sends against a single receive",
                   ring_unsync_aa(),
                   {{1, false}, {2, false}, {3, false}},
                   true,
                   false});
    out.push_back({"ring3-token",
                   "three-peer oriented ring passing one token around",
                   ring3_token(),
                   {{1, true}, {2, true}, {3, true}},
                   true,
                   true});
    out.push_back({"ring3-unsync",
                   "three-peer ring whose first peer double-sends",
                   ring3_unsync(),
                   {{1, false}, {2, false}, {3, false}},
                   true,
                   false});
    out.push_back({"example33-sa",
                   "queue encoding of the two-letter automaton",
                   fifo_to_system(example33_a()),
                   {{1, false}},
                   false,
                   std::nullopt});
    {
        const FifoAutomaton a = example33_a();
        const LetterId m = *a.find_letter("m");
        out.push_back({"example33-sa-prime",
                       "always-receiving variant of example33-sa",
                       fifo_to_system_prime(a, m),
                       {{1, true}, {2, true}, {3, true}},
                       false,
                       std::nullopt});
        out.push_back({"example33-sa-merged",
                       "example33-sa glued with its always-receiving variant",
                       fifo_to_system_merged(a, m),
                       {{1, false}},
                       false,
                       std::nullopt});
    }
    {
        const FifoAutomaton a = example33_a_noqm();
        const LetterId m = *a.find_letter("m");
        out.push_back({"example33-sa-merged-noqm",
                       "merged encoding of the variant that never dequeues m",
                       fifo_to_system_merged(a, m),
                       {{1, true}},
                       false,
                       std::nullopt});
    }
    return out;
}

std::vector<BuiltinFifo> make_fifos() {
    std::vector<BuiltinFifo> out;
    out.push_back({"example33-A", "two letters; m commits to a dequeue", example33_a()});
    out.push_back({"example33-A-noqm", "same automaton with the ?m transition removed",
                   example33_a_noqm()});
    out.push_back({"tiling-singleton", "row encoder of the one-tile instance",
                   tiling_to_fifo(singleton_tiling())});
    return out;
}

}  // namespace

const std::vector<BuiltinSystem>& builtin_systems() {
    static const std::vector<BuiltinSystem> systems = make_systems();
    return systems;
}

const BuiltinSystem& builtin_system(std::string_view name) {
    for (const BuiltinSystem& s : builtin_systems())
        if (s.name == name) return s;
    if (name == kMailboxPlaceholderName) throw Error(kMailboxPlaceholderNote);
    throw Error("unknown built-in system '" + std::string(name) + "'");
}

const std::vector<BuiltinFifo>& builtin_fifo_automata() {
    static const std::vector<BuiltinFifo> fifos = make_fifos();
    return fifos;
}

const BuiltinFifo& builtin_fifo(std::string_view name) {
    for (const BuiltinFifo& f : builtin_fifo_automata())
        if (f.name == name) return f;
    throw Error("unknown built-in automaton '" + std::string(name) + "'");
}

TilingInstance singleton_tiling() {
    TilingInstance t;
    t.name = "singleton";
    t.tiles = {"t", "blank"};
    t.initial_tile = 0;
    t.final_tile = 0;
    t.blank = 1;
    t.horizontal = {{0, 0}, {0, 1}, {1, 1}};
    t.vertical = {{0, 0}, {0, 1}, {1, 1}};
    return t;
}

}  // namespace syncheck::reduce

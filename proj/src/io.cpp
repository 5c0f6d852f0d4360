#include "syncheck/io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "syncheck/errors.hpp"

namespace syncheck::io {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const Line& line, const std::string& tok, const char* what) {
    try {
        size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

struct TransitionLine {
    int line = 0;
    std::string from, act, to;
};

Action parse_action_token(int line, const std::string& tok,
                          const std::function<std::optional<LetterId>(std::string_view)>& find) {
    if (tok.size() < 2 || (tok[0] != '!' && tok[0] != '?'))
        throw ParseError(line, "expected !LETTER or ?LETTER, got '" + tok + "'");
    auto id = find(tok.substr(1));
    if (!id) throw ParseError(line, "unknown letter '" + tok.substr(1) + "'");
    return Action{tok[0] == '!', *id};
}

}  // namespace

System parse_system(std::string_view text) {
    const auto lines = tokenize(text);
    std::string name = "system";
    int peer_count = -1;
    std::vector<Letter> letters;
    std::map<std::string, int> letter_lines;

    struct PeerBlock {
        int line = 0;
        std::string initial;
        int initial_line = 0;
        std::vector<TransitionLine> transitions;
    };
    std::vector<PeerBlock> blocks;
    int current = -1;  // open peer block, -1 when outside

    for (const Line& line : lines) {
        const auto& t = line.tokens;
        const std::string& head = t[0];
        if (head == "system") {
            if (t.size() != 2) throw ParseError(line.number, "usage: system NAME");
            name = t[1];
        } else if (head == "peers") {
            if (t.size() != 2) throw ParseError(line.number, "usage: peers N");
            peer_count = parse_int(line, t[1], "a peer count");
            if (peer_count < 1) throw ParseError(line.number, "peer count must be positive");
            blocks.resize(static_cast<size_t>(peer_count));
        } else if (head == "msg") {
            if (t.size() != 4) throw ParseError(line.number, "usage: msg LETTER SRC DST");
            if (peer_count < 0) throw ParseError(line.number, "msg before peers");
            const int src = parse_int(line, t[2], "a peer id");
            const int dst = parse_int(line, t[3], "a peer id");
            if (src < 1 || src > peer_count || dst < 1 || dst > peer_count)
                throw ParseError(line.number, "peer id out of range");
            if (src == dst)
                throw ParseError(line.number,
                                 "self-loop channel: letter '" + t[1] +
                                     "' has equal source and destination");
            if (!letter_lines.emplace(t[1], line.number).second)
                throw ParseError(line.number, "duplicate letter '" + t[1] + "'");
            letters.push_back({t[1], src - 1, dst - 1});
        } else if (head == "peer") {
            if (t.size() != 2) throw ParseError(line.number, "usage: peer I");
            if (peer_count < 0) throw ParseError(line.number, "peer before peers");
            if (current >= 0) throw ParseError(line.number, "previous peer block not closed");
            const int id = parse_int(line, t[1], "a peer id");
            if (id < 1 || id > peer_count) throw ParseError(line.number, "peer id out of range");
            current = id - 1;
            if (blocks[static_cast<size_t>(current)].line)
                throw ParseError(line.number, "duplicate block for peer " + t[1]);
            blocks[static_cast<size_t>(current)].line = line.number;
        } else if (head == "initial") {
            if (t.size() != 2) throw ParseError(line.number, "usage: initial STATE");
            if (current < 0) throw ParseError(line.number, "initial outside a peer block");
            auto& block = blocks[static_cast<size_t>(current)];
            if (!block.initial.empty())
                throw ParseError(line.number, "duplicate initial state");
            block.initial = t[1];
            block.initial_line = line.number;
        } else if (head == "end") {
            if (t.size() != 1) throw ParseError(line.number, "usage: end");
            if (current < 0) throw ParseError(line.number, "end outside a peer block");
            if (blocks[static_cast<size_t>(current)].initial.empty())
                throw ParseError(line.number, "peer block has no initial state");
            current = -1;
        } else {
            if (t.size() != 3)
                throw ParseError(line.number, "expected STATE !LETTER STATE");
            if (current < 0)
                throw ParseError(line.number, "transition outside a peer block");
            blocks[static_cast<size_t>(current)].transitions.push_back(
                {line.number, t[0], t[1], t[2]});
        }
    }
    if (current >= 0) throw ParseError(0, "unterminated peer block");
    if (peer_count < 0) throw ParseError(0, "missing peers directive");
    for (int i = 0; i < peer_count; ++i)
        if (!blocks[static_cast<size_t>(i)].line)
            throw ParseError(0, "no block for peer " + std::to_string(i + 1));

    MessageSet messages(peer_count, letters);
    std::vector<Peer> peers;
    for (int i = 0; i < peer_count; ++i) {
        const PeerBlock& block = blocks[static_cast<size_t>(i)];
        Peer peer;
        std::map<std::string, StateId> ids;
        auto state = [&](const std::string& s) {
            auto it = ids.find(s);
            if (it != ids.end()) return it->second;
            const StateId id = static_cast<StateId>(peer.state_names.size());
            peer.state_names.push_back(s);
            ids.emplace(s, id);
            return id;
        };
        peer.initial = state(block.initial);
        for (const TransitionLine& tl : block.transitions) {
            const Action action = parse_action_token(
                tl.line, tl.act, [&](std::string_view n) { return messages.find(n); });
            if (messages.peer_of(action) != i)
                throw ParseError(tl.line, "foreign action: peer " + std::to_string(i + 1) +
                                              " cannot perform " + tl.act);
            peer.transitions.push_back({state(tl.from), action, state(tl.to)});
        }
        peers.push_back(std::move(peer));
    }
    return System(std::move(messages), std::move(peers), name);
}

System load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_system(buffer.str());
}

std::string serialize_system(const System& system) {
    std::ostringstream out;
    out << "system " << system.name() << "\n";
    out << "peers " << system.peer_count() << "\n";
    for (const Letter& l : system.messages().letters())
        out << "msg " << l.name << " " << l.src + 1 << " " << l.dst + 1 << "\n";
    for (PeerId i = 0; i < system.peer_count(); ++i) {
        const Peer& p = system.peer(i);
        out << "peer " << i + 1 << "\n";
        out << "initial " << p.state_names[static_cast<size_t>(p.initial)] << "\n";
        for (const PeerTransition& t : p.transitions)
            out << p.state_names[static_cast<size_t>(t.from)] << " "
                << system.messages().action_token(t.action) << " "
                << p.state_names[static_cast<size_t>(t.to)] << "\n";
        out << "end\n";
    }
    return out.str();
}

reduce::FifoAutomaton parse_fifo(std::string_view text) {
    const auto lines = tokenize(text);
    reduce::FifoAutomaton a;
    a.name = "fifo";
    std::map<std::string, StateId> ids;
    std::string initial_name;
    bool ended = false;
    auto state = [&](const std::string& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        const StateId id = static_cast<StateId>(a.state_names.size());
        a.state_names.push_back(s);
        ids.emplace(s, id);
        return id;
    };
    for (const Line& line : lines) {
        const auto& t = line.tokens;
        const std::string& head = t[0];
        if (head == "fifo") {
            if (t.size() != 2) throw ParseError(line.number, "usage: fifo NAME");
            a.name = t[1];
        } else if (head == "alphabet") {
            if (t.size() < 2) throw ParseError(line.number, "usage: alphabet LETTER...");
            a.alphabet.assign(t.begin() + 1, t.end());
        } else if (head == "initial") {
            if (t.size() != 2) throw ParseError(line.number, "usage: initial STATE");
            initial_name = t[1];
            state(initial_name);
        } else if (head == "end") {
            ended = true;
        } else {
            if (t.size() != 3) throw ParseError(line.number, "expected STATE !LETTER STATE");
            const Action action = parse_action_token(
                line.number, t[1], [&](std::string_view n) { return a.find_letter(n); });
            a.transitions.push_back({state(t[0]), action, state(t[2])});
        }
    }
    if (!ended) throw ParseError(0, "missing end directive");
    if (initial_name.empty()) throw ParseError(0, "missing initial directive");
    a.initial = ids.at(initial_name);
    a.validate();
    return a;
}

reduce::FifoAutomaton load_fifo(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_fifo(buffer.str());
}

std::string serialize_fifo(const reduce::FifoAutomaton& a) {
    std::ostringstream out;
    out << "fifo " << a.name << "\n";
    out << "alphabet";
    for (const std::string& l : a.alphabet) out << " " << l;
    out << "\n";
    out << "initial " << a.state_names[static_cast<size_t>(a.initial)] << "\n";
    for (const PeerTransition& t : a.transitions)
        out << a.state_names[static_cast<size_t>(t.from)] << " "
            << (t.action.send ? "!" : "?") << a.alphabet[static_cast<size_t>(t.action.letter)]
            << " " << a.state_names[static_cast<size_t>(t.to)] << "\n";
    out << "end\n";
    return out.str();
}

reduce::TilingInstance parse_tiling(std::string_view text) {
    const auto lines = tokenize(text);
    reduce::TilingInstance instance;
    auto tile = [&instance](const Line& line, const std::string& t) {
        for (size_t i = 0; i < instance.tiles.size(); ++i)
            if (instance.tiles[i] == t) return static_cast<int>(i);
        throw ParseError(line.number, "unknown tile '" + t + "'");
    };
    bool ended = false;
    for (const Line& line : lines) {
        const auto& t = line.tokens;
        const std::string& head = t[0];
        if (head == "tiling") {
            if (t.size() != 2) throw ParseError(line.number, "usage: tiling NAME");
            instance.name = t[1];
        } else if (head == "tiles") {
            if (t.size() < 2) throw ParseError(line.number, "usage: tiles TILE...");
            instance.tiles.assign(t.begin() + 1, t.end());
        } else if (head == "initial") {
            if (t.size() != 2) throw ParseError(line.number, "usage: initial TILE");
            instance.initial_tile = tile(line, t[1]);
        } else if (head == "final") {
            if (t.size() != 2) throw ParseError(line.number, "usage: final TILE");
            instance.final_tile = tile(line, t[1]);
        } else if (head == "blank") {
            if (t.size() != 2) throw ParseError(line.number, "usage: blank TILE");
            instance.blank = tile(line, t[1]);
        } else if (head == "h" || head == "v") {
            if (t.size() != 3) throw ParseError(line.number, "usage: h|v TILE TILE");
            auto& set = head == "h" ? instance.horizontal : instance.vertical;
            set.emplace(tile(line, t[1]), tile(line, t[2]));
        } else if (head == "end") {
            ended = true;
        } else {
            throw ParseError(line.number, "unknown directive '" + head + "'");
        }
    }
    if (!ended) throw ParseError(0, "missing end directive");
    instance.validate();
    return instance;
}

reduce::TilingInstance load_tiling(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tiling(buffer.str());
}

std::string serialize_tiling(const reduce::TilingInstance& instance) {
    std::ostringstream out;
    out << "tiling " << instance.name << "\n";
    out << "tiles";
    for (const std::string& t : instance.tiles) out << " " << t;
    out << "\n";
    out << "initial " << instance.tiles[static_cast<size_t>(instance.initial_tile)] << "\n";
    out << "final " << instance.tiles[static_cast<size_t>(instance.final_tile)] << "\n";
    out << "blank " << instance.tiles[static_cast<size_t>(instance.blank)] << "\n";
    for (const auto& [a, b] : instance.horizontal)
        out << "h " << instance.tiles[static_cast<size_t>(a)] << " "
            << instance.tiles[static_cast<size_t>(b)] << "\n";
    for (const auto& [a, b] : instance.vertical)
        out << "v " << instance.tiles[static_cast<size_t>(a)] << " "
            << instance.tiles[static_cast<size_t>(b)] << "\n";
    out << "end\n";
    return out.str();
}

std::string format_send_word(const MessageSet& messages, std::span<const LetterId> word) {
    std::string out;
    for (LetterId a : word) {
        if (!out.empty()) out += ' ';
        out += messages.display(a);
    }
    return out;
}

}  // namespace syncheck::io

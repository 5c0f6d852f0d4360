// syncheck command line: synchronizability and stability checks for systems
// of communicating finite state machines, plus the construction pipeline.
//
// Exit codes: 0 property holds / success, 1 property fails (witness printed),
// 2 usage or input error, 3 precondition violated.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "syncheck/builtins.hpp"
#include "syncheck/decide.hpp"
#include "syncheck/errors.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/io.hpp"
#include "syncheck/props.hpp"
#include "syncheck/trace.hpp"

using namespace syncheck;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kPrecondition = 3;

struct CommonOptions {
    std::string file;
    std::string semantics = "p2p";
    int k = 1;
    bool language_only = false;
    int depth = 10;
    std::size_t max_states = 1'000'000;
    bool as_json = false;
    std::string dot_path;
};

SemanticsKind semantics_of(const CommonOptions& opt) {
    auto kind = semantics_from_string(opt.semantics);
    if (!kind) throw ParseError(0, "unknown semantics '" + opt.semantics + "'");
    return *kind;
}

explore::Limits limits_of(const CommonOptions& opt) { return {opt.max_states}; }

System load(const CommonOptions& opt) {
    if (opt.file.empty()) throw ParseError(0, "missing --file");
    return io::load_system(opt.file);
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_k = true) {
    cmd->add_option("--file", opt.file, "system description file");
    cmd->add_option("--semantics", opt.semantics, "p2p|mailbox|bag")
        ->check(CLI::IsMember({"p2p", "mailbox", "bag"}));
    if (with_k) cmd->add_option("--k", opt.k, "buffer bound");
    cmd->add_option("--depth", opt.depth, "trace depth for bounded searches");
    cmd->add_option("--max-states", opt.max_states, "exploration state ceiling");
    cmd->add_flag("--json", opt.as_json, "machine-readable output");
    cmd->add_option("--dot", opt.dot_path, "write the explored graph as DOT");
}

void emit(const CommonOptions& opt, const std::string& command, const std::string& verdict,
          const std::optional<std::string>& witness, std::size_t states, std::size_t edges) {
    if (opt.as_json) {
        json out;
        out["command"] = command;
        out["verdict"] = verdict;
        if (witness) out["witness"] = *witness;
        out["stats"] = {{"states", states},
                        {"edges", edges},
                        {"k", opt.k},
                        {"semantics", opt.semantics}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << verdict;
        if (witness) std::cout << ": " << *witness;
        std::cout << "\n";
    }
}

int sync_exit(const CommonOptions& opt, const std::string& command,
              const decide::SyncVerdict& verdict, const System& system) {
    std::optional<std::string> witness;
    if (verdict.witness) {
        witness = io::format_send_word(system.messages(), verdict.witness->send_word);
        if (verdict.witness->stable_config)
            *witness += " at " + explore::format_configuration(
                                     system, verdict.semantics, *verdict.witness->stable_config);
    }
    emit(opt, command, verdict.equal ? "equal" : "not-equal", witness, verdict.states,
         verdict.edges);
    return verdict.equal ? kOk : kFails;
}

void maybe_dot(const CommonOptions& opt, const explore::BoundedLts& lts) {
    if (opt.dot_path.empty()) return;
    std::ofstream out(opt.dot_path);
    if (!out) throw Error("cannot write '" + opt.dot_path + "'");
    explore::write_dot(out, lts);
}

int run_check_ksync(const CommonOptions& opt) {
    const System system = load(opt);
    const auto verdict = decide::k_synchronizable(system, semantics_of(opt), opt.k,
                                                  opt.language_only, limits_of(opt));
    return sync_exit(opt, "check k-sync", verdict, system);
}

int run_check_ringsync(const CommonOptions& opt) {
    const System system = load(opt);
    const auto verdict = decide::ring_synchronizable(system, limits_of(opt));
    return sync_exit(opt, "check ring-sync", verdict, system);
}

int run_check_stable(const CommonOptions& opt) {
    const System system = load(opt);
    const auto kind = semantics_of(opt);
    const auto lhs = explore::send_lts(system, kind, opt.k, limits_of(opt));
    const auto rhs = explore::send_lts(system, kind, opt.k + 1, limits_of(opt));
    const bool similar = decide::branching_bisimilar(lhs, rhs);
    emit(opt, "check stable", similar ? "bisimilar" : "not-bisimilar", std::nullopt,
         rhs.states.size(), rhs.edges.size());
    return similar ? kOk : kFails;
}

int run_check_strong_stable(const CommonOptions& opt) {
    const System system = load(opt);
    const bool stable =
        decide::strongly_k_stable(system, semantics_of(opt), opt.k, limits_of(opt));
    emit(opt, "check strong-stable", stable ? "stable" : "unstable", std::nullopt, 0, 0);
    return stable ? kOk : kFails;
}

int run_explore(const CommonOptions& opt) {
    const System system = load(opt);
    const auto lts = explore::build_lts(system, semantics_of(opt), opt.k, limits_of(opt));
    maybe_dot(opt, lts);
    const auto report = explore::deadlocks(lts);
    const std::string verdict = report.deadlocked.empty() ? "deadlock-free" : "deadlocks";
    std::optional<std::string> detail;
    if (!report.deadlocked.empty())
        detail = explore::format_configuration(lts, report.deadlocked.front());
    emit(opt, "explore", verdict, detail, lts.states.size(), lts.edges.size());
    return kOk;
}

int run_reach(const CommonOptions& opt) {
    const System system = load(opt);
    const auto reach = decide::reach_representation(system, limits_of(opt));
    if (opt.as_json) {
        json out;
        out["command"] = "reach";
        out["verdict"] = "representable";
        json bases = json::array();
        for (const Configuration& base : reach.base)
            bases.push_back(
                explore::format_configuration(system, SemanticsKind::P2pFifo, base));
        out["bases"] = bases;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "representable with " << reach.base.size() << " stable base(s)\n";
        for (const Configuration& base : reach.base)
            std::cout << "  "
                      << explore::format_configuration(system, SemanticsKind::P2pFifo, base)
                      << "\n";
    }
    return kOk;
}

int run_drain(const CommonOptions& opt) {
    const System system = load(opt);
    const auto lts = explore::build_lts(system, semantics_of(opt), opt.k, limits_of(opt));
    const auto report = explore::drainable_to_stable(lts);
    std::optional<std::string> detail;
    if (!report.all_drainable)
        detail = explore::format_configuration(lts, report.stuck.front().state) + " holds " +
                 report.stuck.front().buffers;
    emit(opt, "drain", report.all_drainable ? "drainable" : "stuck", detail,
         lts.states.size(), lts.edges.size());
    return report.all_drainable ? kOk : kFails;
}

int run_trace_run(const CommonOptions& opt, const std::string& trace_text) {
    const System system = load(opt);
    const auto kind = semantics_of(opt);
    const Trace trace = traces::parse_tokens(system.messages(), trace_text);
    const RunResult result = run(system, kind, trace);
    if (!result.ok) {
        emit(opt, "trace run", "not-executable",
             "index " + std::to_string(result.failed_index), 0, 0);
        return kFails;
    }
    std::string where;
    for (const Configuration& c : result.configurations()) {
        if (!where.empty()) where += " | ";
        where += explore::format_configuration(system, kind, c);
    }
    emit(opt, "trace run", "executable", where, 0, 0);
    return kOk;
}

int run_trace_equiv(const CommonOptions& opt, const std::string& lhs_text,
                    const std::string& rhs_text) {
    const System system = load(opt);
    const MessageSet& m = system.messages();
    const Trace lhs = traces::parse_tokens(m, lhs_text);
    const Trace rhs = traces::parse_tokens(m, rhs_text);
    const bool causal = traces::causally_equivalent(m, lhs, rhs);
    const bool sys = traces::system_equivalent(system, semantics_of(opt), lhs, rhs);
    emit(opt, "trace equiv", causal ? "causally-equivalent" : "not-causally-equivalent",
         std::string(sys ? "system-equivalent" : "not-system-equivalent"), 0, 0);
    return causal ? kOk : kFails;
}

int run_trace_normalize(const CommonOptions& opt, const std::string& trace_text) {
    const System system = load(opt);
    const Trace trace = traces::parse_tokens(system.messages(), trace_text);
    const Trace normalized = decide::normalize_trace(system, trace, limits_of(opt));
    emit(opt, "trace normalize", "normalized",
         traces::to_tokens(system.messages(), normalized), 0, 0);
    return kOk;
}

int run_trace_exists_kbounded(const CommonOptions& opt, const std::string& trace_text) {
    const System system = load(opt);
    const Trace trace = traces::parse_tokens(system.messages(), trace_text);
    const auto witness = traces::exists_equiv_k_bounded(system.messages(), trace, opt.k);
    if (!witness) {
        emit(opt, "trace exists-kbounded", "absent", std::nullopt, 0, 0);
        return kFails;
    }
    emit(opt, "trace exists-kbounded", "present",
         traces::to_tokens(system.messages(), *witness), 0, 0);
    return kOk;
}

int run_generate(const std::string& what, const std::string& file, const std::string& special,
                 const std::string& output) {
    std::string text;
    if (what == "tiling-fifo") {
        const auto instance = io::load_tiling(file);
        text = io::serialize_fifo(reduce::tiling_to_fifo(instance));
    } else {
        const auto automaton = io::load_fifo(file);
        if (what == "fifo-system") {
            text = io::serialize_system(reduce::fifo_to_system(automaton));
        } else {
            const auto letter = automaton.find_letter(special);
            if (!letter)
                throw ParseError(0, "--m letter '" + special + "' is not in the alphabet");
            text = io::serialize_system(what == "fifo-system-prime"
                                            ? reduce::fifo_to_system_prime(automaton, *letter)
                                            : reduce::fifo_to_system_merged(automaton, *letter));
        }
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw Error("cannot write '" + output + "'");
        out << text;
    }
    return kOk;
}

int run_examples_list() {
    for (const auto& entry : reduce::builtin_systems())
        std::cout << entry.name << "  (" << entry.description << ")\n";
    for (const auto& entry : reduce::builtin_fifo_automata())
        std::cout << entry.name << "  [fifo]  (" << entry.description << ")\n";
    std::cout << reduce::kMailboxPlaceholderName << "  [unavailable]  ("
              << reduce::kMailboxPlaceholderNote << ")\n";
    return kOk;
}

int run_examples_emit(const std::string& name) {
    for (const auto& entry : reduce::builtin_fifo_automata())
        if (entry.name == name) {
            std::cout << io::serialize_fifo(entry.automaton);
            return kOk;
        }
    try {
        std::cout << io::serialize_system(reduce::builtin_system(name).system);
    } catch (const Error& e) {
        throw ParseError(0, e.what());  // unknown or unavailable entry: input error
    }
    return kOk;
}

int run_verify_lemmas(const CommonOptions& opt) {
    using props::CheckResult;
    std::vector<CheckResult> results;

    for (const auto& entry : reduce::builtin_systems()) {
        results.push_back(props::shuffle_projection_dichotomy(entry.system.messages()));
        results.back().name += " [" + entry.name + "]";
        if (!decide::k_synchronizable(entry.system, SemanticsKind::P2pFifo, 1).equal) continue;
        for (CheckResult r : {props::send_send_diamond(entry.system, opt.depth),
                              props::same_source_lifting(entry.system, opt.depth, 3),
                              props::generalized_diamond(entry.system, opt.depth / 2, 2)}) {
            r.name += " [" + entry.name + "]";
            results.push_back(std::move(r));
        }
        if (entry.ring) {
            for (CheckResult r : {props::normalization_roundtrip(entry.system, 2, opt.depth),
                                  props::reach_and_drain(entry.system, 3)}) {
                r.name += " [" + entry.name + "]";
                results.push_back(std::move(r));
            }
        }
    }

    const auto& a = reduce::builtin_fifo("example33-A").automaton;
    const LetterId m = *a.find_letter("m");
    for (int k : {1, 2}) {
        auto r = props::encoding_correspondence(a, k, opt.depth);
        r.name += " [example33-A k=" + std::to_string(k) + "]";
        results.push_back(std::move(r));
    }
    results.push_back(props::prime_sync_traces(a, m, opt.depth));
    results.push_back(props::relay_rewrite(a, m, opt.depth));
    results.push_back(props::merged_reception_equiv(a, m, 1, 12));
    const auto& noqm = reduce::builtin_fifo("example33-A-noqm").automaton;
    {
        auto r = props::merged_reception_equiv(noqm, *noqm.find_letter("m"), 1, 12);
        r.name += " [noqm]";
        results.push_back(std::move(r));
    }
    results.push_back(props::observable_union(a, m, 1));

    bool all_ok = true;
    for (const CheckResult& r : results) {
        all_ok &= r.ok;
        std::cout << (r.ok ? "pass" : "FAIL") << "  " << r.name << "  (" << r.cases
                  << " cases)";
        if (!r.ok) std::cout << "  " << r.detail;
        std::cout << "\n";
    }
    return all_ok ? kOk : kFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synchronizability checking for communicating finite state machines"};
    app.require_subcommand(1);
    CommonOptions opt;

    auto* check = app.add_subcommand("check", "decision procedures");
    check->require_subcommand(1);
    auto* ksync =
        check->add_subcommand("k-sync", "compare the k-bounded observable with rendezvous");
    add_common(ksync, opt);
    ksync->add_flag("--language-only", opt.language_only, "ignore stable configurations");
    auto* ringsync =
        check->add_subcommand("ring-sync", "full synchronizability on oriented rings");
    add_common(ringsync, opt, false);
    auto* stable =
        check->add_subcommand("stable", "branching bisimilarity of send views at k and k+1");
    add_common(stable, opt);
    auto* strong = check->add_subcommand("strong-stable", "all traces k-bounded");
    add_common(strong, opt);

    auto* explore_cmd = app.add_subcommand("explore", "bounded state-space construction");
    add_common(explore_cmd, opt);
    auto* reach = app.add_subcommand("reach", "regular reachability representation (rings)");
    add_common(reach, opt, false);
    auto* drain = app.add_subcommand("drain", "receive-only paths to stable configurations");
    add_common(drain, opt);

    std::string trace_text, trace_text2;
    auto* trace_cmd = app.add_subcommand("trace", "operations on traces");
    trace_cmd->require_subcommand(1);
    auto* trun = trace_cmd->add_subcommand("run", "execute a trace");
    add_common(trun, opt);
    trun->add_option("trace", trace_text, "trace tokens, e.g. '!a ?a'")->required();
    auto* tequiv = trace_cmd->add_subcommand("equiv", "causal and system equivalence");
    add_common(tequiv, opt);
    tequiv->add_option("lhs", trace_text, "first trace")->required();
    tequiv->add_option("rhs", trace_text2, "second trace")->required();
    auto* tnorm = trace_cmd->add_subcommand("normalize", "rendezvous prefix plus sends");
    add_common(tnorm, opt);
    tnorm->add_option("trace", trace_text, "trace tokens")->required();
    auto* tbound =
        trace_cmd->add_subcommand("exists-kbounded", "equivalent k-bounded reordering");
    add_common(tbound, opt);
    tbound->add_option("trace", trace_text, "trace tokens")->required();

    std::string gen_file, gen_m, gen_out;
    auto* generate = app.add_subcommand("generate", "construction pipeline");
    generate->require_subcommand(1);
    for (const char* what :
         {"tiling-fifo", "fifo-system", "fifo-system-prime", "fifo-system-merged"}) {
        auto* sub = generate->add_subcommand(what);
        sub->add_option("--file", gen_file, "input description")->required();
        sub->add_option("--m", gen_m, "special letter");
        sub->add_option("-o,--output", gen_out, "output path (default stdout)");
    }

    std::string example_name;
    auto* examples = app.add_subcommand("examples", "built-in systems and automata");
    examples->require_subcommand(1);
    examples->add_subcommand("list", "list registry entries");
    auto* emit_cmd = examples->add_subcommand("emit", "print a registry entry");
    emit_cmd->add_option("name", example_name, "registry name")->required();

    auto* verify = app.add_subcommand("verify", "property suites");
    verify->require_subcommand(1);
    auto* lemmas = verify->add_subcommand("lemmas", "run the confluence and encoding suites");
    add_common(lemmas, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (ksync->parsed()) return run_check_ksync(opt);
        if (ringsync->parsed()) return run_check_ringsync(opt);
        if (stable->parsed()) return run_check_stable(opt);
        if (strong->parsed()) return run_check_strong_stable(opt);
        if (explore_cmd->parsed()) return run_explore(opt);
        if (reach->parsed()) return run_reach(opt);
        if (drain->parsed()) return run_drain(opt);
        if (trace_cmd->parsed()) {
            if (trun->parsed()) return run_trace_run(opt, trace_text);
            if (tequiv->parsed()) return run_trace_equiv(opt, trace_text, trace_text2);
            if (tnorm->parsed()) return run_trace_normalize(opt, trace_text);
            if (tbound->parsed()) return run_trace_exists_kbounded(opt, trace_text);
        }
        if (generate->parsed())
            return run_generate(generate->get_subcommands().front()->get_name(), gen_file,
                                gen_m, gen_out);
        if (examples->parsed()) {
            if (emit_cmd->parsed()) return run_examples_emit(example_name);
            return run_examples_list();
        }
        if (verify->parsed()) return run_verify_lemmas(opt);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const StateLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFails;
    }
    return kUsage;
}

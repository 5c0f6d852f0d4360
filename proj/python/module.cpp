#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "syncheck/builtins.hpp"
#include "syncheck/decide.hpp"
#include "syncheck/explore.hpp"
#include "syncheck/io.hpp"
#include "syncheck/trace.hpp"

namespace py = pybind11;
using namespace syncheck;

namespace {

SemanticsKind kind_of(const std::string& name) {
    auto kind = semantics_from_string(name);
    if (!kind) throw py::value_error("unknown semantics '" + name + "'");
    return *kind;
}

py::dict verdict_dict(const System& system, const decide::SyncVerdict& verdict) {
    py::dict out;
    out["equal"] = verdict.equal;
    out["states"] = verdict.states;
    out["edges"] = verdict.edges;
    out["k"] = verdict.k;
    out["semantics"] = std::string(to_string(verdict.semantics));
    if (verdict.witness) {
        out["witness"] = io::format_send_word(system.messages(), verdict.witness->send_word);
        if (verdict.witness->stable_config)
            out["witness_config"] = explore::format_configuration(
                system, verdict.semantics, *verdict.witness->stable_config);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "synchronizability checks for communicating finite state machines";

    py::register_exception<PreconditionError>(m, "PreconditionError");

    py::class_<System>(m, "System")
        .def_property_readonly("name", &System::name)
        .def_property_readonly("peer_count", &System::peer_count)
        .def("__repr__", [](const System& s) {
            return "<System '" + s.name() + "' with " + std::to_string(s.peer_count()) +
                   " peers>";
        });

    m.def("parse_system", [](const std::string& text) { return io::parse_system(text); },
          py::arg("text"));
    m.def("serialize_system", &io::serialize_system, py::arg("system"));
    m.def("builtin_names", [] {
        std::vector<std::string> names;
        for (const auto& entry : reduce::builtin_systems()) names.push_back(entry.name);
        return names;
    });
    m.def("builtin_system",
          [](const std::string& name) { return reduce::builtin_system(name).system; },
          py::arg("name"));

    m.def(
        "k_synchronizable",
        [](const System& system, int k, const std::string& semantics, bool language_only) {
            return verdict_dict(system,
                                decide::k_synchronizable(system, kind_of(semantics), k,
                                                         language_only));
        },
        py::arg("system"), py::arg("k"), py::arg("semantics") = "p2p",
        py::arg("language_only") = false);

    m.def(
        "ring_synchronizable",
        [](const System& system) {
            return verdict_dict(system, decide::ring_synchronizable(system));
        },
        py::arg("system"));

    m.def(
        "strongly_k_stable",
        [](const System& system, int k, const std::string& semantics) {
            return decide::strongly_k_stable(system, kind_of(semantics), k);
        },
        py::arg("system"), py::arg("k"), py::arg("semantics") = "p2p");

    m.def(
        "stable_bisimilar",
        [](const System& system, int k, const std::string& semantics) {
            const auto kind = kind_of(semantics);
            return decide::branching_bisimilar(explore::send_lts(system, kind, k),
                                               explore::send_lts(system, kind, k + 1));
        },
        py::arg("system"), py::arg("k"), py::arg("semantics") = "p2p");

    m.def(
        "run_trace",
        [](const System& system, const std::string& tokens, const std::string& semantics) {
            const auto kind = kind_of(semantics);
            const Trace trace = traces::parse_tokens(system.messages(), tokens);
            const RunResult result = run(system, kind, trace);
            py::dict out;
            out["ok"] = result.ok;
            if (!result.ok) {
                out["failed_index"] = result.failed_index;
            } else {
                std::vector<std::string> configs;
                for (const Configuration& c : result.configurations())
                    configs.push_back(explore::format_configuration(system, kind, c));
                out["configurations"] = configs;
            }
            return out;
        },
        py::arg("system"), py::arg("trace"), py::arg("semantics") = "p2p");

    m.def(
        "normalize_trace",
        [](const System& system, const std::string& tokens) {
            const Trace trace = traces::parse_tokens(system.messages(), tokens);
            return traces::to_tokens(system.messages(),
                                     decide::normalize_trace(system, trace));
        },
        py::arg("system"), py::arg("trace"));

    m.def(
        "exists_equiv_k_bounded",
        [](const System& system, const std::string& tokens,
           int k) -> std::optional<std::string> {
            const Trace trace = traces::parse_tokens(system.messages(), tokens);
            const auto witness =
                traces::exists_equiv_k_bounded(system.messages(), trace, k);
            if (!witness) return std::nullopt;
            return traces::to_tokens(system.messages(), *witness);
        },
        py::arg("system"), py::arg("trace"), py::arg("k"));

    m.def(
        "causally_equivalent",
        [](const System& system, const std::string& lhs, const std::string& rhs) {
            const MessageSet& messages = system.messages();
            return traces::causally_equivalent(messages,
                                               traces::parse_tokens(messages, lhs),
                                               traces::parse_tokens(messages, rhs));
        },
        py::arg("system"), py::arg("lhs"), py::arg("rhs"));
}

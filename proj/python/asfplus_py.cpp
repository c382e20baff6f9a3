#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asfplus/diagram.hpp"
#include "asfplus/macro_expand.hpp"
#include "asfplus/normalizer.hpp"
#include "asfplus/prove_db.hpp"
#include "asfplus/syntax.hpp"

namespace py = pybind11;
using namespace asfplus;

namespace {

using Files = std::vector<std::pair<std::string, std::string>>;

AsfSpec load(const Files& files, const std::string& top) {
    std::vector<SourceFile> src;
    for (const auto& [name, text] : files) src.push_back({name, text});
    AsfSpec spec = parse_specification(src);
    if (!top.empty()) spec.top = top;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_asfplus, m) {
    m.doc() = "ASF+ parser, macro expander, normalizer and diagram emitter";

    static PyObject* exc = py::exception<NormError>(m, "NormError").release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NormError& e) {
            PyErr_SetString(exc, e.diagnostic().c_str());
        }
    });

    m.def(
        "check",
        [](const Files& files) {
            AsfSpec spec = load(files, {});
            NormOptions o;
            o.skip_semantic = true;
            Normalizer n(spec, ProveDb{}, o);
            std::vector<std::string> names;
            for (const auto& mod : spec.modules) {
                n.nf(mod.name);
                names.push_back(mod.name);
            }
            return names;
        },
        py::arg("files"), "Parses and checks every module; returns the module names.");

    m.def(
        "normalize",
        [](const Files& files, const std::string& top, const std::string& provedb, bool expand_macros,
           bool disambiguate) {
            AsfSpec spec = load(files, top);
            return normal_form(spec, ProveDb::parse(provedb), {}, expand_macros, disambiguate).text;
        },
        py::arg("files"), py::arg("top") = "", py::arg("provedb") = "", py::arg("expand_macros") = false,
        py::arg("disambiguate") = false, "Returns the printed normal form of the top module.");

    m.def(
        "expand",
        [](const std::string& text) {
            Module9 mod = parse_module(text);
            return print_module(expand_module(mod));
        },
        py::arg("text"), "Expands the macro-equations of a single module.");

    m.def(
        "diagram",
        [](const Files& files, const std::string& top, const std::string& format, bool expanded, bool names) {
            AsfSpec spec = load(files, top);
            NormOptions o;
            o.skip_semantic = true;
            Normalizer n(spec, ProveDb{}, o);
            auto tree = structure_tree(n.nf(spec.top), n.bind_log(), {expanded, names});
            return format == "ascii" ? emit_ascii(tree) : emit_dot(tree);
        },
        py::arg("files"), py::arg("top") = "", py::arg("format") = "dot", py::arg("expanded") = false,
        py::arg("names") = false);

    m.def(
        "parse_module", [](const std::string& text) { return print_module(parse_module(text)); }, py::arg("text"),
        "Parses one module and prints it back in canonical layout.");
    m.def(
        "print_module", [](const std::string& text) { return print_module(parse_module(text, {true})); },
        py::arg("text"));

    m.def(
        "fingerprint",
        [](const Files& files, const std::string& module, const std::string& label) -> std::optional<std::string> {
            AsfSpec spec = load(files, {});
            auto g = find_goal(spec, module, label);
            if (!g) return std::nullopt;
            return clause_fingerprint(*g);
        },
        py::arg("files"), py::arg("module"), py::arg("label"));
}

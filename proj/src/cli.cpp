#include "asfplus/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "asfplus/diagram.hpp"
#include "asfplus/macro_expand.hpp"
#include "asfplus/normalizer.hpp"
#include "asfplus/prove_db.hpp"
#include "asfplus/syntax.hpp"

namespace asfplus {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<SourceFile> read_sources(const std::vector<std::string>& paths) {
    std::vector<SourceFile> out;
    for (const auto& p : paths) {
        std::stringstream ss;
        if (p == "-") {
            ss << std::cin.rdbuf();
            out.push_back({"<stdin>", ss.str()});
            continue;
        }
        std::ifstream in(p);
        if (!in) throw UsageError("cannot read " + p);
        ss << in.rdbuf();
        out.push_back({p, ss.str()});
    }
    return out;
}

std::string digest_of(const std::vector<SourceFile>& files) {
    std::string all;
    for (const auto& f : files) all += f.text + '\n';
    return content_digest(all);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

struct Config {
    std::vector<std::string> files;
    std::string top;
    std::string module;
    std::string provedb;
    std::string output;
    std::string format = "dot";
    bool expand_macros = false;
    bool disambiguate = false;
    bool expanded = false;
    bool names = false;
    std::string goal_module;
    std::string goal_label;
    std::string proof_ref;
};

AsfSpec load_spec(const Config& c) {
    if (c.files.empty()) throw UsageError("no input files");
    AsfSpec spec = parse_specification(read_sources(c.files));
    if (!c.top.empty()) {
        if (!spec.find(c.top)) throw NormError(ErrKind::Spec, "unknown top module " + c.top);
        spec.top = c.top;
    }
    return spec;
}

std::string provedb_path(const Config& c, const std::string& top) {
    if (!c.provedb.empty()) return c.provedb;
    if (const char* env = std::getenv("ASFPLUS_PROVEDB"); env && *env) return env;
    std::filesystem::path dir = c.files.empty() || c.files[0] == "-" ? std::filesystem::path(".")
                                                                      : std::filesystem::path(c.files[0]).parent_path();
    return (dir / (top + ".provedb")).string();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"asfplus: parse, expand, normalize and draw ASF+ specifications", "asfplus"};
    app.require_subcommand(1);
    Config c;

    auto files_opt = [&](CLI::App* s) { s->add_option("files", c.files, "specification files (- for stdin)"); };
    auto top_opt = [&](CLI::App* s) { s->add_option("--top", c.top, "top module (default: first module)"); };
    auto db_opt = [&](CLI::App* s) { s->add_option("--provedb", c.provedb, "prove-db path (env ASFPLUS_PROVEDB)"); };

    auto* check = app.add_subcommand("check", "parse and check every module");
    files_opt(check);
    top_opt(check);

    auto* normalize = app.add_subcommand("normalize", "compute the normal form of the top module");
    files_opt(normalize);
    top_opt(normalize);
    db_opt(normalize);
    normalize->add_flag("--expand-macros", c.expand_macros, "expand macro-equations in the result");
    normalize->add_flag("--disambiguate", c.disambiguate, "print argument sorts of every function");
    normalize->add_option("-o,--output", c.output, "output file (default <top>.nf.asfp, - for stdout)");

    auto* expand = app.add_subcommand("expand", "expand the macro-equations of one module");
    files_opt(expand);
    top_opt(expand);
    expand->add_option("-m,--module", c.module, "module to expand (default: top)");
    expand->add_option("-o,--output", c.output, "output file (default stdout)");

    auto* diagram = app.add_subcommand("diagram", "emit the structure diagram of the top module");
    files_opt(diagram);
    top_opt(diagram);
    db_opt(diagram);
    diagram->add_option("--format", c.format, "dot or ascii")->check(CLI::IsMember({"dot", "ascii"}));
    diagram->add_flag("--expanded", c.expanded, "draw direct imports of bound modules as separate boxes");
    diagram->add_flag("--names", c.names, "add public/private/hidden name columns");
    diagram->add_option("-o,--output", c.output, "output file (default <top>.dot or <top>.txt, - for stdout)");

    auto* goals = app.add_subcommand("goals", "list goals with their proof status");
    files_opt(goals);
    top_opt(goals);
    db_opt(goals);

    auto* prove = app.add_subcommand("prove", "maintain the prove-db");
    prove->require_subcommand(1);
    auto* record = prove->add_subcommand("record", "record a proof of a goal");
    record->add_option("module", c.goal_module, "module declaring the goal")->required();
    record->add_option("label", c.goal_label, "goal label")->required();
    files_opt(record);
    top_opt(record);
    db_opt(record);
    record->add_option("--proof-ref", c.proof_ref, "reference to the proof")->required();
    auto* list = prove->add_subcommand("list", "list recorded proofs");
    files_opt(list);
    top_opt(list);
    db_opt(list);
    auto* validate = prove->add_subcommand("validate", "report records whose goal changed or vanished");
    files_opt(validate);
    top_opt(validate);
    db_opt(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        int rc = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return rc == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            AsfSpec spec = load_spec(c);
            NormOptions o;
            o.skip_semantic = true;
            Normalizer n(spec, ProveDb{}, o);
            for (const auto& m : spec.modules) n.nf(m.name);
            out << "ok: " << spec.modules.size() << " module(s)\n";
        } else if (normalize->parsed()) {
            AsfSpec spec = load_spec(c);
            ProveDb db = ProveDb::load(provedb_path(c, spec.top));
            auto r = normal_form(spec, db, {}, c.expand_macros, c.disambiguate);
            write_output(c.output.empty() ? spec.top + ".nf.asfp" : c.output, r.text, out);
        } else if (expand->parsed()) {
            AsfSpec spec = load_spec(c);
            const Module9& m = module_text(c.module.empty() ? spec.top : c.module, spec);
            Module9 x = expand_module(m);
            write_output(c.output.empty() ? "-" : c.output, print_module(x, {false, spec.abbrevs}), out);
        } else if (diagram->parsed()) {
            AsfSpec spec = load_spec(c);
            ProveDb db = ProveDb::load(provedb_path(c, spec.top));
            NormOptions o;
            o.skip_semantic = true;
            Normalizer n(spec, db, o);
            NormalFormTriple t = n.nf(spec.top);
            DiagramTree tree = structure_tree(t, n.bind_log(), {c.expanded, c.names});
            bool dot = c.format == "dot";
            std::string text = dot ? emit_dot(tree) : emit_ascii(tree);
            write_output(c.output.empty() ? spec.top + (dot ? ".dot" : ".txt") : c.output, text, out);
        } else if (goals->parsed()) {
            AsfSpec spec = load_spec(c);
            ProveDb db = ProveDb::load(provedb_path(c, spec.top));
            for (const auto& m : spec.modules)
                for (const auto& g : m.goals) {
                    if (!g.label) continue;
                    auto resolved = find_goal(spec, m.name, g.label->text);
                    bool ok = resolved && db.is_proven(m.name, g.label->text, *resolved);
                    out << m.name << "\t" << g.label->text << "\t" << (ok ? "proven" : "unproven") << "\n";
                }
        } else if (record->parsed()) {
            AsfSpec spec = load_spec(c);
            std::vector<SourceFile> src = read_sources(c.files);
            std::string path = provedb_path(c, spec.top);
            ProveDb db = ProveDb::load(path);
            db.record(c.goal_module, c.goal_label, find_goal(spec, c.goal_module, c.goal_label), c.proof_ref,
                      digest_of(src));
            db.store(path);
            out << "recorded " << c.goal_module << "/" << c.goal_label << " in " << path << "\n";
        } else if (list->parsed()) {
            std::string path = provedb_path(c, c.top.empty() && !c.files.empty() ? load_spec(c).top : c.top);
            ProveDb db = ProveDb::load(path);
            for (const auto& r : db.records())
                out << r.module << "\t" << r.label << "\t" << r.fingerprint << "\t" << r.proof_ref << "\t"
                    << r.timestamp << "\n";
        } else if (validate->parsed()) {
            AsfSpec spec = load_spec(c);
            ProveDb db = ProveDb::load(provedb_path(c, spec.top));
            auto stale = db.stale([&](const std::string& m, const std::string& l) { return find_goal(spec, m, l); });
            for (const auto& r : stale) out << "stale\t" << r.module << "\t" << r.label << "\n";
            if (!stale.empty()) return 1;
            out << "ok: " << db.records().size() << " record(s) valid\n";
        }
    } catch (const NormError& e) {
        err << e.diagnostic() << "\n";
        return 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace asfplus

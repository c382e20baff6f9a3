#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "asfplus/normalizer.hpp"
#include "asfplus/prove_db.hpp"
#include "asfplus/syntax.hpp"

#ifndef ASFPLUS_CORPUS_DIR
#define ASFPLUS_CORPUS_DIR "tests/corpus"
#endif
#ifndef ASFPLUS_GOLDEN_DIR
#define ASFPLUS_GOLDEN_DIR "tests/golden"
#endif

namespace testsupport {

using namespace asfplus;

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> f{"booleans.asfp",     "naturals.asfp", "ordnaturals.asfp",
                                            "sequences.asfp",    "ordsequences.asfp", "integers.asfp",
                                            "ordnatsequences.asfp", "seqofseq.asfp", "nat3.asfp"};
    return f;
}

inline std::vector<SourceFile> corpus_sources(const std::vector<std::string>& names = corpus_files()) {
    std::vector<SourceFile> out;
    for (const auto& n : names) out.push_back({n, slurp(std::string(ASFPLUS_CORPUS_DIR) + "/" + n)});
    return out;
}

inline AsfSpec corpus(const std::string& top, const std::vector<std::string>& names = corpus_files()) {
    AsfSpec s = parse_specification(corpus_sources(names));
    s.top = top;
    return s;
}

inline ProveDb corpus_db() { return ProveDb::load(std::string(ASFPLUS_CORPUS_DIR) + "/corpus.provedb"); }

// ---- random hierarchies without renaming or binding ----

struct GenDecl {
    std::string name;
    bool sort = true;
    std::string of;  // constant: its sort (declared in the same module)
    bool pub = true;
};

struct GenImport {
    int module = 0;
    std::vector<std::pair<std::string, bool>> vf;  // name, public?
};

struct GenModule {
    std::vector<GenDecl> decls;
    std::vector<GenImport> imports;
};

struct Hierarchy {
    std::vector<GenModule> modules;

    static std::string mname(int i) { return "M" + std::to_string(i); }

    std::string text() const {
        std::ostringstream os;
        for (int i = static_cast<int>(modules.size()) - 1; i >= 0; --i) {
            const auto& m = modules[i];
            os << "module " << mname(i) << "\nshort S" << i << "\n{\n";
            for (const auto& imp : m.imports) {
                os << "   import " << mname(imp.module) << " {";
                std::vector<std::string> pub, priv, parts;
                for (const auto& [n, p] : imp.vf) (p ? pub : priv).push_back(n);
                auto list = [&](const char* head, const std::vector<std::string>& v) {
                    if (v.empty()) return;
                    std::string s = std::string(head) + ": ";
                    for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
                    parts.push_back(s);
                };
                list("public", pub);
                list("private", priv);
                for (size_t k = 0; k < parts.size(); ++k) os << (k ? "; " : " ") << parts[k];
                os << " }\n";
            }
            if (!m.decls.empty()) {
                os << "   add signature\n   {\n";
                for (bool pub : {true, false}) {
                    std::vector<const GenDecl*> sorts, cons;
                    for (const auto& d : m.decls)
                        if (d.pub == pub) (d.sort ? sorts : cons).push_back(&d);
                    if (sorts.empty() && cons.empty()) continue;
                    os << (pub ? "      public:\n" : "      private:\n");
                    if (!sorts.empty()) {
                        os << "         sorts\n            ";
                        for (size_t k = 0; k < sorts.size(); ++k) os << (k ? ", " : "") << sorts[k]->name;
                        os << "\n";
                    }
                    if (!cons.empty()) {
                        os << "         constructors\n";
                        for (const auto* c : cons) os << "            " << c->name << " : -> " << c->of << "\n";
                    }
                }
                os << "   }\n";
            }
            os << "}\n\n";
        }
        return os.str();
    }

    AsfSpec spec() const {
        AsfSpec s = parse_specification({{"gen.asfp", text()}});
        s.top = mname(static_cast<int>(modules.size()) - 1);
        return s;
    }
};

inline Hierarchy random_hierarchy(std::mt19937& rng, int max_modules = 4, int pool = 5) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const char* names[] = {"a", "b", "c", "d", "e"};
    Hierarchy h;
    std::vector<std::vector<std::string>> exported;  // public names, assuming no error below
    int n = pick(1, max_modules);
    for (int i = 0; i < n; ++i) {
        GenModule m;
        std::vector<int> idx(pool);
        for (int k = 0; k < pool; ++k) idx[k] = k;
        std::shuffle(idx.begin(), idx.end(), rng);
        int nd = pick(0, 2);
        for (int k = 0; k < nd; ++k) {
            GenDecl d;
            d.name = names[idx[k]];
            d.pub = pick(0, 3) != 0;
            if (k == 1 && m.decls[0].sort && pick(0, 1)) {
                d.sort = false;
                d.of = m.decls[0].name;
            }
            m.decls.push_back(d);
        }
        std::vector<std::string> out;
        for (const auto& d : m.decls)
            if (d.pub) out.push_back(d.name);
        if (i > 0) {
            int ni = pick(0, 2);
            for (int k = 0; k < ni; ++k) {
                GenImport imp;
                imp.module = pick(0, i - 1);
                std::vector<std::string> cand = exported[imp.module];
                if (cand.empty() || pick(0, 5) == 0)
                    for (int q = 0; q < pool; ++q) cand.push_back(names[q]);
                std::sort(cand.begin(), cand.end());
                cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
                std::shuffle(cand.begin(), cand.end(), rng);
                int nv = std::min<int>(pick(0, 3), cand.size());
                for (int q = 0; q < nv; ++q) {
                    bool pub = pick(0, 2) != 0;
                    imp.vf.emplace_back(cand[q], pub);
                    if (pub) out.push_back(cand[q]);
                }
                m.imports.push_back(imp);
            }
        }
        exported.push_back(out);
        h.modules.push_back(m);
    }
    return h;
}

// ---- identification-rule oracle ----
// An object is identified by its defining module and its user name; a name
// clash arises whenever two different objects carry the same visible name in
// one scope, an export conflict when one object is imported public and private.

enum class Verdict { Accept, Clash, Spec };

struct OracleObject {
    int module;
    std::string name;
    bool sort;
    auto operator<=>(const OracleObject&) const = default;
};

enum class OVis { Public, Private, Hidden };

struct Oracle {
    const Hierarchy& h;
    std::map<int, std::map<OracleObject, OVis>> done;

    // Returns Accept and fills done[i], or the first failure in evaluation order.
    Verdict eval(int i) {
        if (done.count(i)) return Verdict::Accept;
        const auto& m = h.modules[i];
        std::vector<std::map<OracleObject, OVis>> parts;
        for (const auto& imp : m.imports) {
            if (Verdict v = eval(imp.module); v != Verdict::Accept) return v;
            const auto& src = done[imp.module];
            std::map<std::string, bool> vf;
            for (const auto& [n, p] : imp.vf) {
                bool ok = false;
                for (const auto& [o, v] : src)
                    if (o.name == n && v == OVis::Public) ok = true;
                if (!ok) return Verdict::Spec;
                vf[n] = p;
            }
            std::map<OracleObject, OVis> part;
            for (const auto& [o, v] : src) {
                OVis nv = OVis::Hidden;
                if (v == OVis::Public && vf.count(o.name)) nv = vf[o.name] ? OVis::Public : OVis::Private;
                part[o] = nv;
            }
            parts.push_back(std::move(part));
        }
        std::map<OracleObject, OVis> merged;
        for (const auto& part : parts)
            for (const auto& [o, nv] : part) {
                auto [it, fresh] = merged.emplace(o, nv);
                if (fresh || it->second == nv) continue;
                if (it->second == OVis::Hidden)
                    it->second = nv;
                else if (nv != OVis::Hidden)
                    return Verdict::Clash;
            }
        std::map<std::string, int> visible;
        for (const auto& [o, v] : merged)
            if (v != OVis::Hidden) ++visible[o.name];
        for (const auto& [n, c] : visible)
            if (c > 1) return Verdict::Clash;
        for (const auto& d : m.decls) {
            if (visible.count(d.name)) return Verdict::Clash;
            merged[OracleObject{i, d.name, d.sort}] = d.pub ? OVis::Public : OVis::Private;
        }
        done[i] = std::move(merged);
        return Verdict::Accept;
    }
};

inline Verdict oracle_verdict(const Hierarchy& h) {
    Oracle o{h, {}};
    return o.eval(static_cast<int>(h.modules.size()) - 1);
}

inline Verdict nf_verdict(const AsfSpec& spec, ErrKind* kind = nullptr) {
    try {
        nf(spec.top, spec, ProveDb{});
        return Verdict::Accept;
    } catch (const NormError& e) {
        if (kind) *kind = e.kind;
        return e.kind == ErrKind::NameClash || e.kind == ErrKind::Export ? Verdict::Clash : Verdict::Spec;
    }
}

// ---- transitive reduction oracle over depf ----

inline std::set<std::pair<std::string, std::string>> reduction_oracle(const DepFunc& depf) {
    std::vector<ModInstName> nodes;
    for (const auto& [n, d] : depf) {
        nodes.push_back(n);
        for (const auto& x : d) nodes.push_back(x);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    size_t n = nodes.size();
    auto id = [&](const ModInstName& x) { return std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin(); };
    // r[p][c]: p contains c
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto& [c, ps] : depf)
        for (const auto& p : ps)
            if (p != c) r[id(p)][id(c)] = true;
    auto t = r;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (t[i][k] && t[k][j]) t[i][j] = true;
    std::set<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!r[i][j]) continue;
            bool via = false;
            for (size_t k = 0; k < n; ++k)
                if (k != i && k != j && t[i][k] && t[k][j]) via = true;
            if (!via) out.emplace(nodes[i].render(), nodes[j].render());
        }
    return out;
}

// ---- structural comparison of normal forms ----

inline bool same_nf(const NormalFormTriple& a, const NormalFormTriple& b) {
    return canonical(a.module) == canonical(b.module) && a.originf == b.originf && a.depf == b.depf;
}

inline AsfSpec with_permuted_imports(AsfSpec s, std::mt19937& rng) {
    for (auto& m : s.modules) std::shuffle(m.imports.begin(), m.imports.end(), rng);
    return s;
}

}  // namespace testsupport

#include "asfplus/core_model.hpp"

#include <algorithm>
#include <sstream>

namespace asfplus {

std::string Pos::str() const {
    std::ostringstream os;
    os << (file.empty() ? "<input>" : file);
    if (known()) os << ':' << line << ':' << col;
    return os.str();
}

std::string ModInstName::render() const {
    if (insts.empty()) return module;
    std::string s = module + "[";
    for (size_t i = 0; i < insts.size(); ++i) {
        if (i) s += ',';
        s += insts[i];
    }
    return s + "]";
}

ModInstName ModInstName::parse(const std::string& text) {
    ModInstName n;
    auto lb = text.find('[');
    if (lb == std::string::npos || text.back() != ']') {
        n.module = text;
        return n;
    }
    n.module = text.substr(0, lb);
    std::string body = text.substr(lb + 1, text.size() - lb - 2);
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            n.insts.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) n.insts.push_back(cur);
    return n;
}

SpecName SpecName::hidden_in(ModInstName n, std::string uname) {
    SpecName s(std::move(uname));
    s.ns = std::move(n);
    return s;
}

std::string SpecName::debug() const {
    return ns ? ns->render() + "-" + text : text;
}

std::string DisambName::debug() const {
    std::string s = name.debug();
    if (sortv.empty()) return s;
    s += '[';
    for (size_t i = 0; i < sortv.size(); ++i) {
        if (i) s += ',';
        s += sortv[i].debug();
    }
    return s + ']';
}

const char* to_string(SymType t) {
    switch (t) {
    case SymType::Label: return "label";
    case SymType::Variable: return "variable";
    case SymType::Sort: return "sort";
    case SymType::Function: return "function";
    }
    return "?";
}

const char* to_string(Visibility v) {
    switch (v) {
    case Visibility::Parameter: return "parameter";
    case Visibility::Public: return "public";
    case Visibility::Private: return "private";
    case Visibility::Hidden: return "hidden";
    }
    return "?";
}

const char* error_code(ErrKind k) {
    switch (k) {
    case ErrKind::Spec: return "E-SPEC";
    case ErrKind::NameClash: return "E-NAMECLASH";
    case ErrKind::Export: return "E-EXPORT";
    case ErrKind::Semantic: return "E-SEM";
    case ErrKind::Lex: return "E-LEX";
    case ErrKind::Parse: return "E-PARSE";
    case ErrKind::Expansion: return "E-EXPAND";
    case ErrKind::Format: return "E-FORMAT";
    case ErrKind::UnknownGoal: return "E-GOAL";
    }
    return "E-?";
}

const char* error_term(ErrKind k) {
    switch (k) {
    case ErrKind::Spec: return "SPEZIFIKATIONSFEHLER";
    case ErrKind::NameClash: return "NAMENSKONFLIKT";
    case ErrKind::Export: return "EXPORTIERBARKEITS-KONFLIKT";
    case ErrKind::Semantic: return "SEMANTIC ERROR";
    case ErrKind::Lex: return "LEXFEHLER";
    case ErrKind::Parse: return "SYNTAXFEHLER";
    case ErrKind::Expansion: return "EXPANSIONSFEHLER";
    case ErrKind::Format: return "FORMATFEHLER";
    case ErrKind::UnknownGoal: return "UNBEKANNTES BEWEISZIEL";
    }
    return "?";
}

const char* error_gloss(ErrKind k) {
    switch (k) {
    case ErrKind::Spec: return "specification error";
    case ErrKind::NameClash: return "name clash";
    case ErrKind::Export: return "exportability conflict";
    case ErrKind::Semantic: return "unproven parameter condition";
    case ErrKind::Lex: return "lexical error";
    case ErrKind::Parse: return "syntax error";
    case ErrKind::Expansion: return "macro expansion error";
    case ErrKind::Format: return "malformed prove-db record";
    case ErrKind::UnknownGoal: return "unknown goal";
    }
    return "?";
}

std::string NormError::diagnostic() const {
    std::ostringstream os;
    os << pos.str() << ": " << error_code(kind) << ' ' << error_term(kind) << ": " << what() << " ("
       << error_gloss(kind) << ")";
    for (const auto& it : items) os << "\n  " << it;
    return os.str();
}

Term Term::var(SpecName n, SpecName sort) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    t.sort = std::move(sort);
    return t;
}

Term Term::app(SpecName n, std::vector<Term> args) {
    Term t;
    t.name = std::move(n);
    t.args = std::move(args);
    return t;
}

bool Term::operator==(const Term& o) const {
    return kind == o.kind && name == o.name && sortv == o.sortv && sort == o.sort && args == o.args &&
           infix == o.infix;
}

std::vector<std::string> ParamSig::names() const {
    std::vector<std::string> out;
    for (const auto& s : sorts) out.push_back(s.name.text);
    for (const auto& f : funcs)
        if (std::find(out.begin(), out.end(), f.name.name.text) == out.end()) out.push_back(f.name.name.text);
    return out;
}

static Signature sig_of(const Module9& m, Block b) {
    Signature s;
    for (const auto& d : m.sorts)
        if (d.block == b) s.sorts.push_back(d.name);
    for (const auto& f : m.funcs)
        if (f.block == b) (f.constructor ? s.cons : s.noncons).push_back(f);
    return s;
}

Signature Module9::public_sig() const { return sig_of(*this, Block::Public); }
Signature Module9::private_sig() const { return sig_of(*this, Block::Private); }

std::map<SpecName, SpecName> Module9::varsort(bool constructor) const {
    std::map<SpecName, SpecName> out;
    for (const auto& v : vars)
        if (v.constructor == constructor) out[v.name] = v.sort;
    return out;
}

bool Module9::operator==(const Module9& o) const {
    return name == o.name && short_name == o.short_name && header_params == o.header_params &&
           imports == o.imports && params == o.params && sorts == o.sorts && funcs == o.funcs &&
           vars == o.vars && equations == o.equations && goals == o.goals;
}

// ---- helper calculus ----

static std::string abbrev_of(const AbbrevTable& abbrevs, const std::string& module) {
    auto it = abbrevs.find(module);
    return it == abbrevs.end() ? module : it->second;
}

std::string short_modinst_name(const ModInstName& n, const AbbrevTable& abbrevs,
                               std::map<std::string, ModInstName>& in_use) {
    std::string bare = abbrev_of(abbrevs, n.module);
    auto it = in_use.find(bare);
    std::string out = bare;
    if (it != in_use.end() && it->second != n) {
        ModInstName s{bare, n.insts};
        out = s.render();
    }
    in_use.emplace(out, n);
    return out;
}

SpecName get_spec_name(const Origin& o) {
    if (o.vis == Visibility::Hidden) return SpecName::hidden_in(o.modiname, o.uname);
    return SpecName(o.uname);
}

template <class T>
static void append_unique(std::vector<T>& dst, const std::vector<T>& src) {
    for (const auto& x : src)
        if (std::find(dst.begin(), dst.end(), x) == dst.end()) dst.push_back(x);
}

Module9 module_union(const std::vector<Module9>& mods) {
    Module9 u;
    for (const auto& m : mods) {
        append_unique(u.imports, m.imports);
        append_unique(u.params, m.params);
        append_unique(u.sorts, m.sorts);
        append_unique(u.funcs, m.funcs);
        append_unique(u.vars, m.vars);
        append_unique(u.equations, m.equations);
        append_unique(u.goals, m.goals);
    }
    return u;
}

std::map<DisambName, SpecName> get_renaming(const OriginFunc& of, const SymTypes& types) {
    std::map<DisambName, SpecName> ren;
    for (const auto& [d, o] : of) {
        if (!types.count(o.type)) continue;
        SpecName want = get_spec_name(o);
        if (want != d.name) ren.emplace(d, want);
    }
    return ren;
}

bool references_same_object(const DisambName& d1, const OriginFunc& of1, const DisambName& d2,
                            const OriginFunc& of2) {
    auto a = of1.find(d1);
    auto b = of2.find(d2);
    if (a == of1.end() || b == of2.end()) return false;
    const Origin& o1 = a->second;
    const Origin& o2 = b->second;
    if (o1.uname != o2.uname || o1.modiname != o2.modiname || o1.type != o2.type) return false;
    if (d1.sortv.size() != d2.sortv.size()) return false;
    for (size_t i = 0; i < d1.sortv.size(); ++i)
        if (!references_same_object({d1.sortv[i], {}}, of1, {d2.sortv[i], {}}, of2)) return false;
    return true;
}

DepFunc combine_dependencies(const std::vector<DepFunc>& dfs) {
    DepFunc out;
    for (const auto& df : dfs)
        for (const auto& [n, deps] : df) out[n].insert(deps.begin(), deps.end());
    return out;
}

// ---- traversal ----

static void msort(SpecName& s, const NameMap& m) {
    if (m.sort && !s.empty()) m.sort(s);
}

void map_names(Term& t, const NameMap& m) {
    if (t.is_var()) {
        if (m.var) m.var(t.name);
        msort(t.sort, m);
        return;
    }
    for (auto& a : t.args) map_names(a, m);
    for (auto& s : t.sortv) msort(s, m);
    msort(t.sort, m);
    if (m.func) m.func(t.name, t.sortv);
}

void map_names(Eq& e, const NameMap& m) {
    map_names(e.lhs, m);
    map_names(e.rhs, m);
}

void map_names(Clause& c, const NameMap& m) {
    if (c.label && m.label) m.label(*c.label);
    for (auto& e : c.ante) map_names(e, m);
    for (auto& e : c.succ) map_names(e, m);
}

void map_names(MBody& b, const NameMap& m) {
    if (b.kind == MBody::Kind::Leaf) map_names(b.leaf, m);
    for (auto& cs : b.conds)
        for (auto& c : cs) {
            if (c.match) {
                map_names(c.var, m);
                map_names(c.pattern, m);
            } else {
                map_names(c.eq, m);
            }
        }
    for (auto& s : b.sub) map_names(s, m);
}

void map_names(FuncDecl& d, const NameMap& m) {
    for (auto& s : d.name.sortv) msort(s, m);
    msort(d.target, m);
    if (m.func) m.func(d.name.name, d.name.sortv);
}

void map_names(ParamSig& p, const NameMap& m) {
    for (auto& s : p.sorts) msort(s.name, m);
    for (auto& f : p.funcs) map_names(f, m);
    for (auto& c : p.conditions) map_names(c, m);
}

void map_names(Module9& mod, const NameMap& m) {
    for (auto& p : mod.params) map_names(p, m);
    for (auto& s : mod.sorts) msort(s.name, m);
    for (auto& f : mod.funcs) map_names(f, m);
    for (auto& v : mod.vars) {
        if (m.var) m.var(v.name);
        msort(v.sort, m);
    }
    for (auto& item : mod.equations) {
        if (auto* e = std::get_if<Equation>(&item)) {
            if (e->label && m.label) m.label(*e->label);
            map_names(e->eq, m);
            for (auto& c : e->pos_conds) map_names(c, m);
            for (auto& c : e->neg_conds) map_names(c, m);
        } else {
            auto& me = std::get<MacroEquation>(item);
            map_names(me.head, m);
            map_names(me.body, m);
        }
    }
    for (auto& g : mod.goals) map_names(g, m);
}

void visit_names(const Module9& mod, const std::function<void(const SpecName&, SymType)>& f) {
    Module9 copy = mod;
    NameMap m;
    m.sort = [&](SpecName& s) { f(s, SymType::Sort); };
    m.var = [&](SpecName& s) { f(s, SymType::Variable); };
    m.label = [&](SpecName& s) { f(s, SymType::Label); };
    m.func = [&](SpecName& s, const std::vector<SpecName>&) { f(s, SymType::Function); };
    map_names(copy, m);
}

void map_hidden_ns(Module9& mod, const std::function<void(ModInstName&)>& f) {
    auto g = [&](SpecName& s) {
        if (s.ns) f(*s.ns);
    };
    NameMap m;
    m.sort = g;
    m.var = g;
    m.label = g;
    m.func = [&](SpecName& s, const std::vector<SpecName>&) { g(s); };
    map_names(mod, m);
}

std::set<ModInstName> hidden_namespaces(const Module9& m) {
    std::set<ModInstName> out;
    visit_names(m, [&](const SpecName& s, SymType) {
        if (s.ns) out.insert(*s.ns);
    });
    return out;
}

RenderCtx::RenderCtx(const AbbrevTable& abbrevs, const std::set<ModInstName>& namespaces)
    : abbrevs_(abbrevs) {
    for (const auto& n : namespaces) {
        bool shared = false;
        for (const auto& o : namespaces)
            if (o != n && o.module == n.module) shared = true;
        std::string bare = abbrev_of(abbrevs, n.module);
        prefixes_[n] = (n.insts.empty() || !shared) ? bare : ModInstName{bare, n.insts}.render();
    }
}

RenderCtx RenderCtx::for_module(const Module9& m, const AbbrevTable& abbrevs) {
    return RenderCtx(abbrevs, hidden_namespaces(m));
}

std::string RenderCtx::prefix(const ModInstName& n) const {
    auto it = prefixes_.find(n);
    if (it != prefixes_.end()) return it->second;
    return ModInstName{abbrev_of(abbrevs_, n.module), n.insts}.render();
}

std::string RenderCtx::name(const SpecName& s) const {
    if (!s.ns) return s.text;
    return prefix(*s.ns) + "-" + s.text;
}

Module9 rendered(const Module9& m, const RenderCtx& ctx) {
    Module9 out = m;
    auto g = [&](SpecName& s) {
        if (s.ns) s = SpecName(ctx.name(s));
    };
    NameMap nm;
    nm.sort = g;
    nm.var = g;
    nm.label = g;
    nm.func = [&](SpecName& s, const std::vector<SpecName>&) { g(s); };
    map_names(out, nm);
    return out;
}

}  // namespace asfplus

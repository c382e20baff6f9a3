#include <map>
#include <set>

#include "asfplus/syntax.hpp"

namespace asfplus {

namespace {

struct Scope {
    std::multimap<SpecName, const FuncDecl*> funcs;
    std::set<SpecName> sorts;
    std::map<SpecName, const VarDecl*> vars;

    void add(const Module9& m, bool with_vars) {
        for (const auto& f : m.funcs) funcs.emplace(f.name.name, &f);
        for (const auto& s : m.sorts) sorts.insert(s.name);
        for (const auto& p : m.params) {
            for (const auto& f : p.funcs) funcs.emplace(f.name.name, &f);
            for (const auto& s : p.sorts) sorts.insert(s.name);
        }
        if (with_vars)
            for (const auto& v : m.vars) vars.emplace(v.name, &v);
    }

    [[noreturn]] static void fail(const std::string& msg, const Pos& p) { throw NormError(ErrKind::Spec, msg, p); }

    static std::string sig_text(const SpecName& f, const std::vector<SpecName>& sv) {
        std::string s = f.debug() + "(";
        for (size_t i = 0; i < sv.size(); ++i) s += (i ? "," : "") + sv[i].debug();
        return s + ")";
    }

    void term(Term& t) const {
        if (t.kind == Term::Kind::App && t.args.empty() && !t.annotated && vars.count(t.name)) t.kind = Term::Kind::Var;
        if (t.is_var()) {
            auto it = vars.find(t.name);
            if (it == vars.end()) fail("undeclared variable " + t.name.debug(), t.pos);
            t.sort = it->second->sort;
            t.sortv.clear();
            return;
        }
        std::vector<SpecName> argsorts;
        for (auto& a : t.args) {
            term(a);
            argsorts.push_back(a.sort);
        }
        if (t.annotated && t.sortv != argsorts)
            fail("annotation of " + sig_text(t.name, t.sortv) + " does not match its arguments", t.pos);
        const FuncDecl* hit = nullptr;
        auto [lo, hi] = funcs.equal_range(t.name);
        for (auto it = lo; it != hi; ++it)
            if (it->second->name.sortv == argsorts) {
                if (hit && hit->target != it->second->target)
                    fail("ambiguous declaration for " + sig_text(t.name, argsorts), t.pos);
                hit = it->second;
            }
        if (!hit) fail("no declaration matches " + sig_text(t.name, argsorts), t.pos);
        t.sortv = argsorts;
        t.sort = hit->target;
    }

    void eq(Eq& e) const {
        term(e.lhs);
        if (e.implicit_true) {
            bool ok = false;
            auto [lo, hi] = funcs.equal_range(e.rhs.name);
            for (auto it = lo; it != hi; ++it)
                if (it->second->name.sortv.empty()) ok = true;
            if (!ok) fail("bare term " + e.lhs.name.debug() + " needs a visible 'true'", e.lhs.pos);
        }
        term(e.rhs);
        if (e.lhs.sort != e.rhs.sort)
            fail("equation sides have different sorts (" + e.lhs.sort.debug() + " vs " + e.rhs.sort.debug() + ")",
                 e.lhs.pos);
    }

    void clause(Clause& c) const {
        for (auto& e : c.ante) eq(e);
        for (auto& e : c.succ) eq(e);
    }

    void body(MBody& b, const SpecName& target) const {
        if (b.kind == MBody::Kind::Leaf) {
            term(b.leaf);
            if (b.leaf.sort != target)
                fail("macro leaf has sort " + b.leaf.sort.debug() + ", expected " + target.debug(), b.leaf.pos);
        }
        for (auto& cs : b.conds)
            for (auto& c : cs) {
                if (c.match) {
                    if (!vars.count(c.var.name)) fail("match condition on non-variable " + c.var.name.debug(), c.var.pos);
                    term(c.var);
                    term(c.pattern);
                    if (c.var.sort != c.pattern.sort)
                        fail("match pattern sort differs from variable sort", c.pattern.pos);
                } else {
                    eq(c.eq);
                }
            }
        for (auto& s : b.sub) body(s, target);
    }
};

}  // namespace

void resolve_module(Module9& m, const Module9* ctx) {
    Scope sc;
    sc.add(m, true);
    if (ctx) sc.add(*ctx, false);
    for (auto& p : m.params)
        for (auto& c : p.conditions) sc.clause(c);
    for (auto& item : m.equations) {
        if (auto* e = std::get_if<Equation>(&item)) {
            sc.eq(e->eq);
            for (auto& c : e->pos_conds) sc.eq(c);
            for (auto& c : e->neg_conds) sc.eq(c);
        } else {
            auto& me = std::get<MacroEquation>(item);
            sc.term(me.head);
            sc.body(me.body, me.head.sort);
        }
    }
    for (auto& g : m.goals) sc.clause(g);
}

void check_signature(const Module9& m, const Module9* ctx) {
    Scope sc;
    sc.add(m, true);
    if (ctx) sc.add(*ctx, false);
    std::map<DisambName, const FuncDecl*> seen;
    auto check_decl = [&](const FuncDecl& f) {
        for (const auto& s : f.name.sortv)
            if (!sc.sorts.count(s)) Scope::fail("undeclared sort " + s.debug() + " in declaration of " + f.name.debug(), f.pos);
        if (!sc.sorts.count(f.target))
            Scope::fail("undeclared sort " + f.target.debug() + " in declaration of " + f.name.debug(), f.pos);
        auto [it, fresh] = seen.emplace(f.name, &f);
        if (!fresh && (it->second->target != f.target || it->second->constructor != f.constructor))
            Scope::fail("incorrect signature: " + f.name.debug() + " declared with different target sorts or kinds",
                        f.pos);
    };
    if (ctx) {
        for (const auto& f : ctx->funcs) seen.emplace(f.name, &f);
        for (const auto& p : ctx->params)
            for (const auto& f : p.funcs) seen.emplace(f.name, &f);
    }
    for (const auto& f : m.funcs) check_decl(f);
    for (const auto& p : m.params)
        for (const auto& f : p.funcs) check_decl(f);
    std::set<SpecName> vnames;
    for (const auto& v : m.vars) {
        if (!vnames.insert(v.name).second) Scope::fail("variable " + v.name.debug() + " declared twice", v.pos);
        if (!sc.sorts.count(v.sort)) Scope::fail("undeclared sort " + v.sort.debug() + " for variable " + v.name.debug(), v.pos);
    }
}

}  // namespace asfplus

#include "asfplus/macro_expand.hpp"

#include <map>
#include <set>

namespace asfplus {

namespace {

using Subst = std::map<SpecName, Term>;

thread_local const std::set<SpecName>* g_vars = nullptr;

bool is_var(const Term& t) {
    return t.is_var() || (t.args.empty() && !t.annotated && g_vars && g_vars->count(t.name));
}

Term subst(const Term& t, const Subst& s) {
    if (is_var(t)) {
        auto it = s.find(t.name);
        return it == s.end() ? t : it->second;
    }
    Term out = t;
    for (auto& a : out.args) a = subst(a, s);
    return out;
}

Eq subst(const Eq& e, const Subst& s) {
    Eq out = e;
    out.lhs = subst(e.lhs, s);
    out.rhs = subst(e.rhs, s);
    return out;
}

bool occurs(const Term& t, const SpecName& v) {
    if (is_var(t)) return t.name == v;
    for (const auto& a : t.args)
        if (occurs(a, v)) return true;
    return false;
}

struct State {
    Subst sub;
    std::vector<Eq> pos;
    std::vector<Eq> neg;
};

struct Expander {
    const MacroEquation& me;
    std::vector<Equation> out;
    int leaves;

    [[noreturn]] void fail(const std::string& msg, const Pos& p) const {
        throw NormError(ErrKind::Expansion, msg, p.known() ? p : me.pos);
    }

    void conds(const std::vector<MCond>& cs, State& st, bool allow_match) const {
        for (const auto& c : cs) {
            if (c.match) {
                if (!allow_match) fail("match condition inside a negated condition", c.var.pos);
                Term lhs = subst(me.head, st.sub);
                if (!is_var(c.var) || !occurs(lhs, c.var.name))
                    fail("match variable " + c.var.name.debug() + " is not an argument variable of the macro head",
                         c.var.pos);
                Subst one;
                one.emplace(c.var.name, subst(c.pattern, st.sub));
                for (auto& [k, v] : st.sub) v = subst(v, one);
                st.sub[c.var.name] = one.begin()->second;
            } else {
                st.pos.push_back(subst(c.eq, st.sub));
            }
        }
    }

    void walk(const MBody& b, State st) {
        switch (b.kind) {
        case MBody::Kind::Leaf: {
            Equation e;
            SpecName lab("me-" + me.head.name.text + std::to_string(++leaves));
            if (me.head.name.ns) lab.ns = me.head.name.ns;
            e.label = lab;
            e.eq.lhs = subst(me.head, st.sub);
            e.eq.rhs = subst(b.leaf, st.sub);
            if (!b.leaf.sort.empty() && !me.head.sort.empty() && b.leaf.sort != me.head.sort)
                fail("leaf sort differs from the macro head sort", b.leaf.pos);
            for (const auto& c : st.pos) e.pos_conds.push_back(subst(c, st.sub));
            for (const auto& c : st.neg) e.neg_conds.push_back(subst(c, st.sub));
            e.pos = me.pos;
            out.push_back(std::move(e));
            break;
        }
        case MBody::Kind::Case:
            for (size_t i = 0; i < b.sub.size(); ++i) {
                State s = st;
                conds(b.conds[i], s, true);
                walk(b.sub[i], s);
            }
            break;
        case MBody::Kind::If: {
            State t = st;
            conds(b.conds[0], t, true);
            walk(b.sub[0], t);
            if (b.sub.size() > 1) {
                if (b.conds[0].size() != 1 || b.conds[0][0].match)
                    fail("'else' requires a single equation condition", me.pos);
                State e = st;
                e.neg.push_back(subst(b.conds[0][0].eq, st.sub));
                walk(b.sub[1], e);
            }
            break;
        }
        }
    }
};

std::set<SpecName> user_labels(const Module9& m) {
    std::set<SpecName> out;
    for (const auto& item : m.equations)
        if (const auto* e = std::get_if<Equation>(&item); e && e->label) out.insert(*e->label);
    for (const auto& g : m.goals)
        if (g.label) out.insert(*g.label);
    return out;
}

}  // namespace

std::vector<ExpandedEquation> expand_macro(const MacroEquation& me, const Module9& m, int first) {
    std::set<SpecName> vars;
    for (const auto& v : m.vars) vars.insert(v.name);
    const std::set<SpecName>* saved = g_vars;
    g_vars = &vars;
    struct Restore {
        const std::set<SpecName>* s;
        ~Restore() { g_vars = s; }
    } restore{saved};
    Expander x{me, {}, first - 1};
    x.walk(me.body, {});
    return std::move(x.out);
}

Module9 expand_module(const Module9& m) {
    Module9 out = m;
    out.equations.clear();
    std::set<SpecName> labels = user_labels(m);
    std::map<SpecName, int> counts;
    for (const auto& item : m.equations) {
        if (std::holds_alternative<Equation>(item)) {
            out.equations.push_back(item);
            continue;
        }
        const auto& me = std::get<MacroEquation>(item);
        int& seen = counts[me.head.name];
        auto eqs = expand_macro(me, m, seen + 1);
        seen += static_cast<int>(eqs.size());
        for (auto& e : eqs) {
            if (!labels.insert(*e.label).second)
                throw NormError(ErrKind::Expansion, "DuplicateLabel: generated label " + e.label->debug() +
                                                        " collides with an existing label", e.pos);
            out.equations.emplace_back(std::move(e));
        }
    }
    return out;
}

NormalFormTriple expand_triple(const NormalFormTriple& nf) {
    NormalFormTriple out = nf;
    out.module = expand_module(nf.module);
    ModInstName own = ModInstName::parse(nf.module.name.size() > 3 &&
                                                 nf.module.name.compare(nf.module.name.size() - 3, 3, ".nf") == 0
                                             ? nf.module.name.substr(0, nf.module.name.size() - 3)
                                             : nf.module.name);
    for (const auto& item : out.module.equations) {
        const auto& e = std::get<Equation>(item);
        if (!e.label) continue;
        DisambName key{*e.label, {}};
        if (out.originf.count(key)) continue;
        Origin o{e.label->text, e.label->ns ? *e.label->ns : own, SymType::Label,
                 e.label->ns ? Visibility::Hidden : Visibility::Private};
        out.originf.emplace(key, o);
    }
    return out;
}

}  // namespace asfplus

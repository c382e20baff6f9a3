#include <algorithm>
#include <sstream>

#include "asfplus/syntax.hpp"

namespace asfplus {

namespace {

std::string ind(int n) { return std::string(static_cast<size_t>(n) * 3, ' '); }

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

struct Printer {
    const RenderCtx& ctx;
    bool dis;
    std::ostringstream os;

    Printer(const RenderCtx& c, bool d) : ctx(c), dis(d) {}

    std::string nm(const SpecName& s) const { return ctx.name(s); }

    std::string fname(const Term& t) const {
        std::string s = nm(t.name);
        if (dis && !t.is_var()) {
            std::vector<std::string> sv;
            for (const auto& x : t.sortv) sv.push_back(nm(x));
            s += "[" + join(sv, ",") + "]";
        }
        return s;
    }

    std::string term(const Term& t, bool operand = false) const {
        if (t.is_var()) return nm(t.name);
        if (t.infix && t.args.size() == 2) {
            std::string s = term(t.args[0], true) + " " + fname(t) + " " + term(t.args[1], true);
            return operand ? "(" + s + ")" : s;
        }
        std::string s = fname(t);
        if (t.args.empty()) return s;
        std::vector<std::string> as;
        for (const auto& a : t.args) as.push_back(term(a));
        return s + "(" + join(as, ", ") + ")";
    }

    std::string eq(const Eq& e) const {
        if (e.implicit_true && !e.rhs.name.hidden() && e.rhs.name.text == "true" && e.rhs.args.empty())
            return term(e.lhs);
        return term(e.lhs) + " = " + term(e.rhs);
    }

    std::string eqs(const std::vector<Eq>& es) const {
        std::vector<std::string> xs;
        for (const auto& e : es) xs.push_back(eq(e));
        return join(xs, ", ");
    }

    std::string clause(const Clause& c) const {
        std::string s;
        if (c.label) s += "[" + nm(*c.label) + "] ";
        if (!c.ante.empty()) s += eqs(c.ante) + " ";
        s += "-->";
        if (!c.succ.empty()) s += " " + eqs(c.succ);
        return s;
    }

    std::string mconds(const std::vector<MCond>& cs) const {
        std::vector<std::string> xs;
        for (const auto& c : cs) xs.push_back(c.match ? term(c.var) + " @ " + term(c.pattern) : eq(c.eq));
        return join(xs, ", ");
    }

    void body(const MBody& b, int d) {
        switch (b.kind) {
        case MBody::Kind::Leaf:
            os << ind(d) << term(b.leaf) << "\n";
            break;
        case MBody::Kind::Case:
            os << ind(d) << "case\n" << ind(d) << "{\n";
            for (size_t i = 0; i < b.sub.size(); ++i) {
                os << ind(d + 1) << "( " << mconds(b.conds[i]) << " ) :\n";
                body(b.sub[i], d + 2);
            }
            os << ind(d) << "}\n";
            break;
        case MBody::Kind::If:
            os << ind(d) << "if ( " << mconds(b.conds[0]) << " )\n";
            body(b.sub[0], d + 1);
            if (b.sub.size() > 1) {
                os << ind(d) << "else\n";
                body(b.sub[1], d + 1);
            }
            break;
        }
    }

    std::string decl_name(const FuncDecl& f) const {
        std::string n = nm(f.name.name);
        if (f.fixity == Fixity::Infix) return "_ " + n + " _";
        if (f.fixity == Fixity::Prefix) return n + " _";
        return n;
    }

    void decls(const std::vector<FuncDecl>& fs, int d) {
        size_t i = 0;
        while (i < fs.size()) {
            size_t j = i + 1;
            while (j < fs.size() && fs[j].name.sortv == fs[i].name.sortv && fs[j].target == fs[i].target) ++j;
            std::vector<std::string> names, dom;
            for (size_t k = i; k < j; ++k) names.push_back(decl_name(fs[k]));
            for (const auto& s : fs[i].name.sortv) dom.push_back(nm(s));
            os << ind(d) << join(names, ", ") << " : " << (dom.empty() ? "" : join(dom, " # ") + " ") << "-> "
               << nm(fs[i].target) << "\n";
            i = j;
        }
    }

    void signature(const std::vector<SpecName>& sorts, const std::vector<FuncDecl>& cons,
                   const std::vector<FuncDecl>& noncons, int d) {
        if (!sorts.empty()) {
            std::vector<std::string> xs;
            for (const auto& s : sorts) xs.push_back(nm(s));
            os << ind(d) << "sorts\n" << ind(d + 1) << join(xs, ", ") << "\n";
        }
        if (!cons.empty()) {
            os << ind(d) << "constructors\n";
            decls(cons, d + 1);
        }
        if (!noncons.empty()) {
            os << ind(d) << "non-constructors\n";
            decls(noncons, d + 1);
        }
    }

    static std::string tuple(const NameList& xs) { return "(" + join(xs, ", ") + ")"; }

    static std::string tuples(const std::vector<NameList>& ts) {
        std::vector<std::string> xs;
        for (const auto& t : ts) xs.push_back(tuple(t));
        return "<" + join(xs, " ") + ">";
    }

    void import(const ImportDecl& imp) {
        os << ind(1) << "import " << imp.module;
        if (imp.inst) os << "[" << *imp.inst << "]";
        auto ren_of = [&](const std::string& n) -> const SpecName* {
            for (const auto& [k, v] : imp.renaming)
                if (k == n) return &v;
            return nullptr;
        };
        auto with_ren = [&](const std::string& n) {
            const SpecName* r = ren_of(n);
            if (!r) return n;
            if (r->text == n) return "copy of " + n;
            return n + " renamed to " + nm(*r);
        };
        if (!imp.blocks.empty() || !imp.param_lists.empty()) {
            std::vector<std::string> parts;
            for (const auto& pl : imp.param_lists) {
                std::vector<std::string> xs;
                for (const auto& n : pl) xs.push_back(with_ren(n));
                parts.push_back("(" + join(xs, ", ") + ")");
            }
            for (const auto& b : imp.blocks) {
                std::vector<std::string> xs;
                for (const auto& [p, a] : b.binding) xs.push_back(p + " bound to " + a);
                std::string s = "(" + join(xs, ", ") + ") of " + b.act_module;
                if (!b.act_params.empty()) s += " " + tuples(b.act_params);
                parts.push_back(s);
            }
            os << " <" << join(parts, " ") << ">";
        }
        std::vector<std::string> pub, priv;
        for (const auto& [n, v] : imp.vf) (v == Visibility::Public ? pub : priv).push_back(with_ren(n));
        os << "\n" << ind(1) << "{";
        if (!pub.empty()) os << " public: " << join(pub, ", ");
        if (!priv.empty()) os << (pub.empty() ? "" : ";") << " private: " << join(priv, ", ");
        os << " }\n";
    }

    void module(const Module9& m) {
        os << "module " << m.name;
        if (!m.header_params.empty()) os << " " << tuples(m.header_params);
        if (!m.short_name.empty()) os << " short " << m.short_name;
        os << "\n{\n";
        for (const auto& imp : m.imports) import(imp);
        Signature pub = m.public_sig(), priv = m.private_sig();
        bool any_sig = !m.params.empty() || !pub.sorts.empty() || !pub.cons.empty() || !pub.noncons.empty() ||
                       !priv.sorts.empty() || !priv.cons.empty() || !priv.noncons.empty();
        if (any_sig) {
            os << ind(1) << "add signature\n" << ind(1) << "{\n";
            if (!m.params.empty()) {
                os << ind(2) << "parameters:\n";
                for (const auto& p : m.params) {
                    std::vector<SpecName> sorts;
                    std::vector<FuncDecl> cons, noncons;
                    for (const auto& s : p.sorts) sorts.push_back(s.name);
                    for (const auto& f : p.funcs) (f.constructor ? cons : noncons).push_back(f);
                    os << ind(3) << "(\n";
                    signature(sorts, cons, noncons, 4);
                    if (!p.conditions.empty()) {
                        os << ind(4) << "conditions\n";
                        for (const auto& c : p.conditions) os << ind(5) << clause(c) << "\n";
                    }
                    os << ind(3) << ")\n";
                }
            }
            if (!pub.sorts.empty() || !pub.cons.empty() || !pub.noncons.empty()) {
                os << ind(2) << "public:\n";
                signature(pub.sorts, pub.cons, pub.noncons, 3);
            }
            if (!priv.sorts.empty() || !priv.cons.empty() || !priv.noncons.empty()) {
                os << ind(2) << "private:\n";
                signature(priv.sorts, priv.cons, priv.noncons, 3);
            }
            os << ind(1) << "}\n";
        }
        if (!m.vars.empty()) {
            os << ind(1) << "variables\n" << ind(1) << "{\n";
            for (bool cons : {true, false}) {
                std::vector<SpecName> sorts;
                for (const auto& v : m.vars)
                    if (v.constructor == cons && std::find(sorts.begin(), sorts.end(), v.sort) == sorts.end())
                        sorts.push_back(v.sort);
                if (sorts.empty()) continue;
                os << ind(2) << (cons ? "constructors" : "non-constructors") << "\n";
                for (const auto& s : sorts) {
                    std::vector<std::string> xs;
                    for (const auto& v : m.vars)
                        if (v.constructor == cons && v.sort == s) xs.push_back(nm(v.name));
                    os << ind(3) << join(xs, ", ") << " : -> " << nm(s) << "\n";
                }
            }
            os << ind(1) << "}\n";
        }
        if (!m.equations.empty()) {
            os << ind(1) << "equations\n" << ind(1) << "{\n";
            for (const auto& item : m.equations) {
                if (const auto* e = std::get_if<Equation>(&item)) {
                    os << ind(2);
                    if (e->label) os << "[" << nm(*e->label) << "] ";
                    os << eq(e->eq);
                    if (!e->pos_conds.empty()) os << " if " << eqs(e->pos_conds);
                    if (!e->neg_conds.empty()) os << " unless " << eqs(e->neg_conds);
                    os << "\n";
                } else {
                    const auto& me = std::get<MacroEquation>(item);
                    std::string head = term(me.head);
                    if (me.head.infix) head = "(" + head + ")";
                    os << ind(2) << "macro-equation " << head << "\n" << ind(2) << "{\n";
                    body(me.body, 3);
                    os << ind(2) << "}\n";
                }
            }
            os << ind(1) << "}\n";
        }
        if (!m.goals.empty()) {
            os << ind(1) << "goals\n" << ind(1) << "{\n";
            for (const auto& g : m.goals) os << ind(2) << clause(g) << "\n";
            os << ind(1) << "}\n";
        }
        os << "}\n";
    }
};

}  // namespace

std::string print_term(const Term& t, const RenderCtx& ctx, bool disambiguate) {
    Printer p(ctx, disambiguate);
    return p.term(t);
}

std::string print_clause(const Clause& c, const RenderCtx& ctx, bool disambiguate) {
    Printer p(ctx, disambiguate);
    return p.clause(c);
}

std::string print_module(const Module9& m, const PrintOptions& opts) {
    RenderCtx ctx = RenderCtx::for_module(m, opts.abbrevs);
    Printer p(ctx, opts.disambiguate);
    p.module(m);
    return p.os.str();
}

}  // namespace asfplus

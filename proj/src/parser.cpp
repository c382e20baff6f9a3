#include <algorithm>
#include <set>

#include "asfplus/syntax.hpp"

namespace asfplus {

const Module9* AsfSpec::find(const std::string& name) const {
    for (const auto& m : modules)
        if (m.name == name) return &m;
    return nullptr;
}

namespace {

std::set<std::string> scan_infix(const std::vector<Token>& toks) {
    std::set<std::string> out;
    for (size_t k = 0; k + 2 < toks.size(); ++k)
        if (toks[k].kind == TokKind::Underscore && toks[k + 1].is_name() && toks[k + 2].kind == TokKind::Underscore)
            out.insert(toks[k + 1].text);
    return out;
}

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::set<std::string> infix, ParseOptions opts)
        : t_(std::move(toks)), infix_(std::move(infix)), opts_(opts) {}

    bool done() const { return peek().kind == TokKind::End; }

    Module9 module() {
        Module9 m;
        m.pos = peek().pos;
        expect_word("module");
        m.name = name_text();
        hidden_ok_ = opts_.allow_hidden || ends_with(m.name, ".nf");
        if (accept_punct("<")) {
            while (peek().is(TokKind::Punct, "(")) m.header_params.push_back(paren_names());
            expect_punct(">");
        }
        if (peek_word("short")) {
            next();
            m.short_name = name_text();
        }
        expect_punct("{");
        while (peek_word("import")) m.imports.push_back(import_decl());
        if (peek_word("add")) add_signature(m);
        if (peek_word("variables")) variables(m);
        if (peek_word("equations")) equations(m);
        if (peek_word("goals")) {
            next();
            expect_punct("{");
            while (!peek().is(TokKind::Punct, "}")) m.goals.push_back(clause());
            next();
        }
        expect_punct("}");
        return m;
    }

    Term whole_term() {
        hidden_ok_ = true;
        Term x = term();
        if (!done()) fail("end of input");
        return x;
    }

private:
    std::vector<Token> t_;
    size_t k_ = 0;
    std::set<std::string> infix_;
    ParseOptions opts_;
    bool hidden_ok_ = false;

    const Token& peek(size_t o = 0) const { return t_[std::min(k_ + o, t_.size() - 1)]; }
    const Token& next() { return t_[std::min(k_++, t_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
        throw NormError(ErrKind::Parse, "expected " + expected + ", found " + got, t.pos);
    }

    bool peek_word(const char* w, size_t o = 0) const {
        const Token& t = peek(o);
        return (t.kind == TokKind::Ident || t.kind == TokKind::Keyword || t.kind == TokKind::FuncSym) && t.text == w;
    }
    void expect_word(const char* w) {
        if (!peek_word(w)) fail(std::string("'") + w + "'");
        next();
    }
    bool accept_punct(const char* p) {
        if (peek().text == p && peek().kind != TokKind::Ident && peek().kind != TokKind::FuncSym) {
            next();
            return true;
        }
        return false;
    }
    void expect_punct(const char* p) {
        if (!accept_punct(p)) fail(std::string("'") + p + "'");
    }

    SpecName spec_name(const Token& t) {
        if (t.kind == TokKind::Hidden) {
            if (!hidden_ok_) throw NormError(ErrKind::Lex, "hyphen in name '" + t.text + "'", t.pos);
            if (t.text.compare(0, t.split, "me") == 0 && t.split == 2) return SpecName(t.text);
            return SpecName::hidden_in(ModInstName::parse(t.text.substr(0, t.split)), t.text.substr(t.split + 1));
        }
        return SpecName(t.text);
    }

    SpecName name() {
        if (!peek().is_name()) fail("a name");
        return spec_name(next());
    }

    std::string name_text() {
        if (!peek().is_name() || peek().kind == TokKind::Hidden) fail("a name");
        return next().text;
    }

    NameList paren_names() {
        expect_punct("(");
        NameList out;
        do out.push_back(name_text());
        while (accept_punct(","));
        expect_punct(")");
        return out;
    }

    // ---- imports ----

    std::pair<std::string, SpecName> name_with_ren() {
        if (peek_word("copy") && peek_word("of", 1)) {
            next();
            next();
            std::string n = import_name();
            return {n, SpecName(n)};
        }
        std::string n = import_name();
        if (peek_word("renamed")) {
            next();
            expect_word("to");
            return {n, SpecName(import_name())};
        }
        return {n, SpecName()};
    }

    std::string import_name() {
        bool pre = accept_kind(TokKind::Underscore);
        std::string n = name_text();
        if (pre || peek().kind == TokKind::Underscore) accept_kind(TokKind::Underscore);
        return n;
    }

    bool accept_kind(TokKind k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }

    ImportDecl import_decl() {
        ImportDecl d;
        d.pos = peek().pos;
        expect_word("import");
        d.module = name_text();
        if (peek().kind == TokKind::LBracket) {
            next();
            d.inst = name_text();
            if (peek().kind != TokKind::RBracket) fail("']'");
            next();
        }
        if (accept_punct("<")) {
            while (peek().is(TokKind::Punct, "(")) ext_para_block(d);
            expect_punct(">");
        }
        if (peek().is(TokKind::Punct, "{")) {
            next();
            bool any = false;
            if (peek_word("public")) {
                next();
                expect_kind(TokKind::Colon, "':'");
                vis_list(d, Visibility::Public);
                any = true;
            }
            accept_punct(";");
            if (peek_word("private")) {
                next();
                expect_kind(TokKind::Colon, "':'");
                vis_list(d, Visibility::Private);
                any = true;
            }
            (void)any;
            expect_punct("}");
        }
        return d;
    }

    void expect_kind(TokKind k, const char* what) {
        if (!accept_kind(k)) fail(what);
    }

    void vis_list(ImportDecl& d, Visibility v) {
        do {
            auto [n, ren] = name_with_ren();
            d.vf.emplace_back(n, v);
            if (!ren.empty()) d.renaming.emplace_back(n, ren);
        } while (accept_punct(","));
    }

    void ext_para_block(ImportDecl& d) {
        Pos p = peek().pos;
        expect_punct("(");
        if (peek_word("bound", 1)) {
            BindingBlock b;
            b.pos = p;
            do {
                std::string par = name_text();
                expect_word("bound");
                expect_word("to");
                b.binding.emplace_back(par, import_name());
            } while (accept_punct(","));
            expect_punct(")");
            expect_word("of");
            b.act_module = name_text();
            if (accept_punct("<")) {
                while (peek().is(TokKind::Punct, "(")) b.act_params.push_back(paren_names());
                expect_punct(">");
            }
            d.blocks.push_back(std::move(b));
            return;
        }
        NameList names;
        do {
            auto [n, ren] = name_with_ren();
            names.push_back(n);
            if (!ren.empty()) d.renaming.emplace_back(n, ren);
        } while (accept_punct(","));
        expect_punct(")");
        d.param_lists.push_back(std::move(names));
    }

    // ---- signatures ----

    bool section_end() const {
        const Token& t = peek();
        return peek_word("sorts") || peek_word("constructors") || peek_word("non-constructors") ||
               peek_word("public") || peek_word("private") || peek_word("conditions") || peek_word("parameters") ||
               t.is(TokKind::Punct, "}") || t.is(TokKind::Punct, ")") || t.kind == TokKind::End;
    }

    void add_signature(Module9& m) {
        expect_word("add");
        expect_word("signature");
        expect_punct("{");
        if (peek_word("parameters")) {
            next();
            expect_kind(TokKind::Colon, "':'");
            while (peek().is(TokKind::Punct, "(")) {
                next();
                ParamSig ps;
                std::vector<SortDecl> sorts;
                std::vector<FuncDecl> funcs;
                signature(sorts, funcs, Block::Public);
                ps.sorts = std::move(sorts);
                ps.funcs = std::move(funcs);
                if (peek_word("conditions")) {
                    next();
                    while (!peek().is(TokKind::Punct, ")")) ps.conditions.push_back(clause());
                }
                expect_punct(")");
                m.params.push_back(std::move(ps));
            }
        }
        if (peek_word("public")) {
            next();
            expect_kind(TokKind::Colon, "':'");
            signature(m.sorts, m.funcs, Block::Public);
        }
        if (peek_word("private")) {
            next();
            expect_kind(TokKind::Colon, "':'");
            signature(m.sorts, m.funcs, Block::Private);
        }
        expect_punct("}");
    }

    void signature(std::vector<SortDecl>& sorts, std::vector<FuncDecl>& funcs, Block b) {
        if (peek_word("sorts")) {
            next();
            do {
                SortDecl s;
                s.pos = peek().pos;
                s.name = name();
                s.block = b;
                sorts.push_back(std::move(s));
            } while (accept_punct(","));
        }
        for (int pass = 0; pass < 2; ++pass) {
            const char* kw = pass == 0 ? "constructors" : "non-constructors";
            if (!peek_word(kw)) continue;
            next();
            while (!section_end()) func_decs(funcs, pass == 0, b);
        }
    }

    void func_decs(std::vector<FuncDecl>& funcs, bool cons, Block b) {
        std::vector<std::pair<SpecName, Fixity>> names;
        std::vector<Pos> poss;
        do {
            poss.push_back(peek().pos);
            if (accept_kind(TokKind::Underscore)) {
                SpecName n = name();
                expect_kind(TokKind::Underscore, "'_'");
                names.emplace_back(n, Fixity::Infix);
            } else {
                SpecName n = name();
                names.emplace_back(n, accept_kind(TokKind::Underscore) ? Fixity::Prefix : Fixity::Plain);
            }
        } while (accept_punct(","));
        expect_kind(TokKind::Colon, "':'");
        std::vector<SpecName> dom;
        if (peek().kind != TokKind::Arrow) {
            dom.push_back(name());
            while (accept_kind(TokKind::Hash)) dom.push_back(name());
        }
        expect_kind(TokKind::Arrow, "'->'");
        SpecName target = name();
        for (size_t i = 0; i < names.size(); ++i) {
            FuncDecl d;
            d.name = DisambName{names[i].first, dom};
            d.target = target;
            d.constructor = cons;
            d.fixity = names[i].second;
            d.block = b;
            d.pos = poss[i];
            funcs.push_back(std::move(d));
        }
    }

    void variables(Module9& m) {
        expect_word("variables");
        expect_punct("{");
        bool cons = true;
        while (!peek().is(TokKind::Punct, "}")) {
            if (peek_word("constructors")) {
                next();
                cons = true;
                continue;
            }
            if (peek_word("non-constructors")) {
                next();
                cons = false;
                continue;
            }
            std::vector<std::pair<SpecName, Pos>> names;
            do {
                Pos p = peek().pos;
                names.emplace_back(name(), p);
            } while (accept_punct(","));
            expect_kind(TokKind::Colon, "':'");
            expect_kind(TokKind::Arrow, "'->'");
            SpecName s = name();
            for (auto& [n, p] : names) m.vars.push_back(VarDecl{n, s, cons, p});
        }
        next();
    }

    // ---- equations ----

    std::optional<SpecName> label() {
        if (peek().kind != TokKind::LBracket) return std::nullopt;
        next();
        SpecName l = name();
        expect_kind(TokKind::RBracket, "']'");
        return l;
    }

    void equations(Module9& m) {
        expect_word("equations");
        expect_punct("{");
        while (!peek().is(TokKind::Punct, "}")) {
            if (peek().is(TokKind::Keyword, "macro-equation")) {
                MacroEquation me;
                me.pos = next().pos;
                me.head = term();
                expect_punct("{");
                me.body = mbody();
                expect_punct("}");
                m.equations.emplace_back(std::move(me));
                continue;
            }
            Equation e;
            e.pos = peek().pos;
            e.label = label();
            e.eq = eq();
            if (peek().is(TokKind::Keyword, "if")) {
                next();
                e.pos_conds = eq_list();
            }
            if (peek_word("unless")) {
                next();
                e.neg_conds = eq_list();
            }
            m.equations.emplace_back(std::move(e));
        }
        next();
    }

    MBody mbody() {
        MBody b;
        if (peek().is(TokKind::Keyword, "case")) {
            next();
            b.kind = MBody::Kind::Case;
            expect_punct("{");
            while (peek().is(TokKind::Punct, "(")) {
                next();
                b.conds.push_back(mconds());
                expect_punct(")");
                expect_kind(TokKind::Colon, "':'");
                b.sub.push_back(mbody());
            }
            expect_punct("}");
            if (b.sub.empty()) fail("a case branch");
            return b;
        }
        if (peek().is(TokKind::Keyword, "if")) {
            next();
            b.kind = MBody::Kind::If;
            expect_punct("(");
            b.conds.push_back(mconds());
            expect_punct(")");
            b.sub.push_back(mbody());
            if (peek().is(TokKind::Keyword, "else")) {
                next();
                b.sub.push_back(mbody());
            }
            return b;
        }
        b.kind = MBody::Kind::Leaf;
        b.leaf = term();
        return b;
    }

    std::vector<MCond> mconds() {
        std::vector<MCond> out;
        do {
            MCond c;
            Term lhs = term();
            if (accept_punct("@")) {
                if (!lhs.args.empty() || lhs.infix) fail("a variable before '@'");
                c.match = true;
                c.var = std::move(lhs);
                c.pattern = term();
            } else {
                c.eq = eq_rest(std::move(lhs));
            }
            out.push_back(std::move(c));
        } while (accept_punct(","));
        return out;
    }

    Eq eq() { return eq_rest(term()); }

    Eq eq_rest(Term lhs) {
        Eq e;
        e.lhs = std::move(lhs);
        if (accept_punct("=")) {
            e.rhs = term();
        } else {
            e.rhs = Term::app(SpecName("true"));
            e.rhs.pos = e.lhs.pos;
            e.implicit_true = true;
        }
        return e;
    }

    bool eq_start() const {
        const Token& t = peek();
        return t.is_name() || t.is(TokKind::Punct, "(");
    }

    std::vector<Eq> eq_list() {
        std::vector<Eq> out;
        do out.push_back(eq());
        while (accept_punct(","));
        return out;
    }

    Clause clause() {
        Clause c;
        c.pos = peek().pos;
        c.label = label();
        if (peek().kind != TokKind::Gentzen) c.ante = eq_list();
        expect_kind(TokKind::Gentzen, "'-->'");
        if (eq_start()) c.succ = eq_list();
        return c;
    }

    // ---- terms ----

    bool primary_start(size_t o) const {
        const Token& t = peek(o);
        return t.is_name() || t.is(TokKind::Punct, "(");
    }

    Term term() {
        Term lhs = primary();
        while (peek().is_name() && infix_.count(peek().text) && primary_start(op_len())) {
            Token op = next();
            Term t = Term::app(spec_name(op));
            t.pos = op.pos;
            t.infix = true;
            annotation(t);
            t.args.push_back(std::move(lhs));
            t.args.push_back(primary());
            lhs = std::move(t);
        }
        return lhs;
    }

    // Distance from the operator token to the start of its right operand.
    size_t op_len() const {
        size_t o = 1;
        if (peek(o).kind == TokKind::LBracket && !peek(o).space_before) {
            while (peek(o).kind != TokKind::RBracket && peek(o).kind != TokKind::End) ++o;
            ++o;
        }
        return o;
    }

    void annotation(Term& t) {
        if (peek().kind != TokKind::LBracket || peek().space_before) return;
        next();
        t.annotated = true;
        if (peek().kind != TokKind::RBracket) {
            do t.sortv.push_back(name());
            while (accept_punct(","));
        }
        expect_kind(TokKind::RBracket, "']'");
    }

    Term primary() {
        if (peek().is(TokKind::Punct, "(")) {
            next();
            Term x = term();
            expect_punct(")");
            return x;
        }
        if (!peek().is_name()) fail("a term");
        const Token& tok = next();
        Term t = Term::app(spec_name(tok));
        t.pos = tok.pos;
        annotation(t);
        if (peek().is(TokKind::Punct, "(") && !peek().space_before) {
            next();
            do t.args.push_back(term());
            while (accept_punct(","));
            expect_punct(")");
        }
        return t;
    }
};

}  // namespace

AsfSpec parse_specification(const std::vector<SourceFile>& files, const ParseOptions& opts) {
    AsfSpec spec;
    std::vector<std::vector<Token>> lexed;
    std::set<std::string> infix;
    for (const auto& f : files) {
        lexed.push_back(lex(f.text, f.name, true));
        auto s = scan_infix(lexed.back());
        infix.insert(s.begin(), s.end());
    }
    std::set<std::string> shorts, insts;
    for (auto& toks : lexed) {
        Parser p(std::move(toks), infix, opts);
        while (!p.done()) {
            Module9 m = p.module();
            if (spec.find(m.name))
                throw NormError(ErrKind::Parse, "DuplicateModuleName: module " + m.name + " defined twice", m.pos);
            std::string sh = m.short_name.empty() ? m.name : m.short_name;
            if (!shorts.insert(sh).second)
                throw NormError(ErrKind::Parse, "DuplicateShortName: short name " + sh + " used twice", m.pos);
            for (const auto& imp : m.imports)
                if (imp.inst && !insts.insert(*imp.inst).second)
                    throw NormError(ErrKind::Parse, "DuplicateInstanceName: instance " + *imp.inst + " used twice",
                                    imp.pos);
            spec.abbrevs[m.name] = sh;
            if (spec.top.empty()) spec.top = m.name;
            spec.modules.push_back(std::move(m));
        }
    }
    return spec;
}

Module9 parse_module(const std::string& text, const ParseOptions& opts) {
    auto toks = lex(text, {}, true);
    auto infix = scan_infix(toks);
    Parser p(std::move(toks), infix, opts);
    Module9 m = p.module();
    if (!p.done()) throw NormError(ErrKind::Parse, "trailing input after module " + m.name);
    return m;
}

Term parse_term(const std::string& text, const ParseOptions& opts) {
    auto toks = lex(text, {}, true);
    std::set<std::string> infix;
    for (size_t k = 1; k + 1 < toks.size(); ++k)
        if (toks[k].kind == TokKind::FuncSym || toks[k].kind == TokKind::Hidden) infix.insert(toks[k].text);
    Parser p(std::move(toks), infix, opts);
    return p.whole_term();
}

}  // namespace asfplus

#pragma once

#include <string>
#include <vector>

#include "asfplus/core_model.hpp"

namespace asfplus {

enum class TokKind {
    Ident,
    FuncSym,
    Keyword,
    Hidden,
    Underscore,
    LBracket,
    RBracket,
    Arrow,
    Gentzen,
    Comma,
    Colon,
    Hash,
    Punct,
    End
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    Pos pos;
    bool space_before = true;
    size_t split = 0;  // Hidden: length of the namespace prefix

    bool is(TokKind k, const char* t = nullptr) const { return kind == k && (!t || text == t); }
    bool is_name() const { return kind == TokKind::Ident || kind == TokKind::FuncSym || kind == TokKind::Hidden; }
};

bool is_reserved(const std::string& w);
bool is_name_char(char c);
bool is_func_char(char c);
bool is_user_name(const std::string& s);

std::vector<Token> lex(const std::string& text, const std::string& file = {}, bool allow_hidden = false);

struct SourceFile {
    std::string name;
    std::string text;
};

struct ParseOptions {
    bool allow_hidden = false;  // always on for modules named *.nf
};

struct AsfSpec {
    std::string top;
    std::vector<Module9> modules;
    AbbrevTable abbrevs;

    const Module9* find(const std::string& name) const;
};

AsfSpec parse_specification(const std::vector<SourceFile>& files, const ParseOptions& opts = {});
Module9 parse_module(const std::string& text, const ParseOptions& opts = {});
Term parse_term(const std::string& text, const ParseOptions& opts = {});

// Bottom-up overload resolution: marks variables, fills sortv and result
// sorts of every application, and checks equation sides. ctx supplies the
// imported signature (may be null).
void resolve_module(Module9& m, const Module9* ctx = nullptr);

// Checks that the declarations form a correct signature: equal disambiguated
// names agree on target sort and kind, and all used sorts are declared.
void check_signature(const Module9& m, const Module9* ctx = nullptr);

struct PrintOptions {
    bool disambiguate = false;
    AbbrevTable abbrevs;
};

std::string print_term(const Term& t, const RenderCtx& ctx, bool disambiguate = false);
std::string print_module(const Module9& m, const PrintOptions& opts = {});
std::string print_clause(const Clause& c, const RenderCtx& ctx, bool disambiguate = false);

}  // namespace asfplus

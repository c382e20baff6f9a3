#include <cctype>
#include <cstring>

#include "asfplus/syntax.hpp"

namespace asfplus {

static const char* const kReserved[] = {"if", "equation", "else", "case", "renamed", "bound", "sorts", "constructors"};

bool is_reserved(const std::string& w) {
    for (const char* r : kReserved)
        if (w == r) return true;
    return w == "non-constructors" || w == "macro-equation";
}

bool is_func_char(char c) { return c && std::strchr("!$%&+*;?~\\|/.", c) != nullptr; }

static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_';
}

bool is_name_char(char c) { return is_ident_char(c) || is_func_char(c); }

bool is_user_name(const std::string& s) {
    if (s.empty() || s.front() == '_' || s.back() == '_' || is_reserved(s)) return false;
    for (char c : s)
        if (!is_name_char(c)) return false;
    return true;
}

namespace {

struct Lexer {
    const std::string& src;
    std::string file;
    bool allow_hidden;
    size_t i = 0;
    int line = 1, col = 1;
    std::vector<Token> out;

    char at(size_t k) const { return k < src.size() ? src[k] : '\0'; }

    void advance(size_t n = 1) {
        while (n-- && i < src.size()) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    }

    Pos here() const { return Pos{file, line, col}; }

    [[noreturn]] void fail(const std::string& msg, Pos p) { throw NormError(ErrKind::Lex, msg, p); }

    size_t word_end(size_t k) const {
        while (is_name_char(at(k))) ++k;
        return k;
    }

    // Namespace prefix of a hidden name: Ident ['[' Ident {',' Ident} ']'] followed by '-' and a name char.
    size_t hidden_prefix_end(size_t k) const {
        if (at(k) == '[') {
            size_t j = k + 1;
            for (;;) {
                size_t s = j;
                while (is_ident_char(at(j))) ++j;
                if (j == s) return 0;
                if (at(j) == ',') {
                    ++j;
                    continue;
                }
                if (at(j) != ']') return 0;
                ++j;
                break;
            }
            k = j;
        }
        if (at(k) == '-' && is_name_char(at(k + 1))) return k;
        return 0;
    }

    void push(TokKind k, std::string text, Pos p, bool sp, size_t split = 0) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.pos = p;
        t.space_before = sp;
        t.split = split;
        out.push_back(std::move(t));
    }

    void run() {
        bool sp = true;
        while (i < src.size()) {
            char c = src[i];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
                sp = true;
                continue;
            }
            if (c == '/' && at(i + 1) == '*') {
                Pos p = here();
                advance(2);
                while (i < src.size() && !(src[i] == '*' && at(i + 1) == '/')) advance();
                if (i >= src.size()) fail("unterminated comment", p);
                advance(2);
                sp = true;
                continue;
            }
            Pos p = here();
            for (const char* kw : {"non-constructors", "macro-equation"}) {
                size_t n = std::strlen(kw);
                if (src.compare(i, n, kw) == 0 && !is_name_char(at(i + n)) && at(i + n) != '-') {
                    push(TokKind::Keyword, kw, p, sp);
                    advance(n);
                    sp = false;
                    goto next;
                }
            }
            if (c == '-' && at(i + 1) == '-' && at(i + 2) == '>') {
                push(TokKind::Gentzen, "-->", p, sp);
                advance(3);
            } else if (c == '-' && at(i + 1) == '>') {
                push(TokKind::Arrow, "->", p, sp);
                advance(2);
            } else if (c == '_' && !is_name_char(at(i + 1))) {
                push(TokKind::Underscore, "_", p, sp);
                advance();
            } else if (is_name_char(c)) {
                lex_word(p, sp);
            } else if (std::strchr("{}()<>,:#=@[]", c)) {
                TokKind k = TokKind::Punct;
                if (c == ',') k = TokKind::Comma;
                else if (c == ':') k = TokKind::Colon;
                else if (c == '#') k = TokKind::Hash;
                else if (c == '[') k = TokKind::LBracket;
                else if (c == ']') k = TokKind::RBracket;
                push(k, std::string(1, c), p, sp);
                advance();
            } else if (c == '-') {
                fail("'-' is not allowed here (names contain no hyphen)", p);
            } else {
                fail(std::string("illegal character '") + c + "'", p);
            }
            sp = false;
        next:;
        }
        push(TokKind::End, "", here(), true);
    }

    void lex_word(Pos p, bool sp) {
        size_t e = word_end(i);
        std::string w = src.substr(i, e - i);
        size_t hp = hidden_prefix_end(e);
        bool ident = true;
        for (char ch : w)
            if (!is_ident_char(ch)) ident = false;
        if (hp && ident) {
            if (!allow_hidden) fail("hyphen in name '" + src.substr(i, word_end(hp + 1) - i) + "'", p);
            size_t k = hp;
            while (at(k) == '-' && is_name_char(at(k + 1))) k = word_end(k + 1);
            std::string text = src.substr(i, k - i);
            push(TokKind::Hidden, text, p, sp, hp - i);
            advance(k - i);
            return;
        }
        if (at(e) == '-' && is_name_char(at(e + 1)))
            fail("hyphen in name '" + src.substr(i, word_end(e + 1) - i) + "'", p);
        if (w.size() > 1 && w.back() == ';') {
            w.pop_back();
            --e;
        }
        if (w == ";") {
            push(TokKind::Punct, ";", p, sp);
            advance();
            return;
        }
        if (w.front() == '_' || w.back() == '_') fail("underscore at the edge of name '" + w + "'", p);
        TokKind k = ident ? TokKind::Ident : TokKind::FuncSym;
        if (is_reserved(w)) k = TokKind::Keyword;
        push(k, w, p, sp);
        advance(e - i);
    }
};

}  // namespace

std::vector<Token> lex(const std::string& text, const std::string& file, bool allow_hidden) {
    Lexer lx{text, file, allow_hidden};
    lx.run();
    return std::move(lx.out);
}

}  // namespace asfplus

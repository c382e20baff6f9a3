#include <doctest.h>

#include "support.hpp"

using namespace asfplus;
using namespace testsupport;

namespace {

ErrKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const NormError& e) {
        return e.kind;
    }
    FAIL("no error raised");
    return ErrKind::Spec;
}

}  // namespace

TEST_CASE("lexer splits hidden names only when allowed") {
    auto toks = lex("Bo-and(x)", "t", true);
    REQUIRE(toks.size() >= 4);
    CHECK(toks[0].kind == TokKind::Hidden);
    CHECK(toks[0].text == "Bo-and");
    CHECK(toks[0].split == 2);
    auto inst = lex("OSeq[ONSeq]-i1", "t", true);
    CHECK(inst[0].kind == TokKind::Hidden);
    CHECK(inst[0].split == std::string("OSeq[ONSeq]").size());
    CHECK(kind_of([] { parse_module("module X { variables { a-b : -> S } }"); }) == ErrKind::Lex);
}

TEST_CASE("reserved words and user names") {
    CHECK(is_reserved("case"));
    CHECK(is_reserved("non-constructors"));
    CHECK_FALSE(is_reserved("module"));
    CHECK(is_user_name("+"));
    CHECK(is_user_name("mk_A"));
    CHECK_FALSE(is_user_name("_x"));
    CHECK_FALSE(is_user_name("if"));
}

TEST_CASE("Booleans parses into the expected module") {
    AsfSpec s = corpus("Booleans", {"booleans.asfp"});
    const Module9& m = *s.find("Booleans");
    CHECK(m.short_name == "Bo");
    CHECK(s.abbrevs.at("Booleans") == "Bo");
    REQUIRE(m.sorts.size() == 1);
    CHECK(m.sorts[0].name == SpecName("BOOL"));
    auto pub = m.public_sig();
    auto priv = m.private_sig();
    CHECK(pub.cons.size() == 2);
    CHECK(pub.noncons.size() == 2);
    REQUIRE(priv.noncons.size() == 1);
    CHECK(priv.noncons[0].name.name == SpecName("not"));
    CHECK(m.varsort(false).size() == 2);
    REQUIRE(m.equations.size() == 3);
    CHECK(std::holds_alternative<MacroEquation>(m.equations[0]));
    CHECK(std::get<Equation>(m.equations[2]).label == SpecName("e1"));
}

TEST_CASE("import blocks keep visibility, renaming and bindings") {
    AsfSpec s = corpus("OrdNatSequences");
    const Module9& m = *s.find("OrdNatSequences");
    REQUIRE(m.imports.size() == 2);
    const ImportDecl& i0 = m.imports[0];
    CHECK(i0.module == "OrdSequences");
    CHECK(i0.inst == std::optional<std::string>("ONSeq"));
    REQUIRE(i0.blocks.size() == 1);
    CHECK(i0.blocks[0].act_module == "OrdNaturals");
    CHECK(i0.blocks[0].binding ==
          std::vector<std::pair<std::string, std::string>>{{"ITEMpar", "NAT"}, {"ordpar", "greater"}});
    CHECK(i0.renaming.size() == 2);
    CHECK(i0.vf.size() == 7);
    const Module9& nat3 = *s.find("Nat3");
    REQUIRE(nat3.imports[0].renaming.size() == 1);
    CHECK(nat3.imports[0].renaming[0].first == "NAT");
    CHECK(nat3.imports[0].renaming[0].second == SpecName("NAT"));
}

TEST_CASE("duplicate module, short and instance names are rejected") {
    CHECK(kind_of([] {
              parse_specification({{"a", "module A { }"}, {"b", "module A { }"}});
          }) == ErrKind::Parse);
    CHECK(kind_of([] {
              parse_specification({{"a", "module A short X { } module B short X { }"}});
          }) == ErrKind::Parse);
    CHECK(kind_of([] {
              parse_specification({{"a", "module A { add signature { public: sorts S } }\n"
                                         "module B { import A[I] { public: S } import A[I] { public: S } }"}});
          }) == ErrKind::Parse);
}

TEST_CASE("hidden names are only accepted in normal-form modules") {
    CHECK(kind_of([] { parse_module("module X { variables { Bo-x : -> BOOL } }"); }) == ErrKind::Lex);
    Module9 m = parse_module("module X.nf { add signature { private: sorts Bo-BOOL } }");
    REQUIRE(m.sorts.size() == 1);
    CHECK(m.sorts[0].name.hidden());
    CHECK(m.sorts[0].name.text == "BOOL");
}

TEST_CASE("application requires an adjacent parenthesis") {
    CHECK_NOTHROW(parse_term("f(x, g(y))"));
    CHECK(kind_of([] { parse_term("f (x)"); }) == ErrKind::Parse);
}

TEST_CASE("overload resolution picks the declaration by argument sorts") {
    Module9 m = parse_module(
        "module O { add signature { public: sorts A, B constructors a : -> A  b : -> B "
        "non-constructors f : A -> A  f : B -> A } "
        "equations { [x1] f(a) = a  [x2] f(b) = a } }");
    resolve_module(m);
    const auto& e1 = std::get<Equation>(m.equations[0]).eq.lhs;
    const auto& e2 = std::get<Equation>(m.equations[1]).eq.lhs;
    CHECK(e1.sortv == std::vector<SpecName>{"A"});
    CHECK(e2.sortv == std::vector<SpecName>{"B"});
    Module9 bad = parse_module(
        "module O { add signature { public: sorts A constructors a : -> A } equations { [x] g(a) = a } }");
    CHECK(kind_of([&] { resolve_module(bad); }) == ErrKind::Spec);
}

TEST_CASE("check_signature rejects one disambiguated name with two targets") {
    Module9 m = parse_module(
        "module O { add signature { public: sorts A, B non-constructors f : A -> A  f : A -> B } }");
    CHECK(kind_of([&] { check_signature(m); }) == ErrKind::Spec);
}

TEST_CASE("print then parse is the identity on every corpus module") {
    std::vector<std::string> files = corpus_files();
    files.push_back("copydemo.asfp");
    AsfSpec s = parse_specification(corpus_sources(files));
    std::string all;
    for (const auto& m : s.modules) all += print_module(m, {false, s.abbrevs}) + "\n";
    AsfSpec back = parse_specification({{"printed.asfp", all}});
    REQUIRE(back.modules.size() == s.modules.size());
    for (size_t i = 0; i < s.modules.size(); ++i) {
        CAPTURE(s.modules[i].name);
        CHECK(back.modules[i] == s.modules[i]);
        CHECK(print_module(back.modules[i], {false, s.abbrevs}) == print_module(s.modules[i], {false, s.abbrevs}));
    }
}

TEST_CASE("disambiguated printing annotates every function with its argument sorts") {
    AsfSpec s = corpus("Naturals");
    auto r = normal_form(s, ProveDb{}, {}, false, true);
    CHECK(r.text.find("+[NAT,NAT]") != std::string::npos);
    CHECK(r.text.find("s[NAT](") != std::string::npos);
    Module9 back = parse_module(r.text, {true});
    resolve_module(back);
    CHECK(canonical(back, s.abbrevs) == canonical(r.triple.module, s.abbrevs));
}

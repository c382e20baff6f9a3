#include <doctest.h>

#include "asfplus/core_model.hpp"

using namespace asfplus;

TEST_CASE("ModInstName renders and parses instance chains") {
    ModInstName n{"Naturals", {"Int1", "X"}};
    CHECK(n.render() == "Naturals[Int1,X]");
    CHECK(ModInstName::parse("Naturals[Int1,X]") == n);
    CHECK(ModInstName::parse("Booleans") == ModInstName{"Booleans", {}});
}

TEST_CASE("short_modinst_name uses the abbreviation and adds instances only on collision") {
    AbbrevTable ab{{"Naturals", "Nat"}};
    std::map<std::string, ModInstName> in_use;
    CHECK(short_modinst_name({"Naturals", {}}, ab, in_use) == "Nat");
    CHECK(short_modinst_name({"Naturals", {"Int1"}}, ab, in_use) == "Nat[Int1]");
    std::map<std::string, ModInstName> fresh;
    CHECK(short_modinst_name({"Naturals", {"Int1"}}, ab, fresh) == "Nat");
}

TEST_CASE("RenderCtx applies minimal disambiguation") {
    AbbrevTable ab{{"OrdSequences", "OSeq"}};
    RenderCtx one(ab, {ModInstName{"OrdSequences", {"ONSeq"}}});
    CHECK(one.name(SpecName::hidden_in({"OrdSequences", {"ONSeq"}}, "i1")) == "OSeq-i1");
    RenderCtx two(ab, {ModInstName{"OrdSequences", {"A"}}, ModInstName{"OrdSequences", {}}});
    CHECK(two.name(SpecName::hidden_in({"OrdSequences", {"A"}}, "i1")) == "OSeq[A]-i1");
    CHECK(two.name(SpecName::hidden_in({"OrdSequences", {}}, "i1")) == "OSeq-i1");
    CHECK(two.name(SpecName("plain")) == "plain");
}

TEST_CASE("get_renaming maps keys whose written name differs from the origin name") {
    OriginFunc of;
    of[{SpecName("and"), {"BOOL", "BOOL"}}] = {"and", {"Booleans", {}}, SymType::Function, Visibility::Hidden};
    of[{SpecName("BOOL"), {}}] = {"BOOL", {"Booleans", {}}, SymType::Sort, Visibility::Public};
    auto r = get_renaming(of, {SymType::Function});
    REQUIRE(r.size() == 1);
    CHECK(r.begin()->second == SpecName::hidden_in({"Booleans", {}}, "and"));
    CHECK(get_renaming(of, {SymType::Sort}).empty());
}

TEST_CASE("references_same_object compares origins recursively through argument sorts") {
    ModInstName nat{"Naturals", {}};
    OriginFunc a, b;
    a[{SpecName("NAT"), {}}] = {"NAT", nat, SymType::Sort, Visibility::Public};
    a[{SpecName("greater"), {"NAT", "NAT"}}] = {"greater", {"OrdNaturals", {}}, SymType::Function, Visibility::Public};
    SpecName hn = SpecName::hidden_in(nat, "NAT");
    SpecName hg = SpecName::hidden_in({"OrdNaturals", {}}, "greater");
    b[{hn, {}}] = {"NAT", nat, SymType::Sort, Visibility::Hidden};
    b[{hg, {hn, hn}}] = {"greater", {"OrdNaturals", {}}, SymType::Function, Visibility::Hidden};
    CHECK(references_same_object({SpecName("greater"), {"NAT", "NAT"}}, a, {hg, {hn, hn}}, b));
    CHECK_FALSE(references_same_object({SpecName("NAT"), {}}, a, {hg, {}}, b));
}

TEST_CASE("combine_dependencies unions dependents per namespace") {
    ModInstName bo{"Booleans", {}}, nat{"Naturals", {}}, on{"OrdNaturals", {}};
    DepFunc d1{{bo, {nat}}, {nat, {}}};
    DepFunc d2{{bo, {on}}, {on, {}}};
    DepFunc c = combine_dependencies({d1, d2});
    CHECK(c.at(bo) == std::set<ModInstName>{nat, on});
    CHECK(c.at(nat).empty());
    CHECK(c.size() == 3);
}

TEST_CASE("diagnostics carry position, code and term") {
    NormError e(ErrKind::NameClash, "sort C (exABC vs exABC[Copy])", Pos{"copydemo.asfp", 18, 1});
    CHECK(e.diagnostic() == "copydemo.asfp:18:1: E-NAMECLASH NAMENSKONFLIKT: sort C (exABC vs exABC[Copy]) (name clash)");
}

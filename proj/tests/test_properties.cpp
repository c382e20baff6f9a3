#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace asfplus;
using namespace testsupport;

TEST_CASE("normal forms of the corpus do not depend on import order") {
    std::mt19937 rng(11);
    AsfSpec base = corpus("OrdNatSequences");
    ProveDb db = corpus_db();
    for (const char* top : {"Naturals", "Integers", "OrdNatSequences", "SeqOfSeq", "Nat3"}) {
        base.top = top;
        NormalFormTriple ref = nf(top, base, db);
        for (int k = 0; k < 5; ++k) {
            AsfSpec p = with_permuted_imports(base, rng);
            CAPTURE(top);
            CHECK(same_nf(ref, nf(top, p, db)));
        }
    }
}

TEST_CASE("generated hierarchies: import order invariance") {
    std::mt19937 rng(12);
    int compared = 0;
    for (int round = 0; round < 200; ++round) {
        Hierarchy h = random_hierarchy(rng);
        AsfSpec s = h.spec();
        if (nf_verdict(s) != Verdict::Accept) continue;
        NormalFormTriple ref = nf(s.top, s, ProveDb{});
        AsfSpec p = with_permuted_imports(s, rng);
        CAPTURE(h.text());
        if (nf_verdict(p) != Verdict::Accept) {
            FAIL("permuted imports changed the verdict");
            continue;
        }
        CHECK(same_nf(ref, nf(p.top, p, ProveDb{})));
        ++compared;
    }
    CHECK(compared > 50);
}

TEST_CASE("repeating a use-import is a no-op") {
    AsfSpec s = corpus("Integers");
    NormalFormTriple ref = nf("Integers", s, ProveDb{});
    for (auto& m : s.modules)
        if (m.name == "Integers") m.imports.push_back(m.imports.front());
    CHECK(same_nf(ref, nf("Integers", s, ProveDb{})));
}

TEST_CASE("normalizer verdicts agree with the identification oracle") {
    std::mt19937 rng(13);
    std::map<Verdict, int> seen;
    for (int round = 0; round < 500; ++round) {
        Hierarchy h = random_hierarchy(rng);
        Verdict want = oracle_verdict(h);
        Verdict got = nf_verdict(h.spec());
        CAPTURE(h.text());
        CHECK(static_cast<int>(got) == static_cast<int>(want));
        ++seen[want];
    }
    CHECK(seen[Verdict::Accept] > 0);
    CHECK(seen[Verdict::Clash] > 0);
}

TEST_CASE("printed normal forms of generated hierarchies round trip") {
    std::mt19937 rng(14);
    for (int round = 0; round < 100; ++round) {
        Hierarchy h = random_hierarchy(rng);
        AsfSpec s = h.spec();
        if (nf_verdict(s) != Verdict::Accept) continue;
        auto r = normal_form(s, ProveDb{});
        Module9 back = parse_module(r.text);
        resolve_module(back);
        CAPTURE(r.text);
        CHECK(print_module(canonical(back, s.abbrevs), {false, s.abbrevs}) ==
              print_module(canonical(r.triple.module, s.abbrevs), {false, s.abbrevs}));
    }
}

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "asfplus/cli.hpp"
#include "support.hpp"

using namespace asfplus;
using namespace testsupport;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "asfplus");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

std::string cpath(const std::string& f) { return std::string(ASFPLUS_CORPUS_DIR) + "/" + f; }

std::vector<std::string> with_corpus(std::vector<std::string> args) {
    for (const auto& f : corpus_files()) args.push_back(cpath(f));
    return args;
}

}  // namespace

TEST_CASE("check accepts the corpus") {
    Run r = run(with_corpus({"check"}));
    CHECK(r.rc == 0);
    CHECK(r.out.find("ok:") == 0);
}

TEST_CASE("normalize writes the normal form to stdout") {
    Run r = run(with_corpus({"normalize", "--top", "Integers", "-o", "-", "--provedb", cpath("corpus.provedb")}));
    CHECK(r.rc == 0);
    CHECK(r.out.find("module Integers.nf") != std::string::npos);
    CHECK(r.out.find("INT") != std::string::npos);
}

TEST_CASE("name clashes exit with status 1 and a positioned diagnostic") {
    Run r = run({"normalize", cpath("copydemo.asfp"), "--top", "CopyDemo", "-o", "-"});
    CHECK(r.rc == 1);
    CHECK(r.err.find("copydemo.asfp:18:1: E-NAMECLASH NAMENSKONFLIKT: sort C") != std::string::npos);
}

TEST_CASE("semantic errors exit with status 1 without a prove-db") {
    auto tmp = std::filesystem::temp_directory_path() / "asfplus_empty.provedb";
    std::filesystem::remove(tmp);
    Run r = run(with_corpus({"normalize", "--top", "OrdNatSequences", "-o", "-", "--provedb", tmp.string()}));
    CHECK(r.rc == 1);
    CHECK(r.err.find("irref") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run({}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);
    CHECK(run({"check", "/nonexistent/file.asfp"}).rc == 2);
    CHECK(run({"diagram", "--format", "svg", cpath("booleans.asfp")}).rc == 2);
}

TEST_CASE("expand prints generated equations") {
    Run r = run({"expand", cpath("booleans.asfp")});
    CHECK(r.rc == 0);
    CHECK(r.out.find("[me-and1]") != std::string::npos);
}

TEST_CASE("prove record, list and validate maintain a ledger") {
    auto tmp = std::filesystem::temp_directory_path() / "asfplus_cli.provedb";
    std::filesystem::remove(tmp);
    std::vector<std::string> files{cpath("booleans.asfp"), cpath("naturals.asfp"), cpath("ordnaturals.asfp")};
    for (const char* l : {"irref", "trans", "total"}) {
        std::vector<std::string> a{"prove", "record", "OrdNaturals", l, "--proof-ref", "by hand",
                                   "--provedb", tmp.string()};
        a.insert(a.end(), files.begin(), files.end());
        CHECK(run(a).rc == 0);
    }
    Run l = run({"prove", "list", "--provedb", tmp.string()});
    CHECK(l.rc == 0);
    CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 3);
    std::vector<std::string> v{"prove", "validate", "--provedb", tmp.string()};
    v.insert(v.end(), files.begin(), files.end());
    CHECK(run(v).rc == 0);
    std::vector<std::string> bad{"prove", "record", "OrdNaturals", "nosuch", "--proof-ref", "x",
                                 "--provedb", tmp.string()};
    bad.insert(bad.end(), files.begin(), files.end());
    CHECK(run(bad).rc == 1);
    std::filesystem::remove(tmp);
}

TEST_CASE("diagram writes ascii to stdout") {
    Run r = run(with_corpus({"diagram", "--top", "Integers", "--format", "ascii", "-o", "-"}));
    CHECK(r.rc == 0);
    CHECK(r.out.find("Naturals[Int1]") != std::string::npos);
}

#include "asfplus/prove_db.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace asfplus {

namespace {

struct Fnv {
    unsigned long long h = 1469598103934665603ull;
    void add(const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", h);
        return buf;
    }
};

struct Canon {
    std::map<SpecName, int> vars;
    Fnv f;

    void term(const Term& t) {
        if (t.is_var()) {
            auto [it, fresh] = vars.emplace(t.name, static_cast<int>(vars.size()));
            f.add("v" + std::to_string(it->second));
            return;
        }
        f.add("f" + t.name.text + "/" + std::to_string(t.args.size()));
        for (const auto& a : t.args) term(a);
    }
    void eqs(const std::vector<Eq>& es) {
        f.add("#" + std::to_string(es.size()));
        for (const auto& e : es) {
            term(e.lhs);
            f.add("=");
            term(e.rhs);
        }
    }
};

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string clause_fingerprint(const Clause& c) {
    Canon k;
    k.eqs(c.ante);
    k.f.add("-->");
    k.eqs(c.succ);
    return k.f.hex();
}

std::string content_digest(const std::string& text) {
    Fnv f;
    f.add(text);
    return f.hex();
}

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ProveDb ProveDb::parse(const std::string& text, const std::string& origin) {
    ProveDb db;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = split_tabs(line);
        if (f.size() != 6 || f[0].empty() || f[1].empty() || f[2].size() != 16)
            throw NormError(ErrKind::Format, "malformed prove-db record", Pos{origin, no, 1});
        ProofRecord r{f[0], f[1], f[2], f[3], f[4], f[5]};
        for (const auto& o : db.records_)
            if (o.module == r.module && o.label == r.label)
                throw NormError(ErrKind::Format, "duplicate record for " + r.module + "/" + r.label, Pos{origin, no, 1});
        db.records_.push_back(std::move(r));
    }
    return db;
}

ProveDb ProveDb::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string ProveDb::serialize() const {
    std::ostringstream os;
    os << "# module\tlabel\tfingerprint\tproof-ref\tspec-digest\ttimestamp\n";
    for (const auto& r : records_)
        os << r.module << '\t' << r.label << '\t' << r.fingerprint << '\t' << r.proof_ref << '\t' << r.spec_digest
           << '\t' << r.timestamp << '\n';
    return os.str();
}

void ProveDb::store(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw NormError(ErrKind::Format, "cannot write " + path);
    out << serialize();
}

bool ProveDb::is_proven(const std::string& module, const std::string& label, const Clause& clause) const {
    std::string fp = clause_fingerprint(clause);
    for (const auto& r : records_)
        if (r.module == module && r.label == label) return r.fingerprint == fp;
    return false;
}

void ProveDb::record(const std::string& module, const std::string& label, const std::optional<Clause>& goal,
                     const std::string& proof_ref, const std::string& spec_digest, std::string timestamp) {
    if (!goal) throw NormError(ErrKind::UnknownGoal, "no goal [" + label + "] in module " + module);
    if (timestamp.empty()) timestamp = iso_timestamp();
    ProofRecord r{module, label, clause_fingerprint(*goal), proof_ref, spec_digest, timestamp};
    for (auto& o : records_)
        if (o.module == module && o.label == label) {
            o = r;
            return;
        }
    records_.push_back(std::move(r));
}

std::vector<ProofRecord> ProveDb::stale(const GoalLookup& lookup) const {
    std::vector<ProofRecord> out;
    for (const auto& r : records_) {
        auto g = lookup(r.module, r.label);
        if (!g || clause_fingerprint(*g) != r.fingerprint) out.push_back(r);
    }
    return out;
}

}  // namespace asfplus

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asfplus/core_model.hpp"

namespace asfplus {

struct ProofRecord {
    std::string module;
    std::string label;
    std::string fingerprint;
    std::string proof_ref;
    std::string spec_digest;
    std::string timestamp;

    bool operator==(const ProofRecord&) const = default;
};

// Canonical hash of a resolved clause: labels are ignored, variables are
// numbered by first occurrence, function symbols contribute their user name.
std::string clause_fingerprint(const Clause& c);
std::string content_digest(const std::string& text);
std::string iso_timestamp();

using GoalLookup = std::function<std::optional<Clause>(const std::string& module, const std::string& label)>;

class ProveDb {
public:
    static ProveDb load(const std::string& path);
    static ProveDb parse(const std::string& text, const std::string& origin = "<provedb>");
    void store(const std::string& path) const;
    std::string serialize() const;

    bool is_proven(const std::string& module, const std::string& label, const Clause& clause) const;
    void record(const std::string& module, const std::string& label, const std::optional<Clause>& goal,
                const std::string& proof_ref, const std::string& spec_digest, std::string timestamp = {});
    // Records whose goal no longer exists or whose clause changed.
    std::vector<ProofRecord> stale(const GoalLookup& lookup) const;

    const std::vector<ProofRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }

private:
    std::vector<ProofRecord> records_;
};

}  // namespace asfplus

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asfplus/core_model.hpp"
#include "asfplus/normalizer.hpp"

namespace asfplus {

struct ParamTuple {
    NameList names;
    bool bound = false;
};

struct BindingEdge {
    ModInstName source;
    ModInstName owner;
    NameList params;

    auto operator<=>(const BindingEdge&) const = default;
    bool operator==(const BindingEdge&) const = default;
};

struct NameColumns {
    std::vector<std::string> pub, priv, hidden;
};

struct DiagramTree {
    ModInstName node;
    std::vector<DiagramTree> children;
    std::vector<ParamTuple> param_tuples;
    std::set<BindingEdge> binding_edges;  // filled on the root only
    std::optional<NameColumns> names;
};

struct DiagramOptions {
    bool expanded = false;
    bool names = false;
};

// Containment pairs (outer, inner) of the transitive reduction of depf.
std::set<std::pair<ModInstName, ModInstName>> depf_reduction(const DepFunc& depf);

DiagramTree structure_tree(const NormalFormTriple& nf, const std::vector<BindRecord>& bind_log,
                           const DiagramOptions& opts = {});
std::string emit_dot(const DiagramTree& tree);
std::string emit_ascii(const DiagramTree& tree);

// Reads back the (outer, inner) label pairs of the cluster nesting of emit_dot output.
std::set<std::pair<std::string, std::string>> dot_nesting(const std::string& dot);

}  // namespace asfplus

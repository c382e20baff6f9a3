#include "asfplus/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace asfplus {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

ModInstName own_namespace(const Module9& m) {
    std::string n = m.name;
    if (n.size() > 3 && n.compare(n.size() - 3, 3, ".nf") == 0) n.resize(n.size() - 3);
    return ModInstName::parse(n);
}

// Namespaces in the order their declarations first appear in the module.
std::vector<ModInstName> appearance_order(const NormalFormTriple& nf) {
    std::vector<ModInstName> out;
    auto add = [&](const ModInstName& n) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    for (const auto& s : nf.module.sorts)
        if (auto it = nf.originf.find({s.name, {}}); it != nf.originf.end()) add(it->second.modiname);
    for (const auto& f : nf.module.funcs)
        if (auto it = nf.originf.find(f.name); it != nf.originf.end()) add(it->second.modiname);
    for (const auto& [d, o] : nf.originf) add(o.modiname);
    for (const auto& [n, deps] : nf.depf) add(n);
    return out;
}

}  // namespace

std::set<std::pair<ModInstName, ModInstName>> depf_reduction(const DepFunc& depf) {
    std::map<ModInstName, std::set<ModInstName>> below;  // outer -> inner
    for (const auto& [inner, outers] : depf)
        for (const auto& o : outers)
            if (o != inner) below[o].insert(inner);
    std::map<ModInstName, std::set<ModInstName>> closure;
    std::function<const std::set<ModInstName>&(const ModInstName&, std::set<ModInstName>&)> reach =
        [&](const ModInstName& n, std::set<ModInstName>& onpath) -> const std::set<ModInstName>& {
        if (auto it = closure.find(n); it != closure.end()) return it->second;
        std::set<ModInstName> r;
        onpath.insert(n);
        for (const auto& c : below[n]) {
            r.insert(c);
            if (onpath.count(c)) continue;
            const auto& sub = reach(c, onpath);
            r.insert(sub.begin(), sub.end());
        }
        onpath.erase(n);
        return closure[n] = std::move(r);
    };
    std::set<std::pair<ModInstName, ModInstName>> out;
    for (const auto& [o, inners] : below) {
        std::set<ModInstName> path;
        reach(o, path);
    }
    for (const auto& [o, inners] : below)
        for (const auto& c : inners) {
            bool via = false;
            for (const auto& m : inners)
                if (m != c && closure[m].count(c)) via = true;
            if (!via) out.emplace(o, c);
        }
    return out;
}

DiagramTree structure_tree(const NormalFormTriple& nf, const std::vector<BindRecord>& bind_log,
                           const DiagramOptions& opts) {
    auto order = appearance_order(nf);
    auto rank = [&](const ModInstName& n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
    std::map<ModInstName, std::vector<ModInstName>> kids;
    for (const auto& [o, c] : depf_reduction(nf.depf)) kids[o].push_back(c);

    std::set<BindingEdge> edges;
    std::map<ModInstName, std::vector<ParamTuple>> tuples;
    for (const auto& b : bind_log) {
        if (!nf.depf.count(b.paradefmod)) continue;
        ModInstName src{b.act_module, {}};
        if (!nf.depf.count(src))
            for (const auto& [n, d] : nf.depf)
                if (n.module == b.act_module) {
                    src = n;
                    break;
                }
        BindingEdge e{src, b.paradefmod, b.params};
        if (!edges.insert(e).second) continue;
        tuples[b.paradefmod].push_back({b.params, true});
        if (opts.expanded) {
            ModInstName importer = ModInstName::parse(b.importer);
            auto& k = kids[importer];
            if (nf.depf.count(importer) && std::find(k.begin(), k.end(), src) == k.end()) k.push_back(src);
        }
    }
    for (const auto& p : nf.module.params) {
        auto names = p.names();
        for (const auto& [d, o] : nf.originf)
            if (o.vis == Visibility::Parameter && !d.name.ns && !names.empty() && d.name.text == names[0]) {
                tuples[o.modiname].push_back({names, false});
                break;
            }
    }
    for (auto& [n, k] : kids) std::stable_sort(k.begin(), k.end(), [&](auto& a, auto& b) { return rank(a) < rank(b); });

    std::map<ModInstName, NameColumns> cols;
    if (opts.names) {
        for (const auto& [d, o] : nf.originf) {
            auto& c = cols[o.modiname];
            auto* v = o.vis == Visibility::Public ? &c.pub : o.vis == Visibility::Hidden ? &c.hidden : &c.priv;
            if (o.vis == Visibility::Parameter) continue;
            if (std::find(v->begin(), v->end(), o.uname) == v->end()) v->push_back(o.uname);
        }
        for (auto& [n, c] : cols)
            for (auto* v : {&c.pub, &c.priv, &c.hidden}) std::sort(v->begin(), v->end());
    }

    std::function<DiagramTree(const ModInstName&, int)> build = [&](const ModInstName& n, int depth) {
        DiagramTree t;
        t.node = n;
        t.param_tuples = tuples[n];
        if (opts.names) t.names = cols[n];
        if (depth < 64)
            for (const auto& c : kids[n]) t.children.push_back(build(c, depth + 1));
        return t;
    };
    DiagramTree root = build(own_namespace(nf.module), 0);
    root.binding_edges = edges;
    return root;
}

namespace {

struct DotWriter {
    std::ostringstream os;
    int next = 0;
    std::map<ModInstName, int> first_box;
    std::map<std::pair<ModInstName, NameList>, std::string> hexagons;

    void box(const DiagramTree& t, int depth) {
        int id = next++;
        first_box.emplace(t.node, id);
        std::string ind(2 * depth + 2, ' ');
        os << ind << "subgraph " << quoted("cluster_" + std::to_string(id)) << " {\n";
        os << ind << "  label=" << quoted(t.node.render()) << ";\n";
        os << ind << "  " << quoted("n" + std::to_string(id)) << " [shape=point, style=invis];\n";
        for (size_t i = 0; i < t.param_tuples.size(); ++i) {
            std::string hid = "p" + std::to_string(id) + "_" + std::to_string(i);
            hexagons.emplace(std::make_pair(t.node, t.param_tuples[i].names), hid);
            os << ind << "  " << quoted(hid) << " [shape=hexagon, label=" << quoted(join(t.param_tuples[i].names, ", "))
               << "];\n";
        }
        if (t.names) {
            std::string l = "public: " + join(t.names->pub, ", ") + "\\lprivate: " + join(t.names->priv, ", ") +
                            "\\lhidden: " + join(t.names->hidden, ", ") + "\\l";
            os << ind << "  " << quoted("v" + std::to_string(id)) << " [shape=plaintext, label=\"" << l << "\"];\n";
        }
        for (const auto& c : t.children) box(c, depth + 1);
        os << ind << "}\n";
    }
};

std::vector<std::string> ascii_box(const DiagramTree& t, const std::map<std::pair<ModInstName, NameList>, ModInstName>& arrows) {
    std::vector<std::string> inner{t.node.render()};
    for (const auto& p : t.param_tuples) {
        std::string h = "<( " + join(p.names, ", ") + " )>";
        if (auto it = arrows.find({t.node, p.names}); it != arrows.end()) h += " <== " + it->second.render();
        inner.push_back(h);
    }
    if (t.names) {
        std::vector<std::vector<std::string>> colv{t.names->pub, t.names->priv, t.names->hidden};
        std::vector<std::string> heads{"public", "private", "hidden"};
        std::vector<size_t> w(3);
        size_t rows = 0;
        for (int i = 0; i < 3; ++i) {
            w[i] = heads[i].size();
            for (const auto& s : colv[i]) w[i] = std::max(w[i], s.size());
            rows = std::max(rows, colv[i].size());
        }
        auto row = [&](const std::vector<std::string>& cells) {
            std::string r;
            for (int i = 0; i < 3; ++i) {
                std::string c = cells[i];
                c.resize(w[i], ' ');
                r += (i ? " : " : "") + c;
            }
            while (!r.empty() && r.back() == ' ') r.pop_back();
            return r;
        };
        inner.push_back(row(heads));
        for (size_t r = 0; r < rows; ++r) {
            std::vector<std::string> cells(3);
            for (int i = 0; i < 3; ++i)
                if (r < colv[i].size()) cells[i] = colv[i][r];
            inner.push_back(row(cells));
        }
    }
    for (const auto& c : t.children) {
        auto sub = ascii_box(c, arrows);
        inner.insert(inner.end(), sub.begin(), sub.end());
    }
    size_t width = 0;
    for (const auto& l : inner) width = std::max(width, l.size());
    std::vector<std::string> out;
    std::string edge = "+" + std::string(width + 2, '-') + "+";
    out.push_back(edge);
    for (auto l : inner) {
        l.resize(width, ' ');
        out.push_back("| " + l + " |");
    }
    out.push_back(edge);
    return out;
}

}  // namespace

std::string emit_dot(const DiagramTree& tree) {
    DotWriter w;
    w.os << "digraph " << quoted(tree.node.render()) << " {\n";
    w.os << "  compound=true;\n";
    w.box(tree, 0);
    for (const auto& e : tree.binding_edges) {
        auto src = w.first_box.find(e.source);
        auto dst = w.hexagons.find({e.owner, e.params});
        if (src == w.first_box.end() || dst == w.hexagons.end()) continue;
        std::string n = std::to_string(src->second);
        w.os << "  " << quoted("n" + n) << " -> " << quoted(dst->second)
             << " [ltail=" << quoted("cluster_" + n) << ", style=bold];\n";
    }
    w.os << "}\n";
    return w.os.str();
}

std::string emit_ascii(const DiagramTree& tree) {
    std::map<std::pair<ModInstName, NameList>, ModInstName> arrows;
    for (const auto& e : tree.binding_edges) arrows.emplace(std::make_pair(e.owner, e.params), e.source);
    std::string out;
    for (const auto& l : ascii_box(tree, arrows)) {
        std::string t = l;
        while (!t.empty() && t.back() == ' ') t.pop_back();
        out += t + "\n";
    }
    return out;
}

std::set<std::pair<std::string, std::string>> dot_nesting(const std::string& dot) {
    std::set<std::pair<std::string, std::string>> out;
    std::vector<std::string> stack;
    std::istringstream in(dot);
    std::string line;
    while (std::getline(in, line)) {
        auto s = line.find_first_not_of(' ');
        if (s == std::string::npos) continue;
        line = line.substr(s);
        if (line.rfind("subgraph \"cluster_", 0) == 0) {
            stack.emplace_back();
            continue;
        }
        if (line.rfind("label=\"", 0) == 0 && !stack.empty() && stack.back().empty()) {
            auto e = line.rfind('"');
            stack.back() = line.substr(7, e - 7);
            if (stack.size() > 1) out.emplace(stack[stack.size() - 2], stack.back());
            continue;
        }
        if (line == "}" && !stack.empty()) stack.pop_back();
    }
    return out;
}

}  // namespace asfplus

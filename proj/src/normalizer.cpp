#include "asfplus/normalizer.hpp"

#include <algorithm>

#include "asfplus/macro_expand.hpp"

namespace asfplus {

namespace {

[[noreturn]] void spec_fail(const std::string& msg, const Pos& p = {}) { throw NormError(ErrKind::Spec, msg, p); }

Visibility block_vis(Block b) { return b == Block::Public ? Visibility::Public : Visibility::Private; }

void add_local(OriginFunc& of, const DisambName& key, const Origin& o, const Pos& p) {
    if (!of.emplace(key, o).second) spec_fail("duplicate local declaration of " + key.debug(), p);
}

NormError name_clash(SymType t, const SpecName& n, const ModInstName& a, const ModInstName& b) {
    auto x = a.render(), y = b.render();
    if (y < x) std::swap(x, y);
    return NormError(ErrKind::NameClash, std::string(to_string(t)) + " " + n.debug() + " (" + x + " vs " + y + ")");
}

void merge_origins(OriginFunc& dst, const OriginFunc& src) {
    for (const auto& [k, o] : src) {
        auto [it, fresh] = dst.emplace(k, o);
        if (!fresh && it->second != o) throw name_clash(o.type, k.name, it->second.modiname, o.modiname);
    }
}

// Applies f to every name inside a key of an origin function.
OriginFunc rekey(const OriginFunc& of, const std::function<void(DisambName&, const Origin&)>& f) {
    OriginFunc out;
    for (const auto& [d, o] : of) {
        DisambName k = d;
        f(k, o);
        auto [it, fresh] = out.emplace(k, o);
        if (!fresh && it->second != o) spec_fail("two symbols collapse into " + k.debug());
    }
    return out;
}

std::map<std::string, std::string> as_map(const Binding& b) {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : b) m[k] = v;
    return m;
}

}  // namespace

const Module9& module_text(const std::string& modname, const AsfSpec& spec) {
    const Module9* m = spec.find(modname);
    if (!m) spec_fail("unknown module " + modname);
    return *m;
}

GeneralForm make_gf(const Module9& m) {
    GeneralForm gf;
    gf.module = m;
    ModInstName self{m.name, {}};
    auto& of = gf.originf;
    auto label = [&](const std::optional<SpecName>& l, const Pos& p) {
        if (l) add_local(of, {*l, {}}, {l->text, self, SymType::Label, Visibility::Private}, p);
    };
    for (const auto& s : m.sorts)
        add_local(of, {s.name, {}}, {s.name.text, self, SymType::Sort, block_vis(s.block)}, s.pos);
    for (const auto& f : m.funcs)
        add_local(of, f.name, {f.name.name.text, self, SymType::Function, block_vis(f.block)}, f.pos);
    for (const auto& p : m.params) {
        for (const auto& s : p.sorts)
            add_local(of, {s.name, {}}, {s.name.text, self, SymType::Sort, Visibility::Parameter}, s.pos);
        for (const auto& f : p.funcs)
            add_local(of, f.name, {f.name.name.text, self, SymType::Function, Visibility::Parameter}, f.pos);
        for (const auto& c : p.conditions) label(c.label, c.pos);
    }
    for (const auto& v : m.vars)
        add_local(of, {v.name, {}}, {v.name.text, self, SymType::Variable, Visibility::Private}, v.pos);
    for (const auto& item : m.equations)
        if (const auto* e = std::get_if<Equation>(&item)) label(e->label, e->pos);
    for (const auto& g : m.goals) label(g.label, g.pos);
    return gf;
}

std::pair<Module9, OriginFunc> make_consistent(Module9 m, OriginFunc of) {
    std::map<SpecName, SpecName> plain;
    for (const auto& [d, n] : get_renaming(of, {SymType::Label, SymType::Variable, SymType::Sort}))
        plain[d.name] = n;
    if (!plain.empty()) {
        auto f = [&](SpecName& s) {
            auto it = plain.find(s);
            if (it != plain.end()) s = it->second;
        };
        NameMap nm;
        nm.sort = f;
        nm.var = f;
        nm.label = f;
        map_names(m, nm);
        of = rekey(of, [&](DisambName& k, const Origin& o) {
            if (o.type != SymType::Function) f(k.name);
            for (auto& s : k.sortv) f(s);
        });
    }
    auto fren = get_renaming(of, {SymType::Function});
    if (!fren.empty()) {
        NameMap nm;
        nm.func = [&](SpecName& s, const std::vector<SpecName>& sv) {
            auto it = fren.find(DisambName{s, sv});
            if (it != fren.end()) s = it->second;
        };
        map_names(m, nm);
        of = rekey(of, [&](DisambName& k, const Origin& o) {
            if (o.type != SymType::Function) return;
            auto it = fren.find(k);
            if (it != fren.end()) k.name = it->second;
        });
    }
    auto retag = [&](const DisambName& k, SymType t, Block& b) {
        auto it = of.find(k);
        if (it == of.end() || it->second.type != t || it->second.vis == Visibility::Parameter) return;
        b = it->second.vis == Visibility::Public ? Block::Public : Block::Private;
    };
    for (auto& s : m.sorts) retag({s.name, {}}, SymType::Sort, s.block);
    for (auto& f : m.funcs) retag(f.name, SymType::Function, f.block);
    return {std::move(m), std::move(of)};
}

std::vector<NormalFormTriple> adapt_visibility(std::vector<NormalFormTriple> nfs, const SymTypes& types) {
    auto rank = [](Visibility v) { return v == Visibility::Public || v == Visibility::Private; };
    for (size_t i = 0; i < nfs.size(); ++i)
        for (size_t j = i + 1; j < nfs.size(); ++j) {
            std::multimap<std::string, std::pair<const DisambName*, Origin*>> idx;
            for (auto& [d, o] : nfs[j].originf) idx.emplace(o.uname, std::make_pair(&d, &o));
            for (auto& [di, oi] : nfs[i].originf) {
                if (!types.count(oi.type)) continue;
                auto [lo, hi] = idx.equal_range(oi.uname);
                for (auto it = lo; it != hi; ++it) {
                    const DisambName& dj = *it->second.first;
                    Origin& oj = *it->second.second;
                    if (di.sortv != dj.sortv) continue;
                    if (oi.modiname == oj.modiname) {
                        if (oi.type != oj.type)
                            spec_fail("symbol " + oi.uname + " of " + oi.modiname.render() +
                                      " is used with different symbol types");
                        if (oi.vis == Visibility::Hidden && rank(oj.vis))
                            oi.vis = oj.vis;
                        else if (oj.vis == Visibility::Hidden && rank(oi.vis))
                            oj.vis = oi.vis;
                        else if (oi.vis != oj.vis)
                            throw NormError(ErrKind::Export, std::string(to_string(oi.type)) + " " + oi.uname +
                                                                 " of " + oi.modiname.render() + " is " +
                                                                 to_string(oi.vis) + " in one import and " +
                                                                 to_string(oj.vis) + " in another");
                    } else if (di.name == dj.name) {
                        throw name_clash(oi.type, di.name, oi.modiname, oj.modiname);
                    }
                }
            }
        }
    for (auto& nf : nfs) std::tie(nf.module, nf.originf) = make_consistent(std::move(nf.module), std::move(nf.originf));
    return nfs;
}

NormalFormTriple combine_imports(const std::vector<NormalFormTriple>& nfs) {
    auto a = adapt_visibility(nfs, {SymType::Label, SymType::Variable, SymType::Sort});
    a = adapt_visibility(std::move(a), {SymType::Function});
    NormalFormTriple out;
    std::vector<Module9> mods;
    std::vector<DepFunc> dfs;
    for (const auto& x : a) {
        mods.push_back(x.module);
        dfs.push_back(x.depf);
        merge_origins(out.originf, x.originf);
    }
    out.module = module_union(mods);
    out.depf = combine_dependencies(dfs);
    return out;
}

NormalFormTriple combine_with_imports(const GeneralForm& gf, const NormalFormTriple& imp) {
    Module9 own = gf.module;
    own.imports.clear();
    NormalFormTriple out;
    out.module = module_union({imp.module, own});
    out.module.name = gf.module.name + ".nf";
    out.module.header_params = gf.module.header_params;
    out.module.pos = gf.module.pos;
    out.originf = imp.originf;
    merge_origins(out.originf, gf.originf);
    ModInstName self{gf.module.name, {}};
    out.depf[self];
    for (const auto& [n, deps] : imp.depf) {
        auto& d = out.depf[n];
        d.insert(deps.begin(), deps.end());
        d.insert(self);
    }
    return out;
}

NormalFormTriple combine_with_act_module(const NormalFormTriple& form, const ModInstName& paradefmod,
                                         const NormalFormTriple& act) {
    NormalFormTriple out;
    out.module = module_union({act.module, form.module});
    out.module.name = form.module.name;
    out.module.header_params = form.module.header_params;
    out.module.pos = form.module.pos;
    out.originf = act.originf;
    merge_origins(out.originf, form.originf);
    std::set<ModInstName> extra{paradefmod};
    if (auto it = form.depf.find(paradefmod); it != form.depf.end()) extra.insert(it->second.begin(), it->second.end());
    DepFunc act2;
    for (const auto& [n, deps] : act.depf) {
        auto& d = act2[n];
        d = deps;
        d.insert(extra.begin(), extra.end());
    }
    out.depf = combine_dependencies({form.depf, act2});
    return out;
}

NormalFormTriple hide(const NormalFormTriple& nf, const VisibilityFunc& vf) {
    std::map<std::string, Visibility> v;
    for (const auto& [n, vis] : vf) {
        bool pub = false, param = false, known = false;
        for (const auto& [d, o] : nf.originf) {
            if (o.uname != n) continue;
            if (o.vis == Visibility::Public) pub = true;
            if (o.vis == Visibility::Parameter) param = true;
            if (!d.name.ns) known = true;
        }
        if (!pub && !param) {
            if (known) spec_fail(n + " is not exported by " + nf.module.name);
            spec_fail("unknown name " + n + " in visibility list for " + nf.module.name);
        }
        v[n] = vis;
    }
    OriginFunc of = nf.originf;
    for (auto& [d, o] : of) {
        switch (o.vis) {
        case Visibility::Parameter: break;
        case Visibility::Public: {
            auto it = v.find(o.uname);
            o.vis = it == v.end() ? Visibility::Hidden : it->second;
            break;
        }
        case Visibility::Private:
        case Visibility::Hidden: o.vis = Visibility::Hidden; break;
        }
    }
    NormalFormTriple out;
    std::tie(out.module, out.originf) = make_consistent(nf.module, std::move(of));
    out.depf = nf.depf;
    return out;
}

ModInstName instanciate_modinst_name(const ModInstName& n, const std::string& inst) {
    if (std::find(n.insts.begin(), n.insts.end(), inst) != n.insts.end())
        spec_fail("instance name " + inst + " is already part of " + n.render());
    ModInstName out = n;
    out.insts.push_back(inst);
    return out;
}

NormalFormTriple instanciate(const NormalFormTriple& nf, const RenamingFunc& renaming,
                             const std::vector<BindingBlock>& blocks, const std::string& inst) {
    std::set<std::string> names;
    for (const auto& [n, r] : renaming) names.insert(n);
    for (const auto& b : blocks)
        for (const auto& [p, a] : b.binding) names.insert(p);
    std::set<ModInstName> toinst;
    for (const auto& n : names) {
        bool found = false;
        for (const auto& [d, o] : nf.originf)
            if (!d.name.ns && d.name.text == n) {
                toinst.insert(o.modiname);
                found = true;
            }
        if (!found) spec_fail(n + " is not a visible name of " + nf.module.name);
    }
    std::set<ModInstName> closure = toinst;
    for (const auto& n : toinst)
        if (auto it = nf.depf.find(n); it != nf.depf.end()) closure.insert(it->second.begin(), it->second.end());
    auto f = [&](ModInstName& m) {
        if (closure.count(m)) m = instanciate_modinst_name(m, inst);
    };
    auto fs = [&](SpecName& s) {
        if (s.ns) f(*s.ns);
    };
    NormalFormTriple out;
    out.module = nf.module;
    map_hidden_ns(out.module, f);
    for (const auto& [d, o] : nf.originf) {
        DisambName k = d;
        fs(k.name);
        for (auto& s : k.sortv) fs(s);
        Origin o2 = o;
        f(o2.modiname);
        out.originf.emplace(k, o2);
    }
    for (const auto& [n, deps] : nf.depf) {
        ModInstName k = n;
        f(k);
        auto& d = out.depf[k];
        for (auto x : deps) {
            f(x);
            d.insert(x);
        }
    }
    return out;
}

NormalFormTriple rename(const NormalFormTriple& nf, const RenamingFunc& renaming) {
    if (renaming.empty()) return nf;
    std::map<std::string, SpecName> r;
    for (const auto& [n, t] : renaming) r[n] = t;
    auto f = [&](SpecName& s) {
        if (s.ns) return;
        auto it = r.find(s.text);
        if (it != r.end()) s = it->second;
    };
    NormalFormTriple out;
    out.module = nf.module;
    out.depf = nf.depf;
    NameMap nm;
    nm.sort = f;
    nm.func = [&](SpecName& s, const std::vector<SpecName>&) { f(s); };
    map_names(out.module, nm);
    std::map<std::tuple<ModInstName, SymType, std::string>, std::string> merged;
    for (const auto& [d, o] : nf.originf) {
        DisambName k = d;
        Origin o2 = o;
        if (o.type == SymType::Sort || o.type == SymType::Function) {
            f(k.name);
            if (o.vis != Visibility::Hidden)
                if (auto it = r.find(o.uname); it != r.end()) o2.uname = it->second.text;
            auto [m, fresh] = merged.emplace(std::make_tuple(o.modiname, o.type, o2.uname), o.uname);
            if (!fresh && m->second != o.uname)
                spec_fail("renaming merges " + m->second + " and " + o.uname + " of " + o.modiname.render());
        }
        for (auto& s : k.sortv) f(s);
        auto [it, fresh] = out.originf.emplace(k, o2);
        if (!fresh && it->second != o2) spec_fail("renaming makes two symbols collapse into " + k.debug());
    }
    check_signature(out.module);
    return out;
}

SeparatedParams separate_para_block(const NormalFormTriple& nf, const std::set<std::string>& params) {
    SeparatedParams out;
    out.nf = nf;
    auto& ps = out.nf.module.params;
    auto it = std::find_if(ps.begin(), ps.end(), [&](const ParamSig& p) {
        auto n = p.names();
        return std::set<std::string>(n.begin(), n.end()) == params;
    });
    if (it == ps.end()) {
        std::string s;
        for (const auto& p : params) s += (s.empty() ? "" : ", ") + p;
        spec_fail(nf.module.name + " has no parameter block (" + s + ")");
    }
    out.sig = *it;
    ps.erase(it);
    bool found = false;
    for (auto o = out.nf.originf.begin(); o != out.nf.originf.end();) {
        bool drop = false;
        if (o->second.vis == Visibility::Parameter && !o->first.name.ns && params.count(o->first.name.text)) {
            if (!found) out.paradefmod = o->second.modiname;
            found = true;
            drop = true;
        }
        if (o->second.type == SymType::Label)
            for (const auto& c : out.sig.conditions)
                if (c.label && *c.label == o->first.name) drop = true;
        o = drop ? out.nf.originf.erase(o) : std::next(o);
    }
    if (!found) spec_fail("parameters of " + nf.module.name + " have no origin");
    return out;
}

ParRenaming get_parameter_renamings(const ParamSig& sig_p, const Binding& binding, const OriginFunc& of_act,
                                    const OriginFunc& of_act_av) {
    auto bmap = as_map(binding);
    auto bound = [&](const SpecName& p) {
        auto it = bmap.find(p.text);
        if (p.ns || it == bmap.end()) spec_fail("parameter " + p.debug() + " is not bound");
        return it->second;
    };
    auto same_in_av = [&](const DisambName& in_act, SymType t) -> std::optional<SpecName> {
        for (const auto& [d, o] : of_act_av)
            if (o.type == t && references_same_object(d, of_act_av, in_act, of_act)) return d.name;
        return std::nullopt;
    };
    ParRenaming out;
    std::map<SpecName, SpecName> sort_ren;
    std::set<SpecName> sorts_p;
    for (const auto& s : sig_p.sorts) {
        sorts_p.insert(s.name);
        DisambName b{SpecName(bound(s.name)), {}};
        auto it = of_act.find(b);
        if (it == of_act.end() || it->second.type != SymType::Sort)
            spec_fail("actual parameter " + b.name.debug() + " for " + s.name.debug() + " is not a visible sort",
                      s.pos);
        auto av = same_in_av(b, SymType::Sort);
        if (!av) spec_fail("actual parameter " + b.name.debug() + " is lost after visibility adaptation", s.pos);
        out[s.name.text] = *av;
        sort_ren[s.name] = b.name;
    }
    for (const auto& f : sig_p.funcs) {
        std::vector<SpecName> used = f.name.sortv;
        used.push_back(f.target);
        for (const auto& s : used) {
            if (sorts_p.count(s) || sort_ren.count(s)) continue;
            DisambName k{s, {}};
            if (!of_act_av.count(k)) spec_fail("sort " + s.debug() + " of parameter " + f.name.debug() +
                                               " is not known in the actual module", f.pos);
            std::optional<SpecName> in_act;
            for (const auto& [d, o] : of_act)
                if (o.type == SymType::Sort && references_same_object(d, of_act, k, of_act_av)) in_act = d.name;
            if (!in_act) spec_fail("sort " + s.debug() + " is not part of the actual module", f.pos);
            sort_ren[s] = *in_act;
        }
    }
    for (const auto& f : sig_p.funcs) {
        DisambName b{SpecName(bound(f.name.name)), {}};
        for (const auto& s : f.name.sortv) b.sortv.push_back(sort_ren.at(s));
        auto it = of_act.find(b);
        if (it == of_act.end() || it->second.type != SymType::Function)
            spec_fail("actual parameter " + b.debug() + " for " + f.name.debug() + " is not a visible function",
                      f.pos);
        auto av = same_in_av(b, SymType::Function);
        if (!av) spec_fail("actual parameter " + b.debug() + " is lost after visibility adaptation", f.pos);
        out[f.name.name.text] = *av;
    }
    return out;
}

namespace {

struct Matcher {
    std::map<SpecName, SpecName> goal_vs, goal_vk, cond_vs, cond_vk;
    std::map<SpecName, SpecName> sub;

    static void sorts(const Module9& m, std::map<SpecName, SpecName>& s, std::map<SpecName, SpecName>& k) {
        for (const auto& v : m.vars) {
            s[v.name] = v.sort;
            k[v.name] = v.constructor ? "c" : "n";
        }
    }

    bool term(const Term& g, const Term& c) {
        if (g.is_var()) {
            if (!c.is_var()) return false;
            if (goal_vs[g.name] != cond_vs[c.name] || goal_vk[g.name] != cond_vk[c.name]) return false;
            auto [it, fresh] = sub.emplace(g.name, c.name);
            return fresh ? true : it->second == c.name;
        }
        if (c.is_var() || g.name != c.name || g.sortv != c.sortv || g.args.size() != c.args.size()) return false;
        for (size_t i = 0; i < g.args.size(); ++i)
            if (!term(g.args[i], c.args[i])) return false;
        return true;
    }

    bool eqs(const std::vector<Eq>& g, const std::vector<Eq>& c) {
        if (g.size() != c.size()) return false;
        for (size_t i = 0; i < g.size(); ++i)
            if (!term(g[i].lhs, c[i].lhs) || !term(g[i].rhs, c[i].rhs)) return false;
        return true;
    }

    bool clause(const Clause& g, const Clause& c) {
        sub.clear();
        if (!eqs(g.ante, c.ante) || !eqs(g.succ, c.succ)) return false;
        std::set<SpecName> img;
        for (const auto& [a, b] : sub)
            if (!img.insert(b).second) return false;
        return true;
    }
};

}  // namespace

std::vector<std::string> check_semantic_conditions(const std::vector<Clause>& conds, const Module9& mod_form,
                                                   const Module9& mod_act_av, const OriginFunc& of_act_av,
                                                   const ProveDb& pdb, const AbbrevTable& abbrevs) {
    Matcher mt;
    Matcher::sorts(mod_act_av, mt.goal_vs, mt.goal_vk);
    Matcher::sorts(mod_form, mt.cond_vs, mt.cond_vk);
    RenderCtx ctx = RenderCtx::for_module(module_union({mod_act_av, mod_form}), abbrevs);
    std::vector<std::string> errs;
    for (const auto& c : conds) {
        bool ok = false;
        bool matched = false;
        for (const auto& g : mod_act_av.goals) {
            if (!g.label || !mt.clause(g, c)) continue;
            matched = true;
            auto it = of_act_av.find({*g.label, {}});
            if (it == of_act_av.end()) continue;
            if (pdb.is_proven(it->second.modiname.module, it->second.uname, g)) {
                ok = true;
                break;
            }
        }
        if (ok) continue;
        std::string text = print_clause(c, ctx);
        errs.push_back(matched ? "condition " + text + " matches a goal that has no valid proof record"
                               : "condition " + text + " matches no goal of the actual module");
    }
    return errs;
}

NormalFormTriple bind(const NormalFormTriple& form, const Binding& binding, const NormalFormTriple& act,
                      const ProveDb& pdb, const NormOptions& opts) {
    NormalFormTriple act1 = hide(act, {});
    std::set<std::string> dom;
    for (const auto& [p, a] : binding) dom.insert(p);
    auto sep = separate_para_block(form, dom);
    auto av = adapt_visibility({act1, sep.nf}, {SymType::Label, SymType::Variable, SymType::Sort});
    av = adapt_visibility(std::move(av), {SymType::Function});
    NormalFormTriple& act_av = av[0];
    NormalFormTriple frm = std::move(av[1]);
    ParRenaming pr = get_parameter_renamings(sep.sig, binding, act.originf, act_av.originf);

    std::map<SpecName, SpecName> sr, fr;
    for (const auto& s : sep.sig.sorts) sr[s.name] = pr.at(s.name.text);
    for (const auto& f : sep.sig.funcs) fr[f.name.name] = pr.at(f.name.name.text);
    auto fs = [&](SpecName& s) {
        if (auto it = sr.find(s); it != sr.end()) s = it->second;
    };
    NameMap nm;
    nm.sort = fs;
    nm.func = [&](SpecName& s, const std::vector<SpecName>&) {
        if (auto it = fr.find(s); it != fr.end()) s = it->second;
    };
    map_names(frm.module, nm);
    ParamSig conds = sep.sig;
    map_names(conds, nm);
    frm.originf = rekey(frm.originf, [&](DisambName& k, const Origin&) {
        for (auto& s : k.sortv) fs(s);
    });
    check_signature(module_union({act_av.module, frm.module}));

    if (!conds.conditions.empty()) {
        if (!act.module.params.empty())
            spec_fail("parameter conditions cannot be established for the parameterized module " + act.module.name);
        if (!opts.skip_semantic) {
            std::string act_name = act.module.name;
            if (act_name.size() > 3 && act_name.compare(act_name.size() - 3, 3, ".nf") == 0) act_name.resize(act_name.size() - 3);
            auto errs = check_semantic_conditions(conds.conditions, frm.module, act_av.module, act_av.originf, pdb,
                                                  opts.abbrevs);
            if (!errs.empty())
                throw NormError(ErrKind::Semantic,
                                std::to_string(errs.size()) + " unmet parameter condition(s) binding " +
                                    sep.paradefmod.render() + " to " + act_name,
                                {}, errs);
        }
    }
    return combine_with_act_module(frm, sep.paradefmod, act_av);
}

Normalizer::Normalizer(const AsfSpec& spec, const ProveDb& pdb, NormOptions opts)
    : spec_(spec), pdb_(pdb), opts_(std::move(opts)) {
    if (opts_.abbrevs.empty()) opts_.abbrevs = spec.abbrevs;
}

NormalFormTriple Normalizer::nf(const std::string& modname) {
    if (opts_.memoize)
        if (auto it = memo_.find(modname); it != memo_.end()) return it->second;
    if (std::find(stack_.begin(), stack_.end(), modname) != stack_.end()) {
        std::string cyc;
        for (auto it = std::find(stack_.begin(), stack_.end(), modname); it != stack_.end(); ++it) cyc += *it + " -> ";
        spec_fail("import cycle " + cyc + modname);
    }
    const Module9& m = module_text(modname, spec_);
    stack_.push_back(modname);
    struct Pop {
        std::vector<std::string>& s;
        ~Pop() { s.pop_back(); }
    } pop{stack_};

    auto has_block = [](const Module9& mod, const NameList& names) {
        std::set<std::string> want(names.begin(), names.end());
        for (const auto& p : mod.params) {
            auto n = p.names();
            if (std::set<std::string>(n.begin(), n.end()) == want) return true;
        }
        return false;
    };
    auto list_text = [](const NameList& l) {
        std::string s;
        for (const auto& x : l) s += (s.empty() ? "" : ", ") + x;
        return "(" + s + ")";
    };

    GeneralForm gf = make_gf(m);
    std::vector<NormalFormTriple> parts;
    for (const auto& imp : m.imports) {
        try {
            NormalFormTriple n = nf(imp.module);
            for (const auto& pl : imp.param_lists)
                if (!has_block(n.module, pl)) spec_fail(imp.module + " has no parameter block " + list_text(pl));
            n = hide(n, imp.vf);
            if (!imp.inst && (!imp.renaming.empty() || !imp.blocks.empty()))
                spec_fail("renaming or binding an import of " + imp.module + " requires an instance name");
            if (imp.inst) {
                n = instanciate(n, imp.renaming, imp.blocks, *imp.inst);
                n = rename(n, imp.renaming);
                for (const auto& b : imp.blocks) {
                    NormalFormTriple act = nf(b.act_module);
                    for (const auto& pl : b.act_params)
                        if (!has_block(act.module, pl))
                            spec_fail(b.act_module + " has no parameter block " + list_text(pl), b.pos);
                    NameList params;
                    for (const auto& [p, a] : b.binding) params.push_back(p);
                    ModInstName pdm;
                    for (const auto& [d, o] : n.originf)
                        if (o.vis == Visibility::Parameter && !d.name.ns && !params.empty() && d.name.text == params[0])
                            pdm = o.modiname;
                    try {
                        n = asfplus::bind(n, b.binding, act, pdb_, opts_);
                    } catch (NormError& e) {
                        if (!e.pos.known()) e.pos = b.pos;
                        throw;
                    }
                    bind_log_.push_back({modname, pdm, params, b.act_module});
                }
            }
            parts.push_back(std::move(n));
        } catch (NormError& e) {
            if (!e.pos.known()) e.pos = imp.pos;
            throw;
        }
    }
    NormalFormTriple result;
    try {
        NormalFormTriple imp = combine_imports(parts);
        OriginFunc probe = imp.originf;
        merge_origins(probe, gf.originf);
        resolve_module(gf.module, &imp.module);
        check_signature(gf.module, &imp.module);
        result = combine_with_imports(gf, imp);
    } catch (NormError& e) {
        if (!e.pos.known()) e.pos = m.pos;
        throw;
    }

    std::set<std::set<std::string>> have, declared;
    for (const auto& p : result.module.params) {
        auto n = p.names();
        have.emplace(n.begin(), n.end());
    }
    for (const auto& h : m.header_params) declared.emplace(h.begin(), h.end());
    if (have != declared) spec_fail("header parameters of " + modname + " do not match its open parameters", m.pos);

    if (opts_.memoize) memo_[modname] = result;
    return result;
}

NormalFormTriple nf(const std::string& modname, const AsfSpec& spec, const ProveDb& pdb, const NormOptions& opts) {
    Normalizer n(spec, pdb, opts);
    return n.nf(modname);
}

NormalFormResult normal_form(const AsfSpec& spec, const ProveDb& pdb, const NormOptions& opts, bool expand_macros,
                             bool disambiguate) {
    NormalFormResult r;
    r.triple = nf(spec.top, spec, pdb, opts);
    if (expand_macros) r.triple = expand_triple(r.triple);
    r.text = print_module(r.triple.module, {disambiguate, spec.abbrevs});
    return r;
}

std::optional<Clause> find_goal(const AsfSpec& spec, const std::string& module, const std::string& label) {
    if (!spec.find(module)) return std::nullopt;
    NormOptions o;
    o.skip_semantic = true;
    NormalFormTriple t = nf(module, spec, ProveDb{}, o);
    for (const auto& g : t.module.goals)
        if (g.label && !g.label->ns && g.label->text == label) return g;
    return std::nullopt;
}

namespace {

std::string eq_key(const Eq& e, const RenderCtx& c) { return print_term(e.lhs, c) + "=" + print_term(e.rhs, c); }

std::string decl_key(const FuncDecl& f) {
    std::string s = f.name.debug() + ">" + f.target.debug() + (f.constructor ? "c" : "n");
    return s;
}

template <class T, class K>
void sort_by(std::vector<T>& v, K key) {
    std::stable_sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
}

}  // namespace

Module9 canonical(const Module9& m, const AbbrevTable& abbrevs) {
    Module9 out = rendered(m, RenderCtx::for_module(m, abbrevs));
    RenderCtx plain;
    sort_by(out.sorts, [](const SortDecl& s) { return std::make_pair(s.block, s.name.text); });
    sort_by(out.funcs, [](const FuncDecl& f) { return std::make_pair(f.block, decl_key(f)); });
    sort_by(out.vars, [](const VarDecl& v) { return v.name.text; });
    sort_by(out.equations, [&](const EqItem& item) {
        if (const auto* e = std::get_if<Equation>(&item)) {
            std::string s = (e->label ? e->label->text : "") + ":" + eq_key(e->eq, plain);
            for (const auto& c : e->pos_conds) s += "&" + eq_key(c, plain);
            for (const auto& c : e->neg_conds) s += "!" + eq_key(c, plain);
            return s;
        }
        return "~" + print_term(std::get<MacroEquation>(item).head, plain);
    });
    sort_by(out.goals, [&](const Clause& c) { return print_clause(c, plain); });
    for (auto& p : out.params) {
        sort_by(p.sorts, [](const SortDecl& s) { return s.name.text; });
        sort_by(p.funcs, [](const FuncDecl& f) { return decl_key(f); });
        sort_by(p.conditions, [&](const Clause& c) { return print_clause(c, plain); });
    }
    sort_by(out.params, [](const ParamSig& p) {
        auto n = p.names();
        std::sort(n.begin(), n.end());
        return n;
    });
    for (auto& h : out.header_params) std::sort(h.begin(), h.end());
    std::sort(out.header_params.begin(), out.header_params.end());
    for (auto& f : out.funcs) f.pos = {};
    return out;
}

}  // namespace asfplus

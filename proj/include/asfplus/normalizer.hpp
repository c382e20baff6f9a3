#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asfplus/core_model.hpp"
#include "asfplus/prove_db.hpp"
#include "asfplus/syntax.hpp"

namespace asfplus {

using VisibilityFunc = std::vector<std::pair<std::string, Visibility>>;
using RenamingFunc = std::vector<std::pair<std::string, SpecName>>;
using Binding = std::vector<std::pair<std::string, std::string>>;
using ParRenaming = std::map<std::string, SpecName>;

const Module9& module_text(const std::string& modname, const AsfSpec& spec);
GeneralForm make_gf(const Module9& m);
std::pair<Module9, OriginFunc> make_consistent(Module9 m, OriginFunc of);
std::vector<NormalFormTriple> adapt_visibility(std::vector<NormalFormTriple> nfs, const SymTypes& types);
NormalFormTriple combine_imports(const std::vector<NormalFormTriple>& nfs);
NormalFormTriple combine_with_imports(const GeneralForm& gf, const NormalFormTriple& imp);
NormalFormTriple combine_with_act_module(const NormalFormTriple& form, const ModInstName& paradefmod,
                                         const NormalFormTriple& act);
NormalFormTriple hide(const NormalFormTriple& nf, const VisibilityFunc& vf);
ModInstName instanciate_modinst_name(const ModInstName& n, const std::string& inst);
NormalFormTriple instanciate(const NormalFormTriple& nf, const RenamingFunc& renaming,
                             const std::vector<BindingBlock>& blocks, const std::string& inst);
NormalFormTriple rename(const NormalFormTriple& nf, const RenamingFunc& renaming);

struct SeparatedParams {
    NormalFormTriple nf;
    ParamSig sig;
    ModInstName paradefmod;
};
SeparatedParams separate_para_block(const NormalFormTriple& nf, const std::set<std::string>& params);

ParRenaming get_parameter_renamings(const ParamSig& sig_p, const Binding& binding, const OriginFunc& of_act,
                                    const OriginFunc& of_act_av);

// Returns one message per unmet condition.
std::vector<std::string> check_semantic_conditions(const std::vector<Clause>& conds, const Module9& mod_form,
                                                   const Module9& mod_act_av, const OriginFunc& of_act_av,
                                                   const ProveDb& pdb, const AbbrevTable& abbrevs = {});

struct BindRecord {
    std::string importer;
    ModInstName paradefmod;
    NameList params;
    std::string act_module;
};

struct NormOptions {
    bool skip_semantic = false;
    bool memoize = true;
    AbbrevTable abbrevs;  // only used in diagnostics
};

NormalFormTriple bind(const NormalFormTriple& form, const Binding& binding, const NormalFormTriple& act,
                      const ProveDb& pdb, const NormOptions& opts = {});

class Normalizer {
public:
    Normalizer(const AsfSpec& spec, const ProveDb& pdb, NormOptions opts = {});

    NormalFormTriple nf(const std::string& modname);
    const std::vector<BindRecord>& bind_log() const { return bind_log_; }
    const AsfSpec& spec() const { return spec_; }

private:
    const AsfSpec& spec_;
    const ProveDb& pdb_;
    NormOptions opts_;
    std::map<std::string, NormalFormTriple> memo_;
    std::vector<std::string> stack_;
    std::vector<BindRecord> bind_log_;
};

NormalFormTriple nf(const std::string& modname, const AsfSpec& spec, const ProveDb& pdb, const NormOptions& opts = {});

struct NormalFormResult {
    NormalFormTriple triple;
    std::string text;
};
NormalFormResult normal_form(const AsfSpec& spec, const ProveDb& pdb, const NormOptions& opts = {},
                             bool expand_macros = false, bool disambiguate = false);

// The goal with the given label that module declares itself, resolved.
std::optional<Clause> find_goal(const AsfSpec& spec, const std::string& module, const std::string& label);

// Sorted copy used for structural comparisons of modules.
Module9 canonical(const Module9& m, const AbbrevTable& abbrevs = {});

}  // namespace asfplus

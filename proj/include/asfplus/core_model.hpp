#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace asfplus {

struct Pos {
    std::string file;
    int line = 0;
    int col = 0;
    bool known() const { return line > 0; }
    std::string str() const;
};

struct ModInstName {
    std::string module;
    std::vector<std::string> insts;

    std::string render() const;
    static ModInstName parse(const std::string& text);
    auto operator<=>(const ModInstName&) const = default;
    bool operator==(const ModInstName&) const = default;
};

// A user name, or a hidden name when ns is set. Hidden names are kept
// symbolic and only rendered as Short-uname when printed.
struct SpecName {
    std::string text;
    std::optional<ModInstName> ns;

    SpecName() = default;
    SpecName(std::string t) : text(std::move(t)) {}
    SpecName(const char* t) : text(t) {}
    static SpecName hidden_in(ModInstName n, std::string uname);

    bool hidden() const { return ns.has_value(); }
    bool empty() const { return text.empty() && !ns; }
    std::string debug() const;
    auto operator<=>(const SpecName&) const = default;
    bool operator==(const SpecName&) const = default;
};

struct DisambName {
    SpecName name;
    std::vector<SpecName> sortv;

    std::string debug() const;
    auto operator<=>(const DisambName&) const = default;
    bool operator==(const DisambName&) const = default;
};

enum class SymType { Label, Variable, Sort, Function };
enum class Visibility { Parameter, Public, Private, Hidden };

const char* to_string(SymType t);
const char* to_string(Visibility v);

struct Origin {
    std::string uname;
    ModInstName modiname;
    SymType type = SymType::Sort;
    Visibility vis = Visibility::Public;

    bool operator==(const Origin&) const = default;
};

using OriginFunc = std::map<DisambName, Origin>;
using DepFunc = std::map<ModInstName, std::set<ModInstName>>;
using SymTypes = std::set<SymType>;

enum class ErrKind { Spec, NameClash, Export, Semantic, Lex, Parse, Expansion, Format, UnknownGoal };

const char* error_code(ErrKind k);
const char* error_term(ErrKind k);
const char* error_gloss(ErrKind k);

struct NormError : std::runtime_error {
    ErrKind kind;
    Pos pos;
    std::vector<std::string> items;

    NormError(ErrKind k, const std::string& msg, Pos p = {}, std::vector<std::string> it = {})
        : std::runtime_error(msg), kind(k), pos(std::move(p)), items(std::move(it)) {}
    std::string diagnostic() const;
};

// ---- terms, clauses, equations ----

struct Term {
    enum class Kind { App, Var };
    Kind kind = Kind::App;
    SpecName name;
    std::vector<SpecName> sortv;
    SpecName sort;
    std::vector<Term> args;
    bool infix = false;
    bool annotated = false;
    Pos pos;

    static Term var(SpecName n, SpecName sort = {});
    static Term app(SpecName n, std::vector<Term> args = {});
    bool is_var() const { return kind == Kind::Var; }
    bool operator==(const Term& o) const;
};

struct Eq {
    Term lhs;
    Term rhs;
    bool implicit_true = false;

    bool operator==(const Eq& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Clause {
    std::optional<SpecName> label;
    std::vector<Eq> ante;
    std::vector<Eq> succ;
    Pos pos;

    bool operator==(const Clause& o) const {
        return label == o.label && ante == o.ante && succ == o.succ;
    }
};

struct Equation {
    std::optional<SpecName> label;
    Eq eq;
    std::vector<Eq> pos_conds;
    std::vector<Eq> neg_conds;
    Pos pos;

    bool operator==(const Equation& o) const {
        return label == o.label && eq == o.eq && pos_conds == o.pos_conds && neg_conds == o.neg_conds;
    }
};

struct MCond {
    bool match = false;
    Term var;
    Term pattern;
    Eq eq;

    bool operator==(const MCond& o) const {
        return match == o.match && (match ? var == o.var && pattern == o.pattern : eq == o.eq);
    }
};

struct MBody {
    enum class Kind { Leaf, Case, If };
    Kind kind = Kind::Leaf;
    Term leaf;
    std::vector<std::vector<MCond>> conds;  // per case branch; If uses conds[0]
    std::vector<MBody> sub;                 // branch bodies; If: then [, else]

    bool operator==(const MBody& o) const = default;
};

struct MacroEquation {
    Term head;
    MBody body;
    Pos pos;

    bool operator==(const MacroEquation& o) const { return head == o.head && body == o.body; }
};

using EqItem = std::variant<Equation, MacroEquation>;

// ---- signatures and modules ----

enum class Fixity { Plain, Prefix, Infix };
enum class Block { Public, Private };

struct FuncDecl {
    DisambName name;
    SpecName target;
    bool constructor = false;
    Fixity fixity = Fixity::Plain;
    Block block = Block::Public;
    Pos pos;

    bool operator==(const FuncDecl& o) const {
        return name == o.name && target == o.target && constructor == o.constructor &&
               fixity == o.fixity && block == o.block;
    }
};

struct SortDecl {
    SpecName name;
    Block block = Block::Public;
    Pos pos;

    bool operator==(const SortDecl& o) const { return name == o.name && block == o.block; }
};

struct Signature {
    std::vector<SpecName> sorts;
    std::vector<FuncDecl> cons;
    std::vector<FuncDecl> noncons;

    bool operator==(const Signature&) const = default;
};

struct ParamSig {
    std::vector<SortDecl> sorts;
    std::vector<FuncDecl> funcs;
    std::vector<Clause> conditions;

    std::vector<std::string> names() const;
    bool operator==(const ParamSig&) const = default;
};

struct VarDecl {
    SpecName name;
    SpecName sort;
    bool constructor = true;
    Pos pos;

    bool operator==(const VarDecl& o) const {
        return name == o.name && sort == o.sort && constructor == o.constructor;
    }
};

using NameList = std::vector<std::string>;

struct BindingBlock {
    std::vector<std::pair<std::string, std::string>> binding;
    std::string act_module;
    std::vector<NameList> act_params;
    Pos pos;

    bool operator==(const BindingBlock& o) const {
        return binding == o.binding && act_module == o.act_module && act_params == o.act_params;
    }
};

struct ImportDecl {
    std::string module;
    std::optional<std::string> inst;
    std::vector<std::pair<std::string, Visibility>> vf;
    std::vector<std::pair<std::string, SpecName>> renaming;
    std::vector<BindingBlock> blocks;
    std::vector<NameList> param_lists;
    Pos pos;

    bool operator==(const ImportDecl& o) const {
        return module == o.module && inst == o.inst && vf == o.vf && renaming == o.renaming &&
               blocks == o.blocks && param_lists == o.param_lists;
    }
};

struct Module9 {
    std::string name;
    std::string short_name;
    std::vector<NameList> header_params;
    std::vector<ImportDecl> imports;
    std::vector<ParamSig> params;
    std::vector<SortDecl> sorts;
    std::vector<FuncDecl> funcs;
    std::vector<VarDecl> vars;
    std::vector<EqItem> equations;
    std::vector<Clause> goals;
    Pos pos;

    Signature public_sig() const;
    Signature private_sig() const;
    std::map<SpecName, SpecName> varsort(bool constructor) const;
    bool operator==(const Module9& o) const;
};

struct NormalFormTriple {
    Module9 module;
    OriginFunc originf;
    DepFunc depf;
};
using GeneralForm = NormalFormTriple;

using AbbrevTable = std::map<std::string, std::string>;

// ---- helper calculus ----

std::string short_modinst_name(const ModInstName& n, const AbbrevTable& abbrevs,
                               std::map<std::string, ModInstName>& in_use);
SpecName get_spec_name(const Origin& o);
Module9 module_union(const std::vector<Module9>& mods);
std::map<DisambName, SpecName> get_renaming(const OriginFunc& of, const SymTypes& types);
bool references_same_object(const DisambName& d1, const OriginFunc& of1, const DisambName& d2,
                            const OriginFunc& of2);
DepFunc combine_dependencies(const std::vector<DepFunc>& dfs);

// Name traversal over every SpecName occurrence of a module. sort/var/label
// receive plain occurrences; func receives the function name together with
// its (already mapped) argument sort vector.
struct NameMap {
    std::function<void(SpecName&)> sort;
    std::function<void(SpecName&)> var;
    std::function<void(SpecName&)> label;
    std::function<void(SpecName&, const std::vector<SpecName>&)> func;
};

void map_names(Term& t, const NameMap& m);
void map_names(Eq& e, const NameMap& m);
void map_names(Clause& c, const NameMap& m);
void map_names(MBody& b, const NameMap& m);
void map_names(FuncDecl& d, const NameMap& m);
void map_names(Module9& mod, const NameMap& m);
void map_names(ParamSig& p, const NameMap& m);

// Visits every SpecName occurrence read-only, with the symbol type it denotes.
void visit_names(const Module9& mod, const std::function<void(const SpecName&, SymType)>& f);

void map_hidden_ns(Module9& mod, const std::function<void(ModInstName&)>& f);

// Rendering of symbolic hidden names.
class RenderCtx {
public:
    RenderCtx() = default;
    RenderCtx(const AbbrevTable& abbrevs, const std::set<ModInstName>& namespaces);
    static RenderCtx for_module(const Module9& m, const AbbrevTable& abbrevs);

    std::string prefix(const ModInstName& n) const;
    std::string name(const SpecName& s) const;

private:
    AbbrevTable abbrevs_;
    std::map<ModInstName, std::string> prefixes_;
};

std::set<ModInstName> hidden_namespaces(const Module9& m);

// Replaces every hidden SpecName by its rendered text, for comparisons across
// a print/parse cycle.
Module9 rendered(const Module9& m, const RenderCtx& ctx);

}  // namespace asfplus

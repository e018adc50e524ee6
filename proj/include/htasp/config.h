#pragma once

#include <htasp/ast.h>
#include <htasp/grounder.h>
#include <htasp/ht.h>

#include <optional>
#include <string>
#include <vector>

namespace htasp::config {

// Model fact format: ptype(T). root(T). subpart(T,S,Min,Max). attrdom(T,A,Lo,Hi).
// Any other rule of a model file is a constraint rule over the instance
// predicates inst(Id,T), parentOf(Parent,Child) and the integer variables
// val(Id,A) (instance files additionally state values as val(Id,A,V) facts).

struct Subpart {
    std::string parent;
    std::string child;
    Int         min{0};
    Int         max{0};
};

struct Attribute {
    std::string type;
    std::string name;
    Int         lo{0};
    Int         hi{0};
};

struct Model {
    std::vector<std::string> types;
    std::string              root;
    std::vector<Subpart>     subparts;
    std::vector<Attribute>   attributes;
    std::vector<Rule>        constraints;

    [[nodiscard]] bool                   declared(const std::string& type) const;
    [[nodiscard]] std::vector<Subpart>   subparts_of(const std::string& type) const;
    [[nodiscard]] std::vector<Attribute> attributes_of(const std::string& type) const;
};

struct Individual {
    Term        id;
    std::string type;

    friend bool operator==(const Individual&, const Individual&) = default;
    friend auto operator<=>(const Individual&, const Individual&) = default;
};

struct ParentLink {
    Term child;
    Term parent;

    friend bool operator==(const ParentLink&, const ParentLink&) = default;
    friend auto operator<=>(const ParentLink&, const ParentLink&) = default;
};

struct AttrValue {
    Term        id;
    std::string attr;
    Int         value{0};

    friend bool operator==(const AttrValue&, const AttrValue&) = default;
    friend auto operator<=>(const AttrValue&, const AttrValue&) = default;
};

struct Instance {
    std::vector<Individual> individuals;
    std::vector<ParentLink> parents;
    std::vector<AttrValue>  values;

    //! Sorts all three lists.
    void normalize();
    friend bool operator==(const Instance&, const Instance&) = default;
    friend auto operator<=>(const Instance&, const Instance&) = default;
};

enum class ViolationKind {
    UndeclaredType,
    BadParentType,
    Multiplicity,
    AttrDomain,
    MissingAttr,
    DuplicateAttr,
    UndeclaredAttr,
    MultipleRoots,
    DanglingParent,
    Constraint,
};

[[nodiscard]] const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind     kind;
    std::vector<Term> subjects;
    std::string       message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

[[nodiscard]] std::string to_string(const Violation& v);

template <class T>
struct Loaded {
    std::optional<T>            value;
    std::vector<RuleDiagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
};

//! Reads a model; diagnostics for bad multiplicities or domains, cyclic partonomy,
//! missing or duplicate root, undeclared types and unsafe constraint rules.
//! Diagnostics about the model as a whole use rule index facts.rules.size().
[[nodiscard]] Loaded<Model>    load_model(const Program& facts);
[[nodiscard]] Loaded<Instance> load_instance(const Program& facts);

//! Instance as inst/2, parentOf/2 and val/3 facts.
[[nodiscard]] Program instance_facts(const Instance& i);

//! All violations, ordered by kind, then subjects, then message.
[[nodiscard]] std::vector<Violation> check_instance(const Model& m, const Instance& i);

//! Hull of all attribute domains; [0,0] when the model has no attributes.
[[nodiscard]] Interval attribute_bounds(const Model& m);

//! Program whose answer sets under `mode` (bounds from attribute_bounds) are the
//! completions of `partial` accepted by check_instance.
//!
//! Every parent individual gets slots slot(Parent,Child,1..Max); the i-th child
//! of that type in `partial` takes the place of slot i. Throws Error if the
//! partial instance is invalid beyond missing parts or if an attribute domain
//! exceeds `solver_bounds`.
[[nodiscard]] Program translate(const Model& m, const Instance& partial, Semantics mode,
                                std::optional<Interval> solver_bounds = std::nullopt);

//! Instance described by an answer set of a translated program.
[[nodiscard]] Instance decode(const Model& m, const AnswerSet& a);

} // namespace htasp::config

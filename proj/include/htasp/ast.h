#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace htasp {

using Int = std::int64_t;

//! A program term: integer, symbolic constant, program variable or function term.
//!
//! Function terms name structured entities such as the integer variable
//! `w(a)` obtained by grounding `w(X)`; they always carry at least one argument.
class Term {
public:
    enum class Kind : std::uint8_t { Int, Sym, Func, Var };

    Term() = default;

    static Term integer(Int value);
    static Term symbol(std::string name);
    static Term variable(std::string name);
    static Term function(std::string name, std::vector<Term> args);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_int() const { return kind_ == Kind::Int; }
    [[nodiscard]] bool is_var() const { return kind_ == Kind::Var; }
    [[nodiscard]] Int value() const { return value_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<Term>& args() const { return args_; }
    [[nodiscard]] bool ground() const;

    friend bool operator==(const Term& lhs, const Term& rhs);
    friend std::strong_ordering operator<=>(const Term& lhs, const Term& rhs);

private:
    Kind              kind_{Kind::Int};
    Int               value_{0};
    std::string       name_;
    std::vector<Term> args_;
};

struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    [[nodiscard]] bool ground() const;
    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
};

enum class Cmp : std::uint8_t { Le, Eq, Ne, Lt, Gt, Ge };

[[nodiscard]] const char* to_string(Cmp cmp);
[[nodiscard]] bool        compare(Int lhs, Cmp cmp, Int rhs);

struct LinearTerm {
    Int  coeff{1};
    Term var;

    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
    friend std::strong_ordering operator<=>(const LinearTerm&, const LinearTerm&) = default;
};

//! `&sum{k1*x1;...;kn*xn} cmp k0`
struct LinearConstraint {
    std::vector<LinearTerm> terms;
    Cmp                     cmp{Cmp::Le};
    Int                     rhs{0};

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
    friend std::strong_ordering operator<=>(const LinearConstraint&, const LinearConstraint&) = default;
};

//! `&diff{x-y} <= k`
struct DiffConstraint {
    Term lhs;
    Term rhs;
    Int  bound{0};

    friend bool operator==(const DiffConstraint&, const DiffConstraint&) = default;
    friend std::strong_ordering operator<=>(const DiffConstraint&, const DiffConstraint&) = default;
};

//! `&in{lo..hi} =: target`; integer bounds are constants, any other term names a variable.
struct Assignment {
    Term lo;
    Term hi;
    Term target;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend std::strong_ordering operator<=>(const Assignment&, const Assignment&) = default;
};

using Element = std::variant<Atom, LinearConstraint, DiffConstraint, Assignment>;

[[nodiscard]] inline bool is_theory(const Element& e) { return !std::holds_alternative<Atom>(e); }
[[nodiscard]] bool        ground(const Element& e);

struct Literal {
    bool    negated{false};
    Element elem;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal&, const Literal&) = default;
};

//! A rule with at most one head element; no head means an integrity constraint.
struct Rule {
    std::optional<Element> head;
    std::vector<Literal>   body;

    [[nodiscard]] bool is_constraint() const { return !head.has_value(); }
    [[nodiscard]] bool is_fact() const { return head.has_value() && body.empty(); }
    [[nodiscard]] bool ground() const;

    friend bool operator==(const Rule&, const Rule&) = default;
    friend std::strong_ordering operator<=>(const Rule&, const Rule&) = default;
};

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(const Program&, const Program&) = default;
};

//! A program without program variables, together with the universe it was grounded over.
struct GroundProgram {
    std::vector<Rule> rules;
    std::vector<Term> universe;

    friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

// Builders. Linear elements without an explicit coefficient get coefficient 1.
[[nodiscard]] Atom             atom(std::string predicate, std::vector<Term> args = {});
[[nodiscard]] LinearConstraint sum(std::vector<LinearTerm> terms, Cmp cmp, Int rhs);
[[nodiscard]] DiffConstraint   diff(Term lhs, Term rhs, Int bound);
[[nodiscard]] Assignment       assign(Term lo, Term hi, Term target);
[[nodiscard]] Literal          pos(Element e);
[[nodiscard]] Literal          neg(Element e);

//! Problem found by check_wellformed: the offending rule index and the reason.
struct RuleDiagnostic {
    std::size_t rule{0};
    std::string reason;

    friend bool operator==(const RuleDiagnostic&, const RuleDiagnostic&) = default;
};

[[nodiscard]] bool is_symbol_name(std::string_view name);
[[nodiscard]] bool is_variable_name(std::string_view name);

[[nodiscard]] std::vector<RuleDiagnostic> check_wellformed(const Program& p);

struct Symbols {
    std::vector<Atom>    atoms;
    std::vector<Element> constraints; //!< theory elements, never plain atoms
    std::vector<Term>    int_vars;
};

//! Atoms, theory elements and integer-variable names of a ground program, sorted and deduplicated.
[[nodiscard]] Symbols atoms_of(const GroundProgram& g);
[[nodiscard]] Symbols atoms_of(const std::vector<Rule>& rules);

//! Integer-variable names referenced by a (ground) element.
void collect_int_vars(const Element& e, std::vector<Term>& out);

// Canonical text.
[[nodiscard]] std::string to_string(const Term& t);
[[nodiscard]] std::string to_string(const Atom& a);
[[nodiscard]] std::string to_string(const Element& e);
[[nodiscard]] std::string to_string(const Literal& l);
[[nodiscard]] std::string to_string(const Rule& r);

//! One rule per line, each terminated by a newline.
[[nodiscard]] std::string pretty_print(const Program& p);
[[nodiscard]] std::string pretty_print(const GroundProgram& g);

} // namespace htasp

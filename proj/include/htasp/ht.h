#pragma once

#include <htasp/ast.h>
#include <htasp/grounder.h>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace htasp {

//! Partial assignment of integers to integer-variable names; absent means undefined.
using Valuation = std::map<Term, Int>;

struct World {
    std::set<Atom> atoms;
    Valuation      val;

    friend bool operator==(const World&, const World&) = default;
};

//! A pair of worlds with here contained in there (atoms and valuation graph).
struct Interpretation {
    World here;
    World there;

    [[nodiscard]] bool valid() const;
    [[nodiscard]] bool total() const { return here == there; }
};

enum class WorldRef { Here, There };

enum class Semantics { Casp, Founded };

[[nodiscard]] const char* to_string(Semantics s);

struct AnswerSet {
    std::set<Atom> atoms;
    Valuation      val;

    friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

//! Canonical answer-set order: atoms lexicographically, then valuations by
//! variable name and value with undefined before defined.
[[nodiscard]] bool answer_set_less(const AnswerSet& lhs, const AnswerSet& rhs);
void sort_answer_sets(std::vector<AnswerSet>& sets);

[[nodiscard]] std::string to_string(const Valuation& v);
[[nodiscard]] std::string to_string(const AnswerSet& a);

// Satisfaction. All of these require ground input and throw Error otherwise.

//! Truth of an element at world w. Constraint atoms need every variable defined.
//! An assignment behaves as the implication "bounds defined -> target defined and
//! within bounds", evaluated in both worlds when w is here.
[[nodiscard]] bool sat_elem(const Interpretation& i, WorldRef w, const Element& e);
[[nodiscard]] bool sat_rule(const Interpretation& i, WorldRef w, const Rule& r);
[[nodiscard]] bool is_ht_model(const Interpretation& i, const GroundProgram& g);

//! Minimality of the total interpretation <m,m>: no smaller here-world yields a
//! model. In casp mode only atoms shrink; in founded mode the valuation does too.
[[nodiscard]] bool is_equilibrium(const AnswerSet& m, const GroundProgram& g, Semantics mode, Interval bounds);

//! All equilibrium models with values in bounds, in canonical order.
//!
//! Casp mode ranges over total valuations of the program's integer variables,
//! founded mode over partial ones.
[[nodiscard]] std::vector<AnswerSet> enumerate_equilibrium(const GroundProgram& g, Semantics mode, Interval bounds);

//! Gelfond-Lifschitz reduct of a Boolean program with respect to t.
[[nodiscard]] GroundProgram gl_reduct(const GroundProgram& g, const std::set<Atom>& t);

//! Least model of a negation-free Boolean program; integrity constraints are ignored.
[[nodiscard]] std::set<Atom> least_model(const GroundProgram& g);

} // namespace htasp

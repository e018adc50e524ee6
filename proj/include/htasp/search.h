#pragma once

#include <htasp/ast.h>
#include <htasp/grounder.h>
#include <htasp/ht.h>

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace htasp {

//! Boolean program in which every distinct theory atom is replaced by a fresh
//! proposition `__t1`, `__t2`, ... (first-occurrence order).
struct Abstraction {
    GroundProgram                        program;
    std::vector<std::pair<Atom, Element>> theory; //!< fresh proposition -> theory atom

    [[nodiscard]] std::vector<Atom> propositions() const;
};

//! Throws Error if the program contains assignments.
[[nodiscard]] Abstraction abstract(const GroundProgram& g);

//! Stable models of a Boolean program, sorted. Atoms in `externals` may be
//! assumed freely; every other atom of a model must be derived.
[[nodiscard]] std::vector<std::set<Atom>> stable_models_bool(const GroundProgram& b,
                                                             const std::vector<Atom>& externals = {});

//! Required truth value of each theory atom.
using SignAssignment = std::map<Element, bool>;

//! Some total valuation over the variables of the signed atoms, within bounds,
//! making exactly the true-signed atoms hold.
[[nodiscard]] std::optional<Valuation> theory_certify(const SignAssignment& s, Interval bounds);

//! Every such valuation, in lexicographic order.
[[nodiscard]] std::vector<Valuation> theory_enumerate(const SignAssignment& s, Interval bounds);

enum class Engine { Oracle, Search };

[[nodiscard]] const char* to_string(Engine e);

//! Answer sets in canonical order. The oracle engine enumerates equilibrium
//! models; the search engine (casp only) certifies stable models of the
//! abstraction with the theory. Throws Error for founded mode with search.
[[nodiscard]] std::vector<AnswerSet> solve(const GroundProgram& g, Semantics mode, Interval bounds, Engine engine);

} // namespace htasp

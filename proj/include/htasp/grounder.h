#pragma once

#include <htasp/ast.h>

#include <optional>
#include <vector>

namespace htasp {

//! Inclusive integer interval.
struct Interval {
    Int lo{0};
    Int hi{0};

    [[nodiscard]] bool contains(Int v) const { return lo <= v && v <= hi; }
    friend bool        operator==(const Interval&, const Interval&) = default;
};

struct GroundingOptions {
    std::optional<Interval> int_range; //!< integers added to the universe
    bool                    simplify{true};
};

//! Ground argument terms (including nested subterms) of the program's atoms, plus the integer range.
[[nodiscard]] std::vector<Term> herbrand_universe(const Program& p, const GroundingOptions& opts = {});

//! One diagnostic per rule with a variable that no positive body atom binds.
[[nodiscard]] std::vector<RuleDiagnostic> check_safety(const Program& p);

//! All universe^k instances of a rule with k variables, in odometer order.
[[nodiscard]] std::vector<Rule> instantiate(const Rule& r, const std::vector<Term>& universe);

//! Grounds p over its universe.
//!
//! With `simplify`, instances whose positive body atoms are not derivable from the
//! positive part of the program are omitted; otherwise every instance is kept.
//! Throws Error for unsafe rules and for instances placing an integer where an
//! integer variable is expected.
[[nodiscard]] GroundProgram ground(const Program& p, const GroundingOptions& opts = {});

} // namespace htasp

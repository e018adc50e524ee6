#pragma once

#include <htasp/ast.h>
#include <htasp/ht.h>

#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace htasp {

using ConstraintId = std::size_t;

//! Outcome of asserting a difference constraint. On conflict, `cycle` lists the
//! ids of constraints forming a cycle of negative total weight.
struct DlResult {
    bool                      sat{true};
    std::vector<ConstraintId> cycle;

    explicit operator bool() const { return sat; }
};

//! Edge y -> x of weight k standing for the constraint x - y <= k.
struct DiffEdge {
    Term         from;
    Term         to;
    Int          weight{0};
    ConstraintId id{0};

    friend bool operator==(const DiffEdge&, const DiffEdge&) = default;
    friend auto operator<=>(const DiffEdge&, const DiffEdge&) = default;
};

//! x - y <= k does not hold iff y - x <= -k - 1 (over the integers).
[[nodiscard]] DiffConstraint negate_diff(const Term& x, const Term& y, Int k);

//! Incremental difference-constraint graph with a backtracking trail.
//!
//! A feasible potential is maintained at all times; a new edge is propagated by
//! label correction restricted to vertices whose potential drops. Reaching the
//! source of the new edge means a negative cycle through it.
class DiffGraph {
public:
    using Level = std::size_t;

    void add_vertex(const Term& x);

    //! Asserts x - y <= k under the given id. A conflicting constraint is not
    //! added but stays recorded on the trail until its level is popped.
    DlResult assert_diff(const Term& x, const Term& y, Int k, ConstraintId id);

    //! Opens a new level and returns its id (the new depth, starting at 1).
    Level push_level();
    //! Removes the given level and every level above it.
    void pop_level(Level level);
    [[nodiscard]] Level depth() const { return level_start_.size(); }

    //! True if a conflicting assertion is on the trail.
    [[nodiscard]] bool in_conflict() const { return failed_ > 0; }

    //! Shortest-path distances from a virtual source linked to every vertex by a
    //! zero-weight edge: the pointwise greatest solution with values <= 0.
    [[nodiscard]] Valuation solution() const;

    //! Currently asserted constraints, sorted.
    [[nodiscard]] std::vector<DiffEdge> edges() const;
    [[nodiscard]] std::size_t           num_vertices() const { return names_.size(); }

private:
    struct Edge {
        unsigned     from;
        unsigned     to;
        Int          weight;
        ConstraintId id;
    };
    struct TrailEntry {
        bool         failed;
        ConstraintId id;
    };

    unsigned vertex(const Term& x);
    void     record(bool failed, ConstraintId id);

    std::map<Term, unsigned>           index_;
    std::vector<Term>                  names_;
    std::vector<Int>                   potential_;
    std::vector<std::vector<unsigned>> out_; // edge indices per source vertex
    std::vector<Edge>                  edges_;
    std::vector<TrailEntry>            trail_;
    std::vector<std::size_t>           level_start_;
    std::vector<std::set<ConstraintId>> level_ids_{1};
    std::size_t                        failed_{0};
};

} // namespace htasp

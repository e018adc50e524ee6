#include <catch_amalgamated.hpp>

#include <htasp/dl.h>
#include <htasp/error.h>

#include "oracles.h"
#include "support.h"

using namespace htasp;
using namespace test;

namespace {

const Term x = Term::symbol("x");
const Term y = Term::symbol("y");
const Term z = Term::symbol("z");

Term v(int i) { return Term::symbol("v" + std::to_string(i)); }

struct Asserted {
    int          x, y;
    Int          k;
    ConstraintId id;
};

bool satisfies(const Valuation& val, const std::vector<Asserted>& cs) {
    return std::all_of(cs.begin(), cs.end(),
                       [&](const Asserted& c) { return val.at(v(c.x)) - val.at(v(c.y)) <= c.k; });
}

std::vector<Asserted> random_constraints(Rng& r, int n, int m) {
    std::vector<Asserted> cs;
    for (int i = 0; i < m; ++i) {
        cs.push_back({r.range(0, n - 1), r.range(0, n - 1), r.range(-5, 5), static_cast<ConstraintId>(i + 1)});
    }
    return cs;
}

} // namespace

TEST_CASE("assert_diff examples") {
    SECTION("single constraint") {
        DiffGraph g;
        CHECK(g.assert_diff(x, y, 5, 1).sat);
    }
    SECTION("two-cycle") {
        DiffGraph g;
        REQUIRE(g.assert_diff(x, y, -1, 1));
        auto res = g.assert_diff(y, x, -1, 2);
        CHECK_FALSE(res.sat);
        auto cycle = res.cycle;
        std::sort(cycle.begin(), cycle.end());
        CHECK(cycle == std::vector<ConstraintId>{1, 2});
        CHECK(g.in_conflict());
        CHECK(g.edges().size() == 1);
    }
    SECTION("three-cycle of weight -1") {
        DiffGraph g;
        REQUIRE(g.assert_diff(x, y, 3, 1));
        REQUIRE(g.assert_diff(y, z, -4, 2));
        auto res = g.assert_diff(z, x, 0, 3);
        CHECK_FALSE(res.sat);
        auto cycle = res.cycle;
        std::sort(cycle.begin(), cycle.end());
        CHECK(cycle == std::vector<ConstraintId>{1, 2, 3});
    }
    SECTION("negative self loop") {
        DiffGraph g;
        auto      res = g.assert_diff(x, x, -1, 7);
        CHECK_FALSE(res.sat);
        CHECK(res.cycle == std::vector<ConstraintId>{7});
        DiffGraph h;
        CHECK(h.assert_diff(x, x, 0, 1).sat);
    }
    SECTION("duplicate id at the same level") {
        DiffGraph g;
        REQUIRE(g.assert_diff(x, y, 1, 1));
        CHECK_THROWS_AS(g.assert_diff(y, z, 1, 1), Error);
        g.push_level();
        CHECK(g.assert_diff(y, z, 1, 1).sat);
    }
}

TEST_CASE("negate_diff") {
    CHECK(negate_diff(x, y, 5) == DiffConstraint{y, x, -6});
    CHECK(negate_diff(x, y, 0) == DiffConstraint{y, x, -1});
    CHECK(negate_diff(x, y, -3) == DiffConstraint{y, x, 2});
    for (Int k = -4; k <= 4; ++k) {
        for (Int a = -3; a <= 3; ++a) {
            for (Int b = -3; b <= 3; ++b) {
                auto n = negate_diff(x, y, k);
                CHECK((a - b <= k) != (b - a <= n.bound));
            }
        }
    }
}

TEST_CASE("levels") {
    SECTION("push assert pop restores the graph") {
        DiffGraph g;
        REQUIRE(g.assert_diff(x, y, 2, 1));
        auto before = g.edges();
        auto l      = g.push_level();
        CHECK(l == 1);
        REQUIRE(g.assert_diff(y, z, 0, 2));
        g.pop_level(l);
        CHECK(g.edges() == before);
        CHECK(g.depth() == 0);
    }
    SECTION("popping a lower level unwinds the ones above") {
        DiffGraph g;
        auto      l1 = g.push_level();
        REQUIRE(g.assert_diff(x, y, 2, 1));
        auto l2 = g.push_level();
        CHECK(l2 == 2);
        REQUIRE(g.assert_diff(y, z, 0, 2));
        g.pop_level(l1);
        CHECK(g.edges().empty());
        CHECK(g.depth() == 0);
    }
    SECTION("unknown levels") {
        DiffGraph g;
        CHECK_THROWS_AS(g.pop_level(1), Error);
        g.push_level();
        CHECK_THROWS_AS(g.pop_level(0), Error);
        CHECK_THROWS_AS(g.pop_level(2), Error);
    }
    SECTION("conflicts are cleared by popping their level") {
        DiffGraph g;
        REQUIRE(g.assert_diff(x, y, -1, 1));
        auto l = g.push_level();
        CHECK_FALSE(g.assert_diff(y, x, -1, 2).sat);
        CHECK(g.in_conflict());
        CHECK_THROWS_AS(g.solution(), Error);
        g.pop_level(l);
        CHECK_FALSE(g.in_conflict());
        CHECK(g.assert_diff(y, x, 1, 2).sat);
    }
}

TEST_CASE("solution examples") {
    DiffGraph a;
    REQUIRE(a.assert_diff(x, y, -1, 1));
    CHECK(a.solution() == Valuation{{x, -1}, {y, 0}});
    DiffGraph b;
    b.add_vertex(x);
    CHECK(b.solution() == Valuation{{x, 0}});
    DiffGraph c;
    REQUIRE(c.assert_diff(x, y, 3, 1));
    CHECK(c.solution() == Valuation{{x, 0}, {y, 0}});
}

TEST_CASE("solution is the pointwise greatest non-positive solution") {
    Rng r(51);
    for (int n = 0; n < 300; ++n) {
        int       nv = r.range(1, 3);
        auto      cs = random_constraints(r, nv, r.range(0, 4));
        DiffGraph g;
        for (int i = 0; i < nv; ++i) {
            g.add_vertex(v(i));
        }
        bool ok = true;
        for (const auto& c : cs) {
            ok = ok && g.assert_diff(v(c.x), v(c.y), c.k, c.id).sat;
        }
        if (!ok) {
            continue;
        }
        auto sol = g.solution();
        REQUIRE(satisfies(sol, cs));
        // every solution with values in [-15, 0] is dominated
        std::vector<Int> cur(static_cast<std::size_t>(nv), -15);
        for (;;) {
            Valuation cand;
            for (int i = 0; i < nv; ++i) {
                cand[v(i)] = cur[static_cast<std::size_t>(i)];
            }
            if (satisfies(cand, cs)) {
                for (int i = 0; i < nv; ++i) {
                    CHECK(cand[v(i)] <= sol[v(i)]);
                }
            }
            int k = 0;
            while (k < nv && ++cur[static_cast<std::size_t>(k)] > 0) {
                cur[static_cast<std::size_t>(k++)] = -15;
            }
            if (k == nv) {
                break;
            }
        }
    }
}

TEST_CASE("soundness, completeness and certificates on random instances") {
    Rng r(52);
    for (int n = 0; n < 500; ++n) {
        int       nv = r.range(1, 6);
        auto      cs = random_constraints(r, nv, r.range(1, 10));
        DiffGraph g;
        for (int i = 0; i < nv; ++i) {
            g.add_vertex(v(i));
        }
        std::vector<Asserted> accepted;
        bool                  conflict = false;
        for (const auto& c : cs) {
            auto res = g.assert_diff(v(c.x), v(c.y), c.k, c.id);
            if (!res.sat) {
                Int total = 0;
                for (auto id : res.cycle) {
                    total += cs[id - 1].k;
                }
                CHECK(total < 0);
                conflict = true;
                break;
            }
            accepted.push_back(c);
            CHECK(satisfies(g.solution(), accepted));
        }
        std::vector<oracle::DlConstraint> plain;
        for (const auto& c : cs) {
            plain.push_back({c.x, c.y, c.k});
        }
        CHECK(oracle::dl_satisfiable(plain, nv, -30, 30) == !conflict);
        if (!conflict) {
            auto sol = g.solution();
            for (Int shift : {-2, 1, 10}) {
                Valuation moved;
                for (const auto& [name, value] : sol) {
                    moved[name] = value + shift;
                }
                CHECK(satisfies(moved, cs));
            }
        }
    }
}

TEST_CASE("conflict cycles are cycles of asserted edges") {
    Rng r(53);
    for (int n = 0; n < 300; ++n) {
        int       nv = r.range(2, 5);
        auto      cs = random_constraints(r, nv, 10);
        DiffGraph g;
        for (const auto& c : cs) {
            auto res = g.assert_diff(v(c.x), v(c.y), c.k, c.id);
            if (!res.sat) {
                // each vertex is entered exactly as often as it is left
                std::map<int, int> balance;
                for (auto id : res.cycle) {
                    balance[cs[id - 1].y] += 1;
                    balance[cs[id - 1].x] -= 1;
                }
                for (const auto& [vertex, b] : balance) {
                    CHECK(b == 0);
                }
                CHECK(std::find(res.cycle.begin(), res.cycle.end(), c.id) != res.cycle.end());
                break;
            }
        }
    }
}

TEST_CASE("parallel edges stay active under retraction") {
    DiffGraph g;
    REQUIRE(g.assert_diff(x, y, 5, 1));
    auto l = g.push_level();
    REQUIRE(g.assert_diff(x, y, -2, 2));
    CHECK(g.solution().at(x) - g.solution().at(y) <= -2);
    CHECK_FALSE(g.assert_diff(y, x, 1, 3).sat);
    g.pop_level(l);
    CHECK(g.assert_diff(y, x, 1, 3).sat);
    CHECK(g.edges().size() == 2);
}

TEST_CASE("trail replay matches a fresh graph of the surviving assertions") {
    Rng r(54);
    for (int n = 0; n < 300; ++n) {
        DiffGraph                          g;
        std::vector<std::vector<Asserted>> levels(1);
        std::vector<DiffGraph::Level>      ids;
        ConstraintId                       next = 1;
        for (int step = 0; step < 25; ++step) {
            int op = r.range(0, 5);
            if (op == 0) {
                ids.push_back(g.push_level());
                levels.emplace_back();
            }
            else if (op == 1 && !ids.empty()) {
                auto k = static_cast<std::size_t>(r.range(0, static_cast<int>(ids.size()) - 1));
                g.pop_level(ids[k]);
                ids.resize(k);
                levels.resize(k + 1);
            }
            else {
                Asserted c{r.range(0, 3), r.range(0, 3), r.range(-5, 5), next++};
                if (g.assert_diff(v(c.x), v(c.y), c.k, c.id).sat) {
                    levels.back().push_back(c);
                }
            }
        }
        DiffGraph fresh;
        for (const auto& lv : levels) {
            for (const auto& c : lv) {
                REQUIRE(fresh.assert_diff(v(c.x), v(c.y), c.k, c.id).sat);
            }
        }
        CHECK(g.edges() == fresh.edges());
        CHECK(g.depth() == ids.size());
    }
}

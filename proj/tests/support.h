#pragma once

#include <htasp/ast.h>
#include <htasp/grounder.h>
#include <htasp/ht.h>
#include <htasp/parser.h>

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace test {

using namespace htasp;

inline Program parse(const std::string& src) {
    auto p = parse_program(src);
    if (!p.ok()) {
        throw std::runtime_error("parse failed: " + to_string(p.diagnostics.front()));
    }
    return *p.value;
}

inline GroundProgram ground_text(const std::string& src, bool simplify = true) {
    GroundingOptions o;
    o.simplify = simplify;
    return ground(parse(src), o);
}

inline Term sym(const std::string& s) { return Term::symbol(s); }
inline Term var(const std::string& s) { return Term::variable(s); }
inline Term num(Int v) { return Term::integer(v); }
inline Atom prop(const std::string& s) { return atom(s); }

inline std::set<Atom> atoms(std::initializer_list<const char*> names) {
    std::set<Atom> out;
    for (const char* n : names) {
        out.insert(atom(n));
    }
    return out;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    int  range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
    }
};

// ---- random non-ground ASTs (well-formed), used for printing round trips ----

inline Term random_term(Rng& r, int depth = 2) {
    switch (r.range(0, depth > 0 ? 3 : 2)) {
        case 0: return num(r.range(-20, 20));
        case 1: return sym(r.pick<std::string>({"a", "b", "foo", "x_1", "bAr"}));
        case 2: return var(r.pick<std::string>({"X", "Y", "Part", "Z9"}));
        default: {
            std::vector<Term> args;
            for (int i = r.range(1, 2); i > 0; --i) {
                args.push_back(random_term(r, depth - 1));
            }
            return Term::function(r.pick<std::string>({"f", "slot", "w"}), std::move(args));
        }
    }
}

inline Term random_int_var(Rng& r) {
    for (;;) {
        Term t = random_term(r);
        if (!t.is_int()) {
            return t;
        }
    }
}

inline Element random_body_elem(Rng& r) {
    switch (r.range(0, 3)) {
        case 0:
        case 1: {
            std::vector<Term> args;
            for (int i = r.range(0, 2); i > 0; --i) {
                args.push_back(random_term(r));
            }
            return atom(r.pick<std::string>({"p", "q", "in", "parentOf"}), std::move(args));
        }
        case 2: {
            std::vector<LinearTerm> ts;
            for (int i = r.range(1, 3); i > 0; --i) {
                ts.push_back({r.range(-4, 4), random_int_var(r)});
            }
            auto cmp = static_cast<Cmp>(r.range(0, 5));
            return sum(std::move(ts), cmp, r.range(-9, 9));
        }
        default: return diff(random_int_var(r), random_int_var(r), r.range(-9, 9));
    }
}

inline Rule random_rule(Rng& r) {
    Rule out;
    int  h = r.range(0, 4);
    if (h < 3) {
        out.head = random_body_elem(r);
    }
    else if (h == 3) {
        auto bound = [&]() { return r.coin() ? num(r.range(-5, 5)) : random_int_var(r); };
        out.head   = assign(bound(), bound(), random_int_var(r));
    }
    int n = r.range(out.head ? 0 : 1, 3);
    for (int i = 0; i < n; ++i) {
        out.body.push_back({r.coin(0.3), random_body_elem(r)});
    }
    return out;
}

inline Program random_program(Rng& r, int max_rules = 5) {
    Program p;
    for (int i = r.range(0, max_rules); i > 0; --i) {
        p.rules.push_back(random_rule(r));
    }
    return p;
}

// ---- random ground hybrid programs ----

struct HybridShape {
    int  atoms{4};
    int  vars{2};
    int  max_rules{5};
    int  max_body{2};
    bool assignments{false};
};

inline Element random_ground_theory(Rng& r, const HybridShape& s) {
    auto v = [&] { return sym(std::string(1, static_cast<char>('x' + r.range(0, s.vars - 1)))); };
    if (r.coin()) {
        return diff(v(), v(), r.range(-2, 2));
    }
    std::vector<LinearTerm> ts;
    for (int i = r.range(1, 2); i > 0; --i) {
        ts.push_back({r.range(-2, 2) == 0 ? 1 : r.range(-2, 2), v()});
    }
    return sum(std::move(ts), static_cast<Cmp>(r.range(0, 5)), r.range(-1, 4));
}

inline Element random_ground_elem(Rng& r, const HybridShape& s, double theory_p) {
    if (s.vars > 0 && r.coin(theory_p)) {
        return random_ground_theory(r, s);
    }
    return atom(std::string(1, static_cast<char>('a' + r.range(0, s.atoms - 1))));
}

inline GroundProgram random_hybrid(Rng& r, const HybridShape& s) {
    GroundProgram g;
    for (int i = r.range(1, s.max_rules); i > 0; --i) {
        Rule rule;
        int  h = r.range(0, 9);
        if (h < 6) {
            rule.head = atom(std::string(1, static_cast<char>('a' + r.range(0, s.atoms - 1))));
        }
        else if (h < 8 && s.vars > 0) {
            if (s.assignments && r.coin()) {
                auto v    = [&] { return sym(std::string(1, static_cast<char>('x' + r.range(0, s.vars - 1)))); };
                auto b    = [&]() { return r.coin() ? num(r.range(0, 3)) : v(); };
                rule.head = assign(b(), b(), v());
            }
            else {
                rule.head = random_ground_theory(r, s);
            }
        }
        for (int j = r.range(0, s.max_body); j > 0; --j) {
            rule.body.push_back({r.coin(0.4), random_ground_elem(r, s, 0.35)});
        }
        if (!rule.head && rule.body.empty()) {
            rule.body.push_back({false, atom("a")});
        }
        g.rules.push_back(std::move(rule));
    }
    return g;
}

// ---- random interpretations ----

inline Interpretation random_interpretation(Rng& r, const std::vector<Atom>& atoms, const std::vector<Term>& vars,
                                            Interval bounds) {
    Interpretation i;
    for (const auto& a : atoms) {
        if (r.coin()) {
            i.there.atoms.insert(a);
            if (r.coin()) {
                i.here.atoms.insert(a);
            }
        }
    }
    for (const auto& v : vars) {
        if (r.coin(0.7)) {
            Int x = r.range(static_cast<int>(bounds.lo), static_cast<int>(bounds.hi));
            i.there.val[v] = x;
            if (r.coin(0.6)) {
                i.here.val[v] = x;
            }
        }
    }
    return i;
}

} // namespace test

#include <htasp/search.h>

#include <htasp/dl.h>
#include <htasp/error.h>

#include "overload.h"

#include <algorithm>
#include <functional>

namespace htasp {

using detail::Overload;

const char* to_string(Engine e) { return e == Engine::Oracle ? "oracle" : "search"; }

std::vector<Atom> Abstraction::propositions() const {
    std::vector<Atom> out;
    out.reserve(theory.size());
    for (const auto& [a, e] : theory) {
        out.push_back(a);
    }
    return out;
}

Abstraction abstract(const GroundProgram& g) {
    Abstraction          abs;
    std::map<Element, Atom> fresh;
    auto                 replace = [&](const Element& e) -> Element {
        if (!is_theory(e)) {
            return e;
        }
        if (std::holds_alternative<Assignment>(e)) {
            throw Error("assignments cannot be abstracted: " + to_string(e));
        }
        auto it = fresh.find(e);
        if (it == fresh.end()) {
            Atom a{"__t" + std::to_string(fresh.size() + 1), {}};
            it = fresh.emplace(e, a).first;
            abs.theory.emplace_back(a, e);
        }
        return it->second;
    };
    abs.program.universe = g.universe;
    for (const auto& r : g.rules) {
        Rule out;
        if (r.head) {
            out.head = replace(*r.head);
        }
        for (const auto& l : r.body) {
            out.body.push_back({l.negated, replace(l.elem)});
        }
        abs.program.rules.push_back(std::move(out));
    }
    return abs;
}

// ---------------------------------------------------------------------------
// Boolean stable models
//
// A stable model is determined by which atoms under negation (and which
// externals) it contains, so we guess exactly those and verify each guess by
// computing the least model of the reduct.

std::vector<std::set<Atom>> stable_models_bool(const GroundProgram& b, const std::vector<Atom>& externals) {
    std::vector<Atom> atoms = atoms_of(b).atoms;
    atoms.insert(atoms.end(), externals.begin(), externals.end());
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    auto index = [&](const Atom& a) {
        return static_cast<unsigned>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
    };

    struct BRule {
        long                  head{-1};
        std::vector<unsigned> pos, neg;
    };
    std::vector<BRule> rules;
    std::vector<char>  guessed(atoms.size(), 0);
    for (const auto& r : b.rules) {
        if (!r.ground()) {
            throw Error("non-ground rule: " + to_string(r));
        }
        BRule br;
        if (r.head) {
            const auto* h = std::get_if<Atom>(&*r.head);
            if (!h) {
                throw Error("theory atom in Boolean program: " + to_string(r));
            }
            br.head = index(*h);
        }
        for (const auto& l : r.body) {
            const auto* a = std::get_if<Atom>(&l.elem);
            if (!a) {
                throw Error("theory atom in Boolean program: " + to_string(r));
            }
            (l.negated ? br.neg : br.pos).push_back(index(*a));
            if (l.negated) {
                guessed[index(*a)] = 1;
            }
        }
        rules.push_back(std::move(br));
    }
    std::vector<char> is_external(atoms.size(), 0);
    for (const auto& e : externals) {
        is_external[index(e)] = 1;
        guessed[index(e)]     = 1;
    }
    std::vector<unsigned> guess;
    for (unsigned i = 0; i < atoms.size(); ++i) {
        if (guessed[i]) {
            guess.push_back(i);
        }
    }
    if (guess.size() > 30) {
        throw Error("too many guessed atoms for stable model enumeration");
    }

    std::vector<std::set<Atom>> out;
    std::vector<char>           assumed(atoms.size()), model(atoms.size());
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << guess.size()); ++s) {
        std::fill(assumed.begin(), assumed.end(), 0);
        std::fill(model.begin(), model.end(), 0);
        for (std::size_t k = 0; k < guess.size(); ++k) {
            if (s & (std::uint64_t{1} << k)) {
                assumed[guess[k]] = 1;
                if (is_external[guess[k]]) {
                    model[guess[k]] = 1;
                }
            }
        }
        auto active = [&](const BRule& r) {
            return std::none_of(r.neg.begin(), r.neg.end(), [&](unsigned a) { return assumed[a]; });
        };
        auto fires = [&](const BRule& r) {
            return std::all_of(r.pos.begin(), r.pos.end(), [&](unsigned a) { return model[a]; });
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : rules) {
                if (r.head >= 0 && !model[r.head] && active(r) && fires(r)) {
                    model[r.head] = 1;
                    changed       = true;
                }
            }
        }
        bool ok = std::all_of(guess.begin(), guess.end(), [&](unsigned a) { return model[a] == assumed[a]; });
        ok      = ok && std::none_of(rules.begin(), rules.end(),
                                     [&](const BRule& r) { return r.head < 0 && active(r) && fires(r); });
        if (ok) {
            std::set<Atom> m;
            for (unsigned i = 0; i < atoms.size(); ++i) {
                if (model[i]) {
                    m.insert(atoms[i]);
                }
            }
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// theory certification

namespace {

struct Check {
    std::vector<unsigned> vars;
    std::function<bool(const std::vector<Int>&)> holds;
};

class TheoryProblem {
public:
    TheoryProblem(const SignAssignment& s, Interval bounds) : bounds_(bounds) {
        for (const auto& [e, sign] : s) {
            if (!is_theory(e) || std::holds_alternative<Assignment>(e)) {
                throw Error("cannot certify element: " + to_string(e));
            }
            collect_int_vars(e, vars_);
        }
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
        buckets_.resize(vars_.size());
        for (const auto& [e, sign] : s) {
            add(e, sign);
        }
    }

    [[nodiscard]] const std::vector<Term>& vars() const { return vars_; }

    //! Difference part together with the bounds; false if it is already unsatisfiable.
    bool difference_part(DiffGraph& g) const {
        const Term   zero = Term::symbol("__zero");
        ConstraintId id   = 0;
        g.add_vertex(zero);
        for (const auto& v : vars_) {
            if (!g.assert_diff(v, zero, bounds_.hi, id++) || !g.assert_diff(zero, v, -bounds_.lo, id++)) {
                return false;
            }
        }
        for (const auto& d : diffs_) {
            if (!g.assert_diff(d.lhs, d.rhs, d.bound, id++)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool satisfied(const std::vector<Int>& vals) const {
        return std::all_of(buckets_.begin(), buckets_.end(), [&](const auto& bucket) {
            return std::all_of(bucket.begin(), bucket.end(), [&](const Check& c) { return c.holds(vals); });
        });
    }

    //! Backtracking over bounds; f returns true to stop.
    template <class F>
    void search(F&& f) const {
        std::vector<Int> vals(vars_.size(), bounds_.lo);
        auto             rec = [&](auto& self, std::size_t i) -> bool {
            if (i == vars_.size()) {
                return f(vals);
            }
            for (Int x = bounds_.lo; x <= bounds_.hi; ++x) {
                vals[i] = x;
                bool ok = std::all_of(buckets_[i].begin(), buckets_[i].end(),
                                      [&](const Check& c) { return c.holds(vals); });
                if (ok && self(self, i + 1)) {
                    return true;
                }
            }
            return false;
        };
        if (vars_.empty()) {
            f(vals);
            return;
        }
        if (bounds_.lo <= bounds_.hi) {
            rec(rec, 0);
        }
    }

    [[nodiscard]] Valuation valuation(const std::vector<Int>& vals) const {
        Valuation v;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            v.emplace(vars_[i], vals[i]);
        }
        return v;
    }

    [[nodiscard]] unsigned index(const Term& t) const {
        return static_cast<unsigned>(std::lower_bound(vars_.begin(), vars_.end(), t) - vars_.begin());
    }

private:
    void add(const Element& e, bool sign) {
        Check c;
        std::visit(Overload{
                       [&](const LinearConstraint& l) {
                           std::vector<std::pair<Int, unsigned>> terms;
                           for (const auto& t : l.terms) {
                               terms.emplace_back(t.coeff, index(t.var));
                               c.vars.push_back(index(t.var));
                           }
                           c.holds = [terms, cmp = l.cmp, rhs = l.rhs, sign](const std::vector<Int>& v) {
                               Int lhs = 0;
                               for (const auto& [k, x] : terms) {
                                   lhs += k * v[x];
                               }
                               return compare(lhs, cmp, rhs) == sign;
                           };
                       },
                       [&](const DiffConstraint& d) {
                           DiffConstraint eff = sign ? d : negate_diff(d.lhs, d.rhs, d.bound);
                           diffs_.push_back(eff);
                           unsigned x = index(eff.lhs), y = index(eff.rhs);
                           c.vars  = {x, y};
                           c.holds = [x, y, k = eff.bound](const std::vector<Int>& v) { return v[x] - v[y] <= k; };
                       },
                       [](const auto&) {},
                   },
                   e);
        unsigned last = *std::max_element(c.vars.begin(), c.vars.end());
        buckets_[last].push_back(std::move(c));
    }

    Interval                        bounds_;
    std::vector<Term>               vars_;
    std::vector<DiffConstraint>     diffs_;
    std::vector<std::vector<Check>> buckets_; // checks keyed by their last variable
};

} // namespace

std::optional<Valuation> theory_certify(const SignAssignment& s, Interval bounds) {
    TheoryProblem p(s, bounds);
    DiffGraph     g;
    if (!p.difference_part(g)) {
        return std::nullopt;
    }
    // The difference solution shifted so that the zero vertex is 0 lies within bounds.
    Valuation        dl   = g.solution();
    Int              base = dl.at(Term::symbol("__zero"));
    std::vector<Int> seed;
    for (const auto& v : p.vars()) {
        seed.push_back(dl.at(v) - base);
    }
    if (p.satisfied(seed)) {
        return p.valuation(seed);
    }
    std::optional<Valuation> found;
    p.search([&](const std::vector<Int>& vals) {
        found = p.valuation(vals);
        return true;
    });
    return found;
}

std::vector<Valuation> theory_enumerate(const SignAssignment& s, Interval bounds) {
    TheoryProblem p(s, bounds);
    DiffGraph     g;
    if (!p.difference_part(g)) {
        return {};
    }
    std::vector<Valuation> out;
    p.search([&](const std::vector<Int>& vals) {
        out.push_back(p.valuation(vals));
        return false;
    });
    return out;
}

std::vector<AnswerSet> solve(const GroundProgram& g, Semantics mode, Interval bounds, Engine engine) {
    if (engine == Engine::Oracle) {
        return enumerate_equilibrium(g, mode, bounds);
    }
    if (mode != Semantics::Casp) {
        throw Error("the search engine supports casp semantics only");
    }
    Abstraction abs    = abstract(g);
    auto        props  = abs.propositions();
    auto        models = stable_models_bool(abs.program, props);
    std::sort(props.begin(), props.end());

    std::map<std::vector<bool>, std::vector<Valuation>> cache;
    std::vector<AnswerSet>                              out;
    for (const auto& m : models) {
        SignAssignment    s;
        std::vector<bool> key;
        for (const auto& [a, e] : abs.theory) {
            bool sign = m.contains(a);
            s.emplace(e, sign);
            key.push_back(sign);
        }
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, theory_enumerate(s, bounds)).first;
        }
        if (it->second.empty()) {
            continue;
        }
        std::set<Atom> visible;
        for (const auto& a : m) {
            if (!std::binary_search(props.begin(), props.end(), a)) {
                visible.insert(a);
            }
        }
        for (const auto& v : it->second) {
            out.push_back({visible, v});
        }
    }
    sort_answer_sets(out);
    return out;
}

} // namespace htasp

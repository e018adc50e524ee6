#include <htasp/grounder.h>

#include <htasp/error.h>

#include "overload.h"

#include <algorithm>
#include <map>
#include <set>

namespace htasp {

using detail::Overload;

namespace {

using Subst = std::map<std::string, Term>;

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) {
            out.push_back(t.name());
        }
    }
    for (const auto& a : t.args()) {
        collect_vars(a, out);
    }
}

void collect_vars(const Element& e, std::vector<std::string>& out) {
    std::visit(Overload{
                   [&](const Atom& a) {
                       for (const auto& t : a.args) {
                           collect_vars(t, out);
                       }
                   },
                   [&](const LinearConstraint& c) {
                       for (const auto& t : c.terms) {
                           collect_vars(t.var, out);
                       }
                   },
                   [&](const DiffConstraint& d) {
                       collect_vars(d.lhs, out);
                       collect_vars(d.rhs, out);
                   },
                   [&](const Assignment& a) {
                       collect_vars(a.lo, out);
                       collect_vars(a.hi, out);
                       collect_vars(a.target, out);
                   },
               },
               e);
}

std::vector<std::string> rule_vars(const Rule& r) {
    std::vector<std::string> out;
    if (r.head) {
        collect_vars(*r.head, out);
    }
    for (const auto& l : r.body) {
        collect_vars(l.elem, out);
    }
    return out;
}

Term substitute(const Term& t, const Subst& s) {
    switch (t.kind()) {
        case Term::Kind::Var: {
            auto it = s.find(t.name());
            return it != s.end() ? it->second : t;
        }
        case Term::Kind::Func: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) {
                args.push_back(substitute(a, s));
            }
            return Term::function(t.name(), std::move(args));
        }
        default: return t;
    }
}

Term substitute_int_var(const Term& t, const Subst& s) {
    Term r = substitute(t, s);
    if (r.is_int() && !t.is_int()) {
        throw Error("grounding places integer " + to_string(r) + " where an integer variable is expected");
    }
    return r;
}

Element substitute(const Element& e, const Subst& s) {
    return std::visit(Overload{
                          [&](const Atom& a) -> Element {
                              Atom out{a.predicate, {}};
                              out.args.reserve(a.args.size());
                              for (const auto& t : a.args) {
                                  out.args.push_back(substitute(t, s));
                              }
                              return out;
                          },
                          [&](const LinearConstraint& c) -> Element {
                              LinearConstraint out{{}, c.cmp, c.rhs};
                              for (const auto& t : c.terms) {
                                  out.terms.push_back({t.coeff, substitute_int_var(t.var, s)});
                              }
                              return out;
                          },
                          [&](const DiffConstraint& d) -> Element {
                              return DiffConstraint{substitute_int_var(d.lhs, s), substitute_int_var(d.rhs, s), d.bound};
                          },
                          [&](const Assignment& a) -> Element {
                              return Assignment{substitute(a.lo, s), substitute(a.hi, s), substitute_int_var(a.target, s)};
                          },
                      },
                      e);
}

Rule substitute(const Rule& r, const Subst& s) {
    Rule out;
    if (r.head) {
        out.head = substitute(*r.head, s);
    }
    out.body.reserve(r.body.size());
    for (const auto& l : r.body) {
        out.body.push_back({l.negated, substitute(l.elem, s)});
    }
    return out;
}

void add_ground_subterms(const Term& t, std::set<Term>& out) {
    if (t.ground()) {
        out.insert(t);
    }
    for (const auto& a : t.args()) {
        add_ground_subterms(a, out);
    }
}

bool match(const Term& pattern, const Term& value, Subst& s) {
    switch (pattern.kind()) {
        case Term::Kind::Var: {
            auto [it, fresh] = s.emplace(pattern.name(), value);
            return fresh || it->second == value;
        }
        case Term::Kind::Func: {
            if (value.kind() != Term::Kind::Func || value.name() != pattern.name() ||
                value.args().size() != pattern.args().size()) {
                return false;
            }
            for (std::size_t i = 0; i < pattern.args().size(); ++i) {
                if (!match(pattern.args()[i], value.args()[i], s)) {
                    return false;
                }
            }
            return true;
        }
        default: return pattern == value;
    }
}

using AtomIndex = std::map<std::pair<std::string, std::size_t>, std::vector<Atom>>;

//! Enumerates substitutions binding the positive body atoms of r to atoms in `index`.
template <class F>
void join(const Rule& r, const AtomIndex& index, F&& emit) {
    std::vector<const Atom*> positive;
    for (const auto& l : r.body) {
        if (const auto* a = std::get_if<Atom>(&l.elem); a && !l.negated) {
            positive.push_back(a);
        }
    }
    Subst s;
    auto  rec = [&](auto& self, std::size_t i) -> void {
        if (i == positive.size()) {
            emit(s);
            return;
        }
        const Atom& pat = *positive[i];
        auto        it  = index.find({pat.predicate, pat.args.size()});
        if (it == index.end()) {
            return;
        }
        for (const auto& cand : it->second) {
            Subst saved = s;
            bool  ok    = true;
            for (std::size_t k = 0; ok && k < pat.args.size(); ++k) {
                ok = match(pat.args[k], cand.args[k], s);
            }
            if (ok) {
                self(self, i + 1);
            }
            s = std::move(saved);
        }
    };
    rec(rec, 0);
}

} // namespace

std::vector<Term> herbrand_universe(const Program& p, const GroundingOptions& opts) {
    std::set<Term> terms;
    auto           visit = [&](const Element& e) {
        if (const auto* a = std::get_if<Atom>(&e)) {
            for (const auto& t : a->args) {
                add_ground_subterms(t, terms);
            }
        }
    };
    for (const auto& r : p.rules) {
        if (r.head) {
            visit(*r.head);
        }
        for (const auto& l : r.body) {
            visit(l.elem);
        }
    }
    if (opts.int_range) {
        for (Int i = opts.int_range->lo; i <= opts.int_range->hi; ++i) {
            terms.insert(Term::integer(i));
        }
    }
    return {terms.begin(), terms.end()};
}

std::vector<RuleDiagnostic> check_safety(const Program& p) {
    std::vector<RuleDiagnostic> out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const Rule&              r = p.rules[i];
        std::vector<std::string> bound;
        for (const auto& l : r.body) {
            if (!l.negated && std::holds_alternative<Atom>(l.elem)) {
                collect_vars(l.elem, bound);
            }
        }
        std::string unsafe;
        for (const auto& v : rule_vars(r)) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
                unsafe += unsafe.empty() ? v : ", " + v;
            }
        }
        if (!unsafe.empty()) {
            out.push_back({i, "unsafe variables: " + unsafe});
        }
    }
    return out;
}

std::vector<Rule> instantiate(const Rule& r, const std::vector<Term>& universe) {
    auto vars = rule_vars(r);
    if (vars.empty()) {
        return {r};
    }
    std::vector<Rule> out;
    if (universe.empty()) {
        return out;
    }
    std::vector<std::size_t> digit(vars.size(), 0);
    Subst                    s;
    for (;;) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            s[vars[i]] = universe[digit[i]];
        }
        out.push_back(substitute(r, s));
        std::size_t k = vars.size();
        while (k > 0 && ++digit[k - 1] == universe.size()) {
            digit[--k] = 0;
        }
        if (k == 0) {
            return out;
        }
    }
}

GroundProgram ground(const Program& p, const GroundingOptions& opts) {
    if (auto unsafe = check_safety(p); !unsafe.empty()) {
        throw Error("rule " + std::to_string(unsafe.front().rule) + ": " + unsafe.front().reason);
    }
    GroundProgram g;
    g.universe = herbrand_universe(p, opts);

    std::set<Rule> seen;
    auto           add = [&](Rule r) {
        if (seen.insert(r).second) {
            g.rules.push_back(std::move(r));
        }
    };

    if (!opts.simplify) {
        for (const auto& r : p.rules) {
            for (auto& inst : instantiate(r, g.universe)) {
                add(std::move(inst));
            }
        }
        return g;
    }

    // Atoms derivable from the positive part of the program; instances with
    // other positive body atoms are false in every model that matters.
    AtomIndex       index;
    std::set<Atom>  derivable;
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Atom> fresh;
        for (const auto& r : p.rules) {
            const Atom* head = r.head ? std::get_if<Atom>(&*r.head) : nullptr;
            if (!head) {
                continue;
            }
            join(r, index, [&](const Subst& s) {
                Atom a = std::get<Atom>(substitute(Element{*head}, s));
                if (!derivable.contains(a)) {
                    fresh.push_back(std::move(a));
                }
            });
        }
        for (auto& a : fresh) {
            if (derivable.insert(a).second) {
                index[{a.predicate, a.args.size()}].push_back(std::move(a));
                changed = true;
            }
        }
    }
    for (const auto& r : p.rules) {
        join(r, index, [&](const Subst& s) { add(substitute(r, s)); });
    }
    return g;
}

} // namespace htasp

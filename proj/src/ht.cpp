#include <htasp/ht.h>

#include <htasp/error.h>

#include "overload.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>

namespace htasp {

using detail::Overload;

const char* to_string(Semantics s) { return s == Semantics::Casp ? "casp" : "founded"; }

bool Interpretation::valid() const {
    if (!std::includes(there.atoms.begin(), there.atoms.end(), here.atoms.begin(), here.atoms.end())) {
        return false;
    }
    return std::all_of(here.val.begin(), here.val.end(), [&](const auto& kv) {
        auto it = there.val.find(kv.first);
        return it != there.val.end() && it->second == kv.second;
    });
}

namespace {

int compare_valuations(const Valuation& a, const Valuation& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            return 1; // b leaves ia->first undefined
        }
        if (ia == a.end() || ib->first < ia->first) {
            return -1;
        }
        if (ia->second != ib->second) {
            return ia->second < ib->second ? -1 : 1;
        }
        ++ia;
        ++ib;
    }
    return 0;
}

} // namespace

bool answer_set_less(const AnswerSet& lhs, const AnswerSet& rhs) {
    if (lhs.atoms != rhs.atoms) {
        return lhs.atoms < rhs.atoms;
    }
    return compare_valuations(lhs.val, rhs.val) < 0;
}

void sort_answer_sets(std::vector<AnswerSet>& sets) {
    std::sort(sets.begin(), sets.end(), answer_set_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

std::string to_string(const Valuation& v) {
    std::string out;
    for (const auto& [name, value] : v) {
        if (!out.empty()) {
            out += ' ';
        }
        out += to_string(name) + "=" + std::to_string(value);
    }
    return out;
}

std::string to_string(const AnswerSet& a) {
    std::string out = "{";
    for (const auto& at : a.atoms) {
        out += out.size() > 1 ? " " : "";
        out += to_string(at);
    }
    out += "}";
    if (!a.val.empty()) {
        out += " [" + to_string(a.val) + "]";
    }
    return out;
}

// ---------------------------------------------------------------------------
// reference satisfaction over the AST

namespace {

const World& world(const Interpretation& i, WorldRef w) { return w == WorldRef::Here ? i.here : i.there; }

std::optional<Int> value_of(const Valuation& v, const Term& t) {
    if (t.is_int()) {
        return t.value();
    }
    auto it = v.find(t);
    if (it == v.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool assignment_holds(const Valuation& v, const Assignment& a) {
    auto lo = value_of(v, a.lo);
    auto hi = value_of(v, a.hi);
    if (!lo || !hi) {
        return true;
    }
    auto x = value_of(v, a.target);
    return x && *lo <= *x && *x <= *hi;
}

void require_ground(const Element& e) {
    if (!ground(e)) {
        throw Error("non-ground element: " + to_string(e));
    }
}

} // namespace

bool sat_elem(const Interpretation& i, WorldRef w, const Element& e) {
    require_ground(e);
    const World& wd = world(i, w);
    return std::visit(Overload{
                          [&](const Atom& a) { return wd.atoms.contains(a); },
                          [&](const LinearConstraint& c) {
                              Int lhs = 0;
                              for (const auto& t : c.terms) {
                                  auto v = value_of(wd.val, t.var);
                                  if (!v) {
                                      return false;
                                  }
                                  lhs += t.coeff * *v;
                              }
                              return compare(lhs, c.cmp, c.rhs);
                          },
                          [&](const DiffConstraint& d) {
                              auto x = value_of(wd.val, d.lhs);
                              auto y = value_of(wd.val, d.rhs);
                              return x && y && *x - *y <= d.bound;
                          },
                          [&](const Assignment& a) {
                              bool there = assignment_holds(i.there.val, a);
                              return w == WorldRef::There ? there : there && assignment_holds(i.here.val, a);
                          },
                      },
                      e);
}

namespace {

bool body_holds(const Interpretation& i, WorldRef w, const Rule& r) {
    return std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
        return l.negated ? !sat_elem(i, WorldRef::There, l.elem) : sat_elem(i, w, l.elem);
    });
}

bool implication_holds(const Interpretation& i, WorldRef w, const Rule& r) {
    if (!body_holds(i, w, r)) {
        return true;
    }
    return r.head && sat_elem(i, w, *r.head);
}

} // namespace

bool sat_rule(const Interpretation& i, WorldRef w, const Rule& r) {
    if (!r.ground()) {
        throw Error("non-ground rule: " + to_string(r));
    }
    bool there = implication_holds(i, WorldRef::There, r);
    return w == WorldRef::There ? there : there && implication_holds(i, WorldRef::Here, r);
}

bool is_ht_model(const Interpretation& i, const GroundProgram& g) {
    return std::all_of(g.rules.begin(), g.rules.end(), [&](const Rule& r) { return sat_rule(i, WorldRef::Here, r); });
}

// ---------------------------------------------------------------------------
// compiled evaluation for exhaustive enumeration
//
// Atoms and integer variables are numbered; a world is a pair of bit masks
// (atoms present, variables defined) over one shared value array.

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(unsigned i) { return Mask{1} << i; }

struct Operand {
    bool     constant{true};
    Int      value{0};
    unsigned var{0};
};

struct CElem {
    enum class Kind : std::uint8_t { Atom, Linear, Diff, Assign } kind{Kind::Atom};
    unsigned                              index{0}; // atom index, or diff lhs
    unsigned                              other{0}; // diff rhs, or assignment target
    std::vector<std::pair<Int, unsigned>> terms;
    Mask                                  vars{0}; // variables that must be defined
    Cmp                                   cmp{Cmp::Le};
    Int                                   rhs{0};
    Operand                               lo, hi;
};

struct CRule {
    bool                                 has_head{false};
    CElem                                head;
    std::vector<std::pair<bool, CElem>> body;
};

struct CWorld {
    Mask atoms{0};
    Mask defined{0};
};

class Compiled {
public:
    explicit Compiled(const GroundProgram& g) {
        auto syms = atoms_of(g);
        atoms_    = std::move(syms.atoms);
        vars_     = std::move(syms.int_vars);
        if (atoms_.size() > 64 || vars_.size() > 64) {
            throw Error("program too large for exhaustive enumeration");
        }
        for (const auto& r : g.rules) {
            if (!r.ground()) {
                throw Error("non-ground rule: " + to_string(r));
            }
            CRule cr;
            if (r.head) {
                cr.has_head = true;
                cr.head     = compile(*r.head);
                if (cr.head.kind == CElem::Kind::Atom) {
                    head_atoms_ |= bit(cr.head.index);
                    if (r.body.empty()) {
                        facts_ |= bit(cr.head.index);
                    }
                }
                else {
                    std::vector<Term> vs;
                    collect_int_vars(*r.head, vs);
                    for (const auto& v : vs) {
                        head_vars_ |= bit(var_index(v));
                    }
                }
            }
            for (const auto& l : r.body) {
                cr.body.emplace_back(l.negated, compile(l.elem));
            }
            rules_.push_back(std::move(cr));
        }
    }

    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] const std::vector<Term>& vars() const { return vars_; }
    [[nodiscard]] Mask                     facts() const { return facts_; }
    [[nodiscard]] Mask                     head_atoms() const { return head_atoms_; }
    [[nodiscard]] Mask                     head_vars() const { return head_vars_; }

    [[nodiscard]] unsigned atom_index(const Atom& a) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
        if (it == atoms_.end() || *it != a) {
            throw Error("atom not in program: " + to_string(a));
        }
        return static_cast<unsigned>(it - atoms_.begin());
    }

    [[nodiscard]] unsigned var_index(const Term& t) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), t);
        if (it == vars_.end() || *it != t) {
            throw Error("integer variable not in program: " + to_string(t));
        }
        return static_cast<unsigned>(it - vars_.begin());
    }

    //! <here, there> is a model; values are shared and meaningful where defined.
    [[nodiscard]] bool model(CWorld here, CWorld there, const Int* vals) const {
        for (const auto& r : rules_) {
            if (!implication(r, there, there, vals) || !implication(r, here, there, vals)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool total_model(CWorld w, const Int* vals) const {
        for (const auto& r : rules_) {
            if (!implication(r, w, w, vals)) {
                return false;
            }
        }
        return true;
    }

private:
    CElem compile(const Element& e) const {
        CElem c;
        std::visit(Overload{
                       [&](const Atom& a) {
                           c.kind  = CElem::Kind::Atom;
                           c.index = atom_index(a);
                       },
                       [&](const LinearConstraint& l) {
                           c.kind = CElem::Kind::Linear;
                           for (const auto& t : l.terms) {
                               unsigned v = var_index(t.var);
                               c.terms.emplace_back(t.coeff, v);
                               c.vars |= bit(v);
                           }
                           c.cmp = l.cmp;
                           c.rhs = l.rhs;
                       },
                       [&](const DiffConstraint& d) {
                           c.kind  = CElem::Kind::Diff;
                           c.index = var_index(d.lhs);
                           c.other = var_index(d.rhs);
                           c.vars  = bit(c.index) | bit(c.other);
                           c.rhs   = d.bound;
                       },
                       [&](const Assignment& a) {
                           c.kind  = CElem::Kind::Assign;
                           c.lo    = operand(a.lo);
                           c.hi    = operand(a.hi);
                           c.other = var_index(a.target);
                           c.vars  = (c.lo.constant ? 0 : bit(c.lo.var)) | (c.hi.constant ? 0 : bit(c.hi.var));
                       },
                   },
                   e);
        return c;
    }

    Operand operand(const Term& t) const {
        if (t.is_int()) {
            return {true, t.value(), 0};
        }
        return {false, 0, var_index(t)};
    }

    static Int value(const Operand& o, const Int* vals) { return o.constant ? o.value : vals[o.var]; }

    static bool assignment(const CElem& c, CWorld w, const Int* vals) {
        if ((w.defined & c.vars) != c.vars) {
            return true;
        }
        if (!(w.defined & bit(c.other))) {
            return false;
        }
        Int x = vals[c.other];
        return value(c.lo, vals) <= x && x <= value(c.hi, vals);
    }

    static bool sat(const CElem& c, CWorld w, CWorld there, const Int* vals) {
        switch (c.kind) {
            case CElem::Kind::Atom: return (w.atoms & bit(c.index)) != 0;
            case CElem::Kind::Linear: {
                if ((w.defined & c.vars) != c.vars) {
                    return false;
                }
                Int lhs = 0;
                for (const auto& [k, v] : c.terms) {
                    lhs += k * vals[v];
                }
                return compare(lhs, c.cmp, c.rhs);
            }
            case CElem::Kind::Diff:
                return (w.defined & c.vars) == c.vars && vals[c.index] - vals[c.other] <= c.rhs;
            case CElem::Kind::Assign: return assignment(c, there, vals) && assignment(c, w, vals);
        }
        return false;
    }

    static bool implication(const CRule& r, CWorld w, CWorld there, const Int* vals) {
        for (const auto& [negated, e] : r.body) {
            if (negated ? sat(e, there, there, vals) : !sat(e, w, there, vals)) {
                return true;
            }
        }
        return r.has_head && sat(r.head, w, there, vals);
    }

    std::vector<Atom>  atoms_;
    std::vector<Term>  vars_;
    std::vector<CRule> rules_;
    Mask               facts_{0};
    Mask               head_atoms_{0};
    Mask               head_vars_{0};
};

//! Calls f(sub) for every proper submask of m, including 0.
template <class F>
bool any_proper_submask(Mask m, F&& f) {
    if (m == 0) {
        return false;
    }
    for (Mask s = (m - 1) & m;; s = (s - 1) & m) {
        if (f(s)) {
            return true;
        }
        if (s == 0) {
            return false;
        }
    }
}

//! Calls f(sub) for every submask of m, including m and 0.
template <class F>
bool any_submask(Mask m, F&& f) {
    return f(m) || any_proper_submask(m, f);
}

bool minimal_casp(const Compiled& c, CWorld t, const Int* vals) {
    return !any_proper_submask(t.atoms, [&](Mask h) { return c.model({h, t.defined}, t, vals); });
}

bool minimal_founded(const Compiled& c, CWorld t, const Int* vals) {
    return !any_submask(t.atoms, [&](Mask h) {
        auto test = [&](Mask d) { return c.model({h, d}, t, vals); };
        return h == t.atoms ? any_proper_submask(t.defined, test) : any_submask(t.defined, test);
    });
}

AnswerSet decode(const Compiled& c, CWorld w, const Int* vals) {
    AnswerSet a;
    for (unsigned i = 0; i < c.atoms().size(); ++i) {
        if (w.atoms & bit(i)) {
            a.atoms.insert(c.atoms()[i]);
        }
    }
    for (unsigned i = 0; i < c.vars().size(); ++i) {
        if (w.defined & bit(i)) {
            a.val.emplace(c.vars()[i], vals[i]);
        }
    }
    return a;
}

} // namespace

bool is_equilibrium(const AnswerSet& m, const GroundProgram& g, Semantics mode, Interval bounds) {
    Compiled         c(g);
    CWorld           t;
    std::vector<Int> vals(c.vars().size(), 0);
    for (const auto& a : m.atoms) {
        t.atoms |= bit(c.atom_index(a));
    }
    for (const auto& [name, v] : m.val) {
        unsigned i = c.var_index(name);
        if (mode == Semantics::Founded && !bounds.contains(v)) {
            throw Error("value of " + to_string(name) + " outside bounds");
        }
        t.defined |= bit(i);
        vals[i] = v;
    }
    if (mode == Semantics::Casp && std::popcount(t.defined) != static_cast<int>(c.vars().size())) {
        throw Error("casp answer sets need a total valuation");
    }
    if (!c.total_model(t, vals.data())) {
        return false;
    }
    return mode == Semantics::Casp ? minimal_casp(c, t, vals.data()) : minimal_founded(c, t, vals.data());
}

std::vector<AnswerSet> enumerate_equilibrium(const GroundProgram& g, Semantics mode, Interval bounds) {
    Compiled               c(g);
    std::vector<AnswerSet> out;
    if (bounds.lo > bounds.hi && !c.vars().empty() && mode == Semantics::Casp) {
        return out;
    }
    // Facts belong to every model; atoms heading no rule cannot be founded.
    const Mask fixed = c.facts();
    const Mask free  = c.head_atoms() & ~fixed;
    if (std::popcount(free) > 40) {
        throw Error("too many atoms for exhaustive enumeration");
    }
    const unsigned n = static_cast<unsigned>(c.vars().size());

    // A variable occurring in no head cannot be founded either.
    std::vector<bool> may_define(n, mode == Semantics::Casp);
    for (unsigned i = 0; i < n; ++i) {
        may_define[i] = may_define[i] || (c.head_vars() & bit(i)) != 0;
    }

    // Odometer over per-variable choices; in founded mode choice hi+1 means undefined.
    std::vector<Int> vals(n, bounds.lo);
    std::vector<Int> choice(n, bounds.lo);
    auto             top = [&](unsigned i) {
        if (mode == Semantics::Casp) {
            return bounds.hi;
        }
        return may_define[i] ? bounds.hi + 1 : bounds.lo;
    };
    if (mode == Semantics::Founded) {
        for (unsigned i = 0; i < n; ++i) {
            choice[i] = top(i); // start with undefined
        }
    }
    for (;;) {
        CWorld t;
        for (unsigned i = 0; i < n; ++i) {
            bool undefined = mode == Semantics::Founded && (choice[i] > bounds.hi || !may_define[i]);
            if (!undefined) {
                t.defined |= bit(i);
                vals[i] = choice[i];
            }
            else {
                vals[i] = 0;
            }
        }
        any_submask(free, [&](Mask sub) {
            t.atoms = fixed | sub;
            if (c.total_model(t, vals.data()) &&
                (mode == Semantics::Casp ? minimal_casp(c, t, vals.data()) : minimal_founded(c, t, vals.data()))) {
                out.push_back(decode(c, t, vals.data()));
            }
            return false;
        });
        // advance
        unsigned k = n;
        while (k > 0) {
            unsigned i = k - 1;
            if (mode == Semantics::Founded) {
                if (!may_define[i]) {
                    --k;
                    continue;
                }
                // order: undefined (hi+1), lo, ..., hi
                if (choice[i] == bounds.hi + 1) {
                    choice[i] = bounds.lo;
                    break;
                }
                if (choice[i] < bounds.hi) {
                    ++choice[i];
                    break;
                }
                choice[i] = bounds.hi + 1;
                --k;
            }
            else {
                if (choice[i] < bounds.hi) {
                    ++choice[i];
                    break;
                }
                choice[i] = bounds.lo;
                --k;
            }
        }
        if (k == 0) {
            break;
        }
    }
    sort_answer_sets(out);
    return out;
}

// ---------------------------------------------------------------------------
// reduct

namespace {

void require_boolean(const Rule& r) {
    if (!r.ground()) {
        throw Error("non-ground rule: " + to_string(r));
    }
    if ((r.head && is_theory(*r.head)) ||
        std::any_of(r.body.begin(), r.body.end(), [](const Literal& l) { return is_theory(l.elem); })) {
        throw Error("theory atoms in Boolean program: " + to_string(r));
    }
}

} // namespace

GroundProgram gl_reduct(const GroundProgram& g, const std::set<Atom>& t) {
    GroundProgram out;
    out.universe = g.universe;
    for (const auto& r : g.rules) {
        require_boolean(r);
        bool blocked = std::any_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
            return l.negated && t.contains(std::get<Atom>(l.elem));
        });
        if (blocked) {
            continue;
        }
        Rule red{r.head, {}};
        for (const auto& l : r.body) {
            if (!l.negated) {
                red.body.push_back(l);
            }
        }
        out.rules.push_back(std::move(red));
    }
    return out;
}

std::set<Atom> least_model(const GroundProgram& g) {
    for (const auto& r : g.rules) {
        require_boolean(r);
        if (std::any_of(r.body.begin(), r.body.end(), [](const Literal& l) { return l.negated; })) {
            throw Error("least model needs a negation-free program: " + to_string(r));
        }
    }
    std::set<Atom> m;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            if (!r.head) {
                continue;
            }
            const auto& h = std::get<Atom>(*r.head);
            if (m.contains(h)) {
                continue;
            }
            bool fire = std::all_of(r.body.begin(), r.body.end(),
                                    [&](const Literal& l) { return m.contains(std::get<Atom>(l.elem)); });
            if (fire) {
                m.insert(h);
                changed = true;
            }
        }
    }
    return m;
}

} // namespace htasp

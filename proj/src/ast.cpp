#include <htasp/ast.h>

#include "overload.h"

#include <algorithm>
#include <cctype>
#include <utility>

namespace htasp {

Term Term::integer(Int value) {
    Term t;
    t.kind_  = Kind::Int;
    t.value_ = value;
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = Kind::Sym;
    t.name_ = std::move(name);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Var;
    t.name_ = std::move(name);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (args.empty()) {
        return symbol(std::move(name));
    }
    Term t;
    t.kind_ = Kind::Func;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
}

bool Term::ground() const {
    switch (kind_) {
        case Kind::Var : return false;
        case Kind::Func: return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.ground(); });
        default        : return true;
    }
}

bool operator==(const Term& lhs, const Term& rhs) {
    return lhs.kind_ == rhs.kind_ && lhs.value_ == rhs.value_ && lhs.name_ == rhs.name_ && lhs.args_ == rhs.args_;
}

std::strong_ordering operator<=>(const Term& lhs, const Term& rhs) {
    if (auto c = lhs.kind_ <=> rhs.kind_; c != 0) {
        return c;
    }
    if (lhs.kind_ == Term::Kind::Int) {
        return lhs.value_ <=> rhs.value_;
    }
    if (auto c = lhs.name_ <=> rhs.name_; c != 0) {
        return c;
    }
    return lhs.args_ <=> rhs.args_;
}

bool Atom::ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

const char* to_string(Cmp cmp) {
    switch (cmp) {
        case Cmp::Le: return "<=";
        case Cmp::Eq: return "=";
        case Cmp::Ne: return "!=";
        case Cmp::Lt: return "<";
        case Cmp::Gt: return ">";
        case Cmp::Ge: return ">=";
    }
    return "?";
}

bool compare(Int lhs, Cmp cmp, Int rhs) {
    switch (cmp) {
        case Cmp::Le: return lhs <= rhs;
        case Cmp::Eq: return lhs == rhs;
        case Cmp::Ne: return lhs != rhs;
        case Cmp::Lt: return lhs < rhs;
        case Cmp::Gt: return lhs > rhs;
        case Cmp::Ge: return lhs >= rhs;
    }
    return false;
}

using detail::Overload;

bool ground(const Element& e) {
    return std::visit(Overload{
                          [](const Atom& a) { return a.ground(); },
                          [](const LinearConstraint& c) {
                              return std::all_of(c.terms.begin(), c.terms.end(),
                                                 [](const LinearTerm& t) { return t.var.ground(); });
                          },
                          [](const DiffConstraint& d) { return d.lhs.ground() && d.rhs.ground(); },
                          [](const Assignment& a) { return a.lo.ground() && a.hi.ground() && a.target.ground(); },
                      },
                      e);
}

bool Rule::ground() const {
    if (head && !htasp::ground(*head)) {
        return false;
    }
    return std::all_of(body.begin(), body.end(), [](const Literal& l) { return htasp::ground(l.elem); });
}

Atom atom(std::string predicate, std::vector<Term> args) { return Atom{std::move(predicate), std::move(args)}; }
LinearConstraint sum(std::vector<LinearTerm> terms, Cmp cmp, Int rhs) {
    return LinearConstraint{std::move(terms), cmp, rhs};
}
DiffConstraint diff(Term lhs, Term rhs, Int bound) { return DiffConstraint{std::move(lhs), std::move(rhs), bound}; }
Assignment assign(Term lo, Term hi, Term target) { return Assignment{std::move(lo), std::move(hi), std::move(target)}; }
Literal    pos(Element e) { return Literal{false, std::move(e)}; }
Literal    neg(Element e) { return Literal{true, std::move(e)}; }

// ---------------------------------------------------------------------------
// well-formedness

bool is_symbol_name(std::string_view name) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_variable_name(std::string_view name) {
    if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

namespace {

struct WellformedChecker {
    std::vector<RuleDiagnostic>& out;
    std::size_t                  rule{0};

    void report(std::string reason) { out.push_back({rule, std::move(reason)}); }

    void term(const Term& t) {
        switch (t.kind()) {
            case Term::Kind::Int: break;
            case Term::Kind::Sym:
                if (!is_symbol_name(t.name()) || t.name() == "not") {
                    report("invalid symbol name '" + t.name() + "'");
                }
                break;
            case Term::Kind::Var:
                if (!is_variable_name(t.name())) {
                    report("invalid variable name '" + t.name() + "'");
                }
                break;
            case Term::Kind::Func:
                if (!is_symbol_name(t.name()) || t.name() == "not") {
                    report("invalid function name '" + t.name() + "'");
                }
                for (const auto& a : t.args()) {
                    term(a);
                }
                break;
        }
    }

    void int_var(const Term& t, const char* where) {
        if (t.is_int()) {
            report(std::string("integer constant in variable position of ") + where);
        }
        term(t);
    }

    void element(const Element& e, bool in_body) {
        std::visit(Overload{
                       [&](const Atom& a) {
                           if (!is_symbol_name(a.predicate) || a.predicate == "not") {
                               report("invalid predicate name '" + a.predicate + "'");
                           }
                           for (const auto& t : a.args) {
                               term(t);
                           }
                       },
                       [&](const LinearConstraint& c) {
                           if (c.terms.empty()) {
                               report("empty &sum");
                           }
                           for (const auto& t : c.terms) {
                               int_var(t.var, "&sum");
                           }
                       },
                       [&](const DiffConstraint& d) {
                           int_var(d.lhs, "&diff");
                           int_var(d.rhs, "&diff");
                       },
                       [&](const Assignment& a) {
                           if (in_body) {
                               report("assignment in body");
                           }
                           term(a.lo);
                           term(a.hi);
                           int_var(a.target, "assignment target");
                       },
                   },
                   e);
    }
};

} // namespace

std::vector<RuleDiagnostic> check_wellformed(const Program& p) {
    std::vector<RuleDiagnostic> out;
    WellformedChecker           check{out};
    for (const auto& r : p.rules) {
        if (r.head) {
            check.element(*r.head, false);
        }
        for (const auto& l : r.body) {
            check.element(l.elem, true);
        }
        ++check.rule;
    }
    return out;
}

// ---------------------------------------------------------------------------
// symbols

void collect_int_vars(const Element& e, std::vector<Term>& out) {
    std::visit(Overload{
                   [](const Atom&) {},
                   [&](const LinearConstraint& c) {
                       for (const auto& t : c.terms) {
                           out.push_back(t.var);
                       }
                   },
                   [&](const DiffConstraint& d) {
                       out.push_back(d.lhs);
                       out.push_back(d.rhs);
                   },
                   [&](const Assignment& a) {
                       if (!a.lo.is_int()) {
                           out.push_back(a.lo);
                       }
                       if (!a.hi.is_int()) {
                           out.push_back(a.hi);
                       }
                       out.push_back(a.target);
                   },
               },
               e);
}

namespace {
template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}
} // namespace

Symbols atoms_of(const std::vector<Rule>& rules) {
    Symbols s;
    auto    add = [&](const Element& e) {
        if (const auto* a = std::get_if<Atom>(&e)) {
            s.atoms.push_back(*a);
        }
        else {
            s.constraints.push_back(e);
            collect_int_vars(e, s.int_vars);
        }
    };
    for (const auto& r : rules) {
        if (r.head) {
            add(*r.head);
        }
        for (const auto& l : r.body) {
            add(l.elem);
        }
    }
    sort_unique(s.atoms);
    sort_unique(s.constraints);
    sort_unique(s.int_vars);
    return s;
}

Symbols atoms_of(const GroundProgram& g) { return atoms_of(g.rules); }

// ---------------------------------------------------------------------------
// printing

namespace {

void print(std::string& out, const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Int: out += std::to_string(t.value()); break;
        case Term::Kind::Sym:
        case Term::Kind::Var: out += t.name(); break;
        case Term::Kind::Func: {
            out += t.name();
            out += '(';
            const char* sep = "";
            for (const auto& a : t.args()) {
                out += std::exchange(sep, ",");
                print(out, a);
            }
            out += ')';
            break;
        }
    }
}

void print(std::string& out, const Atom& a) {
    out += a.predicate;
    if (!a.args.empty()) {
        out += '(';
        const char* sep = "";
        for (const auto& t : a.args) {
            out += std::exchange(sep, ",");
            print(out, t);
        }
        out += ')';
    }
}

void print(std::string& out, const Element& e) {
    std::visit(Overload{
                   [&](const Atom& a) { print(out, a); },
                   [&](const LinearConstraint& c) {
                       out += "&sum{";
                       const char* sep = "";
                       for (const auto& t : c.terms) {
                           out += std::exchange(sep, ";");
                           out += std::to_string(t.coeff);
                           out += '*';
                           print(out, t.var);
                       }
                       out += "} ";
                       out += to_string(c.cmp);
                       out += ' ';
                       out += std::to_string(c.rhs);
                   },
                   [&](const DiffConstraint& d) {
                       out += "&diff{";
                       print(out, d.lhs);
                       out += '-';
                       print(out, d.rhs);
                       out += "} <= ";
                       out += std::to_string(d.bound);
                   },
                   [&](const Assignment& a) {
                       out += "&in{";
                       print(out, a.lo);
                       out += "..";
                       print(out, a.hi);
                       out += "} =: ";
                       print(out, a.target);
                   },
               },
               e);
}

void print(std::string& out, const Literal& l) {
    if (l.negated) {
        out += "not ";
    }
    print(out, l.elem);
}

void print(std::string& out, const Rule& r) {
    if (r.head) {
        print(out, *r.head);
        if (!r.body.empty()) {
            out += " :- ";
        }
    }
    else {
        out += ":- ";
    }
    const char* sep = "";
    for (const auto& l : r.body) {
        out += std::exchange(sep, ", ");
        print(out, l);
    }
    out += '.';
}

template <class T>
std::string str(const T& x) {
    std::string out;
    print(out, x);
    return out;
}

} // namespace

std::string to_string(const Term& t) { return str(t); }
std::string to_string(const Atom& a) { return str(a); }
std::string to_string(const Element& e) { return str(e); }
std::string to_string(const Literal& l) { return str(l); }
std::string to_string(const Rule& r) { return str(r); }

std::string pretty_print(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        print(out, r);
        out += '\n';
    }
    return out;
}

std::string pretty_print(const GroundProgram& g) { return pretty_print(Program{g.rules}); }

} // namespace htasp

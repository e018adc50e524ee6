#include <htasp/config.h>

#include <htasp/error.h>
#include <htasp/search.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace htasp::config {

namespace {

Term sym(const std::string& s) { return Term::symbol(s); }

Term val_var(const Term& id, const std::string& attr) { return Term::function("val", {id, sym(attr)}); }

Atom in_atom(const Term& s) { return atom("in", {s}); }
Atom out_atom(const Term& s) { return atom("out", {s}); }

bool is_sym(const Term& t) { return t.kind() == Term::Kind::Sym; }

const Atom* fact_atom(const Rule& r) {
    if (!r.is_fact()) {
        return nullptr;
    }
    return std::get_if<Atom>(&*r.head);
}

bool has_cycle(const Model& m) {
    std::map<std::string, int> state; // 0 unvisited, 1 on stack, 2 done
    std::function<bool(const std::string&)> visit = [&](const std::string& t) {
        int& s = state[t];
        if (s == 1) {
            return true;
        }
        if (s == 2) {
            return false;
        }
        s = 1;
        for (const auto& e : m.subparts) {
            if (e.parent == t && visit(e.child)) {
                return true;
            }
        }
        state[t] = 2;
        return false;
    };
    for (const auto& e : m.subparts) {
        if (visit(e.parent)) {
            return true;
        }
    }
    return false;
}

//! Violated integrity constraints of the model rules, grounded over the instance facts.
std::vector<Violation> check_constraints(const Model& m, const Instance& i) {
    if (m.constraints.empty()) {
        return {};
    }
    Program p = instance_facts(i);
    p.rules.insert(p.rules.end(), m.constraints.begin(), m.constraints.end());

    Valuation val;
    for (const auto& v : i.values) {
        val.emplace(val_var(v.id, v.attr), v.value);
    }
    const Interpretation total{{{}, val}, {{}, val}};

    GroundProgram g;
    try {
        g = ground(p);
    }
    catch (const Error& e) {
        return {{ViolationKind::Constraint, {}, e.what()}};
    }

    GroundProgram             boolean;
    std::vector<const Rule*>  origin;
    for (const auto& r : g.rules) {
        Rule b;
        bool keep = true;
        for (const auto& l : r.body) {
            if (!is_theory(l.elem)) {
                b.body.push_back(l);
            }
            else if (sat_elem(total, WorldRef::There, l.elem) == l.negated) {
                keep = false;
                break;
            }
        }
        if (keep && r.head) {
            if (is_theory(*r.head)) {
                keep = !sat_elem(total, WorldRef::There, *r.head);
            }
            else {
                b.head = r.head;
            }
        }
        if (keep) {
            boolean.rules.push_back(std::move(b));
            origin.push_back(&r);
        }
    }

    GroundProgram definite;
    for (const auto& r : boolean.rules) {
        if (r.head) {
            definite.rules.push_back(r);
        }
    }
    auto models = stable_models_bool(definite);
    if (models.size() != 1) {
        return {{ViolationKind::Constraint, {},
                 "constraint rules have " + std::to_string(models.size()) + " models instead of one"}};
    }
    const auto& model = models.front();

    std::vector<Violation> out;
    std::set<std::string>  seen;
    for (std::size_t k = 0; k < boolean.rules.size(); ++k) {
        const Rule& r = boolean.rules[k];
        if (r.head) {
            continue;
        }
        bool body = std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
            return model.contains(std::get<Atom>(l.elem)) != l.negated;
        });
        if (body) {
            std::string text = "violated: " + to_string(*origin[k]);
            if (seen.insert(text).second) {
                out.push_back({ViolationKind::Constraint, {}, std::move(text)});
            }
        }
    }
    return out;
}

} // namespace

bool Model::declared(const std::string& type) const {
    return std::find(types.begin(), types.end(), type) != types.end();
}

std::vector<Subpart> Model::subparts_of(const std::string& type) const {
    std::vector<Subpart> out;
    std::copy_if(subparts.begin(), subparts.end(), std::back_inserter(out),
                 [&](const Subpart& s) { return s.parent == type; });
    return out;
}

std::vector<Attribute> Model::attributes_of(const std::string& type) const {
    std::vector<Attribute> out;
    std::copy_if(attributes.begin(), attributes.end(), std::back_inserter(out),
                 [&](const Attribute& a) { return a.type == type; });
    return out;
}

void Instance::normalize() {
    std::sort(individuals.begin(), individuals.end());
    std::sort(parents.begin(), parents.end());
    std::sort(values.begin(), values.end());
}

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::UndeclaredType: return "undeclared-type";
        case ViolationKind::BadParentType: return "bad-parent-type";
        case ViolationKind::Multiplicity: return "multiplicity";
        case ViolationKind::AttrDomain: return "attr-domain";
        case ViolationKind::MissingAttr: return "missing-attr";
        case ViolationKind::DuplicateAttr: return "duplicate-attr";
        case ViolationKind::UndeclaredAttr: return "undeclared-attr";
        case ViolationKind::MultipleRoots: return "multiple-roots";
        case ViolationKind::DanglingParent: return "dangling-parent";
        case ViolationKind::Constraint: return "constraint";
    }
    return "?";
}

std::string to_string(const Violation& v) {
    std::string s = to_string(v.kind);
    s += "(";
    for (std::size_t i = 0; i < v.subjects.size(); ++i) {
        s += (i ? "," : "") + to_string(v.subjects[i]);
    }
    return s + "): " + v.message;
}

Loaded<Model> load_model(const Program& facts) {
    Model                       m;
    std::vector<RuleDiagnostic> diags;
    std::vector<std::string>    roots;
    std::vector<std::size_t>    constraint_index;
    const std::size_t           whole = facts.rules.size();

    for (std::size_t i = 0; i < facts.rules.size(); ++i) {
        const Rule& r    = facts.rules[i];
        const Atom* head = r.head ? std::get_if<Atom>(&*r.head) : nullptr;
        const bool  reserved =
            head && (head->predicate == "ptype" || head->predicate == "root" || head->predicate == "subpart" ||
                     head->predicate == "attrdom");
        if (!reserved) {
            m.constraints.push_back(r);
            constraint_index.push_back(i);
            continue;
        }
        const auto& a    = head->args;
        auto        fail = [&](const std::string& why) { diags.push_back({i, why}); };
        if (!r.is_fact() || !head->ground()) {
            fail(head->predicate + " must be a ground fact");
        }
        else if (head->predicate == "ptype" || head->predicate == "root") {
            if (a.size() != 1 || !is_sym(a[0])) {
                fail(head->predicate + " expects one type name");
            }
            else if (head->predicate == "ptype") {
                if (m.declared(a[0].name())) {
                    fail("type " + a[0].name() + " declared twice");
                }
                else {
                    m.types.push_back(a[0].name());
                }
            }
            else {
                roots.push_back(a[0].name());
            }
        }
        else if (a.size() != 4 || !is_sym(a[0]) || !is_sym(a[1]) || !a[2].is_int() || !a[3].is_int()) {
            fail(head->predicate + " expects two names and two integers");
        }
        else if (head->predicate == "subpart") {
            Subpart s{a[0].name(), a[1].name(), a[2].value(), a[3].value()};
            if (s.min < 0) {
                fail("negative multiplicity in subpart(" + s.parent + "," + s.child + ")");
            }
            else if (s.min > s.max) {
                fail("min > max in subpart(" + s.parent + "," + s.child + ")");
            }
            else if (std::any_of(m.subparts.begin(), m.subparts.end(),
                                 [&](const Subpart& o) { return o.parent == s.parent && o.child == s.child; })) {
                fail("subpart(" + s.parent + "," + s.child + ") declared twice");
            }
            else {
                m.subparts.push_back(s);
            }
        }
        else {
            Attribute at{a[0].name(), a[1].name(), a[2].value(), a[3].value()};
            if (at.lo > at.hi) {
                fail("lo > hi in attrdom(" + at.type + "," + at.name + ")");
            }
            else if (std::any_of(m.attributes.begin(), m.attributes.end(),
                                 [&](const Attribute& o) { return o.type == at.type && o.name == at.name; })) {
                fail("attrdom(" + at.type + "," + at.name + ") declared twice");
            }
            else {
                m.attributes.push_back(at);
            }
        }
    }

    if (roots.empty()) {
        diags.push_back({whole, "missing root"});
    }
    else if (roots.size() > 1) {
        diags.push_back({whole, "duplicate root"});
    }
    else {
        m.root = roots.front();
        if (!m.declared(m.root)) {
            diags.push_back({whole, "root type " + m.root + " is not declared"});
        }
    }
    for (const auto& s : m.subparts) {
        for (const auto* t : {&s.parent, &s.child}) {
            if (!m.declared(*t)) {
                diags.push_back({whole, "subpart uses undeclared type " + *t});
            }
        }
    }
    for (const auto& a : m.attributes) {
        if (!m.declared(a.type)) {
            diags.push_back({whole, "attrdom uses undeclared type " + a.type});
        }
    }
    if (has_cycle(m)) {
        diags.push_back({whole, "cyclic partonomy"});
    }

    for (auto d : check_safety(Program{m.constraints})) {
        d.rule = constraint_index[d.rule];
        diags.push_back(std::move(d));
    }

    if (!diags.empty()) {
        return {std::nullopt, std::move(diags)};
    }
    return {std::move(m), {}};
}

Loaded<Instance> load_instance(const Program& facts) {
    Instance                    inst;
    std::vector<RuleDiagnostic> diags;
    std::set<Term>              ids, children;

    for (std::size_t i = 0; i < facts.rules.size(); ++i) {
        const Atom* a = fact_atom(facts.rules[i]);
        if (!a || !a->ground()) {
            diags.push_back({i, "instance files contain only ground facts"});
            continue;
        }
        if (a->predicate == "inst" && a->args.size() == 2 && is_sym(a->args[1])) {
            if (!ids.insert(a->args[0]).second) {
                diags.push_back({i, "duplicate individual " + to_string(a->args[0])});
            }
            else {
                inst.individuals.push_back({a->args[0], a->args[1].name()});
            }
        }
        else if (a->predicate == "parentOf" && a->args.size() == 2) {
            if (!children.insert(a->args[1]).second) {
                diags.push_back({i, "individual " + to_string(a->args[1]) + " has more than one parent"});
            }
            else {
                inst.parents.push_back({a->args[1], a->args[0]});
            }
        }
        else if (a->predicate == "val" && a->args.size() == 3 && is_sym(a->args[1]) && a->args[2].is_int()) {
            inst.values.push_back({a->args[0], a->args[1].name(), a->args[2].value()});
        }
        else {
            diags.push_back({i, "unexpected fact " + to_string(*a)});
        }
    }
    if (!diags.empty()) {
        return {std::nullopt, std::move(diags)};
    }
    return {std::move(inst), {}};
}

Program instance_facts(const Instance& i) {
    Program p;
    for (const auto& ind : i.individuals) {
        p.rules.push_back({atom("inst", {ind.id, sym(ind.type)}), {}});
    }
    for (const auto& l : i.parents) {
        p.rules.push_back({atom("parentOf", {l.parent, l.child}), {}});
    }
    for (const auto& v : i.values) {
        p.rules.push_back({atom("val", {v.id, sym(v.attr), Term::integer(v.value)}), {}});
    }
    return p;
}

std::vector<Violation> check_instance(const Model& m, const Instance& i) {
    std::vector<Violation> out;
    std::map<Term, std::string> type;
    for (const auto& ind : i.individuals) {
        type.emplace(ind.id, ind.type);
        if (!m.declared(ind.type)) {
            out.push_back({ViolationKind::UndeclaredType, {ind.id}, "type " + ind.type + " is not declared"});
        }
    }

    std::map<Term, Term> parent_of;
    for (const auto& l : i.parents) {
        parent_of.emplace(l.child, l.parent);
        auto c = type.find(l.child);
        auto p = type.find(l.parent);
        if (c == type.end() || p == type.end()) {
            out.push_back({ViolationKind::DanglingParent, {l.child, l.parent}, "link refers to an unknown individual"});
            continue;
        }
        bool edge = std::any_of(m.subparts.begin(), m.subparts.end(), [&](const Subpart& s) {
            return s.parent == p->second && s.child == c->second;
        });
        if (!edge) {
            out.push_back({ViolationKind::BadParentType, {l.child, l.parent},
                           "no partonomy edge " + p->second + " -> " + c->second});
        }
    }

    std::vector<Term> roots;
    for (const auto& ind : i.individuals) {
        if (parent_of.contains(ind.id)) {
            continue;
        }
        if (ind.type == m.root) {
            roots.push_back(ind.id);
        }
        else if (m.declared(ind.type)) {
            out.push_back({ViolationKind::BadParentType, {ind.id}, "individual of type " + ind.type + " has no parent"});
        }
    }
    if (roots.size() != 1) {
        out.push_back({ViolationKind::MultipleRoots, roots,
                       std::to_string(roots.size()) + " unparented individuals of root type " + m.root});
    }

    for (const auto& ind : i.individuals) {
        for (const auto& e : m.subparts_of(ind.type)) {
            Int n = 0;
            for (const auto& l : i.parents) {
                auto c = type.find(l.child);
                n += l.parent == ind.id && c != type.end() && c->second == e.child ? 1 : 0;
            }
            if (n < e.min || n > e.max) {
                out.push_back({ViolationKind::Multiplicity, {ind.id},
                               std::to_string(n) + " children of type " + e.child + ", expected " +
                                   std::to_string(e.min) + ".." + std::to_string(e.max)});
            }
        }
        for (const auto& a : m.attributes_of(ind.type)) {
            std::vector<Int> vs;
            for (const auto& v : i.values) {
                if (v.id == ind.id && v.attr == a.name) {
                    vs.push_back(v.value);
                }
            }
            if (vs.empty()) {
                out.push_back({ViolationKind::MissingAttr, {ind.id}, "missing attribute " + a.name});
            }
            else if (vs.size() > 1) {
                out.push_back({ViolationKind::DuplicateAttr, {ind.id}, "attribute " + a.name + " given more than once"});
            }
            else if (vs[0] < a.lo || vs[0] > a.hi) {
                out.push_back({ViolationKind::AttrDomain, {ind.id},
                               a.name + "=" + std::to_string(vs[0]) + " outside " + std::to_string(a.lo) + ".." +
                                   std::to_string(a.hi)});
            }
        }
    }
    for (const auto& v : i.values) {
        auto t = type.find(v.id);
        if (t == type.end()) {
            out.push_back({ViolationKind::UndeclaredAttr, {v.id}, "value for unknown individual"});
            continue;
        }
        auto attrs = m.attributes_of(t->second);
        if (std::none_of(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == v.attr; })) {
            out.push_back({ViolationKind::UndeclaredAttr, {v.id},
                           "attribute " + v.attr + " is not declared for type " + t->second});
        }
    }

    auto cons = check_constraints(m, i);
    out.insert(out.end(), cons.begin(), cons.end());

    std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.kind, a.subjects, a.message) < std::tie(b.kind, b.subjects, b.message);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Interval attribute_bounds(const Model& m) {
    if (m.attributes.empty()) {
        return {0, 0};
    }
    Interval b{m.attributes.front().lo, m.attributes.front().hi};
    for (const auto& a : m.attributes) {
        b.lo = std::min(b.lo, a.lo);
        b.hi = std::max(b.hi, a.hi);
    }
    return b;
}

Program translate(const Model& m, const Instance& partial, Semantics mode, std::optional<Interval> solver_bounds) {
    if (solver_bounds) {
        for (const auto& a : m.attributes) {
            if (a.lo < solver_bounds->lo || a.hi > solver_bounds->hi) {
                throw Error("domain of " + a.type + "." + a.name + " exceeds solver bounds");
            }
        }
    }

    std::optional<Term> root_id;
    for (const auto& v : check_instance(m, partial)) {
        switch (v.kind) {
            case ViolationKind::Multiplicity:
            case ViolationKind::MissingAttr:
            case ViolationKind::Constraint: break;
            case ViolationKind::MultipleRoots:
                if (v.subjects.size() > 1) {
                    throw Error("partial instance: " + to_string(v));
                }
                break;
            default: throw Error("partial instance: " + to_string(v));
        }
    }
    std::map<Term, std::string> type;
    std::set<Term>              parented;
    for (const auto& l : partial.parents) {
        parented.insert(l.child);
    }
    for (const auto& ind : partial.individuals) {
        type.emplace(ind.id, ind.type);
        if (!parented.contains(ind.id) && ind.type == m.root) {
            root_id = ind.id;
        }
    }

    Program p;
    auto    fact = [&](Atom a) { p.rules.push_back({std::move(a), {}}); };
    auto    rule = [&](std::optional<Element> head, std::vector<Literal> body) {
        p.rules.push_back({std::move(head), std::move(body)});
    };

    auto attributes = [&](const Term& id, const std::string& t) {
        for (const auto& a : m.attributes_of(t)) {
            Term x = val_var(id, a.name);
            if (mode == Semantics::Founded) {
                rule(assign(Term::integer(a.lo), Term::integer(a.hi), x), {pos(in_atom(id))});
            }
            else {
                rule(sum({{1, x}}, Cmp::Ge, a.lo), {pos(in_atom(id))});
                rule(sum({{1, x}}, Cmp::Le, a.hi), {pos(in_atom(id))});
            }
            for (const auto& v : partial.values) {
                if (v.id == id && v.attr == a.name) {
                    rule(std::nullopt, {neg(sum({{1, x}}, Cmp::Eq, v.value))});
                }
            }
        }
    };

    std::function<void(const Term&, const std::string&)> expand = [&](const Term& parent, const std::string& t) {
        for (const auto& e : m.subparts_of(t)) {
            std::vector<Term> given;
            for (const auto& l : partial.parents) {
                auto c = type.find(l.child);
                if (l.parent == parent && c != type.end() && c->second == e.child) {
                    given.push_back(l.child);
                }
            }
            std::sort(given.begin(), given.end());
            if (static_cast<Int>(given.size()) > e.max) {
                throw Error("partial instance gives " + to_string(parent) + " more than " + std::to_string(e.max) +
                            " children of type " + e.child);
            }
            std::optional<Term> prev;
            for (Int k = 1; k <= e.max; ++k) {
                const auto idx = static_cast<std::size_t>(k - 1);
                Term s = idx < given.size() ? given[idx]
                                            : Term::function("slot", {parent, sym(e.child), Term::integer(k)});
                fact(atom("slot", {s}));
                rule(in_atom(s), {pos(in_atom(parent)), neg(out_atom(s))});
                rule(out_atom(s), {neg(in_atom(s))});
                rule(atom("inst", {s, sym(e.child)}), {pos(in_atom(s))});
                rule(atom("parentOf", {parent, s}), {pos(in_atom(s))});
                if (prev) {
                    rule(std::nullopt, {pos(in_atom(s)), pos(out_atom(*prev))});
                }
                if (k == e.min) {
                    rule(std::nullopt, {pos(in_atom(parent)), pos(out_atom(s))});
                }
                if (idx < given.size()) {
                    rule(std::nullopt, {neg(in_atom(s))});
                }
                attributes(s, e.child);
                expand(s, e.child);
                prev = s;
            }
        }
    };

    const Term root = root_id.value_or(sym("root"));
    fact(in_atom(root));
    fact(atom("inst", {root, sym(m.root)}));
    attributes(root, m.root);
    expand(root, m.root);

    p.rules.insert(p.rules.end(), m.constraints.begin(), m.constraints.end());
    return p;
}

Instance decode(const Model& m, const AnswerSet& a) {
    Instance out;
    for (const auto& at : a.atoms) {
        if (at.predicate == "inst" && at.args.size() == 2 && is_sym(at.args[1])) {
            out.individuals.push_back({at.args[0], at.args[1].name()});
        }
        else if (at.predicate == "parentOf" && at.args.size() == 2) {
            out.parents.push_back({at.args[1], at.args[0]});
        }
    }
    for (const auto& ind : out.individuals) {
        for (const auto& attr : m.attributes_of(ind.type)) {
            if (auto it = a.val.find(val_var(ind.id, attr.name)); it != a.val.end()) {
                out.values.push_back({ind.id, attr.name, it->second});
            }
        }
    }
    out.normalize();
    return out;
}

} // namespace htasp::config

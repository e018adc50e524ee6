#include <htasp/cli.h>

#include <htasp/config.h>
#include <htasp/error.h>
#include <htasp/grounder.h>
#include <htasp/parser.h>
#include <htasp/search.h>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

namespace htasp::cli {

namespace {

struct Failure {
    int         code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{InputError, "cannot read " + path};
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Program load_program(const std::string& path) {
    auto parsed = parse_program(read_file(path));
    if (!parsed.ok()) {
        std::string msg;
        for (const auto& d : parsed.diagnostics) {
            msg += (msg.empty() ? "" : "\n") + path + ":" + to_string(d);
        }
        throw Failure{InputError, msg};
    }
    return std::move(*parsed.value);
}

template <class T>
T loaded_or_fail(const std::string& path, const config::Loaded<T>& l, std::size_t n_rules) {
    if (l.ok()) {
        return *l.value;
    }
    std::string msg;
    for (const auto& d : l.diagnostics) {
        msg += (msg.empty() ? "" : "\n") + path + ": ";
        if (d.rule < n_rules) {
            msg += "rule " + std::to_string(d.rule + 1) + ": ";
        }
        msg += d.reason;
    }
    throw Failure{InputError, msg};
}

Interval parse_domain(const std::string& s) {
    static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch             m;
    if (!std::regex_match(s, m, re)) {
        throw Failure{UsageError, "--domain expects LO..HI, got '" + s + "'"};
    }
    Interval d{std::stoll(m[1]), std::stoll(m[2])};
    if (d.lo > d.hi) {
        throw Failure{UsageError, "--domain has lo > hi"};
    }
    return d;
}

Semantics parse_semantics(const std::string& s) { return s == "founded" ? Semantics::Founded : Semantics::Casp; }

const std::vector<std::string> kSemantics{"casp", "founded"};
const std::vector<std::string> kEngines{"oracle", "search"};

struct Options {
    std::string           file;
    std::string           semantics{"casp"};
    std::string           engine{"oracle"};
    std::string           domain;
    std::size_t           models{0};
    bool                  text{false};
    std::string           model_file;
    std::string           instance_file;
    std::string           output;
};

int cmd_solve(const Options& o, std::ostream& out) {
    const Semantics mode   = parse_semantics(o.semantics);
    const Engine    engine = o.engine == "search" ? Engine::Search : Engine::Oracle;
    if (mode == Semantics::Founded && engine == Engine::Search) {
        throw Failure{UsageError, "the search engine supports casp semantics only"};
    }
    std::optional<Interval> domain;
    if (!o.domain.empty()) {
        domain = parse_domain(o.domain);
    }
    Program       p = load_program(o.file);
    GroundProgram g = ground(p);
    if (!domain && !atoms_of(g).int_vars.empty()) {
        throw Failure{UsageError, "--domain is required for programs with integer variables"};
    }
    auto sets = solve(g, mode, domain.value_or(Interval{0, 0}), engine);

    std::size_t shown = o.models == 0 ? sets.size() : std::min(o.models, sets.size());
    for (std::size_t i = 0; i < shown; ++i) {
        out << "Answer: " << i + 1 << "\n";
        std::string line;
        for (const auto& a : sets[i].atoms) {
            line += (line.empty() ? "" : " ") + to_string(a);
        }
        out << line << "\n";
        if (!sets[i].val.empty()) {
            out << "val " << to_string(sets[i].val) << "\n";
        }
    }
    out << (sets.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
    return sets.empty() ? Unsatisfiable : Satisfiable;
}

int cmd_ground(const Options& o, std::ostream& out) {
    GroundProgram            g = ground(load_program(o.file));
    std::vector<std::string> lines;
    lines.reserve(g.rules.size());
    for (const auto& r : g.rules) {
        lines.push_back(to_string(r));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) {
        out << l << "\n";
    }
    return Ok;
}

config::Model load_model_file(const std::string& path) {
    Program p = load_program(path);
    return loaded_or_fail(path, config::load_model(p), p.rules.size());
}

config::Instance load_instance_file(const std::string& path) {
    Program p = load_program(path);
    return loaded_or_fail(path, config::load_instance(p), p.rules.size());
}

int cmd_check_config(const Options& o, std::ostream& out) {
    auto m          = load_model_file(o.model_file);
    auto inst       = load_instance_file(o.instance_file);
    auto violations = config::check_instance(m, inst);
    if (violations.empty()) {
        out << "OK\n";
        return Ok;
    }
    for (const auto& v : violations) {
        out << to_string(v) << "\n";
    }
    return Violations;
}

int cmd_translate_config(const Options& o, std::ostream& out) {
    auto                   m = load_model_file(o.model_file);
    config::Instance       partial;
    if (!o.instance_file.empty()) {
        partial = load_instance_file(o.instance_file);
    }
    std::optional<Interval> bounds;
    if (!o.domain.empty()) {
        bounds = parse_domain(o.domain);
    }
    std::string text = pretty_print(config::translate(m, partial, parse_semantics(o.semantics), bounds));
    if (o.output.empty() || o.output == "-") {
        out << text;
        return Ok;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!(f << text)) {
        throw Failure{InputError, "cannot write " + o.output};
    }
    return Ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hybrid answer-set solver with here-and-there semantics", "htasp"};
    app.require_subcommand(1);
    Options o;

    auto* solve_cmd = app.add_subcommand("solve", "Print the answer sets of a program");
    solve_cmd->add_option("file", o.file, "Program file")->required();
    solve_cmd->add_option("--semantics", o.semantics, "casp or founded")->check(CLI::IsMember(kSemantics));
    solve_cmd->add_option("--engine", o.engine, "oracle or search")->check(CLI::IsMember(kEngines));
    solve_cmd->add_option("--domain", o.domain, "Integer domain LO..HI");
    solve_cmd->add_option("--models", o.models, "Number of answer sets to print, 0 for all");

    auto* ground_cmd = app.add_subcommand("ground", "Print the ground program, one rule per line");
    ground_cmd->add_option("file", o.file, "Program file")->required();
    ground_cmd->add_flag("--text", o.text, "Parser syntax output (the default)");

    auto* check_cmd = app.add_subcommand("check-config", "Check an instance against a configuration model");
    check_cmd->add_option("--model", o.model_file, "Model fact file")->required();
    check_cmd->add_option("--instance", o.instance_file, "Instance fact file")->required();

    auto* translate_cmd = app.add_subcommand("translate-config", "Emit the solver program of a configuration model");
    translate_cmd->add_option("--model", o.model_file, "Model fact file")->required();
    translate_cmd->add_option("--instance", o.instance_file, "Partial instance fact file");
    translate_cmd->add_option("--semantics", o.semantics, "casp or founded")->check(CLI::IsMember(kSemantics));
    translate_cmd->add_option("--domain", o.domain, "Solver bounds LO..HI the attribute domains must fit");
    translate_cmd->add_option("-o,--output", o.output, "Output file, stdout by default");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(o, out);
        }
        if (ground_cmd->parsed()) {
            return cmd_ground(o, out);
        }
        if (check_cmd->parsed()) {
            return cmd_check_config(o, out);
        }
        return cmd_translate_config(o, out);
    }
    catch (const Failure& f) {
        err << "htasp: " << f.message << "\n";
        return f.code;
    }
    catch (const Error& e) {
        err << "htasp: " << e.what() << "\n";
        return InputError;
    }
}

} // namespace htasp::cli

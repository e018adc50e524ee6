#include <catch_amalgamated.hpp>

#include "support.h"

using namespace htasp;
using namespace test;

namespace {

Diagnostic first_error(const std::string& src) {
    auto p = parse_program(src);
    REQUIRE_FALSE(p.ok());
    REQUIRE_FALSE(p.diagnostics.empty());
    return p.diagnostics.front();
}

} // namespace

TEST_CASE("linear constraint fact") {
    auto p = parse("&sum{2*x;3*y} <= 7.");
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].is_fact());
    CHECK(*p.rules[0].head == Element{sum({{2, sym("x")}, {3, sym("y")}}, Cmp::Le, 7)});
}

TEST_CASE("difference constraint head with body") {
    auto p = parse("&diff{x-y} <= 5 :- a.");
    REQUIRE(p.rules.size() == 1);
    CHECK(*p.rules[0].head == Element{diff(sym("x"), sym("y"), 5)});
    CHECK(p.rules[0].body == std::vector<Literal>{pos(atom("a"))});
}

TEST_CASE("double negation is reported at the second not") {
    auto d = first_error("a :- not not b.");
    CHECK(d.line == 1);
    CHECK(d.column == 10);
    CHECK(d.message.find("double negation") != std::string::npos);
}

TEST_CASE("parse_term") {
    CHECK(*parse_term("42").value == num(42));
    CHECK(*parse_term("-3").value == num(-3));
    CHECK(*parse_term("width").value == sym("width"));
    CHECK(*parse_term("Part").value == var("Part"));
    CHECK(*parse_term("X1").value == var("X1"));
    CHECK(*parse_term("f(a,X)").value == Term::function("f", {sym("a"), var("X")}));
    CHECK_FALSE(parse_term("").ok());
    CHECK_FALSE(parse_term("a b").ok());
    CHECK_FALSE(parse_term("3)").ok());
}

TEST_CASE("coefficients") {
    auto expected = Element{sum({{1, sym("x")}, {-1, sym("y")}}, Cmp::Eq, 0)};
    CHECK(*parse("&sum{x;(-1)*y} = 0.").rules[0].head == expected);
    CHECK(*parse("&sum{1*x;-1*y} = 0.").rules[0].head == expected);
    CHECK(*parse("&sum{ 1 * x ; -1 * y } = 0 .").rules[0].head == expected);
    CHECK(pretty_print(parse("&sum{x;(-1)*y} = 0.")) == "&sum{1*x;-1*y} = 0.\n");
    CHECK_FALSE(parse_program("&sum{3} <= 1.").ok());
    CHECK_FALSE(parse_program("&sum{} <= 1.").ok());
}

TEST_CASE("assignment forms") {
    auto p = parse("&in{y..y} =: x.  &in{0..C} =: w(X) :- part(X), cap(C).");
    REQUIRE(p.rules.size() == 2);
    CHECK(*p.rules[0].head == Element{assign(sym("y"), sym("y"), sym("x"))});
    CHECK(*p.rules[1].head == Element{assign(num(0), var("C"), Term::function("w", {var("X")}))});

    auto d = first_error(":- &in{1..2} =: x.");
    CHECK(d.message == "assignment in body");
    CHECK(first_error("a :- not &in{1..2} =: x.").message == "assignment in body");
}

TEST_CASE("diff accepts only <=") {
    auto d = first_error("&diff{x-y} < 5.");
    CHECK(d.message == "&diff only supports '<='");
    CHECK(d.column == 12);
    CHECK_FALSE(parse_program("&diff{x-y} >= 5.").ok());
}

TEST_CASE("comments and whitespace") {
    auto p = parse("% header\na. %trailing\n%* block\n spanning *% b :-\n   a .");
    REQUIRE(p.rules.size() == 2);
    CHECK(pretty_print(p) == "a.\nb :- a.\n");
    CHECK(parse_program("").ok());
    CHECK(parse("   \n% only a comment\n").rules.empty());
}

TEST_CASE("lexical and syntax errors carry positions") {
    auto lex = first_error("a.\nb :- c $ d.");
    CHECK(lex.line == 2);
    CHECK(lex.column == 8);
    auto syn = first_error("a :- .");
    CHECK(syn.line == 1);
    CHECK(syn.column == 6);
    CHECK(first_error("a").message.find("expected") != std::string::npos);
    CHECK(first_error("&foo{x} <= 1.").message == "unknown theory atom '&foo'");
    CHECK(first_error("%* open").message == "unterminated block comment");
}

TEST_CASE("recovery reports every bad rule") {
    auto p = parse_program("a :- . b. c :- not not d. e.");
    REQUIRE_FALSE(p.ok());
    CHECK(p.diagnostics.size() == 2);
}

TEST_CASE("integer in a theory variable position is rejected") {
    CHECK_FALSE(parse_program("&diff{1-y} <= 0.").ok());
    CHECK_FALSE(parse_program("&in{0..1} =: 3.").ok());
}

TEST_CASE("round trip on random well-formed programs") {
    Rng r(21);
    for (int n = 0; n < 2000; ++n) {
        Program p    = random_program(r, 6);
        auto    text = pretty_print(p);
        auto    back = parse_program(text);
        INFO(text);
        REQUIRE(back.ok());
        CHECK(*back.value == p);
        CHECK(pretty_print(*back.value) == text);
    }
}

TEST_CASE("totality on arbitrary text") {
    Rng               r(22);
    const std::string alphabet = "ab XY01_-*;.,:(){}=<>!&%not sum diff in\n";
    for (int n = 0; n < 5000; ++n) {
        std::string s;
        for (int k = r.range(0, 40); k > 0; --k) {
            s += alphabet[static_cast<std::size_t>(r.range(0, static_cast<int>(alphabet.size()) - 1))];
        }
        Parsed<Program> p;
        REQUIRE_NOTHROW(p = parse_program(s));
        CHECK(p.ok() != !p.diagnostics.empty());
        for (const auto& d : p.diagnostics) {
            CHECK(d.line >= 1);
            CHECK(d.column >= 1);
        }
    }
}

TEST_CASE("error position never precedes the last good token") {
    // prefixes of a valid program truncated inside the last rule
    const std::string good = "a :- b, not c. &sum{2*x;3*y} <= 7 :- d.";
    for (std::size_t cut = 16; cut < good.size(); ++cut) {
        std::string s = good.substr(0, cut);
        auto        p = parse_program(s);
        if (p.ok()) {
            continue;
        }
        auto d = p.diagnostics.front();
        CHECK(d.line == 1);
        CHECK(d.column >= 16);
    }
}

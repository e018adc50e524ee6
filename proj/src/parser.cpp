#include <htasp/parser.h>

#include <cctype>
#include <charconv>
#include <exception>

namespace htasp {

std::string to_string(const Diagnostic& d) {
    return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

namespace {

enum class Tok {
    Sym, Var, Int, Not, Sum, Diff, In,
    LParen, RParen, LBrace, RBrace, Comma, Semi, Dot, DotDot, If, Assign, Star, Minus,
    Le, Eq, Ne, Lt, Gt, Ge, End,
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Sym   : return "identifier";
        case Tok::Var   : return "variable";
        case Tok::Int   : return "integer";
        case Tok::Not   : return "'not'";
        case Tok::Sum   : return "'&sum'";
        case Tok::Diff  : return "'&diff'";
        case Tok::In    : return "'&in'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma : return "','";
        case Tok::Semi  : return "';'";
        case Tok::Dot   : return "'.'";
        case Tok::DotDot: return "'..'";
        case Tok::If    : return "':-'";
        case Tok::Assign: return "'=:'";
        case Tok::Star  : return "'*'";
        case Tok::Minus : return "'-'";
        case Tok::Le    : return "'<='";
        case Tok::Eq    : return "'='";
        case Tok::Ne    : return "'!='";
        case Tok::Lt    : return "'<'";
        case Tok::Gt    : return "'>'";
        case Tok::Ge    : return "'>='";
        case Tok::End   : return "end of input";
    }
    return "token";
}

struct Token {
    Tok         kind{Tok::End};
    std::string text;
    Int         value{0};
    int         line{1};
    int         column{1};
};

bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        for (;;) {
            skip_blank(diags);
            Token t;
            t.line   = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
                t.text = ident();
                t.kind = t.text == "not" ? Tok::Not : (std::isupper(static_cast<unsigned char>(c)) ? Tok::Var : Tok::Sym);
            }
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    advance();
                }
                t.kind    = Tok::Int;
                t.text    = std::string(src_.substr(start, pos_ - start));
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
                if (ec != std::errc{}) {
                    diags.push_back({t.line, t.column, "integer literal out of range"});
                    continue;
                }
            }
            else if (c == '&') {
                advance();
                std::string name = pos_ < src_.size() && std::islower(static_cast<unsigned char>(src_[pos_])) ? ident() : "";
                if (name == "sum") {
                    t.kind = Tok::Sum;
                }
                else if (name == "diff") {
                    t.kind = Tok::Diff;
                }
                else if (name == "in") {
                    t.kind = Tok::In;
                }
                else {
                    diags.push_back({t.line, t.column, "unknown theory atom '&" + name + "'"});
                    continue;
                }
            }
            else if (!punct(t, diags)) {
                continue;
            }
            out.push_back(std::move(t));
        }
    }

private:
    char peek(std::size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        }
        else {
            ++col_;
        }
        ++pos_;
    }

    std::string ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident(src_[pos_])) {
            advance();
        }
        return std::string(src_.substr(start, pos_ - start));
    }

    void skip_blank(std::vector<Diagnostic>& diags) {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            }
            else if (c == '%' && peek(1) == '*') {
                int line = line_, col = col_;
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '%')) {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    diags.push_back({line, col, "unterminated block comment"});
                    return;
                }
                advance();
                advance();
            }
            else if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            }
            else {
                return;
            }
        }
    }

    bool punct(Token& t, std::vector<Diagnostic>& diags) {
        char c  = peek();
        char c2 = peek(1);
        auto one = [&](Tok k) {
            t.kind = k;
            advance();
            return true;
        };
        auto two = [&](Tok k) {
            t.kind = k;
            advance();
            advance();
            return true;
        };
        switch (c) {
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case '{': return one(Tok::LBrace);
            case '}': return one(Tok::RBrace);
            case ',': return one(Tok::Comma);
            case ';': return one(Tok::Semi);
            case '*': return one(Tok::Star);
            case '-': return one(Tok::Minus);
            case '.': return c2 == '.' ? two(Tok::DotDot) : one(Tok::Dot);
            case ':':
                if (c2 == '-') {
                    return two(Tok::If);
                }
                break;
            case '=': return c2 == ':' ? two(Tok::Assign) : one(Tok::Eq);
            case '!':
                if (c2 == '=') {
                    return two(Tok::Ne);
                }
                break;
            case '<': return c2 == '=' ? two(Tok::Le) : one(Tok::Lt);
            case '>': return c2 == '=' ? two(Tok::Ge) : one(Tok::Gt);
            default: break;
        }
        std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + hex(c);
        diags.push_back({line_, col_, "unexpected character '" + shown + "'"});
        advance();
        return false;
    }

    static std::string hex(char c) {
        static const char* digits = "0123456789abcdef";
        auto               u      = static_cast<unsigned char>(c);
        return {digits[u >> 4], digits[u & 15]};
    }

    std::string_view src_;
    std::size_t      pos_{0};
    int              line_{1};
    int              col_{1};
};

struct SyntaxError {
    Diagnostic diag;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program(std::vector<Diagnostic>& diags, std::vector<std::pair<int, int>>& starts) {
        Program p;
        while (cur().kind != Tok::End) {
            const Token& start = cur();
            try {
                Rule r = rule();
                p.rules.push_back(std::move(r));
                starts.emplace_back(start.line, start.column);
            }
            catch (const SyntaxError& e) {
                diags.push_back(e.diag);
                recover();
            }
        }
        return p;
    }

    Term single_term() {
        if (cur().kind == Tok::End) {
            fail("empty input");
        }
        Term t = term();
        if (cur().kind != Tok::End) {
            fail("unexpected " + std::string(describe(cur().kind)) + " after term");
        }
        return t;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool         at(Tok k) const { return cur().kind == k; }

    [[noreturn]] void fail(std::string msg) const { throw SyntaxError{{cur().line, cur().column, std::move(msg)}}; }

    [[noreturn]] void unexpected(const char* expected) const {
        fail(std::string("unexpected ") + describe(cur().kind) + ", expected " + expected);
    }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End) {
            ++pos_;
        }
        return t;
    }

    bool accept(Tok k) {
        if (at(k)) {
            take();
            return true;
        }
        return false;
    }

    void expect(Tok k) {
        if (!accept(k)) {
            unexpected(describe(k));
        }
    }

    void recover() {
        while (!at(Tok::End) && !at(Tok::Dot)) {
            take();
        }
        accept(Tok::Dot);
    }

    Rule rule() {
        Rule r;
        if (accept(Tok::If)) {
            r.body = body();
        }
        else {
            r.head = element(false);
            if (accept(Tok::If)) {
                r.body = body();
            }
        }
        expect(Tok::Dot);
        return r;
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        do {
            out.push_back(literal());
        } while (accept(Tok::Comma));
        return out;
    }

    Literal literal() {
        Literal l;
        if (accept(Tok::Not)) {
            l.negated = true;
            if (at(Tok::Not)) {
                fail("double negation is not supported");
            }
        }
        if (at(Tok::In)) {
            fail("assignment in body");
        }
        l.elem = element(true);
        return l;
    }

    Element element(bool in_body) {
        switch (cur().kind) {
            case Tok::Sym : return atom();
            case Tok::Sum : return sum_atom();
            case Tok::Diff: return diff_atom();
            case Tok::In  : return in_assign();
            case Tok::Not :
                if (!in_body) {
                    fail("negation in rule head");
                }
                [[fallthrough]];
            default: unexpected(in_body ? "literal" : "rule head");
        }
    }

    Atom atom() {
        Atom a;
        a.predicate = take().text;
        if (accept(Tok::LParen)) {
            a.args = term_list();
        }
        return a;
    }

    std::vector<Term> term_list() {
        std::vector<Term> out;
        do {
            out.push_back(term());
        } while (accept(Tok::Comma));
        expect(Tok::RParen);
        return out;
    }

    Term term() {
        switch (cur().kind) {
            case Tok::Minus:
            case Tok::Int  : return Term::integer(signed_int());
            case Tok::Var  : return Term::variable(take().text);
            case Tok::Sym  : {
                std::string name = take().text;
                if (accept(Tok::LParen)) {
                    return Term::function(std::move(name), term_list());
                }
                return Term::symbol(std::move(name));
            }
            default: unexpected("term");
        }
    }

    Int signed_int() {
        bool negative = accept(Tok::Minus);
        if (!at(Tok::Int)) {
            unexpected("integer");
        }
        Int v = take().value;
        return negative ? -v : v;
    }

    Cmp comparison() {
        switch (cur().kind) {
            case Tok::Le: take(); return Cmp::Le;
            case Tok::Eq: take(); return Cmp::Eq;
            case Tok::Ne: take(); return Cmp::Ne;
            case Tok::Lt: take(); return Cmp::Lt;
            case Tok::Gt: take(); return Cmp::Gt;
            case Tok::Ge: take(); return Cmp::Ge;
            default     : unexpected("comparison operator");
        }
    }

    LinearTerm linear_element() {
        LinearTerm t;
        if (accept(Tok::LParen)) {
            t.coeff = signed_int();
            expect(Tok::RParen);
            expect(Tok::Star);
            t.var = term();
        }
        else if (at(Tok::Minus) || at(Tok::Int)) {
            const Token& start = cur();
            Int          k     = signed_int();
            if (!accept(Tok::Star)) {
                throw SyntaxError{{start.line, start.column, "integer constant in variable position of &sum"}};
            }
            t.coeff = k;
            t.var   = term();
        }
        else {
            t.var = term();
        }
        return t;
    }

    LinearConstraint sum_atom() {
        take();
        expect(Tok::LBrace);
        LinearConstraint c;
        do {
            c.terms.push_back(linear_element());
        } while (accept(Tok::Semi));
        expect(Tok::RBrace);
        c.cmp = comparison();
        c.rhs = signed_int();
        return c;
    }

    DiffConstraint diff_atom() {
        take();
        expect(Tok::LBrace);
        DiffConstraint d;
        d.lhs = term();
        expect(Tok::Minus);
        d.rhs = term();
        expect(Tok::RBrace);
        if (!at(Tok::Le)) {
            if (at(Tok::Eq) || at(Tok::Ne) || at(Tok::Lt) || at(Tok::Gt) || at(Tok::Ge)) {
                fail("&diff only supports '<='");
            }
            unexpected("'<='");
        }
        take();
        d.bound = signed_int();
        return d;
    }

    Assignment in_assign() {
        take();
        expect(Tok::LBrace);
        Assignment a;
        a.lo = term();
        expect(Tok::DotDot);
        a.hi = term();
        expect(Tok::RBrace);
        expect(Tok::Assign);
        a.target = term();
        return a;
    }

    std::vector<Token> toks_;
    std::size_t        pos_{0};
};

} // namespace

Parsed<Program> parse_program(std::string_view src) {
    Parsed<Program> res;
    try {
        auto toks = Lexer(src).run(res.diagnostics);
        if (!res.diagnostics.empty()) {
            return res;
        }
        std::vector<std::pair<int, int>> starts;
        Program                          p = Parser(std::move(toks)).program(res.diagnostics, starts);
        for (const auto& d : check_wellformed(p)) {
            auto [line, col] = starts[d.rule];
            res.diagnostics.push_back({line, col, d.reason});
        }
        if (res.diagnostics.empty()) {
            res.value = std::move(p);
        }
    }
    catch (const std::exception& e) {
        res.diagnostics.push_back({1, 1, std::string("internal error: ") + e.what()});
    }
    return res;
}

Parsed<Term> parse_term(std::string_view src) {
    Parsed<Term> res;
    try {
        auto toks = Lexer(src).run(res.diagnostics);
        if (!res.diagnostics.empty()) {
            return res;
        }
        res.value = Parser(std::move(toks)).single_term();
    }
    catch (const SyntaxError& e) {
        res.diagnostics.push_back(e.diag);
    }
    catch (const std::exception& e) {
        res.diagnostics.push_back({1, 1, std::string("internal error: ") + e.what()});
    }
    return res;
}

} // namespace htasp

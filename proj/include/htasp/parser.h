#pragma once

#include <htasp/ast.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htasp {

//! A located parse problem; line and column are 1-based.
struct Diagnostic {
    int         line{1};
    int         column{1};
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

[[nodiscard]] std::string to_string(const Diagnostic& d);

template <class T>
struct Parsed {
    std::optional<T>        value;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
};

//! Parses program text. Never throws; on failure `value` is empty and at least one diagnostic is set.
[[nodiscard]] Parsed<Program> parse_program(std::string_view src);
[[nodiscard]] Parsed<Term>    parse_term(std::string_view src);

} // namespace htasp

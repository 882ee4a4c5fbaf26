#pragma once

#include "modspec/refinement.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace modspec {

/// Error at a position of a specification document (1-based line and column).
class FormatError : public Error {
public:
    FormatError(std::size_t line, std::size_t column, const std::string& message);
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SyntaxError : public FormatError {
public:
    SyntaxError(std::size_t line, std::size_t column, std::string found,
                std::vector<std::string> expected);
    [[nodiscard]] const std::string& found() const { return found_; }
    /// Sorted descriptions of the tokens that would have been accepted.
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    std::string found_;
    std::vector<std::string> expected_;
};

class UnknownState : public FormatError {
public:
    using FormatError::FormatError;
};

class UnknownAction : public FormatError {
public:
    using FormatError::FormatError;
};

enum class DocKind { lts, mts, dmts, naa, hml };

std::string_view kind_name(DocKind k);

/// A parsed document. `mts` documents hold a Dmts that passed mts_check.
struct Document {
    DocKind kind;
    Spec spec;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Grammar:
///   doc   := kind "{" "alphabet" ids ";" "init" ids ";" body "}"
///   dmts  := { "may" id id id ";" | "must" id "{" pairs "}" ";" | "state" id ";" }
///   naa   := { "state" id "{" [ "{" pairs "}" { "," "{" pairs "}" } ] "}" ";" }
///   hml   := { id "=" formula ";" }
///   pair  := "(" action "," state ")"
/// `lts` and `mts` documents use the dmts body. An lts document without
/// must lines reads every may line as a transition.
/// Identifiers are bare ([A-Za-z0-9_'.:#@^~+-]+, not a keyword) or
/// double-quoted with backslash escapes. `//` starts a line comment.
Document parse_document(std::string_view text);

/// Canonical text; parse_document(serialize(d)) == d.
std::string serialize(const Document& d);

/// Document of the natural kind for a value (a Dmts is written as dmts).
Document as_document(Spec s);

} // namespace modspec

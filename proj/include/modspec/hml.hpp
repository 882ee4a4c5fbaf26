#pragma once

#include "modspec/core.hpp"

#include <memory>
#include <string>
#include <vector>

namespace modspec {

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable '" + name + "'")
    {
    }
};

// HML formulae over named variables and named actions. Nodes are immutable
// and shared.
namespace hml {

enum class Kind { tt, ff, var, conj, disj, diamond, box };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    std::string name; // variable or action name
    Formula left;     // conj/disj left operand, modality body
    Formula right;    // conj/disj right operand
};

Formula tt();
Formula ff();
Formula var(std::string name);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula diamond(std::string action, Formula body);
Formula box(std::string action, Formula body);

/// Left-nested n-ary forms; empty conjunction is tt, empty disjunction is ff.
Formula conj_all(const std::vector<Formula>& parts);
Formula disj_all(const std::vector<Formula>& parts);

/// Structural three-way comparison.
int compare(const Formula& a, const Formula& b);
bool equal(const Formula& a, const Formula& b);

struct Less {
    bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

/// Concrete syntax: modalities bind tightest, then `&`, then `|`.
std::string to_string(const Formula& f);

std::size_t depth(const Formula& f);

} // namespace hml

/// An initialised declaration (X, X0, Delta) under greatest-fixed-point semantics.
class HmlDecl {
public:
    /// `vars` is sorted on construction; `decl` is given in the same order as `vars`.
    HmlDecl(Alphabet alphabet, std::vector<std::string> vars, std::vector<std::string> initials,
            std::vector<hml::Formula> decl);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return vars_.size(); }
    [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
    [[nodiscard]] const std::string& var(std::size_t i) const { return vars_.at(i); }
    [[nodiscard]] const std::vector<std::size_t>& initials() const { return initials_; }
    [[nodiscard]] const hml::Formula& body(std::size_t i) const { return decl_.at(i); }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    [[nodiscard]] const hml::Formula& body(std::string_view name) const;

    friend bool operator==(const HmlDecl& a, const HmlDecl& b);

private:
    Alphabet alphabet_;
    std::vector<std::string> vars_;
    std::vector<std::size_t> initials_;
    std::vector<hml::Formula> decl_;
};

} // namespace modspec

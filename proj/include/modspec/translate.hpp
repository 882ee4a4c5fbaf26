#pragma once

#include "modspec/core.hpp"
#include "modspec/hml.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace modspec {

class NotNormalForm : public Error {
public:
    using Error::Error;
};

/// Acceptance-automaton view of a DMTS: Tran(s) holds every set of
/// may-moves that meets each must-set of s.
Naa db(const Dmts& d);

/// DMTS whose states are the admissible sets of the automaton.
Dmts bd(const Naa& n);

/// One variable per automaton state.
HmlDecl bh(const Naa& n);

/// One disjunct of a normal-form body:
///   AND_j <a_j> x_j  AND  AND_{a in alphabet} [a] y_a
struct NormalDisjunct {
    std::vector<std::pair<ActionId, std::size_t>> diamonds; ///< (a_j, x_j), sorted
    std::vector<std::size_t> boxes;                         ///< y_a, indexed by action

    friend bool operator==(const NormalDisjunct&, const NormalDisjunct&) = default;
    friend auto operator<=>(const NormalDisjunct&, const NormalDisjunct&) = default;
};

/// Either tt or a (possibly empty) disjunction of NormalDisjunct.
struct NormalBody {
    bool tt = false;
    std::vector<NormalDisjunct> disjuncts;

    [[nodiscard]] bool is_ff() const { return !tt && disjuncts.empty(); }
    friend bool operator==(const NormalBody&, const NormalBody&) = default;
};

/// A declaration in two-layer normal form. Every diamond target x_j implies
/// the box target y_a of the same disjunct and action.
class NormalFormDecl {
public:
    NormalFormDecl(Alphabet alphabet, std::vector<std::string> vars,
                   std::vector<std::size_t> initials, std::vector<NormalBody> bodies);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return vars_.size(); }
    [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
    [[nodiscard]] const std::vector<std::size_t>& initials() const { return initials_; }
    [[nodiscard]] const NormalBody& body(std::size_t x) const { return bodies_.at(x); }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;

    /// Renders as an ordinary declaration. References to variables whose
    /// body is tt or ff print as the constant.
    [[nodiscard]] HmlDecl to_decl() const;

private:
    Alphabet alphabet_;
    std::vector<std::string> vars_;
    std::vector<std::size_t> initials_;
    std::vector<NormalBody> bodies_;
};

/// Brings a declaration into normal form, introducing fresh variables for
/// the conjunctions that occur under modalities. Throws SizeGuard when more
/// than `max_vars` variables would be needed.
NormalFormDecl normalize(const HmlDecl& d, std::size_t max_vars = 10000);

/// Reads a declaration that is already in normal form. The diamond/box side
/// condition must be syntactically evident (box target tt or equal to the
/// diamond target); NotNormalForm otherwise.
NormalFormDecl read_normal_form(const HmlDecl& d);

/// DMTS with one state per (variable, disjunct) plus "top" and "bot".
Dmts hd(const NormalFormDecl& d);
/// hd(read_normal_form(d)).
Dmts hd(const HmlDecl& d);

} // namespace modspec

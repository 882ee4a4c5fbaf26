#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modspec {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

class AlphabetMismatch : public Error {
public:
    AlphabetMismatch() : Error("alphabets of the operands differ") {}
};

class NotAnMts : public Error {
public:
    using Error::Error;
};

class SizeGuard : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Basic vocabulary

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/// An (action, target) pair, the element type of must-sets and admissible sets.
struct Move {
    ActionId action = 0;
    StateId target = 0;

    friend auto operator<=>(const Move&, const Move&) = default;
};

/// Sorted, duplicate-free set of moves.
using MoveSet = std::vector<Move>;
/// Sorted, duplicate-free family of move sets.
using Family = std::vector<MoveSet>;

void normalize(MoveSet& moves);
void normalize(Family& family);
bool contains(const MoveSet& moves, Move m);

/// Finite, lexicographically ordered set of action names.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] const std::string& name(ActionId a) const { return symbols_.at(a); }
    [[nodiscard]] const std::vector<std::string>& symbols() const { return symbols_; }
    [[nodiscard]] std::optional<ActionId> find(std::string_view symbol) const;
    [[nodiscard]] ActionId at(std::string_view symbol) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

void require_same_alphabet(const Alphabet& a, const Alphabet& b);

// ---------------------------------------------------------------------------
// Labelled transition systems

class Lts {
public:
    /// `states` must be sorted and unique; `succ` is indexed by state.
    Lts(Alphabet alphabet, std::vector<std::string> states, StateId initial,
        std::vector<MoveSet> succ);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const std::string& name(StateId s) const { return states_.at(s); }
    [[nodiscard]] StateId initial() const { return initial_; }
    [[nodiscard]] const MoveSet& succ(StateId s) const { return succ_.at(s); }
    [[nodiscard]] std::size_t transition_count() const;

    friend bool operator==(const Lts&, const Lts&) = default;

private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    StateId initial_;
    std::vector<MoveSet> succ_;
};

// ---------------------------------------------------------------------------
// Disjunctive modal transition systems

enum class MustSupport {
    strict, ///< reject a must-move without a matching may-transition
    repair, ///< add the missing may-transitions
};

class Dmts {
public:
    Dmts(Alphabet alphabet, std::vector<std::string> states, std::vector<StateId> initials,
         std::vector<MoveSet> may, std::vector<Family> must,
         MustSupport policy = MustSupport::strict);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const std::string& name(StateId s) const { return states_.at(s); }
    [[nodiscard]] const std::vector<StateId>& initials() const { return initials_; }
    [[nodiscard]] const MoveSet& may(StateId s) const { return may_.at(s); }
    [[nodiscard]] const Family& must(StateId s) const { return must_.at(s); }
    [[nodiscard]] std::optional<StateId> find(std::string_view name) const;

    friend bool operator==(const Dmts&, const Dmts&) = default;

private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<StateId> initials_;
    std::vector<MoveSet> may_;
    std::vector<Family> must_;
};

/// A Dmts certified to be an MTS: one initial state and singleton must-sets.
class MtsView {
public:
    [[nodiscard]] const Dmts& dmts() const { return dmts_; }
    [[nodiscard]] StateId initial() const { return dmts_.initials().front(); }

private:
    friend MtsView mts_check(const Dmts& d);
    explicit MtsView(Dmts d) : dmts_(std::move(d)) {}
    Dmts dmts_;
};

/// Throws NotAnMts naming the offending state or must-set.
MtsView mts_check(const Dmts& d);

// ---------------------------------------------------------------------------
// Nondeterministic acceptance automata

class Naa {
public:
    Naa(Alphabet alphabet, std::vector<std::string> states, std::vector<StateId> initials,
        std::vector<Family> tran);

    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const std::string& name(StateId s) const { return states_.at(s); }
    [[nodiscard]] const std::vector<StateId>& initials() const { return initials_; }
    [[nodiscard]] const Family& tran(StateId s) const { return tran_.at(s); }
    [[nodiscard]] std::optional<StateId> find(std::string_view name) const;
    /// Initial state is unique and every Tran(s) is a singleton.
    [[nodiscard]] bool is_implementation() const;

    friend bool operator==(const Naa&, const Naa&) = default;

private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<StateId> initials_;
    std::vector<Family> tran_;
};

// ---------------------------------------------------------------------------
// Name-based builders. They accept states in any order and produce the
// canonical (name-sorted) index layout.

struct NamedMove {
    std::string action;
    std::string target;
    friend auto operator<=>(const NamedMove&, const NamedMove&) = default;
};
using NamedMoveSet = std::set<NamedMove>;

class LtsBuilder {
public:
    explicit LtsBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    LtsBuilder& state(const std::string& s);
    LtsBuilder& initial(const std::string& s);
    LtsBuilder& trans(const std::string& s, const std::string& a, const std::string& t);
    [[nodiscard]] Lts build() const;

private:
    Alphabet alphabet_;
    std::set<std::string> states_;
    std::optional<std::string> initial_;
    std::set<std::tuple<std::string, std::string, std::string>> trans_;
};

class DmtsBuilder {
public:
    explicit DmtsBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    DmtsBuilder& state(const std::string& s);
    DmtsBuilder& initial(const std::string& s);
    DmtsBuilder& may(const std::string& s, const std::string& a, const std::string& t);
    DmtsBuilder& must(const std::string& s, NamedMoveSet n);
    [[nodiscard]] Dmts build(MustSupport policy = MustSupport::strict) const;

private:
    Alphabet alphabet_;
    std::set<std::string> states_;
    std::set<std::string> initials_;
    std::set<std::tuple<std::string, std::string, std::string>> may_;
    std::set<std::pair<std::string, NamedMoveSet>> must_;
};

class NaaBuilder {
public:
    explicit NaaBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    NaaBuilder& state(const std::string& s);
    NaaBuilder& initial(const std::string& s);
    /// Adds one admissible set to Tran(s) (declaring s as a state).
    NaaBuilder& admit(const std::string& s, NamedMoveSet m);
    [[nodiscard]] Naa build() const;

private:
    Alphabet alphabet_;
    std::set<std::string> states_;
    std::set<std::string> initials_;
    std::map<std::string, std::set<NamedMoveSet>> tran_;
};

// ---------------------------------------------------------------------------
// Embeddings and distinguished specifications

Dmts lts_as_dmts(const Lts& l);
Naa lts_as_naa(const Lts& l);
/// Reads an implementation-shaped DMTS (single initial, must = singleton mays) back as an Lts.
std::optional<Lts> dmts_as_lts(const Dmts& d);
std::optional<Lts> naa_as_lts(const Naa& n);

Naa bottom_naa(const Alphabet& alphabet);
Naa top_naa(const Alphabet& alphabet);
Lts unit_lts(const Alphabet& alphabet);

/// Printable "(a,t)" / "{(a,t),...}" forms used for generated state names.
std::string move_string(const Alphabet& alphabet, const std::vector<std::string>& states, Move m);
std::string move_set_string(const Alphabet& alphabet, const std::vector<std::string>& states,
                            const MoveSet& m);

/// Identifiers print bare when they match [A-Za-z0-9_'.:#@^~+-]+ and are not
/// keywords; anything else is double-quoted with backslash escapes.
bool is_bare_identifier(std::string_view s);
std::string quote_id(std::string_view s);

/// Appends primes to `base` until it is not in `taken`.
std::string fresh_name(std::string base, const std::set<std::string>& taken);

} // namespace modspec

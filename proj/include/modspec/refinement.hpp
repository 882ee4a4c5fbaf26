#pragma once

#include "modspec/core.hpp"
#include "modspec/hml.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace modspec {

/// Any of the specification formalisms.
using Spec = std::variant<Lts, Dmts, Naa, HmlDecl>;

const Alphabet& alphabet_of(const Spec& s);

/// A set of (left state, right state) pairs witnessing modal refinement.
struct RefinementRelation {
    std::vector<std::pair<StateId, StateId>> pairs; // sorted
    bool initialised = false;
};

/// One pair dropped by the fixpoint iteration, with the rule it violated.
struct Removal {
    StateId left = 0;
    StateId right = 0;
    std::string reason;
};

struct NotRefined {
    /// First left initial state with no related right initial state.
    StateId left_initial = 0;
    /// Removals in the order they happened, up to the last one needed to
    /// disconnect `left_initial` from every right initial state.
    std::vector<Removal> trace;
};

class RefinementResult {
public:
    explicit RefinementResult(RefinementRelation r) : value_(std::move(r)) {}
    explicit RefinementResult(NotRefined n) : value_(std::move(n)) {}

    [[nodiscard]] bool refined() const { return value_.index() == 0; }
    explicit operator bool() const { return refined(); }
    [[nodiscard]] const RefinementRelation& relation() const { return std::get<0>(value_); }
    [[nodiscard]] const NotRefined& failure() const { return std::get<1>(value_); }

private:
    std::variant<RefinementRelation, NotRefined> value_;
};

/// Greatest modal refinement relation between two DMTS.
RefinementResult refine_dmts(const Dmts& s1, const Dmts& s2);
/// Greatest modal refinement relation between two NAA.
RefinementResult refine_naa(const Naa& s1, const Naa& s2);

/// Decision only, without building the relation or a trace.
bool refines(const Dmts& s1, const Dmts& s2);
bool refines(const Naa& s1, const Naa& s2);

/// Replays the per-pair refinement conditions on every pair of `r` and the
/// initialisation condition when `r.initialised` is set.
bool check_relation(const Dmts& s1, const Dmts& s2, const RefinementRelation& r);
bool check_relation(const Naa& s1, const Naa& s2, const RefinementRelation& r);

bool mreq(const Dmts& a, const Dmts& b);
bool mreq(const Naa& a, const Naa& b);

struct HmlResult {
    bool holds = false;
    /// assignment[x][s]: LTS state s is in the solution of variable x.
    std::vector<std::vector<bool>> assignment;
};

/// Model checks an LTS against a declaration by downward fixpoint iteration.
HmlResult hml_check(const Lts& i, const HmlDecl& d);

bool implements(const Lts& i, const Dmts& s);
bool implements(const Lts& i, const Naa& s);
bool implements(const Lts& i, const HmlDecl& s);
bool implements(const Lts& i, const Spec& s);

/// Human-readable rendering of a failed refinement.
std::string describe(const NotRefined& n, const std::vector<std::string>& left_states,
                     const std::vector<std::string>& right_states);

} // namespace modspec

#pragma once

#include "modspec/core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace modspec {

struct QuotientOptions {
    /// Largest number of candidate moves of one quotient state.
    std::size_t max_postran = 16;
    /// Largest number of quotient states built before giving up.
    std::size_t max_states = 50000;
    /// Remove inconsistent and unreachable states from the result.
    bool prune = true;
};

/// "{s1/t1,...,sn/tn}" with pairs in order; "{}" is the universal state.
std::string quotient_state_name(const std::vector<std::pair<std::string, std::string>>& pairs);

/// Makes the admissible sets of every state pairwise disjoint by sending
/// repeated moves to fresh copies ("u#1", "u#2", ...) of their targets.
Naa disjointify(const Naa& n);

/// The most general X with X || t refining s. One initial state per way of
/// assigning an initial state of s to every initial state of t.
Naa quotient_naa(const Naa& s, const Naa& t, const QuotientOptions& options = {});

/// Quotient of two MTS as a DMTS with a single initial state.
Dmts quotient_mts(const MtsView& s, const MtsView& t, const QuotientOptions& options = {});

} // namespace modspec

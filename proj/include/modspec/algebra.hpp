#pragma once

#include "modspec/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modspec {

/// Name of the product state (s1, s2). Components that are not bare
/// identifiers are quoted, so distinct pairs get distinct names.
std::string pair_name(std::string_view left, std::string_view right);

/// Disjoint union. When the operands share a state name, every state is
/// renamed with an "L:" or "R:" prefix.
Naa or_naa(const Naa& s1, const Naa& s2);
Dmts or_dmts(const Dmts& d1, const Dmts& d2);

/// Adds a fresh initial state whose admissible sets are those of all
/// initial states. The input refines the result and both have the same
/// implementations. Without initial states the result is bottom_naa.
Naa single_initial(const Naa& n);

/// Product conjunctions over all pairs of states.
Dmts and_dmts(const Dmts& d1, const Dmts& d2);
/// Throws SizeGuard when a product state would get more than `max_sets`
/// admissible sets.
Naa and_naa(const Naa& n1, const Naa& n2, std::size_t max_sets = std::size_t{1} << 16);

/// Synchronous parallel composition: both sides move on the same action.
Naa compose_naa(const Naa& n1, const Naa& n2);

/// Restriction to the states reachable from the initial states.
Naa reach(const Naa& n);
Dmts reach(const Dmts& d);

/// States from which every admissible choice is eventually forced into a
/// state without admissible sets (NAA) or with an empty must-set (DMTS).
std::vector<StateId> inconsistent_states(const Naa& n);
std::vector<StateId> inconsistent_states(const Dmts& d);

Naa prune_naa(const Naa& n);
Dmts prune_dmts(const Dmts& d);

/// Every reachable state has an admissible set, and some state is initial.
bool locally_consistent(const Naa& n);

/// An implementation of `n` built by following the least admissible set
/// of each state from the first initial state. Empty when `n` has no
/// initial state or reaches a state without admissible sets.
std::optional<Lts> witness(const Naa& n);

} // namespace modspec

#pragma once

#include "modspec/refinement.hpp"

#include <string>

namespace modspec {

/// Graphviz rendering. May-transitions are dashed, must-transitions solid;
/// a must-set with several moves branches from a point-shaped junction
/// node. Initial states get an incoming edge from an invisible point.
/// Admissible sets of an automaton are drawn as junction nodes as well.
/// A declaration becomes one box per variable with its equation, linked
/// to the variables it mentions.
std::string export_dot(const Spec& s);

} // namespace modspec

#pragma once

// Flattened, hash-consed form of the bodies of a declaration. Nodes are
// stored children-first, so one forward pass evaluates every subformula.

#include "modspec/hml.hpp"

#include <map>
#include <vector>

namespace modspec::detail {

struct CompiledNode {
    hml::Kind kind;
    std::uint32_t label = 0; // action or variable index
    int left = -1;
    int right = -1;
};

struct CompiledDecl {
    std::vector<CompiledNode> nodes;
    std::vector<int> roots; // one per variable
};

inline CompiledDecl compile(const HmlDecl& d)
{
    CompiledDecl out;
    std::map<hml::Formula, int, hml::Less> memo;
    auto add = [&](auto&& self, const hml::Formula& f) -> int {
        auto it = memo.find(f);
        if (it != memo.end())
            return it->second;
        CompiledNode n{f->kind};
        switch (f->kind) {
        case hml::Kind::tt:
        case hml::Kind::ff:
            break;
        case hml::Kind::var:
            n.label = static_cast<std::uint32_t>(*d.find(f->name));
            break;
        case hml::Kind::conj:
        case hml::Kind::disj:
            n.left = self(self, f->left);
            n.right = self(self, f->right);
            break;
        case hml::Kind::diamond:
        case hml::Kind::box:
            n.label = d.alphabet().at(f->name);
            n.left = self(self, f->left);
            break;
        }
        out.nodes.push_back(n);
        int id = static_cast<int>(out.nodes.size() - 1);
        memo.emplace(f, id);
        return id;
    };
    for (std::size_t x = 0; x < d.size(); ++x)
        out.roots.push_back(add(add, d.body(x)));
    return out;
}

} // namespace modspec::detail

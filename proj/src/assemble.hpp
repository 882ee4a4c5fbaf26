#pragma once

// Assembly of systems from states in arbitrary order: states are sorted
// by name and every index is remapped.

#include "modspec/core.hpp"

#include <algorithm>
#include <numeric>

namespace modspec::detail {

/// Sorts states by name and remaps every index accordingly.
struct Relabel {
    std::vector<std::string> names;
    std::vector<StateId> to_new;

    explicit Relabel(std::vector<std::string> unsorted)
    {
        std::vector<StateId> order(unsorted.size());
        std::iota(order.begin(), order.end(), StateId{0});
        std::sort(order.begin(), order.end(),
                  [&](StateId x, StateId y) { return unsorted[x] < unsorted[y]; });
        to_new.resize(unsorted.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            to_new[order[i]] = static_cast<StateId>(i);
            names.push_back(std::move(unsorted[order[i]]));
        }
    }

    [[nodiscard]] MoveSet moves(const MoveSet& m) const
    {
        MoveSet out;
        for (auto mv : m)
            out.push_back({mv.action, to_new[mv.target]});
        normalize(out);
        return out;
    }
    [[nodiscard]] Family family(const Family& f) const
    {
        Family out;
        for (const auto& m : f)
            out.push_back(moves(m));
        normalize(out);
        return out;
    }
    [[nodiscard]] std::vector<StateId> states(const std::vector<StateId>& ss) const
    {
        std::vector<StateId> out;
        for (auto s : ss)
            out.push_back(to_new[s]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    template <class T>
    [[nodiscard]] std::vector<T> per_state(const std::vector<T>& v) const
    {
        std::vector<T> out(v.size());
        for (std::size_t s = 0; s < v.size(); ++s)
            out[to_new[s]] = v[s];
        return out;
    }
};

inline Naa make_naa(const Alphabet& sigma, std::vector<std::string> names,
             const std::vector<StateId>& initials, const std::vector<Family>& tran)
{
    Relabel r(std::move(names));
    std::vector<Family> t;
    for (const auto& f : tran)
        t.push_back(r.family(f));
    return Naa(sigma, r.names, r.states(initials), r.per_state(t));
}

inline Dmts make_dmts(const Alphabet& sigma, std::vector<std::string> names,
               const std::vector<StateId>& initials, const std::vector<MoveSet>& may,
               const std::vector<Family>& must)
{
    Relabel r(std::move(names));
    std::vector<MoveSet> m;
    std::vector<Family> n;
    for (const auto& x : may)
        m.push_back(r.moves(x));
    for (const auto& x : must)
        n.push_back(r.family(x));
    return Dmts(sigma, r.names, r.states(initials), r.per_state(m), r.per_state(n));
}

} // namespace modspec::detail

#include "modspec/algebra.hpp"

#include "assemble.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace modspec {

namespace {

using detail::make_dmts;
using detail::make_naa;

MoveSet shift(const MoveSet& m, StateId offset)
{
    MoveSet out;
    for (auto mv : m)
        out.push_back({mv.action, static_cast<StateId>(mv.target + offset)});
    return out;
}

Family shift(const Family& f, StateId offset)
{
    Family out;
    for (const auto& m : f)
        out.push_back(shift(m, offset));
    return out;
}

std::pair<std::vector<std::string>, std::vector<std::string>>
union_names(const std::vector<std::string>& l, const std::vector<std::string>& r)
{
    std::vector<std::string> common;
    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(common));
    if (common.empty())
        return {l, r};
    auto prefixed = [](const std::vector<std::string>& v, const std::string& p) {
        std::vector<std::string> out;
        for (const auto& s : v)
            out.push_back(p + s);
        return out;
    };
    return {prefixed(l, "L:"), prefixed(r, "R:")};
}

std::vector<std::string> product_names(const std::vector<std::string>& l,
                                       const std::vector<std::string>& r)
{
    std::vector<std::string> out;
    for (const auto& a : l)
        for (const auto& b : r)
            out.push_back(pair_name(a, b));
    return out;
}

std::vector<StateId> product_initials(const std::vector<StateId>& l, const std::vector<StateId>& r,
                                      std::size_t right_size)
{
    std::vector<StateId> out;
    for (auto a : l)
        for (auto b : r)
            out.push_back(static_cast<StateId>(a * right_size + b));
    return out;
}

std::vector<StateId> targets(const MoveSet& m, ActionId a)
{
    std::vector<StateId> out;
    for (auto mv : m)
        if (mv.action == a)
            out.push_back(mv.target);
    return out;
}

/// Restriction to the states in `keep`; sets or must-moves leading outside
/// are dropped (NAA) or cut (DMTS).
Naa restrict(const Naa& n, const std::vector<bool>& keep)
{
    std::vector<StateId> index(n.size(), 0);
    std::vector<std::string> names;
    for (StateId s = 0; s < n.size(); ++s)
        if (keep[s]) {
            index[s] = static_cast<StateId>(names.size());
            names.push_back(n.name(s));
        }
    std::vector<StateId> initials;
    for (auto s : n.initials())
        if (keep[s])
            initials.push_back(index[s]);
    std::vector<Family> tran;
    for (StateId s = 0; s < n.size(); ++s) {
        if (!keep[s])
            continue;
        Family f;
        for (const auto& m : n.tran(s)) {
            if (std::any_of(m.begin(), m.end(), [&](Move mv) { return !keep[mv.target]; }))
                continue;
            f.push_back(MoveSet{});
            for (auto mv : m)
                f.back().push_back({mv.action, index[mv.target]});
        }
        tran.push_back(std::move(f));
    }
    return Naa(n.alphabet(), std::move(names), std::move(initials), std::move(tran));
}

Dmts restrict(const Dmts& d, const std::vector<bool>& keep)
{
    std::vector<StateId> index(d.size(), 0);
    std::vector<std::string> names;
    for (StateId s = 0; s < d.size(); ++s)
        if (keep[s]) {
            index[s] = static_cast<StateId>(names.size());
            names.push_back(d.name(s));
        }
    std::vector<StateId> initials;
    for (auto s : d.initials())
        if (keep[s])
            initials.push_back(index[s]);
    auto cut = [&](const MoveSet& m) {
        MoveSet out;
        for (auto mv : m)
            if (keep[mv.target])
                out.push_back({mv.action, index[mv.target]});
        return out;
    };
    std::vector<MoveSet> may;
    std::vector<Family> must;
    for (StateId s = 0; s < d.size(); ++s) {
        if (!keep[s])
            continue;
        may.push_back(cut(d.may(s)));
        Family f;
        for (const auto& n : d.must(s))
            f.push_back(cut(n));
        normalize(f);
        must.push_back(std::move(f));
    }
    return Dmts(d.alphabet(), std::move(names), std::move(initials), std::move(may), std::move(must));
}

template <class Succ>
std::vector<bool> reachable(std::size_t size, const std::vector<StateId>& initials, const Succ& succ)
{
    std::vector<bool> seen(size, false);
    std::deque<StateId> queue;
    for (auto s : initials)
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        succ(s, [&](StateId t) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        });
    }
    return seen;
}

/// Least fixpoint of `pred` above `seed`.
template <class Pred>
std::vector<StateId> backward_closure(std::size_t size, std::vector<bool> in, const Pred& pred)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < size; ++s)
            if (!in[s] && pred(s, in)) {
                in[s] = true;
                changed = true;
            }
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < size; ++s)
        if (in[s])
            out.push_back(s);
    return out;
}

std::vector<bool> complement(std::size_t size, const std::vector<StateId>& removed)
{
    std::vector<bool> keep(size, true);
    for (auto s : removed)
        keep[s] = false;
    return keep;
}

/// All subsets of left x right whose projections are the whole of left and right.
std::vector<std::vector<std::pair<StateId, StateId>>> covers(const std::vector<StateId>& left,
                                                             const std::vector<StateId>& right)
{
    const std::size_t cells = left.size() * right.size();
    if (cells > 20)
        throw SizeGuard("conjunction needs to cover " + std::to_string(cells)
                        + " target pairs for one action");
    std::vector<std::vector<std::pair<StateId, StateId>>> out;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << cells); ++mask) {
        std::vector<bool> hit_l(left.size()), hit_r(right.size());
        std::vector<std::pair<StateId, StateId>> pairs;
        for (std::size_t c = 0; c < cells; ++c)
            if (mask >> c & 1) {
                hit_l[c / right.size()] = true;
                hit_r[c % right.size()] = true;
                pairs.push_back({left[c / right.size()], right[c % right.size()]});
            }
        if (std::all_of(hit_l.begin(), hit_l.end(), [](bool b) { return b; })
            && std::all_of(hit_r.begin(), hit_r.end(), [](bool b) { return b; }))
            out.push_back(std::move(pairs));
    }
    return out;
}

} // namespace

std::string pair_name(std::string_view left, std::string_view right)
{
    return "(" + quote_id(left) + "," + quote_id(right) + ")";
}

Naa or_naa(const Naa& s1, const Naa& s2)
{
    require_same_alphabet(s1.alphabet(), s2.alphabet());
    auto [l, r] = union_names(s1.states(), s2.states());
    const auto off = static_cast<StateId>(s1.size());
    std::vector<std::string> names = l;
    names.insert(names.end(), r.begin(), r.end());
    std::vector<StateId> initials = s1.initials();
    for (auto s : s2.initials())
        initials.push_back(s + off);
    std::vector<Family> tran;
    for (StateId s = 0; s < s1.size(); ++s)
        tran.push_back(s1.tran(s));
    for (StateId s = 0; s < s2.size(); ++s)
        tran.push_back(shift(s2.tran(s), off));
    return make_naa(s1.alphabet(), std::move(names), initials, tran);
}

Dmts or_dmts(const Dmts& d1, const Dmts& d2)
{
    require_same_alphabet(d1.alphabet(), d2.alphabet());
    auto [l, r] = union_names(d1.states(), d2.states());
    const auto off = static_cast<StateId>(d1.size());
    std::vector<std::string> names = l;
    names.insert(names.end(), r.begin(), r.end());
    std::vector<StateId> initials = d1.initials();
    for (auto s : d2.initials())
        initials.push_back(s + off);
    std::vector<MoveSet> may;
    std::vector<Family> must;
    for (StateId s = 0; s < d1.size(); ++s) {
        may.push_back(d1.may(s));
        must.push_back(d1.must(s));
    }
    for (StateId s = 0; s < d2.size(); ++s) {
        may.push_back(shift(d2.may(s), off));
        must.push_back(shift(d2.must(s), off));
    }
    return make_dmts(d1.alphabet(), std::move(names), initials, may, must);
}

Naa single_initial(const Naa& n)
{
    if (n.initials().empty())
        return bottom_naa(n.alphabet());
    std::set<std::string> taken(n.states().begin(), n.states().end());
    const auto fresh = fresh_name("init", taken);
    std::vector<std::string> names = n.states();
    names.push_back(fresh);
    std::vector<Family> tran;
    Family merged;
    for (StateId s = 0; s < n.size(); ++s)
        tran.push_back(n.tran(s));
    for (auto s : n.initials())
        merged.insert(merged.end(), n.tran(s).begin(), n.tran(s).end());
    tran.push_back(merged);
    return make_naa(n.alphabet(), std::move(names), {static_cast<StateId>(n.size())}, tran);
}

Dmts and_dmts(const Dmts& d1, const Dmts& d2)
{
    require_same_alphabet(d1.alphabet(), d2.alphabet());
    const std::size_t m = d2.size();
    const auto pair = [m](StateId a, StateId b) { return static_cast<StateId>(a * m + b); };
    std::vector<MoveSet> may(d1.size() * m);
    std::vector<Family> must(d1.size() * m);
    for (StateId s1 = 0; s1 < d1.size(); ++s1)
        for (StateId s2 = 0; s2 < m; ++s2) {
            auto& out_may = may[pair(s1, s2)];
            for (auto x : d1.may(s1))
                for (auto y : d2.may(s2))
                    if (x.action == y.action)
                        out_may.push_back({x.action, pair(x.target, y.target)});
            for (const auto& n1 : d1.must(s1)) {
                MoveSet lifted;
                for (auto x : n1)
                    for (auto y : d2.may(s2))
                        if (x.action == y.action)
                            lifted.push_back({x.action, pair(x.target, y.target)});
                must[pair(s1, s2)].push_back(std::move(lifted));
            }
            for (const auto& n2 : d2.must(s2)) {
                MoveSet lifted;
                for (auto y : n2)
                    for (auto x : d1.may(s1))
                        if (x.action == y.action)
                            lifted.push_back({x.action, pair(x.target, y.target)});
                must[pair(s1, s2)].push_back(std::move(lifted));
            }
        }
    return make_dmts(d1.alphabet(), product_names(d1.states(), d2.states()),
                     product_initials(d1.initials(), d2.initials(), m), may, must);
}

Naa and_naa(const Naa& n1, const Naa& n2, std::size_t max_sets)
{
    require_same_alphabet(n1.alphabet(), n2.alphabet());
    const std::size_t m = n2.size(), k = n1.alphabet().size();
    std::vector<Family> tran(n1.size() * m);
    for (StateId s1 = 0; s1 < n1.size(); ++s1)
        for (StateId s2 = 0; s2 < m; ++s2) {
            auto& out = tran[s1 * m + s2];
            for (const auto& m1 : n1.tran(s1))
                for (const auto& m2 : n2.tran(s2)) {
                    // Per action, the ways to pair up the targets of m1 and m2.
                    std::vector<std::vector<std::vector<std::pair<StateId, StateId>>>> options;
                    bool possible = true;
                    for (ActionId a = 0; a < k && possible; ++a) {
                        auto l = targets(m1, a), r = targets(m2, a);
                        if (l.empty() != r.empty())
                            possible = false;
                        else if (!l.empty())
                            options.push_back(covers(l, r));
                        else
                            options.push_back({{}});
                    }
                    if (!possible)
                        continue;
                    std::size_t combos = 1;
                    for (const auto& o : options) {
                        combos *= o.size();
                        if (combos + out.size() > max_sets)
                            throw SizeGuard("conjunction state " + pair_name(n1.name(s1), n2.name(s2))
                                            + " exceeds " + std::to_string(max_sets)
                                            + " admissible sets");
                    }
                    std::vector<std::size_t> pick(k, 0);
                    for (std::size_t c = 0; c < combos; ++c) {
                        MoveSet set;
                        for (ActionId a = 0; a < k; ++a)
                            for (auto [t1, t2] : options[a][pick[a]])
                                set.push_back({a, static_cast<StateId>(t1 * m + t2)});
                        out.push_back(std::move(set));
                        for (std::size_t a = 0; a < k; ++a) {
                            if (++pick[a] < options[a].size())
                                break;
                            pick[a] = 0;
                        }
                    }
                }
        }
    return make_naa(n1.alphabet(), product_names(n1.states(), n2.states()),
                    product_initials(n1.initials(), n2.initials(), m), tran);
}

Naa compose_naa(const Naa& n1, const Naa& n2)
{
    require_same_alphabet(n1.alphabet(), n2.alphabet());
    const std::size_t m = n2.size();
    std::vector<Family> tran(n1.size() * m);
    for (StateId s1 = 0; s1 < n1.size(); ++s1)
        for (StateId s2 = 0; s2 < m; ++s2)
            for (const auto& m1 : n1.tran(s1))
                for (const auto& m2 : n2.tran(s2)) {
                    MoveSet set;
                    for (auto x : m1)
                        for (auto y : m2)
                            if (x.action == y.action)
                                set.push_back({x.action, static_cast<StateId>(x.target * m + y.target)});
                    tran[s1 * m + s2].push_back(std::move(set));
                }
    return make_naa(n1.alphabet(), product_names(n1.states(), n2.states()),
                    product_initials(n1.initials(), n2.initials(), m), tran);
}

Naa reach(const Naa& n)
{
    return restrict(n, reachable(n.size(), n.initials(), [&](StateId s, auto&& visit) {
                        for (const auto& m : n.tran(s))
                            for (auto mv : m)
                                visit(mv.target);
                    }));
}

Dmts reach(const Dmts& d)
{
    return restrict(d, reachable(d.size(), d.initials(), [&](StateId s, auto&& visit) {
                        for (auto mv : d.may(s))
                            visit(mv.target);
                    }));
}

std::vector<StateId> inconsistent_states(const Naa& n)
{
    std::vector<bool> seed(n.size());
    for (StateId s = 0; s < n.size(); ++s)
        seed[s] = n.tran(s).empty();
    return backward_closure(n.size(), std::move(seed), [&](StateId s, const std::vector<bool>& b) {
        return std::all_of(n.tran(s).begin(), n.tran(s).end(), [&](const MoveSet& m) {
            return std::any_of(m.begin(), m.end(), [&](Move mv) { return b[mv.target]; });
        });
    });
}

std::vector<StateId> inconsistent_states(const Dmts& d)
{
    std::vector<bool> seed(d.size());
    for (StateId s = 0; s < d.size(); ++s)
        seed[s] = std::any_of(d.must(s).begin(), d.must(s).end(),
                              [](const MoveSet& n) { return n.empty(); });
    return backward_closure(d.size(), std::move(seed), [&](StateId s, const std::vector<bool>& b) {
        return std::any_of(d.must(s).begin(), d.must(s).end(), [&](const MoveSet& n) {
            return std::all_of(n.begin(), n.end(), [&](Move mv) { return b[mv.target]; });
        });
    });
}

Naa prune_naa(const Naa& n)
{
    return restrict(n, complement(n.size(), inconsistent_states(n)));
}

Dmts prune_dmts(const Dmts& d)
{
    return restrict(d, complement(d.size(), inconsistent_states(d)));
}

bool locally_consistent(const Naa& n)
{
    if (n.initials().empty())
        return false;
    auto r = reach(n);
    for (StateId s = 0; s < r.size(); ++s)
        if (r.tran(s).empty())
            return false;
    return true;
}

std::optional<Lts> witness(const Naa& n)
{
    if (n.initials().empty())
        return std::nullopt;
    LtsBuilder b(n.alphabet());
    const auto start = n.initials().front();
    b.initial(n.name(start));
    bool stuck = false;
    reachable(n.size(), {start}, [&](StateId s, auto&& visit) {
        if (n.tran(s).empty()) {
            stuck = true;
            return;
        }
        for (auto mv : n.tran(s).front()) {
            b.trans(n.name(s), n.alphabet().name(mv.action), n.name(mv.target));
            visit(mv.target);
        }
    });
    if (stuck)
        return std::nullopt;
    return b.build();
}

} // namespace modspec

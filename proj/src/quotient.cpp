#include "modspec/quotient.hpp"

#include "modspec/algebra.hpp"

#include "assemble.hpp"

#include <deque>
#include <map>
#include <set>

namespace modspec {

namespace {

/// Sorted, duplicate-free set of (dividend state, divisor state) pairs.
using Pairs = std::vector<std::pair<StateId, StateId>>;
/// Successors per state and action.
using SuccTable = std::vector<std::vector<std::vector<StateId>>>;
using ActionMask = std::uint64_t;

constexpr std::size_t max_product = std::size_t{1} << 20;

void require_small_alphabet(const Alphabet& sigma)
{
    if (sigma.size() > 64)
        throw SizeGuard("quotient supports at most 64 actions");
}

SuccTable succ_table(std::size_t states, std::size_t k, const auto& moves_of)
{
    SuccTable out(states, std::vector<std::vector<StateId>>(k));
    for (StateId s = 0; s < states; ++s) {
        for (auto mv : moves_of(s))
            out[s][mv.action].push_back(mv.target);
        for (auto& v : out[s]) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
    return out;
}

std::vector<ActionMask> alpha_of(const SuccTable& succ)
{
    std::vector<ActionMask> out;
    for (const auto& row : succ) {
        ActionMask m = 0;
        for (std::size_t a = 0; a < row.size(); ++a)
            if (!row[a].empty())
                m |= ActionMask{1} << a;
        out.push_back(m);
    }
    return out;
}

ActionMask gamma(const Pairs& q, const std::vector<ActionMask>& alpha_s,
                 const std::vector<ActionMask>& alpha_t)
{
    ActionMask g = ~ActionMask{0};
    for (auto [s, t] : q)
        g &= alpha_s[s] | ~alpha_t[t];
    return g;
}

/// Every way of pairing each a-successor of each t_i with an a-successor of s_i.
std::vector<Pairs> possible_targets(const Pairs& q, ActionId a, const SuccTable& succ_s,
                                    const SuccTable& succ_t)
{
    struct Slot {
        StateId t;
        const std::vector<StateId>* choices;
    };
    std::vector<Slot> slots;
    std::size_t product = 1;
    for (auto [s, t] : q)
        for (auto t2 : succ_t[t][a]) {
            const auto& c = succ_s[s][a];
            if (c.empty())
                return {};
            product *= c.size();
            if (product > max_product)
                throw SizeGuard("too many possible successor assignments in a quotient state");
            slots.push_back({t2, &c});
        }
    std::set<Pairs> out;
    std::vector<std::size_t> pick(slots.size(), 0);
    for (std::size_t n = 0; n < product; ++n) {
        Pairs r;
        for (std::size_t i = 0; i < slots.size(); ++i)
            r.push_back({(*slots[i].choices)[pick[i]], slots[i].t});
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        out.insert(std::move(r));
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (++pick[i] < slots[i].choices->size())
                break;
            pick[i] = 0;
        }
    }
    return {out.begin(), out.end()};
}

/// Quotient states discovered so far, in discovery order.
class Explorer {
public:
    explicit Explorer(std::size_t limit) : limit_(limit) {}

    std::size_t intern(const Pairs& q)
    {
        auto [it, fresh] = index_.emplace(q, states_.size());
        if (fresh) {
            if (states_.size() >= limit_)
                throw SizeGuard("quotient exceeds " + std::to_string(limit_) + " states");
            states_.push_back(q);
        }
        return it->second;
    }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const Pairs& at(std::size_t i) const { return states_[i]; }

private:
    std::size_t limit_;
    std::map<Pairs, std::size_t> index_;
    std::vector<Pairs> states_;
};

std::vector<std::string> state_names(const Explorer& ex, const std::vector<std::string>& s_names,
                                     const std::vector<std::string>& t_names)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        std::vector<std::pair<std::string, std::string>> named;
        for (auto [s, t] : ex.at(i))
            named.push_back({s_names[s], t_names[t]});
        out.push_back(quotient_state_name(named));
    }
    return out;
}

/// Does some K in Tran_S(s) match X || Y, where x and y are related to s'
/// whenever s'/y belongs to the quotient target of x?
bool matches_some(const Family& tran_s, const std::vector<std::pair<ActionId, const Pairs*>>& x,
                  const MoveSet& y)
{
    const auto related = [](const Pairs& r, StateId s2, StateId y2) {
        return std::binary_search(r.begin(), r.end(), std::make_pair(s2, y2));
    };
    for (const auto& k : tran_s) {
        bool ok = true;
        for (auto [a, r] : x) {
            for (auto ym : y) {
                if (ym.action != a)
                    continue;
                bool hit = false;
                for (auto km : k)
                    if (km.action == a && related(*r, km.target, ym.target)) {
                        hit = true;
                        break;
                    }
                if (!hit) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                break;
        }
        if (!ok)
            continue;
        for (auto km : k) {
            bool hit = false;
            for (auto [a, r] : x) {
                if (a != km.action)
                    continue;
                for (auto ym : y)
                    if (ym.action == a && related(*r, km.target, ym.target)) {
                        hit = true;
                        break;
                    }
                if (hit)
                    break;
            }
            if (!hit) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace

std::string quotient_state_name(const std::vector<std::pair<std::string, std::string>>& pairs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i)
            out += ",";
        out += quote_id(pairs[i].first) + "/" + quote_id(pairs[i].second);
    }
    return out + "}";
}

Naa disjointify(const Naa& n)
{
    std::vector<std::string> names = n.states();
    std::set<std::string> taken(names.begin(), names.end());
    std::vector<StateId> origin;
    std::vector<std::size_t> copies(n.size(), 0);
    std::vector<Family> tran(n.size());
    for (StateId s = 0; s < n.size(); ++s) {
        std::set<Move> seen;
        for (const auto& m : n.tran(s)) {
            MoveSet out;
            for (auto mv : m) {
                if (seen.insert(mv).second) {
                    out.push_back(mv);
                    continue;
                }
                auto name = fresh_name(n.name(mv.target) + "#" + std::to_string(++copies[mv.target]),
                                       taken);
                taken.insert(name);
                names.push_back(name);
                origin.push_back(mv.target);
                out.push_back({mv.action, static_cast<StateId>(names.size() - 1)});
            }
            tran[s].push_back(std::move(out));
        }
    }
    for (auto o : origin)
        tran.push_back(tran[o]);
    if (origin.empty())
        return n;
    return detail::make_naa(n.alphabet(), std::move(names), n.initials(), tran);
}

Naa quotient_naa(const Naa& s, const Naa& t_in, const QuotientOptions& options)
{
    require_same_alphabet(s.alphabet(), t_in.alphabet());
    require_small_alphabet(s.alphabet());
    const Naa t = disjointify(t_in);
    const std::size_t k = s.alphabet().size();
    const auto members = [](const Naa& n) {
        return [&n](StateId x) {
            MoveSet all;
            for (const auto& m : n.tran(x))
                all.insert(all.end(), m.begin(), m.end());
            return all;
        };
    };
    const auto succ_s = succ_table(s.size(), k, members(s));
    const auto succ_t = succ_table(t.size(), k, members(t));
    const auto alpha_s = alpha_of(succ_s), alpha_t = alpha_of(succ_t);

    Explorer ex(options.max_states);
    std::vector<std::size_t> initials;
    {
        std::vector<std::size_t> pick(t.initials().size(), 0);
        const bool none = !t.initials().empty() && s.initials().empty();
        while (!none) {
            Pairs q;
            for (std::size_t i = 0; i < pick.size(); ++i)
                q.push_back({s.initials()[pick[i]], t.initials()[i]});
            std::sort(q.begin(), q.end());
            q.erase(std::unique(q.begin(), q.end()), q.end());
            initials.push_back(ex.intern(q));
            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < s.initials().size())
                    break;
                pick[i] = 0;
            }
            if (i == pick.size())
                break;
        }
    }

    std::vector<std::vector<std::vector<std::pair<ActionId, std::size_t>>>> tran;
    for (std::size_t qi = 0; qi < ex.size(); ++qi) {
        const Pairs q = ex.at(qi);
        tran.emplace_back();
        auto& out = tran.back();
        if (q.empty()) {
            if (k > options.max_postran)
                throw SizeGuard("universal quotient state has too many admissible sets");
            const auto self = qi;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                std::vector<std::pair<ActionId, std::size_t>> set;
                for (std::size_t a = 0; a < k; ++a)
                    if (mask >> a & 1)
                        set.push_back({static_cast<ActionId>(a), self});
                out.push_back(std::move(set));
            }
            continue;
        }
        const auto g = gamma(q, alpha_s, alpha_t);
        std::vector<std::pair<ActionId, Pairs>> candidates;
        for (std::size_t a = 0; a < k; ++a) {
            if (!(g >> a & 1))
                continue;
            for (auto& r : possible_targets(q, static_cast<ActionId>(a), succ_s, succ_t))
                candidates.push_back({static_cast<ActionId>(a), std::move(r)});
        }
        if (candidates.size() > options.max_postran)
            throw SizeGuard("quotient state has " + std::to_string(candidates.size())
                            + " possible moves (limit " + std::to_string(options.max_postran) + ")");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
            std::vector<std::pair<ActionId, const Pairs*>> x;
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (mask >> c & 1)
                    x.push_back({candidates[c].first, &candidates[c].second});
            bool admissible = true;
            for (auto [si, ti] : q) {
                for (const auto& y : t.tran(ti))
                    if (!matches_some(s.tran(si), x, y)) {
                        admissible = false;
                        break;
                    }
                if (!admissible)
                    break;
            }
            if (!admissible)
                continue;
            std::vector<std::pair<ActionId, std::size_t>> set;
            for (auto [a, r] : x)
                set.push_back({a, ex.intern(*r)});
            out.push_back(std::move(set));
        }
    }

    auto names = state_names(ex, s.states(), t.states());
    std::vector<Family> fam(ex.size());
    for (std::size_t qi = 0; qi < ex.size(); ++qi)
        for (const auto& set : tran[qi]) {
            MoveSet m;
            for (auto [a, target] : set)
                m.push_back({a, static_cast<StateId>(target)});
            fam[qi].push_back(std::move(m));
        }
    std::vector<StateId> init_ids(initials.begin(), initials.end());
    auto raw = detail::make_naa(s.alphabet(), std::move(names), init_ids, fam);
    return options.prune ? reach(prune_naa(raw)) : raw;
}

Dmts quotient_mts(const MtsView& s_view, const MtsView& t_view, const QuotientOptions& options)
{
    const Dmts& s = s_view.dmts();
    const Dmts& t = t_view.dmts();
    require_same_alphabet(s.alphabet(), t.alphabet());
    require_small_alphabet(s.alphabet());
    const std::size_t k = s.alphabet().size();
    const auto may_s = succ_table(s.size(), k, [&](StateId x) { return s.may(x); });
    const auto may_t = succ_table(t.size(), k, [&](StateId x) { return t.may(x); });
    const auto alpha_s = alpha_of(may_s), alpha_t = alpha_of(may_t);

    Explorer ex(options.max_states);
    ex.intern({{s_view.initial(), t_view.initial()}});

    std::vector<MoveSet> may;
    std::vector<Family> must;
    for (std::size_t qi = 0; qi < ex.size(); ++qi) {
        const Pairs q = ex.at(qi);
        may.emplace_back();
        must.emplace_back();
        if (q.empty()) {
            for (std::size_t a = 0; a < k; ++a)
                may.back().push_back({static_cast<ActionId>(a), static_cast<StateId>(qi)});
            continue;
        }
        const auto g = gamma(q, alpha_s, alpha_t);
        std::vector<std::vector<std::pair<Pairs, std::size_t>>> targets(k);
        for (std::size_t a = 0; a < k; ++a) {
            if (!(g >> a & 1))
                continue;
            for (auto& r : possible_targets(q, static_cast<ActionId>(a), may_s, may_t)) {
                auto id = ex.intern(r);
                targets[a].push_back({std::move(r), id});
            }
            if (targets[a].size() > options.max_postran)
                throw SizeGuard("quotient state has " + std::to_string(targets[a].size())
                                + " possible successors under one action (limit "
                                + std::to_string(options.max_postran) + ")");
            for (const auto& [r, id] : targets[a])
                may[qi].push_back({static_cast<ActionId>(a), static_cast<StateId>(id)});
        }
        for (auto [si, ti] : q)
            for (const auto& n : s.must(si)) {
                const Move required = n.front();
                MoveSet choice;
                for (const auto& [r, id] : targets[required.action]) {
                    bool hit = false;
                    for (auto [s2, t2] : r)
                        if (s2 == required.target
                            && std::find(t.must(ti).begin(), t.must(ti).end(),
                                         MoveSet{{required.action, t2}})
                                   != t.must(ti).end())
                            hit = true;
                    if (hit)
                        choice.push_back({required.action, static_cast<StateId>(id)});
                }
                must[qi].push_back(std::move(choice));
            }
    }
    auto raw = detail::make_dmts(s.alphabet(), state_names(ex, s.states(), t.states()), {0}, may,
                                 must);
    return options.prune ? reach(prune_dmts(raw)) : raw;
}

} // namespace modspec

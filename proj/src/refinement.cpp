#include "modspec/refinement.hpp"

#include "compiled_hml.hpp"

#include <algorithm>
#include <deque>

#include <boost/dynamic_bitset.hpp>

namespace modspec {

const Alphabet& alphabet_of(const Spec& s)
{
    return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet(); }, s);
}

namespace {

using Pred = std::vector<std::vector<StateId>>;

Pred dedup(Pred p)
{
    for (auto& v : p) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return p;
}

Pred predecessors(const Dmts& d)
{
    Pred p(d.size());
    for (StateId s = 0; s < d.size(); ++s)
        for (auto m : d.may(s))
            p[m.target].push_back(s);
    return dedup(std::move(p));
}

Pred predecessors(const Naa& n)
{
    Pred p(n.size());
    for (StateId s = 0; s < n.size(); ++s)
        for (const auto& m : n.tran(s))
            for (auto mv : m)
                p[mv.target].push_back(s);
    return dedup(std::move(p));
}

/// Boolean matrix over left x right states.
class Matrix {
public:
    Matrix(std::size_t n1, std::size_t n2, bool value) : n2_(n2), bits_(n1 * n2, value ? 1 : 0) {}
    [[nodiscard]] bool operator()(StateId a, StateId b) const { return bits_[a * n2_ + b] != 0; }
    void set(StateId a, StateId b, bool v) { bits_[a * n2_ + b] = v ? 1 : 0; }

private:
    std::size_t n2_;
    std::vector<char> bits_;
};

// Every move of `from` has an equally labelled move in `to` whose target is
// related (in the given orientation) to the target of the first.
template <bool LeftToRight>
bool covers(const MoveSet& from, const MoveSet& to, const Matrix& r)
{
    for (auto m : from) {
        bool found = false;
        for (auto n : to) {
            if (n.action != m.action)
                continue;
            if (LeftToRight ? r(m.target, n.target) : r(n.target, m.target)) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

struct DmtsRules {
    const Dmts& s1;
    const Dmts& s2;

    [[nodiscard]] bool may_ok(StateId a, StateId b, const Matrix& r, Move* bad) const
    {
        for (auto m : s1.may(a)) {
            if (!covers<true>(MoveSet{m}, s2.may(b), r)) {
                if (bad)
                    *bad = m;
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool must_ok(StateId a, StateId b, const Matrix& r, std::size_t* bad) const
    {
        const auto& musts2 = s2.must(b);
        for (std::size_t k = 0; k < musts2.size(); ++k) {
            bool matched = std::any_of(s1.must(a).begin(), s1.must(a).end(),
                                       [&](const MoveSet& n1) { return covers<true>(n1, musts2[k], r); });
            if (!matched) {
                if (bad)
                    *bad = k;
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool ok(StateId a, StateId b, const Matrix& r) const
    {
        return may_ok(a, b, r, nullptr) && must_ok(a, b, r, nullptr);
    }

    [[nodiscard]] std::string reason(StateId a, StateId b, const Matrix& r) const
    {
        Move m;
        if (!may_ok(a, b, r, &m))
            return "may-transition " + move_string(s1.alphabet(), s1.states(), m) + " of "
                   + s1.name(a) + " has no related may-transition from " + s2.name(b);
        std::size_t k = 0;
        (void)must_ok(a, b, r, &k);
        return "must-set " + move_set_string(s2.alphabet(), s2.states(), s2.must(b)[k]) + " of "
               + s2.name(b) + " is not matched by any must-set of " + s1.name(a);
    }
};

struct NaaRules {
    const Naa& s1;
    const Naa& s2;

    [[nodiscard]] bool matches(const MoveSet& m1, const MoveSet& m2, const Matrix& r) const
    {
        return covers<true>(m1, m2, r) && covers<false>(m2, m1, r);
    }

    [[nodiscard]] bool ok_set(const MoveSet& m1, StateId b, const Matrix& r) const
    {
        return std::any_of(s2.tran(b).begin(), s2.tran(b).end(),
                           [&](const MoveSet& m2) { return matches(m1, m2, r); });
    }

    [[nodiscard]] bool ok(StateId a, StateId b, const Matrix& r) const
    {
        return std::all_of(s1.tran(a).begin(), s1.tran(a).end(),
                           [&](const MoveSet& m1) { return ok_set(m1, b, r); });
    }

    [[nodiscard]] std::string reason(StateId a, StateId b, const Matrix& r) const
    {
        for (const auto& m1 : s1.tran(a))
            if (!ok_set(m1, b, r))
                return "admissible set " + move_set_string(s1.alphabet(), s1.states(), m1) + " of "
                       + s1.name(a) + " has no matching admissible set at " + s2.name(b);
        return "unmatched admissible set";
    }
};

struct Fixpoint {
    Matrix relation;
    std::vector<Removal> log;
};

template <class Rules>
Fixpoint greatest_fixpoint(std::size_t n1, std::size_t n2, const Pred& pred1, const Pred& pred2,
                           const Rules& rules, bool trace)
{
    Fixpoint fp{Matrix(n1, n2, true), {}};
    std::vector<char> queued(n1 * n2, 1);
    std::deque<std::pair<StateId, StateId>> work;
    for (StateId a = 0; a < n1; ++a)
        for (StateId b = 0; b < n2; ++b)
            work.emplace_back(a, b);
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        queued[a * n2 + b] = 0;
        if (!fp.relation(a, b) || rules.ok(a, b, fp.relation))
            continue;
        if (trace)
            fp.log.push_back({a, b, rules.reason(a, b, fp.relation)});
        fp.relation.set(a, b, false);
        for (auto p1 : pred1[a])
            for (auto p2 : pred2[b])
                if (fp.relation(p1, p2) && !queued[p1 * n2 + p2]) {
                    queued[p1 * n2 + p2] = 1;
                    work.emplace_back(p1, p2);
                }
    }
    return fp;
}

template <class Rules>
RefinementResult conclude(Fixpoint fp, std::size_t n1, std::size_t n2,
                          const std::vector<StateId>& init1, const std::vector<StateId>& init2)
{
    for (auto i1 : init1) {
        bool related = std::any_of(init2.begin(), init2.end(),
                                   [&](StateId i2) { return fp.relation(i1, i2); });
        if (related)
            continue;
        NotRefined nr;
        nr.left_initial = i1;
        std::size_t end = 0;
        for (std::size_t k = 0; k < fp.log.size(); ++k)
            if (fp.log[k].left == i1
                && std::binary_search(init2.begin(), init2.end(), fp.log[k].right))
                end = k + 1;
        fp.log.resize(end);
        nr.trace = std::move(fp.log);
        return RefinementResult(std::move(nr));
    }
    RefinementRelation rel;
    rel.initialised = true;
    for (StateId a = 0; a < n1; ++a)
        for (StateId b = 0; b < n2; ++b)
            if (fp.relation(a, b))
                rel.pairs.emplace_back(a, b);
    return RefinementResult(std::move(rel));
}

template <class Rules>
bool replay(std::size_t n1, std::size_t n2, const std::vector<StateId>& init1,
            const std::vector<StateId>& init2, const Rules& rules, const RefinementRelation& r)
{
    Matrix m(n1, n2, false);
    for (auto [a, b] : r.pairs) {
        if (a >= n1 || b >= n2)
            return false;
        m.set(a, b, true);
    }
    for (auto [a, b] : r.pairs)
        if (!rules.ok(a, b, m))
            return false;
    if (!r.initialised)
        return true;
    return std::all_of(init1.begin(), init1.end(), [&](StateId i1) {
        return std::any_of(init2.begin(), init2.end(), [&](StateId i2) { return m(i1, i2); });
    });
}

template <class Rules>
bool initialised(const Fixpoint& fp, const std::vector<StateId>& init1,
                 const std::vector<StateId>& init2)
{
    return std::all_of(init1.begin(), init1.end(), [&](StateId i1) {
        return std::any_of(init2.begin(), init2.end(),
                           [&](StateId i2) { return fp.relation(i1, i2); });
    });
}

bool refines_impl(const Dmts& s1, const Dmts& s2, bool trace, RefinementResult* out)
{
    require_same_alphabet(s1.alphabet(), s2.alphabet());
    DmtsRules rules{s1, s2};
    auto fp = greatest_fixpoint(s1.size(), s2.size(), predecessors(s1), predecessors(s2), rules,
                                trace);
    if (!out)
        return initialised<DmtsRules>(fp, s1.initials(), s2.initials());
    *out = conclude<DmtsRules>(std::move(fp), s1.size(), s2.size(), s1.initials(), s2.initials());
    return out->refined();
}

bool refines_impl(const Naa& s1, const Naa& s2, bool trace, RefinementResult* out)
{
    require_same_alphabet(s1.alphabet(), s2.alphabet());
    NaaRules rules{s1, s2};
    auto fp = greatest_fixpoint(s1.size(), s2.size(), predecessors(s1), predecessors(s2), rules,
                                trace);
    if (!out)
        return initialised<NaaRules>(fp, s1.initials(), s2.initials());
    *out = conclude<NaaRules>(std::move(fp), s1.size(), s2.size(), s1.initials(), s2.initials());
    return out->refined();
}

} // namespace

RefinementResult refine_dmts(const Dmts& s1, const Dmts& s2)
{
    RefinementResult r{NotRefined{}};
    refines_impl(s1, s2, true, &r);
    return r;
}

RefinementResult refine_naa(const Naa& s1, const Naa& s2)
{
    RefinementResult r{NotRefined{}};
    refines_impl(s1, s2, true, &r);
    return r;
}

bool refines(const Dmts& s1, const Dmts& s2)
{
    return refines_impl(s1, s2, false, nullptr);
}

bool refines(const Naa& s1, const Naa& s2)
{
    return refines_impl(s1, s2, false, nullptr);
}

bool check_relation(const Dmts& s1, const Dmts& s2, const RefinementRelation& r)
{
    require_same_alphabet(s1.alphabet(), s2.alphabet());
    return replay(s1.size(), s2.size(), s1.initials(), s2.initials(), DmtsRules{s1, s2}, r);
}

bool check_relation(const Naa& s1, const Naa& s2, const RefinementRelation& r)
{
    require_same_alphabet(s1.alphabet(), s2.alphabet());
    return replay(s1.size(), s2.size(), s1.initials(), s2.initials(), NaaRules{s1, s2}, r);
}

bool mreq(const Dmts& a, const Dmts& b)
{
    return refines_impl(a, b, false, nullptr) && refines_impl(b, a, false, nullptr);
}

bool mreq(const Naa& a, const Naa& b)
{
    return refines_impl(a, b, false, nullptr) && refines_impl(b, a, false, nullptr);
}

// ---------------------------------------------------------------------------
// Model checking

HmlResult hml_check(const Lts& lts, const HmlDecl& d)
{
    require_same_alphabet(lts.alphabet(), d.alphabet());
    using Bits = boost::dynamic_bitset<>;
    const std::size_t n = lts.size();

    const auto compiled = detail::compile(d);
    const auto& nodes = compiled.nodes;
    const auto& roots = compiled.roots;

    std::vector<Bits> sigma(d.size(), Bits(n).set());
    std::vector<Bits> val(nodes.size(), Bits(n));
    for (;;) {
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const auto& nd = nodes[k];
            Bits& v = val[k];
            switch (nd.kind) {
            case hml::Kind::tt:
                v.set();
                break;
            case hml::Kind::ff:
                v.reset();
                break;
            case hml::Kind::var:
                v = sigma[nd.label];
                break;
            case hml::Kind::conj:
                v = val[nd.left] & val[nd.right];
                break;
            case hml::Kind::disj:
                v = val[nd.left] | val[nd.right];
                break;
            case hml::Kind::diamond:
            case hml::Kind::box: {
                const bool dia = nd.kind == hml::Kind::diamond;
                const Bits& body = val[nd.left];
                for (StateId s = 0; s < n; ++s) {
                    bool r = !dia;
                    for (auto m : lts.succ(s)) {
                        if (m.action != nd.label)
                            continue;
                        if (body[m.target] == dia) {
                            r = dia;
                            break;
                        }
                    }
                    v[s] = r;
                }
                break;
            }
            }
        }
        bool changed = false;
        for (std::size_t x = 0; x < d.size(); ++x) {
            if (val[roots[x]] != sigma[x]) {
                sigma[x] = val[roots[x]] & sigma[x];
                changed = true;
            }
        }
        if (!changed)
            break;
    }

    HmlResult r;
    for (const auto& b : sigma) {
        std::vector<bool> row(n);
        for (std::size_t s = 0; s < n; ++s)
            row[s] = b[s];
        r.assignment.push_back(std::move(row));
    }
    r.holds = std::any_of(d.initials().begin(), d.initials().end(),
                          [&](std::size_t x) { return sigma[x][lts.initial()]; });
    return r;
}

bool implements(const Lts& i, const Dmts& s)
{
    return refines(lts_as_dmts(i), s);
}

bool implements(const Lts& i, const Naa& s)
{
    return refines(lts_as_naa(i), s);
}

bool implements(const Lts& i, const HmlDecl& s)
{
    return hml_check(i, s).holds;
}

bool implements(const Lts& i, const Spec& s)
{
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Lts>)
                return implements(i, lts_as_dmts(x));
            else
                return implements(i, x);
        },
        s);
}

std::string describe(const NotRefined& n, const std::vector<std::string>& left_states,
                     const std::vector<std::string>& right_states)
{
    constexpr std::size_t shown = 32;
    std::string out;
    if (n.left_initial < left_states.size())
        out += "initial state " + quote_id(left_states[n.left_initial])
               + " of the left operand is not related to any initial state of the right operand\n";
    else
        out += "refinement fails\n";
    std::size_t first = n.trace.size() > shown ? n.trace.size() - shown : 0;
    if (first > 0)
        out += "  (" + std::to_string(first) + " earlier removals omitted)\n";
    for (std::size_t k = first; k < n.trace.size(); ++k) {
        const auto& r = n.trace[k];
        out += "  removed (" + left_states.at(r.left) + ", " + right_states.at(r.right)
               + "): " + r.reason + "\n";
    }
    return out;
}

} // namespace modspec

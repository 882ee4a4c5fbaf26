#include "modspec/oracle.hpp"

#include "compiled_hml.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

namespace modspec {

namespace {

std::size_t bit_index(std::size_t s, std::size_t a, std::size_t t, std::size_t k, std::size_t n)
{
    return (s * k + a) * n + t;
}

std::uint64_t permute(std::uint64_t code, std::size_t n, std::size_t k,
                      const std::vector<std::uint8_t>& perm)
{
    std::uint64_t out = 0;
    const std::size_t row = k * n;
    while (code) {
        auto i = static_cast<std::size_t>(std::countr_zero(code));
        code &= code - 1;
        std::size_t s = i / row, a = (i % row) / n, t = i % n;
        out |= std::uint64_t{1} << bit_index(perm[s], a, perm[t], k, n);
    }
    return out;
}

/// Permutations of 0..n-1 that fix 0, without the identity.
std::vector<std::vector<std::uint8_t>> nontrivial_perms(std::size_t n)
{
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    if (n <= 2)
        return out;
    while (std::next_permutation(p.begin() + 1, p.end()))
        out.push_back(p);
    return out;
}

std::uint64_t state_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

bool all_reachable(std::uint64_t code, std::size_t n, std::size_t k)
{
    std::uint32_t adj[8] = {};
    const std::uint64_t row_mask = state_mask(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < k; ++a)
            adj[s] |= static_cast<std::uint32_t>((code >> ((s * k + a) * n)) & row_mask);
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1)
            next |= adj[std::countr_zero(f)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == state_mask(n);
}

void check_representable(std::size_t n, std::size_t k)
{
    if (n == 0)
        throw InvariantViolation("enumeration bound must be positive");
    if (n > 8 || k * n * n > 63)
        throw BoundTooLarge("LTS with " + std::to_string(n) + " states over "
                            + std::to_string(k) + " actions do not fit the packed encoding");
}

} // namespace

Lts unpack(const PackedLts& p, const Alphabet& alphabet)
{
    const std::size_t n = p.states, k = alphabet.size();
    std::vector<std::string> names;
    for (std::size_t s = 0; s < n; ++s)
        names.push_back("q" + std::to_string(s));
    std::vector<MoveSet> succ(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t t = 0; t < n; ++t)
                if (p.bits >> bit_index(s, a, t, k, n) & 1)
                    succ[s].push_back({static_cast<ActionId>(a), static_cast<StateId>(t)});
    return Lts(alphabet, std::move(names), 0, std::move(succ));
}

PackedLts canonical(const Lts& l)
{
    const std::size_t k = l.alphabet().size();
    std::vector<int> order(l.size(), -1);
    std::vector<StateId> bfs{l.initial()};
    order[l.initial()] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (auto m : l.succ(bfs[i]))
            if (order[m.target] < 0) {
                order[m.target] = static_cast<int>(bfs.size());
                bfs.push_back(m.target);
            }
    const std::size_t n = bfs.size();
    check_representable(n, k);
    std::uint64_t code = 0;
    for (auto s : bfs)
        for (auto m : l.succ(s))
            code |= std::uint64_t{1} << bit_index(order[s], m.action, order[m.target], k, n);
    std::uint64_t best = code;
    for (const auto& p : nontrivial_perms(n))
        best = std::min(best, permute(code, n, k, p));
    return PackedLts{static_cast<std::uint8_t>(n), best};
}

std::uint64_t raw_encodings(std::size_t max_states, std::size_t actions)
{
    std::uint64_t total = 0;
    for (std::size_t n = 1; n <= max_states; ++n) {
        auto bits = actions * n * n;
        if (bits >= 63)
            return ~std::uint64_t{0};
        total += std::uint64_t{1} << bits;
    }
    return total;
}

void for_each_lts(const EnumBound& b, const std::function<bool(const PackedLts&)>& fn)
{
    const std::size_t k = b.alphabet.size();
    check_representable(b.max_states, k);
    if (raw_encodings(b.max_states, k) > (std::uint64_t{1} << 24) && !b.allow_exponential)
        throw BoundTooLarge("enumerating LTS with up to " + std::to_string(b.max_states)
                            + " states over " + std::to_string(k)
                            + " actions scans more than 2^24 encodings; pass the explicit "
                              "acknowledgement to proceed");
    for (std::size_t n = 1; n <= b.max_states; ++n) {
        const auto perms = nontrivial_perms(n);
        const std::uint64_t end = std::uint64_t{1} << (k * n * n);
        for (std::uint64_t code = 0; code < end; ++code) {
            if (!all_reachable(code, n, k))
                continue;
            bool minimal = true;
            for (const auto& p : perms)
                if (permute(code, n, k, p) < code) {
                    minimal = false;
                    break;
                }
            if (minimal && !fn(PackedLts{static_cast<std::uint8_t>(n), code}))
                return;
        }
    }
}

const std::vector<PackedLts>& enum_packed(const EnumBound& b)
{
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<PackedLts>> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(b.max_states, b.alphabet.size());
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::vector<PackedLts> all;
    for_each_lts(b, [&](const PackedLts& p) {
        all.push_back(p);
        return true;
    });
    return cache.emplace(key, std::move(all)).first->second;
}

std::vector<Lts> enum_lts(const EnumBound& b)
{
    std::vector<Lts> out;
    for (const auto& p : enum_packed(b))
        out.push_back(unpack(p, b.alphabet));
    return out;
}

// ---------------------------------------------------------------------------
// Acceptors

namespace {

constexpr std::size_t max_lts_states = 8;

struct LtsView {
    std::size_t n;
    std::uint32_t succ[max_lts_states][8]; // [state][action] -> target mask

    LtsView(const PackedLts& p, std::size_t k) : n(p.states)
    {
        const std::uint64_t mask = state_mask(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t a = 0; a < k; ++a)
                succ[s][a] = static_cast<std::uint32_t>((p.bits >> ((s * k + a) * n)) & mask);
    }
};

/// Bitsets over specification states, `words` 64-bit words each.
struct Rows {
    std::size_t words;

    [[nodiscard]] std::size_t count() const { return words; }
    static void set(std::uint64_t* x, std::size_t s) { x[s / 64] |= std::uint64_t{1} << (s % 64); }
    [[nodiscard]] bool meets(const std::uint64_t* x, const std::uint64_t* y) const
    {
        for (std::size_t i = 0; i < words; ++i)
            if (x[i] & y[i])
                return true;
        return false;
    }
    [[nodiscard]] bool within(const std::uint64_t* x, const std::uint64_t* y) const
    {
        for (std::size_t i = 0; i < words; ++i)
            if (x[i] & ~y[i])
                return false;
        return true;
    }
};

std::size_t words_for(std::size_t states) { return std::max<std::size_t>(1, (states + 63) / 64); }

/// Distinct move sets as one bitset per action, each with the bitset of
/// specification states that carry it.
struct SharedSets {
    std::vector<std::uint64_t> sets;   // [set][action][word]
    std::vector<std::uint64_t> owners; // [set][word]
    std::size_t count = 0;

    SharedSets(const std::vector<Family>& families, std::size_t k, std::size_t w)
    {
        std::map<std::vector<std::uint64_t>, std::size_t> index;
        for (std::size_t s = 0; s < families.size(); ++s)
            for (const auto& ms : families[s]) {
                std::vector<std::uint64_t> bits(k * w, 0);
                for (auto mv : ms)
                    Rows::set(&bits[mv.action * w], mv.target);
                auto [it, fresh] = index.emplace(bits, count);
                if (fresh) {
                    sets.insert(sets.end(), bits.begin(), bits.end());
                    owners.resize(owners.size() + w, 0);
                    ++count;
                }
                Rows::set(&owners[it->second * w], s);
            }
    }
};

/// For every action, the union of per-state bitsets over any set of
/// specification states, looked up one byte of the set at a time. Large
/// specifications skip the table and unite state by state.
struct ByteUnion {
    static constexpr std::size_t max_tabled_states = 512;

    std::size_t k, w, chunks;
    std::vector<std::uint64_t> per_state; // [state][action][word]
    std::vector<std::uint64_t> table;     // [action][chunk][byte value][word]

    ByteUnion(std::vector<std::uint64_t> per_state_, std::size_t states, std::size_t k_,
              std::size_t w_)
        : k(k_), w(w_), chunks((states + 7) / 8), per_state(std::move(per_state_))
    {
        if (states > max_tabled_states) {
            chunks = 0;
            return;
        }
        table.assign(k * chunks * 256 * w, 0);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t c = 0; c < chunks; ++c)
                for (std::size_t v = 1; v < 256; ++v) {
                    auto* out = &table[((a * chunks + c) * 256 + v) * w];
                    const auto low = static_cast<std::size_t>(std::countr_zero(v));
                    const auto* rest = &table[((a * chunks + c) * 256 + (v & (v - 1))) * w];
                    const std::size_t s = c * 8 + low;
                    for (std::size_t x = 0; x < w; ++x)
                        out[x] = rest[x] | (s < states ? per_state[(s * k + a) * w + x] : 0);
                }
    }

    void unite(std::size_t a, const std::uint64_t* states, std::uint64_t* out) const
    {
        std::fill(out, out + w, 0);
        if (table.empty()) {
            for (std::size_t x = 0; x < w; ++x)
                for (std::uint64_t b = states[x]; b; b &= b - 1) {
                    const std::size_t s = x * 64 + static_cast<std::size_t>(std::countr_zero(b));
                    const auto* row = &per_state[(s * k + a) * w];
                    for (std::size_t y = 0; y < w; ++y)
                        out[y] |= row[y];
                }
            return;
        }
        for (std::size_t c = 0; c < chunks; ++c) {
            const auto v = static_cast<std::size_t>((states[c / 8] >> (8 * (c % 8))) & 0xff);
            if (!v)
                continue;
            const auto* row = &table[((a * chunks + c) * 256 + v) * w];
            for (std::size_t x = 0; x < w; ++x)
                out[x] |= row[x];
        }
    }
};

/// Scratch space reused across membership queries on this thread.
struct Scratch {
    std::vector<std::uint64_t> related, next, unions, extra;
};

Scratch& scratch()
{
    thread_local Scratch s;
    return s;
}

/// Greatest relation between LTS and specification states, as one bitset
/// over specification states per LTS state. `step(i, related, unions, next)`
/// narrows next (a copy of related[i]); unions[i][a] is the union of related
/// over the a-successors of i. Fails as soon as LTS state 0 loses every
/// initial specification state.
template <class Prepare, class Step>
bool relate(const LtsView& l, std::size_t k, std::size_t m, const Rows& rows,
            const std::vector<std::uint64_t>& initials, const Prepare& prepare, const Step& step)
{
    const std::size_t w = rows.count();
    auto& sc = scratch();
    sc.related.assign(l.n * w, 0);
    for (std::size_t i = 0; i < l.n; ++i)
        for (std::size_t x = 0; x < w && x * 64 < m; ++x)
            sc.related[i * w + x] = m - x * 64 >= 64 ? ~std::uint64_t{0}
                                                     : (std::uint64_t{1} << (m - x * 64)) - 1;
    sc.next.resize(w);
    sc.unions.resize(l.n * k * w);
    for (;;) {
        prepare(sc.related);
        std::fill(sc.unions.begin(), sc.unions.end(), 0);
        for (std::size_t i = 0; i < l.n; ++i)
            for (std::size_t a = 0; a < k; ++a)
                for (std::uint32_t t = l.succ[i][a]; t; t &= t - 1) {
                    const auto* row = &sc.related[std::countr_zero(t) * w];
                    auto* u = &sc.unions[(i * k + a) * w];
                    for (std::size_t x = 0; x < w; ++x)
                        u[x] |= row[x];
                }
        bool changed = false;
        for (std::size_t i = 0; i < l.n; ++i) {
            auto* row = &sc.related[i * w];
            std::copy(row, row + w, sc.next.begin());
            step(i, sc.related, &sc.unions[i * k * w], sc.next.data());
            for (std::size_t x = 0; x < w; ++x)
                if (sc.next[x] != row[x]) {
                    row[x] = sc.next[x];
                    changed = true;
                }
        }
        if (!rows.meets(sc.related.data(), initials.data()))
            return false;
        if (!changed)
            return true;
    }
}

std::vector<std::uint64_t> to_bits(const std::vector<StateId>& states, std::size_t w)
{
    std::vector<std::uint64_t> out(w, 0);
    for (auto s : states)
        Rows::set(out.data(), s);
    return out;
}

/// A specification restricted to the states reachable from its initial
/// states, renumbered densely. `primary` drives reachability; `secondary`
/// (may be empty) is renumbered alongside.
struct Reachable {
    std::vector<StateId> initials;
    std::vector<Family> primary, secondary;
};

Reachable restrict_reachable(const std::vector<StateId>& initials, const std::vector<Family>& primary,
                             const std::vector<Family>& secondary)
{
    constexpr auto unseen = static_cast<StateId>(-1);
    std::vector<StateId> index(primary.size(), unseen);
    std::vector<StateId> order;
    const auto see = [&](StateId s) {
        if (index[s] == unseen) {
            index[s] = static_cast<StateId>(order.size());
            order.push_back(s);
        }
    };
    for (auto s : initials)
        see(s);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& ms : primary[order[i]])
            for (auto mv : ms)
                see(mv.target);
    const auto renumber = [&](const Family& f) {
        Family out;
        for (const auto& ms : f) {
            MoveSet r;
            for (auto mv : ms)
                r.push_back({mv.action, index[mv.target]});
            out.push_back(std::move(r));
        }
        return out;
    };
    Reachable out;
    for (auto s : initials)
        out.initials.push_back(index[s]);
    for (auto s : order) {
        out.primary.push_back(renumber(primary[s]));
        if (!secondary.empty())
            out.secondary.push_back(renumber(secondary[s]));
    }
    return out;
}

/// Per-action lookup tables over sets of LTS states: pre(a, X) holds the
/// states with an a-successor in X, sub(a, X) those whose a-successors all
/// lie in X.
struct LtsTables {
    std::size_t n;
    std::uint8_t full;
    std::uint8_t pre[8][256];
    std::uint8_t sub[8][256];

    LtsTables(const LtsView& l, std::size_t k) : n(l.n), full(static_cast<std::uint8_t>(state_mask(l.n)))
    {
        const std::size_t sets = std::size_t{1} << n;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t x = 0; x < sets; ++x) {
                std::uint8_t p = 0, q = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (l.succ[i][a] & x)
                        p |= static_cast<std::uint8_t>(1u << i);
                    if (!(l.succ[i][a] & ~x))
                        q |= static_cast<std::uint8_t>(1u << i);
                }
                pre[a][x] = p;
                sub[a][x] = q;
            }
    }
};

/// Move sets of every state, flattened: set j of state s spans
/// moves[bounds[j] .. bounds[j + 1]) for first[s] <= j < first[s + 1].
struct FlatFamilies {
    std::vector<Move> moves;
    std::vector<std::size_t> bounds{0};
    std::vector<std::size_t> first{0};

    explicit FlatFamilies(const std::vector<Family>& families)
    {
        for (const auto& f : families) {
            for (const auto& ms : f) {
                moves.insert(moves.end(), ms.begin(), ms.end());
                bounds.push_back(moves.size());
            }
            first.push_back(bounds.size() - 1);
        }
    }
    [[nodiscard]] std::size_t states() const { return first.size() - 1; }
};

/// Greatest relation as the set of related LTS states (a byte) for every
/// specification state; suits large sparse specifications. `step(s, r)`
/// returns the LTS states that may stay related to s.
template <class Step>
bool relate_sparse(std::size_t spec_states, std::uint8_t full, const std::vector<StateId>& initials,
                   const Step& step)
{
    thread_local std::vector<std::uint8_t> r;
    r.assign(spec_states, full);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < spec_states; ++s) {
            if (!r[s])
                continue;
            const std::uint8_t keep = r[s] & step(s, r);
            if (keep != r[s]) {
                r[s] = keep;
                changed = true;
            }
        }
        if (std::none_of(initials.begin(), initials.end(), [&](StateId s) { return r[s] & 1u; }))
            return false;
    }
    return true;
}

class SparseNaaAcceptor : public Acceptor {
public:
    SparseNaaAcceptor(std::size_t k, const Reachable& r) : k_(k), initials_(r.initials), tran_(r.primary) {}

    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        const LtsView l(p, k_);
        const LtsTables t(l, k_);
        std::uint8_t cover[8];
        return relate_sparse(tran_.states(), t.full, initials_,
                             [&](std::size_t s, const std::vector<std::uint8_t>& r) {
                                 std::uint8_t any = 0;
                                 for (std::size_t j = tran_.first[s]; j < tran_.first[s + 1]; ++j) {
                                     std::fill(cover, cover + k_, 0);
                                     std::uint8_t fits = t.full;
                                     for (std::size_t m = tran_.bounds[j]; m < tran_.bounds[j + 1]; ++m) {
                                         const auto mv = tran_.moves[m];
                                         cover[mv.action] |= r[mv.target];
                                         fits &= t.pre[mv.action][r[mv.target]];
                                     }
                                     for (std::size_t a = 0; a < k_; ++a)
                                         fits &= t.sub[a][cover[a]];
                                     any |= fits;
                                 }
                                 return any;
                             });
    }

private:
    std::size_t k_;
    std::vector<StateId> initials_;
    FlatFamilies tran_;
};

class SparseDmtsAcceptor : public Acceptor {
public:
    SparseDmtsAcceptor(std::size_t k, const Reachable& r)
        : k_(k), initials_(r.initials), may_(r.primary), musts_(r.secondary)
    {
    }

    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        const LtsView l(p, k_);
        const LtsTables t(l, k_);
        std::uint8_t cover[8];
        return relate_sparse(
            may_.states(), t.full, initials_, [&](std::size_t s, const std::vector<std::uint8_t>& r) {
                std::fill(cover, cover + k_, 0);
                for (std::size_t j = may_.first[s]; j < may_.first[s + 1]; ++j)
                    for (std::size_t m = may_.bounds[j]; m < may_.bounds[j + 1]; ++m)
                        cover[may_.moves[m].action] |= r[may_.moves[m].target];
                std::uint8_t keep = t.full;
                for (std::size_t a = 0; a < k_; ++a)
                    keep &= t.sub[a][cover[a]];
                for (std::size_t j = musts_.first[s]; j < musts_.first[s + 1] && keep; ++j) {
                    std::uint8_t hit = 0;
                    for (std::size_t m = musts_.bounds[j]; m < musts_.bounds[j + 1]; ++m)
                        hit |= t.pre[musts_.moves[m].action][r[musts_.moves[m].target]];
                    keep &= hit;
                }
                return keep;
            });
    }

private:
    std::size_t k_;
    std::vector<StateId> initials_;
    FlatFamilies may_, musts_;
};

class NaaAcceptor : public Acceptor {
public:
    NaaAcceptor(std::size_t k, const Reachable& r)
        : k_(k), m_(r.primary.size()), rows_{words_for(m_)}, initials_(to_bits(r.initials, rows_.count())),
          tran_(r.primary, k_, rows_.count())
    {
    }

    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        const LtsView l(p, k_);
        const std::size_t w = rows_.count(), block = k_ * w;
        return relate(
            l, k_, m_, rows_, initials_, [](const auto&) {},
            [&](std::size_t i, const std::vector<std::uint64_t>& related, const std::uint64_t* unions,
                std::uint64_t* next) {
                auto& allowed = scratch().extra;
                allowed.assign(w, 0);
                for (std::size_t j = 0; j < tran_.count; ++j) {
                    const auto* owners = &tran_.owners[j * w];
                    bool open = false;
                    for (std::size_t x = 0; x < w && !open; ++x)
                        open = owners[x] & next[x] & ~allowed[x];
                    if (!open)
                        continue;
                    const auto* set = &tran_.sets[j * block];
                    bool fits = true;
                    for (std::size_t a = 0; a < k_ && fits; ++a) {
                        fits = rows_.within(set + a * w, unions + a * w);
                        for (std::uint32_t t = l.succ[i][a]; t && fits; t &= t - 1)
                            fits = rows_.meets(set + a * w, &related[std::countr_zero(t) * w]);
                    }
                    if (fits)
                        for (std::size_t x = 0; x < w; ++x)
                            allowed[x] |= tran_.owners[j * w + x];
                }
                for (std::size_t x = 0; x < w; ++x)
                    next[x] &= allowed[x];
            });
    }

private:
    std::size_t k_, m_;
    Rows rows_;
    std::vector<std::uint64_t> initials_;
    SharedSets tran_;
};

class DmtsAcceptor : public Acceptor {
public:
    DmtsAcceptor(std::size_t k, const Reachable& r)
        : k_(k), m_(r.primary.size()), rows_{words_for(m_)}, initials_(to_bits(r.initials, rows_.count())),
          musts_(r.secondary, k_, rows_.count()), may_sources_(may_sources(r, k_, rows_.count()), m_, k_, rows_.count())
    {
    }

    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        const LtsView l(p, k_);
        const std::size_t w = rows_.count(), block = k_ * w;
        // matched[t][a]: specification states with an a-may-target related to t
        thread_local std::vector<std::uint64_t> matched;
        matched.resize(l.n * k_ * w);
        return relate(
            l, k_, m_, rows_, initials_,
            [&](const std::vector<std::uint64_t>& related) {
                for (std::size_t t = 0; t < l.n; ++t)
                    for (std::size_t a = 0; a < k_; ++a)
                        may_sources_.unite(a, &related[t * w], &matched[(t * k_ + a) * w]);
            },
            [&](std::size_t i, const std::vector<std::uint64_t>&, const std::uint64_t* unions,
                std::uint64_t* next) {
                for (std::size_t a = 0; a < k_; ++a)
                    for (std::uint32_t t = l.succ[i][a]; t; t &= t - 1) {
                        const auto* row = &matched[(std::countr_zero(t) * k_ + a) * w];
                        for (std::size_t x = 0; x < w; ++x)
                            next[x] &= row[x];
                    }
                for (std::size_t j = 0; j < musts_.count; ++j)
                    if (!Rows{block}.meets(&musts_.sets[j * block], unions))
                        for (std::size_t x = 0; x < w; ++x)
                            next[x] &= ~musts_.owners[j * w + x];
            });
    }

private:
    /// [target][action]: bitset of states with that may-move.
    static std::vector<std::uint64_t> may_sources(const Reachable& r, std::size_t k, std::size_t w)
    {
        std::vector<std::uint64_t> out(r.primary.size() * k * w, 0);
        for (StateId s = 0; s < r.primary.size(); ++s)
            for (auto mv : r.primary[s][0])
                Rows::set(&out[(mv.target * k + mv.action) * w], s);
        return out;
    }

    std::size_t k_, m_;
    Rows rows_;
    std::vector<std::uint64_t> initials_;
    SharedSets musts_;
    ByteUnion may_sources_;
};

class HmlAcceptor : public Acceptor {
public:
    explicit HmlAcceptor(const HmlDecl& d)
        : k_(d.alphabet().size()), compiled_(detail::compile(d)),
          initials_(d.initials().begin(), d.initials().end())
    {
    }

    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        LtsView l(p, k_);
        const std::uint32_t full = static_cast<std::uint32_t>(state_mask(l.n));
        const auto& nodes = compiled_.nodes;
        const auto& roots = compiled_.roots;
        std::vector<std::uint32_t> sigma(roots.size(), full);
        std::vector<std::uint32_t> val(nodes.size());
        for (;;) {
            for (std::size_t q = 0; q < nodes.size(); ++q) {
                const auto& nd = nodes[q];
                std::uint32_t v = 0;
                switch (nd.kind) {
                case hml::Kind::tt:
                    v = full;
                    break;
                case hml::Kind::ff:
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
                    for (std::size_t s = 0; s < l.n; ++s)
                        if (l.succ[s][nd.label] & val[nd.left])
                            v |= 1u << s;
                    break;
                case hml::Kind::box:
                    for (std::size_t s = 0; s < l.n; ++s)
                        if (!(l.succ[s][nd.label] & ~val[nd.left]))
                            v |= 1u << s;
                    break;
                }
                val[q] = v;
            }
            bool changed = false;
            for (std::size_t x = 0; x < roots.size(); ++x) {
                auto next = val[roots[x]] & sigma[x];
                if (next != sigma[x]) {
                    sigma[x] = next;
                    changed = true;
                }
            }
            if (!changed)
                break;
        }
        return std::any_of(initials_.begin(), initials_.end(),
                           [&](std::size_t x) { return sigma[x] & 1u; });
    }

private:
    std::size_t k_;
    detail::CompiledDecl compiled_;
    std::vector<std::size_t> initials_;
};

/// Unpacks and runs the general refinement check.
class GeneralAcceptor : public Acceptor {
public:
    explicit GeneralAcceptor(Spec s) : spec_(std::move(s)) {}
    [[nodiscard]] bool accepts(const PackedLts& p) const override
    {
        return implements(unpack(p, alphabet_of(spec_)), spec_);
    }

private:
    Spec spec_;
};

} // namespace

namespace {

std::size_t moves_in(const std::vector<Family>& families)
{
    std::size_t n = 0;
    for (const auto& f : families)
        for (const auto& ms : f)
            n += ms.size() + 1;
    return n;
}

/// Word-parallel evaluation costs about states * words per action and LTS
/// state and round; per-move evaluation costs the number of moves.
bool prefer_words(std::size_t k, std::size_t states, std::size_t moves)
{
    const std::size_t w = words_for(states);
    const std::size_t per_union = states > ByteUnion::max_tabled_states ? states * w : ((states + 7) / 8) * w;
    return 3 * k * per_union <= moves;
}

std::unique_ptr<Acceptor> dmts_acceptor(const Dmts& d)
{
    std::vector<Family> may, must;
    for (StateId s = 0; s < d.size(); ++s) {
        may.push_back({d.may(s)});
        must.push_back(d.must(s));
    }
    const auto r = restrict_reachable(d.initials(), may, must);
    const std::size_t k = d.alphabet().size();
    if (prefer_words(k, r.primary.size(), moves_in(r.primary) + moves_in(r.secondary)))
        return std::make_unique<DmtsAcceptor>(k, r);
    return std::make_unique<SparseDmtsAcceptor>(k, r);
}

std::unique_ptr<Acceptor> naa_acceptor(const Naa& n)
{
    std::vector<Family> tran;
    for (StateId s = 0; s < n.size(); ++s)
        tran.push_back(n.tran(s));
    const auto r = restrict_reachable(n.initials(), tran, {});
    const std::size_t k = n.alphabet().size();
    if (prefer_words(k, r.primary.size(), moves_in(r.primary)))
        return std::make_unique<NaaAcceptor>(k, r);
    return std::make_unique<SparseNaaAcceptor>(k, r);
}

} // namespace

std::unique_ptr<Acceptor> make_acceptor(const Spec& s)
{
    const std::size_t k = alphabet_of(s).size();
    if (k > 8)
        return std::make_unique<GeneralAcceptor>(s);
    return std::visit(
        [&](const auto& x) -> std::unique_ptr<Acceptor> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, HmlDecl>)
                return std::make_unique<HmlAcceptor>(x);
            else if constexpr (std::is_same_v<T, Lts>)
                return dmts_acceptor(lts_as_dmts(x));
            else if constexpr (std::is_same_v<T, Dmts>)
                return dmts_acceptor(x);
            else
                return naa_acceptor(x);
        },
        s);
}

namespace {
void visit_bound(const EnumBound& b, const std::function<bool(const PackedLts&)>& fn);
}

std::vector<PackedLts> impl_set(const Spec& s, const EnumBound& b)
{
    require_same_alphabet(alphabet_of(s), b.alphabet);
    auto acc = make_acceptor(s);
    std::vector<PackedLts> out;
    visit_bound(b, [&](const PackedLts& p) {
        if (acc->accepts(p))
            out.push_back(p);
        return true;
    });
    return out;
}

namespace {

/// Visits the bound through the cached list when it is small enough to store.
void visit_bound(const EnumBound& b, const std::function<bool(const PackedLts&)>& fn)
{
    if (raw_encodings(b.max_states, b.alphabet.size()) > (std::uint64_t{1} << 24)) {
        for_each_lts(b, fn);
        return;
    }
    for (const auto& p : enum_packed(b))
        if (!fn(p))
            return;
}

std::optional<Lts> first_difference(const Spec& s1, const Spec& s2, const EnumBound& b,
                                    bool both_ways)
{
    require_same_alphabet(alphabet_of(s1), b.alphabet);
    require_same_alphabet(alphabet_of(s2), b.alphabet);
    auto a1 = make_acceptor(s1);
    auto a2 = make_acceptor(s2);
    std::optional<PackedLts> witness;
    visit_bound(b, [&](const PackedLts& p) {
        bool in1 = a1->accepts(p);
        if (!in1 && !both_ways)
            return true;
        if (in1 != a2->accepts(p)) {
            witness = p;
            return false;
        }
        return true;
    });
    if (!witness)
        return std::nullopt;
    return unpack(*witness, b.alphabet);
}

} // namespace

std::optional<Lts> tr_counterexample(const Spec& s1, const Spec& s2, const EnumBound& b)
{
    return first_difference(s1, s2, b, false);
}

bool tr_bounded(const Spec& s1, const Spec& s2, const EnumBound& b)
{
    return !tr_counterexample(s1, s2, b);
}

std::optional<Lts> treq_counterexample(const Spec& s1, const Spec& s2, const EnumBound& b)
{
    return first_difference(s1, s2, b, true);
}

bool treq_bounded(const Spec& s1, const Spec& s2, const EnumBound& b)
{
    return !treq_counterexample(s1, s2, b);
}

// ---------------------------------------------------------------------------
// Generators

Alphabet letters(std::size_t k)
{
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < k; ++i)
        symbols.emplace_back(1, static_cast<char>('a' + i));
    return Alphabet(std::move(symbols));
}

namespace {

bool coin(std::mt19937_64& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> state_names(const char* prefix, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

std::vector<StateId> random_initials(std::mt19937_64& rng, std::size_t n)
{
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    std::vector<StateId> out;
    if (r < 0.05)
        return out;
    out.push_back(static_cast<StateId>(pick(rng, 0, n - 1)));
    if (r > 0.75 && n > 1)
        out.push_back(static_cast<StateId>(pick(rng, 0, n - 1)));
    return out;
}

std::vector<MoveSet> random_moves(std::mt19937_64& rng, std::size_t n, std::size_t k, double p)
{
    std::vector<MoveSet> out(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t t = 0; t < n; ++t)
                if (coin(rng, p))
                    out[s].push_back({static_cast<ActionId>(a), static_cast<StateId>(t)});
    return out;
}

} // namespace

Lts gen_lts(std::mt19937_64& rng, const GenParams& p)
{
    const auto n = pick(rng, 1, p.max_states);
    return Lts(letters(p.actions), state_names("q", n), 0, random_moves(rng, n, p.actions, 0.3));
}

Dmts gen_mts(std::mt19937_64& rng, const GenParams& p)
{
    const auto n = pick(rng, 1, p.max_states);
    auto may = random_moves(rng, n, p.actions, 0.3);
    std::vector<Family> must(n);
    for (std::size_t s = 0; s < n; ++s)
        for (auto m : may[s])
            if (coin(rng, 0.5))
                must[s].push_back({m});
    return Dmts(letters(p.actions), state_names("s", n), {0}, std::move(may), std::move(must));
}

Dmts gen_dmts(std::mt19937_64& rng, const GenParams& p)
{
    const auto n = pick(rng, 1, p.max_states);
    auto may = random_moves(rng, n, p.actions, 0.3);
    std::vector<Family> must(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (may[s].empty()) {
            if (coin(rng, 0.05))
                must[s].push_back({});
            continue;
        }
        const auto count = pick(rng, 0, 2);
        for (std::size_t c = 0; c < count; ++c) {
            MoveSet set;
            const auto size = pick(rng, 1, std::min<std::size_t>(2, may[s].size()));
            for (std::size_t e = 0; e < size; ++e)
                set.push_back(may[s][pick(rng, 0, may[s].size() - 1)]);
            must[s].push_back(std::move(set));
        }
    }
    return Dmts(letters(p.actions), state_names("s", n), random_initials(rng, n), std::move(may),
                std::move(must));
}

Naa gen_naa(std::mt19937_64& rng, const GenParams& p)
{
    const auto n = pick(rng, 1, p.max_states);
    std::vector<Family> tran(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto count = coin(rng, 0.1) ? 0 : pick(rng, 1, 3);
        for (std::size_t c = 0; c < count; ++c)
            tran[s].push_back(random_moves(rng, 1, p.actions, 0.0).front());
        for (auto& m : tran[s])
            for (std::size_t a = 0; a < p.actions; ++a)
                for (std::size_t t = 0; t < n; ++t)
                    if (coin(rng, 0.25))
                        m.push_back({static_cast<ActionId>(a), static_cast<StateId>(t)});
    }
    return Naa(letters(p.actions), state_names("s", n), random_initials(rng, n), std::move(tran));
}

namespace {

hml::Formula random_formula(std::mt19937_64& rng, std::size_t depth, std::size_t budget,
                            const std::vector<std::string>& vars, const Alphabet& sigma)
{
    using namespace hml;
    auto leaf = [&]() -> Formula {
        auto r = pick(rng, 0, 5);
        if (r == 0)
            return tt();
        if (r == 1)
            return ff();
        return var(vars[pick(rng, 0, vars.size() - 1)]);
    };
    const auto action = [&] { return sigma.name(static_cast<ActionId>(pick(rng, 0, sigma.size() - 1))); };
    auto r = pick(rng, 0, 9);
    if (r <= 1 || (depth == 0 && budget == 0))
        return leaf();
    if (depth == 0 || (r <= 5 && budget > 0)) {
        if (budget == 0)
            return leaf();
        auto l = random_formula(rng, depth, budget / 2, vars, sigma);
        auto rr = random_formula(rng, depth, budget / 2, vars, sigma);
        return (r % 2) ? conj(l, rr) : disj(l, rr);
    }
    auto body = random_formula(rng, depth - 1, budget, vars, sigma);
    return (r % 2) ? diamond(action(), body) : box(action(), body);
}

} // namespace

HmlDecl gen_hml(std::mt19937_64& rng, const GenParams& p)
{
    const auto sigma = letters(p.actions);
    const auto n = pick(rng, 1, p.max_vars);
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i)
        vars.emplace_back(1, static_cast<char>('X' + i % 3));
    for (std::size_t i = 3; i < n; ++i)
        vars[i] += std::to_string(i);
    std::vector<hml::Formula> bodies;
    for (std::size_t i = 0; i < n; ++i)
        bodies.push_back(random_formula(rng, p.max_depth, 4, vars, sigma));
    std::vector<std::string> initials{vars[0]};
    if (n > 1 && coin(rng, 0.2))
        initials.push_back(vars[1]);
    return HmlDecl(sigma, vars, std::move(initials), std::move(bodies));
}

Spec gen_random(Formalism kind, const GenParams& p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    switch (kind) {
    case Formalism::lts:
        return gen_lts(rng, p);
    case Formalism::mts:
        return gen_mts(rng, p);
    case Formalism::dmts:
        return gen_dmts(rng, p);
    case Formalism::naa:
        return gen_naa(rng, p);
    case Formalism::hml:
        return gen_hml(rng, p);
    }
    return gen_lts(rng, p);
}

} // namespace modspec

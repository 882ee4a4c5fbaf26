#include "doctest.h"
#include "support/fixtures.hpp"

#include "modspec/oracle.hpp"

#include <set>

using namespace modspec;
using namespace fixtures;

namespace {

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

bool isomorphic(const std::set<Triple>& x, const std::set<Triple>& y, std::size_t n)
{
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = i;
    do {
        std::set<Triple> mapped;
        for (auto [s, a, t] : x)
            mapped.insert({p[s], a, p[t]});
        if (mapped == y)
            return true;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return false;
}

/// Counts isomorphism classes by pairwise comparison of explicit triple sets.
std::size_t naive_class_count(std::size_t max_states, std::size_t k)
{
    std::size_t total = 0;
    for (std::size_t n = 1; n <= max_states; ++n) {
        std::vector<Triple> all;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t t = 0; t < n; ++t)
                    all.push_back({s, a, t});
        std::vector<std::set<Triple>> classes;
        for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
            std::set<Triple> x;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (mask >> i & 1)
                    x.insert(all[i]);
            std::set<std::size_t> seen{0};
            std::vector<std::size_t> stack{0};
            while (!stack.empty()) {
                auto s = stack.back();
                stack.pop_back();
                for (auto [u, a, t] : x)
                    if (u == s && seen.insert(t).second)
                        stack.push_back(t);
            }
            if (seen.size() != n)
                continue;
            bool fresh = true;
            for (const auto& c : classes)
                if (isomorphic(x, c, n)) {
                    fresh = false;
                    break;
                }
            if (fresh)
                classes.push_back(x);
        }
        total += classes.size();
    }
    return total;
}

std::vector<Spec> random_specs(std::size_t count, std::uint64_t seed)
{
    std::vector<Spec> out;
    const Formalism kinds[] = {Formalism::lts, Formalism::mts, Formalism::dmts, Formalism::naa,
                               Formalism::hml};
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(gen_random(kinds[i % 5], GenParams{}, seed + i));
    return out;
}

} // namespace

TEST_CASE("enumeration counts isomorphism classes of reachable systems")
{
    CHECK(enum_packed(EnumBound{1, Alphabet({"a"})}).size() == 2);
    CHECK(enum_packed(EnumBound{1, ab()}).size() == 4);
    CHECK(enum_packed(EnumBound{2, Alphabet({"a"})}).size() == 10);
    CHECK(enum_packed(EnumBound{2, ab()}).size() == naive_class_count(2, 2));
    CHECK(enum_packed(EnumBound{3, Alphabet({"a"})}).size() == naive_class_count(3, 1));
}

TEST_CASE("canonical form is a fixed point on enumerated systems")
{
    for (const auto& p : enum_packed(EnumBound{3, Alphabet({"a"})}))
        CHECK(canonical(unpack(p, Alphabet({"a"}))) == p);
    for (const auto& p : enum_packed(EnumBound{2, ab()}))
        CHECK(canonical(unpack(p, ab())) == p);
}

TEST_CASE("canonical form ignores state names and unreachable states")
{
    auto x = LtsBuilder(ab()).initial("z").trans("z", "a", "y").trans("y", "b", "z").state("w").build();
    auto y = LtsBuilder(ab()).initial("p").trans("p", "a", "q").trans("q", "b", "p").build();
    CHECK(canonical(x) == canonical(y));
    CHECK(canonical(x).states == 2);
    CHECK_FALSE(canonical(x) == canonical(loops(ab(), {"a"})));
}

TEST_CASE("enumeration refuses oversized bounds")
{
    CHECK_THROWS_AS(for_each_lts(EnumBound{3, intro_alphabet()}, [](const PackedLts&) { return false; }),
                    BoundTooLarge);
    CHECK_THROWS_AS(
        for_each_lts(EnumBound{4, intro_alphabet(), true}, [](const PackedLts&) { return false; }),
        BoundTooLarge);
    std::size_t seen = 0;
    for_each_lts(EnumBound{3, intro_alphabet(), true}, [&](const PackedLts&) { return ++seen < 5; });
    CHECK(seen == 5);
}

TEST_CASE("acceptors agree with the refinement check")
{
    auto check_all = [](const std::vector<Spec>& specs, const EnumBound& b) {
        const auto impls = enum_lts(b);
        const auto& packed = enum_packed(b);
        for (const auto& s : specs) {
            auto acc = make_acceptor(s);
            for (std::size_t i = 0; i < impls.size(); ++i)
                REQUIRE(acc->accepts(packed[i]) == implements(impls[i], s));
        }
    };
    check_all(random_specs(60, 1000), EnumBound{2, ab()});
    check_all({invariance_hml(), invariance_naa(), invariance_dmts()}, EnumBound{3, ab()});
    check_all({until_hml(), until_naa(), until_dmts()}, EnumBound{2, abc()});
}

TEST_CASE("bounded thorough refinement on the invariance property")
{
    const EnumBound b{3, ab()};
    CHECK(treq_bounded(invariance_hml(), invariance_naa(), b));
    CHECK(treq_bounded(invariance_naa(), invariance_dmts(), b));
    CHECK(tr_bounded(lts_as_dmts(loops(ab(), {"a"})), invariance_dmts(), b));
    auto cex = tr_counterexample(top_naa(ab()), invariance_naa(), b);
    REQUIRE(cex);
    CHECK_FALSE(implements(*cex, invariance_naa()));
    CHECK(impl_set(invariance_naa(), EnumBound{1, ab()}).size() == 2);
    CHECK(impl_set(bottom_naa(ab()), b).empty());
    CHECK(impl_set(top_naa(ab()), b).size() == enum_packed(b).size());
}

TEST_CASE("random generators respect their parameters")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto m = gen_mts(rng, GenParams{});
        CHECK_NOTHROW(mts_check(m));
        CHECK(m.size() <= 4);
        auto h = gen_hml(rng, GenParams{});
        CHECK(h.size() <= 3);
        for (std::size_t x = 0; x < h.size(); ++x)
            CHECK(hml::depth(h.body(x)) <= 3);
        CHECK(gen_naa(rng, GenParams{}).alphabet() == ab());
    }
    auto a = gen_random(Formalism::dmts, GenParams{}, 42);
    auto b = gen_random(Formalism::dmts, GenParams{}, 42);
    CHECK(std::get<Dmts>(a) == std::get<Dmts>(b));
}

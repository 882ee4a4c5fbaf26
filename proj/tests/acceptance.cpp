// Acceptance suite: one PASS/FAIL line per criterion.

#include "modspec/algebra.hpp"
#include "modspec/dot.hpp"
#include "modspec/format.hpp"
#include "modspec/oracle.hpp"
#include "modspec/quotient.hpp"
#include "modspec/translate.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <optional>
#include <random>
#include <sstream>

using namespace modspec;

namespace {

// Limits and sample sizes.
constexpr double corpus_check_seconds = 1.0;
constexpr double translation_seconds = 600.0;
constexpr double naa_quotient_seconds = 900.0;
constexpr int translation_samples = 100;
constexpr int lattice_samples = 100;
constexpr int single_initial_samples = 100;
constexpr int composition_samples = 50;
constexpr int monotonicity_samples = 50;
constexpr int quotient_samples = 50;
constexpr int pruning_samples = 100;
constexpr std::size_t implementation_bound = 3;

const std::filesystem::path corpus_dir = MODSPEC_CORPUS_DIR;
const std::filesystem::path golden_dir = MODSPEC_GOLDEN_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw std::runtime_error("cannot read " + p.string());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Document load(const std::string& name)
{
    return parse_document(slurp(corpus_dir / name));
}

std::vector<std::filesystem::path> corpus_files()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir))
        out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

/// The largest bound the oracle handles for this alphabet within about a
/// minute: 3 states up to three actions, 2 states for four.
EnumBound bound_for(const Alphabet& sigma)
{
    if (sigma.size() <= 2)
        return {implementation_bound, sigma};
    if (sigma.size() == 3)
        return {implementation_bound, sigma, true};
    return {2, sigma};
}

struct Verdict {
    bool pass = true;
    std::string detail;
};

/// Counts failures and keeps the first few descriptions.
class Tally {
public:
    void check(bool ok, const std::string& what)
    {
        ++checks_;
        if (ok)
            return;
        ++failures_;
        if (examples_.size() < 3)
            examples_.push_back(what);
    }
    [[nodiscard]] int failures() const { return failures_; }
    [[nodiscard]] int checks() const { return checks_; }
    [[nodiscard]] std::string summary() const
    {
        std::string s = std::to_string(failures_) + " failures in " + std::to_string(checks_)
                        + " checks";
        for (const auto& e : examples_)
            s += "; e.g. " + e;
        return s;
    }

private:
    int checks_ = 0;
    int failures_ = 0;
    std::vector<std::string> examples_;
};

Dmts to_dmts(const Document& d)
{
    switch (d.kind) {
    case DocKind::lts:
        return lts_as_dmts(std::get<Lts>(d.spec));
    case DocKind::naa:
        return bd(std::get<Naa>(d.spec));
    case DocKind::hml:
        return hd(normalize(std::get<HmlDecl>(d.spec)));
    default:
        return std::get<Dmts>(d.spec);
    }
}

Naa to_naa(const Spec& s)
{
    return std::visit(
        [](const auto& v) -> Naa {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lts>)
                return lts_as_naa(v);
            else if constexpr (std::is_same_v<T, Dmts>)
                return db(v);
            else if constexpr (std::is_same_v<T, Naa>)
                return v;
            else
                return db(hd(normalize(v)));
        },
        s);
}

// ---------------------------------------------------------------------------
// 1. Corpus verdicts

Verdict corpus_fidelity()
{
    const auto lts_ab = [](std::initializer_list<const char*> loops) {
        LtsBuilder b(Alphabet({"a", "b"}));
        b.initial("i");
        for (const char* a : loops)
            b.trans("i", a, "i");
        return b.build();
    };

    std::vector<std::pair<std::string, std::function<bool()>>> checks = {
        {"request/grant implementation refines the DMTS",
         [] {
             const auto impl = std::get<Lts>(load("intro_impl.lts").spec);
             const auto spec = std::get<Dmts>(load("intro_spec.dmts").spec);
             return refines(lts_as_dmts(impl), spec) && implements(impl, spec)
                    && !refines(spec, lts_as_dmts(impl));
         }},
        {"request/grant implementation satisfies the formula",
         [] {
             const auto impl = std::get<Lts>(load("intro_impl.lts").spec);
             const auto formula = std::get<HmlDecl>(load("intro.hml").spec);
             return hml_check(impl, formula).holds && implements(impl, formula);
         }},
        {"invariance: three forms agree and demand an a-move",
         [&] {
             auto naa = std::get<Naa>(load("invariance.naa").spec);
             auto dmts = std::get<Dmts>(load("invariance.dmts").spec);
             auto hml = std::get<HmlDecl>(load("invariance.hml").spec);
             bool ok = mreq(db(dmts), naa);
             for (const auto& l : {lts_ab({"a"}), lts_ab({"a", "b"})})
                 ok = ok && implements(l, naa) && implements(l, dmts) && implements(l, hml);
             for (const auto& l : {lts_ab({}), lts_ab({"b"})})
                 ok = ok && !implements(l, naa) && !implements(l, dmts) && !implements(l, hml);
             return ok;
         }},
        {"until: two initial states, a* then b, three forms agree",
         [] {
             auto naa = std::get<Naa>(load("until.naa").spec);
             auto dmts = std::get<Dmts>(load("until.dmts").spec);
             auto hml = std::get<HmlDecl>(load("until.hml").spec);
             const Alphabet abc({"a", "b", "c"});
             auto aab = LtsBuilder(abc)
                            .initial("p0")
                            .trans("p0", "a", "p1")
                            .trans("p1", "a", "p2")
                            .trans("p2", "b", "p3")
                            .build();
             auto aac = LtsBuilder(abc)
                            .initial("p0")
                            .trans("p0", "a", "p1")
                            .trans("p1", "a", "p2")
                            .trans("p2", "c", "p3")
                            .build();
             auto a_forever = LtsBuilder(abc).initial("p").trans("p", "a", "p").build();
             bool ok = dmts.initials().size() == 2;
             for (const Spec& s : {Spec(naa), Spec(dmts), Spec(hml)})
                 ok = ok && implements(aab, s) && implements(a_forever, s) && !implements(aac, s);
             return ok && treq_bounded(naa, dmts, EnumBound{2, abc})
                    && treq_bounded(naa, hml, EnumBound{2, abc});
         }},
        {"Example 2: translation has two initial states and the same implementations",
         [] {
             auto hml = std::get<HmlDecl>(load("example2.hml").spec);
             auto d = hd(normalize(hml));
             return d.initials().size() == 2 && treq_bounded(hml, d, bound_for(hml.alphabet()));
         }},
        {"nondeterministic MTS quotient: composition with the divisor is equivalent to the dividend",
         [] {
             auto s = mts_check(std::get<Dmts>(load("fig4_S.mts").spec));
             auto t = mts_check(std::get<Dmts>(load("fig4_T.mts").spec));
             auto q = quotient_mts(s, t);
             return mreq(compose_naa(db(t.dmts()), db(q)), db(s.dmts()));
         }},
    };

    Verdict v;
    int passed = 0;
    double slowest = 0;
    for (const auto& [name, fn] : checks) {
        const auto start = Clock::now();
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            v.detail += " [" + name + " threw " + e.what() + "]";
        }
        const double t = seconds_since(start);
        slowest = std::max(slowest, t);
        if (t >= corpus_check_seconds) {
            ok = false;
            v.detail += " [" + name + " took " + std::to_string(t) + " s]";
        }
        if (!ok && v.detail.find(name) == std::string::npos)
            v.detail += " [failed: " + name + "]";
        passed += ok;
    }
    v.pass = passed == static_cast<int>(checks.size());
    std::ostringstream d;
    d << passed << "/" << checks.size() << " checks, slowest " << std::fixed
      << std::setprecision(3) << slowest << " s" << v.detail;
    v.detail = d.str();
    return v;
}

// ---------------------------------------------------------------------------
// 2. Translations preserve implementations

/// The translated forms of one specification, each labelled.
std::vector<std::pair<std::string, Spec>> translated_forms(const Spec& s)
{
    std::vector<std::pair<std::string, Spec>> out;
    Naa n = to_naa(s);
    if (std::holds_alternative<Naa>(s))
        out.push_back({"bd", bd(n)});
    else
        out.push_back({"db", n});
    auto h = bh(n);
    out.push_back({"bh", h});
    out.push_back({"hd(normalize(bh))", hd(normalize(h))});
    if (const auto* decl = std::get_if<HmlDecl>(&s))
        out.push_back({"hd(normalize)", hd(normalize(*decl))});
    return out;
}

/// Visits every LTS within the bound, from the cache when it fits.
void visit(const EnumBound& b, const std::function<void(const PackedLts&)>& fn)
{
    if (b.allow_exponential) {
        for_each_lts(b, [&](const PackedLts& p) {
            fn(p);
            return true;
        });
        return;
    }
    for (const auto& p : enum_packed(b))
        fn(p);
}

/// Source specifications sharing one enumeration bound, each with
/// acceptors for itself and for its translated forms.
struct TranslationGroup {
    EnumBound bound;
    struct Entry {
        std::string label;
        std::unique_ptr<Acceptor> source;
        std::vector<std::pair<std::string, std::unique_ptr<Acceptor>>> forms;
        std::vector<std::size_t> disagreements;
    };
    std::vector<Entry> entries;
};

Verdict translations()
{
    const auto start = Clock::now();
    Tally tally;
    int guarded = 0, redrawn = 0;
    std::uint64_t queries = 0;
    std::vector<std::string> reduced;
    std::map<std::vector<std::string>, TranslationGroup> streamed;

    const auto report = [&](const TranslationGroup::Entry& e) {
        for (std::size_t i = 0; i < e.forms.size(); ++i)
            tally.check(e.disagreements[i] == 0, e.label + " vs " + e.forms[i].first + " on "
                                                     + std::to_string(e.disagreements[i]) + " systems");
    };
    const auto evaluate = [&](TranslationGroup::Entry& e, const PackedLts& p) {
        const bool in = e.source->accepts(p);
        for (std::size_t i = 0; i < e.forms.size(); ++i)
            e.disagreements[i] += e.forms[i].second->accepts(p) != in;
        queries += 1 + e.forms.size();
    };
    // False when a translation hits a size guard.
    const auto add = [&](const std::string& label, const Spec& s) {
        std::vector<std::pair<std::string, Spec>> forms;
        try {
            forms = translated_forms(s);
        } catch (const SizeGuard&) {
            return false;
        }
        const auto b = bound_for(alphabet_of(s));
        if (b.max_states < implementation_bound)
            reduced.push_back(label);
        TranslationGroup::Entry e{label, make_acceptor(s), {}, {}};
        for (const auto& [name, f] : forms)
            e.forms.emplace_back(name, make_acceptor(f));
        e.disagreements.assign(e.forms.size(), 0);
        if (!b.allow_exponential) {
            for (const auto& p : enum_packed(b))
                evaluate(e, p);
            report(e);
            return true;
        }
        std::vector<std::string> key;
        for (std::size_t a = 0; a < b.alphabet.size(); ++a)
            key.push_back(b.alphabet.name(a));
        auto& group = streamed[key];
        group.bound = b;
        group.entries.push_back(std::move(e));
        return true;
    };

    for (const auto& p : corpus_files())
        if (!add(p.filename().string(), parse_document(slurp(p)).spec)) {
            ++guarded;
            tally.check(false, p.filename().string() + " hit a size guard");
        }
    const GenParams params{4, 2, 3, 3};
    const std::pair<Formalism, const char*> kinds[] = {
        {Formalism::mts, "mts"}, {Formalism::dmts, "dmts"}, {Formalism::naa, "naa"}, {Formalism::hml, "hml"}};
    for (const auto& [kind, name] : kinds)
        for (std::uint64_t seed = 1000, done = 0; done < translation_samples; ++seed) {
            if (add(std::string(name) + " seed " + std::to_string(seed), gen_random(kind, params, seed)))
                ++done;
            else
                ++redrawn;
        }

    for (auto& [names, group] : streamed) {
        visit(group.bound, [&](const PackedLts& p) {
            for (auto& e : group.entries)
                evaluate(e, p);
        });
        for (const auto& e : group.entries)
            report(e);
    }

    const double t = seconds_since(start);
    Verdict v;
    v.pass = tally.failures() == 0 && guarded == 0 && reduced.empty() && t < translation_seconds;
    std::ostringstream d;
    d << tally.summary() << ", " << queries << " membership queries, " << redrawn
      << " random samples redrawn after size guards, " << std::fixed << std::setprecision(1) << t
      << " s (limit " << translation_seconds << " s)";
    if (!reduced.empty()) {
        d << "; only up to 2 states for";
        for (const auto& r : reduced)
            d << " " << r;
        d << " (four actions: 3 states would mean about 3.4e10 systems)";
    }
    v.detail = d.str();
    return v;
}

// ---------------------------------------------------------------------------
// 3. Conjunction and disjunction

template <class S, class And, class Or, class Gen>
void lattice_laws(Tally& tally, int& skipped, const std::string& label, Gen gen, And conj, Or disj)
{
    const EnumBound b{implementation_bound, Alphabet({"a", "b"})};
    std::mt19937_64 rng(label == "naa" ? 301 : 302);
    for (int done = 0; done < lattice_samples;) {
        S s1 = gen(rng), s2 = gen(rng), s3 = gen(rng);
        try {
            const auto i1 = impl_set(s1, b), i2 = impl_set(s2, b);
            std::vector<PackedLts> uni, inter;
            std::set_union(i1.begin(), i1.end(), i2.begin(), i2.end(), std::back_inserter(uni));
            std::set_intersection(i1.begin(), i1.end(), i2.begin(), i2.end(),
                                  std::back_inserter(inter));
            const auto n = label + " sample " + std::to_string(done);
            tally.check(impl_set(disj(s1, s2), b) == uni, n + ": impl of disjunction");
            tally.check(impl_set(conj(s1, s2), b) == inter, n + ": impl of conjunction");
            tally.check(mreq(conj(s1, s1), s1), n + ": conjunction idempotent");
            tally.check(mreq(disj(s1, s1), s1), n + ": disjunction idempotent");
            tally.check(mreq(conj(s1, s2), conj(s2, s1)), n + ": conjunction commutative");
            tally.check(mreq(disj(s1, s2), disj(s2, s1)), n + ": disjunction commutative");
            tally.check(mreq(conj(s1, disj(s2, s3)), disj(conj(s1, s2), conj(s1, s3))),
                        n + ": conjunction distributes");
            tally.check(mreq(disj(s1, conj(s2, s3)), conj(disj(s1, s2), disj(s1, s3))),
                        n + ": disjunction distributes");
            tally.check(refines(s1, conj(s2, s3)) == (refines(s1, s2) && refines(s1, s3)),
                        n + ": conjunction is a greatest lower bound");
            tally.check(refines(disj(s1, s2), s3) == (refines(s1, s3) && refines(s2, s3)),
                        n + ": disjunction is a least upper bound");
            ++done;
        } catch (const SizeGuard&) {
            ++skipped;
        }
    }
}

Verdict lattice()
{
    Tally tally;
    int skipped = 0;
    const GenParams small{3, 2, 3, 3};
    lattice_laws<Naa>(
        tally, skipped, "naa", [&](std::mt19937_64& r) { return gen_naa(r, small); },
        [](const Naa& a, const Naa& b) { return and_naa(a, b); },
        [](const Naa& a, const Naa& b) { return or_naa(a, b); });
    lattice_laws<Dmts>(
        tally, skipped, "dmts", [&](std::mt19937_64& r) { return gen_dmts(r, small); },
        [](const Dmts& a, const Dmts& b) { return and_dmts(a, b); },
        [](const Dmts& a, const Dmts& b) { return or_dmts(a, b); });
    return {tally.failures() == 0,
            tally.summary() + ", " + std::to_string(skipped) + " samples redrawn after size guards"};
}

// ---------------------------------------------------------------------------
// 4. Single initial state and composition

Verdict composition()
{
    Tally single, laws, mono;
    int multi_initial_failures = 0;
    std::mt19937_64 rng(401);
    for (int i = 0; i < single_initial_samples; ++i) {
        auto n = gen_naa(rng, GenParams{});
        const bool ok = mreq(single_initial(n), n);
        single.check(ok, "sample " + std::to_string(i) + " with "
                             + std::to_string(n.initials().size()) + " initial states");
        multi_initial_failures += !ok && n.initials().size() > 1;
    }

    const GenParams small{3, 2, 3, 3};
    const auto unit = lts_as_naa(unit_lts(Alphabet({"a", "b"})));
    for (int i = 0; i < composition_samples; ++i) {
        auto a = gen_naa(rng, small), b = gen_naa(rng, small), c = gen_naa(rng, small);
        const auto n = "sample " + std::to_string(i);
        laws.check(mreq(compose_naa(a, unit), a), n + ": unit");
        laws.check(mreq(compose_naa(a, b), compose_naa(b, a)), n + ": commutative");
        laws.check(mreq(compose_naa(compose_naa(a, b), c), compose_naa(a, compose_naa(b, c))),
                   n + ": associative");
    }

    for (int done = 0; done < monotonicity_samples;) {
        auto s3 = gen_naa(rng, small), s4 = gen_naa(rng, small);
        Naa s1 = and_naa(s3, gen_naa(rng, small));
        Naa s2 = [&] {
            auto w = witness(prune_naa(s4));
            return w ? lts_as_naa(*w) : and_naa(s4, gen_naa(rng, small));
        }();
        if (!refines(s1, s3) || !refines(s2, s4)) {
            mono.check(false, "constructed pair does not refine");
            continue;
        }
        mono.check(refines(compose_naa(s1, s2), compose_naa(s3, s4)),
                   "pair " + std::to_string(done));
        ++done;
    }

    Verdict v;
    v.pass = single.failures() == 0 && laws.failures() == 0 && mono.failures() == 0;
    v.detail = "single initial: " + single.summary() + " (" + std::to_string(multi_initial_failures)
               + " of the failures have several initial states); composition laws: "
               + laws.summary() + "; monotonicity: " + mono.summary();
    return v;
}

// ---------------------------------------------------------------------------
// 5 and 6. Quotients

struct QuotientRun {
    Tally adjunction;
    Tally maximality;
    int redrawn = 0;
    int with_implementations = 0;
};

template <class MakePair, class Quotient, class LeftSide, class RightSide, class Maximal>
QuotientRun adjunction(std::uint64_t seed, MakePair make, Quotient quotient, LeftSide lhs,
                       RightSide rhs, Maximal maximal)
{
    QuotientRun run;
    const EnumBound b{implementation_bound, Alphabet({"a", "b"})};
    std::vector<Lts> candidates;
    for (const auto& p : enum_packed(b))
        candidates.push_back(unpack(p, b.alphabet));
    std::mt19937_64 rng(seed);
    for (int done = 0; done < quotient_samples;) {
        auto [s, t] = make(rng);
        std::optional<decltype(quotient(s, t))> q;
        try {
            q = quotient(s, t);
        } catch (const SizeGuard&) {
            ++run.redrawn;
            continue;
        }
        int agreeing_impls = 0;
        for (const auto& x : candidates) {
            const bool left = lhs(x, *q);
            run.adjunction.check(left == rhs(x, s, t),
                                 "sample " + std::to_string(done) + " on a "
                                     + std::to_string(x.size()) + "-state system");
            agreeing_impls += left;
        }
        run.with_implementations += agreeing_impls > 0;
        if (!q->initials().empty())
            run.maximality.check(maximal(*q, s, t), "sample " + std::to_string(done));
        ++done;
    }
    return run;
}

Verdict naa_quotient()
{
    const auto start = Clock::now();
    const GenParams small{3, 2, 3, 3};
    auto run = adjunction(
        501,
        [&](std::mt19937_64& r) { return std::pair{gen_naa(r, small), gen_naa(r, small)}; },
        [](const Naa& s, const Naa& t) { return quotient_naa(s, t); },
        [](const Lts& x, const Naa& q) { return refines(lts_as_naa(x), q); },
        [](const Lts& x, const Naa& s, const Naa& t) {
            return refines(compose_naa(lts_as_naa(x), t), s);
        },
        [](const Naa& q, const Naa& s, const Naa& t) { return refines(compose_naa(q, t), s); });
    const double secs = seconds_since(start);
    Verdict v;
    v.pass = run.adjunction.failures() == 0 && run.maximality.failures() == 0
             && secs < naa_quotient_seconds;
    std::ostringstream d;
    d << "adjunction: " << run.adjunction.summary() << "; maximality: " << run.maximality.summary()
      << "; " << run.with_implementations << " quotients with implementations, " << run.redrawn
      << " pairs redrawn after size guards, " << std::fixed << std::setprecision(1) << secs
      << " s (limit " << naa_quotient_seconds << " s)";
    v.detail = d.str();
    return v;
}

Verdict mts_quotient()
{
    const GenParams small{3, 2, 3, 3};
    auto run = adjunction(
        601,
        [&](std::mt19937_64& r) { return std::pair{gen_mts(r, small), gen_mts(r, small)}; },
        [](const Dmts& s, const Dmts& t) { return quotient_mts(mts_check(s), mts_check(t)); },
        [](const Lts& x, const Dmts& q) { return refines(lts_as_dmts(x), q); },
        [](const Lts& x, const Dmts& s, const Dmts& t) {
            return refines(compose_naa(db(t), lts_as_naa(x)), db(s));
        },
        [](const Dmts& q, const Dmts& s, const Dmts& t) {
            return refines(compose_naa(db(t), db(q)), db(s));
        });

    Tally figure;
    auto s = mts_check(std::get<Dmts>(load("fig4_S.mts").spec));
    auto t = mts_check(std::get<Dmts>(load("fig4_T.mts").spec));
    QuotientOptions raw_options;
    raw_options.prune = false;
    auto raw = quotient_mts(s, t, raw_options);
    std::vector<std::string> removed;
    for (auto x : inconsistent_states(raw))
        removed.push_back(raw.name(x));
    figure.check(removed == std::vector<std::string>{"{s1/t1,s1/t2}", "{s1/t2,s2/t1}"},
                 "pruned states differ from the narrative");
    auto q = quotient_mts(s, t);
    figure.check(mreq(compose_naa(db(t.dmts()), db(q)), db(s.dmts())),
                 "divisor composed with quotient is not equivalent to the dividend");
    const std::vector<std::string> names{"{s0/t0}", "{s1/t1,s2/t2}", "{s2/t1,s2/t2}", "{s3/t3}",
                                         "{}"};
    bool shape = q.states() == names;
    if (shape) {
        const StateId q0 = 0, good = 1, other = 2, end = 3, top = 4;
        shape = q.initials() == std::vector<StateId>{q0}
                && q.may(q0) == MoveSet{{0, good}, {0, other}, {1, top}, {2, top}}
                && q.must(q0) == Family{MoveSet{{0, good}}}
                && q.may(good) == MoveSet{{0, top}, {1, end}}
                && q.must(good) == Family{MoveSet{{1, end}}}
                && q.may(other) == MoveSet{{0, top}} && q.must(other).empty()
                && q.may(top) == MoveSet{{0, top}, {1, top}, {2, top}} && q.must(top).empty()
                && q.may(end) == q.may(top) && q.must(end).empty();
    }
    figure.check(shape, "pruned quotient differs from the figure");

    Verdict v;
    v.pass = run.adjunction.failures() == 0 && run.maximality.failures() == 0
             && figure.failures() == 0;
    v.detail = "adjunction: " + run.adjunction.summary() + "; maximality: "
               + run.maximality.summary() + "; " + std::to_string(run.with_implementations)
               + " quotients with implementations; figure: " + figure.summary();
    return v;
}

// ---------------------------------------------------------------------------
// 7. Pruning

Verdict pruning()
{
    Tally preserve, witnesses, agreement;
    const EnumBound b{implementation_bound, Alphabet({"a", "b"})};
    std::mt19937_64 rng(701);
    int nonempty_removals = 0, skipped = 0;
    for (int i = 0; i < pruning_samples; ++i) {
        const auto n = "sample " + std::to_string(i);
        auto naa = gen_naa(rng, GenParams{});
        auto p = prune_naa(naa);
        preserve.check(impl_set(p, b) == impl_set(naa, b), n + ": naa");
        if (locally_consistent(p)) {
            auto w = witness(p);
            witnesses.check(w && implements(*w, naa), n);
        } else {
            witnesses.check(impl_set(naa, b).empty() && !witness(p), n + ": inconsistent");
        }

        auto d = and_dmts(gen_dmts(rng, GenParams{3, 2, 3, 3}), gen_dmts(rng, GenParams{3, 2, 3, 3}));
        preserve.check(impl_set(prune_dmts(d), b) == impl_set(d, b), n + ": dmts");
        try {
            auto dn = db(d);
            std::vector<std::string> by_dmts, by_naa;
            for (auto s : inconsistent_states(d))
                by_dmts.push_back(d.name(s));
            for (auto s : inconsistent_states(dn))
                by_naa.push_back(dn.name(s));
            agreement.check(by_dmts == by_naa, n);
            nonempty_removals += !by_dmts.empty();
        } catch (const SizeGuard&) {
            ++skipped;
        }
    }
    Verdict v;
    v.pass = preserve.failures() == 0 && witnesses.failures() == 0 && agreement.failures() == 0;
    v.detail = "implementation sets: " + preserve.summary() + "; witnesses: " + witnesses.summary()
               + "; removed states: " + agreement.summary() + " (" + std::to_string(nonempty_removals)
               + " with removals, " + std::to_string(skipped) + " skipped by size guard)";
    return v;
}

// ---------------------------------------------------------------------------
// 8. Text format and DOT

Verdict frontend()
{
    Tally round_trip, dot;
    for (const auto& p : corpus_files()) {
        const auto text = slurp(p);
        const auto doc = parse_document(text);
        round_trip.check(serialize(doc) == text && parse_document(serialize(doc)) == doc,
                         p.filename().string());
        const auto golden = golden_dir / "dot" / (p.filename().string() + ".dot");
        dot.check(std::filesystem::exists(golden) && export_dot(doc.spec) == slurp(golden),
                  p.filename().string());
    }
    Verdict v;
    v.pass = round_trip.failures() == 0 && dot.failures() == 0 && round_trip.checks() > 0;
    v.detail = "round trip: " + round_trip.summary() + "; dot golden files: " + dot.summary();
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    // Optional arguments select criteria by number; none runs all of them.
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::stoul(argv[i]));
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"figure corpus verdicts", corpus_fidelity},
        {"translations preserve implementations", translations},
        {"conjunction and disjunction", lattice},
        {"single initial state and composition", composition},
        {"acceptance automaton quotient", naa_quotient},
        {"modal transition system quotient", mts_quotient},
        {"pruning", pruning},
        {"text format and dot export", frontend},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected.empty() && !selected.count(i + 1))
            continue;
        const auto start = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << "  "
                  << criteria[i].first << "  [" << v.detail << "]  (" << std::fixed
                  << std::setprecision(1) << seconds_since(start) << " s)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

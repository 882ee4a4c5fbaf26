#include "modspec/translate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace modspec {

// ---------------------------------------------------------------------------
// DMTS <-> NAA

Naa db(const Dmts& d)
{
    std::vector<Family> tran(d.size());
    for (StateId s = 0; s < d.size(); ++s) {
        const MoveSet& may = d.may(s);
        if (may.size() > 16)
            throw SizeGuard("db: state " + d.name(s) + " has " + std::to_string(may.size())
                            + " may-successors (limit 16)");
        const std::uint32_t k = static_cast<std::uint32_t>(may.size());
        // Each must-set as a bitmask over the may-successors.
        std::vector<std::uint32_t> musts;
        for (const auto& n : d.must(s)) {
            std::uint32_t mask = 0;
            for (auto m : n)
                mask |= 1u << (std::lower_bound(may.begin(), may.end(), m) - may.begin());
            musts.push_back(mask);
        }
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            if (!std::all_of(musts.begin(), musts.end(),
                             [&](std::uint32_t n) { return (n & mask) != 0; }))
                continue;
            MoveSet m;
            for (std::uint32_t b = 0; b < k; ++b)
                if (mask & (1u << b))
                    m.push_back(may[b]);
            tran[s].push_back(std::move(m));
        }
    }
    return Naa(d.alphabet(), d.states(), d.initials(), std::move(tran));
}

Dmts bd(const Naa& n)
{
    std::map<std::string, MoveSet> by_name;
    auto name_of = [&](const MoveSet& m) {
        auto name = move_set_string(n.alphabet(), n.states(), m);
        auto [it, inserted] = by_name.emplace(name, m);
        if (!inserted && it->second != m)
            throw InvariantViolation("bd: two admissible sets print as " + name);
        return name;
    };

    DmtsBuilder b(n.alphabet());
    for (StateId s = 0; s < n.size(); ++s)
        for (const auto& m : n.tran(s))
            b.state(name_of(m));
    for (auto s0 : n.initials())
        for (const auto& m : n.tran(s0))
            b.initial(name_of(m));
    for (const auto& [name, m] : std::map<std::string, MoveSet>(by_name)) {
        for (auto mv : m) {
            NamedMoveSet must;
            const auto& action = n.alphabet().name(mv.action);
            for (const auto& target : n.tran(mv.target)) {
                auto tname = name_of(target);
                must.insert({action, tname});
                b.may(name, action, tname);
            }
            b.must(name, std::move(must));
        }
    }
    return b.build();
}

HmlDecl bh(const Naa& n)
{
    using namespace hml;
    const auto& sigma = n.alphabet();
    std::vector<Formula> bodies;
    for (StateId s = 0; s < n.size(); ++s) {
        std::vector<Formula> disjuncts;
        for (const auto& m : n.tran(s)) {
            std::vector<Formula> parts;
            for (auto mv : m)
                parts.push_back(diamond(sigma.name(mv.action), var(n.name(mv.target))));
            for (ActionId a = 0; a < sigma.size(); ++a) {
                std::vector<Formula> targets;
                for (auto mv : m)
                    if (mv.action == a)
                        targets.push_back(var(n.name(mv.target)));
                parts.push_back(box(sigma.name(a), disj_all(targets)));
            }
            disjuncts.push_back(conj_all(parts));
        }
        bodies.push_back(disj_all(disjuncts));
    }
    std::vector<std::string> initials;
    for (auto s : n.initials())
        initials.push_back(n.name(s));
    return HmlDecl(sigma, n.states(), std::move(initials), std::move(bodies));
}

// ---------------------------------------------------------------------------
// Normal form

NormalFormDecl::NormalFormDecl(Alphabet alphabet, std::vector<std::string> vars,
                               std::vector<std::size_t> initials, std::vector<NormalBody> bodies)
    : alphabet_(std::move(alphabet)), vars_(std::move(vars)), initials_(std::move(initials)),
      bodies_(std::move(bodies))
{
    if (bodies_.size() != vars_.size())
        throw InvariantViolation("normal form needs one body per variable");
    auto check_var = [&](std::size_t x) {
        if (x >= vars_.size())
            throw InvariantViolation("normal form refers to an undeclared variable");
    };
    for (auto x : initials_)
        check_var(x);
    for (const auto& b : bodies_) {
        for (const auto& d : b.disjuncts) {
            if (d.boxes.size() != alphabet_.size())
                throw InvariantViolation("normal-form disjunct needs one box per action");
            for (auto y : d.boxes)
                check_var(y);
            for (auto [a, x] : d.diamonds) {
                if (a >= alphabet_.size())
                    throw InvariantViolation("normal form uses an action outside the alphabet");
                check_var(x);
            }
        }
    }
}

std::optional<std::size_t> NormalFormDecl::find(std::string_view name) const
{
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

HmlDecl NormalFormDecl::to_decl() const
{
    using namespace hml;
    auto ref = [&](std::size_t x) {
        if (bodies_[x].tt)
            return tt();
        if (bodies_[x].is_ff())
            return ff();
        return var(vars_[x]);
    };
    std::vector<bool> initial(vars_.size(), false);
    for (auto x : initials_)
        initial[x] = true;

    std::vector<std::string> names;
    std::vector<Formula> formulas;
    for (std::size_t x = 0; x < vars_.size(); ++x) {
        const auto& b = bodies_[x];
        if ((b.tt || b.is_ff()) && !initial[x])
            continue;
        Formula f;
        if (b.tt) {
            f = tt();
        } else {
            std::vector<Formula> disjuncts;
            for (const auto& d : b.disjuncts) {
                std::vector<Formula> parts;
                for (auto [a, t] : d.diamonds)
                    parts.push_back(diamond(alphabet_.name(a), ref(t)));
                for (ActionId a = 0; a < alphabet_.size(); ++a)
                    parts.push_back(box(alphabet_.name(a), ref(d.boxes[a])));
                disjuncts.push_back(conj_all(parts));
            }
            f = disj_all(disjuncts);
        }
        names.push_back(vars_[x]);
        formulas.push_back(f);
    }
    std::vector<std::string> inits;
    for (auto x : initials_)
        inits.push_back(vars_[x]);
    return HmlDecl(alphabet_, std::move(names), std::move(inits), std::move(formulas));
}

namespace {

using hml::Formula;
using hml::Kind;

// A conjunction of formulas, kept as a canonical set.
struct Key {
    bool ff = false;
    std::vector<Formula> items; // sorted by hml::Less, unique

    friend bool operator<(const Key& a, const Key& b)
    {
        if (a.ff != b.ff)
            return a.ff < b.ff;
        return std::lexicographical_compare(a.items.begin(), a.items.end(), b.items.begin(),
                                            b.items.end(), hml::Less{});
    }
};

void collect_conjuncts(const Formula& f, Key& k)
{
    switch (f->kind) {
    case Kind::tt:
        return;
    case Kind::ff:
        k.ff = true;
        return;
    case Kind::conj:
        collect_conjuncts(f->left, k);
        collect_conjuncts(f->right, k);
        return;
    default:
        k.items.push_back(f);
    }
}

void collect_disjuncts(const Formula& f, std::vector<Formula>& out)
{
    if (f->kind == Kind::disj) {
        collect_disjuncts(f->left, out);
        collect_disjuncts(f->right, out);
    } else {
        out.push_back(f);
    }
}

Key make_key(const std::vector<Formula>& parts)
{
    Key k;
    for (const auto& f : parts)
        collect_conjuncts(f, k);
    if (k.ff)
        return Key{true, {}};
    std::sort(k.items.begin(), k.items.end(), hml::Less{});
    k.items.erase(std::unique(k.items.begin(), k.items.end(), hml::equal), k.items.end());
    // A disjunction is absorbed by any of its own disjuncts.
    std::vector<Formula> kept;
    for (const auto& f : k.items) {
        if (f->kind == Kind::disj) {
            std::vector<Formula> ds;
            collect_disjuncts(f, ds);
            bool absorbed = std::any_of(ds.begin(), ds.end(), [&](const Formula& d) {
                return std::binary_search(k.items.begin(), k.items.end(), d, hml::Less{});
            });
            if (absorbed)
                continue;
        }
        kept.push_back(f);
    }
    k.items = std::move(kept);
    return k;
}

struct Literal {
    bool is_box;
    ActionId action;
    Formula body;

    friend bool operator<(const Literal& a, const Literal& b)
    {
        if (a.is_box != b.is_box)
            return a.is_box < b.is_box;
        if (a.action != b.action)
            return a.action < b.action;
        return hml::compare(a.body, b.body) < 0;
    }
    friend bool operator==(const Literal& a, const Literal& b)
    {
        return a.is_box == b.is_box && a.action == b.action && hml::equal(a.body, b.body);
    }
};

using Clause = std::vector<Literal>; // sorted, unique

constexpr std::size_t max_clauses = 1u << 14;

class Normalizer {
public:
    Normalizer(const HmlDecl& in, std::size_t max_vars) : in_(in), max_vars_(max_vars)
    {
        for (const auto& x : in.vars())
            taken_.insert(x);
        for (std::size_t x = 0; x < in.size(); ++x) {
            Key k;
            k.items.push_back(hml::var(in.var(x)));
            register_var(in.var(x), k);
        }
    }

    NormalFormDecl run()
    {
        while (!pending_.empty()) {
            auto x = pending_.front();
            pending_.pop_front();
            bodies_[x] = normal_body(keys_[x]);
        }
        std::vector<std::size_t> initials(in_.initials().begin(), in_.initials().end());
        return NormalFormDecl(in_.alphabet(), names_, std::move(initials), bodies_);
    }

private:
    std::size_t register_var(const std::string& name, const Key& k)
    {
        if (names_.size() >= max_vars_)
            throw SizeGuard("normalize: more than " + std::to_string(max_vars_)
                            + " variables needed");
        names_.push_back(name);
        keys_.push_back(k);
        bodies_.emplace_back();
        index_.emplace(k, names_.size() - 1);
        pending_.push_back(names_.size() - 1);
        return names_.size() - 1;
    }

    std::size_t var_for(const Key& k)
    {
        auto it = index_.find(k);
        if (it != index_.end())
            return it->second;
        std::string base = k.ff ? "_ff" : k.items.empty() ? "_tt" : "_v" + std::to_string(++fresh_);
        auto name = fresh_name(base, taken_);
        taken_.insert(name);
        return register_var(name, k);
    }

    std::vector<Clause> dnf(const Formula& f, std::vector<std::size_t>& stack)
    {
        switch (f->kind) {
        case Kind::tt:
            return {Clause{}};
        case Kind::ff:
            return {};
        case Kind::var: {
            auto x = *in_.find(f->name);
            // An unguarded recursive occurrence is tt under greatest fixpoints.
            if (std::find(stack.begin(), stack.end(), x) != stack.end())
                return {Clause{}};
            stack.push_back(x);
            auto r = dnf(in_.body(x), stack);
            stack.pop_back();
            return r;
        }
        case Kind::disj: {
            auto l = dnf(f->left, stack);
            auto r = dnf(f->right, stack);
            l.insert(l.end(), r.begin(), r.end());
            return dedup(std::move(l));
        }
        case Kind::conj:
            return product(dnf(f->left, stack), dnf(f->right, stack));
        case Kind::diamond:
        case Kind::box:
            return {Clause{Literal{f->kind == Kind::box, in_.alphabet().at(f->name), f->left}}};
        }
        return {};
    }

    static std::vector<Clause> dedup(std::vector<Clause> cs)
    {
        if (cs.size() > max_clauses)
            throw SizeGuard("normalize: disjunctive normal form exceeds "
                            + std::to_string(max_clauses) + " disjuncts");
        std::set<Clause> seen;
        std::vector<Clause> out;
        for (auto& c : cs)
            if (seen.insert(c).second)
                out.push_back(std::move(c));
        return out;
    }

    static std::vector<Clause> product(const std::vector<Clause>& l, const std::vector<Clause>& r)
    {
        if (l.size() * r.size() > max_clauses)
            throw SizeGuard("normalize: disjunctive normal form exceeds "
                            + std::to_string(max_clauses) + " disjuncts");
        std::vector<Clause> out;
        for (const auto& a : l)
            for (const auto& b : r) {
                Clause c;
                std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                c.erase(std::unique(c.begin(), c.end()), c.end());
                out.push_back(std::move(c));
            }
        return dedup(std::move(out));
    }

    NormalBody normal_body(const Key& k)
    {
        NormalBody body;
        if (k.ff)
            return body;
        std::vector<std::size_t> stack;
        std::vector<Clause> clauses{Clause{}};
        for (const auto& f : k.items)
            clauses = product(clauses, dnf(f, stack));

        const std::size_t n_actions = in_.alphabet().size();
        std::set<NormalDisjunct> seen;
        for (const auto& c : clauses) {
            if (c.empty()) {
                body.tt = true;
                body.disjuncts.clear();
                return body;
            }
            std::vector<std::vector<Formula>> boxes(n_actions);
            for (const auto& lit : c)
                if (lit.is_box)
                    boxes[lit.action].push_back(lit.body);
            NormalDisjunct d;
            bool dead = false;
            for (const auto& lit : c) {
                if (lit.is_box)
                    continue;
                auto parts = boxes[lit.action];
                parts.push_back(lit.body);
                Key xk = make_key(parts);
                if (xk.ff) {
                    dead = true;
                    break;
                }
                d.diamonds.emplace_back(lit.action, var_for(xk));
            }
            if (dead)
                continue;
            for (ActionId a = 0; a < n_actions; ++a)
                d.boxes.push_back(var_for(make_key(boxes[a])));
            std::sort(d.diamonds.begin(), d.diamonds.end());
            d.diamonds.erase(std::unique(d.diamonds.begin(), d.diamonds.end()), d.diamonds.end());
            if (seen.insert(d).second)
                body.disjuncts.push_back(std::move(d));
        }
        return body;
    }

    const HmlDecl& in_;
    std::size_t max_vars_;
    std::set<std::string> taken_;
    std::size_t fresh_ = 0;
    std::vector<std::string> names_;
    std::vector<Key> keys_;
    std::vector<NormalBody> bodies_;
    std::map<Key, std::size_t> index_;
    std::deque<std::size_t> pending_;
};

} // namespace

NormalFormDecl normalize(const HmlDecl& d, std::size_t max_vars)
{
    return Normalizer(d, max_vars).run();
}

NormalFormDecl read_normal_form(const HmlDecl& in)
{
    const auto& sigma = in.alphabet();
    std::vector<std::string> names = in.vars();
    std::vector<NormalBody> bodies(names.size());
    std::set<std::string> taken(names.begin(), names.end());
    std::optional<std::size_t> tt_var, ff_var;
    auto constant = [&](bool is_tt) {
        auto& slot = is_tt ? tt_var : ff_var;
        if (!slot) {
            auto name = fresh_name(is_tt ? "_tt" : "_ff", taken);
            taken.insert(name);
            names.push_back(name);
            NormalBody b;
            b.tt = is_tt;
            bodies.push_back(b);
            slot = names.size() - 1;
        }
        return *slot;
    };
    auto is_constant = [&](std::size_t x, Kind k) {
        if (x < in.size())
            return in.body(x)->kind == k;
        return (k == Kind::tt) == bodies[x].tt;
    };
    auto target = [&](const Formula& f, const std::string& where) -> std::size_t {
        switch (f->kind) {
        case Kind::tt:
            return constant(true);
        case Kind::ff:
            return constant(false);
        case Kind::var:
            return *in.find(f->name);
        default:
            throw NotNormalForm("body of " + where + ": modality must be applied to a variable, "
                                "tt or ff, found " + hml::to_string(f));
        }
    };

    for (std::size_t x = 0; x < in.size(); ++x) {
        const Formula& f = in.body(x);
        if (f->kind == Kind::tt) {
            bodies[x].tt = true;
            continue;
        }
        if (f->kind == Kind::ff)
            continue;
        std::vector<Formula> disjuncts;
        collect_disjuncts(f, disjuncts);
        for (const auto& dj : disjuncts) {
            Key lits;
            collect_conjuncts(dj, lits);
            if (lits.ff)
                throw NotNormalForm("body of " + in.var(x) + " has an ff conjunct");
            NormalDisjunct d;
            std::vector<std::optional<std::size_t>> boxes(sigma.size());
            for (const auto& lit : lits.items) {
                if (lit->kind != Kind::diamond && lit->kind != Kind::box)
                    throw NotNormalForm("body of " + in.var(x)
                                        + ": expected a modal literal, found " + hml::to_string(lit));
                auto a = sigma.at(lit->name);
                auto t = target(lit->left, in.var(x));
                if (lit->kind == Kind::diamond) {
                    d.diamonds.emplace_back(a, t);
                } else {
                    if (boxes[a] && *boxes[a] != t)
                        throw NotNormalForm("body of " + in.var(x) + " has two [" + lit->name
                                            + "] literals in one disjunct");
                    boxes[a] = t;
                }
            }
            for (ActionId a = 0; a < sigma.size(); ++a)
                d.boxes.push_back(boxes[a] ? *boxes[a] : constant(true));
            for (auto [a, t] : d.diamonds) {
                auto y = d.boxes[a];
                if (y != t && !is_constant(y, Kind::tt) && !is_constant(t, Kind::ff))
                    throw NotNormalForm("body of " + in.var(x) + ": <" + sigma.name(a) + ">"
                                        + names[t] + " is not implied by [" + sigma.name(a) + "]"
                                        + names[y]);
            }
            std::sort(d.diamonds.begin(), d.diamonds.end());
            d.diamonds.erase(std::unique(d.diamonds.begin(), d.diamonds.end()), d.diamonds.end());
            bodies[x].disjuncts.push_back(std::move(d));
        }
    }
    std::vector<std::size_t> initials(in.initials().begin(), in.initials().end());
    return NormalFormDecl(sigma, std::move(names), std::move(initials), std::move(bodies));
}

Dmts hd(const NormalFormDecl& d)
{
    const auto& sigma = d.alphabet();
    auto state = [&](std::size_t x, std::size_t k) {
        return "(" + d.vars()[x] + "," + std::to_string(k + 1) + ")";
    };
    auto targets = [&](std::size_t x) {
        std::vector<std::string> out;
        const auto& b = d.body(x);
        if (b.tt)
            out.push_back("top");
        for (std::size_t k = 0; k < b.disjuncts.size(); ++k)
            out.push_back(state(x, k));
        return out;
    };

    DmtsBuilder b(sigma);
    b.state("top").state("bot").must("bot", {});
    for (ActionId a = 0; a < sigma.size(); ++a)
        b.may("top", sigma.name(a), "top");
    for (auto x : d.initials())
        for (const auto& s : targets(x))
            b.initial(s);
    for (std::size_t x = 0; x < d.size(); ++x) {
        const auto& body = d.body(x);
        if (body.tt)
            continue;
        for (std::size_t k = 0; k < body.disjuncts.size(); ++k) {
            const auto& dj = body.disjuncts[k];
            const auto s = state(x, k);
            b.state(s);
            for (ActionId a = 0; a < sigma.size(); ++a)
                for (const auto& t : targets(dj.boxes[a]))
                    b.may(s, sigma.name(a), t);
            for (auto [a, t] : dj.diamonds) {
                NamedMoveSet must;
                for (const auto& u : targets(t)) {
                    must.insert({sigma.name(a), u});
                    b.may(s, sigma.name(a), u);
                }
                b.must(s, std::move(must));
            }
        }
    }
    return b.build();
}

Dmts hd(const HmlDecl& d)
{
    return hd(read_normal_form(d));
}

} // namespace modspec

#include "modspec/cli.hpp"

#include "modspec/algebra.hpp"
#include "modspec/dot.hpp"
#include "modspec/format.hpp"
#include "modspec/oracle.hpp"
#include "modspec/quotient.hpp"
#include "modspec/translate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace modspec {

namespace {

/// Raised for problems with the command line or its input files.
class InputError : public Error {
public:
    using Error::Error;
};

Document load(const std::string& path)
{
    std::stringstream text;
    if (path == "-") {
        text << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw InputError(path + ": cannot open file");
        text << in.rdbuf();
    }
    try {
        return parse_document(text.str());
    } catch (const Error& e) {
        throw InputError(path + ":" + e.what());
    }
}

bool modal(const Document& d)
{
    return d.kind == DocKind::lts || d.kind == DocKind::mts || d.kind == DocKind::dmts;
}

Dmts to_dmts(const Document& d)
{
    switch (d.kind) {
    case DocKind::lts:
        return lts_as_dmts(std::get<Lts>(d.spec));
    case DocKind::mts:
    case DocKind::dmts:
        return std::get<Dmts>(d.spec);
    case DocKind::naa:
        return bd(std::get<Naa>(d.spec));
    case DocKind::hml:
        return hd(normalize(std::get<HmlDecl>(d.spec)));
    }
    throw Error("unreachable");
}

Naa to_naa(const Document& d)
{
    switch (d.kind) {
    case DocKind::lts:
        return lts_as_naa(std::get<Lts>(d.spec));
    case DocKind::naa:
        return std::get<Naa>(d.spec);
    default:
        return db(to_dmts(d));
    }
}

HmlDecl to_hml(const Document& d)
{
    if (d.kind == DocKind::hml)
        return std::get<HmlDecl>(d.spec);
    return bh(to_naa(d));
}

std::optional<MtsView> as_mts(const Document& d)
{
    if (!modal(d))
        return std::nullopt;
    try {
        return mts_check(to_dmts(d));
    } catch (const NotAnMts&) {
        return std::nullopt;
    }
}

void print(std::ostream& out, Spec s)
{
    out << serialize(as_document(std::move(s)));
}

EnumBound bound_for(const Alphabet& sigma, std::size_t max_states, bool exponential)
{
    return EnumBound{max_states, sigma, exponential};
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Modal specifications: refinement, translation and algebra", "modspec"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string a, b, to;
    std::size_t max_states = 3;
    bool no_prune = false, force_naa = false, exponential = false, count_only = false;

    const auto one = [&](const char* name, const char* what) {
        auto* c = app.add_subcommand(name, what);
        c->add_option("file", a, "Specification document, or - for standard input")->required();
        return c;
    };
    const auto two = [&](const char* name, const char* what) {
        auto* c = app.add_subcommand(name, what);
        c->add_option("left", a, "First document")->required();
        c->add_option("right", b, "Second document")->required();
        return c;
    };

    auto* validate = one("validate", "Parse and check a document");
    auto* translate = one("translate", "Convert to another formalism");
    translate->add_option("--to", to, "Target formalism")
        ->required()
        ->check(CLI::IsMember({"dmts", "naa", "hml"}));
    auto* refine = two("refine", "Check modal refinement of left by right");
    auto* impl = two("implements", "Check that an LTS implements a specification");
    auto* mc = two("mc", "Model check an LTS against a declaration");
    auto* conj = two("and", "Conjunction");
    auto* disj = two("or", "Disjunction");
    auto* compose = two("compose", "Parallel composition");
    auto* quotient = two("quotient", "Most general specification that composed with right refines left");
    quotient->add_flag("--no-prune", no_prune, "Keep inconsistent states");
    quotient->add_flag("--naa", force_naa, "Use the acceptance automaton construction for MTS inputs too");
    auto* prune = one("prune", "Remove inconsistent states");
    auto* single = one("single-initial", "Merge the initial states into one");
    auto* equiv = two("equiv", "Compare implementation sets up to a number of states");
    auto* impls = one("impls", "List implementations up to a number of states");
    for (auto* c : {equiv, impls}) {
        c->add_option("--max-states", max_states, "Largest implementation size")
            ->check(CLI::Range(1, 8));
        c->add_flag("--i-know-this-is-exponential", exponential,
                    "Allow enumerations above 2^24 candidate systems");
    }
    impls->add_flag("--count", count_only, "Print only the number of implementations");
    auto* dot = one("dot", "Graphviz rendering");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        const Document left = load(a);
        auto pair = [&] {
            Document right = load(b);
            require_same_alphabet(alphabet_of(left.spec), alphabet_of(right.spec));
            return right;
        };

        if (validate->parsed()) {
            out << kind_name(left.kind) << ": ok\n";
            return 0;
        }
        if (translate->parsed()) {
            if (to == "dmts")
                print(out, to_dmts(left));
            else if (to == "naa")
                print(out, to_naa(left));
            else
                print(out, to_hml(left));
            return 0;
        }
        if (refine->parsed()) {
            const Document right = pair();
            if (modal(left) && modal(right)) {
                const auto l = to_dmts(left), r = to_dmts(right);
                auto res = refine_dmts(l, r);
                if (res) {
                    out << "refines\n";
                    return 0;
                }
                out << "does not refine\n" << describe(res.failure(), l.states(), r.states());
                return 1;
            }
            const auto l = to_naa(left), r = to_naa(right);
            auto res = refine_naa(l, r);
            if (res) {
                out << "refines\n";
                return 0;
            }
            out << "does not refine\n" << describe(res.failure(), l.states(), r.states());
            return 1;
        }
        if (impl->parsed() || mc->parsed()) {
            const Document right = pair();
            if (left.kind != DocKind::lts)
                throw InputError(a + ": expected an lts document");
            const auto& i = std::get<Lts>(left.spec);
            if (mc->parsed()) {
                if (right.kind != DocKind::hml)
                    throw InputError(b + ": expected an hml document");
                const auto& d = std::get<HmlDecl>(right.spec);
                auto res = hml_check(i, d);
                for (std::size_t x = 0; x < d.size(); ++x) {
                    out << quote_id(d.var(x)) << ":";
                    for (StateId s = 0; s < i.size(); ++s)
                        if (res.assignment[x][s])
                            out << " " << quote_id(i.name(s));
                    out << "\n";
                }
                out << (res.holds ? "holds\n" : "does not hold\n");
                return res.holds ? 0 : 1;
            }
            const bool ok = implements(i, right.spec);
            out << (ok ? "implements\n" : "does not implement\n");
            return ok ? 0 : 1;
        }
        if (conj->parsed() || disj->parsed()) {
            const Document right = pair();
            if (modal(left) && modal(right))
                print(out, conj->parsed() ? and_dmts(to_dmts(left), to_dmts(right))
                                          : or_dmts(to_dmts(left), to_dmts(right)));
            else
                print(out, conj->parsed() ? and_naa(to_naa(left), to_naa(right))
                                          : or_naa(to_naa(left), to_naa(right)));
            return 0;
        }
        if (compose->parsed()) {
            const Document right = pair();
            print(out, compose_naa(to_naa(left), to_naa(right)));
            return 0;
        }
        if (quotient->parsed()) {
            const Document right = pair();
            QuotientOptions options;
            options.prune = !no_prune;
            auto ls = as_mts(left), rs = as_mts(right);
            if (ls && rs && !force_naa)
                print(out, quotient_mts(*ls, *rs, options));
            else
                print(out, quotient_naa(to_naa(left), to_naa(right), options));
            return 0;
        }
        if (prune->parsed()) {
            if (left.kind == DocKind::lts)
                print(out, left.spec);
            else if (left.kind == DocKind::naa)
                print(out, prune_naa(std::get<Naa>(left.spec)));
            else
                print(out, prune_dmts(to_dmts(left)));
            return 0;
        }
        if (single->parsed()) {
            print(out, single_initial(to_naa(left)));
            return 0;
        }
        if (equiv->parsed()) {
            const Document right = pair();
            const auto bound = bound_for(alphabet_of(left.spec), max_states, exponential);
            if (auto x = tr_counterexample(left.spec, right.spec, bound)) {
                out << "// implements " << a << " but not " << b << "\n";
                print(out, *x);
                return 1;
            }
            if (auto x = tr_counterexample(right.spec, left.spec, bound)) {
                out << "// implements " << b << " but not " << a << "\n";
                print(out, *x);
                return 1;
            }
            out << "same implementations up to " << max_states << " states\n";
            return 0;
        }
        if (impls->parsed()) {
            const auto& sigma = alphabet_of(left.spec);
            const auto set = impl_set(left.spec, bound_for(sigma, max_states, exponential));
            out << "// " << set.size() << " implementations up to " << max_states << " states\n";
            if (!count_only)
                for (const auto& p : set)
                    print(out, unpack(p, sigma));
            return 0;
        }
        if (dot->parsed()) {
            out << export_dot(left.spec);
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace modspec

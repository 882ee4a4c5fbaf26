#include "doctest.h"
#include "support/fixtures.hpp"

#include "modspec/cli.hpp"
#include "modspec/format.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace modspec;

namespace {

const std::filesystem::path corpus = MODSPEC_CORPUS_DIR;
const std::filesystem::path golden = std::filesystem::path(MODSPEC_GOLDEN_DIR) / "cli";

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    REQUIRE_MESSAGE(in, p.string());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

/// Runs with the corpus directory as working directory.
struct InCorpus {
    std::filesystem::path saved = std::filesystem::current_path();
    InCorpus() { std::filesystem::current_path(corpus); }
    ~InCorpus() { std::filesystem::current_path(saved); }
};

struct Command {
    std::string name;
    int code;
    std::vector<std::string> args;
};

std::vector<Command> manifest()
{
    std::vector<Command> out;
    std::istringstream in(slurp(golden / "commands.txt"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream words(line);
        Command c;
        words >> c.name >> c.code;
        for (std::string w; words >> w;)
            c.args.push_back(w);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

TEST_CASE("command outputs match the golden files")
{
    InCorpus here;
    std::set<std::string> subcommands;
    for (const auto& c : manifest()) {
        CAPTURE(c.name);
        auto r = run(c.args);
        CHECK(r.code == c.code);
        CHECK(r.out == slurp(golden / (c.name + ".out")));
        if (c.code == 2)
            CHECK_FALSE(r.err.empty());
        if (!c.args.empty())
            subcommands.insert(c.args[0]);
    }
    CHECK(subcommands
          == std::set<std::string>{"validate", "translate", "refine", "implements", "mc", "and",
                                   "or", "compose", "quotient", "prune", "single-initial",
                                   "equiv", "impls", "dot"});
}

TEST_CASE("translations round-trip through files")
{
    InCorpus here;
    const auto tmp = std::filesystem::temp_directory_path() / "modspec_cli_test.naa";
    for (const auto& e : std::filesystem::directory_iterator(corpus)) {
        const auto name = e.path().filename().string();
        CAPTURE(name);
        auto t = run({"translate", "--to", "naa", name});
        REQUIRE(t.code == 0);
        std::ofstream(tmp) << t.out;
        auto q = run({"equiv", name, tmp.string(), "--max-states", "2"});
        CHECK(q.code == 0);
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("counterexamples can be read back")
{
    InCorpus here;
    auto r = run({"equiv", "invariance.dmts", "two_initials.dmts", "--max-states", "2"});
    REQUIRE(r.code == 1);
    auto doc = parse_document(r.out);
    CHECK(doc.kind == DocKind::lts);
}

TEST_CASE("parse errors report a position")
{
    const auto tmp = std::filesystem::temp_directory_path() / "modspec_cli_bad.dmts";
    std::ofstream(tmp) << "dmts {\n  alphabet a;\n  init s\n}\n";
    auto r = run({"validate", tmp.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find(":4:1: expected ';'") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("help")
{
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("quotient") != std::string::npos);
}

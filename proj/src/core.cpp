#include "modspec/core.hpp"

#include <algorithm>
#include <tuple>

namespace modspec {

void normalize(MoveSet& moves)
{
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
}

void normalize(Family& family)
{
    for (auto& m : family)
        normalize(m);
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
}

bool contains(const MoveSet& moves, Move m)
{
    return std::binary_search(moves.begin(), moves.end(), m);
}

// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols))
{
    std::sort(symbols_.begin(), symbols_.end());
    if (symbols_.empty())
        throw InvariantViolation("alphabet must not be empty");
    if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end())
        throw InvariantViolation("alphabet contains a duplicate symbol");
    for (const auto& s : symbols_)
        if (s.empty())
            throw InvariantViolation("alphabet contains an empty symbol");
}

std::optional<ActionId> Alphabet::find(std::string_view symbol) const
{
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end() || *it != symbol)
        return std::nullopt;
    return static_cast<ActionId>(it - symbols_.begin());
}

ActionId Alphabet::at(std::string_view symbol) const
{
    auto a = find(symbol);
    if (!a)
        throw InvariantViolation("unknown action '" + std::string(symbol) + "'");
    return *a;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b)
{
    if (!(a == b))
        throw AlphabetMismatch();
}

// ---------------------------------------------------------------------------

namespace {

void check_state_names(const std::vector<std::string>& states)
{
    if (!std::is_sorted(states.begin(), states.end())
        || std::adjacent_find(states.begin(), states.end()) != states.end())
        throw InvariantViolation("state names must be sorted and unique");
}

void check_state(StateId s, std::size_t n, const char* what)
{
    if (s >= n)
        throw InvariantViolation(std::string(what) + " refers to an undeclared state");
}

void check_moves(const MoveSet& moves, const Alphabet& alphabet, std::size_t n)
{
    for (auto m : moves) {
        if (m.action >= alphabet.size())
            throw InvariantViolation("move uses an action outside the alphabet");
        check_state(m.target, n, "move");
    }
}

std::vector<StateId> normalized_ids(std::vector<StateId> ids, std::size_t n, const char* what)
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto s : ids)
        check_state(s, n, what);
    return ids;
}

std::optional<StateId> find_name(const std::vector<std::string>& states, std::string_view name)
{
    auto it = std::lower_bound(states.begin(), states.end(), name);
    if (it == states.end() || *it != name)
        return std::nullopt;
    return static_cast<StateId>(it - states.begin());
}

} // namespace

Lts::Lts(Alphabet alphabet, std::vector<std::string> states, StateId initial,
         std::vector<MoveSet> succ)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), initial_(initial),
      succ_(std::move(succ))
{
    check_state_names(states_);
    check_state(initial_, states_.size(), "initial state");
    if (succ_.size() != states_.size())
        throw InvariantViolation("transition table does not match the state count");
    for (auto& m : succ_) {
        normalize(m);
        check_moves(m, alphabet_, states_.size());
    }
}

std::size_t Lts::transition_count() const
{
    std::size_t n = 0;
    for (const auto& m : succ_)
        n += m.size();
    return n;
}

Dmts::Dmts(Alphabet alphabet, std::vector<std::string> states, std::vector<StateId> initials,
           std::vector<MoveSet> may, std::vector<Family> must, MustSupport policy)
    : alphabet_(std::move(alphabet)), states_(std::move(states)),
      initials_(normalized_ids(std::move(initials), states_.size(), "initial state")),
      may_(std::move(may)), must_(std::move(must))
{
    check_state_names(states_);
    if (may_.size() != states_.size() || must_.size() != states_.size())
        throw InvariantViolation("transition tables do not match the state count");
    for (StateId s = 0; s < states_.size(); ++s) {
        normalize(may_[s]);
        normalize(must_[s]);
        check_moves(may_[s], alphabet_, states_.size());
        for (const auto& n : must_[s]) {
            check_moves(n, alphabet_, states_.size());
            for (auto m : n) {
                if (contains(may_[s], m))
                    continue;
                if (policy == MustSupport::strict)
                    throw InvariantViolation("must-move (" + alphabet_.name(m.action) + ","
                                             + states_[m.target] + ") of state " + states_[s]
                                             + " has no matching may-transition");
                may_[s].push_back(m);
            }
        }
        normalize(may_[s]);
    }
}

std::optional<StateId> Dmts::find(std::string_view name) const
{
    return find_name(states_, name);
}

MtsView mts_check(const Dmts& d)
{
    if (d.initials().size() != 1)
        throw NotAnMts("an MTS needs exactly one initial state, found "
                       + std::to_string(d.initials().size()));
    for (StateId s = 0; s < d.size(); ++s)
        for (const auto& n : d.must(s))
            if (n.size() != 1)
                throw NotAnMts("state " + d.name(s) + " has the non-singleton must-set "
                               + move_set_string(d.alphabet(), d.states(), n));
    return MtsView(d);
}

Naa::Naa(Alphabet alphabet, std::vector<std::string> states, std::vector<StateId> initials,
         std::vector<Family> tran)
    : alphabet_(std::move(alphabet)), states_(std::move(states)),
      initials_(normalized_ids(std::move(initials), states_.size(), "initial state")),
      tran_(std::move(tran))
{
    check_state_names(states_);
    if (tran_.size() != states_.size())
        throw InvariantViolation("Tran is not total on the states");
    for (auto& f : tran_) {
        normalize(f);
        for (const auto& m : f)
            check_moves(m, alphabet_, states_.size());
    }
}

std::optional<StateId> Naa::find(std::string_view name) const
{
    return find_name(states_, name);
}

bool Naa::is_implementation() const
{
    if (initials_.size() != 1)
        return false;
    return std::all_of(tran_.begin(), tran_.end(), [](const Family& f) { return f.size() == 1; });
}

// ---------------------------------------------------------------------------
// Builders

namespace {

struct Layout {
    std::vector<std::string> names;
    std::map<std::string, StateId, std::less<>> index;

    explicit Layout(const std::set<std::string>& states) : names(states.begin(), states.end())
    {
        for (StateId i = 0; i < names.size(); ++i)
            index.emplace(names[i], i);
    }

    StateId operator()(const std::string& s) const
    {
        auto it = index.find(s);
        if (it == index.end())
            throw InvariantViolation("unknown state '" + s + "'");
        return it->second;
    }
};

MoveSet resolve(const NamedMoveSet& n, const Alphabet& alphabet, const Layout& layout)
{
    MoveSet out;
    out.reserve(n.size());
    for (const auto& m : n)
        out.push_back({alphabet.at(m.action), layout(m.target)});
    normalize(out);
    return out;
}

} // namespace

LtsBuilder& LtsBuilder::state(const std::string& s)
{
    states_.insert(s);
    return *this;
}

LtsBuilder& LtsBuilder::initial(const std::string& s)
{
    states_.insert(s);
    initial_ = s;
    return *this;
}

LtsBuilder& LtsBuilder::trans(const std::string& s, const std::string& a, const std::string& t)
{
    states_.insert(s);
    states_.insert(t);
    trans_.emplace(s, a, t);
    return *this;
}

Lts LtsBuilder::build() const
{
    if (!initial_)
        throw InvariantViolation("an LTS needs exactly one initial state");
    Layout layout(states_);
    std::vector<MoveSet> succ(layout.names.size());
    for (const auto& [s, a, t] : trans_)
        succ[layout(s)].push_back({alphabet_.at(a), layout(t)});
    return Lts(alphabet_, layout.names, layout(*initial_), std::move(succ));
}

DmtsBuilder& DmtsBuilder::state(const std::string& s)
{
    states_.insert(s);
    return *this;
}

DmtsBuilder& DmtsBuilder::initial(const std::string& s)
{
    states_.insert(s);
    initials_.insert(s);
    return *this;
}

DmtsBuilder& DmtsBuilder::may(const std::string& s, const std::string& a, const std::string& t)
{
    states_.insert(s);
    states_.insert(t);
    may_.emplace(s, a, t);
    return *this;
}

DmtsBuilder& DmtsBuilder::must(const std::string& s, NamedMoveSet n)
{
    states_.insert(s);
    for (const auto& m : n)
        states_.insert(m.target);
    must_.emplace(s, std::move(n));
    return *this;
}

Dmts DmtsBuilder::build(MustSupport policy) const
{
    Layout layout(states_);
    const auto n = layout.names.size();
    std::vector<MoveSet> may(n);
    std::vector<Family> must(n);
    std::vector<StateId> initials;
    for (const auto& s : initials_)
        initials.push_back(layout(s));
    for (const auto& [s, a, t] : may_)
        may[layout(s)].push_back({alphabet_.at(a), layout(t)});
    for (const auto& [s, ms] : must_)
        must[layout(s)].push_back(resolve(ms, alphabet_, layout));
    return Dmts(alphabet_, layout.names, std::move(initials), std::move(may), std::move(must),
                policy);
}

NaaBuilder& NaaBuilder::state(const std::string& s)
{
    states_.insert(s);
    tran_[s];
    return *this;
}

NaaBuilder& NaaBuilder::initial(const std::string& s)
{
    state(s);
    initials_.insert(s);
    return *this;
}

NaaBuilder& NaaBuilder::admit(const std::string& s, NamedMoveSet m)
{
    state(s);
    for (const auto& mv : m)
        state(mv.target);
    tran_[s].insert(std::move(m));
    return *this;
}

Naa NaaBuilder::build() const
{
    Layout layout(states_);
    std::vector<Family> tran(layout.names.size());
    std::vector<StateId> initials;
    for (const auto& s : initials_)
        initials.push_back(layout(s));
    for (const auto& [s, family] : tran_)
        for (const auto& m : family)
            tran[layout(s)].push_back(resolve(m, alphabet_, layout));
    return Naa(alphabet_, layout.names, std::move(initials), std::move(tran));
}

// ---------------------------------------------------------------------------
// Embeddings

Dmts lts_as_dmts(const Lts& l)
{
    std::vector<MoveSet> may(l.size());
    std::vector<Family> must(l.size());
    for (StateId s = 0; s < l.size(); ++s) {
        may[s] = l.succ(s);
        for (auto m : l.succ(s))
            must[s].push_back({m});
    }
    return Dmts(l.alphabet(), l.states(), {l.initial()}, std::move(may), std::move(must));
}

Naa lts_as_naa(const Lts& l)
{
    std::vector<Family> tran(l.size());
    for (StateId s = 0; s < l.size(); ++s)
        tran[s] = {l.succ(s)};
    return Naa(l.alphabet(), l.states(), {l.initial()}, std::move(tran));
}

std::optional<Lts> dmts_as_lts(const Dmts& d)
{
    if (d.initials().size() != 1)
        return std::nullopt;
    std::vector<MoveSet> succ(d.size());
    for (StateId s = 0; s < d.size(); ++s) {
        Family expected;
        for (auto m : d.may(s))
            expected.push_back({m});
        if (expected != d.must(s))
            return std::nullopt;
        succ[s] = d.may(s);
    }
    return Lts(d.alphabet(), d.states(), d.initials().front(), std::move(succ));
}

std::optional<Lts> naa_as_lts(const Naa& n)
{
    if (!n.is_implementation())
        return std::nullopt;
    std::vector<MoveSet> succ(n.size());
    for (StateId s = 0; s < n.size(); ++s)
        succ[s] = n.tran(s).front();
    return Lts(n.alphabet(), n.states(), n.initials().front(), std::move(succ));
}

Naa bottom_naa(const Alphabet& alphabet)
{
    return Naa(alphabet, {}, {}, {});
}

Naa top_naa(const Alphabet& alphabet)
{
    const auto k = alphabet.size();
    if (k > 16)
        throw SizeGuard("top_naa: alphabet too large to enumerate its powerset");
    Family all;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        MoveSet m;
        for (ActionId a = 0; a < k; ++a)
            if (mask & (1u << a))
                m.push_back({a, 0});
        all.push_back(std::move(m));
    }
    return Naa(alphabet, {"top"}, {0}, {std::move(all)});
}

Lts unit_lts(const Alphabet& alphabet)
{
    MoveSet loops;
    for (ActionId a = 0; a < alphabet.size(); ++a)
        loops.push_back({a, 0});
    return Lts(alphabet, {"u"}, 0, {std::move(loops)});
}

std::string move_string(const Alphabet& alphabet, const std::vector<std::string>& states, Move m)
{
    return "(" + alphabet.name(m.action) + "," + states.at(m.target) + ")";
}

std::string move_set_string(const Alphabet& alphabet, const std::vector<std::string>& states,
                            const MoveSet& m)
{
    std::string out = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i)
            out += ",";
        out += move_string(alphabet, states, m[i]);
    }
    return out + "}";
}

bool is_bare_identifier(std::string_view s)
{
    static const std::set<std::string, std::less<>> keywords = {
        "tt", "ff", "may", "must", "state", "init", "alphabet"};
    if (s.empty() || keywords.count(s))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
               || std::string_view("_'.:#@^~+-").find(c) != std::string_view::npos;
    });
}

std::string quote_id(std::string_view s)
{
    if (is_bare_identifier(s))
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string fresh_name(std::string base, const std::set<std::string>& taken)
{
    while (taken.count(base))
        base += "'";
    return base;
}

} // namespace modspec

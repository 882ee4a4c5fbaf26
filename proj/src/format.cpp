#include "modspec/format.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modspec {

FormatError::FormatError(std::size_t line, std::size_t column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column)
{
}

namespace {

std::string expected_list(const std::vector<std::string>& expected)
{
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i)
            out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string found,
                         std::vector<std::string> expected)
    : FormatError(line, column,
                  "expected " + expected_list(sorted(expected)) + " but found " + found),
      found_(std::move(found)),
      expected_(sorted(std::move(expected)))
{
}

std::string_view kind_name(DocKind k)
{
    switch (k) {
    case DocKind::lts:
        return "lts";
    case DocKind::mts:
        return "mts";
    case DocKind::dmts:
        return "dmts";
    case DocKind::naa:
        return "naa";
    case DocKind::hml:
        return "hml";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { bare, quoted, punct, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool bare_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
           || std::string_view("_'.:#@^~+-").find(c) != std::string_view::npos;
}

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1, column = 1, i = 0;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        } else if (std::string_view("{}(),;=<>[]&|").find(c) != std::string_view::npos) {
            out.push_back({Tok::punct, std::string(1, c), line, column});
            advance(1);
        } else if (c == '"') {
            Token t{Tok::quoted, "", line, column};
            advance(1);
            while (true) {
                if (i >= text.size() || text[i] == '\n')
                    throw SyntaxError(t.line, t.column, "an unterminated string",
                                      {"closing '\"'"});
                if (text[i] == '"')
                    break;
                if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] != '\n')
                    advance(1);
                t.text += text[i];
                advance(1);
            }
            advance(1);
            out.push_back(std::move(t));
        } else if (bare_char(c)) {
            Token t{Tok::bare, "", line, column};
            while (i < text.size() && bare_char(text[i])) {
                t.text += text[i];
                advance(1);
            }
            out.push_back(std::move(t));
        } else {
            throw SyntaxError(line, column, "'" + std::string(1, c) + "'", {"a token"});
        }
    }
    out.push_back({Tok::end, "", line, column});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

struct Pos {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Named {
    std::string name;
    Pos pos;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Document document()
    {
        static const std::map<std::string, DocKind, std::less<>> kinds = {
            {"lts", DocKind::lts},
            {"mts", DocKind::mts},
            {"dmts", DocKind::dmts},
            {"naa", DocKind::naa},
            {"hml", DocKind::hml}};
        const auto& head = peek();
        auto it = head.kind == Tok::bare ? kinds.find(head.text) : kinds.end();
        if (it == kinds.end())
            fail({"'lts'", "'mts'", "'dmts'", "'naa'", "'hml'"});
        next();
        expect("{");
        keyword("alphabet");
        std::vector<std::string> symbols;
        for (const auto& s : ids())
            symbols.push_back(s.name);
        expect(";");
        {
            std::set<std::string> seen;
            for (const auto& s : symbols)
                if (!seen.insert(s).second)
                    throw InvariantViolation("action '" + s + "' declared twice");
        }
        alphabet_ = Alphabet(symbols);
        keyword("init");
        auto init = ids();
        expect(";");

        Document doc{it->second, Lts(unit_lts(alphabet_))};
        switch (it->second) {
        case DocKind::lts:
        case DocKind::mts:
        case DocKind::dmts:
            doc.spec = modal_body(it->second, init);
            break;
        case DocKind::naa:
            doc.spec = naa_body(init);
            break;
        case DocKind::hml:
            doc.spec = hml_body(init);
            break;
        }
        expect("}");
        if (peek().kind != Tok::end)
            fail({"end of input"});
        return doc;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    Alphabet alphabet_;

    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_++]; }
    static Pos pos_of(const Token& t) { return {t.line, t.column}; }

    static std::string describe(const Token& t)
    {
        switch (t.kind) {
        case Tok::end:
            return "end of input";
        case Tok::quoted:
            return "\"" + t.text + "\"";
        default:
            return "'" + t.text + "'";
        }
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        throw SyntaxError(peek().line, peek().column, describe(peek()), std::move(expected));
    }

    bool is_punct(std::string_view p) const
    {
        return peek().kind == Tok::punct && peek().text == p;
    }
    bool is_keyword(std::string_view k) const
    {
        return peek().kind == Tok::bare && peek().text == k;
    }
    bool accept(std::string_view p)
    {
        if (!is_punct(p))
            return false;
        next();
        return true;
    }
    void expect(std::string_view p)
    {
        if (!accept(p))
            fail({"'" + std::string(p) + "'"});
    }
    void keyword(std::string_view k)
    {
        if (!is_keyword(k))
            fail({"'" + std::string(k) + "'"});
        next();
    }
    bool at_identifier() const
    {
        return peek().kind == Tok::quoted
               || (peek().kind == Tok::bare && is_bare_identifier(peek().text));
    }
    Named ident()
    {
        if (!at_identifier())
            fail({"identifier"});
        const auto& t = next();
        return {t.text, pos_of(t)};
    }
    std::vector<Named> ids()
    {
        std::vector<Named> out;
        if (!at_identifier())
            return out;
        out.push_back(ident());
        while (accept(","))
            out.push_back(ident());
        return out;
    }
    std::string action()
    {
        auto a = ident();
        if (!alphabet_.find(a.name))
            throw UnknownAction(a.pos.line, a.pos.column,
                                "action '" + a.name + "' is not in the alphabet");
        return a.name;
    }

    // (a, t), ... inside braces that the caller has opened.
    std::vector<std::pair<std::string, Named>> pairs()
    {
        std::vector<std::pair<std::string, Named>> out;
        if (!is_punct("("))
            return out;
        do {
            expect("(");
            auto a = action();
            expect(",");
            auto t = ident();
            expect(")");
            out.push_back({a, t});
        } while (accept(","));
        return out;
    }

    Spec modal_body(DocKind kind, const std::vector<Named>& init)
    {
        DmtsBuilder b(alphabet_);
        std::set<std::tuple<std::string, std::string, std::string>> mays;
        std::vector<std::pair<Pos, std::pair<std::string, NamedMoveSet>>> musts;
        for (const auto& s : init)
            b.initial(s.name);
        while (!is_punct("}")) {
            if (is_keyword("may")) {
                next();
                auto s = ident();
                auto a = action();
                auto t = ident();
                expect(";");
                b.may(s.name, a, t.name);
                mays.insert({s.name, a, t.name});
            } else if (is_keyword("must")) {
                const Pos p = pos_of(next());
                auto s = ident();
                expect("{");
                NamedMoveSet n;
                for (auto& [a, t] : pairs())
                    n.insert({a, t.name});
                expect("}");
                expect(";");
                musts.push_back({p, {s.name, n}});
            } else if (is_keyword("state")) {
                next();
                b.state(ident().name);
                expect(";");
            } else {
                fail({"'may'", "'must'", "'state'", "'}'"});
            }
        }
        for (const auto& [p, m] : musts) {
            for (const auto& mv : m.second)
                if (!mays.count({m.first, mv.action, mv.target}))
                    throw InvariantViolation(std::to_string(p.line) + ":" + std::to_string(p.column)
                                             + ": must-move (" + mv.action + "," + mv.target
                                             + ") of '" + m.first + "' has no may-transition");
            b.must(m.first, m.second);
        }

        if (kind == DocKind::lts) {
            if (init.size() != 1)
                throw InvariantViolation("an lts document needs exactly one initial state");
            if (musts.empty())
                for (const auto& [s, a, t] : mays)
                    b.must(s, {{a, t}});
            auto l = dmts_as_lts(b.build());
            if (!l)
                throw InvariantViolation(
                    "lts document: must lines have to be exactly the singletons of the may lines");
            return *l;
        }
        auto d = b.build();
        if (kind == DocKind::mts)
            (void)mts_check(d);
        return d;
    }

    Spec naa_body(const std::vector<Named>& init)
    {
        NaaBuilder b(alphabet_);
        std::set<std::string> declared;
        std::vector<Named> referenced(init.begin(), init.end());
        for (const auto& s : init)
            b.initial(s.name);
        while (!is_punct("}")) {
            if (!is_keyword("state"))
                fail({"'state'", "'}'"});
            next();
            auto s = ident();
            declared.insert(s.name);
            b.state(s.name);
            expect("{");
            if (is_punct("{")) {
                do {
                    expect("{");
                    NamedMoveSet m;
                    for (auto& [a, t] : pairs()) {
                        m.insert({a, t.name});
                        referenced.push_back(t);
                    }
                    expect("}");
                    b.admit(s.name, m);
                } while (accept(","));
            }
            expect("}");
            expect(";");
        }
        for (const auto& r : referenced)
            if (!declared.count(r.name))
                throw UnknownState(r.pos.line, r.pos.column,
                                   "state '" + r.name + "' has no state declaration");
        return b.build();
    }

    Spec hml_body(const std::vector<Named>& init)
    {
        std::vector<std::string> vars;
        std::vector<hml::Formula> bodies;
        std::set<std::string> defined;
        std::vector<Named> referenced(init.begin(), init.end());
        while (!is_punct("}")) {
            auto x = ident();
            if (!defined.insert(x.name).second)
                throw InvariantViolation(std::to_string(x.pos.line) + ":"
                                         + std::to_string(x.pos.column) + ": variable '" + x.name
                                         + "' defined twice");
            expect("=");
            bodies.push_back(disjunction(referenced));
            vars.push_back(x.name);
            expect(";");
        }
        for (const auto& r : referenced)
            if (!defined.count(r.name))
                throw UnknownState(r.pos.line, r.pos.column,
                                   "variable '" + r.name + "' has no equation");
        std::vector<std::string> initials;
        for (const auto& s : init)
            initials.push_back(s.name);
        return HmlDecl(alphabet_, vars, initials, bodies);
    }

    hml::Formula disjunction(std::vector<Named>& referenced)
    {
        auto f = conjunction(referenced);
        while (accept("|"))
            f = hml::disj(f, conjunction(referenced));
        return f;
    }
    hml::Formula conjunction(std::vector<Named>& referenced)
    {
        auto f = unary(referenced);
        while (accept("&"))
            f = hml::conj(f, unary(referenced));
        return f;
    }
    hml::Formula unary(std::vector<Named>& referenced)
    {
        if (is_keyword("tt")) {
            next();
            return hml::tt();
        }
        if (is_keyword("ff")) {
            next();
            return hml::ff();
        }
        if (accept("<")) {
            auto a = action();
            expect(">");
            return hml::diamond(a, unary(referenced));
        }
        if (accept("[")) {
            auto a = action();
            expect("]");
            return hml::box(a, unary(referenced));
        }
        if (accept("(")) {
            auto f = disjunction(referenced);
            expect(")");
            return f;
        }
        if (at_identifier()) {
            auto x = ident();
            referenced.push_back(x);
            return hml::var(x.name);
        }
        fail({"'tt'", "'ff'", "'<'", "'['", "'('", "identifier"});
    }
};

// ---------------------------------------------------------------------------
// Serializer

std::string join_ids(const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? ", " : "") + quote_id(names[i]);
    return out;
}

std::string pair_list(const Alphabet& sigma, const std::vector<std::string>& states,
                      const MoveSet& m)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i)
        out += (i ? ", (" : "(") + quote_id(sigma.name(m[i].action)) + ","
               + quote_id(states[m[i].target]) + ")";
    return out;
}

std::vector<std::string> names_of(const std::vector<std::string>& states,
                                  const std::vector<StateId>& ids)
{
    std::vector<std::string> out;
    for (auto s : ids)
        out.push_back(states[s]);
    return out;
}

void header(std::string& out, DocKind kind, const Alphabet& sigma,
            const std::vector<std::string>& init)
{
    out += std::string(kind_name(kind)) + " {\n";
    out += "  alphabet " + join_ids(sigma.symbols()) + ";\n";
    out += "  init " + join_ids(init) + ";\n";
}

/// States mentioned nowhere else need a `state` line to survive a round trip.
std::vector<bool> isolated(std::size_t n, const std::vector<StateId>& initials,
                           const auto& moves_of)
{
    std::vector<bool> out(n, true);
    for (auto s : initials)
        out[s] = false;
    for (StateId s = 0; s < n; ++s)
        for (auto mv : moves_of(s)) {
            out[s] = false;
            out[mv.target] = false;
        }
    return out;
}

std::string write_modal(DocKind kind, const Dmts& d)
{
    std::string out;
    header(out, kind, d.alphabet(), names_of(d.states(), d.initials()));
    const auto& sigma = d.alphabet();
    const auto alone = isolated(d.size(), d.initials(), [&](StateId s) { return d.may(s); });
    for (StateId s = 0; s < d.size(); ++s) {
        const auto name = quote_id(d.name(s));
        if (alone[s])
            out += "  state " + name + ";\n";
        for (auto mv : d.may(s))
            out += "  may " + name + " " + quote_id(sigma.name(mv.action)) + " "
                   + quote_id(d.name(mv.target)) + ";\n";
        for (const auto& n : d.must(s))
            out += "  must " + name + " {" + pair_list(sigma, d.states(), n) + "};\n";
    }
    return out + "}\n";
}

std::string write_lts(const Lts& l)
{
    std::string out;
    header(out, DocKind::lts, l.alphabet(), {l.name(l.initial())});
    const auto& sigma = l.alphabet();
    const auto alone = isolated(l.size(), {l.initial()}, [&](StateId s) { return l.succ(s); });
    for (StateId s = 0; s < l.size(); ++s) {
        const auto name = quote_id(l.name(s));
        if (alone[s])
            out += "  state " + name + ";\n";
        for (auto mv : l.succ(s))
            out += "  may " + name + " " + quote_id(sigma.name(mv.action)) + " "
                   + quote_id(l.name(mv.target)) + ";\n";
    }
    return out + "}\n";
}

std::string write_naa(const Naa& n)
{
    std::string out;
    header(out, DocKind::naa, n.alphabet(), names_of(n.states(), n.initials()));
    for (StateId s = 0; s < n.size(); ++s) {
        out += "  state " + quote_id(n.name(s)) + " {";
        const auto& f = n.tran(s);
        for (std::size_t i = 0; i < f.size(); ++i)
            out += (i ? ", {" : "{") + pair_list(n.alphabet(), n.states(), f[i]) + "}";
        out += "};\n";
    }
    return out + "}\n";
}

std::string write_hml(const HmlDecl& d)
{
    std::string out;
    std::vector<std::string> init;
    for (auto x : d.initials())
        init.push_back(d.var(x));
    header(out, DocKind::hml, d.alphabet(), init);
    for (std::size_t x = 0; x < d.size(); ++x)
        out += "  " + quote_id(d.var(x)) + " = " + hml::to_string(d.body(x)) + ";\n";
    return out + "}\n";
}

} // namespace

Document parse_document(std::string_view text)
{
    return Parser(text).document();
}

std::string serialize(const Document& d)
{
    switch (d.kind) {
    case DocKind::lts:
        return write_lts(std::get<Lts>(d.spec));
    case DocKind::mts:
    case DocKind::dmts:
        return write_modal(d.kind, std::get<Dmts>(d.spec));
    case DocKind::naa:
        return write_naa(std::get<Naa>(d.spec));
    case DocKind::hml:
        return write_hml(std::get<HmlDecl>(d.spec));
    }
    return {};
}

Document as_document(Spec s)
{
    static constexpr DocKind kinds[] = {DocKind::lts, DocKind::dmts, DocKind::naa, DocKind::hml};
    const auto k = kinds[s.index()];
    return {k, std::move(s)};
}

} // namespace modspec

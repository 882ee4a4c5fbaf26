#include "modspec/hml.hpp"

#include <algorithm>
#include <numeric>

namespace modspec {
namespace hml {

namespace {

Formula make(Kind k, std::string name = {}, Formula l = nullptr, Formula r = nullptr)
{
    return std::make_shared<const Node>(Node{k, std::move(name), std::move(l), std::move(r)});
}

int precedence(Kind k)
{
    switch (k) {
    case Kind::disj:
        return 1;
    case Kind::conj:
        return 2;
    default:
        return 3;
    }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, int min_prec, std::string& out)
{
    if (precedence(f->kind) < min_prec) {
        out += "(";
        print(f, out);
        out += ")";
    } else {
        print(f, out);
    }
}

void print(const Formula& f, std::string& out)
{
    switch (f->kind) {
    case Kind::tt:
        out += "tt";
        break;
    case Kind::ff:
        out += "ff";
        break;
    case Kind::var:
        out += quote_id(f->name);
        break;
    case Kind::conj:
    case Kind::disj: {
        // Binary nodes are left-nested; a right operand of the same or
        // looser precedence is parenthesised so that parsing restores the tree.
        const int p = precedence(f->kind);
        print_operand(f->left, p, out);
        out += f->kind == Kind::conj ? " & " : " | ";
        print_operand(f->right, p + 1, out);
        break;
    }
    case Kind::diamond:
    case Kind::box:
        out += f->kind == Kind::diamond ? "<" : "[";
        out += quote_id(f->name);
        out += f->kind == Kind::diamond ? ">" : "]";
        print_operand(f->left, 3, out);
        break;
    }
}

} // namespace

Formula tt()
{
    static const Formula f = make(Kind::tt);
    return f;
}

Formula ff()
{
    static const Formula f = make(Kind::ff);
    return f;
}

Formula var(std::string name)
{
    return make(Kind::var, std::move(name));
}

Formula conj(Formula l, Formula r)
{
    return make(Kind::conj, {}, std::move(l), std::move(r));
}

Formula disj(Formula l, Formula r)
{
    return make(Kind::disj, {}, std::move(l), std::move(r));
}

Formula diamond(std::string action, Formula body)
{
    return make(Kind::diamond, std::move(action), std::move(body));
}

Formula box(std::string action, Formula body)
{
    return make(Kind::box, std::move(action), std::move(body));
}

Formula conj_all(const std::vector<Formula>& parts)
{
    if (parts.empty())
        return tt();
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = conj(f, parts[i]);
    return f;
}

Formula disj_all(const std::vector<Formula>& parts)
{
    if (parts.empty())
        return ff();
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = disj(f, parts[i]);
    return f;
}

int compare(const Formula& a, const Formula& b)
{
    if (a == b)
        return 0;
    if (a->kind != b->kind)
        return a->kind < b->kind ? -1 : 1;
    if (int c = a->name.compare(b->name))
        return c < 0 ? -1 : 1;
    if (a->left || b->left) {
        if (int c = compare(a->left, b->left))
            return c;
    }
    if (a->right || b->right) {
        if (int c = compare(a->right, b->right))
            return c;
    }
    return 0;
}

bool equal(const Formula& a, const Formula& b)
{
    return compare(a, b) == 0;
}

std::string to_string(const Formula& f)
{
    std::string out;
    print(f, out);
    return out;
}

std::size_t depth(const Formula& f)
{
    switch (f->kind) {
    case Kind::tt:
    case Kind::ff:
    case Kind::var:
        return 0;
    case Kind::conj:
    case Kind::disj:
        return std::max(depth(f->left), depth(f->right));
    case Kind::diamond:
    case Kind::box:
        return 1 + depth(f->left);
    }
    return 0;
}

} // namespace hml

namespace {

void check_formula(const hml::Formula& f, const Alphabet& alphabet,
                   const std::vector<std::string>& vars)
{
    if (!f)
        throw InvariantViolation("null formula");
    switch (f->kind) {
    case hml::Kind::tt:
    case hml::Kind::ff:
        return;
    case hml::Kind::var:
        if (!std::binary_search(vars.begin(), vars.end(), f->name))
            throw UnboundVariable(f->name);
        return;
    case hml::Kind::conj:
    case hml::Kind::disj:
        check_formula(f->left, alphabet, vars);
        check_formula(f->right, alphabet, vars);
        return;
    case hml::Kind::diamond:
    case hml::Kind::box:
        if (!alphabet.find(f->name))
            throw InvariantViolation("formula uses unknown action '" + f->name + "'");
        check_formula(f->left, alphabet, vars);
        return;
    }
}

} // namespace

HmlDecl::HmlDecl(Alphabet alphabet, std::vector<std::string> vars,
                 std::vector<std::string> initials, std::vector<hml::Formula> decl)
    : alphabet_(std::move(alphabet))
{
    if (vars.size() != decl.size())
        throw InvariantViolation("declaration must give one body per variable");
    std::vector<std::size_t> order(vars.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return vars[i] < vars[j]; });
    for (auto i : order) {
        if (!vars_.empty() && vars_.back() == vars[i])
            throw InvariantViolation("variable '" + vars[i] + "' is declared twice");
        vars_.push_back(vars[i]);
        decl_.push_back(decl[i]);
    }
    for (const auto& f : decl_)
        check_formula(f, alphabet_, vars_);
    for (const auto& x : initials) {
        auto i = find(x);
        if (!i)
            throw UnboundVariable(x);
        initials_.push_back(*i);
    }
    std::sort(initials_.begin(), initials_.end());
    initials_.erase(std::unique(initials_.begin(), initials_.end()), initials_.end());
}

std::optional<std::size_t> HmlDecl::find(std::string_view name) const
{
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

const hml::Formula& HmlDecl::body(std::string_view name) const
{
    auto i = find(name);
    if (!i)
        throw UnboundVariable(std::string(name));
    return decl_[*i];
}

bool operator==(const HmlDecl& a, const HmlDecl& b)
{
    if (!(a.alphabet_ == b.alphabet_) || a.vars_ != b.vars_ || a.initials_ != b.initials_)
        return false;
    for (std::size_t i = 0; i < a.decl_.size(); ++i)
        if (!hml::equal(a.decl_[i], b.decl_[i]))
            return false;
    return true;
}

} // namespace modspec

#include "modspec/dot.hpp"

#include <set>
#include <string_view>

namespace modspec {

namespace {

std::string escaped(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string node(StateId s)
{
    return "n" + std::to_string(s);
}

class Writer {
public:
    Writer() { out_ = "digraph spec {\n  rankdir=LR;\n  node [shape=circle];\n"; }

    void states(const std::vector<std::string>& names)
    {
        for (StateId s = 0; s < names.size(); ++s)
            line(node(s) + " [label=" + escaped(names[s]) + "];");
    }
    void initials(const std::vector<StateId>& init)
    {
        for (std::size_t i = 0; i < init.size(); ++i) {
            const auto p = "init" + std::to_string(i);
            line(p + " [shape=point, style=invis];");
            line(p + " -> " + node(init[i]) + ";");
        }
    }
    void edge(const std::string& from, const std::string& to, std::string_view label,
              std::string_view style = {})
    {
        std::string attrs = "label=" + escaped(label);
        if (!style.empty())
            attrs += ", " + std::string(style);
        line(from + " -> " + to + " [" + attrs + "];");
    }
    void line(const std::string& l) { out_ += "  " + l + "\n"; }
    std::string finish() { return out_ + "}\n"; }

private:
    std::string out_;
};

std::string dot_lts(const Lts& l)
{
    Writer w;
    w.states(l.states());
    w.initials({l.initial()});
    for (StateId s = 0; s < l.size(); ++s)
        for (auto mv : l.succ(s))
            w.edge(node(s), node(mv.target), l.alphabet().name(mv.action));
    return w.finish();
}

std::string dot_dmts(const Dmts& d)
{
    Writer w;
    w.states(d.states());
    w.initials(d.initials());
    const auto& sigma = d.alphabet();
    for (StateId s = 0; s < d.size(); ++s) {
        std::set<Move> required;
        for (const auto& n : d.must(s))
            required.insert(n.begin(), n.end());
        for (auto mv : d.may(s))
            if (!required.count(mv))
                w.edge(node(s), node(mv.target), sigma.name(mv.action), "style=dashed");
        const auto& musts = d.must(s);
        for (std::size_t i = 0; i < musts.size(); ++i) {
            const auto& n = musts[i];
            if (n.size() == 1) {
                w.edge(node(s), node(n[0].target), sigma.name(n[0].action));
                continue;
            }
            const auto j = node(s) + "_must" + std::to_string(i);
            w.line(j + " [shape=point];");
            w.line(node(s) + " -> " + j + " [arrowhead=none];");
            for (auto mv : n)
                w.edge(j, node(mv.target), sigma.name(mv.action));
        }
    }
    return w.finish();
}

std::string dot_naa(const Naa& n)
{
    Writer w;
    w.states(n.states());
    w.initials(n.initials());
    for (StateId s = 0; s < n.size(); ++s) {
        const auto& f = n.tran(s);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto j = node(s) + "_set" + std::to_string(i);
            w.line(j + " [shape=point];");
            w.line(node(s) + " -> " + j + " [arrowhead=none];");
            for (auto mv : f[i])
                w.edge(j, node(mv.target), n.alphabet().name(mv.action));
        }
    }
    return w.finish();
}

void modal_edges(const hml::Formula& f, std::set<std::pair<std::string, std::string>>& out,
                 const std::string& prefix)
{
    switch (f->kind) {
    case hml::Kind::var:
        out.insert({prefix, f->name});
        return;
    case hml::Kind::conj:
    case hml::Kind::disj:
        modal_edges(f->left, out, prefix);
        modal_edges(f->right, out, prefix);
        return;
    case hml::Kind::diamond:
        modal_edges(f->left, out, prefix + "<" + f->name + ">");
        return;
    case hml::Kind::box:
        modal_edges(f->left, out, prefix + "[" + f->name + "]");
        return;
    default:
        return;
    }
}

std::string dot_hml(const HmlDecl& d)
{
    Writer w;
    for (std::size_t x = 0; x < d.size(); ++x)
        w.line(node(static_cast<StateId>(x)) + " [shape=box, label="
               + escaped(d.var(x) + " = " + hml::to_string(d.body(x))) + "];");
    std::vector<StateId> init(d.initials().begin(), d.initials().end());
    w.initials(init);
    for (std::size_t x = 0; x < d.size(); ++x) {
        std::set<std::pair<std::string, std::string>> edges;
        modal_edges(d.body(x), edges, "");
        for (const auto& [label, target] : edges)
            w.edge(node(static_cast<StateId>(x)), node(static_cast<StateId>(*d.find(target))),
                   label, "style=dotted");
    }
    return w.finish();
}

} // namespace

std::string export_dot(const Spec& s)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Lts>)
                return dot_lts(v);
            else if constexpr (std::is_same_v<T, Dmts>)
                return dot_dmts(v);
            else if constexpr (std::is_same_v<T, Naa>)
                return dot_naa(v);
            else
                return dot_hml(v);
        },
        s);
}

} // namespace modspec

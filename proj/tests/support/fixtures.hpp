#pragma once

// Hand-built specifications shared by the unit tests.

#include "modspec/core.hpp"
#include "modspec/hml.hpp"

#include <string>

namespace fixtures {

using namespace modspec;

inline Alphabet ab() { return Alphabet({"a", "b"}); }
inline Alphabet abc() { return Alphabet({"a", "b", "c"}); }

inline Lts loops(const Alphabet& alphabet, const std::vector<std::string>& actions)
{
    LtsBuilder b(alphabet);
    b.initial("i");
    for (const auto& a : actions)
        b.trans("i", a, "i");
    return b.build();
}

inline Lts deadlock(const Alphabet& alphabet) { return loops(alphabet, {}); }

// --- request / grant example --------------------------------------------

inline Alphabet intro_alphabet() { return Alphabet({"grant", "idle", "request", "work"}); }

inline Dmts intro_spec()
{
    DmtsBuilder b(intro_alphabet());
    b.initial("X")
        .may("X", "request", "Y")
        .may("X", "grant", "X")
        .may("X", "work", "X")
        .may("X", "idle", "X")
        .may("Y", "work", "Y")
        .may("Y", "grant", "X")
        .must("Y", {{"work", "Y"}, {"grant", "X"}});
    return b.build();
}

inline Lts intro_impl()
{
    LtsBuilder b(intro_alphabet());
    b.initial("i0")
        .trans("i0", "request", "i1")
        .trans("i1", "grant", "i2")
        .trans("i2", "request", "i3")
        .trans("i3", "work", "i3")
        .trans("i0", "idle", "i4")
        .trans("i4", "idle", "i4");
    return b.build();
}

inline HmlDecl intro_hml()
{
    using namespace hml;
    auto X = var("X"), Y = var("Y");
    auto x = conj_all({box("grant", X), box("idle", X), box("work", X), box("request", Y)});
    auto y = conj_all({disj(diamond("work", Y), diamond("grant", X)), box("idle", ff()),
                       box("request", ff())});
    return HmlDecl(intro_alphabet(), {"X", "Y"}, {"X"}, {x, y});
}

// --- "always an a" ------------------------------------------------------

inline HmlDecl invariance_hml()
{
    using namespace hml;
    auto X = var("X");
    return HmlDecl(ab(), {"X"}, {"X"},
                   {conj_all({diamond("a", tt()), box("a", X), box("b", X)})});
}

inline Naa invariance_naa()
{
    NaaBuilder b(ab());
    b.initial("s0").admit("s0", {{"a", "s0"}}).admit("s0", {{"a", "s0"}, {"b", "s0"}});
    return b.build();
}

inline Dmts invariance_dmts()
{
    DmtsBuilder b(ab());
    b.initial("s0").may("s0", "a", "s0").may("s0", "b", "s0").must("s0", {{"a", "s0"}});
    return b.build();
}

// --- "a until b" ----------------------------------------------------------

inline HmlDecl until_hml()
{
    using namespace hml;
    auto X = var("X");
    return HmlDecl(abc(), {"X"}, {"X"},
                   {disj(diamond("b", tt()),
                         conj_all({diamond("a", tt()), box("a", X), box("b", X), box("c", X)}))});
}

inline Naa until_naa()
{
    NaaBuilder b(abc());
    b.initial("s0")
        .admit("s0", {{"b", "s1"}})
        .admit("s0", {{"b", "s1"}, {"a", "s1"}})
        .admit("s0", {{"b", "s1"}, {"c", "s1"}})
        .admit("s0", {{"b", "s1"}, {"a", "s1"}, {"c", "s1"}})
        .admit("s0", {{"a", "s0"}})
        .admit("s0", {{"a", "s0"}, {"c", "s0"}});
    const std::vector<std::string> acts = {"a", "b", "c"};
    for (int mask = 0; mask < 8; ++mask) {
        NamedMoveSet m;
        for (int k = 0; k < 3; ++k)
            if (mask & (1 << k))
                m.insert({acts[k], "s1"});
        b.admit("s1", m);
    }
    return b.build();
}

inline Dmts until_dmts()
{
    DmtsBuilder b(abc());
    b.initial("s01").initial("s02");
    b.may("s01", "b", "s1").may("s01", "a", "s1").may("s01", "c", "s1");
    b.must("s01", {{"b", "s1"}});
    b.may("s02", "a", "s02").may("s02", "a", "s01");
    b.must("s02", {{"a", "s02"}, {"a", "s01"}});
    for (const char* a : {"b", "c"})
        b.may("s02", a, "s01").may("s02", a, "s02");
    for (const char* a : {"a", "b", "c"})
        b.may("s1", a, "s1");
    return b.build();
}

// LTS doing a, a, b and then deadlocking.
inline Lts aab()
{
    LtsBuilder b(abc());
    b.initial("p0").trans("p0", "a", "p1").trans("p1", "a", "p2").trans("p2", "b", "p3");
    return b.build();
}

} // namespace fixtures

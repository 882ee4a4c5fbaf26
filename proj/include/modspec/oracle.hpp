#pragma once

#include "modspec/core.hpp"
#include "modspec/refinement.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace modspec {

class BoundTooLarge : public Error {
public:
    using Error::Error;
};

/// Enumeration bound: every LTS with at most `max_states` states over `alphabet`.
struct EnumBound {
    std::size_t max_states = 3;
    Alphabet alphabet;
    /// Lifts the default refusal of enumerations above 2^24 raw encodings.
    bool allow_exponential = false;
};

/// A small LTS packed into 64 bits. State 0 is initial; transition
/// (s, a, t) is bit (s * |alphabet| + a) * states + t.
struct PackedLts {
    std::uint8_t states = 0;
    std::uint64_t bits = 0;

    friend auto operator<=>(const PackedLts&, const PackedLts&) = default;
};

Lts unpack(const PackedLts& p, const Alphabet& alphabet);
/// Canonical packed form of the reachable part of `l`.
PackedLts canonical(const Lts& l);

/// Number of raw encodings the enumeration scans.
std::uint64_t raw_encodings(std::size_t max_states, std::size_t actions);

/// Calls `fn` on one representative of every isomorphism class of LTS with
/// 1..max_states states, all reachable from the initial state, in a fixed
/// order. Stops early when `fn` returns false.
void for_each_lts(const EnumBound& b, const std::function<bool(const PackedLts&)>& fn);

/// Cached list of the representatives visited by for_each_lts.
const std::vector<PackedLts>& enum_packed(const EnumBound& b);
std::vector<Lts> enum_lts(const EnumBound& b);

/// Membership test specialised for repeated queries against one specification.
class Acceptor {
public:
    virtual ~Acceptor() = default;
    [[nodiscard]] virtual bool accepts(const PackedLts& l) const = 0;
};

std::unique_ptr<Acceptor> make_acceptor(const Spec& s);

/// Sorted canonical implementations within the bound.
std::vector<PackedLts> impl_set(const Spec& s, const EnumBound& b);

/// First enumerated LTS implementing `s1` but not `s2`.
std::optional<Lts> tr_counterexample(const Spec& s1, const Spec& s2, const EnumBound& b);
bool tr_bounded(const Spec& s1, const Spec& s2, const EnumBound& b);
/// First enumerated LTS on which the two specifications disagree.
std::optional<Lts> treq_counterexample(const Spec& s1, const Spec& s2, const EnumBound& b);
bool treq_bounded(const Spec& s1, const Spec& s2, const EnumBound& b);

// ---------------------------------------------------------------------------
// Random specifications

enum class Formalism { lts, mts, dmts, naa, hml };

struct GenParams {
    std::size_t max_states = 4;
    std::size_t actions = 2;
    std::size_t max_depth = 3;
    std::size_t max_vars = 3;
};

/// Alphabet {a, b, c, ...} with `k` symbols.
Alphabet letters(std::size_t k);

Lts gen_lts(std::mt19937_64& rng, const GenParams& p);
/// A DMTS with one initial state and singleton must-sets.
Dmts gen_mts(std::mt19937_64& rng, const GenParams& p);
Dmts gen_dmts(std::mt19937_64& rng, const GenParams& p);
Naa gen_naa(std::mt19937_64& rng, const GenParams& p);
HmlDecl gen_hml(std::mt19937_64& rng, const GenParams& p);

Spec gen_random(Formalism kind, const GenParams& p, std::uint64_t seed);

} // namespace modspec

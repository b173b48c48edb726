#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tripodgate {

// Internal atomic levels. Both atoms use g0, g1 (the computational states),
// anc (the ancillary ground state) and exc (the excited state coupled to the
// cavity). Atom 1 additionally uses exc2, a second excited state addressed
// only by the preliminary transfer lasers; exc2 has no cavity coupling.
enum class AtomLevel : std::uint8_t { g0 = 0, g1 = 1, anc = 2, exc = 3, exc2 = 4 };

inline constexpr int kLevelsAtom1 = 5;
inline constexpr int kLevelsAtom2 = 4;

constexpr bool level_valid_for_atom(int atom, AtomLevel l)
{
    if (atom == 1)
        return static_cast<int>(l) < kLevelsAtom1;
    if (atom == 2)
        return static_cast<int>(l) < kLevelsAtom2;
    return false;
}

constexpr bool is_excited(AtomLevel l)
{
    return l == AtomLevel::exc || l == AtomLevel::exc2;
}

// Serialized labels used in file headers and state specs.
constexpr std::string_view level_label(AtomLevel l)
{
    switch (l) {
    case AtomLevel::g0: return "0";
    case AtomLevel::g1: return "1";
    case AtomLevel::anc: return "a";
    case AtomLevel::exc: return "e";
    case AtomLevel::exc2: return "e2";
    }
    return "?";
}

inline AtomLevel parse_level(std::string_view s)
{
    if (s == "0") return AtomLevel::g0;
    if (s == "1") return AtomLevel::g1;
    if (s == "a") return AtomLevel::anc;
    if (s == "e") return AtomLevel::exc;
    if (s == "e2") return AtomLevel::exc2;
    throw std::invalid_argument("unknown atomic level label '" + std::string(s) + "'");
}

} // namespace tripodgate

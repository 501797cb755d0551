#pragma once

#include "des2/eisenstein_q.hpp"

#include <array>
#include <string>

namespace des2 {

/// Parity pattern (first index, second index) of a level-2 double series or double zeta value.
enum class PairKind { eo, oe, oo, ee };

inline constexpr std::array<PairKind, 3> kLevel2Kinds{PairKind::eo, PairKind::oe, PairKind::oo};

inline std::string kind_name(PairKind k)
{
    switch (k) {
    case PairKind::eo: return "eo";
    case PairKind::oe: return "oe";
    case PairKind::oo: return "oo";
    case PairKind::ee: return "ee";
    }
    return "?";
}

inline PairKind parse_kind(const std::string& s)
{
    if (s == "eo") return PairKind::eo;
    if (s == "oe") return PairKind::oe;
    if (s == "oo") return PairKind::oo;
    if (s == "ee") return PairKind::ee;
    throw DomainError("unknown kind '" + s + "' (expected eo, oe, oo or ee)");
}

inline Parity first_parity(PairKind k) { return (k == PairKind::eo || k == PairKind::ee) ? Parity::even : Parity::odd; }
inline Parity second_parity(PairKind k) { return (k == PairKind::oe || k == PairKind::ee) ? Parity::even : Parity::odd; }

}  // namespace des2

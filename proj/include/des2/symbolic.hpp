#pragma once

#include "des2/exact/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>

namespace des2 {

/// Formal normalized single zeta values at odd arguments, which are not rational:
/// Zo(p) = (2 pi i)^(-p) zeta^o(p), Ze(p) = (2 pi i)^(-p) zeta^e(p), Z(p) = (2 pi i)^(-p) zeta(p).
enum class ZetaFamily { Zo, Ze, Z };

inline std::string family_name(ZetaFamily f)
{
    switch (f) {
    case ZetaFamily::Zo: return "Zo";
    case ZetaFamily::Ze: return "Ze";
    case ZetaFamily::Z: return "Z";
    }
    return "?";
}

struct ZetaSymbol {
    ZetaFamily family = ZetaFamily::Zo;
    int p = 1;

    friend bool operator<(const ZetaSymbol& a, const ZetaSymbol& b)
    {
        return std::tie(a.family, a.p) < std::tie(b.family, b.p);
    }
    friend bool operator==(const ZetaSymbol& a, const ZetaSymbol& b)
    {
        return a.family == b.family && a.p == b.p;
    }
    std::string to_string() const { return family_name(family) + "(" + std::to_string(p) + ")"; }
};

/// Element of Q + sum_s Q*s over formal zeta symbols.
class SymbolicScalar {
public:
    SymbolicScalar() = default;
    SymbolicScalar(const Rational& r) : rational_(r) {}
    SymbolicScalar(long r) : rational_(r) {}
    explicit SymbolicScalar(const ZetaSymbol& s, const Rational& c = 1) { add(s, c); }

    const Rational& rational_part() const { return rational_; }
    const std::map<ZetaSymbol, Rational>& symbols() const { return sym_; }

    Rational coefficient(const ZetaSymbol& s) const
    {
        auto it = sym_.find(s);
        return it == sym_.end() ? Rational(0) : it->second;
    }

    SymbolicScalar& add(const ZetaSymbol& s, const Rational& c)
    {
        if (sgn(c) == 0) return *this;
        Rational& slot = sym_[s];
        slot += c;
        if (sgn(slot) == 0) sym_.erase(s);
        return *this;
    }

    bool is_rational() const { return sym_.empty(); }

    SymbolicScalar& operator+=(const SymbolicScalar& o)
    {
        rational_ += o.rational_;
        for (const auto& [s, c] : o.sym_) add(s, c);
        return *this;
    }
    SymbolicScalar& operator-=(const SymbolicScalar& o)
    {
        rational_ -= o.rational_;
        for (const auto& [s, c] : o.sym_) add(s, -c);
        return *this;
    }
    SymbolicScalar& operator*=(const Rational& c)
    {
        if (sgn(c) == 0) {
            rational_ = 0;
            sym_.clear();
            return *this;
        }
        rational_ *= c;
        for (auto& [s, v] : sym_) v *= c;
        return *this;
    }
    friend SymbolicScalar operator+(SymbolicScalar a, const SymbolicScalar& b) { return a += b; }
    friend SymbolicScalar operator-(SymbolicScalar a, const SymbolicScalar& b) { return a -= b; }
    friend SymbolicScalar operator-(SymbolicScalar a) { return a *= Rational(-1); }
    friend SymbolicScalar operator*(SymbolicScalar a, const Rational& c) { return a *= c; }
    friend SymbolicScalar operator*(const Rational& c, SymbolicScalar a) { return a *= c; }
    friend bool operator==(const SymbolicScalar& a, const SymbolicScalar& b)
    {
        return a.rational_ == b.rational_ && a.sym_ == b.sym_;
    }

    std::string to_string() const
    {
        std::string out = des2::to_string(rational_);
        for (const auto& [s, c] : sym_) out += " + (" + des2::to_string(c) + ")*" + s.to_string();
        return out;
    }

private:
    Rational rational_;
    std::map<ZetaSymbol, Rational> sym_;
};

inline bool is_zero(const SymbolicScalar& x) { return sgn(x.rational_part()) == 0 && x.symbols().empty(); }

}  // namespace des2

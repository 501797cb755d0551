#pragma once

// Canonical JSON forms. nlohmann::json keeps object keys in a std::map, so dumps are key-sorted.

#include "des2/double_eisenstein.hpp"
#include "des2/exact/matrix.hpp"
#include "des2/exact/qseries.hpp"
#include "des2/exact/rational.hpp"
#include "des2/numeric_mzv.hpp"
#include "des2/poly_action.hpp"
#include "des2/symbolic.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace des2 {

using Json = nlohmann::json;

inline constexpr int kJsonSchemaVersion = 1;

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Json to_json(const QMatrix& m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

inline Json to_json(const ProjMatrix& g) { return Json::array({Json::array({g.a(), g.b()}), Json::array({g.c(), g.d()})}); }

inline Json to_json(const GroupRingElement& e)
{
    Json a = Json::array();
    for (const auto& [m, c] : e.terms()) a.push_back({{"coeff", c}, {"matrix", to_json(m)}});
    return a;
}

inline Json to_json(const Poly& p) { return {{"k", p.weight()}, {"coeffs", to_json(p.coeffs())}}; }

inline Json to_json(const ZetaSymbol& s) { return {{"symbol", family_name(s.family)}, {"p", s.p}}; }

inline Json to_json(const QSeries<Rational>& s)
{
    return {{"ring", "Q"}, {"order", s.order()}, {"coeffs", to_json(s.coeffs())}};
}

/// Symbolic series split by symbol: one coefficient list per symbol, plus the rational part if any.
inline Json symbolic_components(const SymSeries& s)
{
    std::map<ZetaSymbol, std::vector<Rational>> parts;
    std::vector<Rational> rational(s.order() + 1);
    bool has_rational = false;
    for (std::size_t n = 0; n <= s.order(); ++n) {
        rational[n] = s[n].rational_part();
        has_rational = has_rational || sgn(rational[n]) != 0;
        for (const auto& [sym, c] : s[n].symbols()) {
            auto& v = parts[sym];
            v.resize(s.order() + 1);
            v[n] = c;
        }
    }
    Json a = Json::array();
    for (const auto& [sym, v] : parts) {
        Json e = to_json(sym);
        e["coeffs"] = to_json(v);
        a.push_back(std::move(e));
    }
    if (has_rational) a.push_back({{"symbol", "1"}, {"coeffs", to_json(rational)}});
    return a;
}

inline Json to_json(const SymSeries& s)
{
    return {{"ring", "Q[Z]"}, {"order", s.order()}, {"components", symbolic_components(s)}};
}

/// Reads {"ring": "Q", "order": N, "coeffs": [...]}; a different ring tag is an ArithmeticError.
inline QSeries<Rational> rational_series_from_json(const Json& j)
{
    if (j.contains("ring") && j.at("ring") != "Q")
        throw ArithmeticError("series ring mismatch: expected Q, got " + j.at("ring").get<std::string>());
    const auto& c = j.at("coeffs");
    std::vector<Rational> v;
    for (const auto& x : c) v.push_back(parse_rational(x.get<std::string>()));
    if (j.contains("order") && j.at("order").get<std::size_t>() + 1 != v.size())
        throw DomainError("series order does not match the coefficient count");
    return QSeries<Rational>::from_coeffs(std::move(v));
}

inline Json to_json(const TriPartSeries& G)
{
    Json c = {{"tag", G.constant.tag()}, {"kind", G.constant.kind}, {"r", G.constant.r}, {"s", G.constant.s}};
    if (G.constant.value) {
        c["c0"] = format_real(G.constant.value->c0, G.constant.digits);
        c["c1"] = format_real(G.constant.value->c1, G.constant.digits);
        c["digits"] = G.constant.digits;
    }
    return {{"kind", G.kind},
            {"r", G.r},
            {"s", G.s},
            {"order", G.order},
            {"constant", std::move(c)},
            {"comb", to_json(G.comb.coeffs())},
            {"imag", symbolic_components(G.imag)}};
}

inline Json to_json(const StratumCheck& c)
{
    Json f = nullptr;
    if (c.first_failure) f = {{"n", c.first_failure->n}, {"lhs", c.first_failure->lhs}, {"rhs", c.first_failure->rhs}};
    return {{"name", c.name}, {"stratum", c.stratum}, {"pass", c.pass}, {"first_failure", std::move(f)}};
}

inline Json to_json(const StratifiedReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"name", r.name}, {"pass", r.pass()}, {"checks", std::move(checks)}, {"data", r.data}};
}

/// Numeric values are printed with `digits` significant digits.
inline Json to_json(const NumericCheck& c, int digits)
{
    return {{"name", c.name},
            {"pass", c.pass},
            {"lhs", format_real(c.lhs, digits)},
            {"rhs", format_real(c.rhs, digits)},
            {"residual", format_real(c.residual(), 6)},
            {"tolerance", format_real(c.tolerance, 6)}};
}

inline Json to_json(const NumericReport& r, int digits)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c, digits));
    return {{"name", r.name}, {"pass", r.pass()}, {"checks", std::move(checks)}, {"data", r.data}};
}

}  // namespace des2

#pragma once

#include "des2/acceptance.hpp"
#include "des2/double_eisenstein.hpp"
#include "des2/eisenstein_q.hpp"
#include "des2/formal_dzspace.hpp"
#include "des2/json.hpp"
#include "des2/modforms_level2.hpp"
#include "des2/numeric_mzv.hpp"
#include "des2/period_poly.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace des2::cli {

inline constexpr const char* kToolName = "des2";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct RunReport {
    std::string subcommand;
    Json parameters = Json::object();
    std::vector<std::pair<std::string, bool>> checks;
    Json artifacts = Json::object();
    std::vector<std::string> table;  // human-readable body
    double seconds = 0;

    bool pass() const
    {
        for (const auto& [n, ok] : checks)
            if (!ok) return false;
        return true;
    }
    void check(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
    void line(std::string s) { table.push_back(std::move(s)); }
};

/// Canonical JSON: sorted keys, two-space indent, no timing.
inline std::string to_canonical_json(const RunReport& r)
{
    Json checks = Json::array();
    for (const auto& [n, ok] : r.checks) checks.push_back({{"name", n}, {"pass", ok}});
    Json j = {{"schema_version", kJsonSchemaVersion},
              {"tool", kToolName},
              {"tool_version", kToolVersion},
              {"subcommand", r.subcommand},
              {"parameters", r.parameters},
              {"pass", r.pass()},
              {"checks", std::move(checks)},
              {"artifacts", r.artifacts}};
    return j.dump(2) + "\n";
}

inline std::string to_human(const RunReport& r)
{
    std::ostringstream os;
    os << kToolName << " " << r.subcommand << " " << r.parameters.dump() << "\n";
    for (const auto& l : r.table) os << l << "\n";
    std::size_t failed = 0;
    for (const auto& [n, ok] : r.checks)
        if (!ok) {
            os << "  FAIL " << n << "\n";
            ++failed;
        }
    if (!r.checks.empty())
        os << (failed == 0 ? "PASS" : "FAIL") << ": " << r.checks.size() - failed << "/" << r.checks.size() << " checks";
    else
        os << "done";
    os << std::fixed << std::setprecision(2) << " (" << r.seconds << " s)\n";
    return os.str();
}

namespace detail {

inline int default_digits()
{
    if (const char* e = std::getenv("DES2_DIGITS")) {
        try {
            std::size_t used = 0;
            int d = std::stoi(e, &used);
            if (used == std::string(e).size()) return d;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("DES2_DIGITS is not an integer: ") + e);
    }
    return kDefaultDigits;
}

inline std::string join_row(const std::vector<Rational>& v, const char* sep = " ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + to_string(v[i]);
    return s;
}

inline std::string poly_string(const Poly& p)
{
    std::string s;
    for (int e = p.max_degree(); e >= 0; --e) {
        const Rational& c = p.coeff(e);
        if (sgn(c) == 0) continue;
        std::string mag = to_string(Rational(abs(c)));
        s += s.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
        if (mag != "1" || e == 0) s += mag;
        if (e > 0) s += e == 1 ? "x" : "x^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
}

inline void add_stratified(RunReport& rep, const StratifiedReport& s)
{
    for (const auto& c : s.checks) rep.check(s.name + " " + c.stratum + " " + c.name, c.pass);
    rep.artifacts[s.name] = to_json(s);
    for (const auto& c : s.checks)
        rep.line("  " + std::string(c.pass ? "ok   " : "FAIL ") + s.name + " [" + c.stratum + "] " + c.name);
}

inline void add_numeric(RunReport& rep, const NumericReport& s, int digits)
{
    for (const auto& c : s.checks) rep.check(s.name + " " + c.name, c.pass);
    rep.artifacts[s.name] = to_json(s, digits);
    for (const auto& c : s.checks)
        rep.line("  " + std::string(c.pass ? "ok   " : "FAIL ") + s.name + " " + c.name + "  residual " + format_real(c.residual(), 3));
}

inline std::vector<int> parse_id_list(const std::string& text)
{
    std::vector<int> ids;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        auto dash = tok.find('-');
        try {
            if (dash == std::string::npos) {
                ids.push_back(std::stoi(tok));
            } else {
                int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1));
                for (int i = a; i <= b; ++i) ids.push_back(i);
            }
        } catch (const std::logic_error&) {
            throw DomainError("bad criterion list: " + text);
        }
    }
    return ids;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Subcommand bodies

inline RunReport cmd_dzspace(int k, const std::string& check, int digits)
{
    RunReport rep;
    rep.subcommand = "dzspace";
    rep.parameters = {{"weight", k}, {"check", check}};
    auto cert_json = [](const MembershipCertificate& c) {
        return Json{{"target", to_json(c.target)}, {"member", c.member}, {"verified", c.verified}, {"coefficients", to_json(c.coefficients)}};
    };
    if (check == "sum-formula") {
        auto c = check_sum_formula(k);
        rep.check("sum formula in the relation span", c.member && c.verified);
        rep.artifacts["certificate"] = cert_json(c);
        rep.line("  target: " + detail::join_row(c.target));
    } else if (check == "poe-reduction") {
        DZBasis B(k);
        Json out = Json::object();
        for (const auto& [r, e] : poe_reduction(k)) {
            rep.check("P^oe_" + std::to_string(r), e.certificate.member && e.certificate.verified);
            Json poo = Json::object();
            std::string text = "P^oe_" + std::to_string(r) + " =";
            for (const auto& [i, c] : e.poo) {
                poo[std::to_string(i)] = to_json(c);
                text += " + (" + to_string(c) + ") P^oo_" + std::to_string(i);
            }
            text += " + (" + to_string(e.zo) + ") Zo_" + std::to_string(k);
            out[std::to_string(r)] = {{"poo", poo}, {"zo", to_json(e.zo)}, {"certificate", cert_json(e.certificate)}};
            rep.line("  " + text);
        }
        rep.artifacts["reduction"] = out;
    } else if (check == "genfun") {
        auto s = genfun_substitution_relations(k);
        rep.check("(X,Y) = (1,0) relation certified", s.first_cert.member && s.first_cert.verified);
        rep.check("(X,Y) = (1,-1) relation certified", s.second_cert.member && s.second_cert.verified);
        QMatrix A = relation_matrix(k).rows, G = genfun_relation_matrix(k), both = A;
        for (std::size_t i = 0; i < G.rows(); ++i) both.append_row(G.row(i));
        rep.check("generating-function relations span the same space", A.rank() == G.rank() && both.rank() == A.rank());
        rep.artifacts["at_1_0"] = cert_json(s.first_cert);
        rep.artifacts["at_1_m1"] = cert_json(s.second_cert);
        rep.artifacts["relation_rank"] = A.rank();
    } else if (check == "relations") {
        auto R = relation_matrix(k);
        DZBasis B(k);
        Json labels = Json::array();
        for (std::size_t j = 0; j < B.dim(); ++j) labels.push_back(B.label(j));
        rep.artifacts["columns"] = labels;
        rep.artifacts["rows"] = R.labels;
        rep.artifacts["matrix"] = to_json(R.rows);
        rep.artifacts["rank"] = R.rows.rank();
        rep.line("  " + std::to_string(R.rows.rows()) + " relations, rank " + std::to_string(R.rows.rank()));
        detail::add_numeric(rep, relation_numeric_check(k, digits), digits);
    } else {
        throw DomainError("unknown dzspace check: " + check);
    }
    return rep;
}

inline RunReport cmd_qexp(const std::string& series, int k, int r, int s, const std::string& kind, const std::string& parity,
                          const std::string& eis, std::size_t N)
{
    RunReport rep;
    rep.subcommand = "qexp";
    rep.parameters = {{"series", series}, {"order", N}};
    auto emit = [&](const std::string& name, int weight, Json constant, const QSeries<Rational>& q) {
        rep.artifacts = {{"series", name}, {"k", weight}, {"order", N}, {"constant", std::move(constant)}, {"coeffs", to_json(q.coeffs())}};
        std::string head;
        for (std::size_t n = 0; n <= std::min<std::size_t>(N, 10); ++n) head += (n ? ", " : "") + to_string(q[n]);
        rep.line("  " + name + ": " + head + (N > 10 ? ", ..." : ""));
    };
    auto par = [&] {
        if (parity == "e") return Parity::even;
        if (parity == "o") return Parity::odd;
        throw DomainError("parity must be e or o");
    };
    if (series == "g" || series == "gbar") {
        rep.parameters["k"] = k;
        rep.parameters["parity"] = parity;
        auto q = series == "g" ? g_series(par(), k, N) : gbar_series(par(), k, N);
        emit(series + "^" + parity + "_" + std::to_string(k), k, "0", q);
    } else if (series == "eisenstein") {
        rep.parameters["k"] = k;
        rep.parameters["eis"] = eis;
        EisensteinKind ek;
        if (eis == "full") ek = EisensteinKind::full;
        else if (eis == "cusp_inf") ek = EisensteinKind::cusp_inf;
        else if (eis == "cusp_0") ek = EisensteinKind::cusp_0;
        else if (eis == "G_o") ek = EisensteinKind::G_o;
        else if (eis == "G_e") ek = EisensteinKind::G_e;
        else throw DomainError("unknown Eisenstein kind: " + eis);
        auto e = eisenstein_series(ek, k, N);
        Json c;
        if (e.constant.is_rational()) {
            c = to_json(e.constant.rational_part());
        } else {
            if (e.constant.symbols().size() != 1 || sgn(e.constant.rational_part()) != 0)
                throw ArithmeticError("constant term is not a single symbol");
            const auto& [sym, coeff] = *e.constant.symbols().begin();
            c = to_json(sym);
            c["coeff"] = to_json(coeff);
        }
        emit(eisenstein_kind_name(ek) + "_" + std::to_string(k), k, c, e.q_part);
    } else if (series == "delta") {
        emit("Delta", 12, "0", delta_series(N));
    } else if (series == "G") {
        rep.parameters["kind"] = kind;
        rep.parameters["r"] = r;
        rep.parameters["s"] = s;
        auto G = G_series(parse_kind(kind), r, s, N);
        rep.artifacts = to_json(G);
        rep.line("  constant " + G.constant.tag());
        for (std::size_t n = 1; n <= std::min<std::size_t>(N, 8); ++n)
            rep.line("  q^" + std::to_string(n) + ": " + to_string(G.comb[n]) + " | " + G.imag[n].to_string());
    } else {
        throw DomainError("unknown series: " + series);
    }
    return rep;
}

inline RunReport cmd_verify(const std::string& what, int r, int s, int k, std::size_t N, int digits)
{
    RunReport rep;
    rep.subcommand = "verify";
    rep.parameters = {{"what", what}};
    if (what == "theorem3") {
        rep.parameters.update({{"r", r}, {"s", s}, {"order", N}, {"digits", digits}});
        detail::add_stratified(rep, verify_theorem3(r, s, N, digits));
    } else if (what == "imag-lemma") {
        rep.parameters.update({{"k", k}, {"order", N}});
        detail::add_stratified(rep, verify_imag_lemma(k, N));
    } else if (what == "comb-lemma") {
        rep.parameters.update({{"k", k}, {"order", N}});
        detail::add_stratified(rep, verify_comb_lemma(k, N));
    } else if (what == "prop1") {
        rep.parameters.update({{"r", r}, {"s", s}, {"digits", digits}});
        detail::add_numeric(rep, verify_prop1(r, s, digits), digits);
    } else if (what == "sum-formula") {
        rep.parameters.update({{"k", k}, {"digits", digits}});
        detail::add_numeric(rep, verify_sum_formula_numeric(k, digits), digits);
    } else if (what == "kmt") {
        rep.parameters.update({{"r", r}, {"s", s}, {"digits", digits}});
        detail::add_numeric(rep, verify_kmt(r, s, digits), digits);
    } else if (what == "ramanujan") {
        rep.parameters.update({{"order", N}});
        detail::add_stratified(rep, verify_ramanujan(N));
    } else {
        throw DomainError("unknown verification: " + what);
    }
    return rep;
}

inline RunReport cmd_periodpoly(int k, int level, const std::string& emit, bool csv, std::string& csv_out)
{
    RunReport rep;
    rep.subcommand = "periodpoly";
    rep.parameters = {{"weight", k}, {"level", level}, {"emit", emit}};
    QMatrix Q = qk_matrix(k, level).matrix;
    std::ostringstream c;
    if (emit == "matrix") {
        rep.artifacts["matrix"] = to_json(Q);
        for (std::size_t i = 0; i < Q.rows(); ++i) {
            rep.line("  [" + detail::join_row(Q.row(i)) + "]");
            c << detail::join_row(Q.row(i), ",") << "\n";
        }
    } else if (emit == "rank") {
        const auto rank = Q.rank();
        rep.artifacts = {{"rows", Q.rows()}, {"cols", Q.cols()}, {"rank", rank}};
        if (level == 2) {
            rep.check("rank = floor((k+2)/4) - 1", static_cast<int>(rank) == (k + 2) / 4 - 1);
            rep.artifacts["dim_W_plus_zero"] = wk_basis(k, WkFlavor::plus_zero).dim();
        }
        rep.line("  " + std::to_string(Q.rows()) + " x " + std::to_string(Q.cols()) + ", rank " + std::to_string(rank));
        c << "rows,cols,rank\n" << Q.rows() << "," << Q.cols() << "," << rank << "\n";
    } else if (emit == "kernel") {
        Json right = Json::array(), left = Json::array();
        for (auto v : Q.kernel(KernelSide::right)) {
            right.push_back(to_json(v));
            rep.line("  right: (" + detail::join_row(v, ", ") + ")");
            c << "right," << detail::join_row(v, ",") << "\n";
        }
        for (auto v : Q.kernel(KernelSide::left)) {
            left.push_back(to_json(v));
            rep.line("  left:  (" + detail::join_row(v, ", ") + ")");
            c << "left," << detail::join_row(v, ",") << "\n";
        }
        rep.artifacts = {{"right", right}, {"left", left}};
    } else if (emit == "basis") {
        Json polys = Json::array();
        auto ps = qk_kernel_polynomials(k, level);
        for (const auto& p : ps) {
            polys.push_back(to_json(p));
            rep.line("  " + detail::poly_string(p));
            c << detail::join_row(p.coeffs(), ",") << "\n";
        }
        if (level == 2) rep.check("kernel polynomials span W_k^{+,0}", same_span(ps, wk_basis(k, WkFlavor::plus_zero).basis));
        else rep.check("kernel dimension = dim S_k(SL_2(Z))", static_cast<int>(ps.size()) == dim_cusp_level1(k));
        rep.artifacts["polynomials"] = polys;
    } else {
        throw DomainError("unknown emit target: " + emit);
    }
    if (csv) csv_out = c.str();
    return rep;
}

inline RunReport cmd_tau(int which, long max_n)
{
    if (max_n < 1) throw DomainError("max-n must be positive");
    RunReport rep;
    rep.subcommand = "tau";
    rep.parameters = {{"formula", which}, {"max_n", max_n}};
    const auto f = stated_tau_formula(which);
    const auto delta = delta_series(static_cast<std::size_t>(max_n));
    Json values = Json::object();
    bool ok = true;
    for (long n = 1; n <= max_n; ++n) {
        Rational t = evaluate_tau_formula(f, n);
        values[std::to_string(n)] = to_json(t);
        ok = ok && t == delta[static_cast<std::size_t>(n)];
        if (n <= 12) rep.line("  tau(" + std::to_string(n) + ") = " + to_string(t));
    }
    rep.check("formula " + std::to_string(which) + " matches Delta up to n = " + std::to_string(max_n), ok);
    rep.check("stated coefficients equal the derived ones", f == derived_tau_formula(which));
    rep.artifacts["values"] = values;
    return rep;
}

/// factor = "fitted" checks the identity with the right-hand factor forced by the q-expansion;
/// "alternative" additionally requires the other recorded factor to agree with it.
inline RunReport cmd_appendix(int which, std::size_t N, int digits, const std::string& factor)
{
    RunReport rep;
    rep.subcommand = "appendix";
    rep.parameters = {{"which", which}, {"order", N}, {"digits", digits}, {"factor", factor}};
    auto r = appendix_identity_check(which, N, digits);
    detail::add_stratified(rep, r);
    if (factor == "alternative") {
        // the report only carries the alternative factor when it differs from the fitted one
        auto it = r.data.find("alt_rhs_factor_matches");
        bool ok = r.pass() && (it == r.data.end() || it->second == "true");
        rep.check("alternative factor " + appendix_identity(which).alt_rhs_factor.get_str() + " reproduces the identity", ok);
    }
    return rep;
}

inline RunReport cmd_despace(int k, std::size_t N, long prime_bound)
{
    RunReport rep;
    rep.subcommand = "despace";
    rep.parameters = {{"weight", k}, {"order", N}, {"prime_bound", prime_bound}};
    auto ev = de_space_evidence(k, N, prime_bound);
    rep.check("lower bound k/2-1", ev.lower_bound == k / 2 - 1);
    rep.check("imaginary strata give Q_k", ev.imag_matches_qk);
    rep.check("prime-coefficient determinant nonzero", sgn(ev.determinant) != 0);
    detail::add_stratified(rep, ev.report);
    rep.artifacts["evidence"] = {{"imag_matrix", to_json(ev.imag_matrix)},
                                 {"primes", ev.primes},
                                 {"determinant", to_json(ev.determinant)},
                                 {"rank_qk", ev.rank_qk},
                                 {"kernel_side", ev.kernel_side},
                                 {"lower_bound", ev.lower_bound}};
    rep.line("  lower bound " + std::to_string(ev.lower_bound) + ", rank Q_k " + std::to_string(ev.rank_qk) + ", det " +
             to_string(ev.determinant));
    return rep;
}

inline RunReport cmd_mzv(const std::string& kind, int r, int s, int digits)
{
    RunReport rep;
    rep.subcommand = "mzv";
    rep.parameters = {{"kind", kind}, {"r", r}, {"s", s}, {"digits", digits}};
    MzvEvaluator ev(digits);
    auto v = ev.regularized(parse_kind(kind), r, s);
    rep.artifacts = {{"tag", v.tag}, {"digits", digits}, {"c0", format_real(v.c0, digits)}, {"c1", format_real(v.c1, digits)},
                     {"convergent", v.convergent()}};
    rep.line("  zeta^" + kind + "(" + std::to_string(r) + "," + std::to_string(s) + ") = " + format_real(v.c0, digits) +
             (v.convergent() ? "" : " + (" + format_real(v.c1, digits) + ") T") + "  [" + std::to_string(digits) + " digits]");
    return rep;
}

inline RunReport cmd_reproduce(const std::vector<int>& ids, int digits, unsigned threads)
{
    RunReport rep;
    rep.subcommand = "reproduce-paper";
    Json idj = ids;
    rep.parameters = {{"criteria", idj}, {"digits", digits}};
    Json crit = Json::array();
    for (const auto& c : acceptance::run(ids, digits, threads)) {
        rep.check(std::to_string(c.id) + " " + c.title, c.pass());
        crit.push_back(acceptance::to_json(c));
        std::ostringstream l;
        l << "  " << std::setw(2) << c.id << "  " << (c.pass() ? "PASS" : "FAIL") << "  " << std::setw(5) << c.checks.size()
          << " checks  " << std::fixed << std::setprecision(1) << std::setw(6) << c.seconds << " s  " << c.title;
        if (!c.error.empty()) l << "  error: " << c.error;
        rep.line(l.str());
    }
    rep.artifacts["criteria"] = crit;
    return rep;
}

// ---------------------------------------------------------------------------------------------

/// Parses argv, runs one subcommand and writes its report. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Level-2 double Eisenstein series: exact q-expansions and verifications", kToolName};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    bool json = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<int> digits_opt;
    app.add_flag("--json", json, "Emit the canonical JSON report");
    app.add_option("--threads", threads, "Worker threads for batch runs")->check(CLI::PositiveNumber);
    app.add_option("--digits", digits_opt, "Numeric precision in decimal digits (default from DES2_DIGITS or 30)");

    int k = 0, r = 0, s = 0, level = 2, which = 1;
    long max_n = 0, prime_bound = 2000;
    std::size_t order = 30;
    std::string check = "sum-formula", series, kind = "oo", parity = "o", eis = "full", emit = "matrix", what, criteria = "1-11",
                format = "json";

    auto* dz = app.add_subcommand("dzspace", "Formal double zeta space certificates");
    dz->add_option("--weight", k, "Weight k")->required();
    dz->add_option("--check", check, "sum-formula | poe-reduction | genfun | relations")
        ->check(CLI::IsMember({"sum-formula", "poe-reduction", "genfun", "relations"}));

    auto* qe = app.add_subcommand("qexp", "Exact q-expansions");
    qe->add_option("--series", series, "g | gbar | eisenstein | delta | G")->required()
        ->check(CLI::IsMember({"g", "gbar", "eisenstein", "delta", "G"}));
    qe->add_option("--k,--weight", k, "Weight");
    qe->add_option("--r", r, "First index of G");
    qe->add_option("--s", s, "Second index of G");
    qe->add_option("--kind", kind, "eo | oe | oo")->check(CLI::IsMember({"eo", "oe", "oo"}));
    qe->add_option("--parity", parity, "e | o")->check(CLI::IsMember({"e", "o"}));
    qe->add_option("--eis", eis, "full | cusp_inf | cusp_0 | G_o | G_e");
    qe->add_option("--order", order, "q-order N")->required();

    auto* ve = app.add_subcommand("verify", "Run one verification");
    ve->add_option("what", what, "theorem3 | imag-lemma | comb-lemma | prop1 | sum-formula | kmt | ramanujan")->required()
        ->check(CLI::IsMember({"theorem3", "imag-lemma", "comb-lemma", "prop1", "sum-formula", "kmt", "ramanujan"}));
    ve->add_option("--r", r, "First index");
    ve->add_option("--s", s, "Second index");
    ve->add_option("--k,--weight", k, "Weight");
    ve->add_option("--order", order, "q-order N");

    auto* pp = app.add_subcommand("periodpoly", "Period polynomial matrices");
    pp->add_option("--weight", k, "Even weight k")->required();
    pp->add_option("--level", level, "1 or 2")->check(CLI::IsMember({1, 2}));
    pp->add_option("--emit", emit, "matrix | rank | kernel | basis")->check(CLI::IsMember({"matrix", "rank", "kernel", "basis"}));
    pp->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    auto* ta = app.add_subcommand("tau", "Ramanujan tau from the weight-12 formulas");
    ta->add_option("--formula", which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    ta->add_option("--max-n", max_n, "Largest n")->required();

    auto* ap = app.add_subcommand("appendix", "Weight-12 double Eisenstein identities");
    ap->add_option("--which", which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    ap->add_option("--order", order, "q-order N")->required();
    std::string factor = "fitted";
    ap->add_option("--factor", factor, "fitted | alternative")->check(CLI::IsMember({"fitted", "alternative"}));

    auto* de = app.add_subcommand("despace", "Lower bound for the double Eisenstein space");
    de->add_option("--weight", k, "Even weight k >= 6")->required();
    de->add_option("--order", order, "q-order N")->required();
    de->add_option("--prime-bound", prime_bound, "Search bound for primes");

    auto* mz = app.add_subcommand("mzv", "Level-2 double zeta values");
    mz->add_option("--kind", kind, "eo | oe | oo | ee")->required()->check(CLI::IsMember({"eo", "oe", "oo", "ee"}));
    mz->add_option("--r", r, "First index")->required();
    mz->add_option("--s", s, "Second index")->required();

    auto* rp = app.add_subcommand("reproduce-paper", "Run the reproduction suite");
    rp->add_option("--criteria", criteria, "Criteria to run, e.g. 1-11 or 1,3,7");

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    std::string csv;
    try {
        const int digits = digits_opt ? *digits_opt : detail::default_digits();
        des2::detail::check_digits(digits);
        if (*dz) rep = cmd_dzspace(k, check, digits);
        else if (*qe) rep = cmd_qexp(series, k, r, s, kind, parity, eis, order);
        else if (*ve) rep = cmd_verify(what, r, s, k, order, digits);
        else if (*pp) rep = cmd_periodpoly(k, level, emit, format == "csv", csv);
        else if (*ta) rep = cmd_tau(which, max_n);
        else if (*ap) rep = cmd_appendix(which, order, digits, factor);
        else if (*de) rep = cmd_despace(k, order, prime_bound);
        else if (*mz) rep = cmd_mzv(kind, r, s, digits);
        else if (*rp) rep = cmd_reproduce(detail::parse_id_list(criteria), digits, threads);
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!csv.empty()) out << csv;
    else if (json) out << to_canonical_json(rep);
    else out << to_human(rep);
    return rep.pass() ? kPass : kCheckFailed;
}

}  // namespace des2::cli

#include "polylad/cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polylad/errors.hpp"
#include "polylad/hyper/hyper.hpp"
#include "polylad/ladders/ladders.hpp"
#include "polylad/mp/functions.hpp"
#include "polylad/relfind/relfind.hpp"
#include "polylad/series/series.hpp"
#include "polylad/spigot/spigot.hpp"

namespace polylad::cli {

using json = nlohmann::json;
using ladders::CheckReport;
using mp::Bits;
using mp::MpComplex;
using mp::MpReal;
using mp::Rational;

namespace {

constexpr long kMaxBits = 32768;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string report_line(const CheckReport& r) {
    std::ostringstream os;
    os << (r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL")) << "  " << r.name << "  bits=" << r.bits
       << "  log2_residual=";
    if (std::isfinite(r.log2_residual)) os << std::fixed << std::setprecision(2) << r.log2_residual;
    else os << (r.log2_residual < 0 ? "-inf" : "nan");
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    return os.str();
}

int emit_reports(const std::vector<CheckReport>& rs, bool as_json, std::ostream& out) {
    bool ok = std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.pass; });
    if (as_json) {
        out << json::parse(ladders::reports_json(rs)).dump(2) << "\n";
    } else {
        for (const auto& r : rs) out << report_line(r) << "\n";
    }
    return ok ? 0 : 1;
}

// Rationals ("3/7", "-2") or decimals ("0.3", "1e-3").
MpReal parse_real(const std::string& text, Bits P) {
    std::string t = trim(text);
    if (t.empty()) throw UsageError("empty number");
    if (t.find_first_of(".eE") != std::string::npos) return MpReal::parse(t, P);
    return MpReal(Rational::parse(t), P);
}

Bits checked_bits(long b) {
    if (b < 32 || b > kMaxBits) throw UsageError("--bits must be in [32, " + std::to_string(kMaxBits) + "]");
    return Bits{b};
}

// ---------------------------------------------------------------- expressions

struct ExprParser {
    const std::string& s;
    size_t i = 0;
    Bits P;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw UsageError("cannot parse expression '" + s + "': " + why);
    }
    std::string ident() {
        skip();
        size_t b = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (b == i) fail("expected a name or number");
        return s.substr(b, i - b);
    }
    long integer() {
        skip();
        size_t b = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i) fail("expected an integer");
        return std::stol(s.substr(b, i - b));
    }
    std::vector<std::string> call_args() {
        std::vector<std::string> args;
        int depth = 1;
        size_t b = i;
        for (; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) break;
        }
        if (i >= s.size()) fail("unbalanced parentheses");
        args = split_top_level(s.substr(b, i - b));
        ++i;
        return args;
    }

    MpReal atom() {
        skip();
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-')) {
            long num = integer();
            if (eat('/')) return MpReal(Rational(num, integer()), P);
            return MpReal(num, P);
        }
        std::string name = ident();
        if (eat('(')) {
            auto args = call_args();
            auto as_int = [&](size_t k) {
                if (k >= args.size()) fail(name + " needs more arguments");
                return std::stol(trim(args[k]));
            };
            if (name == "zeta") return mp::zeta(static_cast<int>(as_int(0)), P);
            if (name == "beta") return mp::dirichlet_beta(static_cast<int>(as_int(0)), P);
            if (name == "lambda") return mp::dirichlet_lambda(static_cast<int>(as_int(0)), P);
            if (name == "monomial") return ladders::monomial(static_cast<int>(as_int(0)), static_cast<int>(as_int(1)), {}, P);
            if (name == "ladder") {
                if (args.size() != 2) fail("ladder(NAME,n)");
                return ladders::eval_ladder(trim(args[0]), static_cast<int>(as_int(1)), P);
            }
            if (name == "S") {
                if (args.size() != 10) fail("S(n,p,a1,...,a8) takes 10 arguments");
                series::SeriesSpec spec;
                spec.n = static_cast<int>(as_int(0));
                spec.p = static_cast<int>(as_int(1));
                for (size_t k = 0; k < 8; ++k) spec.pattern.a[k] = mp::BigInt(trim(args[k + 2]));
                return series::eval_series(spec, P);
            }
            fail("unknown function " + name);
        }
        if (name == "pi") return mp::pi(P);
        if (name == "log2") return mp::log2(P);
        return series::eval_formula(name, P);
    }
    MpReal power() {
        MpReal base = atom();
        if (eat('^')) return pow(base, integer());
        return base;
    }
    MpReal product() {
        MpReal v = power();
        while (eat('*')) v *= power();
        skip();
        if (i != s.size()) fail("unexpected '" + s.substr(i) + "'");
        return v;
    }
};

// ---------------------------------------------------------------- subcommands

struct Globals {
    long bits = 512;
    int threads = 1;
};

int cmd_list(bool derived, bool as_json, std::ostream& out) {
    if (as_json) {
        if (derived) {
            out << json::parse(series::to_json(series::derived_formulas())).dump(2) << "\n";
        } else {
            json j;
            j["formulas"] = json::parse(series::to_json(series::catalog()));
            j["ladders"] = json::parse(ladders::catalog_json());
            out << j.dump(2) << "\n";
        }
        return 0;
    }
    const auto& formulas = derived ? series::derived_formulas() : series::catalog();
    out << (derived ? "derived formulas:\n" : "formulas:\n");
    for (const auto& f : formulas) out << "  " << f.name << "  [" << f.paper_eq << "]  " << f.description << "\n";
    if (derived) return 0;
    const auto& cat = ladders::default_catalog();
    out << "ladders:\n  ";
    for (const auto& l : cat.ladders) out << l.name << " ";
    out << "\nrelations:\n";
    for (const auto& r : cat.relations)
        out << "  " << r.name << "  [" << r.paper_eq << "]  "
            << (r.status == ladders::Provenance::proved ? "proved" : "numeric") << "  " << r.description << "\n";
    return 0;
}

int cmd_eval(const std::string& name, Bits P, bool as_json, std::ostream& out) {
    MpReal v = series::eval_formula(name, P);
    int dec = static_cast<int>(std::floor(static_cast<double>(P.value) * std::log10(2.0)));
    int hexd = static_cast<int>(P.value / 4);
    std::string hex = v.to_string(hexd, 16);
    std::transform(hex.begin(), hex.end(), hex.begin(), [](unsigned char c) { return std::toupper(c); });
    std::string decimal = v.to_string(dec, 10);
    if (as_json) {
        json j{{"constant", name}, {"bits", P.value}, {"hex", hex}, {"decimal", decimal}};
        out << j.dump(2) << "\n";
    } else {
        out << "hex     " << hex << "\ndecimal " << decimal << "\n";
    }
    return 0;
}

std::vector<CheckReport> li5_reports(Bits P) {
    MpReal h(Rational(1, 2), P), z(P), o(1, P);
    std::vector<std::pair<MpComplex, MpComplex>> pts = {
        {MpComplex(h), MpComplex(h)},
        {MpComplex(z, o), MpComplex(z, o)},
        {MpComplex(h), MpComplex(z, o)},
        {MpComplex(h), MpComplex(z, -o)},
    };
    const char* names[] = {"li5(1/2,1/2)", "li5(i,i)", "li5(1/2,i)", "li5(1/2,-i)"};
    std::vector<CheckReport> out;
    for (size_t k = 0; k < pts.size(); ++k) {
        auto r = ladders::check_li5_identity(pts[k].first, pts[k].second, P);
        r.name = names[k];
        out.push_back(r);
    }
    return out;
}

struct HyperOpts {
    std::string check;
    std::string t = "1/10";
    std::string ti = "0";
    std::string id;
    std::string which = "poca";
    std::string args = "0,0,0,0";
    int m = 6;
};

int cmd_hyper(const HyperOpts& o, Bits P, bool as_json, std::ostream& out) {
    using namespace hyper;
    std::vector<CheckReport> rs;
    auto wargs = [&]() {
        auto parts = split_top_level(o.args);
        if (parts.size() != 4) throw UsageError("--args needs four comma-separated values");
        return WArgs{parse_real(parts[0], P), parse_real(parts[1], P), parse_real(parts[2], P), parse_real(parts[3], P)};
    };
    if (o.check == "W") {
        WArgs a = wargs();
        MpReal w = eval_W(a, P);
        out << (as_json ? "" : "W = " + w.to_string(static_cast<int>(P.value * 3 / 10)) + "\n");
        rs.push_back(check_symmetry(a, P));
    } else if (o.check == "inv") {
        rs.push_back(check_reflection(wargs(), P));
    } else if (o.check == "genfn") {
        MpReal t = parse_real(o.t, P);
        std::vector<GenFnId> ids;
        if (o.id.empty()) ids = {GenFnId::B, GenFnId::D, GenFnId::F, GenFnId::G};
        else ids = {parse_genfn(o.id)};
        for (auto id : ids) {
            rs.push_back(check_genfn(id, t, P));
            if (id <= GenFnId::D && t > 0L && t < MpReal(Rational(1, 3), P)) rs.push_back(check_trig_forms(id, t, P));
        }
    } else if (o.check == "recur") {
        MpComplex t(parse_real(o.t, P), parse_real(o.ti, P));
        std::vector<ComplexGen> ids;
        if (o.id.empty()) ids = {ComplexGen::F, ComplexGen::G, ComplexGen::H};
        else ids = {parse_complex_gen(o.id)};
        for (auto id : ids) rs.push_back(check_recurrence(id, t, P));
    } else if (o.check == "U") {
        Rational tq;
        bool exact = true;
        try {
            tq = Rational::parse(trim(o.t));
        } catch (const std::exception&) {
            exact = false;
        }
        MpReal t = parse_real(o.t, P);
        std::optional<URational> fam;
        if (exact) {
            try {
                fam = U_rational(tq);
            } catch (const DomainError&) {
            }
        }
        if (fam && fam->residue) {
            json j{{"t", o.t}, {"family", fam->family}, {"residue", fam->residue->to_string()},
                   {"remainder", fam->value.to_string()}, {"function", fam->tilde ? "Utilde" : "U"}};
            if (as_json) out << j.dump(2) << "\n";
            else
                out << (fam->tilde ? "Utilde" : "U") << "(" << o.t << " + eps) = " << fam->residue->to_string()
                    << "/eps + " << fam->value.to_string() << " + O(eps)\n";
            return 0;
        }
        MpReal v = fam && fam->tilde ? Utilde(t, P) : U(t, P);
        std::string label = fam && fam->tilde ? "Utilde" : "U";
        if (!as_json) out << label << "(" << o.t << ") = " << v.to_string(static_cast<int>(P.value * 3 / 10)) << "\n";
        if (fam) {
            CheckReport r;
            r.name = label + "-" + fam->family;
            r.bits = P.value;
            r.log2_residual = mp::log2_abs(v - MpReal(fam->value, P));
            r.pass = r.log2_residual < -static_cast<double>(P.value - 32);
            r.detail = "exact " + fam->value.to_string();
            rs.push_back(r);
        } else if (as_json) {
            json j{{"t", o.t}, {"function", label}, {"value", v.to_string(static_cast<int>(P.value * 3 / 10))}};
            out << j.dump(2) << "\n";
            return 0;
        } else {
            return 0;
        }
    } else if (o.check == "asymp") {
        if (o.m < 1 || o.m > 64) throw UsageError("--m must be in [1, 64]");
        auto ks = asymp_coeffs(o.m);
        if (as_json) {
            out << json::parse(asymp_json(ks)).dump(2) << "\n";
        } else {
            for (int k = 1; k <= o.m; ++k) out << "k_" << k << " = " << ks[static_cast<size_t>(k - 1)].get_str() << "\n";
        }
        return 0;
    } else if (o.check == "poch") {
        rs.push_back(pochhammer_check(parse_pochhammer(o.which), parse_real(o.t, P), P));
    } else if (o.check == "expu") {
        rs.push_back(expu_check(P));
    } else if (o.check == "geo") {
        rs.push_back(geo_checks(P));
    } else {
        throw UsageError("unknown --check " + o.check);
    }
    return emit_reports(rs, as_json, out);
}

int cmd_discover(const std::string& values, Bits P, int max_digits, long max_iter, bool as_json, std::ostream& out) {
    relfind::RelationQuery q;
    q.max_digits = max_digits;
    q.max_iterations = max_iter;
    auto exprs = split_top_level(values);
    if (exprs.size() < 2) throw UsageError("--values needs at least two expressions");
    for (const auto& e : exprs) q.values.push_back(eval_expr(e, P));
    auto r = relfind::pslq(q);
    if (as_json) {
        out << json::parse(relfind::result_json(r)).dump(2) << "\n";
    } else {
        out << relfind::to_string(r.status);
        if (r.status == relfind::RelationStatus::found) {
            out << "  [";
            for (size_t k = 0; k < r.vector.size(); ++k) out << (k ? ", " : "") << r.vector[k].get_str();
            out << "]  log2_residual=";
            if (std::isfinite(r.log2_residual)) out << r.log2_residual;
            else out << "-inf";
        } else {
            out << "  (norm bound 10^" << std::fixed << std::setprecision(1) << r.log10_norm_bound << ")";
        }
        out << "\n";
    }
    return r.status == relfind::RelationStatus::inconclusive ? 1 : 0;
}

bool is_input_error(const Error& e) {
    static const char* names[] = {"DomainError", "UnknownFormula", "UnknownRelation", "UnsupportedArgument",
                                  "ArgumentOutOfDomain", "UndefinedOrder"};
    return std::any_of(std::begin(names), std::end(names), [&](const char* n) { return e.name() == n; });
}

}  // namespace

std::vector<std::string> split_top_level(const std::string& list) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : list) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

MpReal eval_expr(const std::string& expr, Bits P) {
    ExprParser p{expr, 0, P + 32};
    return p.product().rounded(P);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polylogarithm ladders, BBP-type digit extraction and integer relations", "polylad"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with defaults (bits, threads)");
    Globals g;
    app.add_option("--bits", g.bits, "default working precision in bits")->configurable();
    app.add_option("--threads", g.threads, "default thread count for digit extraction")->configurable();

    bool derived = false, list_json = false;
    auto* list = app.add_subcommand("list", "catalog of formulas and relations");
    list->add_flag("--derived", derived, "formulas produced by the exact solver");
    list->add_flag("--json", list_json);

    spigot::DigitRequest dreq;
    bool digits_json = false;
    auto* digits = app.add_subcommand("digits", "hex digits at a position");
    digits->add_option("--constant", dreq.formula)->required();
    digits->add_option("--position", dreq.position, "1-based index of the first digit");
    digits->add_option("--count", dreq.count);
    auto* dthreads = digits->add_option("--threads", dreq.threads);
    digits->add_option("--guard", dreq.guard_bits, "initial guard bits");
    digits->add_flag("--json", digits_json);

    std::string eval_name;
    long eval_bits = 0;
    bool eval_json = false;
    auto* eval = app.add_subcommand("eval", "value of a catalog constant");
    eval->add_option("--constant", eval_name)->required();
    auto* ebits = eval->add_option("--bits", eval_bits);
    eval->add_flag("--json", eval_json);

    std::vector<std::string> relations;
    bool verify_all = false, verify_li5 = false, verify_json = false;
    long verify_bits = 0;
    auto* verify = app.add_subcommand("verify", "check ladder relations");
    verify->add_option("--relation", relations, "relation name (repeatable)");
    verify->add_flag("--all", verify_all);
    verify->add_flag("--li5", verify_li5, "the Li5 identity at its four points");
    auto* vbits = verify->add_option("--bits", verify_bits);
    verify->add_flag("--json", verify_json);

    HyperOpts hopts;
    long hyper_bits = 0;
    bool hyper_json = false;
    auto* hyp = app.add_subcommand("hyper", "hypergeometric and U(t) checks");
    hyp->add_option("--check", hopts.check)
        ->required()
        ->check(CLI::IsMember({"W", "inv", "genfn", "recur", "U", "asymp", "poch", "expu", "geo"}));
    hyp->add_option("--t", hopts.t, "real part of t (rational or decimal)");
    hyp->add_option("--ti", hopts.ti, "imaginary part of t for recur");
    hyp->add_option("--id", hopts.id, "generating function A..H or recurrence F/G/H");
    hyp->add_option("--which", hopts.which, "poca|pocb|pocc|pocd|poc4|poc6");
    hyp->add_option("--args", hopts.args, "a1,a2,a3,a4 for W and inv");
    hyp->add_option("--m", hopts.m, "number of asymptotic integers");
    auto* hbits = hyp->add_option("--bits", hyper_bits);
    hyp->add_flag("--json", hyper_json);

    std::string values;
    long disc_bits = 0;
    int max_digits = 20;
    long max_iter = 100000;
    bool disc_json = false;
    auto* disc = app.add_subcommand("discover", "PSLQ integer relation search");
    disc->add_option("--values", values, "comma-separated expressions")->required();
    auto* dbits = disc->add_option("--bits", disc_bits);
    disc->add_option("--max-digits", max_digits);
    disc->add_option("--max-iterations", max_iter);
    disc->add_flag("--json", disc_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto bits_for = [&](CLI::Option* o, long v) { return checked_bits(o->count() ? v : g.bits); };
    try {
        if (*list) return cmd_list(derived, list_json, out);
        if (*digits) {
            if (!dthreads->count()) dreq.threads = g.threads;
            auto r = spigot::hex_digits(dreq);
            if (digits_json) {
                json j{{"constant", dreq.formula}, {"position", r.position}, {"count", dreq.count},
                       {"digits", r.digits}, {"guard_ok", r.guard_ok}, {"retries", r.retries}};
                out << j.dump(2) << "\n";
            } else {
                out << r.digits << "\n";
            }
            return 0;
        }
        if (*eval) return cmd_eval(eval_name, bits_for(ebits, eval_bits), eval_json, out);
        if (*verify) {
            Bits P = bits_for(vbits, verify_bits);
            if (!verify_all && relations.empty() && !verify_li5)
                throw UsageError("verify needs --relation NAME, --all or --li5");
            std::vector<CheckReport> rs;
            if (verify_all) rs = ladders::check_all(P);
            for (const auto& name : relations) rs.push_back(ladders::check_relation(name, P));
            if (verify_li5) {
                auto more = li5_reports(P);
                rs.insert(rs.end(), more.begin(), more.end());
            }
            return emit_reports(rs, verify_json, out);
        }
        if (*hyp) return cmd_hyper(hopts, bits_for(hbits, hyper_bits), hyper_json, out);
        if (*disc) return cmd_discover(values, bits_for(dbits, disc_bits), max_digits, max_iter, disc_json, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return is_input_error(e) ? 2 : 1;
    }
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("polylad");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace polylad::cli

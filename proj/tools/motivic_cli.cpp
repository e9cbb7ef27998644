#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <motivic/motivic.hpp>

#include "cache.hpp"

#ifndef MOTIVIC_VERSION
#define MOTIVIC_VERSION "unknown"
#endif

using namespace motivic;
using nlohmann::json;

namespace
{

enum Exit { ok = 0, verification_failed = 1, usage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "text";
    std::string cache_dir;
    std::string config;
    std::string output;
    unsigned threads = 0;

    std::int64_t imax = 0, jmax = 0, order = 0, cap = 0;
    std::int64_t i = 1, j = 1, a = 1;
    std::int64_t window = 0, n = 0, max = 0, bound = 0, trials = 0;
    std::int64_t index_cap = 0;
    std::uint64_t seed = 2024;
    std::string check, input, tail = "extend", what = "gtable";
    std::string exponent = "L", base = "-1";
    bool sym = false, printed = false;
    std::vector<std::string> slots;
    std::string vars = "t,x,y,z,w";
    std::string eps = "k-ge-l", alpha = "derived", boundary = "closed-form";
    std::string L;
};

std::int64_t or_default(std::int64_t v, std::int64_t d)
{
    return v > 0 ? v : d;
}

// ---- rendering ----

std::string render_rf(const RationalFunc &r)
{
    const auto poly = [](const TPolynomial &p) {
        return to_display_string(TSeries(std::max<long long>(p.degree(), 0), p.coeffs()));
    };
    return "(" + poly(r.num()) + ")/(" + poly(r.den()) + ")";
}

std::string render_series_text(const MultiSeries &s)
{
    std::string out;
    for (const auto &[e, c] : s.terms()) {
        out += monomial_string(s.vars(), e) + ": " + to_display_string(c, 0) + "\n";
    }
    return out;
}

std::string render_series_csv(const MultiSeries &s)
{
    std::string out;
    for (const auto &v : s.vars()) {
        out += v + ",";
    }
    out += "L_exponent,coefficient\n";
    for (const auto &[e, c] : s.terms()) {
        for (const auto &term : c.terms()) {
            for (std::size_t v = 0; v < s.nvars(); ++v) {
                out += std::to_string(e[v]) + ",";
            }
            out += std::to_string(term.exp) + "," + term.coeff.str() + "\n";
        }
    }
    return out;
}

std::string render_series(const MultiSeries &s, const std::string &format)
{
    if (format == "json") {
        return series_to_json(s).dump(2) + "\n";
    }
    return format == "csv" ? render_series_csv(s) : render_series_text(s);
}

std::string render_gtable(const GTable &g, const std::string &format)
{
    if (format == "json") {
        return gtable_to_json(g).dump(2) + "\n";
    }
    if (format == "csv") {
        return gtable_to_csv(g);
    }
    std::string out;
    for (const auto &[ij, s] : g.entries()) {
        out += verify::pair_name("G", ij.first, ij.second) + " = " + to_display_string(s) + "\n";
    }
    return out;
}

std::string render_tseries(const std::string &name, const TSeries &s, const std::string &format)
{
    if (format == "json") {
        json coeffs = json::array();
        for (TSeries::Order k = 0; k <= s.order(); ++k) {
            if (!s[k].is_zero()) {
                coeffs.push_back(json::array({k, to_json(s[k])}));
            }
        }
        return json{{"name", name}, {"order", s.order()}, {"coeffs", coeffs}}.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "name,t_exponent,L_exponent,coefficient\n";
        for (TSeries::Order k = 0; k <= s.order(); ++k) {
            for (const auto &term : s[k].terms()) {
                out += name + "," + std::to_string(k) + "," + std::to_string(term.exp) + "," + term.coeff.str() + "\n";
            }
        }
        return out;
    }
    return name + " = " + to_display_string(s) + "\n";
}

void emit(const Options &o, const std::string &text)
{
    if (o.output.empty()) {
        std::cout << text;
    } else {
        cli::write_atomic(o.output, text);
    }
}

// ---- computations behind the cache ----

GTable cached_gtable(cli::Cache &cache, std::int64_t imax, std::int64_t jmax, std::int64_t order, unsigned threads)
{
    const json key{{"command", "gtable"}, {"imax", imax}, {"jmax", jmax}, {"order", order}};
    return gtable_from_json(
        cache.get_or_compute(key, [&] { return gtable_to_json(build_gtable(imax, jmax, order, threads)); }));
}

MultiSeries cached_pairs(cli::Cache &cache, const PairBounds &b)
{
    json key{{"command", "solve-pairs"}, {"order", b.torder}, {"cap", b.cap}};
    if (b.index_cap) {
        key["index_cap"] = *b.index_cap;
    }
    return series_from_json(cache.get_or_compute(key, [&] { return series_to_json(solve_lemma4(b).J); }));
}

TupleBounds tuple_bounds(const Options &o, std::int64_t order_default, std::int64_t cap_default)
{
    TupleBounds b;
    b.order = or_default(o.order, order_default);
    b.cap = or_default(o.cap, cap_default);
    b.eps = o.eps == "k-le-l" ? EpsOrientation::k_le_l : EpsOrientation::k_ge_l;
    b.alpha = o.alpha == "printed" ? AlphaForm::printed : AlphaForm::derived;
    b.boundary = o.boundary == "from-series" ? Boundary::from_series : Boundary::closed_form;
    return b;
}

MultiSeries cached_tuples(cli::Cache &cache, const TupleBounds &b)
{
    const json key{{"command", "solve-tuples"}, {"order", b.order}, {"cap", b.cap},
                   {"eps", static_cast<int>(b.eps)}, {"alpha", static_cast<int>(b.alpha)},
                   {"boundary", static_cast<int>(b.boundary)}};
    return series_from_json(cache.get_or_compute(key, [&] { return series_to_json(solve_thm4(b).I); }));
}

// ---- input files ----

struct Loaded {
    std::optional<GTable> table;
    std::optional<MultiSeries> series;
};

Loaded load_input(const std::string &path)
{
    std::string text;
    try {
        text = cli::read_file(path);
    } catch (const std::exception &ex) {
        throw ParseError(ex.what());
    }
    if (text.rfind("# order=", 0) == 0) {
        return {gtable_from_csv(text), std::nullopt};
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &ex) {
        throw ParseError(path + ": " + ex.what());
    }
    if (j.is_object() && j.contains("entries")) {
        return {gtable_from_json(j), std::nullopt};
    }
    if (j.is_object() && j.contains("terms")) {
        return {std::nullopt, series_from_json(j)};
    }
    throw ParseError(path + ": neither a G table nor a series");
}

// ---- slot grammar for phi/psi: "L^-1*p*q", "1", "0" ----

MonoArg parse_slot(const std::string &text, const std::vector<std::string> &vars)
{
    MonoArg a;
    if (text == "0") {
        a.zero = true;
        return a;
    }
    std::stringstream ss(text);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        if (factor.empty()) {
            throw ParseError("empty factor in slot '" + text + "'");
        }
        if (factor == "1") {
            continue;
        }
        const auto caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        Exponent e = 1;
        if (caret != std::string::npos) {
            try {
                std::size_t used = 0;
                e = std::stoll(factor.substr(caret + 1), &used);
                if (used != factor.size() - caret - 1) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception &) {
                throw ParseError("bad exponent in '" + factor + "'");
            }
        }
        if (name == "L") {
            a.lexp += e;
            continue;
        }
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            throw ParseError("unknown variable '" + name + "' in slot '" + text + "'");
        }
        if (e < 0) {
            throw ParseError("negative exponent of " + name);
        }
        a.mono[static_cast<std::size_t>(it - vars.begin())] += e;
    }
    return a;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) {
        out.push_back(part);
    }
    return out;
}

// ---- specialization ----

std::string render_rational_series(const std::string &name, const TSeries &s, const Rational &v)
{
    std::string out;
    for (TSeries::Order k = 0; k <= s.order(); ++k) {
        const Rational q = specialize_L(s[k], v);
        if (q == 0) {
            continue;
        }
        const bool neg = q < 0;
        std::string term = to_string(neg ? Rational(-q) : q);
        if (k > 0) {
            term += k == 1 ? "*t" : "*t^" + std::to_string(k);
        }
        out += out.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
    }
    return name + " = " + (out.empty() ? "0" : out) + "\n";
}

// ---- commands ----

int run_verify(const Options &o, cli::Cache &cache)
{
    verify::Report r;
    const std::string &c = o.check;
    if (c == "eq1" || c == "eq2-support") {
        const std::int64_t d = c == "eq1" ? 6 : 12;
        const std::int64_t imax = or_default(o.imax, d), jmax = or_default(o.jmax, d), order = or_default(o.order, 30);
        GTable g = o.input.empty() ? cached_gtable(cache, imax, jmax, order, o.threads) : [&] {
            Loaded l = load_input(o.input);
            if (!l.table) {
                throw ParseError(o.input + " is not a G table");
            }
            return *l.table;
        }();
        if (c == "eq1") {
            const Eq1Window w{std::min(imax, g.imax()), std::min(jmax, g.jmax()), std::min<std::int64_t>(order, g.order())};
            r = verify::eq1(g, w, o.tail == "strict" ? Eq1Tail::strict : Eq1Tail::extend_rows);
        } else {
            r = verify::eq2_support(g);
        }
    } else if (c == "eq4") {
        r = verify::eq4(or_default(o.window, 20), or_default(o.n, 10));
    } else if (c == "lemma3") {
        r = verify::lemma3(or_default(o.max, 12), or_default(o.order, 30));
    } else if (c == "table") {
        r = verify::table(or_default(o.max, 4), or_default(o.order, 40));
    } else if (c == "leading") {
        r = verify::leading(or_default(o.max, 12));
    } else if (c == "mass") {
        r = verify::mass(or_default(o.max, 12));
    } else if (c == "power-axioms") {
        r = verify::power_axioms(static_cast<int>(or_default(o.trials, 100)), or_default(o.order, 10), o.seed);
    } else if (c == "phi-psi") {
        r = verify::phi_psi(or_default(o.bound, 6), static_cast<int>(or_default(o.trials, 10)), o.seed);
    } else if (c == "lemma4") {
        r = verify::lemma4(PairBounds{or_default(o.order, 8), or_default(o.cap, 8), std::nullopt});
    } else if (c == "thm4") {
        r = verify::thm4(tuple_bounds(o, 6, 7), or_default(o.bound, 5));
    }
    if (o.format == "json") {
        emit(o, json{{"check", c}, {"ok", r.ok}, {"checked", r.checked}, {"unit", r.unit},
                     {"failure", r.failure}, {"notes", r.notes}}
                        .dump(2) +
                    "\n");
    } else {
        std::string text = r.summary() + "\n";
        for (const auto &note : r.notes) {
            text += "note: " + note + "\n";
        }
        emit(o, text);
    }
    if (!r.ok) {
        std::cerr << "verify " << c << " failed: " << r.failure << "\n";
    }
    return r.ok ? Exit::ok : Exit::verification_failed;
}

int run_specialize(const Options &o)
{
    const Rational v = parse_rational(o.L);
    if (v == 0) {
        throw UsageError("the value of L must be nonzero");
    }
    const Loaded l = load_input(o.input);
    std::string out;
    if (l.table) {
        for (const auto &[ij, s] : l.table->entries()) {
            out += render_rational_series(verify::pair_name("G", ij.first, ij.second), s, v);
        }
    } else {
        for (const auto &[e, c] : l.series->terms()) {
            out += monomial_string(l.series->vars(), e) + ": " + to_string(specialize_L(c, v)) + "\n";
        }
    }
    emit(o, out);
    return Exit::ok;
}

int run_power(const Options &o)
{
    const LaurentPoly m = parse_laurent(o.exponent);
    const std::int64_t order = or_default(o.order, 30);
    if (o.sym) {
        const auto s = sym_powers(m, order);
        std::string out;
        for (std::size_t k = 0; k < s.size(); ++k) {
            out += "S^" + std::to_string(k) + " = " + to_string(s[k]) + "\n";
        }
        emit(o, out);
        return Exit::ok;
    }
    TSeries A = TSeries::one(order);
    const auto cs = split(o.base, ',');
    for (std::size_t k = 0; k < cs.size() && static_cast<std::int64_t>(k) < order; ++k) {
        A.set(static_cast<TSeries::Order>(k + 1), parse_laurent(cs[k]));
    }
    emit(o, render_tseries("A^m", series_pow(A, m), o.format));
    return Exit::ok;
}

int run_phi_psi(const Options &o, bool is_phi)
{
    const auto vars = split(o.vars, ',');
    const std::size_t want = is_phi ? 8 : 5;
    if (o.slots.size() != want) {
        throw UsageError(std::string(is_phi ? "phi" : "psi") + " takes " + std::to_string(want) + " slots, got " +
                         std::to_string(o.slots.size()));
    }
    Truncation tr = graded(vars, or_default(o.order, 30));
    if (o.cap > 0) {
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (vars[v] != "t") {
                tr.caps[v] = o.cap;
            }
        }
    }
    const std::optional<Exponent> n = o.index_cap > 0 ? std::optional<Exponent>(o.index_cap) : std::nullopt;
    MultiSeries s;
    if (is_phi) {
        std::array<MonoArg, 8> a;
        for (std::size_t q = 0; q < 8; ++q) {
            a[q] = parse_slot(o.slots[q], vars);
        }
        s = phi(a, vars, tr, n);
    } else {
        std::array<MonoArg, 5> a;
        for (std::size_t q = 0; q < 5; ++q) {
            a[q] = parse_slot(o.slots[q], vars);
        }
        s = psi(a, vars, tr, n);
    }
    emit(o, render_series(s, o.format));
    return Exit::ok;
}

int run_import(const Options &o)
{
    const Loaded l = load_input(o.input);
    const std::string format = o.format == "text" && o.output.empty() ? "json" : o.format;
    emit(o, l.table ? render_gtable(*l.table, format) : render_series(*l.series, format));
    return Exit::ok;
}

std::map<std::string, std::string> read_config(const std::string &path)
{
    std::map<std::string, std::string> kv;
    std::string text;
    try {
        text = cli::read_file(path);
    } catch (const std::exception &ex) {
        throw UsageError(ex.what());
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::optional<std::string> prescan_config(int argc, char **argv)
{
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--config" && k + 1 < argc) {
            return std::string(argv[k + 1]);
        }
        if (arg.rfind("--config=", 0) == 0) {
            return arg.substr(9);
        }
    }
    return std::nullopt;
}

} // namespace

int main(int argc, char **argv)
{
    Options o;
    CLI::App app{"Exact motivic generating series: tables, functional equations and verification"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", MOTIVIC_VERSION);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--cache-dir", o.cache_dir, "Cache directory (else $MOTIVIC_CACHE_DIR; no caching if neither)");
    app.add_option("--config", o.config, "key=value file of option defaults");
    app.add_option("--output,-o", o.output, "Write output to this file instead of stdout");
    app.add_option("--threads", o.threads, "Worker threads for table builds (0 = all cores)");

    const CLI::Validator pos(
        [](std::string &v) {
            long long x = 0;
            std::size_t used = 0;
            try {
                x = std::stoll(v, &used);
            } catch (const std::exception &) {
                return "'" + v + "' is not an integer";
            }
            return used != v.size() ? "'" + v + "' is not an integer"
                                    : (x < 1 ? "must be a positive integer, got " + v : std::string());
        },
        "POSITIVE");
    const auto add_table_bounds = [&](CLI::App *sub) {
        sub->add_option("--imax", o.imax, "Largest first index (default 12)")->check(pos);
        sub->add_option("--jmax", o.jmax, "Largest second index (default 12)")->check(pos);
        sub->add_option("--order", o.order, "t-order (default 30)")->check(pos);
    };
    const auto add_tuple_flags = [&](CLI::App *sub) {
        sub->add_option("--eps", o.eps, "eps product orientation")->check(CLI::IsMember({"k-ge-l", "k-le-l"}));
        sub->add_option("--alpha", o.alpha, "alpha product form")->check(CLI::IsMember({"derived", "printed"}));
        sub->add_option("--boundary", o.boundary, "u^0 boundary handling")
            ->check(CLI::IsMember({"closed-form", "from-series"}));
    };

    CLI::App *gtable = app.add_subcommand("gtable", "Table of G[i,j] for i <= imax, j <= jmax");
    add_table_bounds(gtable);

    CLI::App *gij = app.add_subcommand("gij", "One series G[i,j], with its closed form when gcd(i,j) <= 4");
    gij->add_option("-i,--i", o.i, "First index")->check(pos);
    gij->add_option("-j,--j", o.j, "Second index")->check(pos);
    gij->add_option("--order", o.order, "t-order (default 30)")->check(pos);

    CLI::App *gaa = app.add_subcommand("gaa", "Closed form of G[a,a] and its expansion");
    gaa->add_option("-a,--a", o.a, "Diagonal index")->check(pos);
    gaa->add_option("--order", o.order, "t-order (default 30)")->check(pos);
    gaa->add_flag("--printed", o.printed, "Use the tabulated entry as printed (a <= 4)");

    CLI::App *assemble = app.add_subcommand("assemble-i", "The series I assembled from a G table");
    add_table_bounds(assemble);

    CLI::App *ver = app.add_subcommand("verify", "Run one verification; exit 1 if it fails");
    ver->add_option("check", o.check, "Which verification")
        ->required()
        ->check(CLI::IsMember({"eq1", "eq2-support", "eq4", "lemma3", "table", "leading", "mass", "power-axioms",
                               "phi-psi", "lemma4", "thm4"}));
    add_table_bounds(ver);
    ver->add_option("--input", o.input, "Check this G table file instead of computing one (eq1, eq2-support)");
    ver->add_option("--tail", o.tail, "Row completion for eq1")->check(CLI::IsMember({"strict", "extend"}));
    ver->add_option("--window", o.window, "i + j bound (eq4)")->check(pos);
    ver->add_option("--n", o.n, "System size (eq4)")->check(pos);
    ver->add_option("--max", o.max, "Index bound (lemma3, table, leading, mass)")->check(pos);
    ver->add_option("--trials", o.trials, "Random instances (power-axioms, phi-psi)")->check(pos);
    ver->add_option("--seed", o.seed, "Random seed");
    ver->add_option("--bound", o.bound, "Index bound (phi-psi) or table bound (thm4)")->check(pos);
    ver->add_option("--cap", o.cap, "Exponent cap (lemma4, thm4)")->check(pos);
    add_tuple_flags(ver);

    CLI::App *power = app.add_subcommand("power", "A(t)^m in the power structure, A = 1 + c1 t + c2 t^2 + ...");
    power->add_option("-m,--exponent", o.exponent, "Exponent m, a Laurent polynomial in L");
    power->add_option("--base", o.base, "Comma-separated c1,c2,... (default -1, i.e. A = 1 - t)");
    power->add_option("--order", o.order, "t-order (default 30)")->check(pos);
    power->add_flag("--sym", o.sym, "Print the symmetric powers S^k(m) instead");

    std::array<CLI::App *, 2> phipsi{app.add_subcommand("phi", "Phi of eight monomial slots"),
                                     app.add_subcommand("psi", "Psi of five monomial slots")};
    for (CLI::App *sub : phipsi) {
        sub->add_option("slots", o.slots, "Slots such as L^-1*p*q, 1 or 0")->required();
        sub->add_option("--vars", o.vars, "Comma-separated variables, t first");
        sub->add_option("--order", o.order, "t-order (default 30)")->check(pos);
        sub->add_option("--cap", o.cap, "Cap on every non-t exponent")->check(pos);
        sub->add_option("--index-cap", o.index_cap, "Bound on every summation index")->check(pos);
    }

    CLI::App *pairs = app.add_subcommand("solve-pairs", "Solve for the two-arc series J");
    pairs->add_option("--order", o.order, "t-order (default 8)")->check(pos);
    pairs->add_option("--cap", o.cap, "Exponent cap (default 8)")->check(pos);
    pairs->add_option("--index-cap", o.index_cap, "Bound on every summation index")->check(pos);

    CLI::App *tuples = app.add_subcommand("solve-tuples", "Solve for the tuple series");
    tuples->add_option("--order", o.order, "Bound on t + u (default 6)")->check(pos);
    tuples->add_option("--cap", o.cap, "Exponent cap (default 7)")->check(pos);
    add_tuple_flags(tuples);

    CLI::App *spec = app.add_subcommand("specialize", "Substitute a rational value for L");
    spec->add_option("--input", o.input, "G table (JSON or CSV) or series JSON")->required();
    spec->add_option("--L", o.L, "Value of L, e.g. 4 or 1/2")->required();

    CLI::App *exp = app.add_subcommand("export", "Compute and write a table or series to --output");
    exp->add_option("what", o.what, "What to export")
        ->check(CLI::IsMember({"gtable", "assemble-i", "solve-pairs", "solve-tuples"}));
    add_table_bounds(exp);
    exp->add_option("--cap", o.cap, "Exponent cap (solve-pairs, solve-tuples)")->check(pos);
    add_tuple_flags(exp);

    CLI::App *imp = app.add_subcommand("import", "Read a table or series file, validate it and re-emit it");
    imp->add_option("--input", o.input, "File to read")->required();

    try {
        if (const auto cfg = prescan_config(argc, argv)) {
            for (const auto &[key, value] : read_config(*cfg)) {
                bool used = false;
                std::vector<CLI::App *> apps{&app};
                for (CLI::App *sub : app.get_subcommands({})) {
                    apps.push_back(sub);
                }
                for (CLI::App *sub : apps) {
                    if (CLI::Option *opt = sub->get_option_no_throw("--" + key)) {
                        opt->default_val(value);
                        used = true;
                    }
                }
                if (!used) {
                    throw UsageError("unknown config key '" + key + "'");
                }
            }
        }
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }

    std::optional<std::filesystem::path> cache_dir;
    if (!o.cache_dir.empty()) {
        cache_dir = o.cache_dir;
    } else if (const char *env = std::getenv("MOTIVIC_CACHE_DIR"); env && *env) {
        cache_dir = env;
    }
    cli::Cache cache(cache_dir, MOTIVIC_VERSION);

    try {
        if (exp->parsed() && o.output.empty()) {
            throw UsageError("export needs --output");
        }
        if (gtable->parsed() || (exp->parsed() && o.what == "gtable")) {
            const GTable g = cached_gtable(cache, or_default(o.imax, 12), or_default(o.jmax, 12),
                                           or_default(o.order, 30), o.threads);
            emit(o, render_gtable(g, exp->parsed() && o.format == "text" ? "json" : o.format));
        } else if (assemble->parsed() || (exp->parsed() && o.what == "assemble-i")) {
            const GTable g = cached_gtable(cache, or_default(o.imax, 12), or_default(o.jmax, 12),
                                           or_default(o.order, 30), o.threads);
            emit(o, render_series(series_from_gtable(g), exp->parsed() && o.format == "text" ? "json" : o.format));
        } else if (gij->parsed()) {
            const TSeries s = compute_G(o.i, o.j, or_default(o.order, 30));
            std::string out = render_tseries(verify::pair_name("G", o.i, o.j), s, o.format);
            if (o.format == "text" && std::gcd(o.i, o.j) <= 4) {
                out += "closed form: " + render_rf(gij_closed_form(o.i, o.j)) + "\n";
            }
            emit(o, out);
        } else if (gaa->parsed()) {
            if (o.printed && o.a > 4) {
                throw UsageError("tabulated entries exist for a <= 4 only");
            }
            const RationalFunc r = o.printed ? printed_gaa_entry(o.a) : gaa_closed_form(o.a);
            const std::string name = verify::pair_name("G", o.a, o.a);
            std::string out = render_tseries(name, rf_expand(r, or_default(o.order, 30)), o.format);
            if (o.format == "text") {
                out = name + " = " + render_rf(r) + "\n" + out;
            }
            emit(o, out);
        } else if (ver->parsed()) {
            return run_verify(o, cache);
        } else if (power->parsed()) {
            return run_power(o);
        } else if (phipsi[0]->parsed() || phipsi[1]->parsed()) {
            return run_phi_psi(o, phipsi[0]->parsed());
        } else if (pairs->parsed() || (exp->parsed() && o.what == "solve-pairs")) {
            const std::optional<Exponent> ic = o.index_cap > 0 ? std::optional<Exponent>(o.index_cap) : std::nullopt;
            const MultiSeries J = cached_pairs(cache, PairBounds{or_default(o.order, 8), or_default(o.cap, 8), ic});
            emit(o, render_series(J, exp->parsed() && o.format == "text" ? "json" : o.format));
        } else if (tuples->parsed() || (exp->parsed() && o.what == "solve-tuples")) {
            const MultiSeries I = cached_tuples(cache, tuple_bounds(o, 6, 7));
            emit(o, render_series(I, exp->parsed() && o.format == "text" ? "json" : o.format));
        } else if (spec->parsed()) {
            return run_specialize(o);
        } else if (imp->parsed()) {
            return run_import(o);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const NoStabilization &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::verification_failed;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    return Exit::ok;
}

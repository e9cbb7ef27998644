#ifndef MOTIVIC_IO_HPP
#define MOTIVIC_IO_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/solver/gtable.hpp>

namespace motivic
{

// {"order": N, "imax": .., "jmax": .., "entries": [{"i", "j", "coeffs": [[k, LaurentPoly], ..]}]}
inline nlohmann::json gtable_to_json(const GTable &g)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[ij, s] : g.entries()) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (TSeries::Order k = 0; k <= s.order(); ++k) {
            if (!s[k].is_zero()) {
                coeffs.push_back(nlohmann::json::array({k, to_json(s[k])}));
            }
        }
        entries.push_back({{"i", ij.first}, {"j", ij.second}, {"coeffs", std::move(coeffs)}});
    }
    return {{"order", g.order()}, {"imax", g.imax()}, {"jmax", g.jmax()}, {"entries", std::move(entries)}};
}

inline GTable gtable_from_json(const nlohmann::json &j)
{
    try {
        const auto order = j.at("order").get<TSeries::Order>();
        const auto n = j.contains("imax") ? j.at("imax").get<std::int64_t>() : std::int64_t{0};
        const auto m = j.contains("jmax") ? j.at("jmax").get<std::int64_t>() : std::int64_t{0};
        std::int64_t imax = n, jmax = m;
        if (imax == 0 || jmax == 0) {
            for (const auto &e : j.at("entries")) {
                imax = std::max(imax, e.at("i").get<std::int64_t>());
                jmax = std::max(jmax, e.at("j").get<std::int64_t>());
            }
        }
        GTable g(imax, jmax, order);
        for (const auto &e : j.at("entries")) {
            TSeries s(order);
            for (const auto &kc : e.at("coeffs")) {
                s.set(kc.at(0).get<TSeries::Order>(), laurent_from_json(kc.at(1)));
            }
            g.put(e.at("i").get<std::int64_t>(), e.at("j").get<std::int64_t>(), std::move(s));
        }
        return g;
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("malformed table JSON: ") + ex.what());
    } catch (const InvalidArgument &ex) {
        throw ParseError(ex.what());
    }
}

// One row per nonzero coefficient term: i,j,t-exponent,L-exponent,coefficient.
inline std::string gtable_to_csv(const GTable &g)
{
    std::ostringstream out;
    out << "# order=" << g.order() << " imax=" << g.imax() << " jmax=" << g.jmax() << "\n";
    out << "i,j,t_exponent,L_exponent,coefficient\n";
    for (const auto &[ij, s] : g.entries()) {
        for (TSeries::Order k = 0; k <= s.order(); ++k) {
            for (const auto &term : s[k].terms()) {
                out << ij.first << "," << ij.second << "," << k << "," << term.exp << "," << term.coeff.str() << "\n";
            }
        }
    }
    return out.str();
}

inline GTable gtable_from_csv(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# order=", 0) != 0) {
        throw ParseError("table CSV must start with '# order=N imax=I jmax=J'");
    }
    long long order = 0, imax = 0, jmax = 0;
    if (std::sscanf(line.c_str(), "# order=%lld imax=%lld jmax=%lld", &order, &imax, &jmax) != 3) {
        throw ParseError("bad CSV header line: " + line);
    }
    if (!std::getline(in, line) || line != "i,j,t_exponent,L_exponent,coefficient") {
        throw ParseError("missing CSV column header");
    }
    GTable g(imax, jmax, order);
    std::map<std::pair<std::int64_t, std::int64_t>, std::map<TSeries::Order, std::vector<LaurentPoly::Term>>> acc;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 5) {
            throw ParseError("bad CSV row: " + line);
        }
        try {
            const auto i = std::stoll(cells[0]), j = std::stoll(cells[1]), k = std::stoll(cells[2]),
                       e = std::stoll(cells[3]);
            acc[{i, j}][k].push_back({e, BigInt(cells[4])});
        } catch (const std::exception &) {
            throw ParseError("bad CSV row: " + line);
        }
    }
    for (auto &[ij, rows] : acc) {
        TSeries s(order);
        for (auto &[k, terms] : rows) {
            s.set(k, LaurentPoly::from_terms(std::move(terms)));
        }
        g.put(ij.first, ij.second, std::move(s));
    }
    for (std::int64_t i = 1; i <= std::max(imax, jmax); ++i) {
        for (std::int64_t j = i; j <= std::max(imax, jmax); ++j) {
            if (g.in_range(i, j) && !g.entries().count({i, j})) {
                g.put(i, j, TSeries(order));
            }
        }
    }
    return g;
}

// "t^2*a*b^3" for the exponent tuple e over vars; "1" for the constant monomial.
inline std::string monomial_string(const std::vector<std::string> &vars, const Exponents &e)
{
    std::string out;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (e[v] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += vars[v];
        if (e[v] != 1) {
            out += "^" + std::to_string(e[v]);
        }
    }
    return out.empty() ? "1" : out;
}

// {"vars": [..], "bound": {"weights", "max_weight", "caps"}, "terms": [[exponents, LaurentPoly], ..]}
// Terms are in lexicographic exponent order.
inline nlohmann::json series_to_json(const MultiSeries &s)
{
    nlohmann::json caps = nlohmann::json::array();
    for (const auto &c : s.trunc().caps) {
        caps.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[e, c] : s.terms()) {
        nlohmann::json ex = nlohmann::json::array();
        for (std::size_t v = 0; v < s.nvars(); ++v) {
            ex.push_back(e[v]);
        }
        terms.push_back(nlohmann::json::array({std::move(ex), to_json(c)}));
    }
    return {{"vars", s.vars()},
            {"bound", {{"weights", s.trunc().weights}, {"max_weight", s.trunc().max_weight}, {"caps", caps}}},
            {"dropped_by_cap", s.dropped_by_cap()},
            {"terms", std::move(terms)}};
}

inline MultiSeries series_from_json(const nlohmann::json &j)
{
    try {
        const auto vars = j.at("vars").get<std::vector<std::string>>();
        Truncation tr;
        tr.weights = j.at("bound").at("weights").get<std::vector<Exponent>>();
        tr.max_weight = j.at("bound").at("max_weight").get<Exponent>();
        for (const auto &c : j.at("bound").at("caps")) {
            tr.caps.push_back(c.is_null() ? std::nullopt : std::optional<Exponent>(c.get<Exponent>()));
        }
        MultiSeries s(vars, tr);
        for (const auto &t : j.at("terms")) {
            Exponents e = zero_exponents();
            const auto &ex = t.at(0);
            if (ex.size() != vars.size()) {
                throw ParseError("exponent tuple of wrong length");
            }
            for (std::size_t v = 0; v < vars.size(); ++v) {
                e[v] = ex.at(v).get<Exponent>();
            }
            if (!s.add(e, laurent_from_json(t.at(1)))) {
                throw ParseError("term outside the declared bound");
            }
        }
        if (j.contains("dropped_by_cap")) {
            s.note_dropped(j.at("dropped_by_cap").get<std::uint64_t>());
        }
        return s;
    } catch (const nlohmann::json::exception &ex) {
        throw ParseError(std::string("malformed series JSON: ") + ex.what());
    } catch (const InvalidArgument &ex) {
        throw ParseError(ex.what());
    }
}

} // namespace motivic

#endif

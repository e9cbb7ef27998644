#ifndef MOTIVIC_SOLVER_EQ1_HPP
#define MOTIVIC_SOLVER_EQ1_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/solver/gtable.hpp>

namespace motivic
{

struct Eq1Window {
    std::int64_t imax = 6;
    std::int64_t jmax = 6;
    TSeries::Order torder = 30;
};

// How the collapsed term sum_j G_{i,j} is completed beyond the table.
enum class Eq1Tail {
    // Only diagonal monomials whose whole sum lies inside the table are checked.
    strict,
    // Rows are continued past jmax with the equation's own off-diagonal
    // relation G_{i,j} = t^{i^2-i} L^-i G_{i,j-i}; every table monomial is checked.
    extend_rows,
};

struct Eq1Result {
    MultiSeries residual;
    std::size_t checked = 0;

    [[nodiscard]] bool ok() const
    {
        return residual.is_zero();
    }
};

namespace detail
{

// (i, j) of a monomial on the support k3 = i^2, k4 = ij, k5 = j^2.
inline std::optional<std::pair<std::int64_t, std::int64_t>> support_indices(const Exponents &e)
{
    const std::int64_t i = e[1], j = e[2];
    if (e[3] != i * i || e[4] != i * j || e[5] != j * j) {
        return std::nullopt;
    }
    return std::make_pair(i, j);
}

inline std::string describe_i_monomial(const Exponents &e)
{
    static const char *names[] = {"t", "a", "b", "c", "d", "f"};
    std::string out;
    for (int v = 0; v < 6; ++v) {
        if (e[v] != 0) {
            if (!out.empty()) {
                out += "*";
            }
            out += names[v];
            if (e[v] != 1) {
                out += "^" + std::to_string(e[v]);
            }
        }
    }
    return out.empty() ? "1" : out;
}

} // namespace detail

// The three right-hand side terms of the functional equation as substitutions.
inline MonomialMap eq1_map(int which)
{
    const auto &v = i_vars();
    MonomialMap m(v);
    m.set("a", LaurentPoly::L(-1), {{"t", -1}, {"a", 1}, {"b", 1}});
    m.set("c", LaurentPoly(1), {{"t", 1}, {"c", 1}, {"d", 1}, {"f", 1}});
    switch (which) {
    case 1:
        m.set("d", LaurentPoly(1), {{"d", 1}, {"f", 2}});
        break;
    case 2:
        m.set("b", LaurentPoly(1), {{"a", 1}});
        m.set("d", LaurentPoly(1), {{"d", 1}, {"c", 2}});
        m.set("f", LaurentPoly(1), {{"c", 1}});
        break;
    default:
        m.set("b", LaurentPoly(1), {});
        m.set("d", LaurentPoly(1), {});
        m.set("f", LaurentPoly(1), {});
        break;
    }
    return m;
}

// LHS - RHS of the functional equation on the determination window of the
// table carried by I (indices inside window.imax x window.jmax, transposes
// included, t-degree <= window.torder).
inline Eq1Result verify_eq1(const MultiSeries &I, const Eq1Window &window, Eq1Tail tail = Eq1Tail::extend_rows)
{
    if (I.vars() != i_vars()) {
        throw InvalidArgument("verify_eq1 expects a series over (t,a,b,c,d,f)");
    }
    if (window.imax < 1 || window.jmax < 1 || window.torder < 0) {
        throw WindowTooSmall("empty window");
    }
    const GTable domain(window.imax, window.jmax, window.torder);
    const TSeries::Order N = std::min<TSeries::Order>(window.torder, I.trunc().max_weight);
    const Truncation tr = graded(i_vars(), N);

    MultiSeries lhs(i_vars(), tr);
    std::map<std::pair<std::int64_t, std::int64_t>, TSeries> g;
    for (const auto &[e, c] : I.terms()) {
        const auto ij = detail::support_indices(e);
        if (!ij) {
            throw InvalidArgument("monomial " + detail::describe_i_monomial(e) + " lies off the support");
        }
        if (!domain.in_range(ij->first, ij->second) || e[0] > N) {
            continue;
        }
        lhs.add(e, c);
        auto [it, ins] = g.try_emplace(*ij, TSeries(N));
        it->second.set(e[0], c);
    }
    auto G = [&](std::int64_t i, std::int64_t j) {
        auto it = g.find({i, j});
        return it == g.end() ? TSeries(N) : it->second;
    };

    MultiSeries rhs = ms_substitute(lhs, eq1_map(1), tr) + ms_substitute(lhs, eq1_map(2), tr) +
                      L_minus_1() * ms_substitute(lhs, eq1_map(3), tr);

    const std::int64_t n = std::max(window.imax, window.jmax);
    std::vector<std::pair<std::int64_t, std::int64_t>> undetermined_diag;
    // Diagonal coefficients whose tail is not in Z[L, 1/L]; the obstruction is reported as residual.
    std::map<std::pair<std::int64_t, TSeries::Order>, LaurentPoly> obstructed;
    for (std::int64_t i = 1; i <= n; ++i) {
        if (!domain.in_range(i, i)) {
            continue;
        }
        // Largest j with (i, 1..j) all in the table.
        std::int64_t R = 0;
        while (domain.in_range(i, R + 1)) {
            ++R;
        }
        if (tail == Eq1Tail::extend_rows) {
            // sum_{j > R} G_{i,j} = sum_{r = R-i+1}^{R} G_{i,r} eps_i / (1 - eps_i)
            TSeries part(N);
            for (std::int64_t r = std::max<std::int64_t>(1, R - i + 1); r <= R; ++r) {
                part += G(i, r);
            }
            TSeries extra(N);
            if (i == 1) {
                // eps_1 / (1 - eps_1) = 1 / (L - 1), exact only on (L - 1)-divisible data
                for (TSeries::Order k = 0; k <= N; ++k) {
                    const auto q = divide_exact(part[k], L_minus_1());
                    if (q) {
                        extra.set(k, *q);
                    } else {
                        obstructed.emplace(std::make_pair(i, k), part[k]);
                    }
                }
            } else {
                const TSeries e = detail::g_eps(i, N);
                extra = part * e * invert(TSeries::one(N) - e);
            }
            const TSeries contrib = L_minus_1() * detail::g_eps(i, N) * extra;
            for (TSeries::Order k = 0; k <= N; ++k) {
                rhs.add(i_monomial(k, i, i), contrib[k]);
            }
        } else {
            // Diagonal t^k needs every j with (i-1)(j-1) <= k - (i^2 - i) inside the row.
            for (TSeries::Order k = 0; k <= N; ++k) {
                const std::int64_t shift = k - (i * i - i);
                bool determined = shift < 0;
                if (!determined && i >= 2) {
                    determined = 1 + shift / (i - 1) <= R;
                }
                if (!determined) {
                    undetermined_diag.emplace_back(i, k);
                }
            }
        }
    }

    Eq1Result out{MultiSeries(i_vars(), tr), 0};
    const MultiSeries diff = lhs - rhs;
    auto undetermined = [&](std::int64_t i, std::int64_t j, TSeries::Order k) {
        return i == j && std::find(undetermined_diag.begin(), undetermined_diag.end(), std::make_pair(i, k)) !=
                             undetermined_diag.end();
    };
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= n; ++j) {
            if (!domain.in_range(i, j)) {
                continue;
            }
            for (TSeries::Order k = 0; k <= N; ++k) {
                if (undetermined(i, j, k)) {
                    continue;
                }
                ++out.checked;
                const Exponents e = i_monomial(k, i, j);
                auto ob = i == j ? obstructed.find({i, k}) : obstructed.end();
                out.residual.add(e, ob != obstructed.end() ? ob->second : diff.coefficient(e));
            }
        }
    }
    if (out.checked == 0) {
        throw WindowTooSmall("no monomial of the window is determined by the table");
    }
    return out;
}

struct SymmetrySupportReport {
    bool symmetric = true;
    bool support_ok = true;
    std::string first_violation;

    [[nodiscard]] bool ok() const
    {
        return symmetric && support_ok;
    }
};

// Invariance under (a<->b, c<->f) and the support relations k3 = k1^2,
// k4 = k1 k2, k5 = k2^2.
inline SymmetrySupportReport verify_symmetry_and_support(const MultiSeries &I)
{
    SymmetrySupportReport rep;
    for (const auto &[e, c] : I.terms()) {
        if (!detail::support_indices(e)) {
            rep.support_ok = false;
            rep.first_violation = "off-support monomial " + detail::describe_i_monomial(e);
            break;
        }
    }
    const MultiSeries swapped = relabel(I, swap_permutation(I.vars(), {{"a", "b"}, {"c", "f"}}));
    if (!(swapped == I)) {
        rep.symmetric = false;
        if (rep.first_violation.empty()) {
            for (const auto &[e, c] : I.terms()) {
                if (swapped.coefficient(e) != c) {
                    rep.first_violation = "asymmetric at " + detail::describe_i_monomial(e);
                    break;
                }
            }
            if (rep.first_violation.empty()) {
                rep.first_violation = "asymmetric";
            }
        }
    }
    return rep;
}

} // namespace motivic

#endif

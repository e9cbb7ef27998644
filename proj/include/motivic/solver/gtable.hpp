#ifndef MOTIVIC_SOLVER_GTABLE_HPP
#define MOTIVIC_SOLVER_GTABLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/rational_func.hpp>
#include <motivic/solver/system6.hpp>
#include <motivic/tseries.hpp>

namespace motivic
{

inline LaurentPoly L_minus_1()
{
    return LaurentPoly::L() - LaurentPoly(1);
}

// G_{1,1} = (L - 1)^2 L^-2.
inline LaurentPoly g11_seed()
{
    return L_minus_1().pow(2) * LaurentPoly::L(-2);
}

namespace detail
{

inline void check_indices(std::int64_t i, std::int64_t j)
{
    if (i < 1 || j < 1) {
        throw InvalidArgument("indices must be >= 1, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

// eps_k = t^{k^2 - k} L^-k as a series.
inline TSeries g_eps(std::int64_t k, TSeries::Order order)
{
    return TSeries::monomial(order, LaurentPoly::L(-k), k * k - k);
}

} // namespace detail

// Memo of G_{i,j} keyed by (min, max); an entry computed to order N serves
// every request of order <= N. Lookups and inserts are serialised, the
// computation itself runs unlocked.
class GMemo
{
public:
    [[nodiscard]] bool lookup(std::int64_t i, std::int64_t j, TSeries::Order order, TSeries &out) const
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        auto it = m_entries.find({std::min(i, j), std::max(i, j)});
        if (it == m_entries.end() || it->second.order() < order) {
            return false;
        }
        out = it->second.truncated(order);
        return true;
    }
    void insert(std::int64_t i, std::int64_t j, const TSeries &s)
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        auto [it, inserted] = m_entries.try_emplace({std::min(i, j), std::max(i, j)}, s);
        if (!inserted && it->second.order() < s.order()) {
            it->second = s;
        }
    }
    void clear()
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        m_entries.clear();
    }
    [[nodiscard]] std::size_t size() const
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        return m_entries.size();
    }

private:
    mutable std::mutex m_mutex;
    std::map<std::pair<std::int64_t, std::int64_t>, TSeries> m_entries;
};

inline GMemo &g_memo()
{
    static GMemo memo;
    return memo;
}

// G_{i,j}(t) to t^order from the recursion; G_{1,1} is seed data.
inline TSeries compute_G(std::int64_t i, std::int64_t j, TSeries::Order order)
{
    detail::check_indices(i, j);
    if (i < j) {
        std::swap(i, j);
    }
    TSeries out;
    if (g_memo().lookup(i, j, order, out)) {
        return out;
    }
    TSeries r(order);
    if (i == 1) {
        r.set(0, g11_seed());
    } else if (i > j) {
        r = detail::g_eps(j, order) * compute_G(i - j, j, order);
    } else {
        TSeries sum(order);
        for (std::int64_t k = 1; k < i; ++k) {
            sum += compute_G(i, k, order);
        }
        const TSeries e = detail::g_eps(i, order);
        const TSeries den = TSeries::one(order) - TSeries::monomial(order, LaurentPoly::L(1 - i), i * i - i);
        r = (L_minus_1() * e) * sum * invert(den);
    }
    g_memo().insert(i, j, r);
    return r;
}

// Same table through the generic triangular solver.
inline SymTable<TSeries> solve_G_system(std::int64_t n, TSeries::Order order)
{
    System6Instance<TSeries> inst;
    inst.eps = [order](std::int64_t k) { return detail::g_eps(k, order); };
    inst.C = TSeries::monomial(order, L_minus_1());
    inst.seed = TSeries::monomial(order, g11_seed());
    inst.imax = n;
    inst.jmax = n;
    return solve_system6(inst);
}

// Symmetric table of G_{i,j}, 1 <= i <= imax, 1 <= j <= jmax (and transposes).
class GTable
{
public:
    GTable() = default;
    GTable(std::int64_t imax, std::int64_t jmax, TSeries::Order order) : m_imax(imax), m_jmax(jmax), m_order(order)
    {
        if (imax < 1 || jmax < 1) {
            throw InvalidArgument("table bounds must be positive");
        }
    }

    [[nodiscard]] std::int64_t imax() const noexcept
    {
        return m_imax;
    }
    [[nodiscard]] std::int64_t jmax() const noexcept
    {
        return m_jmax;
    }
    [[nodiscard]] TSeries::Order order() const noexcept
    {
        return m_order;
    }
    [[nodiscard]] bool in_range(std::int64_t i, std::int64_t j) const noexcept
    {
        return i >= 1 && j >= 1 && ((i <= m_imax && j <= m_jmax) || (j <= m_imax && i <= m_jmax));
    }
    [[nodiscard]] const TSeries &at(std::int64_t i, std::int64_t j) const
    {
        auto it = m_entries.find({std::min(i, j), std::max(i, j)});
        if (it == m_entries.end()) {
            throw InvalidArgument("G[" + std::to_string(i) + "," + std::to_string(j) + "] not in table");
        }
        return it->second;
    }
    void put(std::int64_t i, std::int64_t j, TSeries s)
    {
        if (!in_range(i, j)) {
            throw InvalidArgument("G[" + std::to_string(i) + "," + std::to_string(j) + "] outside table bounds");
        }
        if (s.order() != m_order) {
            s = s.order() > m_order ? s.truncated(m_order) : TSeries(m_order, s.coeffs());
        }
        m_entries.insert_or_assign({std::min(i, j), std::max(i, j)}, std::move(s));
    }
    // Entries keyed by (i, j) with i <= j, in lexicographic order.
    [[nodiscard]] const std::map<std::pair<std::int64_t, std::int64_t>, TSeries> &entries() const noexcept
    {
        return m_entries;
    }

    friend bool operator==(const GTable &, const GTable &) = default;

private:
    std::int64_t m_imax = 0;
    std::int64_t m_jmax = 0;
    TSeries::Order m_order = 0;
    std::map<std::pair<std::int64_t, std::int64_t>, TSeries> m_entries;
};

// Builds the table; independent entries are computed on several threads.
inline GTable build_gtable(std::int64_t imax, std::int64_t jmax, TSeries::Order order, unsigned threads = 0)
{
    GTable table(imax, jmax, order);
    std::vector<std::pair<std::int64_t, std::int64_t>> keys;
    for (std::int64_t i = 1; i <= std::max(imax, jmax); ++i) {
        for (std::int64_t j = i; j <= std::max(imax, jmax); ++j) {
            if (table.in_range(i, j)) {
                keys.emplace_back(i, j);
            }
        }
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(keys.size()));
    std::vector<TSeries> values(keys.size());
    if (threads <= 1) {
        for (std::size_t k = 0; k < keys.size(); ++k) {
            values[k] = compute_G(keys[k].first, keys[k].second, order);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < keys.size(); k += threads) {
                    values[k] = compute_G(keys[k].first, keys[k].second, order);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
        table.put(keys[k].first, keys[k].second, std::move(values[k]));
    }
    return table;
}

namespace detail
{

// 1 - c t^k
inline TPolynomial one_minus(const LaurentPoly &c, std::size_t k)
{
    return TPolynomial(1) - TPolynomial::monomial(c, k);
}

} // namespace detail

// Closed forms of G_{a,a}. The a = 1 entry is the seed (L - 1)^2 L^-2; the
// a = 4 numerator is the one the recursion actually produces (see
// printed_gaa_entry for the form as tabulated).
inline RationalFunc gaa_closed_form(std::int64_t a)
{
    const LaurentPoly c3 = L_minus_1().pow(3);
    const auto L = [](std::int64_t e) { return LaurentPoly::L(e); };
    switch (a) {
    case 1:
        return RationalFunc(TPolynomial(g11_seed()));
    case 2:
        return {TPolynomial::monomial(c3 * L(-5), 2), detail::one_minus(L(-1), 2)};
    case 3:
        return {TPolynomial::monomial(c3 * L(-7), 6) * (TPolynomial(1) + TPolynomial::monomial(L(-1), 2)),
                detail::one_minus(L(-2), 6)};
    case 4: {
        std::vector<LaurentPoly> f(9);
        f[0] = LaurentPoly(1);
        f[2] = -L(-1);
        f[4] = L(-1) - L(-2);
        f[6] = L(-2);
        f[8] = -L(-3);
        return {TPolynomial::monomial(c3 * L(-9), 12) * TPolynomial(f),
                detail::one_minus(L(-3), 12) * detail::one_minus(L(-1), 2)};
    }
    default:
        throw Unsupported("no closed form for G_{a,a} with a = " + std::to_string(a));
    }
}

// The G_{a,a} row exactly as tabulated, including the entries that disagree
// with the recursion (a = 1 and a = 4).
inline RationalFunc printed_gaa_entry(std::int64_t a)
{
    const auto L = [](std::int64_t e) { return LaurentPoly::L(e); };
    switch (a) {
    case 1:
        return RationalFunc(TPolynomial(L_minus_1() * L(2)));
    case 4: {
        std::vector<LaurentPoly> f(9);
        f[0] = LaurentPoly(1);
        f[2] = -L(-1);
        f[6] = L(-1);
        f[8] = -L(-3);
        return {TPolynomial::monomial(L_minus_1().pow(3) * L(-9), 12) * TPolynomial(f),
                detail::one_minus(L(-3), 12) * detail::one_minus(L(-1), 2)};
    }
    default:
        return gaa_closed_form(a);
    }
}

// G_{i,j} = t^{(i-1)(j-1)-(a-1)^2} L^{2a-i-j} G_{a,a}, a = gcd(i, j).
inline RationalFunc gij_closed_form(std::int64_t i, std::int64_t j)
{
    detail::check_indices(i, j);
    const std::int64_t a = std::gcd(i, j);
    if (a > 4) {
        throw Unsupported("gcd(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(a) + " > 4");
    }
    const std::int64_t texp = (i - 1) * (j - 1) - (a - 1) * (a - 1);
    const TPolynomial pre = TPolynomial::monomial(LaurentPoly::L(2 * a - i - j), static_cast<std::size_t>(texp));
    return RationalFunc(pre) * gaa_closed_form(a);
}

// t^{(i-1)(j-1)-(a-1)^2} L^{2a-i-j} G_{a,a}(t), a = gcd(i, j), from the recursion.
inline TSeries lemma3_image(std::int64_t i, std::int64_t j, TSeries::Order order)
{
    detail::check_indices(i, j);
    const std::int64_t a = std::gcd(i, j);
    return TSeries::monomial(order, LaurentPoly::L(2 * a - i - j), (i - 1) * (j - 1) - (a - 1) * (a - 1)) *
           compute_G(a, a, order);
}

inline bool lemma3_holds(std::int64_t i, std::int64_t j, TSeries::Order order)
{
    return compute_G(i, j, order) == lemma3_image(i, j, order);
}

struct LeadingTerm {
    TSeries::Order exponent;
    LaurentPoly coeff;

    friend bool operator==(const LeadingTerm &, const LeadingTerm &) = default;
};

// Lowest nonzero coefficient of G_{i,j}.
inline LeadingTerm leading_term(std::int64_t i, std::int64_t j)
{
    detail::check_indices(i, j);
    const std::int64_t a = std::gcd(i, j);
    const TSeries::Order order = (i - 1) * (j - 1) + a;
    const TSeries g = compute_G(i, j, order);
    const auto v = g.valuation();
    if (!v) {
        throw Error("G[" + std::to_string(i) + "," + std::to_string(j) + "] vanishes to order " + std::to_string(order));
    }
    return {*v, g[*v]};
}

// Predicted leading term: (L-1)^2 L^{-i-j} t^{(i-1)(j-1)} for coprime i, j, else (L-1)^3 L^{-i-j-1} t^{(i-1)(j-1)+a-1}.
inline LeadingTerm predicted_leading_term(std::int64_t i, std::int64_t j)
{
    detail::check_indices(i, j);
    const std::int64_t a = std::gcd(i, j);
    if (a == 1) {
        return {(i - 1) * (j - 1), L_minus_1().pow(2) * LaurentPoly::L(-i - j)};
    }
    return {(i - 1) * (j - 1) + a - 1, L_minus_1().pow(3) * LaurentPoly::L(-i - j - 1)};
}

// Measure of the stratum {v_x = i, v_y = j, Milnor number = mu}.
inline LaurentPoly milnor_measure(std::int64_t i, std::int64_t j, std::int64_t mu)
{
    detail::check_indices(i, j);
    if (mu < 0) {
        return {};
    }
    return compute_G(i, j, mu)[mu];
}

// G_{i,j}(1) from the closed form equals the f(a, b) coefficient (L-1)^2 L^{-i-j}.
inline bool mass_check(std::int64_t i, std::int64_t j)
{
    const LaurentQuotient v = rf_eval_t1(gij_closed_form(i, j));
    return v == LaurentQuotient{L_minus_1().pow(2) * LaurentPoly::L(-i - j), LaurentPoly(1)};
}

inline const std::vector<std::string> &i_vars()
{
    static const std::vector<std::string> vars{"t", "a", "b", "c", "d", "f"};
    return vars;
}

inline Exponents i_monomial(std::int64_t t, std::int64_t i, std::int64_t j)
{
    Exponents e = zero_exponents();
    e[0] = t;
    e[1] = i;
    e[2] = j;
    e[3] = i * i;
    e[4] = i * j;
    e[5] = j * j;
    return e;
}

// I as a series over (t, a, b, c, d, f) from a table.
inline MultiSeries series_from_gtable(const GTable &g)
{
    MultiSeries s(i_vars(), graded(i_vars(), g.order()));
    for (std::int64_t i = 1; i <= std::max(g.imax(), g.jmax()); ++i) {
        for (std::int64_t j = 1; j <= std::max(g.imax(), g.jmax()); ++j) {
            if (!g.in_range(i, j)) {
                continue;
            }
            const TSeries &gij = g.at(i, j);
            for (TSeries::Order k = 0; k <= gij.order(); ++k) {
                s.add(i_monomial(k, i, j), gij[k]);
            }
        }
    }
    return s;
}

// I(t,a,b,c,d,f) = sum G_{i,j}(t) a^i b^j c^{i^2} d^{ij} f^{j^2}, truncated.
inline MultiSeries assemble_I(std::int64_t imax, std::int64_t jmax, TSeries::Order order)
{
    return series_from_gtable(build_gtable(imax, jmax, order));
}

} // namespace motivic

#endif

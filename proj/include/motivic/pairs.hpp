#ifndef MOTIVIC_PAIRS_HPP
#define MOTIVIC_PAIRS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/solver/gtable.hpp>

namespace motivic
{

inline const std::vector<std::string> &j_vars()
{
    static const std::vector<std::string> vars{"t", "a", "b", "c", "d", "p", "q", "r", "s"};
    return vars;
}

// t-order plus one exponent cap shared by a, b, c, d, p, q, r, s. index_cap
// additionally bounds every summation index of the Phi/Psi series.
struct PairBounds {
    TSeries::Order torder = 8;
    Exponent cap = 8;
    std::optional<Exponent> index_cap;
};

inline Truncation pair_truncation(const std::vector<std::string> &vars, TSeries::Order torder, Exponent cap)
{
    Truncation tr = graded(vars, torder, {{"t", 1}, {"u", 1}});
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (vars[v] != "t" && vars[v] != "u") {
            tr.caps[v] = cap;
        }
    }
    return tr;
}

inline Truncation pair_truncation(const PairBounds &b)
{
    return pair_truncation(j_vars(), b.torder, b.cap);
}

// One argument slot: L^lexp times a monomial over the target variables.
struct MonoArg {
    Exponent lexp = 0;
    Exponents mono = zero_exponents();
    // The slot is the constant 0.
    bool zero = false;

    [[nodiscard]] bool pure() const
    {
        for (Exponent e : mono) {
            if (e != 0) {
                return false;
            }
        }
        return true;
    }
};

inline MonoArg mono_arg(const std::vector<std::string> &vars, Exponent lexp,
                        std::initializer_list<std::pair<std::string, Exponent>> named = {})
{
    MonoArg a;
    a.lexp = lexp;
    for (const auto &[name, e] : named) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            throw InvalidArgument("unknown variable " + name);
        }
        a.mono[static_cast<std::size_t>(it - vars.begin())] += e;
    }
    return a;
}

namespace detail
{

constexpr Exponent kIndexGuard = 100000;

// sum_{j > i} L^{jE} = L^{iE} / (L^{-E} - 1), E < 0.
struct GeometricTail {
    Exponent lexp;
    LaurentPoly den;
};

inline GeometricTail geometric_tail(Exponent i, Exponent E)
{
    if (E >= 0) {
        throw Unsupported("free summation index with non-decaying ratio L^" + std::to_string(E));
    }
    return {i * E, LaurentPoly::L(-E) - LaurentPoly(1)};
}

// prefactor / den, memoised per denominator.
class ExactQuotients
{
public:
    explicit ExactQuotients(LaurentPoly prefactor) : m_prefactor(std::move(prefactor)) {}
    const LaurentPoly &get(const LaurentPoly &den)
    {
        if (den.is_one()) {
            return m_prefactor;
        }
        const std::string key = to_string(den);
        auto it = m_cache.find(key);
        if (it == m_cache.end()) {
            it = m_cache.emplace(key, divide_or_throw(m_prefactor, den)).first;
        }
        return it->second;
    }

private:
    LaurentPoly m_prefactor;
    std::map<std::string, LaurentPoly> m_cache;
};

inline void accumulate(Exponents &e, Exponent &lexp, const MonoArg &a, Exponent times)
{
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        e[v] += times * a.mono[v];
    }
    lexp += times * a.lexp;
}

inline Exponent max_index(const std::optional<Exponent> &cap)
{
    return cap ? *cap : kIndexGuard + 1;
}

inline bool index_allowed(Exponent n, const std::optional<Exponent> &cap)
{
    if (n > kIndexGuard) {
        throw Unsupported("summation index not bounded by the truncation window; give an index cap");
    }
    return !cap || n <= *cap;
}

} // namespace detail

// prefactor * Phi(alpha, beta, gamma, delta; pi, kappa, rho, sigma)
//   = prefactor * sum_{1<=i<j, 1<=k<l} alpha^{ik} beta^{il} gamma^{jk} delta^{jl} pi^i kappa^j rho^k sigma^l,
// truncated to `trunc` and, if given, to indices <= index_cap. An index whose
// slots are all pure powers of L is summed to infinity in closed form; the
// resulting denominator must divide the prefactor.
inline MultiSeries phi(const std::array<MonoArg, 8> &args, const std::vector<std::string> &vars,
                       const Truncation &trunc, const std::optional<Exponent> &index_cap = std::nullopt,
                       const LaurentPoly &prefactor = LaurentPoly(1))
{
    const auto &[al, be, ga, de, pi, ka, rh, si] = args;
    // Every slot carries a positive exponent.
    if (std::any_of(args.begin(), args.end(), [](const MonoArg &a) { return a.zero; })) {
        return MultiSeries(vars, trunc);
    }
    const bool jfree = ga.pure() && de.pure() && ka.pure();
    const bool lfree = be.pure() && de.pure() && si.pure();
    if (al.pure() && be.pure() && pi.pure()) {
        throw Unsupported("Phi with a free outer index i");
    }
    if (al.pure() && ga.pure() && rh.pure()) {
        throw Unsupported("Phi with a free outer index k");
    }
    if (jfree && lfree && de.lexp != 0) {
        throw Unsupported("Phi with two coupled free indices");
    }
    MultiSeries out(vars, trunc);
    detail::ExactQuotients quot(prefactor);
    using V = Truncation::Verdict;
    // Monomial (without pure-L free parts) of the term (i, j, k, l).
    auto term = [&](Exponent i, Exponent j, Exponent k, Exponent l, Exponent &lexp) {
        Exponents e = zero_exponents();
        lexp = 0;
        detail::accumulate(e, lexp, al, i * k);
        detail::accumulate(e, lexp, pi, i);
        detail::accumulate(e, lexp, rh, k);
        if (!lfree) {
            detail::accumulate(e, lexp, be, i * l);
            detail::accumulate(e, lexp, si, l);
        }
        if (!jfree) {
            detail::accumulate(e, lexp, ga, j * k);
            detail::accumulate(e, lexp, ka, j);
        }
        if (!jfree && !lfree) {
            detail::accumulate(e, lexp, de, j * l);
        }
        return e;
    };
    auto fits = [&](Exponent i, Exponent j, Exponent k, Exponent l) {
        Exponent lx = 0;
        const V v = trunc.classify(term(i, j, k, l, lx));
        if (v == V::over_cap) {
            out.note_dropped(1);
        }
        return v == V::keep;
    };
    for (Exponent i = 1; detail::index_allowed(i, index_cap) && fits(i, i + 1, 1, 2); ++i) {
        for (Exponent k = 1; detail::index_allowed(k, index_cap) && fits(i, i + 1, k, k + 1); ++k) {
            const Exponent jmax = jfree ? i + 1 : detail::max_index(index_cap);
            for (Exponent j = i + 1; j <= jmax && (jfree || detail::index_allowed(j, index_cap)) && fits(i, j, k, k + 1); ++j) {
                const Exponent lmax = lfree ? k + 1 : detail::max_index(index_cap);
                for (Exponent l = k + 1; l <= lmax && (lfree || detail::index_allowed(l, index_cap)) && fits(i, j, k, l); ++l) {
                    Exponent lexp = 0;
                    const Exponents e = term(i, j, k, l, lexp);
                    LaurentPoly den(1);
                    if (jfree) {
                        const auto tail = detail::geometric_tail(i, k * ga.lexp + ka.lexp + (lfree ? 0 : l * de.lexp));
                        lexp += tail.lexp;
                        den *= tail.den;
                    }
                    if (lfree) {
                        const auto tail = detail::geometric_tail(k, i * be.lexp + si.lexp + (jfree ? 0 : j * de.lexp));
                        lexp += tail.lexp;
                        den *= tail.den;
                    }
                    out.add_unchecked(e, quot.get(den) * LaurentPoly::L(lexp));
                }
            }
        }
    }
    return out;
}

// prefactor * Psi(alpha, beta, pi, kappa, rho) = prefactor * sum_{1<=i<j, k>=1} alpha^{ik} beta^{jk} pi^i kappa^j rho^k.
inline MultiSeries psi(const std::array<MonoArg, 5> &args, const std::vector<std::string> &vars,
                       const Truncation &trunc, const std::optional<Exponent> &index_cap = std::nullopt,
                       const LaurentPoly &prefactor = LaurentPoly(1))
{
    const auto &[al, be, pi, ka, rh] = args;
    if (std::any_of(args.begin(), args.end(), [](const MonoArg &a) { return a.zero; })) {
        return MultiSeries(vars, trunc);
    }
    const bool jfree = be.pure() && ka.pure();
    if (al.pure() && pi.pure()) {
        throw Unsupported("Psi with a free index i");
    }
    if (al.pure() && be.pure() && rh.pure()) {
        throw Unsupported("Psi with a free index k");
    }
    MultiSeries out(vars, trunc);
    detail::ExactQuotients quot(prefactor);
    using V = Truncation::Verdict;
    auto term = [&](Exponent i, Exponent j, Exponent k, Exponent &lexp) {
        Exponents e = zero_exponents();
        lexp = 0;
        detail::accumulate(e, lexp, al, i * k);
        detail::accumulate(e, lexp, pi, i);
        detail::accumulate(e, lexp, rh, k);
        if (!jfree) {
            detail::accumulate(e, lexp, be, j * k);
            detail::accumulate(e, lexp, ka, j);
        }
        return e;
    };
    auto fits = [&](Exponent i, Exponent j, Exponent k) {
        Exponent lx = 0;
        const V v = trunc.classify(term(i, j, k, lx));
        if (v == V::over_cap) {
            out.note_dropped(1);
        }
        return v == V::keep;
    };
    for (Exponent i = 1; detail::index_allowed(i, index_cap) && fits(i, i + 1, 1); ++i) {
        for (Exponent k = 1; detail::index_allowed(k, index_cap) && fits(i, i + 1, k); ++k) {
            const Exponent jmax = jfree ? i + 1 : detail::max_index(index_cap);
            for (Exponent j = i + 1; j <= jmax && (jfree || detail::index_allowed(j, index_cap)) && fits(i, j, k); ++j) {
                Exponent lexp = 0;
                const Exponents e = term(i, j, k, lexp);
                LaurentPoly den(1);
                if (jfree) {
                    const auto tail = detail::geometric_tail(i, k * be.lexp + ka.lexp);
                    lexp += tail.lexp;
                    den = tail.den;
                }
                out.add_unchecked(e, quot.get(den) * LaurentPoly::L(lexp));
            }
        }
    }
    return out;
}

// The explicit strata of the pair decomposition, numbered by the relative
// order of (v_x, v_y) on each arc: 2 (>,<), 3 (>,=), 4 (<,>), 6 (<,=),
// 7 (=,>), 8 (=,<), 9 for equal orders on both arcs with distinct tangents.
inline const std::vector<int> &explicit_strata()
{
    static const std::vector<int> ids{2, 3, 4, 6, 7, 8, 9};
    return ids;
}

// The Phi or Psi call of one explicit stratum: prefactor * Phi(phi_args) or prefactor * Psi(psi_args).
struct StratumArgs {
    bool is_phi = true;
    std::array<MonoArg, 8> phi_args{};
    std::array<MonoArg, 5> psi_args{};
    LaurentPoly prefactor;
};

inline StratumArgs stratum_args(int which)
{
    const auto &v = j_vars();
    const LaurentPoly c4 = L_minus_1().pow(4);
    auto m = [&](Exponent lexp, std::initializer_list<std::pair<std::string, Exponent>> named = {}) {
        return mono_arg(v, lexp, named);
    };
    auto as_phi = [](std::array<MonoArg, 8> a, LaurentPoly pre) {
        StratumArgs s;
        s.phi_args = std::move(a);
        s.prefactor = std::move(pre);
        return s;
    };
    auto as_psi = [](std::array<MonoArg, 5> a, LaurentPoly pre) {
        StratumArgs s;
        s.is_phi = false;
        s.psi_args = std::move(a);
        s.prefactor = std::move(pre);
        return s;
    };
    switch (which) {
    case 2:
        return as_phi({m(0, {{"b", 1}, {"t", 1}}), m(0, {{"a", 1}}), m(0, {{"d", 1}}), m(0, {{"c", 1}}),
                       m(-1, {{"p", 1}}), m(-1, {{"q", 1}}), m(-1, {{"s", 1}}), m(-1, {{"r", 1}})},
                      c4);
    case 3:
        return as_psi({m(0, {{"t", 1}, {"a", 1}, {"b", 1}}), m(0, {{"c", 1}, {"d", 1}}), m(-1, {{"p", 1}}),
                       m(-1, {{"q", 1}}), m(-2, {{"r", 1}, {"s", 1}})},
                      c4);
    case 4:
        return as_phi({m(0, {{"c", 1}, {"t", 1}}), m(0, {{"d", 1}}), m(0, {{"a", 1}}), m(0, {{"b", 1}}),
                       m(-1, {{"q", 1}}), m(-1, {{"p", 1}}), m(-1, {{"r", 1}}), m(-1, {{"s", 1}})},
                      c4);
    case 6:
        return as_psi({m(0, {{"t", 1}, {"c", 1}, {"d", 1}}), m(0, {{"a", 1}, {"b", 1}}), m(-1, {{"q", 1}}),
                       m(-1, {{"p", 1}}), m(-2, {{"r", 1}, {"s", 1}})},
                      c4);
    case 7:
        return as_psi({m(0, {{"t", 1}, {"a", 1}, {"c", 1}}), m(0, {{"b", 1}, {"d", 1}}), m(-1, {{"r", 1}}),
                       m(-1, {{"s", 1}}), m(-2, {{"p", 1}, {"q", 1}})},
                      c4);
    case 8:
        return as_psi({m(0, {{"t", 1}, {"b", 1}, {"d", 1}}), m(0, {{"a", 1}, {"c", 1}}), m(-1, {{"s", 1}}),
                       m(-1, {{"r", 1}}), m(-2, {{"p", 1}, {"q", 1}})},
                      c4);
    case 9:
        // (L-1)^5 (L-2) Phi(tabcd, 1, 1, 1; L^-1 pq, L^-1, L^-1 rs, L^-1)
        return as_phi({m(0, {{"t", 1}, {"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}), m(0), m(0), m(0),
                       m(-1, {{"p", 1}, {"q", 1}}), m(-1), m(-1, {{"r", 1}, {"s", 1}}), m(-1)},
                      L_minus_1().pow(5) * (LaurentPoly::L() - LaurentPoly(2)));
    default:
        throw InvalidArgument("no explicit stratum " + std::to_string(which));
    }
}

inline MultiSeries stratum_contribution(int which, const PairBounds &b)
{
    const StratumArgs a = stratum_args(which);
    const Truncation tr = pair_truncation(b);
    return a.is_phi ? phi(a.phi_args, j_vars(), tr, b.index_cap, a.prefactor)
                    : psi(a.psi_args, j_vars(), tr, b.index_cap, a.prefactor);
}

inline MultiSeries explicit_strata_sum(const PairBounds &b)
{
    MultiSeries s(j_vars(), pair_truncation(b));
    for (int w : explicit_strata()) {
        s += stratum_contribution(w, b);
    }
    return s;
}

// The three J-images of the functional equation: 1 and 2 are the blow-ups of
// the two tangent-to-axis strata, 3 the collapsed equal-tangent stratum.
inline MonomialMap lemma4_map(int which)
{
    const auto &v = j_vars();
    MonomialMap m(v);
    const LaurentPoly Linv = LaurentPoly::L(-1);
    m.set("a", LaurentPoly(1), {{"t", 1}, {"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}});
    m.set("p", Linv, {{"p", 1}, {"q", 1}});
    m.set("r", Linv, {{"r", 1}, {"s", 1}});
    switch (which) {
    case 1:
        m.set("b", LaurentPoly(1), {{"b", 1}, {"d", 1}});
        m.set("c", LaurentPoly(1), {{"c", 1}, {"d", 1}});
        break;
    case 2:
        m.set("b", LaurentPoly(1), {{"a", 1}, {"c", 1}});
        m.set("c", LaurentPoly(1), {{"a", 1}, {"b", 1}});
        m.set("d", LaurentPoly(1), {{"a", 1}});
        m.set("q", LaurentPoly(1), {{"p", 1}});
        m.set("s", LaurentPoly(1), {{"r", 1}});
        break;
    case 3:
        m.set("b", LaurentPoly(1), {});
        m.set("c", LaurentPoly(1), {});
        m.set("d", LaurentPoly(1), {});
        m.set("q", LaurentPoly(1), {});
        m.set("s", LaurentPoly(1), {});
        break;
    default:
        throw InvalidArgument("no J-image " + std::to_string(which));
    }
    return m;
}

// Right-hand side for a candidate J, with the explicit strata supplied.
inline MultiSeries lemma4_rhs(const MultiSeries &Jc, const MultiSeries &strata)
{
    if (Jc.vars() != j_vars()) {
        throw InvalidArgument("lemma4_rhs expects a series over (t,a,b,c,d,p,q,r,s)");
    }
    const Truncation &tr = strata.trunc();
    MultiSeries r = strata;
    r += ms_substitute(Jc, lemma4_map(1), tr);
    r += ms_substitute(Jc, lemma4_map(2), tr);
    r += L_minus_1() * ms_substitute(Jc, lemma4_map(3), tr);
    return r;
}

inline MultiSeries lemma4_rhs(const MultiSeries &Jc, const PairBounds &b)
{
    return lemma4_rhs(Jc, explicit_strata_sum(b));
}

struct Lemma4Solution {
    MultiSeries J;
    // Iterations until J_{n+1} = J_n.
    std::size_t iterations = 0;
    // Number of monomials whose coefficient changed in each iteration.
    std::vector<std::size_t> trace;
    // Lowest t-degree that changed in each iteration (torder + 1 when none).
    std::vector<TSeries::Order> first_changed;
};

namespace detail
{

inline std::pair<std::size_t, TSeries::Order> series_change(const MultiSeries &a, const MultiSeries &b)
{
    const MultiSeries d = a - b;
    TSeries::Order lowest = a.trunc().max_weight + 1;
    for (const auto &[e, c] : d.terms()) {
        lowest = std::min<TSeries::Order>(lowest, e[0]);
    }
    return {d.size(), lowest};
}

} // namespace detail

// J <- rhs(J) from J = 0. The t^k slice of rhs(J) only reads slices below k,
// so slice k is final after k iterations.
inline Lemma4Solution solve_lemma4(const PairBounds &b)
{
    const MultiSeries strata = explicit_strata_sum(b);
    Lemma4Solution sol{MultiSeries(j_vars(), strata.trunc()), 0, {}, {}};
    const std::size_t limit = static_cast<std::size_t>(b.torder) + 1;
    for (std::size_t it = 1; it <= limit + 1; ++it) {
        MultiSeries next = lemma4_rhs(sol.J, strata);
        const auto [changed, lowest] = detail::series_change(next, sol.J);
        sol.trace.push_back(changed);
        sol.first_changed.push_back(lowest);
        if (changed == 0) {
            sol.iterations = it - 1;
            return sol;
        }
        if (lowest < static_cast<TSeries::Order>(it)) {
            throw NoStabilization("iteration " + std::to_string(it) + " changed the settled slice t^" +
                                  std::to_string(lowest));
        }
        sol.J = std::move(next);
    }
    throw NoStabilization("J did not stabilise within " + std::to_string(limit) + " iterations");
}

// Arc swap (b<->c, p<->r, q<->s) and coordinate swap (a<->d, b<->c, p<->q, r<->s).
inline MultiSeries arc_swap(const MultiSeries &J)
{
    return relabel(J, swap_permutation(J.vars(), {{"b", "c"}, {"p", "r"}, {"q", "s"}}));
}

inline MultiSeries coordinate_swap(const MultiSeries &J)
{
    return relabel(J, swap_permutation(J.vars(), {{"a", "d"}, {"b", "c"}, {"p", "q"}, {"r", "s"}}));
}

// Exponents (a, b, c, d, p, q, r, s) of an arc pair with orders (x1, y1), (x2, y2).
inline Exponents pair_monomial(TSeries::Order t, Exponent x1, Exponent y1, Exponent x2, Exponent y2)
{
    Exponents e = zero_exponents();
    e[0] = t;
    e[1] = x1 * x2;
    e[2] = x1 * y2;
    e[3] = y1 * x2;
    e[4] = y1 * y2;
    e[5] = x1;
    e[6] = y1;
    e[7] = x2;
    e[8] = y2;
    return e;
}

} // namespace motivic

#endif

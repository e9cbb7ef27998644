#ifndef MOTIVIC_TUPLES_HPP
#define MOTIVIC_TUPLES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/pairs.hpp>
#include <motivic/powerstruct.hpp>
#include <motivic/tseries.hpp>

namespace motivic
{

inline const std::vector<std::string> &tuple_vars()
{
    static const std::vector<std::string> vars{"t", "a", "b", "c", "d", "p", "q", "r", "s", "u"};
    return vars;
}

// k_ge_l: prod_{k>=l} (1 - x^k y^l u), x carrying the larger index.
enum class EpsOrientation { k_ge_l, k_le_l };

// derived: prod_{k<l}(1-x^k y^k z^l u) prod_{k>l}(1-x^l y^k z^l u) prod_k(1-(xyz)^k u)^{(L-2)/(L-1)},
// each to the power -(L-1)^2. printed: the product as displayed, x^k (yz)^l in the second factor and
// (xyz)^k L^-l with exponent -(L-2)(L-1)^2 for k < l <= the z-cap in the third.
enum class AlphaForm { derived, printed };

// How the u^0 slice of a candidate enters the right-hand side.
// closed_form: it is the boundary data f(p,q), and its collapse q -> 1 is the
// exact sum (L-1) L^-i p^i. from_series: the candidate's own u^0 terms are used.
enum class Boundary { closed_form, from_series };

// Grading weight 1 on t and u with t + u <= order; cap on every other exponent.
struct TupleBounds {
    Exponent order = 5;
    Exponent cap = 6;
    EpsOrientation eps = EpsOrientation::k_ge_l;
    AlphaForm alpha = AlphaForm::derived;
    Boundary boundary = Boundary::closed_form;
};

inline Truncation tuple_truncation(const TupleBounds &b)
{
    return pair_truncation(tuple_vars(), b.order, b.cap);
}

template <std::size_t N>
struct ProductTable {
    using Key = std::array<Exponent, N>;
    Exponent u_order = 0;
    std::map<Key, TSeries> entries;

    [[nodiscard]] TSeries at(const Key &k) const
    {
        auto it = entries.find(k);
        return it == entries.end() ? TSeries(u_order) : it->second;
    }
};

using EpsTable = ProductTable<2>;
using AlphaTable = ProductTable<3>;

// The table as a series over (u, x, y, z) inside tr; z is absent for eps.
template <std::size_t N>
MultiSeries table_series(const ProductTable<N> &t, const Truncation &tr)
{
    MultiSeries s({"u", "x", "y", "z"}, tr);
    for (const auto &[k, ser] : t.entries) {
        Exponents e = zero_exponents();
        for (std::size_t v = 0; v < N; ++v) {
            e[v + 1] = k[v];
        }
        for (TSeries::Order n = 0; n <= ser.order(); ++n) {
            e[0] = n;
            s.add(e, ser[n]);
        }
    }
    return s;
}

namespace detail
{

template <std::size_t N>
ProductTable<N> table_from_series(const MultiSeries &s, Exponent u_order)
{
    ProductTable<N> t;
    t.u_order = u_order;
    for (const auto &[e, c] : s.terms()) {
        typename ProductTable<N>::Key k{};
        for (std::size_t v = 0; v < N; ++v) {
            k[v] = e[v + 1];
        }
        auto it = t.entries.try_emplace(k, TSeries(u_order)).first;
        it->second.set(e[0], c);
    }
    return t;
}

inline Stratum product_factor(std::initializer_list<Exponent> mono, LaurentPoly measure, Exponent scale_exp = 0)
{
    Stratum st;
    std::size_t v = 0;
    for (Exponent m : mono) {
        st.value[v++] = m;
    }
    st.measure = std::move(measure);
    st.scale_exp = scale_exp;
    return st;
}

} // namespace detail

// Coefficients eps_{k1,k2}(u) for k1, k2 <= cap and u^{<= u_order}.
inline EpsTable eps_table(Exponent cap, Exponent u_order, EpsOrientation orientation = EpsOrientation::k_ge_l)
{
    const LaurentPoly mu = L_minus_1().pow(2);
    std::vector<Stratum> strata;
    for (Exponent k = 1; k <= cap; ++k) {
        for (Exponent l = 1; l <= cap; ++l) {
            if (orientation == EpsOrientation::k_ge_l ? k >= l : k <= l) {
                strata.push_back(detail::product_factor({k, l}, mu));
            }
        }
    }
    const MultiSeries s = motivic_exp(strata, {"x", "y"}, u_order, {cap, cap});
    return detail::table_from_series<2>(s, u_order);
}

// Coefficients alpha_{k1,k2,k3}(u) for k1 <= xcap, k2, k3 <= cap and u^{<= u_order}.
inline AlphaTable alpha_table(Exponent xcap, Exponent cap, Exponent u_order, AlphaForm form = AlphaForm::derived)
{
    const LaurentPoly mu = L_minus_1().pow(2);
    const LaurentPoly Lm2 = LaurentPoly::L() - LaurentPoly(2);
    const Exponent kmax = std::max(xcap, cap);
    std::vector<Stratum> strata;
    for (Exponent k = 1; k <= kmax; ++k) {
        for (Exponent l = 1; l <= kmax; ++l) {
            if (k < l) {
                strata.push_back(detail::product_factor({k, k, l}, mu));
                if (form == AlphaForm::printed) {
                    strata.push_back(detail::product_factor({k, k, k}, Lm2 * mu, -l));
                }
            } else if (k > l) {
                strata.push_back(form == AlphaForm::derived ? detail::product_factor({l, k, l}, mu)
                                                            : detail::product_factor({k, l, l}, mu));
            }
        }
        if (form == AlphaForm::derived) {
            strata.push_back(detail::product_factor({k, k, k}, Lm2 * L_minus_1()));
        }
    }
    const MultiSeries s = motivic_exp(strata, {"x", "y", "z"}, u_order, {xcap, cap, cap});
    return detail::table_from_series<3>(s, u_order);
}

// f(p,q) = sum_{i,j>=1} (L-1)^2 L^{-i-j} p^i q^j inside the window: the u^0 slice.
inline MultiSeries tuple_boundary(const TupleBounds &b)
{
    MultiSeries f(tuple_vars(), tuple_truncation(b));
    const LaurentPoly mu = L_minus_1().pow(2);
    for (Exponent i = 1; i <= b.cap; ++i) {
        for (Exponent j = 1; j <= b.cap; ++j) {
            Exponents e = zero_exponents();
            e[5] = i;
            e[6] = j;
            f.add(e, mu * LaurentPoly::L(-i - j));
        }
    }
    return f;
}

struct Thm4Tables {
    EpsTable eps;
    AlphaTable alpha;
};

inline Thm4Tables thm4_tables(const TupleBounds &b)
{
    return {eps_table(b.cap, b.order, b.eps), alpha_table(b.order, b.cap, b.order, b.alpha)};
}

namespace detail
{

// Indices into tuple_vars().
enum TV : std::size_t { T_ = 0, A_, B_, C_, D_, P_, Q_, R_, S_, U_ };

inline MultiSeries with_boundary(const MultiSeries &Ic, const TupleBounds &b)
{
    if (b.boundary == Boundary::from_series) {
        return Ic;
    }
    MultiSeries r = Ic.filtered([](const Exponents &e) { return e[U_] > 0; });
    r += tuple_boundary(b);
    return r;
}

// Adds c * s(u) * u^{e_u} at exponent e, one term per u-degree.
inline void add_u_series(MultiSeries &out, Exponents e, const LaurentPoly &c, const TSeries &s)
{
    const Exponent u0 = e[U_];
    for (TSeries::Order n = 0; n <= s.order(); ++n) {
        if (s[n].is_zero()) {
            continue;
        }
        e[U_] = u0 + n;
        if (out.trunc().classify(e) == Truncation::Verdict::over_weight) {
            break;
        }
        out.add(e, c * s[n]);
    }
}

// sum eps_{k1,k2}(u) (r/L)^{k1} (s/L)^{k2}
//   I(t, tabcd, bd, cd, d, (ac)^{k1} (bdt)^{k2} pq/L, c^{k1} d^{k2} q, rs/L, s, u)
inline MultiSeries thm4_line1(const MultiSeries &Ic, const EpsTable &eps, const Truncation &tr)
{
    MultiSeries out(tuple_vars(), tr);
    for (const auto &[e, c] : Ic.terms()) {
        const Exponent T = e[T_], A = e[A_], B = e[B_], C = e[C_], D = e[D_], P = e[P_], Q = e[Q_], R = e[R_],
                       S = e[S_];
        for (const auto &[k, ser] : eps.entries) {
            const auto [k1, k2] = k;
            Exponents img = zero_exponents();
            img[T_] = T + A + k2 * P;
            img[A_] = A + k1 * P;
            img[B_] = A + B + k2 * P;
            img[C_] = A + C + k1 * (P + Q);
            img[D_] = A + B + C + D + k2 * (P + Q);
            img[P_] = P;
            img[Q_] = P + Q;
            img[R_] = R + k1;
            img[S_] = R + S + k2;
            img[U_] = e[U_];
            if (tr.classify(img) == Truncation::Verdict::over_cap) {
                out.note_dropped(1);
                continue;
            }
            add_u_series(out, img, c * LaurentPoly::L(-P - R - k1 - k2), ser);
        }
    }
    return out;
}

// (L-1) sum alpha_{k1,k2,k3}(u) (r/L)^{k2} (s/L)^{k3}
//   I(t, tabcd, 1, 1, 1, t^{k1} (ac)^{k2} (bd)^{k3} pq/L, 1, rs/L, 1, u)
inline MultiSeries thm4_line3(const MultiSeries &Ic, const AlphaTable &alpha, const TupleBounds &b,
                              const Truncation &tr)
{
    // Collapse b, c, d, q, s -> 1.
    std::map<std::array<Exponent, 5>, LaurentPoly> collapsed;
    for (const auto &[e, c] : Ic.terms()) {
        if (b.boundary == Boundary::closed_form && e[U_] == 0) {
            continue;
        }
        collapsed[{e[T_], e[A_], e[P_], e[R_], e[U_]}] += c;
    }
    if (b.boundary == Boundary::closed_form) {
        for (Exponent i = 1; i <= b.cap; ++i) {
            collapsed[{0, 0, i, 0, 0}] += L_minus_1() * LaurentPoly::L(-i);
        }
    }
    MultiSeries out(tuple_vars(), tr);
    for (const auto &[k, c] : collapsed) {
        if (c.is_zero()) {
            continue;
        }
        const auto [T, A, P, R, U] = k;
        for (const auto &[kk, ser] : alpha.entries) {
            const auto [k1, k2, k3] = kk;
            Exponents img = zero_exponents();
            img[T_] = T + A + k1 * P;
            img[A_] = A + k2 * P;
            img[B_] = A + k3 * P;
            img[C_] = A + k2 * P;
            img[D_] = A + k3 * P;
            img[P_] = P;
            img[Q_] = P;
            img[R_] = R + k2;
            img[S_] = R + k3;
            img[U_] = U;
            const auto v = tr.classify(img);
            if (v != Truncation::Verdict::keep) {
                if (v == Truncation::Verdict::over_cap) {
                    out.note_dropped(1);
                }
                continue;
            }
            add_u_series(out, img, L_minus_1() * c * LaurentPoly::L(-P - R - k2 - k3), ser);
        }
    }
    return out;
}

} // namespace detail

inline MultiSeries thm4_rhs(const MultiSeries &Ic, const TupleBounds &b, const Thm4Tables &tables)
{
    if (Ic.vars() != tuple_vars()) {
        throw InvalidArgument("thm4_rhs expects a series over (t,a,b,c,d,p,q,r,s,u)");
    }
    const Truncation tr = tuple_truncation(b);
    const MultiSeries src = detail::with_boundary(Ic, b);
    const MultiSeries line1 = detail::thm4_line1(src, tables.eps, tr);
    MultiSeries r = line1;
    r += coordinate_swap(line1);
    r += detail::thm4_line3(src, tables.alpha, b, tr);
    return r;
}

inline MultiSeries thm4_rhs(const MultiSeries &Ic, const TupleBounds &b)
{
    return thm4_rhs(Ic, b, thm4_tables(b));
}

struct Thm4Solution {
    MultiSeries I;
    std::size_t iterations = 0;
    std::vector<std::size_t> trace;
    // Lowest t+u weight that changed in each iteration (order + 1 when none).
    std::vector<Exponent> first_changed;
};

// I <- f + (rhs(I) restricted to u >= 1), from I = f. A source of weight w with
// u >= 1 has positive a-exponent and lands in weight > w; the u^0 slice feeds
// weight >= 1 through the non-constant eps/alpha coefficients.
inline Thm4Solution solve_thm4(const TupleBounds &b)
{
    const Thm4Tables tables = thm4_tables(b);
    const MultiSeries f = tuple_boundary(b);
    Thm4Solution sol{f, 0, {}, {}};
    const std::size_t limit = static_cast<std::size_t>(b.order) + 1;
    for (std::size_t it = 1; it <= limit + 1; ++it) {
        MultiSeries next = f;
        next += thm4_rhs(sol.I, b, tables).filtered([](const Exponents &e) { return e[detail::U_] > 0; });
        const MultiSeries d = next - sol.I;
        Exponent lowest = b.order + 1;
        for (const auto &[e, c] : d.terms()) {
            lowest = std::min(lowest, e[detail::T_] + e[detail::U_]);
        }
        sol.trace.push_back(d.size());
        sol.first_changed.push_back(lowest);
        if (d.is_zero()) {
            sol.iterations = it - 1;
            return sol;
        }
        if (lowest < static_cast<Exponent>(it)) {
            throw NoStabilization("iteration " + std::to_string(it) + " changed the settled weight " +
                                  std::to_string(lowest));
        }
        sol.I = std::move(next);
    }
    throw NoStabilization("I did not stabilise within " + std::to_string(limit) + " iterations");
}

} // namespace motivic

#endif

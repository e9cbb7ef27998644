#ifndef MOTIVIC_REFERENCE_HPP
#define MOTIVIC_REFERENCE_HPP

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include <motivic/multi_series.hpp>
#include <motivic/pairs.hpp>

// Slow nested-loop definitions used as oracles by the verification commands.
namespace motivic::reference
{

namespace detail
{

inline void add_product(MultiSeries &s, const LaurentPoly &prefactor,
                        std::initializer_list<std::pair<const MonoArg *, Exponent>> parts)
{
    Exponents e = zero_exponents();
    Exponent lexp = 0;
    for (const auto &[arg, times] : parts) {
        motivic::detail::accumulate(e, lexp, *arg, times);
    }
    if (s.admits(e)) {
        s.add(e, prefactor * LaurentPoly::L(lexp));
    }
}

} // namespace detail

// sum_{1<=i<j<=n, 1<=k<l<=n} of the Phi summand.
inline MultiSeries phi(const std::array<MonoArg, 8> &a, const std::vector<std::string> &vars, const Truncation &tr,
                       Exponent n, const LaurentPoly &prefactor = LaurentPoly(1))
{
    MultiSeries s(vars, tr);
    for (Exponent i = 1; i <= n; ++i) {
        for (Exponent j = i + 1; j <= n; ++j) {
            for (Exponent k = 1; k <= n; ++k) {
                for (Exponent l = k + 1; l <= n; ++l) {
                    detail::add_product(s, prefactor,
                                        {{&a[0], i * k}, {&a[1], i * l}, {&a[2], j * k}, {&a[3], j * l},
                                         {&a[4], i}, {&a[5], j}, {&a[6], k}, {&a[7], l}});
                }
            }
        }
    }
    return s;
}

// sum_{1<=i<j<=n, 1<=k<=n} of the Psi summand.
inline MultiSeries psi(const std::array<MonoArg, 5> &a, const std::vector<std::string> &vars, const Truncation &tr,
                       Exponent n, const LaurentPoly &prefactor = LaurentPoly(1))
{
    MultiSeries s(vars, tr);
    for (Exponent i = 1; i <= n; ++i) {
        for (Exponent j = i + 1; j <= n; ++j) {
            for (Exponent k = 1; k <= n; ++k) {
                detail::add_product(s, prefactor,
                                    {{&a[0], i * k}, {&a[1], j * k}, {&a[2], i}, {&a[3], j}, {&a[4], k}});
            }
        }
    }
    return s;
}

// Stratum of an arc pair with orders (x1, y1), (x2, y2), 0 outside the explicit ones.
inline int arc_stratum(Exponent x1, Exponent y1, Exponent x2, Exponent y2)
{
    const int s1 = (y1 > x1) - (y1 < x1), s2 = (y2 > x2) - (y2 < x2);
    if (s1 > 0 && s2 < 0) return 2;
    if (s1 > 0 && s2 == 0) return 3;
    if (s1 < 0 && s2 > 0) return 4;
    if (s1 < 0 && s2 == 0) return 6;
    if (s1 == 0 && s2 > 0) return 7;
    if (s1 == 0 && s2 < 0) return 8;
    if (s1 == 0 && s2 == 0) return 9;
    return 0;
}

// The stratum as an integral over arc orders <= n: on every explicit stratum the
// lifted arcs meet the exceptional divisor at distinct points, so the
// intersection number is min(x1,y1) min(x2,y2). Each arc has measure
// (L-1)^2 L^{-x-y}; on stratum 9 only (L-2) of the (L-1) tangents of the
// second arc differ from the first.
inline MultiSeries stratum_by_arc_orders(int which, const Truncation &tr, Exponent n)
{
    MultiSeries s(j_vars(), tr);
    const LaurentPoly lm1 = LaurentPoly::L() - LaurentPoly(1);
    for (Exponent x1 = 1; x1 <= n; ++x1) {
        for (Exponent y1 = 1; y1 <= n; ++y1) {
            for (Exponent x2 = 1; x2 <= n; ++x2) {
                for (Exponent y2 = 1; y2 <= n; ++y2) {
                    if (arc_stratum(x1, y1, x2, y2) != which) {
                        continue;
                    }
                    const Exponents e = pair_monomial(std::min(x1, y1) * std::min(x2, y2), x1, y1, x2, y2);
                    const LaurentPoly w = which == 9 ? lm1.pow(3) * (LaurentPoly::L() - LaurentPoly(2)) : lm1.pow(4);
                    if (s.admits(e)) {
                        s.add(e, w * LaurentPoly::L(-x1 - y1 - x2 - y2));
                    }
                }
            }
        }
    }
    return s;
}

// prod (1 - u m)^{-mu} over (u, x, y, z), multiplied out factor by factor:
// (1 - L^j w)^{-c} is c geometric series for c > 0 and |c| binomials for c < 0.
inline MultiSeries product_expansion(const std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> &factors,
                                     const Truncation &tr)
{
    const std::vector<std::string> vars{"u", "x", "y", "z"};
    MultiSeries r(vars, tr);
    r.add(zero_exponents(), LaurentPoly(1));
    for (const auto &[mono, measure] : factors) {
        for (const auto &term : measure.terms()) {
            const BigInt reps = term.coeff < 0 ? BigInt(-term.coeff) : term.coeff;
            for (BigInt rep = 0; rep < reps; ++rep) {
                MultiSeries f(vars, tr);
                Exponents e = zero_exponents();
                f.add(e, LaurentPoly(1));
                for (Exponent n = 1; term.coeff > 0 || n == 1; ++n) {
                    e[0] = n;
                    for (std::size_t v = 0; v < 3; ++v) {
                        e[v + 1] = n * mono[v];
                    }
                    if (!f.admits(e)) {
                        break;
                    }
                    f.add(e, term.coeff > 0 ? LaurentPoly::L(n * term.exp) : -LaurentPoly::L(term.exp));
                }
                r = r * f;
            }
        }
    }
    return r;
}

// The factors of the eps and alpha products, as (monomial in x, y, z; exponent).
inline std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> eps_factors(Exponent cap, bool k_ge_l)
{
    std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> f;
    const LaurentPoly mu = (LaurentPoly::L() - LaurentPoly(1)).pow(2);
    for (Exponent k = 1; k <= cap; ++k) {
        for (Exponent l = 1; l <= cap; ++l) {
            if (k_ge_l ? k >= l : k <= l) {
                f.push_back({{k, l, 0}, mu});
            }
        }
    }
    return f;
}

inline std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> alpha_factors(Exponent cap, bool printed)
{
    std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> f;
    const LaurentPoly lm1 = LaurentPoly::L() - LaurentPoly(1);
    const LaurentPoly lm2 = LaurentPoly::L() - LaurentPoly(2);
    for (Exponent k = 1; k <= cap; ++k) {
        for (Exponent l = 1; l <= cap; ++l) {
            if (k < l) {
                f.push_back({{k, k, l}, lm1.pow(2)});
                if (printed) {
                    f.push_back({{k, k, k}, lm2 * lm1.pow(2) * LaurentPoly::L(-l)});
                }
            } else if (k > l) {
                f.push_back({printed ? std::array<Exponent, 3>{k, l, l} : std::array<Exponent, 3>{l, k, l}, lm1.pow(2)});
            }
        }
        if (!printed) {
            f.push_back({{k, k, k}, lm2 * lm1});
        }
    }
    return f;
}

} // namespace motivic::reference

#endif

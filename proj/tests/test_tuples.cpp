#include <gtest/gtest.h>

#include <map>

#include <motivic/io.hpp>
#include <motivic/solver/fab.hpp>
#include <motivic/tuples.hpp>

#include "test_support.hpp"

using namespace motivic;
using motivic::testing::lm1;
using motivic::testing::Lm;

namespace
{

// Products over (u, x, y, z) multiplied out factor by factor: (1 - L^j w)^{-c}
// is c geometric series for c > 0 and |c| binomials for c < 0.
MultiSeries brute_product(const std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> &factors,
                          const Truncation &tr)
{
    const std::vector<std::string> vars{"u", "x", "y", "z"};
    MultiSeries r(vars, tr);
    r.add(zero_exponents(), LaurentPoly(1));
    for (const auto &[mono, measure] : factors) {
        for (const auto &term : measure.terms()) {
            const long long c = term.coeff.convert_to<long long>();
            for (long long rep = 0; rep < (c > 0 ? c : -c); ++rep) {
                MultiSeries f(vars, tr);
                Exponents e = zero_exponents();
                f.add(e, LaurentPoly(1));
                if (c > 0) {
                    for (Exponent n = 1;; ++n) {
                        e[0] = n;
                        for (std::size_t v = 0; v < 3; ++v) {
                            e[v + 1] = n * mono[v];
                        }
                        if (!f.admits(e)) {
                            break;
                        }
                        f.add(e, Lm(n * term.exp));
                    }
                } else {
                    e[0] = 1;
                    for (std::size_t v = 0; v < 3; ++v) {
                        e[v + 1] = mono[v];
                    }
                    f.add(e, -Lm(term.exp));
                }
                r = r * f;
            }
        }
    }
    return r;
}

Truncation table_window(Exponent u_order, Exponent xcap, Exponent cap)
{
    Truncation tr = graded({"u", "x", "y", "z"}, u_order, {{"u", 1}});
    tr.caps[1] = xcap;
    tr.caps[2] = cap;
    tr.caps[3] = cap;
    return tr;
}

template <std::size_t N>
MultiSeries table_as_series(const ProductTable<N> &t, const Truncation &tr)
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

MultiSeries u_slice_as_pairs(const MultiSeries &I, Exponent k, const PairBounds &pb)
{
    MultiSeries r(j_vars(), pair_truncation(pb));
    for (const auto &[e, c] : I.terms()) {
        if (e[9] == k) {
            Exponents f = e;
            f[9] = 0;
            r.add(f, c);
        }
    }
    return r;
}

TupleBounds bounds(Exponent order, Exponent cap)
{
    TupleBounds b;
    b.order = order;
    b.cap = cap;
    return b;
}

} // namespace

TEST(EpsTable, Examples)
{
    for (auto o : {EpsOrientation::k_ge_l, EpsOrientation::k_le_l}) {
        const EpsTable t = eps_table(5, 4, o);
        EXPECT_EQ(t.at({1, 1})[1], lm1(2));
        EXPECT_EQ(t.at({0, 0}), TSeries::one(4));
        for (const auto &[k, s] : t.entries) {
            if (k != EpsTable::Key{0, 0}) {
                EXPECT_TRUE(s[0].is_zero());
            }
        }
    }
    EXPECT_EQ(eps_table(5, 4, EpsOrientation::k_ge_l).at({2, 1})[1], lm1(2));
    EXPECT_TRUE(eps_table(5, 4, EpsOrientation::k_le_l).at({2, 1})[1].is_zero());
    EXPECT_EQ(eps_table(5, 4, EpsOrientation::k_le_l).at({1, 2})[1], lm1(2));
}

TEST(EpsTable, MatchesBruteForceProduct)
{
    for (Exponent cap = 1; cap <= 5; ++cap) {
        for (auto o : {EpsOrientation::k_ge_l, EpsOrientation::k_le_l}) {
            std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> factors;
            for (Exponent k = 1; k <= cap; ++k) {
                for (Exponent l = 1; l <= cap; ++l) {
                    if (o == EpsOrientation::k_ge_l ? k >= l : k <= l) {
                        factors.push_back({{k, l, 0}, lm1(2)});
                    }
                }
            }
            const Truncation tr = table_window(4, cap, cap);
            EXPECT_EQ(table_as_series(eps_table(cap, 4, o), tr), brute_product(factors, tr)) << cap;
        }
    }
}

TEST(AlphaTable, Examples)
{
    for (auto form : {AlphaForm::derived, AlphaForm::printed}) {
        const AlphaTable t = alpha_table(4, 4, 3, form);
        EXPECT_EQ(t.at({0, 0, 0}), TSeries::one(3));
        EXPECT_EQ(t.at({1, 1, 2})[1], lm1(2));
    }
    // One tuple arc of equal orders with its own tangent: (L-2)(L-1), the L^-2 of
    // its measure being carried by y and z.
    const LaurentPoly Lm2 = Lm(1) - LaurentPoly(2);
    EXPECT_EQ(alpha_table(4, 4, 3).at({1, 1, 1})[1], Lm2 * lm1(1));
    // As printed: (L-2)(L-1)^2 sum_{1<l<=4} L^-l.
    EXPECT_EQ(alpha_table(4, 4, 3, AlphaForm::printed).at({1, 1, 1})[1],
              Lm2 * lm1(2) * (Lm(-2) + Lm(-3) + Lm(-4)));
    // The second product puts the larger index on y.
    EXPECT_EQ(alpha_table(4, 4, 3).at({1, 2, 1})[1], lm1(2));
    EXPECT_TRUE(alpha_table(4, 4, 3).at({2, 1, 1})[1].is_zero());
    EXPECT_EQ(alpha_table(4, 4, 3, AlphaForm::printed).at({2, 1, 1})[1], lm1(2));
}

TEST(AlphaTable, MatchesBruteForceProduct)
{
    const LaurentPoly Lm2 = Lm(1) - LaurentPoly(2);
    for (Exponent cap = 1; cap <= 5; ++cap) {
        for (auto form : {AlphaForm::derived, AlphaForm::printed}) {
            std::vector<std::pair<std::array<Exponent, 3>, LaurentPoly>> factors;
            for (Exponent k = 1; k <= cap; ++k) {
                for (Exponent l = 1; l <= cap; ++l) {
                    if (k < l) {
                        factors.push_back({{k, k, l}, lm1(2)});
                        if (form == AlphaForm::printed) {
                            factors.push_back({{k, k, k}, Lm2 * lm1(2, -l)});
                        }
                    } else if (k > l) {
                        factors.push_back(
                            {form == AlphaForm::derived ? std::array<Exponent, 3>{l, k, l} : std::array<Exponent, 3>{k, l, l},
                             lm1(2)});
                    }
                }
                if (form == AlphaForm::derived) {
                    factors.push_back({{k, k, k}, Lm2 * lm1(1)});
                }
            }
            const Truncation tr = table_window(3, cap, cap);
            EXPECT_EQ(table_as_series(alpha_table(cap, cap, 3, form), tr), brute_product(factors, tr)) << cap;
        }
    }
}

TEST(TupleSeries, RhsOfZero)
{
    TupleBounds b = bounds(4, 4);
    const MultiSeries zero(tuple_vars(), tuple_truncation(b));
    b.boundary = Boundary::from_series;
    EXPECT_TRUE(thm4_rhs(zero, b).is_zero());
    // With the boundary supplied, the candidate's u^0 slice is ignored.
    b.boundary = Boundary::closed_form;
    EXPECT_EQ(thm4_rhs(zero, b), thm4_rhs(tuple_boundary(b), b));
    EXPECT_FALSE(thm4_rhs(zero, b).is_zero());
}

TEST(TupleSeries, BoundarySliceIsTheTwoVariableSeries)
{
    const TupleBounds b = bounds(5, 6);
    const MultiSeries I = solve_thm4(b).I;
    const MultiSeries u0 = I.slice(9, 0);
    EXPECT_EQ(u0.size(), 36u);
    for (const auto &[e, c] : u0.terms()) {
        EXPECT_EQ(c, fab_coefficient(e[5], e[6]));
        EXPECT_EQ(e, pair_monomial(0, e[5], e[6], 0, 0));
    }
    // The right-hand side reproduces it: the boundary is consistent with the equation.
    EXPECT_EQ(thm4_rhs(I, b).slice(9, 0), u0);
}

TEST(TupleSeries, SolveStabilisesAndIsIdempotent)
{
    const TupleBounds b = bounds(6, 7);
    const Thm4Solution sol = solve_thm4(b);
    EXPECT_LE(sol.iterations, 6u);
    EXPECT_EQ(sol.trace.back(), 0u);
    for (std::size_t n = 0; n + 1 < sol.first_changed.size(); ++n) {
        EXPECT_GE(sol.first_changed[n], static_cast<Exponent>(n + 1));
    }
    EXPECT_EQ(thm4_rhs(sol.I, b), sol.I);
    EXPECT_EQ(coordinate_swap(sol.I), sol.I);
}

TEST(TupleSeries, FromSeriesBoundaryIsIdempotentAboveUZero)
{
    TupleBounds b = bounds(5, 6);
    b.boundary = Boundary::from_series;
    const MultiSeries I = solve_thm4(b).I;
    const auto upper = [](const Exponents &e) { return e[9] > 0; };
    EXPECT_EQ(thm4_rhs(I, b).filtered(upper), I.filtered(upper));
    // Collapsing the stored boundary loses the q-tail beyond the cap.
    EXPECT_NE(thm4_rhs(I, b).slice(9, 0), I.slice(9, 0));
}

TEST(TupleSeries, OneArcSliceIsThePairSeries)
{
    for (const auto &[order, cap] : std::vector<std::pair<Exponent, Exponent>>{{4, 5}, {5, 6}, {7, 8}}) {
        const MultiSeries I = solve_thm4(bounds(order, cap)).I;
        const PairBounds pb{order - 1, cap, std::nullopt};
        const MultiSeries u1 = u_slice_as_pairs(I, 1, pb);
        EXPECT_EQ(u1, solve_lemma4(pb).J) << order << "," << cap;
    }
}

TEST(TupleSeries, PrintedProductsBreakTheOneArcSlice)
{
    const PairBounds pb{4, 6, std::nullopt};
    const MultiSeries J = solve_lemma4(pb).J;
    TupleBounds b = bounds(5, 6);
    b.alpha = AlphaForm::printed;
    EXPECT_NE(u_slice_as_pairs(solve_thm4(b).I, 1, pb), J);
    b.alpha = AlphaForm::derived;
    b.eps = EpsOrientation::k_le_l;
    EXPECT_NE(u_slice_as_pairs(solve_thm4(b).I, 1, pb), J);
}

TEST(TupleSeries, SupportInvariants)
{
    const MultiSeries I = solve_thm4(bounds(6, 6)).I;
    for (const auto &[e, c] : I.terms()) {
        EXPECT_GE(e[0], e[9]);
        EXPECT_GE(e[5], 1);
        EXPECT_GE(e[6], 1);
        // The a-exponent adds v_x of gamma_1 times each tuple arc's v_x.
        EXPECT_GE(e[1], e[9] * e[5]);
    }
    EXPECT_TRUE(I.slice(5, 0).is_zero());
}

TEST(TupleSeries, SliceDependency)
{
    const TupleBounds b = bounds(5, 5);
    const MultiSeries I = solve_thm4(b).I;
    const MultiSeries base = thm4_rhs(I, b);
    for (Exponent w = 1; w <= 5; ++w) {
        MultiSeries bumped = I;
        const MultiSeries layer = I.filtered([w](const Exponents &e) { return e[9] > 0 && e[0] + e[9] == w; });
        for (const auto &[e, c] : layer.terms()) {
            bumped.add(e, Lm(2));
        }
        const MultiSeries diff = thm4_rhs(bumped, b) - base;
        for (const auto &[e, c] : diff.terms()) {
            EXPECT_GT(e[0] + e[9], w) << "weight " << w;
        }
    }
}

TEST(TupleSeries, SeriesExportRoundTrip)
{
    const MultiSeries I = solve_thm4(bounds(4, 4)).I;
    const nlohmann::json j = series_to_json(I);
    EXPECT_EQ(j.at("vars").size(), 10u);
    EXPECT_EQ(series_from_json(j), I);
}

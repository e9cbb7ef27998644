#include <random>

#include <gtest/gtest.h>

#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/rational_func.hpp>
#include <motivic/tseries.hpp>

#include "test_support.hpp"

using namespace motivic;
using motivic::testing::lm1;
using motivic::testing::Lm;
using motivic::testing::random_laurent;

namespace
{

const LaurentPoly L1 = LaurentPoly::L() - LaurentPoly(1);

TPolynomial tpoly(std::initializer_list<LaurentPoly> c)
{
    return TPolynomial(std::vector<LaurentPoly>(c));
}

} // namespace

TEST(LaurentPoly, Arithmetic)
{
    EXPECT_EQ(to_string(L1 * L1), "L^2 - 2*L + 1");
    EXPECT_EQ(L1 * Lm(-2), Lm(-1) - Lm(-2));
    EXPECT_EQ(to_string(L1.pow(3)), "L^3 - 3*L^2 + 3*L - 1");
    EXPECT_TRUE((L1 - L1).is_zero());
    EXPECT_EQ(to_string(LaurentPoly{}), "0");
}

TEST(LaurentPoly, InvertUnit)
{
    EXPECT_EQ(invert_unit(Lm(-3)), Lm(3));
    EXPECT_EQ(invert_unit(-Lm(2)), -Lm(-2));
    EXPECT_THROW(invert_unit(L1), NotAUnit);
    EXPECT_THROW(invert_unit(LaurentPoly(2)), NotAUnit);
}

TEST(LaurentPoly, SpecializeL)
{
    const LaurentPoly x = L1 * L1 * Lm(-2);
    EXPECT_EQ(specialize_L(x, Rational(2)), Rational(1, 4));
    EXPECT_EQ(specialize_L(x, Rational(1)), Rational(0));
    EXPECT_EQ(specialize_L(Lm(2) - LaurentPoly(1), Rational(3)), Rational(8));
    EXPECT_THROW(specialize_L(x, Rational(0)), ZeroBase);
    EXPECT_EQ(specialize_L(Lm(2) + LaurentPoly(5), Rational(0)), Rational(5));
}

TEST(LaurentPoly, RingAxiomsRandomized)
{
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const auto x = random_laurent(rng), y = random_laurent(rng), z = random_laurent(rng);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_TRUE((x - x).is_zero());
        EXPECT_EQ(x.pow(3), x * x * x);
    }
}

TEST(LaurentPoly, CanonicalFormNoZeroCoefficients)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_laurent(rng) * random_laurent(rng) - random_laurent(rng);
        for (const auto &t : x.terms()) {
            EXPECT_NE(t.coeff, 0);
        }
        for (std::size_t k = 1; k < x.size(); ++k) {
            EXPECT_LT(x.terms()[k - 1].exp, x.terms()[k].exp);
        }
    }
}

TEST(LaurentPoly, ParseAndPrintRoundTrip)
{
    EXPECT_EQ(parse_laurent("L^2 - 2*L + 1"), L1 * L1);
    EXPECT_EQ(parse_laurent("L^-3"), Lm(-3));
    EXPECT_EQ(parse_laurent("L"), Lm(1));
    EXPECT_EQ(parse_laurent("0"), LaurentPoly{});
    EXPECT_EQ(parse_laurent("-L^-1 + 3"), LaurentPoly(3) - Lm(-1));
    EXPECT_THROW(parse_laurent("L^"), ParseError);
    EXPECT_THROW(parse_laurent("x+1"), ParseError);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_laurent(rng, -9, 9, 1000);
        EXPECT_EQ(parse_laurent(to_string(x)), x);
        EXPECT_EQ(laurent_from_json(to_json(x)), x);
    }
}

TEST(LaurentPoly, BigCoefficientsDoNotOverflow)
{
    const LaurentPoly big = (L1 * LaurentPoly(1000003)).pow(12);
    const LaurentPoly back = divide_or_throw(big, L1.pow(12));
    EXPECT_EQ(back, LaurentPoly(BigInt(1000003)).pow(12));
    EXPECT_EQ(parse_laurent(to_string(big)), big);
}

TEST(LaurentPoly, ExactDivisionAndGcd)
{
    const auto q = divide_exact(L1.pow(3) * Lm(-5), L1 * Lm(-1));
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, L1.pow(2) * Lm(-4));
    EXPECT_FALSE(divide_exact(LaurentPoly(1), L1).has_value());
    EXPECT_THROW(divide_or_throw(Lm(2), L1), InexactDivision);
    EXPECT_EQ(laurent_gcd(L1.pow(3) * Lm(4), L1.pow(2) * (Lm(1) + LaurentPoly(1))), L1.pow(2));
}

TEST(TSeries, InvertAndMultiply)
{
    const TSeries s(3, {LaurentPoly(1), -Lm(1)});
    const TSeries inv = invert(s);
    for (int k = 0; k <= 3; ++k) {
        EXPECT_EQ(inv[k], Lm(k));
    }
    const TSeries a(2, {LaurentPoly(1), LaurentPoly(1)}), b(2, {LaurentPoly(1), LaurentPoly(-1)});
    EXPECT_EQ(a * b, TSeries(2, {LaurentPoly(1), LaurentPoly(0), LaurentPoly(-1)}));
    const TSeries c(1, {LaurentPoly(1), LaurentPoly(1)});
    EXPECT_EQ(L1 * c, TSeries(1, {L1, L1}));
    EXPECT_THROW(invert(TSeries(2, {L1})), NonUnitConstantTerm);
}

TEST(TSeries, MixedOrdersTruncateToMinimum)
{
    const TSeries a = TSeries::one(5), b = TSeries::one(2);
    EXPECT_EQ((a * b).order(), 2);
    EXPECT_EQ((a + b).order(), 2);
}

TEST(TSeries, InverseRandomized)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        TSeries s = motivic::testing::random_unit_series(rng, 8);
        s.set(0, trial % 2 == 0 ? Lm(trial % 5 - 2) : -Lm(1));
        EXPECT_EQ(s * invert(s), TSeries::one(8));
    }
}

TEST(TSeries, SubstitutePowerAndShift)
{
    const TSeries s(6, {LaurentPoly(1), Lm(1), Lm(2)});
    const TSeries p = s.substitute_power(3);
    EXPECT_EQ(p[3], Lm(1));
    EXPECT_EQ(p[6], Lm(2));
    EXPECT_TRUE(p[1].is_zero());
    EXPECT_EQ(s.shifted(2)[4], Lm(2));
    EXPECT_EQ(s.shifted(2).valuation(), 2);
}

TEST(TSeries, DisplayForm)
{
    const TSeries g(2, {LaurentPoly{}, LaurentPoly{}, L1 * L1 * Lm(-5)});
    EXPECT_EQ(to_display_string(g), "(L^2 - 2*L + 1)*t^2*L^-5");
    EXPECT_EQ(to_display_string(TSeries(1, {Lm(-3), -LaurentPoly(2)})), "L^-3 - 2*t");
    EXPECT_EQ(to_display_string(TSeries(3)), "0");
}

TEST(RationalFunc, ExpandGeometric)
{
    const RationalFunc r(TPolynomial(1), tpoly({LaurentPoly(1), LaurentPoly{}, -Lm(-1)}));
    const TSeries e = rf_expand(r, 5);
    EXPECT_EQ(e, TSeries(5, {LaurentPoly(1), LaurentPoly{}, Lm(-1), LaurentPoly{}, Lm(-2)}));
}

TEST(RationalFunc, ExpandG22ClosedForm)
{
    const RationalFunc r(TPolynomial::monomial(L1.pow(3) * Lm(-5), 2), tpoly({LaurentPoly(1), LaurentPoly{}, -Lm(-1)}));
    const TSeries e = rf_expand(r, 4);
    EXPECT_EQ(e, TSeries(4, {LaurentPoly{}, LaurentPoly{}, L1.pow(3) * Lm(-5), LaurentPoly{}, L1.pow(3) * Lm(-6)}));
    EXPECT_TRUE(rf_expand(RationalFunc(TPolynomial{}), 3).is_zero());
    EXPECT_THROW(rf_expand(RationalFunc(TPolynomial(1), TPolynomial(L1)), 3), NonUnitDenominator);
}

TEST(RationalFunc, ExpansionTimesDenominatorIsNumerator)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<LaurentPoly> num, den{Lm(trial % 3 - 1)};
        for (int k = 0; k < 4; ++k) {
            num.push_back(random_laurent(rng));
            den.push_back(random_laurent(rng));
        }
        const RationalFunc r{TPolynomial(num), TPolynomial(den)};
        const TSeries e = rf_expand(r, 10);
        EXPECT_EQ(e * r.den().to_series(10), r.num().to_series(10));
    }
}

TEST(RationalFunc, EvalAtOne)
{
    const RationalFunc g22(TPolynomial::monomial(L1.pow(3) * Lm(-5), 2), tpoly({LaurentPoly(1), LaurentPoly{}, -Lm(-1)}));
    const LaurentQuotient v = rf_eval_t1(g22);
    EXPECT_TRUE(v.is_polynomial());
    EXPECT_EQ(v.num, L1.pow(2) * Lm(-4));

    const RationalFunc zero(tpoly({LaurentPoly(1), LaurentPoly(-1)}), tpoly({LaurentPoly(1), -Lm(1)}));
    EXPECT_TRUE(rf_eval_t1(zero).num.is_zero());

    std::vector<LaurentPoly> num(9), den(7);
    num[6] = L1.pow(3) * Lm(-7);
    num[8] = L1.pow(3) * Lm(-8);
    den[0] = LaurentPoly(1);
    den[6] = -Lm(-2);
    const LaurentQuotient v33 = rf_eval_t1(RationalFunc(TPolynomial(num), TPolynomial(den)));
    EXPECT_TRUE(v33.is_polynomial());
    EXPECT_EQ(v33.num, L1.pow(2) * Lm(-6));

    EXPECT_THROW(rf_eval_t1(RationalFunc(TPolynomial(1), tpoly({LaurentPoly(1), LaurentPoly(-1)}))), PoleAtOne);
}

TEST(RationalFunc, EqualityByCrossMultiplication)
{
    const RationalFunc a(TPolynomial(2), TPolynomial(4)), b(TPolynomial(1), TPolynomial(2));
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == RationalFunc(TPolynomial(1)));
}

namespace
{

const std::vector<std::string> kIVars{"t", "a", "b", "c", "d", "f"};

} // namespace

TEST(MultiSeries, SubstituteBlowUpMapOnSeed)
{
    MultiSeries s(kIVars, graded(kIVars, 10));
    s.add(s.exps({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"f", 1}}), L1 * L1 * Lm(-2));
    MonomialMap m(kIVars);
    m.set("a", Lm(-1), {{"t", -1}, {"a", 1}, {"b", 1}});
    m.set("c", LaurentPoly(1), {{"t", 1}, {"c", 1}, {"d", 1}, {"f", 1}});
    m.set("d", LaurentPoly(1), {{"d", 1}, {"f", 2}});
    const MultiSeries r = ms_substitute(s, m);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.coefficient(r.exps({{"a", 1}, {"b", 2}, {"c", 1}, {"d", 2}, {"f", 4}})), L1 * L1 * Lm(-3));
}

TEST(MultiSeries, IdentityMapAndInadmissible)
{
    MultiSeries s(kIVars, graded(kIVars, 10));
    s.add(s.exps({{"a", 1}}), LaurentPoly(1));
    s.add(s.exps({{"t", 3}, {"b", 2}}), L1);
    EXPECT_EQ(ms_substitute(s, MonomialMap(kIVars)), s);

    MultiSeries single(kIVars, graded(kIVars, 10));
    single.add(single.exps({{"a", 1}}), LaurentPoly(1));
    MonomialMap bad(kIVars);
    bad.set("a", LaurentPoly(1), {{"t", -1}, {"a", 1}});
    EXPECT_THROW(ms_substitute(single, bad), InadmissibleMap);
}

TEST(MultiSeries, SubstitutionIsMultiplicative)
{
    std::mt19937_64 rng(21);
    const std::vector<std::string> vars{"t", "x", "y"};
    const Truncation tr = graded(vars, 12);
    MonomialMap m(vars);
    m.set("x", Lm(-1), {{"t", 1}, {"x", 1}, {"y", 1}});
    m.set("y", LaurentPoly(1), {{"y", 2}});
    std::uniform_int_distribution<int> ex(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        MultiSeries a(vars, tr), b(vars, tr);
        for (int k = 0; k < 5; ++k) {
            Exponents e1 = zero_exponents(), e2 = zero_exponents();
            for (int v = 0; v < 3; ++v) {
                e1[v] = ex(rng);
                e2[v] = ex(rng);
            }
            a.add(e1, random_laurent(rng));
            b.add(e2, random_laurent(rng));
        }
        EXPECT_EQ(ms_substitute(a * b, m), ms_substitute(a, m) * ms_substitute(b, m));
    }
}

TEST(MultiSeries, CapsCountDroppedTerms)
{
    const std::vector<std::string> vars{"t", "x"};
    Truncation tr = graded(vars, 5);
    tr.caps[1] = 2;
    MultiSeries s(vars, tr);
    EXPECT_TRUE(s.add(s.exps({{"x", 2}}), LaurentPoly(1)));
    EXPECT_FALSE(s.add(s.exps({{"x", 3}}), LaurentPoly(1)));
    EXPECT_FALSE(s.add(s.exps({{"t", 6}}), LaurentPoly(1)));
    EXPECT_EQ(s.dropped_by_cap(), 1u);
    EXPECT_EQ(s.size(), 1u);
}

TEST(MultiSeries, RelabelSwapsVariables)
{
    MultiSeries s(kIVars, graded(kIVars, 10));
    s.add(s.exps({{"a", 1}, {"c", 2}}), L1);
    const auto perm = swap_permutation(kIVars, {{"a", "b"}, {"c", "f"}});
    const MultiSeries r = relabel(s, perm);
    EXPECT_EQ(r.coefficient(r.exps({{"b", 1}, {"f", 2}})), L1);
    EXPECT_EQ(relabel(r, perm), s);
}

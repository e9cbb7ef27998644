#ifndef MOTIVIC_VERIFY_HPP
#define MOTIVIC_VERIFY_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <motivic/io.hpp>
#include <motivic/pairs.hpp>
#include <motivic/powerstruct.hpp>
#include <motivic/rational_func.hpp>
#include <motivic/reference.hpp>
#include <motivic/solver/eq1.hpp>
#include <motivic/solver/fab.hpp>
#include <motivic/solver/gtable.hpp>
#include <motivic/tuples.hpp>

// Verification runners shared by the command-line tool and the acceptance binary.
namespace motivic::verify
{

struct Report {
    bool ok = true;
    std::size_t checked = 0;
    std::string unit = "checks";
    std::string failure;
    std::vector<std::string> notes;

    // Keeps the first failure only.
    void fail(std::string what)
    {
        if (ok) {
            ok = false;
            failure = std::move(what);
        }
    }
    void expect(bool cond, const std::string &what)
    {
        ++checked;
        if (!cond) {
            fail(what);
        }
    }

    [[nodiscard]] std::string summary() const
    {
        const std::string head = "checked " + std::to_string(checked) + " " + unit;
        return ok ? head + ", all exact" : head + ", FAILED: " + failure;
    }
};

inline std::string pair_name(const char *what, std::int64_t i, std::int64_t j)
{
    return std::string(what) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

namespace detail
{

inline std::string first_term(const MultiSeries &s)
{
    const auto &[e, c] = *s.terms().begin();
    return monomial_string(s.vars(), e) + " (coefficient " + to_string(c) + ")";
}

inline LaurentPoly random_laurent(std::mt19937_64 &rng, int lo, int hi, int cmax)
{
    std::uniform_int_distribution<int> ne(0, 4), ex(lo, hi), co(-cmax, cmax);
    std::vector<LaurentPoly::Term> terms;
    for (int k = ne(rng); k > 0; --k) {
        terms.push_back({ex(rng), co(rng)});
    }
    return LaurentPoly::from_terms(std::move(terms));
}

inline TSeries random_unit_series(std::mt19937_64 &rng, TSeries::Order order)
{
    TSeries s = TSeries::one(order);
    for (TSeries::Order k = 1; k <= order; ++k) {
        s.set(k, random_laurent(rng, -2, 2, 3));
    }
    return s;
}

// L^{-2..1} times t^{0|1} and one or two of the variables 1..4.
inline MonoArg random_arg(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> ex(0, 2), le(-2, 1), var(1, 4);
    MonoArg a;
    a.lexp = le(rng);
    a.mono[static_cast<std::size_t>(var(rng))] = 1;
    a.mono[0] = ex(rng) == 0 ? 1 : 0;
    if (ex(rng) == 2) {
        a.mono[static_cast<std::size_t>(var(rng))] += 1;
    }
    return a;
}

} // namespace detail

// The functional equation on the series assembled from g.
inline Report eq1(const GTable &g, const Eq1Window &w, Eq1Tail tail = Eq1Tail::extend_rows)
{
    Report r;
    r.unit = "monomials";
    const Eq1Result res = verify_eq1(series_from_gtable(g), w, tail);
    r.checked = res.checked;
    if (!res.ok()) {
        const auto &[e, c] = *res.residual.terms().begin();
        r.fail("residual at " + motivic::detail::describe_i_monomial(e) + " = " + to_string(c) + " (" +
               std::to_string(res.residual.size()) + " nonzero)");
    }
    return r;
}

inline Report eq2_support(const GTable &g)
{
    Report r;
    r.unit = "monomials";
    const MultiSeries I = series_from_gtable(g);
    const SymmetrySupportReport rep = verify_symmetry_and_support(I);
    r.checked = I.size();
    if (!rep.ok()) {
        r.fail(rep.first_violation);
    }
    return r;
}

// Equation (a,b) -> (abL^-1, a) on i + j <= window, then the triangular system up to n.
inline Report eq4(std::int64_t window, std::int64_t n)
{
    Report r;
    r.unit = "coefficients";
    const Eq4Result res = verify_eq4(window);
    r.checked = res.checked;
    if (!res.ok()) {
        const auto &[i, j, c] = res.nonzero.front();
        r.fail("residual at a^" + std::to_string(i) + "*b^" + std::to_string(j) + " = " + to_string(c));
    }
    const auto f = solve_system5(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= n; ++j) {
            r.expect(f.at(i, j) == fab_coefficient(i, j), pair_name("f", i, j) + " = " + to_string(f.at(i, j)));
        }
    }
    return r;
}

inline Report lemma3(std::int64_t max, TSeries::Order order)
{
    Report r;
    r.unit = "pairs";
    for (std::int64_t i = 1; i <= max; ++i) {
        for (std::int64_t j = i; j <= max; ++j) {
            r.expect(lemma3_holds(i, j, order), "scaling identity fails at " + pair_name("G", i, j));
        }
    }
    return r;
}

// G_{a,a} from the recursion against the closed-form table entries.
inline Report table(std::int64_t amax, TSeries::Order order)
{
    Report r;
    r.unit = "entries";
    for (std::int64_t a = 1; a <= amax; ++a) {
        const TSeries g = compute_G(a, a, order);
        const TSeries closed = rf_expand(gaa_closed_form(a), order);
        std::string where;
        for (TSeries::Order k = 0; k <= order && where.empty(); ++k) {
            if (g[k] != closed[k]) {
                where = " at t^" + std::to_string(k) + ": " + to_string(closed[k]) + " vs " + to_string(g[k]);
            }
        }
        r.expect(where.empty(), pair_name("G", a, a) + where);
        if (a <= 4) {
            const TSeries printed = rf_expand(printed_gaa_entry(a), order);
            for (TSeries::Order k = 0; k <= order; ++k) {
                if (printed[k] != g[k]) {
                    r.notes.push_back("tabulated " + pair_name("G", a, a) + " differs from the recursion from t^" +
                                      std::to_string(k) + " on; the corrected closed form is used");
                    break;
                }
            }
        }
    }
    return r;
}

inline Report leading(std::int64_t max)
{
    Report r;
    r.unit = "pairs";
    for (std::int64_t i = 1; i <= max; ++i) {
        for (std::int64_t j = 1; j <= max; ++j) {
            if (i == 1 && j == 1) {
                continue;
            }
            const LeadingTerm got = leading_term(i, j), want = predicted_leading_term(i, j);
            r.expect(got == want, pair_name("G", i, j) + " leads with " + to_string(got.coeff) + "*t^" +
                                      std::to_string(got.exponent) + ", predicted " + to_string(want.coeff) + "*t^" +
                                      std::to_string(want.exponent));
        }
    }
    return r;
}

inline Report mass(std::int64_t max, std::int64_t gcd_max = 4)
{
    Report r;
    r.unit = "pairs";
    for (std::int64_t i = 1; i <= max; ++i) {
        for (std::int64_t j = 1; j <= max; ++j) {
            if (std::gcd(i, j) <= gcd_max) {
                r.expect(mass_check(i, j), pair_name("G", i, j) + "(1) != (L-1)^2 L^" + std::to_string(-i - j));
            }
        }
    }
    return r;
}

// Axioms 1-7 on random instances, line powers and one symmetric square.
inline Report power_axioms(int trials, TSeries::Order N, std::uint64_t seed = 2024)
{
    Report r;
    r.unit = "properties";
    std::mt19937_64 rng(seed);
    TSeries onePlusT = TSeries::one(N);
    onePlusT.set(1, LaurentPoly(1));
    for (int trial = 0; trial < trials; ++trial) {
        const TSeries A = detail::random_unit_series(rng, N), B = detail::random_unit_series(rng, N);
        const LaurentPoly m = detail::random_laurent(rng, -3, 3, 5), n = detail::random_laurent(rng, -3, 3, 5);
        const TSeries Am = series_pow(A, m);
        const std::string tag = ", trial " + std::to_string(trial);
        r.expect(series_pow(A, LaurentPoly()) == TSeries::one(N), "axiom 1" + tag);
        r.expect(series_pow(A, LaurentPoly(1)) == A, "axiom 2" + tag);
        r.expect(series_pow(A * B, m) == Am * series_pow(B, m), "axiom 3" + tag);
        r.expect(series_pow(A, m + n) == Am * series_pow(A, n), "axiom 4" + tag);
        r.expect(series_pow(A, m * n) == series_pow(series_pow(A, n), m), "axiom 5" + tag);
        r.expect(series_pow(onePlusT, m)[1] == m, "axiom 6" + tag);
        for (TSeries::Order k : {2, 3}) {
            r.expect(series_pow(A.substitute_power(k), m) == Am.substitute_power(k),
                     "axiom 7, k=" + std::to_string(k) + tag);
        }
    }
    for (std::int64_t j = -5; j <= 5; ++j) {
        const TSeries s = one_minus_t_pow(LaurentPoly::L(j), 20);
        for (TSeries::Order k = 0; k <= 20; ++k) {
            r.expect(s[k] == LaurentPoly::L(k * j),
                     "(1-t)^-L^" + std::to_string(j) + " at t^" + std::to_string(k) + " = " + to_string(s[k]));
        }
    }
    const LaurentPoly sq = sym_powers(LaurentPoly::L() + LaurentPoly(1), 2)[2];
    r.expect(sq == LaurentPoly::L(2) + LaurentPoly::L() + LaurentPoly(1), "S^2(L+1) = " + to_string(sq));
    return r;
}

// Phi/Psi against nested loops on random arguments and on the stratum arguments,
// and every stratum against its arc-order definition, for index bounds 2..bound.
inline Report phi_psi(Exponent bound, int trials = 10, std::uint64_t seed = 5)
{
    Report r;
    r.unit = "comparisons";
    const std::vector<std::string> vars{"t", "x", "y", "z", "w"};
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        std::array<MonoArg, 8> a;
        std::array<MonoArg, 5> b;
        for (auto &x : a) {
            x = detail::random_arg(rng);
        }
        for (auto &x : b) {
            x = detail::random_arg(rng);
        }
        for (Exponent n = 1; n <= bound; ++n) {
            for (Exponent maxw : {Exponent{100000}, Exponent{12}}) {
                const Truncation tr = graded(vars, maxw);
                const std::string tag = " (trial " + std::to_string(trial) + ", n=" + std::to_string(n) + ")";
                const MultiSeries dphi = phi(a, vars, tr, n) - reference::phi(a, vars, tr, n);
                r.expect(dphi.is_zero(), "Phi differs at " + (dphi.is_zero() ? "" : detail::first_term(dphi)) + tag);
                const MultiSeries dpsi = psi(b, vars, tr, n) - reference::psi(b, vars, tr, n);
                r.expect(dpsi.is_zero(), "Psi differs at " + (dpsi.is_zero() ? "" : detail::first_term(dpsi)) + tag);
            }
        }
    }
    for (Exponent n = 1; n <= bound; ++n) {
        const PairBounds pb{100000, 1000, n};
        const Truncation tr = pair_truncation(pb);
        for (int w : explicit_strata()) {
            const std::string tag = " in stratum " + std::to_string(w) + " (n=" + std::to_string(n) + ")";
            const MultiSeries got = stratum_contribution(w, pb);
            const MultiSeries d = got - reference::stratum_by_arc_orders(w, tr, n);
            r.expect(d.is_zero(), "arc-order sum differs at " + (d.is_zero() ? "" : detail::first_term(d)) + tag);
            if (w == 9) {
                continue;
            }
            const StratumArgs sa = stratum_args(w);
            const MultiSeries nested = sa.is_phi ? reference::phi(sa.phi_args, j_vars(), tr, n, sa.prefactor)
                                                 : reference::psi(sa.psi_args, j_vars(), tr, n, sa.prefactor);
            const MultiSeries dn = got - nested;
            r.expect(dn.is_zero(), "nested-loop sum differs at " + (dn.is_zero() ? "" : detail::first_term(dn)) + tag);
        }
    }
    return r;
}

inline Report lemma4(const PairBounds &b)
{
    Report r;
    r.unit = "properties";
    const Lemma4Solution sol = solve_lemma4(b);
    r.expect(sol.iterations <= static_cast<std::size_t>(b.torder),
             "needed " + std::to_string(sol.iterations) + " iterations");
    for (std::size_t it = 0; it + 1 < sol.first_changed.size(); ++it) {
        r.expect(sol.first_changed[it] >= static_cast<TSeries::Order>(it),
                 "iteration " + std::to_string(it + 1) + " changed t^" + std::to_string(sol.first_changed[it]));
    }
    const auto check = [&](const MultiSeries &img, const char *what) {
        const MultiSeries d = img - sol.J;
        r.expect(d.is_zero(), std::string(what) + " differs at " + (d.is_zero() ? "" : detail::first_term(d)));
    };
    check(arc_swap(sol.J), "arc swap");
    check(coordinate_swap(sol.J), "coordinate swap");
    check(lemma4_rhs(sol.J, b), "rhs(J)");
    r.notes.push_back(std::to_string(sol.iterations) + " iterations, " + std::to_string(sol.J.size()) + " monomials");
    return r;
}

// Product tables against multiplied-out factors for caps up to table_bound,
// then the boundary slice, the one-arc slice and idempotence of the solution.
inline Report thm4(const TupleBounds &b, Exponent table_bound = 5)
{
    Report r;
    r.unit = "properties";
    for (Exponent cap = 1; cap <= table_bound; ++cap) {
        Truncation tr = graded({"u", "x", "y", "z"}, table_bound, {{"u", 1}});
        tr.caps[1] = cap;
        tr.caps[2] = cap;
        tr.caps[3] = cap;
        const std::string tag = " (cap " + std::to_string(cap) + ")";
        for (bool kgel : {true, false}) {
            const auto o = kgel ? EpsOrientation::k_ge_l : EpsOrientation::k_le_l;
            const MultiSeries d =
                table_series(eps_table(cap, table_bound, o), tr) - reference::product_expansion(reference::eps_factors(cap, kgel), tr);
            r.expect(d.is_zero(), "eps table differs at " + (d.is_zero() ? "" : detail::first_term(d)) + tag);
        }
        for (bool printed : {false, true}) {
            const auto f = printed ? AlphaForm::printed : AlphaForm::derived;
            const MultiSeries d = table_series(alpha_table(cap, cap, table_bound, f), tr) -
                                  reference::product_expansion(reference::alpha_factors(cap, printed), tr);
            r.expect(d.is_zero(), "alpha table differs at " + (d.is_zero() ? "" : detail::first_term(d)) + tag);
        }
    }

    const Thm4Solution sol = solve_thm4(b);
    const MultiSeries u0 = sol.I.slice(motivic::detail::U_, 0);
    MultiSeries fab(tuple_vars(), tuple_truncation(b));
    for (Exponent i = 1; i <= b.cap; ++i) {
        for (Exponent j = 1; j <= b.cap; ++j) {
            Exponents e = zero_exponents();
            e[motivic::detail::P_] = i;
            e[motivic::detail::Q_] = j;
            fab.add(e, fab_coefficient(i, j));
        }
    }
    const MultiSeries d0 = u0 - fab;
    r.expect(d0.is_zero(), "u^0 slice differs at " + (d0.is_zero() ? "" : detail::first_term(d0)));

    // u^1 against the pair series in (t, a..s): t-degree below order - 1 fits the shared window.
    const PairBounds pb{b.order - 1, b.cap, std::nullopt};
    const MultiSeries J = solve_lemma4(pb).J;
    MultiSeries u1(j_vars(), pair_truncation(pb));
    for (const auto &[e, c] : sol.I.terms()) {
        if (e[motivic::detail::U_] == 1) {
            Exponents f = e;
            f[motivic::detail::U_] = 0;
            u1.add(f, c);
        }
    }
    const MultiSeries d1 = u1 - J;
    r.expect(d1.is_zero(), "u^1 slice differs from the pair series at " + (d1.is_zero() ? "" : detail::first_term(d1)));

    const auto upper = [](const Exponents &e) { return e[motivic::detail::U_] > 0; };
    const MultiSeries again = b.boundary == Boundary::closed_form ? thm4_rhs(sol.I, b) : thm4_rhs(sol.I, b).filtered(upper);
    const MultiSeries settled = b.boundary == Boundary::closed_form ? sol.I : sol.I.filtered(upper);
    const MultiSeries di = again - settled;
    r.expect(di.is_zero(), "rhs(I) differs at " + (di.is_zero() ? "" : detail::first_term(di)));
    r.notes.push_back(std::to_string(sol.iterations) + " iterations, " + std::to_string(sol.I.size()) + " monomials");
    return r;
}

} // namespace motivic::verify

#endif

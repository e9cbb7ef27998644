#ifndef MOTIVIC_SOLVER_FAB_HPP
#define MOTIVIC_SOLVER_FAB_HPP

#include <cstdint>
#include <functional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/rational_func.hpp>
#include <motivic/solver/gtable.hpp>
#include <motivic/solver/system6.hpp>

namespace motivic
{

// f(a, b) = g(a) g(b) with g(x) = x L^-1 (L - 1) / (1 - x L^-1); the slot
// variable is written as t in the returned rational function.
inline RationalFunc fab_slot_closed()
{
    return {TPolynomial::monomial(LaurentPoly::L(-1) * L_minus_1(), 1),
            TPolynomial(1) - TPolynomial::monomial(LaurentPoly::L(-1), 1)};
}

struct FabClosed {
    RationalFunc a_slot = fab_slot_closed();
    RationalFunc b_slot = fab_slot_closed();
};

inline FabClosed fab_closed()
{
    return {};
}

// [a^i b^j] f(a, b)
inline LaurentPoly fab_coefficient(std::int64_t i, std::int64_t j)
{
    if (i < 1 || j < 1) {
        return {};
    }
    return L_minus_1().pow(2) * LaurentPoly::L(-i - j);
}

struct Eq4Result {
    std::size_t checked = 0;
    // (i, j, LHS - RHS) for every nonzero residual.
    std::vector<std::tuple<std::int64_t, std::int64_t, LaurentPoly>> nonzero;

    [[nodiscard]] bool ok() const
    {
        return nonzero.empty();
    }
};

// f(a,b) = f(abL^-1, a) + f(abL^-1, b) + (L - 1) f(abL^-1, 1) on i + j <= window,
// for the coefficient table `coeff` (defaults to the closed-form expansion).
// The collapsed term uses the row sums sum_l f_{i,l} = [a^i] f(a, 1), taken
// from the closed form with g(1) evaluated as a filtration limit.
inline Eq4Result verify_eq4(std::int64_t window,
                            const std::function<LaurentPoly(std::int64_t, std::int64_t)> &coeff = fab_coefficient)
{
    if (window < 2) {
        throw WindowTooSmall("f(a,b) window needs i + j >= 2");
    }
    const LaurentQuotient g1 = rf_eval_t1(fab_slot_closed());
    if (!g1.is_polynomial()) {
        throw Error("g(1) is not a Laurent polynomial");
    }
    Eq4Result out;
    for (std::int64_t s = 2; s <= window; ++s) {
        for (std::int64_t i = 1; i < s; ++i) {
            const std::int64_t j = s - i;
            LaurentPoly rhs;
            if (i > j) {
                rhs += coeff(j, i - j) * LaurentPoly::L(-j);
            } else if (j > i) {
                rhs += coeff(i, j - i) * LaurentPoly::L(-i);
            } else {
                // [a^i] f(a,1) = [x^i] g(x) * g(1)
                const LaurentPoly row = L_minus_1() * LaurentPoly::L(-i) * g1.num;
                rhs += L_minus_1() * LaurentPoly::L(-i) * row;
            }
            ++out.checked;
            const LaurentPoly r = coeff(i, j) - rhs;
            if (!r.is_zero()) {
                out.nonzero.emplace_back(i, j, r);
            }
        }
    }
    return out;
}

// The triangular system for f: eps_i = L^-i, C = L - 1, f_11 = (L - 1)^2 L^-2, solved exactly in Z[L, 1/L].
inline SymTable<LaurentPoly> solve_system5(std::int64_t n)
{
    System6Instance<LaurentPoly> inst;
    inst.eps = [](std::int64_t k) { return LaurentPoly::L(-k); };
    inst.C = L_minus_1();
    inst.seed = g11_seed();
    inst.imax = n;
    inst.jmax = n;
    return solve_system6(inst);
}

} // namespace motivic

#endif

#ifndef MOTIVIC_POWERSTRUCT_HPP
#define MOTIVIC_POWERSTRUCT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/tseries.hpp>

namespace motivic
{

using PowerExponent = LaurentPoly;

namespace detail
{

// (1 - x t)^{-c} = sum_n binom(c + n - 1, n) x^n t^n, any integer c.
inline TSeries one_minus_xt_pow(const LaurentPoly &x, const BigInt &c, TSeries::Order order)
{
    TSeries r(order);
    BigInt binom = 1;
    LaurentPoly xn(1);
    for (TSeries::Order n = 0; n <= order; ++n) {
        if (binom == 0) {
            break;
        }
        r.set(n, LaurentPoly(binom) * xn);
        // binom(c + n, n + 1) = binom(c + n - 1, n) * (c + n) / (n + 1)
        binom = binom * (c + n) / (n + 1);
        xn *= x;
    }
    return r;
}

} // namespace detail

// (1 - t)^{-m} with (1 - t)^{-L^j} = 1/(1 - t L^j), extended multiplicatively.
inline TSeries one_minus_t_pow(const PowerExponent &m, TSeries::Order order)
{
    TSeries r = TSeries::one(order);
    for (const auto &term : m.terms()) {
        r *= detail::one_minus_xt_pow(LaurentPoly::L(term.exp), term.coeff, order);
    }
    return r;
}

// b_1, b_2, ... with A = prod_k (1 - t^k)^{-b_k} modulo t^{order+1}; entry 0 is unused.
inline std::vector<LaurentPoly> product_exponents(const TSeries &A)
{
    if (!A[0].is_one()) {
        throw NonUnitConstantTerm("power structure needs constant term 1, got " + to_string(A[0]));
    }
    const TSeries::Order N = A.order();
    std::vector<LaurentPoly> b(static_cast<std::size_t>(N) + 1);
    TSeries rest = A;
    for (TSeries::Order k = 1; k <= N; ++k) {
        b[static_cast<std::size_t>(k)] = rest[k];
        if (rest[k].is_zero()) {
            continue;
        }
        const TSeries factor = TSeries(N, one_minus_t_pow(-rest[k], N / k).coeffs()).substitute_power(k);
        rest *= factor;
    }
    return b;
}

// A(t)^m through the product decomposition of A.
inline TSeries series_pow(const TSeries &A, const PowerExponent &m)
{
    const std::vector<LaurentPoly> b = product_exponents(A);
    const TSeries::Order N = A.order();
    TSeries r = TSeries::one(N);
    for (TSeries::Order k = 1; k <= N; ++k) {
        const LaurentPoly e = m * b[static_cast<std::size_t>(k)];
        if (!e.is_zero()) {
            r *= TSeries(N, one_minus_t_pow(e, N / k).coeffs()).substitute_power(k);
        }
    }
    return r;
}

// [S^0 X], ..., [S^kmax X] for X = m.
inline std::vector<LaurentPoly> sym_powers(const PowerExponent &m, std::int64_t kmax)
{
    if (kmax < 0) {
        throw InvalidArgument("kmax must be >= 0");
    }
    const TSeries s = one_minus_t_pow(m, kmax);
    return s.coeffs();
}

// A stratum B_j with value f_j = L^scale_exp * (monomial `value`) and measure mu(B_j).
struct Stratum {
    Exponents value = zero_exponents();
    Exponent scale_exp = 0;
    LaurentPoly measure;
};

// prod_j (1 - u f_j)^{-mu_j} over the variables ("u", aux...); the u^k slice
// is the measure of unordered k-tuples weighted by the product of values.
inline MultiSeries motivic_exp(const std::vector<Stratum> &strata, const std::vector<std::string> &aux_vars,
                               const Truncation &trunc)
{
    std::vector<std::string> vars{"u"};
    vars.insert(vars.end(), aux_vars.begin(), aux_vars.end());
    if (trunc.weights.size() != vars.size()) {
        throw InvalidArgument("truncation must cover u and every auxiliary variable");
    }
    if (trunc.weights[0] < 1) {
        throw InvalidArgument("u must carry positive weight");
    }
    const Exponent korder = trunc.max_weight / trunc.weights[0];
    MultiSeries r(vars, trunc);
    r.add(zero_exponents(), LaurentPoly(1));
    for (const Stratum &st : strata) {
        if (st.measure.is_zero()) {
            continue;
        }
        const std::vector<LaurentPoly> sk = sym_powers(LaurentPoly::L(st.scale_exp) * st.measure, korder);
        MultiSeries factor(vars, trunc);
        for (Exponent k = 0; k <= korder; ++k) {
            Exponents e = zero_exponents();
            e[0] = k;
            for (std::size_t v = 0; v < aux_vars.size(); ++v) {
                e[v + 1] = k * st.value[v];
            }
            if (trunc.classify(e) == Truncation::Verdict::over_cap) {
                factor.note_dropped(1);
                break;
            }
            factor.add(e, sk[static_cast<std::size_t>(k)]);
        }
        r = r * factor;
    }
    return r;
}

// Graded by u alone up to u_order, with per-variable caps on the auxiliaries.
inline MultiSeries motivic_exp(const std::vector<Stratum> &strata, const std::vector<std::string> &aux_vars,
                               Exponent u_order, const std::vector<std::optional<Exponent>> &aux_caps = {})
{
    Truncation tr;
    tr.weights.assign(aux_vars.size() + 1, 0);
    tr.weights[0] = 1;
    tr.max_weight = u_order;
    tr.caps.assign(aux_vars.size() + 1, std::nullopt);
    for (std::size_t v = 0; v < aux_caps.size() && v < aux_vars.size(); ++v) {
        tr.caps[v + 1] = aux_caps[v];
    }
    return motivic_exp(strata, aux_vars, tr);
}

} // namespace motivic

#endif

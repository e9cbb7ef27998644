#ifndef MOTIVIC_SOLVER_SYSTEM6_HPP
#define MOTIVIC_SOLVER_SYSTEM6_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/tseries.hpp>

namespace motivic
{

// Division rules for the rings the recurrence is solved over.
template <class R>
struct RingOps;

template <>
struct RingOps<Rational> {
    static Rational one_like(const Rational &)
    {
        return Rational(1);
    }
    static Rational zero_like(const Rational &)
    {
        return Rational(0);
    }
    static Rational divide(const Rational &a, const Rational &b)
    {
        if (b == 0) {
            throw SingularDiagonal("1 - eps_i - C*eps_i = 0");
        }
        return a / b;
    }
};

// Exact quotients in Z[L, 1/L]: the divisor need not be a unit as long as
// it divides the numerator.
template <>
struct RingOps<LaurentPoly> {
    static LaurentPoly one_like(const LaurentPoly &)
    {
        return LaurentPoly(1);
    }
    static LaurentPoly zero_like(const LaurentPoly &)
    {
        return {};
    }
    static LaurentPoly divide(const LaurentPoly &a, const LaurentPoly &b)
    {
        if (b.is_zero()) {
            throw SingularDiagonal("1 - eps_i - C*eps_i = 0");
        }
        return divide_or_throw(a, b);
    }
};

template <>
struct RingOps<TSeries> {
    static TSeries one_like(const TSeries &x)
    {
        return TSeries::one(x.order());
    }
    static TSeries zero_like(const TSeries &x)
    {
        return TSeries(x.order());
    }
    static TSeries divide(const TSeries &a, const TSeries &b)
    {
        if (!b[0].is_unit()) {
            throw SingularDiagonal("1 - eps_i - C*eps_i has constant term " + to_string(b[0]));
        }
        return a * invert(b);
    }
};

template <class R>
struct System6Instance {
    std::function<R(std::int64_t)> eps;
    R C;
    R seed;
    std::int64_t imax = 1;
    std::int64_t jmax = 1;
};

// Symmetric table (i, j) -> value with single storage for i <= j.
template <class R>
class SymTable
{
public:
    [[nodiscard]] const R &at(std::int64_t i, std::int64_t j) const
    {
        auto it = m_entries.find(key(i, j));
        if (it == m_entries.end()) {
            throw InvalidArgument("no entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        return it->second;
    }
    [[nodiscard]] bool contains(std::int64_t i, std::int64_t j) const
    {
        return m_entries.count(key(i, j)) != 0u;
    }
    void put(std::int64_t i, std::int64_t j, R v)
    {
        m_entries.insert_or_assign(key(i, j), std::move(v));
    }
    [[nodiscard]] const std::map<std::pair<std::int64_t, std::int64_t>, R> &entries() const noexcept
    {
        return m_entries;
    }

private:
    static std::pair<std::int64_t, std::int64_t> key(std::int64_t i, std::int64_t j)
    {
        return {std::min(i, j), std::max(i, j)};
    }
    std::map<std::pair<std::int64_t, std::int64_t>, R> m_entries;
};

// Solves f_ij = eps_j f_{i-j,j} (i > j), f_ii = C eps_i / (1 - eps_i - C eps_i) sum_{0<j<i} f_ij,
// f_11 = seed, f_ij = f_ji. Entries with i, j <= max(imax, jmax) are filled.
template <class R>
SymTable<R> solve_system6(const System6Instance<R> &inst)
{
    using Ops = RingOps<R>;
    if (inst.imax < 1 || inst.jmax < 1) {
        throw InvalidArgument("system (6) bounds must be positive");
    }
    const std::int64_t n = std::max(inst.imax, inst.jmax);
    SymTable<R> f;
    f.put(1, 1, inst.seed);
    // Entries with i + j = s only depend on smaller sums.
    for (std::int64_t s = 3; s <= 2 * n; ++s) {
        for (std::int64_t j = std::max<std::int64_t>(1, s - n); j <= std::min(n, s - 1); ++j) {
            const std::int64_t i = s - j;
            if (i <= j) {
                continue;
            }
            f.put(i, j, inst.eps(j) * f.at(i - j, j));
        }
        if (s % 2 == 0 && s / 2 <= n) {
            const std::int64_t i = s / 2;
            R sum = Ops::zero_like(inst.seed);
            for (std::int64_t j = 1; j < i; ++j) {
                sum = sum + f.at(i, j);
            }
            const R e = inst.eps(i);
            const R one = Ops::one_like(inst.seed);
            const R den = one - e - inst.C * e;
            f.put(i, i, Ops::divide(inst.C * e * sum, den));
        }
    }
    return f;
}

} // namespace motivic

#endif

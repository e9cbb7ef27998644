#ifndef MOTIVIC_RATIONAL_FUNC_HPP
#define MOTIVIC_RATIONAL_FUNC_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/tseries.hpp>

namespace motivic
{

// Polynomial in t with Z[L, 1/L] coefficients; index = t-degree.
class TPolynomial
{
public:
    TPolynomial() = default;
    TPolynomial(const LaurentPoly &c) : m_coeffs{c}
    {
        trim();
    }
    TPolynomial(long long c) : TPolynomial(LaurentPoly(c)) {}
    explicit TPolynomial(std::vector<LaurentPoly> coeffs) : m_coeffs(std::move(coeffs))
    {
        trim();
    }

    // c * t^k
    static TPolynomial monomial(const LaurentPoly &c, std::size_t k)
    {
        std::vector<LaurentPoly> v(k + 1);
        v[k] = c;
        return TPolynomial(std::move(v));
    }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_coeffs.empty();
    }
    // -1 for the zero polynomial.
    [[nodiscard]] long long degree() const noexcept
    {
        return static_cast<long long>(m_coeffs.size()) - 1;
    }
    [[nodiscard]] const LaurentPoly &operator[](std::size_t k) const
    {
        static const LaurentPoly zero;
        return k < m_coeffs.size() ? m_coeffs[k] : zero;
    }
    [[nodiscard]] const std::vector<LaurentPoly> &coeffs() const noexcept
    {
        return m_coeffs;
    }

    [[nodiscard]] LaurentPoly at_one() const
    {
        LaurentPoly s;
        for (const auto &c : m_coeffs) {
            s += c;
        }
        return s;
    }

    [[nodiscard]] TSeries to_series(TSeries::Order order) const
    {
        TSeries r(order);
        for (std::size_t k = 0; k < m_coeffs.size() && static_cast<TSeries::Order>(k) <= order; ++k) {
            r.set(static_cast<TSeries::Order>(k), m_coeffs[k]);
        }
        return r;
    }

    friend TPolynomial operator+(const TPolynomial &a, const TPolynomial &b)
    {
        std::vector<LaurentPoly> v(std::max(a.m_coeffs.size(), b.m_coeffs.size()));
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = a[k] + b[k];
        }
        return TPolynomial(std::move(v));
    }
    TPolynomial operator-() const
    {
        std::vector<LaurentPoly> v(m_coeffs);
        for (auto &c : v) {
            c = -c;
        }
        return TPolynomial(std::move(v));
    }
    friend TPolynomial operator-(const TPolynomial &a, const TPolynomial &b)
    {
        return a + (-b);
    }
    friend TPolynomial operator*(const TPolynomial &a, const TPolynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<LaurentPoly> v(a.m_coeffs.size() + b.m_coeffs.size() - 1);
        for (std::size_t i = 0; i < a.m_coeffs.size(); ++i) {
            for (std::size_t j = 0; j < b.m_coeffs.size(); ++j) {
                v[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return TPolynomial(std::move(v));
    }

    friend bool operator==(const TPolynomial &, const TPolynomial &) = default;

private:
    void trim()
    {
        while (!m_coeffs.empty() && m_coeffs.back().is_zero()) {
            m_coeffs.pop_back();
        }
    }

    std::vector<LaurentPoly> m_coeffs;
};

// A fraction num/den of polynomials in t over Z[L, 1/L]. Never simplified;
// equality is decided by cross-multiplication.
class RationalFunc
{
public:
    RationalFunc() : m_num(), m_den(1) {}
    RationalFunc(TPolynomial num, TPolynomial den) : m_num(std::move(num)), m_den(std::move(den))
    {
        if (m_den.is_zero()) {
            throw InvalidArgument("rational function with zero denominator");
        }
    }
    RationalFunc(const TPolynomial &num) : RationalFunc(num, TPolynomial(1)) {}

    [[nodiscard]] const TPolynomial &num() const noexcept
    {
        return m_num;
    }
    [[nodiscard]] const TPolynomial &den() const noexcept
    {
        return m_den;
    }

    friend RationalFunc operator*(const RationalFunc &a, const RationalFunc &b)
    {
        return {a.m_num * b.m_num, a.m_den * b.m_den};
    }
    friend RationalFunc operator+(const RationalFunc &a, const RationalFunc &b)
    {
        return {a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den};
    }

    friend bool operator==(const RationalFunc &a, const RationalFunc &b)
    {
        return a.m_num * b.m_den == b.m_num * a.m_den;
    }

private:
    TPolynomial m_num;
    TPolynomial m_den;
};

// Reduced quotient of Laurent polynomials: gcd removed, denominator
// normalised to lowest exponent 0 with positive leading coefficient.
struct LaurentQuotient {
    LaurentPoly num;
    LaurentPoly den;

    [[nodiscard]] bool is_polynomial() const
    {
        return den.is_one();
    }

    friend bool operator==(const LaurentQuotient &a, const LaurentQuotient &b)
    {
        return a.num * b.den == b.num * a.den;
    }
};

inline LaurentQuotient reduce_quotient(LaurentPoly num, LaurentPoly den)
{
    if (den.is_zero()) {
        throw InvalidArgument("quotient with zero denominator");
    }
    if (num.is_zero()) {
        return {LaurentPoly{}, LaurentPoly(1)};
    }
    const LaurentPoly g = laurent_gcd(num, den);
    num = divide_or_throw(num, g);
    den = divide_or_throw(den, g);
    // Normalise the unit: den gets lowest exponent 0, positive top coefficient.
    const auto shift = den.min_exp();
    const bool flip = den.terms().back().coeff < 0;
    den = den.shifted(-shift);
    num = num.shifted(-shift);
    if (flip) {
        den = -den;
        num = -num;
    }
    return {std::move(num), std::move(den)};
}

inline std::string to_string(const LaurentQuotient &q)
{
    if (q.is_polynomial()) {
        return to_string(q.num);
    }
    return "(" + to_string(q.num) + ")/(" + to_string(q.den) + ")";
}

// Power series expansion to t^order.
inline TSeries rf_expand(const RationalFunc &r, TSeries::Order order)
{
    if (!r.den()[0].is_unit()) {
        throw NonUnitDenominator("t-constant term of denominator is " + to_string(r.den()[0]));
    }
    return r.num().to_series(order) * invert(r.den().to_series(order));
}

// Value at t = 1 as a reduced quotient.
inline LaurentQuotient rf_eval_t1(const RationalFunc &r)
{
    LaurentPoly den = r.den().at_one();
    if (den.is_zero()) {
        throw PoleAtOne("denominator vanishes at t = 1");
    }
    return reduce_quotient(r.num().at_one(), std::move(den));
}

} // namespace motivic

#endif

#ifndef MOTIVIC_TSERIES_HPP
#define MOTIVIC_TSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>

namespace motivic
{

// Truncated power series sum_{k=0}^{order} c_k t^k over Z[L, 1/L].
// Binary operations on mixed orders truncate to the smaller order.
class TSeries
{
public:
    using Order = std::int64_t;

    TSeries() : TSeries(0) {}
    explicit TSeries(Order order) : m_coeffs(checked_size(order)) {}
    TSeries(Order order, std::vector<LaurentPoly> coeffs) : m_coeffs(std::move(coeffs))
    {
        m_coeffs.resize(checked_size(order));
    }

    // c * t^k, truncated at order.
    static TSeries monomial(Order order, const LaurentPoly &c, Order k = 0)
    {
        TSeries r(order);
        if (k >= 0 && k <= order) {
            r.m_coeffs[static_cast<std::size_t>(k)] = c;
        }
        return r;
    }
    static TSeries one(Order order)
    {
        return monomial(order, LaurentPoly(1));
    }

    [[nodiscard]] Order order() const noexcept
    {
        return static_cast<Order>(m_coeffs.size()) - 1;
    }
    // Coefficient of t^k; zero outside [0, order].
    [[nodiscard]] const LaurentPoly &operator[](Order k) const
    {
        static const LaurentPoly zero;
        if (k < 0 || k > order()) {
            return zero;
        }
        return m_coeffs[static_cast<std::size_t>(k)];
    }
    void set(Order k, LaurentPoly c)
    {
        if (k < 0 || k > order()) {
            throw InvalidArgument("t-exponent " + std::to_string(k) + " outside [0, " + std::to_string(order()) + "]");
        }
        m_coeffs[static_cast<std::size_t>(k)] = std::move(c);
    }
    [[nodiscard]] const std::vector<LaurentPoly> &coeffs() const noexcept
    {
        return m_coeffs;
    }

    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const LaurentPoly &c) { return c.is_zero(); });
    }
    // Lowest k with a nonzero coefficient.
    [[nodiscard]] std::optional<Order> valuation() const
    {
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            if (!m_coeffs[k].is_zero()) {
                return static_cast<Order>(k);
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] TSeries truncated(Order order) const
    {
        return TSeries(std::min(order, this->order()),
                       std::vector<LaurentPoly>(m_coeffs.begin(), m_coeffs.begin() + std::min(order, this->order()) + 1));
    }

    // Multiplication by t^k (k >= 0).
    [[nodiscard]] TSeries shifted(Order k) const
    {
        TSeries r(order());
        for (Order i = 0; i + k <= order(); ++i) {
            r.m_coeffs[static_cast<std::size_t>(i + k)] = m_coeffs[static_cast<std::size_t>(i)];
        }
        return r;
    }

    // t -> t^k (k >= 1).
    [[nodiscard]] TSeries substitute_power(Order k) const
    {
        if (k < 1) {
            throw InvalidArgument("t -> t^k needs k >= 1");
        }
        TSeries r(order());
        for (Order i = 0; i * k <= order(); ++i) {
            r.m_coeffs[static_cast<std::size_t>(i * k)] = m_coeffs[static_cast<std::size_t>(i)];
        }
        return r;
    }

    TSeries operator-() const
    {
        TSeries r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }

    friend TSeries operator+(const TSeries &a, const TSeries &b)
    {
        const Order n = std::min(a.order(), b.order());
        TSeries r(n);
        for (Order k = 0; k <= n; ++k) {
            r.m_coeffs[static_cast<std::size_t>(k)] = a[k] + b[k];
        }
        return r;
    }
    friend TSeries operator-(const TSeries &a, const TSeries &b)
    {
        return a + (-b);
    }
    friend TSeries operator*(const TSeries &a, const TSeries &b)
    {
        const Order n = std::min(a.order(), b.order());
        TSeries r(n);
        for (Order i = 0; i <= n; ++i) {
            if (a[i].is_zero()) {
                continue;
            }
            for (Order j = 0; i + j <= n; ++j) {
                if (!b[j].is_zero()) {
                    r.m_coeffs[static_cast<std::size_t>(i + j)] += a[i] * b[j];
                }
            }
        }
        return r;
    }
    // Coefficient-wise scaling by a ring element.
    friend TSeries operator*(const LaurentPoly &c, const TSeries &s)
    {
        TSeries r(s.order());
        for (Order k = 0; k <= s.order(); ++k) {
            r.m_coeffs[static_cast<std::size_t>(k)] = c * s[k];
        }
        return r;
    }
    TSeries &operator+=(const TSeries &o)
    {
        return *this = *this + o;
    }
    TSeries &operator*=(const TSeries &o)
    {
        return *this = *this * o;
    }

    friend bool operator==(const TSeries &, const TSeries &) = default;

private:
    static std::size_t checked_size(Order order)
    {
        if (order < 0) {
            throw InvalidArgument("series order must be non-negative");
        }
        return static_cast<std::size_t>(order) + 1u;
    }

    std::vector<LaurentPoly> m_coeffs;
};

inline TSeries scale(const LaurentPoly &c, const TSeries &s)
{
    return c * s;
}

// Multiplicative inverse; the constant term must be a unit +-L^k.
inline TSeries invert(const TSeries &s)
{
    if (!s[0].is_unit()) {
        throw NonUnitConstantTerm("constant term " + to_string(s[0]) + " is not +-L^k");
    }
    const LaurentPoly inv0 = invert_unit(s[0]);
    TSeries r(s.order());
    r.set(0, inv0);
    for (TSeries::Order k = 1; k <= s.order(); ++k) {
        LaurentPoly acc;
        for (TSeries::Order i = 1; i <= k; ++i) {
            if (!s[i].is_zero() && !r[k - i].is_zero()) {
                acc += s[i] * r[k - i];
            }
        }
        r.set(k, -(inv0 * acc));
    }
    return r;
}

// Human-readable form with the lowest power of L pulled out of each
// coefficient, e.g. "(L^2 - 2*L + 1)*t^2*L^-5".
inline std::string to_display_string(const LaurentPoly &c, TSeries::Order k)
{
    std::string out;
    std::string tpart = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (c.is_monomial()) {
        const auto &m = c.terms()[0];
        const BigInt mag = m.coeff < 0 ? BigInt(-m.coeff) : m.coeff;
        std::vector<std::string> parts;
        if (mag != 1) {
            parts.push_back(mag.str());
        }
        if (!tpart.empty()) {
            parts.push_back(tpart);
        }
        if (m.exp != 0) {
            parts.push_back(m.exp == 1 ? "L" : "L^" + std::to_string(m.exp));
        }
        if (parts.empty()) {
            parts.push_back("1");
        }
        out = m.coeff < 0 ? "-" : "";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            out += (i == 0 ? "" : "*") + parts[i];
        }
        return out;
    }
    const auto lo = c.min_exp();
    out = "(" + to_string(c.shifted(-lo)) + ")";
    if (!tpart.empty()) {
        out += "*" + tpart;
    }
    if (lo != 0) {
        out += lo == 1 ? "*L" : "*L^" + std::to_string(lo);
    }
    return out;
}

inline std::string to_display_string(const TSeries &s)
{
    std::string out;
    for (TSeries::Order k = 0; k <= s.order(); ++k) {
        if (s[k].is_zero()) {
            continue;
        }
        std::string term = to_display_string(s[k], k);
        if (out.empty()) {
            out = std::move(term);
        } else if (term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace motivic

#endif

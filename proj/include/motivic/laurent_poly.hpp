#ifndef MOTIVIC_LAURENT_POLY_HPP
#define MOTIVIC_LAURENT_POLY_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <motivic/errors.hpp>

namespace motivic
{

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An element of Z[L, 1/L]. Terms are kept sorted by ascending exponent with
// no zero coefficient stored, so the representation is canonical and
// equality is structural.
class LaurentPoly
{
public:
    using Exponent = std::int64_t;

    struct Term {
        Exponent exp;
        BigInt coeff;

        friend bool operator==(const Term &, const Term &) = default;
    };

    LaurentPoly() = default;

    // Constant polynomial.
    LaurentPoly(long long c) : LaurentPoly(BigInt(c)) {}
    LaurentPoly(const BigInt &c)
    {
        if (c != 0) {
            m_terms.push_back({0, c});
        }
    }

    static LaurentPoly monomial(const BigInt &c, Exponent e)
    {
        LaurentPoly r;
        if (c != 0) {
            r.m_terms.push_back({e, c});
        }
        return r;
    }

    // L^e.
    static LaurentPoly L(Exponent e = 1)
    {
        return monomial(1, e);
    }

    // Builds from arbitrary (possibly repeated, unsorted, zero) terms.
    static LaurentPoly from_terms(std::vector<Term> terms)
    {
        std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.exp < b.exp; });
        LaurentPoly r;
        for (auto &t : terms) {
            if (!r.m_terms.empty() && r.m_terms.back().exp == t.exp) {
                r.m_terms.back().coeff += t.coeff;
            } else {
                r.m_terms.push_back(std::move(t));
            }
            if (r.m_terms.back().coeff == 0) {
                r.m_terms.pop_back();
            }
        }
        return r;
    }

    [[nodiscard]] std::span<const Term> terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    [[nodiscard]] bool is_one() const noexcept
    {
        return m_terms.size() == 1u && m_terms[0].exp == 0 && m_terms[0].coeff == 1;
    }
    [[nodiscard]] bool is_monomial() const noexcept
    {
        return m_terms.size() == 1u;
    }
    // Units of Z[L, 1/L] are exactly +-L^k.
    [[nodiscard]] bool is_unit() const noexcept
    {
        return is_monomial() && (m_terms[0].coeff == 1 || m_terms[0].coeff == -1);
    }
    // Lowest / highest exponent; precondition: nonzero.
    [[nodiscard]] Exponent min_exp() const
    {
        return m_terms.front().exp;
    }
    [[nodiscard]] Exponent max_exp() const
    {
        return m_terms.back().exp;
    }
    [[nodiscard]] BigInt coeff(Exponent e) const
    {
        auto it = std::lower_bound(m_terms.begin(), m_terms.end(), e,
                                   [](const Term &t, Exponent x) { return t.exp < x; });
        return (it != m_terms.end() && it->exp == e) ? it->coeff : BigInt(0);
    }

    // Multiplication by L^e.
    [[nodiscard]] LaurentPoly shifted(Exponent e) const
    {
        LaurentPoly r(*this);
        for (auto &t : r.m_terms) {
            t.exp += e;
        }
        return r;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly r(*this);
        for (auto &t : r.m_terms) {
            t.coeff = -t.coeff;
        }
        return r;
    }

    LaurentPoly &operator+=(const LaurentPoly &o)
    {
        merge(o, false);
        return *this;
    }
    LaurentPoly &operator-=(const LaurentPoly &o)
    {
        merge(o, true);
        return *this;
    }
    LaurentPoly &operator*=(const LaurentPoly &o)
    {
        *this = *this * o;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b)
    {
        a += b;
        return a;
    }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b)
    {
        a -= b;
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        if (a.is_monomial()) {
            return b.scaled_monomial(a.m_terms[0]);
        }
        if (b.is_monomial()) {
            return a.scaled_monomial(b.m_terms[0]);
        }
        const Exponent lo = a.min_exp() + b.min_exp();
        const Exponent hi = a.max_exp() + b.max_exp();
        std::vector<Term> out;
        if (hi - lo < 4096) {
            std::vector<BigInt> dense(static_cast<std::size_t>(hi - lo + 1));
            for (const auto &x : a.m_terms) {
                for (const auto &y : b.m_terms) {
                    dense[static_cast<std::size_t>(x.exp + y.exp - lo)] += x.coeff * y.coeff;
                }
            }
            for (std::size_t k = 0; k < dense.size(); ++k) {
                if (dense[k] != 0) {
                    out.push_back({lo + static_cast<Exponent>(k), std::move(dense[k])});
                }
            }
            LaurentPoly r;
            r.m_terms = std::move(out);
            return r;
        }
        std::map<Exponent, BigInt> acc;
        for (const auto &x : a.m_terms) {
            for (const auto &y : b.m_terms) {
                acc[x.exp + y.exp] += x.coeff * y.coeff;
            }
        }
        for (auto &[e, c] : acc) {
            if (c != 0) {
                out.push_back({e, std::move(c)});
            }
        }
        LaurentPoly r;
        r.m_terms = std::move(out);
        return r;
    }

    [[nodiscard]] LaurentPoly pow(std::uint64_t n) const
    {
        if (is_monomial()) {
            const auto &t = m_terms[0];
            return monomial(boost::multiprecision::pow(t.coeff, static_cast<unsigned>(n)),
                            t.exp * static_cast<Exponent>(n));
        }
        LaurentPoly result(1), base(*this);
        while (n != 0u) {
            if ((n & 1u) != 0u) {
                result *= base;
            }
            n >>= 1u;
            if (n != 0u) {
                base *= base;
            }
        }
        return result;
    }

    friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

private:
    LaurentPoly scaled_monomial(const Term &m) const
    {
        LaurentPoly r(*this);
        for (auto &t : r.m_terms) {
            t.exp += m.exp;
            t.coeff *= m.coeff;
        }
        return r;
    }

    void merge(const LaurentPoly &o, bool subtract)
    {
        if (o.is_zero()) {
            return;
        }
        std::vector<Term> out;
        out.reserve(m_terms.size() + o.m_terms.size());
        auto i = m_terms.begin();
        auto j = o.m_terms.begin();
        while (i != m_terms.end() || j != o.m_terms.end()) {
            if (j == o.m_terms.end() || (i != m_terms.end() && i->exp < j->exp)) {
                out.push_back(std::move(*i++));
            } else if (i == m_terms.end() || j->exp < i->exp) {
                out.push_back({j->exp, subtract ? BigInt(-j->coeff) : j->coeff});
                ++j;
            } else {
                BigInt c = subtract ? BigInt(i->coeff - j->coeff) : BigInt(i->coeff + j->coeff);
                if (c != 0) {
                    out.push_back({i->exp, std::move(c)});
                }
                ++i;
                ++j;
            }
        }
        m_terms = std::move(out);
    }

    std::vector<Term> m_terms;
};

// Inverse of a unit +-L^k.
inline LaurentPoly invert_unit(const LaurentPoly &x)
{
    if (!x.is_unit()) {
        throw NotAUnit("only +-L^k is invertible in Z[L, 1/L]");
    }
    const auto &t = x.terms()[0];
    return LaurentPoly::monomial(t.coeff, -t.exp);
}

// Value of x at L = v, computed exactly.
inline Rational specialize_L(const LaurentPoly &x, const Rational &v)
{
    if (v == 0) {
        if (!x.is_zero() && x.min_exp() < 0) {
            throw ZeroBase("negative powers of L at L = 0");
        }
        return Rational(x.coeff(0));
    }
    Rational acc = 0;
    for (const auto &t : x.terms()) {
        Rational p = 1;
        const Rational base = t.exp < 0 ? Rational(1) / v : v;
        const auto n = static_cast<unsigned>(t.exp < 0 ? -t.exp : t.exp);
        for (unsigned k = 0; k < n; ++k) {
            p *= base;
        }
        acc += Rational(t.coeff) * p;
    }
    return acc;
}

namespace detail
{

// Dense integer polynomial, index = degree.
using IntPoly = std::vector<BigInt>;

inline void trim(IntPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

// Splits x = L^shift * P(L) with P(0) != 0.
inline std::pair<LaurentPoly::Exponent, IntPoly> to_int_poly(const LaurentPoly &x)
{
    const auto lo = x.min_exp();
    IntPoly p(static_cast<std::size_t>(x.max_exp() - lo + 1));
    for (const auto &t : x.terms()) {
        p[static_cast<std::size_t>(t.exp - lo)] = t.coeff;
    }
    return {lo, std::move(p)};
}

inline LaurentPoly from_int_poly(const IntPoly &p, LaurentPoly::Exponent shift)
{
    std::vector<LaurentPoly::Term> terms;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != 0) {
            terms.push_back({shift + static_cast<LaurentPoly::Exponent>(k), p[k]});
        }
    }
    return LaurentPoly::from_terms(std::move(terms));
}

// Exact division in Z[x]; nullopt when den does not divide num.
inline std::optional<IntPoly> int_poly_divide(IntPoly num, const IntPoly &den)
{
    trim(num);
    if (num.empty()) {
        return IntPoly{};
    }
    if (num.size() < den.size()) {
        return std::nullopt;
    }
    IntPoly q(num.size() - den.size() + 1);
    const BigInt &lead = den.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const BigInt &top = num[k + den.size() - 1];
        if (top % lead != 0) {
            return std::nullopt;
        }
        q[k] = top / lead;
        if (q[k] != 0) {
            for (std::size_t m = 0; m < den.size(); ++m) {
                num[k + m] -= q[k] * den[m];
            }
        }
    }
    trim(num);
    if (!num.empty()) {
        return std::nullopt;
    }
    return q;
}

inline BigInt content(const IntPoly &p)
{
    BigInt g = 0;
    for (const auto &c : p) {
        g = boost::multiprecision::gcd(g, c);
    }
    return g;
}

// Pseudo-remainder of a by b (deg a >= deg b).
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly &b)
{
    const BigInt &lead = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const BigInt top = a.back();
        const std::size_t shift = a.size() - b.size();
        for (auto &c : a) {
            c *= lead;
        }
        for (std::size_t m = 0; m < b.size(); ++m) {
            a[shift + m] -= top * b[m];
        }
        trim(a);
    }
    return a;
}

// Primitive-PRS gcd in Z[x], normalised to a positive leading coefficient.
inline IntPoly int_poly_gcd(IntPoly a, IntPoly b)
{
    trim(a);
    trim(b);
    if (a.empty()) {
        std::swap(a, b);
    }
    if (a.empty()) {
        return {};
    }
    auto make_primitive = [](IntPoly &p) {
        const BigInt c = content(p);
        if (c != 0) {
            for (auto &x : p) {
                x /= c;
            }
        }
    };
    const BigInt g = boost::multiprecision::gcd(content(a), b.empty() ? BigInt(0) : content(b));
    make_primitive(a);
    make_primitive(b);
    while (!b.empty()) {
        if (a.size() < b.size()) {
            std::swap(a, b);
        }
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        make_primitive(r);
        b = std::move(r);
    }
    for (auto &x : a) {
        x *= g;
    }
    if (a.back() < 0) {
        for (auto &x : a) {
            x = -x;
        }
    }
    return a;
}

} // namespace detail

// num / den when the quotient lies in Z[L, 1/L]; nullopt otherwise.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly &num, const LaurentPoly &den)
{
    if (den.is_zero()) {
        throw InvalidArgument("division by zero Laurent polynomial");
    }
    if (num.is_zero()) {
        return LaurentPoly{};
    }
    if (den.is_monomial()) {
        const auto &d = den.terms()[0];
        std::vector<LaurentPoly::Term> out;
        for (const auto &t : num.terms()) {
            if (t.coeff % d.coeff != 0) {
                return std::nullopt;
            }
            out.push_back({t.exp - d.exp, t.coeff / d.coeff});
        }
        return LaurentPoly::from_terms(std::move(out));
    }
    auto [ns, np] = detail::to_int_poly(num);
    auto [ds, dp] = detail::to_int_poly(den);
    auto q = detail::int_poly_divide(std::move(np), dp);
    if (!q) {
        return std::nullopt;
    }
    return detail::from_int_poly(*q, ns - ds);
}

inline LaurentPoly divide_or_throw(const LaurentPoly &num, const LaurentPoly &den);

// Greatest common divisor in Z[L, 1/L], normalised to lowest exponent 0 and
// positive leading coefficient (units are +-L^k, so this fixes it uniquely).
inline LaurentPoly laurent_gcd(const LaurentPoly &a, const LaurentPoly &b)
{
    if (a.is_zero() && b.is_zero()) {
        return {};
    }
    if (a.is_zero() || b.is_zero()) {
        const auto &x = a.is_zero() ? b : a;
        auto [s, p] = detail::to_int_poly(x);
        auto g = detail::int_poly_gcd(p, {});
        return detail::from_int_poly(g, 0);
    }
    auto [sa, pa] = detail::to_int_poly(a);
    auto [sb, pb] = detail::to_int_poly(b);
    return detail::from_int_poly(detail::int_poly_gcd(std::move(pa), std::move(pb)), 0);
}

// Canonical text: descending exponents, e.g. "L^2 - 2*L + 1", "L^-3".
inline std::string to_string(const LaurentPoly &x)
{
    if (x.is_zero()) {
        return "0";
    }
    std::string out;
    const auto terms = x.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        BigInt c = it->coeff;
        const bool neg = c < 0;
        if (neg) {
            c = -c;
        }
        if (out.empty()) {
            if (neg) {
                out += "-";
            }
        } else {
            out += neg ? " - " : " + ";
        }
        if (it->exp == 0) {
            out += c.str();
            continue;
        }
        if (c != 1) {
            out += c.str();
            out += "*";
        }
        out += "L";
        if (it->exp != 1) {
            out += "^";
            out += std::to_string(it->exp);
        }
    }
    return out;
}

namespace detail
{

class LaurentParser
{
public:
    explicit LaurentParser(std::string_view s) : m_s(s) {}

    LaurentPoly parse()
    {
        std::vector<LaurentPoly::Term> terms;
        skip_ws();
        if (at_end()) {
            fail("empty input");
        }
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++m_pos;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto t = term();
            if (sign < 0) {
                t.coeff = -t.coeff;
            }
            terms.push_back(std::move(t));
            skip_ws();
        }
        return LaurentPoly::from_terms(std::move(terms));
    }

private:
    LaurentPoly::Term term()
    {
        BigInt c = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            c = digits();
            have_coeff = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++m_pos;
                skip_ws();
            } else {
                return {0, c};
            }
        }
        if (at_end() || peek() != 'L') {
            if (have_coeff) {
                fail("expected 'L' after '*'");
            }
            fail("expected a term");
        }
        ++m_pos;
        skip_ws();
        LaurentPoly::Exponent e = 1;
        if (!at_end() && peek() == '^') {
            ++m_pos;
            skip_ws();
            e = exponent();
        }
        return {e, c};
    }

    LaurentPoly::Exponent exponent()
    {
        char close = 0;
        if (peek() == '(' || peek() == '{') {
            close = peek() == '(' ? ')' : '}';
            ++m_pos;
            skip_ws();
        }
        int sign = 1;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            sign = peek() == '-' ? -1 : 1;
            ++m_pos;
        }
        const BigInt v = digits();
        if (v > BigInt(std::numeric_limits<LaurentPoly::Exponent>::max())) {
            fail("exponent out of range");
        }
        skip_ws();
        if (close != 0) {
            if (at_end() || peek() != close) {
                fail("unbalanced exponent bracket");
            }
            ++m_pos;
        }
        return sign * static_cast<LaurentPoly::Exponent>(v);
    }

    BigInt digits()
    {
        const auto start = m_pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected digits");
        }
        return BigInt(std::string(m_s.substr(start, m_pos - start)));
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) {
            ++m_pos;
        }
    }
    [[nodiscard]] bool at_end() const
    {
        return m_pos >= m_s.size();
    }
    [[nodiscard]] char peek() const
    {
        return m_s[m_pos];
    }
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError(msg + " at offset " + std::to_string(m_pos) + " in '" + std::string(m_s) + "'");
    }

    std::string_view m_s;
    std::size_t m_pos = 0;
};

} // namespace detail

// Accepts the canonical text form plus "L^(-3)" / "L^{-3}" spellings.
inline LaurentPoly parse_laurent(std::string_view s)
{
    return detail::LaurentParser(s).parse();
}

inline LaurentPoly divide_or_throw(const LaurentPoly &num, const LaurentPoly &den)
{
    auto q = divide_exact(num, den);
    if (!q) {
        throw InexactDivision("(" + to_string(num) + ") / (" + to_string(den) + ") is not in Z[L, 1/L]");
    }
    return std::move(*q);
}

// JSON: array of [exponent, "decimal coefficient"], descending exponents.
inline nlohmann::json to_json(const LaurentPoly &x)
{
    auto arr = nlohmann::json::array();
    const auto terms = x.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        arr.push_back(nlohmann::json::array({it->exp, it->coeff.str()}));
    }
    return arr;
}

inline LaurentPoly laurent_from_json(const nlohmann::json &j)
{
    if (!j.is_array()) {
        throw ParseError("Laurent polynomial JSON must be an array");
    }
    std::vector<LaurentPoly::Term> terms;
    for (const auto &pair : j) {
        if (!pair.is_array() || pair.size() != 2u || !pair[0].is_number_integer() || !pair[1].is_string()) {
            throw ParseError("Laurent term must be [exponent, \"coefficient\"]");
        }
        const auto &s = pair[1].get_ref<const std::string &>();
        const bool neg = !s.empty() && s[0] == '-';
        const std::string_view body = std::string_view(s).substr(neg ? 1 : 0);
        if (body.empty() || !std::all_of(body.begin(), body.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; })) {
            throw ParseError("bad coefficient '" + s + "'");
        }
        terms.push_back({pair[0].get<LaurentPoly::Exponent>(), BigInt(s)});
    }
    return LaurentPoly::from_terms(std::move(terms));
}

// Rational rendered as "num/den" (or "num" for integers).
inline std::string to_string(const Rational &q)
{
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline Rational parse_rational(std::string_view s)
{
    const auto slash = s.find('/');
    auto parse_int = [&](std::string_view part) {
        const bool neg = !part.empty() && (part[0] == '-' || part[0] == '+');
        const auto body = part.substr(neg ? 1 : 0);
        if (body.empty() || !std::all_of(body.begin(), body.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; })) {
            throw ParseError("bad rational '" + std::string(s) + "'");
        }
        BigInt v{std::string(body)};
        return (!part.empty() && part[0] == '-') ? BigInt(-v) : v;
    };
    if (slash == std::string_view::npos) {
        return Rational(parse_int(s));
    }
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(s) + "'");
    }
    return Rational(parse_int(s.substr(0, slash)), den);
}

} // namespace motivic

#endif

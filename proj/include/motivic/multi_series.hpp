#ifndef MOTIVIC_MULTI_SERIES_HPP
#define MOTIVIC_MULTI_SERIES_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <motivic/errors.hpp>
#include <motivic/laurent_poly.hpp>

namespace motivic
{

inline constexpr std::size_t kMaxVars = 12;
using Exponent = std::int64_t;
using Exponents = std::array<Exponent, kMaxVars>;

inline Exponents zero_exponents()
{
    Exponents e{};
    e.fill(0);
    return e;
}

// Graded truncation: a monomial is kept iff sum_v weight_v * e_v <= max_weight
// and e_v <= cap_v for every capped variable.
struct Truncation {
    std::vector<Exponent> weights;
    Exponent max_weight = 0;
    std::vector<std::optional<Exponent>> caps;

    enum class Verdict { keep, over_weight, over_cap };

    [[nodiscard]] Exponent weight(const Exponents &e) const
    {
        Exponent w = 0;
        for (std::size_t v = 0; v < weights.size(); ++v) {
            w += weights[v] * e[v];
        }
        return w;
    }
    [[nodiscard]] Verdict classify(const Exponents &e) const
    {
        if (weight(e) > max_weight) {
            return Verdict::over_weight;
        }
        for (std::size_t v = 0; v < caps.size(); ++v) {
            if (caps[v] && e[v] > *caps[v]) {
                return Verdict::over_cap;
            }
        }
        return Verdict::keep;
    }

    // Intersection of two windows over the same grading.
    static Truncation meet(const Truncation &a, const Truncation &b)
    {
        if (a.weights != b.weights) {
            throw InvalidArgument("series with different gradings");
        }
        Truncation r = a;
        r.max_weight = std::min(a.max_weight, b.max_weight);
        for (std::size_t v = 0; v < r.caps.size(); ++v) {
            const auto &o = b.caps[v];
            if (o && (!r.caps[v] || *o < *r.caps[v])) {
                r.caps[v] = o;
            }
        }
        return r;
    }

    friend bool operator==(const Truncation &, const Truncation &) = default;
};

// Weight on the named variables, zero elsewhere, no caps.
inline Truncation graded(const std::vector<std::string> &vars, Exponent max_weight,
                         std::initializer_list<std::pair<std::string, Exponent>> weights = {{"t", 1}})
{
    Truncation tr;
    tr.weights.assign(vars.size(), 0);
    tr.caps.assign(vars.size(), std::nullopt);
    tr.max_weight = max_weight;
    for (const auto &[name, w] : weights) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it != vars.end()) {
            tr.weights[static_cast<std::size_t>(it - vars.begin())] = w;
        }
    }
    return tr;
}

// Sparse truncated series in a declared tuple of variables over Z[L, 1/L].
class MultiSeries
{
public:
    using Terms = std::map<Exponents, LaurentPoly>;

    MultiSeries() = default;
    MultiSeries(std::vector<std::string> vars, Truncation trunc) : m_vars(std::move(vars)), m_trunc(std::move(trunc))
    {
        if (m_vars.size() > kMaxVars) {
            throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables");
        }
        if (m_trunc.weights.size() != m_vars.size() || m_trunc.caps.size() != m_vars.size()) {
            throw InvalidArgument("truncation does not match variable list");
        }
    }

    [[nodiscard]] const std::vector<std::string> &vars() const noexcept
    {
        return m_vars;
    }
    [[nodiscard]] std::size_t nvars() const noexcept
    {
        return m_vars.size();
    }
    [[nodiscard]] const Truncation &trunc() const noexcept
    {
        return m_trunc;
    }
    [[nodiscard]] const Terms &terms() const noexcept
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
    // Number of terms discarded so far because they exceeded a per-variable cap.
    [[nodiscard]] std::uint64_t dropped_by_cap() const noexcept
    {
        return m_dropped;
    }

    [[nodiscard]] std::size_t index_of(const std::string &name) const
    {
        auto it = std::find(m_vars.begin(), m_vars.end(), name);
        if (it == m_vars.end()) {
            throw InvalidArgument("unknown variable " + name);
        }
        return static_cast<std::size_t>(it - m_vars.begin());
    }

    // Exponent tuple from (name, exponent) pairs.
    [[nodiscard]] Exponents exps(std::initializer_list<std::pair<std::string, Exponent>> named) const
    {
        Exponents e = zero_exponents();
        for (const auto &[n, x] : named) {
            e[index_of(n)] = x;
        }
        return e;
    }

    [[nodiscard]] LaurentPoly coefficient(const Exponents &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? LaurentPoly{} : it->second;
    }

    [[nodiscard]] bool admits(const Exponents &e) const
    {
        return m_trunc.classify(e) == Truncation::Verdict::keep;
    }

    // Adds c * monomial; returns false if the truncation discarded it.
    bool add(const Exponents &e, const LaurentPoly &c)
    {
        if (c.is_zero()) {
            return true;
        }
        for (std::size_t v = 0; v < m_vars.size(); ++v) {
            if (e[v] < 0) {
                throw InvalidArgument("negative exponent of " + m_vars[v] + " in stored term");
            }
        }
        switch (m_trunc.classify(e)) {
        case Truncation::Verdict::over_cap:
            ++m_dropped;
            return false;
        case Truncation::Verdict::over_weight:
            return false;
        case Truncation::Verdict::keep:
            break;
        }
        add_unchecked(e, c);
        return true;
    }

    // Caller guarantees the monomial lies inside the window.
    void add_unchecked(const Exponents &e, const LaurentPoly &c)
    {
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    void note_dropped(std::uint64_t n) noexcept
    {
        m_dropped += n;
    }

    // Empty series over the same variables and window.
    [[nodiscard]] MultiSeries empty_like() const
    {
        return MultiSeries(m_vars, m_trunc);
    }

    [[nodiscard]] MultiSeries filtered(const std::function<bool(const Exponents &)> &keep) const
    {
        MultiSeries r = empty_like();
        for (const auto &[e, c] : m_terms) {
            if (keep(e)) {
                r.m_terms.emplace(e, c);
            }
        }
        return r;
    }

    // Terms whose exponent of variable v equals k.
    [[nodiscard]] MultiSeries slice(std::size_t v, Exponent k) const
    {
        return filtered([v, k](const Exponents &e) { return e[v] == k; });
    }

    // Re-truncates to a smaller window.
    [[nodiscard]] MultiSeries truncated(const Truncation &tr) const
    {
        MultiSeries r(m_vars, Truncation::meet(m_trunc, tr));
        for (const auto &[e, c] : m_terms) {
            r.add(e, c);
        }
        return r;
    }

    MultiSeries operator-() const
    {
        MultiSeries r(*this);
        for (auto &[e, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }

    friend MultiSeries operator+(const MultiSeries &a, const MultiSeries &b)
    {
        check_compatible(a, b);
        MultiSeries r(a.m_vars, Truncation::meet(a.m_trunc, b.m_trunc));
        r.m_dropped = a.m_dropped + b.m_dropped;
        for (const auto &[e, c] : a.m_terms) {
            r.add(e, c);
        }
        for (const auto &[e, c] : b.m_terms) {
            r.add(e, c);
        }
        return r;
    }
    friend MultiSeries operator-(const MultiSeries &a, const MultiSeries &b)
    {
        return a + (-b);
    }
    MultiSeries &operator+=(const MultiSeries &b)
    {
        check_compatible(*this, b);
        m_trunc = Truncation::meet(m_trunc, b.m_trunc);
        m_dropped += b.m_dropped;
        for (const auto &[e, c] : b.m_terms) {
            add(e, c);
        }
        return *this;
    }

    friend MultiSeries operator*(const MultiSeries &a, const MultiSeries &b)
    {
        check_compatible(a, b);
        MultiSeries r(a.m_vars, Truncation::meet(a.m_trunc, b.m_trunc));
        r.m_dropped = a.m_dropped + b.m_dropped;
        const std::size_t n = a.nvars();
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                Exponents e = zero_exponents();
                for (std::size_t v = 0; v < n; ++v) {
                    e[v] = ea[v] + eb[v];
                }
                if (r.m_trunc.classify(e) == Truncation::Verdict::keep) {
                    r.add_unchecked(e, ca * cb);
                } else if (r.m_trunc.classify(e) == Truncation::Verdict::over_cap) {
                    ++r.m_dropped;
                }
            }
        }
        return r;
    }

    friend MultiSeries operator*(const LaurentPoly &c, const MultiSeries &s)
    {
        MultiSeries r = s.empty_like();
        r.m_dropped = s.m_dropped;
        if (c.is_zero()) {
            return r;
        }
        for (const auto &[e, x] : s.m_terms) {
            r.m_terms.emplace(e, c * x);
        }
        return r;
    }

    // Equality of content: same variables and same terms (windows may differ).
    friend bool operator==(const MultiSeries &a, const MultiSeries &b)
    {
        return a.m_vars == b.m_vars && a.m_terms == b.m_terms;
    }

private:
    static void check_compatible(const MultiSeries &a, const MultiSeries &b)
    {
        if (a.m_vars != b.m_vars) {
            throw InvalidArgument("series over different variables");
        }
    }

    std::vector<std::string> m_vars;
    Truncation m_trunc;
    Terms m_terms;
    std::uint64_t m_dropped = 0;
};

// Image of each source variable: scale * prod_w target_w^{exps[w]}.
// Target exponents may be negative (t^-1) as long as they cancel on the support.
struct VarImage {
    LaurentPoly scale{1};
    std::vector<Exponent> exps;
};

class MonomialMap
{
public:
    MonomialMap(std::vector<std::string> source, std::vector<std::string> target)
        : m_source(std::move(source)), m_target(std::move(target))
    {
        for (std::size_t v = 0; v < m_source.size(); ++v) {
            VarImage img;
            img.exps.assign(m_target.size(), 0);
            auto it = std::find(m_target.begin(), m_target.end(), m_source[v]);
            if (it != m_target.end()) {
                img.exps[static_cast<std::size_t>(it - m_target.begin())] = 1;
            }
            m_images.push_back(std::move(img));
        }
    }
    // Identity on a common variable list.
    explicit MonomialMap(const std::vector<std::string> &vars) : MonomialMap(vars, vars) {}

    // source_var -> scale * prod target^exp
    MonomialMap &set(const std::string &source_var, const LaurentPoly &scale,
                     std::initializer_list<std::pair<std::string, Exponent>> image)
    {
        std::vector<std::pair<std::string, Exponent>> v(image);
        return set(source_var, scale, v);
    }
    MonomialMap &set(const std::string &source_var, const LaurentPoly &scale,
                     const std::vector<std::pair<std::string, Exponent>> &image)
    {
        VarImage &img = m_images[find(m_source, source_var)];
        img.scale = scale;
        img.exps.assign(m_target.size(), 0);
        for (const auto &[name, x] : image) {
            img.exps[find(m_target, name)] += x;
        }
        return *this;
    }

    [[nodiscard]] const std::vector<std::string> &source() const noexcept
    {
        return m_source;
    }
    [[nodiscard]] const std::vector<std::string> &target() const noexcept
    {
        return m_target;
    }
    [[nodiscard]] const std::vector<VarImage> &images() const noexcept
    {
        return m_images;
    }

    // Image exponents of a source monomial (may contain negatives).
    [[nodiscard]] Exponents image_exponents(const Exponents &e) const
    {
        Exponents r = zero_exponents();
        for (std::size_t v = 0; v < m_source.size(); ++v) {
            if (e[v] == 0) {
                continue;
            }
            for (std::size_t w = 0; w < m_target.size(); ++w) {
                r[w] += e[v] * m_images[v].exps[w];
            }
        }
        return r;
    }

    [[nodiscard]] LaurentPoly image_scale(const Exponents &e) const
    {
        LaurentPoly s(1);
        for (std::size_t v = 0; v < m_source.size(); ++v) {
            if (e[v] != 0 && !m_images[v].scale.is_one()) {
                if (e[v] < 0) {
                    throw InvalidArgument("negative source exponent");
                }
                s *= m_images[v].scale.pow(static_cast<std::uint64_t>(e[v]));
            }
        }
        return s;
    }

private:
    static std::size_t find(const std::vector<std::string> &vars, const std::string &name)
    {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) {
            throw InvalidArgument("unknown variable " + name + " in monomial map");
        }
        return static_cast<std::size_t>(it - vars.begin());
    }

    std::vector<std::string> m_source;
    std::vector<std::string> m_target;
    std::vector<VarImage> m_images;
};

// Admissibility of a map on a support set: no image exponent is negative and
// the grading weight never decreases.
struct Certificate {
    bool admissible = true;
    std::size_t checked = 0;
    std::string reason;
};

inline Certificate certify(const MonomialMap &m, const MultiSeries &s, const Truncation &target)
{
    Certificate cert;
    for (const auto &[e, c] : s.terms()) {
        ++cert.checked;
        const Exponents img = m.image_exponents(e);
        for (std::size_t w = 0; w < m.target().size(); ++w) {
            if (img[w] < 0) {
                cert.admissible = false;
                cert.reason = "image has " + m.target()[w] + "-exponent " + std::to_string(img[w]);
                return cert;
            }
        }
        if (target.weight(img) < s.trunc().weight(e)) {
            cert.admissible = false;
            cert.reason = "grading decreases from " + std::to_string(s.trunc().weight(e)) + " to " +
                          std::to_string(target.weight(img));
            return cert;
        }
    }
    return cert;
}

// Monomial-wise image of s under m, truncated to the target window.
inline MultiSeries ms_substitute(const MultiSeries &s, const MonomialMap &m, const Truncation &target)
{
    if (m.source() != s.vars()) {
        throw InvalidArgument("monomial map source does not match series variables");
    }
    const Certificate cert = certify(m, s, target);
    if (!cert.admissible) {
        throw InadmissibleMap(cert.reason);
    }
    MultiSeries r(m.target(), target);
    for (const auto &[e, c] : s.terms()) {
        const Exponents img = m.image_exponents(e);
        const auto verdict = target.classify(img);
        if (verdict == Truncation::Verdict::over_cap) {
            r.note_dropped(1);
        }
        if (verdict != Truncation::Verdict::keep) {
            continue;
        }
        r.add_unchecked(img, m.image_scale(e) * c);
    }
    return r;
}

inline MultiSeries ms_substitute(const MultiSeries &s, const MonomialMap &m)
{
    return ms_substitute(s, m, s.trunc());
}

// Renames variables by a permutation: result variable perm[v] gets source v.
inline MultiSeries relabel(const MultiSeries &s, const std::vector<std::size_t> &perm)
{
    MultiSeries r = s.empty_like();
    for (const auto &[e, c] : s.terms()) {
        Exponents img = zero_exponents();
        for (std::size_t v = 0; v < s.nvars(); ++v) {
            img[perm[v]] = e[v];
        }
        r.add(img, c);
    }
    return r;
}

// Permutation swapping the named variable pairs.
inline std::vector<std::size_t> swap_permutation(const std::vector<std::string> &vars,
                                                 std::initializer_list<std::pair<std::string, std::string>> swaps)
{
    std::vector<std::size_t> perm(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        perm[v] = v;
    }
    auto idx = [&](const std::string &n) {
        auto it = std::find(vars.begin(), vars.end(), n);
        if (it == vars.end()) {
            throw InvalidArgument("unknown variable " + n);
        }
        return static_cast<std::size_t>(it - vars.begin());
    };
    for (const auto &[x, y] : swaps) {
        std::swap(perm[idx(x)], perm[idx(y)]);
    }
    return perm;
}

} // namespace motivic

#endif

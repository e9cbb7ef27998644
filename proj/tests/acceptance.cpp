// One PASS/FAIL line per acceptance criterion. Exit status is nonzero only for
// failures not listed in kKnownFailures.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <motivic/motivic.hpp>

using namespace motivic;
using Clock = std::chrono::steady_clock;

namespace
{

// Criteria that cannot hold as stated, with the reason.
const std::map<int, std::string> kKnownFailures{
    {4, "the tabulated G[4,4] contradicts the recursion and the functional equation from t^16 on"},
};

struct Line {
    bool ok = true;
    std::string detail;
    std::vector<std::string> extra;

    void take(const verify::Report &r)
    {
        ok = ok && r.ok;
        detail += (detail.empty() ? "" : "; ") + r.summary();
        extra.insert(extra.end(), r.notes.begin(), r.notes.end());
    }
};

long long ms_since(Clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

int unexpected = 0;
int passed = 0;

template <class F>
void criterion(int id, const std::string &title, F body, long long limit_ms = 0)
{
    const auto t0 = Clock::now();
    Line line;
    try {
        line = body();
    } catch (const std::exception &e) {
        line.ok = false;
        line.detail = std::string("exception: ") + e.what();
    }
    const long long ms = ms_since(t0);
    if (limit_ms > 0 && ms >= limit_ms) {
        line.ok = false;
        line.detail += "; took " + std::to_string(ms) + " ms, limit " + std::to_string(limit_ms) + " ms";
    }
    std::cout << (line.ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << line.detail << " ("
              << ms << " ms)\n";
    for (const auto &x : line.extra) {
        std::cout << "         " << x << "\n";
    }
    if (line.ok) {
        ++passed;
    } else if (auto k = kKnownFailures.find(id); k != kKnownFailures.end()) {
        std::cout << "         known failure: " << k->second << "\n";
    } else {
        ++unexpected;
    }
}

// Exactly the series c t^k with nothing else up to the order.
bool is_term(const TSeries &s, TSeries::Order k, const LaurentPoly &c)
{
    for (TSeries::Order n = 0; n <= s.order(); ++n) {
        if (s[n] != (n == k ? c : LaurentPoly())) {
            return false;
        }
    }
    return true;
}

int run_cli(const std::string &args)
{
    const std::string cmd = "'" MOTIVIC_CLI_PATH "' " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Floating-point types or math in the project's own sources.
std::vector<std::string> float_uses()
{
    const std::regex pattern(R"(\b(float|double|long double|std::sqrt|std::pow|std::log|std::exp)\b|<cmath>|<math\.h>)");
    std::vector<std::string> hits;
    for (const char *sub : {"include", "tools", "tests"}) {
        for (const auto &entry : std::filesystem::recursive_directory_iterator(std::filesystem::path(MOTIVIC_SOURCE_DIR) / sub)) {
            if (!entry.is_regular_file()) {
                continue;
            }
            std::ifstream in(entry.path());
            std::string text;
            int lineno = 0;
            while (std::getline(in, text)) {
                ++lineno;
                // The pattern literal above names what it searches for.
                if (text.find("R\"(") == std::string::npos && std::regex_search(text, pattern)) {
                    hits.push_back(entry.path().filename().string() + ":" + std::to_string(lineno));
                }
            }
        }
    }
    return hits;
}

} // namespace

int main()
{
    const auto start = Clock::now();
    const LaurentPoly lm1 = L_minus_1();

    criterion(
        1, "G[1,n] = (L-1)^2 L^(-1-n), n <= 20",
        [&] {
            verify::Report r;
            r.unit = "series";
            for (std::int64_t n = 1; n <= 20; ++n) {
                r.expect(is_term(compute_G(1, n, 30), 0, lm1.pow(2) * LaurentPoly::L(-1 - n)), verify::pair_name("G", 1, n));
            }
            Line l;
            l.take(r);
            return l;
        },
        1000);

    criterion(
        2, "G[2,2n-1] = (L-1)^2 t^(2n-2) L^(-1-2n), n <= 10",
        [&] {
            verify::Report r;
            r.unit = "series";
            for (std::int64_t n = 1; n <= 10; ++n) {
                r.expect(is_term(compute_G(2, 2 * n - 1, 30), 2 * n - 2, lm1.pow(2) * LaurentPoly::L(-1 - 2 * n)),
                         verify::pair_name("G", 2, 2 * n - 1));
            }
            Line l;
            l.take(r);
            return l;
        },
        1000);

    criterion(3, "G[2,2n] = sum_k t^(2(n+k)) L^(-2n-3-k) (L-1)^3 to t^40, n <= 20", [&] {
        verify::Report r;
        r.unit = "series";
        for (std::int64_t n = 1; n <= 20; ++n) {
            TSeries want(40);
            for (std::int64_t k = 0; 2 * (n + k) <= 40; ++k) {
                want.set(2 * (n + k), lm1.pow(3) * LaurentPoly::L(-2 * n - 3 - k));
            }
            r.expect(compute_G(2, 2 * n, 40) == want, verify::pair_name("G", 2, 2 * n));
        }
        Line l;
        l.take(r);
        return l;
    });

    criterion(4, "G[a,a] = expansion of the tabulated closed form, a in {2,3,4}, t^40", [&] {
        Line l;
        verify::Report printed;
        printed.unit = "entries";
        for (std::int64_t a = 2; a <= 4; ++a) {
            const TSeries g = compute_G(a, a, 40), p = rf_expand(printed_gaa_entry(a), 40);
            std::string where;
            for (TSeries::Order k = 0; k <= 40 && where.empty(); ++k) {
                if (g[k] != p[k]) {
                    where = " differs at t^" + std::to_string(k) + ": tabulated " + to_string(p[k]) + ", recursion " +
                            to_string(g[k]);
                }
            }
            printed.expect(where.empty(), "tabulated " + verify::pair_name("G", a, a) + where);
        }
        l.ok = printed.ok;
        l.detail = "as tabulated: " + printed.summary();
        const verify::Report corrected = verify::table(4, 40);
        l.extra.push_back("corrected entries (a <= 4, with a = 1 seed): " + corrected.summary());
        GTable g = build_gtable(6, 6, 30);
        g.put(4, 4, rf_expand(printed_gaa_entry(4), 30));
        l.extra.push_back("functional equation with the tabulated G[4,4] substituted: " +
                          verify::eq1(g, Eq1Window{6, 6, 30}).summary());
        return l;
    });

    criterion(5, "scaling identity and leading terms, 1 <= i,j <= 12, t^30", [&] {
        Line l;
        l.take(verify::lemma3(12, 30));
        l.take(verify::leading(12));
        l.extra.push_back("G[1,1] has no predicted leading term and is skipped");
        return l;
    });

    criterion(6, "functional equation on imax=jmax=6, t^30; every single-coefficient mutation detected", [&] {
        Line l;
        const GTable base = build_gtable(6, 6, 30);
        const Eq1Window w{6, 6, 30};
        l.take(verify::eq1(base, w));
        verify::Report m;
        m.unit = "mutations detected";
        for (const auto &[ij, s] : base.entries()) {
            for (TSeries::Order k = 0; k <= 30; ++k) {
                GTable g = base;
                TSeries t = s;
                t.set(k, t[k] + LaurentPoly(1));
                g.put(ij.first, ij.second, t);
                m.expect(!verify::eq1(g, w).ok,
                         "undetected mutation of " + verify::pair_name("G", ij.first, ij.second) + " at t^" + std::to_string(k));
            }
        }
        l.take(m);
        // The command-line path: a mutated table exits 1.
        char tmpl[] = "/tmp/motivic-acceptance-XXXXXX";
        const int fd = ::mkstemp(tmpl);
        if (fd >= 0) {
            ::close(fd);
            GTable g = base;
            TSeries t = base.at(3, 5);
            t.set(10, t[10] + LaurentPoly::L(-4));
            g.put(3, 5, t);
            std::ofstream(tmpl) << gtable_to_json(g).dump(2) << "\n";
            const int code = run_cli(std::string("verify eq1 --input ") + tmpl);
            std::filesystem::remove(tmpl);
            l.ok = l.ok && code == 1;
            l.extra.push_back("motivic_cli verify eq1 on a mutated table exited " + std::to_string(code));
        } else {
            l.ok = false;
            l.extra.push_back("could not create a temporary file");
        }
        return l;
    });

    criterion(7, "f(a,b) equation on i+j <= 20; system solution = (L-1)^2 L^(-i-j), i,j <= 10", [&] {
        Line l;
        l.take(verify::eq4(20, 10));
        return l;
    });

    criterion(8, "G[i,j](1) = (L-1)^2 L^(-i-j), i,j <= 12, gcd <= 4", [&] {
        Line l;
        l.take(verify::mass(12, 4));
        return l;
    });

    criterion(9, "power structure: axioms 1-7 on 100 instances at t^10, line powers, S^2(L+1)", [&] {
        Line l;
        l.take(verify::power_axioms(100, 10));
        return l;
    });

    criterion(10, "Phi/Psi and the seven strata against nested-loop sums, index bounds <= 6", [&] {
        Line l;
        l.take(verify::phi_psi(6));
        return l;
    });

    criterion(11, "two-arc series at t^8: stabilises within 8 iterations, both swaps, idempotent", [&] {
        Line l;
        l.take(verify::lemma4(PairBounds{8, 8, std::nullopt}));
        return l;
    });

    criterion(12, "eps/alpha tables vs products (bounds <= 5); u^0 = f(p,q); u^1 = two-arc series", [&] {
        Line l;
        TupleBounds b;
        b.order = 6;
        b.cap = 7;
        l.take(verify::thm4(b, 5));
        return l;
    });

    criterion(13, "exact arithmetic only; acceptance run under 5 minutes", [&] {
        Line l;
        const auto hits = float_uses();
        l.ok = hits.empty();
        l.detail = hits.empty() ? "no floating-point types or math in include/, tools/, tests/"
                                : "floating point at " + hits.front();
        const long long ms = ms_since(start);
        l.ok = l.ok && ms < 300000;
        l.detail += "; criteria 1-12 took " + std::to_string(ms) + " ms";
        return l;
    });

    std::cout << passed << "/13 criteria pass";
    if (unexpected == 0 && passed < 13) {
        std::cout << "; the remaining failures are known and recorded above";
    }
    std::cout << "\n";
    return unexpected == 0 ? 0 : 1;
}

// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line with its runtime so the whole gate can be read at a glance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "fifam/bounds.hpp"
#include "fifam/canonical.hpp"
#include "fifam/constructions.hpp"
#include "fifam/search.hpp"
#include "fifam/structure.hpp"
#include "fifam/verify.hpp"
#include "support.hpp"

using namespace fifam;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void banner(int number, const char* name, bool pass, double seconds) {
    std::printf("ACCEPT %2d %-38s %s (%.2f s)\n", number, name, pass ? "PASS" : "FAIL", seconds);
    std::fflush(stdout);
}

std::int64_t isqrt(std::int64_t v) {
    auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (root * root > v) --root;
    while ((root + 1) * (root + 1) <= v) ++root;
    return root;
}

SearchOptions search_opts(int mss) {
    SearchOptions opts;
    opts.min_set_size = mss;
    return opts;
}

std::vector<Family> fixture_matrix() {
    std::vector<Family> fixtures;
    for (int n = 4; n <= 40; n += 4) fixtures.push_back(bisection_max(n));
    for (const auto& theta : {Fraction(1, 3), Fraction(2, 3), Fraction(2, 5), Fraction(1, 4),
                              Fraction(3, 4)}) {
        const int b = static_cast<int>(theta.den());
        for (int n = 2 * b; n <= 40; n += 7) {
            fixtures.push_back(two_layer_shared(n, theta));
            fixtures.push_back(layered_sunflower(n, theta, {LayerSpec::max_fill(b)}));
        }
        for (int n = 3 * b + 1; n <= 40; n += 9)
            fixtures.push_back(layered_sunflower(
                n, theta, {LayerSpec::exactly(b, 1), LayerSpec::max_fill(2 * b)}));
        fixtures.push_back(chain_family(40, theta));
    }
    for (int k : {4, 6})
        for (int n : {k + 4, 20, 33}) fixtures.push_back(imin_constrained(n, k));
    fixtures.push_back(Family(3, 3, Fraction(1, 2),
                              {ElementSet::from_elements({1}), ElementSet::from_elements({1, 2}),
                               ElementSet::from_elements({1, 3})}));
    return fixtures;
}

} // namespace

TEST_CASE("criterion 1: extremal family tightness across n = 4..40") {
    Stopwatch watch;
    bool pass = true;
    for (int n = 4; n <= 40; ++n) {
        const Family f = bisection_max(n);
        const bool size_ok = static_cast<std::int64_t>(f.size()) == bisection_bound(n);
        bool closed = true;
        for (int r : {3, 5, static_cast<int>(f.size())}) closed &= is_r_closed(f, r).ok;
        pass &= size_ok && closed;
        CHECK(size_ok);
        CHECK(closed);
    }
    const bool in_time = watch.seconds() < 5.0;
    CHECK(in_time);
    banner(1, "extremal tightness (n=4..40)", pass && in_time, watch.seconds());
}

TEST_CASE("criterion 2: search recovers the extremal size at n = 4, 5, 6") {
    Stopwatch watch;
    bool pass = true;
    for (int n : {4, 5}) {
        Stopwatch each;
        const SearchResult result = max_family_search(n, Fraction(1, 2), 3, search_opts(2));
        const bool ok = result.complete &&
                        result.max_size == static_cast<int>(bisection_bound(n)) &&
                        each.seconds() < 60.0;
        pass &= ok;
        CHECK(ok);
    }
    Stopwatch six;
    const SearchResult result6 = max_family_search(6, Fraction(1, 2), 3, search_opts(2));
    const bool ok6 = result6.complete && result6.max_size == 7 && six.seconds() < 1800.0;
    pass &= ok6;
    CHECK(ok6);
    banner(2, "extremal optimality (n=4,5,6)", pass, watch.seconds());
}

TEST_CASE("criterion 3: the extremal family is unique up to relabeling") {
    Stopwatch watch;
    bool pass = true;
    for (int n : {4, 5, 6}) {
        const SearchResult result = enumerate_maximum_families(n, Fraction(1, 2), 3, search_opts(2));
        bool ok = result.complete && result.witnesses.size() == 1;
        if (ok) {
            const auto [iso, sigma] = is_isomorphic(result.witnesses[0], bisection_max(n));
            ok = iso && sigma.has_value() &&
                 apply_permutation(result.witnesses[0], *sigma).same_family(bisection_max(n)) &&
                 result.witnesses[0].same_family(canonical_form(bisection_max(n)));
        }
        pass &= ok;
        CHECK(ok);
    }
    banner(3, "uniqueness up to isomorphism", pass, watch.seconds());
}

TEST_CASE("criterion 4: search matches the unpruned oracle on every small case") {
    Stopwatch watch;
    bool pass = true;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& theta : {Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)}) {
            for (int r : {3, 4}) {
                for (int mss : {1, 2}) {
                    const int expected = oracle_max_family(n, theta, r, mss);
                    const SearchResult got = max_family_search(n, theta, r, search_opts(mss));
                    const bool ok = got.complete && got.max_size == expected;
                    pass &= ok;
                    CHECK_MESSAGE(ok, "n=", n, " theta=", theta.str(), " r=", r, " mss=", mss);
                }
            }
        }
    }
    const bool in_time = watch.seconds() < 120.0;
    CHECK(in_time);
    banner(4, "oracle equivalence (n<=4 grid)", pass && in_time, watch.seconds());
}

TEST_CASE("criterion 5: the Hadamard family separates pairwise from order-3 closure") {
    Stopwatch watch;
    const Family f = hadamard_family(4);
    bool pass = f.size() == 10;
    pass &= is_r_closed(f, 2).ok;
    const Verdict v = is_r_closed(f, 3);
    pass &= !v.ok && v.violation.has_value() && v.violation->indices.size() == 3;
    if (v.violation) {
        std::vector<ElementSet> triple;
        for (int idx : v.violation->indices) triple.push_back(f.set(static_cast<std::size_t>(idx)));
        pass &= !tuple_ok(triple, f.theta());
    }
    const bool in_time = watch.seconds() < 1.0;
    CHECK(pass);
    CHECK(in_time);
    banner(5, "Hadamard pairwise/order-3 separation", pass && in_time, watch.seconds());
}

TEST_CASE("criterion 6: no construction or search output exceeds the general bound") {
    Stopwatch watch;
    bool pass = true;
    for (const auto& theta : {Fraction(1, 3), Fraction(2, 3), Fraction(2, 5), Fraction(1, 4),
                              Fraction(3, 4)}) {
        const int b = static_cast<int>(theta.den());
        std::vector<Family> families;
        for (int n = 2 * b; n <= 40; ++n) {
            families.push_back(two_layer_shared(n, theta));
            families.push_back(layered_sunflower(n, theta, {LayerSpec::max_fill(b)}));
        }
        for (int n = b; n <= 40; ++n) families.push_back(chain_family(n, theta));
        for (const Family& f : families) {
            bool has_pair = false;
            for (const ElementSet& s : f.sets()) has_pair |= (s.size() == 2);
            const BoundReport bound = main_upper_bound(f.n(), theta, has_pair);
            const bool ok = static_cast<std::int64_t>(f.size()) <= bound.floored &&
                            is_r_closed(f, std::min<int>(3, static_cast<int>(f.size()))).ok;
            pass &= ok;
            CHECK_MESSAGE(ok, "theta=", theta.str(), " n=", f.n(), " size=", f.size(),
                          " bound=", bound.floored);
        }
    }
    for (int n = 3; n <= 6; ++n) {
        const SearchResult result = max_family_search(n, Fraction(1, 3), 3, search_opts(3));
        const auto bound = main_upper_bound(n, Fraction(1, 3), false).floored;
        const bool ok = result.complete && result.max_size <= bound;
        pass &= ok;
        CHECK_MESSAGE(ok, "search n=", n, " max=", result.max_size, " bound=", bound);
    }
    banner(6, "general-theta bound consistency", pass, watch.seconds());
}

TEST_CASE("criterion 7: the structural audit passes on the whole fixture matrix") {
    Stopwatch watch;
    bool pass = true;
    int audited = 0;
    for (const Family& f : fixture_matrix()) {
        const AuditReport report = audit(f);
        ++audited;
        for (const auto& check : report.checks) {
            pass &= check.pass;
            CHECK_MESSAGE(check.pass, "n=", f.n(), " theta=", f.theta().str(), " check=",
                          check.name, " ", check.details);
        }
    }
    CHECK(audited > 50);
    banner(7, "structural audit (zero failures)", pass, watch.seconds());
}

TEST_CASE("criterion 8: harmonic window sums stay under ln(eta) + 1/m") {
    Stopwatch watch;
    bool pass = true;
    for (std::int64_t eta = 2; eta <= 6; ++eta) {
        for (int m = 1; m <= 5; ++m) {
            for (int k = 1; k <= 50; ++k) {
                pass &= harmonic_upper_bound_strict(eta, 1, m, k);
                if (k < 50) pass &= harmonic_monotone_step(eta, m, k);
            }
            pass &= harmonic_convergence_improves(eta, m, 10, 40);
        }
    }
    const bool in_time = watch.seconds() < 1.0;
    CHECK(pass);
    CHECK(in_time);
    banner(8, "harmonic window-sum suite", pass && in_time, watch.seconds());
}

TEST_CASE("criterion 9: chain towers reach the square-root lower bound") {
    Stopwatch watch;
    bool pass = true;
    for (const auto& theta : {Fraction(1, 2), Fraction(1, 3)}) {
        const std::int64_t a = theta.num(), b = theta.den();
        for (int n : {10, 50, 100, 500}) {
            const Family f = chain_family(n, theta);
            const auto k = static_cast<std::int64_t>(f.size());
            const std::int64_t required = isqrt(2 * (n - a) / (b - a)) - 1;

            ElementSet all;
            for (const ElementSet& s : f.sets()) all = set_union(all, s);
            const bool union_exact = all.size() == a * k + (b - a) * k * (k + 1) / 2;
            const bool verified = is_r_closed(f, static_cast<int>(f.size())).ok;
            const bool reaches = k >= required;
            pass &= union_exact && verified && reaches;
            CHECK(union_exact);
            CHECK(verified);
            CHECK_MESSAGE(reaches, "theta=", theta.str(), " n=", n, ": k=", k,
                          " < required floor(sqrt(2(n-a)/(b-a))) - 1 = ", required);
        }
    }
    banner(9, "chain square-root lower bound", pass, watch.seconds());
}

TEST_CASE("criterion 10: random subfamilies of fixtures stay closed") {
    Stopwatch watch;
    std::mt19937_64 rng(777);
    const std::vector<Family> bases = {bisection_max(12), two_layer_shared(19, Fraction(2, 5)),
                                       chain_family(40, Fraction(1, 2)),
                                       layered_sunflower(24, Fraction(1, 4),
                                                         {LayerSpec::max_fill(4)})};
    bool pass = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const Family& base = bases[static_cast<std::size_t>(trial) % bases.size()];
        const int size = 1 + static_cast<int>(rng() % base.size());
        const Family sub = testsupport::random_subfamily(rng, base, size);
        pass &= is_r_closed(sub).ok;
    }
    const bool in_time = watch.seconds() < 5.0;
    CHECK(pass);
    CHECK(in_time);
    banner(10, "hereditariness on 1000 subfamilies", pass && in_time, watch.seconds());
}

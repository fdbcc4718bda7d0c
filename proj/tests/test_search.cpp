#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fifam/bounds.hpp"
#include "fifam/canonical.hpp"
#include "fifam/constructions.hpp"
#include "fifam/search.hpp"
#include "fifam/verify.hpp"
#include "support.hpp"

using namespace fifam;
using testsupport::make_family;
using testsupport::make_set;

namespace {

SearchOptions with(int mss, bool iso = false) {
    SearchOptions opts;
    opts.min_set_size = mss;
    opts.isomorph_reduction = iso;
    return opts;
}

} // namespace

TEST_CASE("canonical form collapses orbits and is idempotent") {
    std::mt19937_64 rng(271828);
    const std::vector<Family> fixtures = {
        bisection_max(6), bisection_max(9), chain_family(12, Fraction(1, 2)),
        layered_sunflower(9, Fraction(1, 3), {LayerSpec::max_fill(3)}),
        make_family(3, 3, Fraction(1, 2), {{1}, {1, 2}, {1, 3}})};
    for (const Family& f : fixtures) {
        const Family canon = canonical_form(f);
        CHECK(canonical_form(canon).same_family(canon));  // idempotent
        for (int trial = 0; trial < 100; ++trial) {
            const auto sigma = testsupport::random_permutation(rng, f.n());
            CHECK(canonical_form(apply_permutation(f, sigma)).same_family(canon));
        }
    }
    // Minimal relabeling pulls labels down.
    const Family shifted = make_family(3, 2, Fraction(1, 2), {{2, 3}});
    CHECK(canonical_form(shifted).set(0) == make_set({1, 2}));
}

TEST_CASE("is_isomorphic produces a checkable witness") {
    std::mt19937_64 rng(1618);
    const Family f = bisection_max(6);
    const auto sigma = testsupport::random_permutation(rng, 6);
    const Family g = apply_permutation(f, sigma);

    const auto [iso, witness] = is_isomorphic(f, g);
    REQUIRE(iso);
    REQUIRE(witness.has_value());
    CHECK(apply_permutation(f, *witness).same_family(g));

    const auto [self_iso, self_witness] = is_isomorphic(f, f);
    CHECK(self_iso);
    CHECK(apply_permutation(f, *self_witness).same_family(f));

    // Same member-size profile, different intersection structure: swap one
    // quadruple so the two big members now share three elements.
    Family twisted(6, f.r(), Fraction(1, 2), [&] {
        std::vector<ElementSet> sets;
        for (const ElementSet& s : f.sets())
            sets.push_back(s == make_set({1, 2, 5, 6}) ? make_set({1, 2, 3, 5}) : s);
        return sets;
    }());
    CHECK(twisted.size() == f.size());
    CHECK_FALSE(is_isomorphic(f, twisted).first);

    CHECK_THROWS_AS(is_isomorphic(f, bisection_max(7)), std::invalid_argument);
}

TEST_CASE("search equals the oracle across the cross-validation grid") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& theta : {Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)}) {
            for (int r : {3, 4}) {
                for (int mss : {1, 2}) {
                    INFO("n=", n, " theta=", theta.str(), " r=", r, " mss=", mss);
                    const int expected = oracle_max_family(n, theta, r, mss);
                    const SearchResult got = max_family_search(n, theta, r, with(mss));
                    CHECK(got.complete);
                    CHECK(got.max_size == expected);
                }
            }
        }
    }
    CHECK_THROWS_AS(oracle_max_family(5, Fraction(1, 2), 3, 1), std::invalid_argument);
}

TEST_CASE("pinned maxima at small n") {
    CHECK(max_family_search(4, Fraction(1, 2), 3, with(2)).max_size == 4);
    CHECK(max_family_search(4, Fraction(1, 2), 3, with(1)).max_size == 4);
    CHECK(max_family_search(5, Fraction(1, 2), 3, with(2)).max_size == 5);
    CHECK(max_family_search(3, Fraction(1, 2), 3, with(1)).max_size == 3);  // singleton anomaly
    CHECK(max_family_search(3, Fraction(1, 2), 3, with(2)).max_size == 2);
    CHECK(max_family_search(2, Fraction(1, 2), 3, with(2)).max_size == 1);
    CHECK(max_family_search(6, Fraction(1, 2), 3, with(2)).max_size == 7);
}

TEST_CASE("witnesses pass the verifier and carry the reported size") {
    for (int n : {4, 5, 6}) {
        const SearchResult result = max_family_search(n, Fraction(1, 2), 3, with(2));
        REQUIRE_FALSE(result.witnesses.empty());
        for (const Family& w : result.witnesses) {
            CHECK(static_cast<int>(w.size()) == result.max_size);
            CHECK(is_r_closed(w, 3).ok);
        }
    }
}

TEST_CASE("maximum families are unique up to relabeling at n = 4, 5, 6") {
    for (int n : {4, 5, 6}) {
        const SearchResult result = enumerate_maximum_families(n, Fraction(1, 2), 3, with(2));
        CHECK(result.complete);
        REQUIRE(result.witnesses.size() == 1);
        const auto [iso, witness] = is_isomorphic(result.witnesses[0], bisection_max(n));
        CHECK(iso);
        CHECK(result.witnesses[0].same_family(canonical_form(bisection_max(n))));
    }
}

TEST_CASE("pairwise-only closure admits several extremal classes at n = 4") {
    const SearchResult result = enumerate_maximum_families(4, Fraction(1, 2), 2, with(2));
    CHECK(result.max_size == 4);
    CHECK(result.witnesses.size() == 3);
}

TEST_CASE("results do not depend on the parallel width") {
    SearchOptions narrow = with(2);
    SearchOptions wide = with(2);
    wide.parallel_width = 4;
    for (int n : {4, 5, 6}) {
        const SearchResult a = max_family_search(n, Fraction(1, 2), 3, narrow);
        const SearchResult b = max_family_search(n, Fraction(1, 2), 3, wide);
        CHECK(a.max_size == b.max_size);
        CHECK(a.complete == b.complete);
        CHECK(a.nodes_explored == b.nodes_explored);
        REQUIRE(a.witnesses.size() == b.witnesses.size());
        for (std::size_t i = 0; i < a.witnesses.size(); ++i)
            CHECK(a.witnesses[i].same_family(b.witnesses[i]));
    }
}

TEST_CASE("orderly pruning changes nothing observable") {
    for (int n : {4, 5}) {
        for (int mss : {1, 2}) {
            const SearchResult plain = enumerate_maximum_families(n, Fraction(1, 2), 3, with(mss));
            const SearchResult pruned =
                enumerate_maximum_families(n, Fraction(1, 2), 3, with(mss, true));
            CHECK(plain.max_size == pruned.max_size);
            REQUIRE(plain.witnesses.size() == pruned.witnesses.size());
            for (std::size_t i = 0; i < plain.witnesses.size(); ++i)
                CHECK(plain.witnesses[i].same_family(pruned.witnesses[i]));
            CHECK(pruned.nodes_explored <= plain.nodes_explored);
        }
    }
}

TEST_CASE("node budgets flag incompleteness deterministically") {
    SearchOptions tight = with(2);
    tight.node_budget = 50;
    const SearchResult capped = max_family_search(6, Fraction(1, 2), 3, tight);
    CHECK_FALSE(capped.complete);
    CHECK(capped.nodes_explored <= 52);

    SearchOptions roomy = with(2);
    roomy.node_budget = 1'000'000;
    const SearchResult full = max_family_search(6, Fraction(1, 2), 3, roomy);
    CHECK(full.complete);
    CHECK(full.max_size == 7);

    // Beyond the exhaustive range a budget is mandatory.
    CHECK_THROWS_AS(max_family_search(7, Fraction(1, 2), 3, with(2)), std::invalid_argument);
    SearchOptions budget7 = with(2);
    budget7.node_budget = 2'000'000;
    const SearchResult seven = max_family_search(7, Fraction(1, 2), 3, budget7);
    CHECK(seven.complete);
    CHECK(seven.max_size == bisection_bound(7));
}

TEST_CASE("assume_paper_bounds stops early without changing the answer") {
    SearchOptions assume = with(2);
    assume.assume_paper_bounds = true;
    const SearchResult fast = max_family_search(5, Fraction(1, 2), 3, assume);
    const SearchResult full = max_family_search(5, Fraction(1, 2), 3, with(2));
    CHECK(fast.max_size == full.max_size);
    CHECK(fast.nodes_explored <= full.nodes_explored);
}

TEST_CASE("chain search maxima") {
    CHECK(chain_search(2, Fraction(1, 2), 3).max_size == 2);  // {x} then {x,y}
    SearchOptions mss2 = with(2);
    CHECK(chain_search(2, Fraction(1, 2), 3, mss2).max_size == 1);
    const SearchResult six = chain_search(6, Fraction(1, 2), 3);
    CHECK(six.complete);
    CHECK(six.max_size == 3);
    REQUIRE(six.witnesses.size() == 1);
    const Family& witness = six.witnesses[0];
    CHECK(is_r_closed(witness, 3).ok);
    for (std::size_t i = 0; i + 1 < witness.size(); ++i)
        CHECK(witness.set(i).size() < witness.set(i + 1).size());

    // Constructive lower bound: the chain tower is one admissible chain.
    const SearchResult ten = [&] {
        SearchOptions opts;
        opts.node_budget = 5'000'000;
        return chain_search(10, Fraction(1, 2), 3, opts);
    }();
    CHECK(ten.max_size >= static_cast<int>(chain_family(10, Fraction(1, 2)).size()));

    CHECK_THROWS_AS(chain_search(10, Fraction(1, 2), 3), std::invalid_argument);  // needs budget
}

TEST_CASE("small chain searches agree with a reference enumeration") {
    // Reference: plain recursion over strictly size-increasing families.
    auto brute = [](int n, const Fraction& theta, int r) {
        std::vector<ElementSet> pool;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            ElementSet s;
            for (int e = 0; e < n; ++e)
                if ((mask >> e) & 1) s.insert(e + 1);
            pool.push_back(std::move(s));
        }
        int best = 0;
        std::vector<ElementSet> cur;
        auto rec = [&](auto&& self) -> void {
            best = std::max(best, static_cast<int>(cur.size()));
            for (const ElementSet& cand : pool) {
                if (!cur.empty() && cand.size() <= cur.back().size()) continue;
                bool ok = !testsupport::naive_violation(
                               Family(n, r, theta,
                                      [&] {
                                          auto sets = cur;
                                          sets.push_back(cand);
                                          return sets;
                                      }()),
                               r)
                               .has_value();
                if (!ok) continue;
                cur.push_back(cand);
                self(self);
                cur.pop_back();
            }
        };
        rec(rec);
        return best;
    };
    for (int n = 2; n <= 5; ++n) {
        for (const auto& theta : {Fraction(1, 2), Fraction(1, 3)}) {
            INFO("n=", n, " theta=", theta.str());
            CHECK(chain_search(n, theta, 3).max_size == brute(n, theta, 3));
        }
    }
}

// Shared helpers for the test suites: tiny independent checkers kept apart
// from the library code paths they validate, plus fixture plumbing.
#ifndef FIFAM_TESTS_SUPPORT_HPP
#define FIFAM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "fifam/family.hpp"

namespace testsupport {

inline fifam::ElementSet make_set(std::initializer_list<int> elems) {
    return fifam::ElementSet::from_elements(std::vector<int>(elems));
}

inline fifam::Family make_family(int n, int r, fifam::Fraction theta,
                                 std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<fifam::ElementSet> members;
    for (const auto& s : sets) members.push_back(fifam::ElementSet::from_elements(std::vector<int>(s)));
    return fifam::Family(n, r, theta, std::move(members));
}

// Reference closure check: every t-subset, every member size, no shortcuts.
// Returns the first violating index tuple in (t ascending, lexicographic)
// order, or nullopt.
inline std::optional<std::vector<int>> naive_violation(const fifam::Family& family, int r) {
    const auto& sets = family.sets();
    const int m = static_cast<int>(sets.size());
    std::vector<int> combo;
    std::optional<std::vector<int>> found;
    auto rec = [&](auto&& self, int t, int from) -> bool {
        if (static_cast<int>(combo.size()) == t) {
            fifam::ElementSet inter = sets[static_cast<std::size_t>(combo[0])];
            for (std::size_t i = 1; i < combo.size(); ++i)
                inter = fifam::set_intersection(inter, sets[static_cast<std::size_t>(combo[i])]);
            const auto card = static_cast<std::int64_t>(inter.size());
            for (int idx : combo)
                if (family.theta().matches(card, sets[static_cast<std::size_t>(idx)].size()))
                    return false;
            found = combo;
            return true;
        }
        for (int j = from; j < m; ++j) {
            combo.push_back(j);
            if (self(self, t, j + 1)) return true;
            combo.pop_back();
        }
        return false;
    };
    for (int t = 2; t <= std::min(r, m); ++t)
        if (rec(rec, t, 0)) return found;
    return std::nullopt;
}

// Uniformly random family over [n]: k distinct nonempty subsets.
inline fifam::Family random_family(std::mt19937_64& rng, int n, int k, int r,
                                   fifam::Fraction theta, int min_size = 1) {
    std::set<std::uint64_t> masks;
    std::uniform_int_distribution<std::uint64_t> dist(1, (std::uint64_t{1} << n) - 1);
    while (static_cast<int>(masks.size()) < k) {
        const std::uint64_t mask = dist(rng);
        if (std::popcount(mask) >= min_size) masks.insert(mask);
    }
    std::vector<fifam::ElementSet> sets;
    for (std::uint64_t mask : masks) {
        fifam::ElementSet s;
        for (int e = 0; e < n; ++e)
            if ((mask >> e) & 1) s.insert(e + 1);
        sets.push_back(std::move(s));
    }
    return fifam::Family(n, r, theta, std::move(sets));
}

// Random subfamily of the given size.
inline fifam::Family random_subfamily(std::mt19937_64& rng, const fifam::Family& family,
                                      int size) {
    std::vector<int> indices(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) indices[i] = static_cast<int>(i);
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(static_cast<std::size_t>(size));
    return family.subfamily(indices);
}

// Random permutation of [n] as a 1-based image table.
inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    return sigma;
}

} // namespace testsupport

#endif

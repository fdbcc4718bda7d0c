#include "fifam/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fifam {

namespace {

ElementSet range_set(int first, int last) {
    ElementSet s;
    for (int e = first; e <= last; ++e) s.insert(e);
    return s;
}

// Order declared on generator output: closed at every order, so anything at
// least 3 is honest; vacuous below three members.
int family_order(std::size_t members) {
    return std::max<int>(3, static_cast<int>(members));
}

} // namespace

Family bisection_max(int n) {
    if (n < 2) throw std::invalid_argument("bisection_max: need n >= 2");
    std::vector<ElementSet> sets;
    for (int x = 2; x <= n; ++x) sets.push_back(ElementSet::from_elements({1, x}));
    for (int x = 3; x + 1 <= n; x += 2)
        sets.push_back(ElementSet::from_elements({1, 2, x, x + 1}));
    const int order = family_order(sets.size());
    return Family(n, order, Fraction(1, 2), std::move(sets));
}

Family hadamard_family(int m) {
    if (m < 1 || (m & (m - 1)) != 0)
        throw std::invalid_argument("hadamard_family: order must be a power of two");

    // Sylvester doubling; first row all ones.
    std::vector<std::vector<int>> h{{1}};
    while (static_cast<int>(h.size()) < m) {
        const std::size_t k = h.size();
        std::vector<std::vector<int>> next(2 * k, std::vector<int>(2 * k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                next[i][j] = next[i][j + k] = next[i + k][j] = h[i][j];
                next[i + k][j + k] = -h[i][j];
            }
        }
        h = std::move(next);
    }

    std::vector<std::vector<int>> rows;
    for (int i = 0; i < m; ++i) {
        auto& row = rows.emplace_back(h[static_cast<std::size_t>(i)]);
        row.insert(row.end(), h[static_cast<std::size_t>(i)].begin(),
                   h[static_cast<std::size_t>(i)].end());
    }
    for (int i = 0; i < m; ++i) {
        auto& row = rows.emplace_back(h[static_cast<std::size_t>(i)]);
        for (int v : h[static_cast<std::size_t>(i)]) row.push_back(-v);
    }
    for (int i = 0; i < m; ++i) {
        auto& row = rows.emplace_back(h[static_cast<std::size_t>(i)]);
        row.insert(row.end(), static_cast<std::size_t>(m), -1);
    }
    rows.erase(rows.begin() + 2 * m);  // (2m+1)th row duplicates the (m+1)th
    rows.erase(rows.begin());          // first row is the full ground set

    std::vector<ElementSet> sets;
    for (const auto& row : rows) {
        ElementSet s;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] == 1) s.insert(static_cast<int>(j) + 1);
        sets.push_back(std::move(s));
    }
    return Family(2 * m, 2, Fraction(1, 2), std::move(sets));
}

Family layered_sunflower(int n, const Fraction& theta, const std::vector<LayerSpec>& layers) {
    if (layers.empty()) throw std::invalid_argument("layered_sunflower: no layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].size <= 0 || layers[i].size % theta.den() != 0)
            throw std::invalid_argument("layered_sunflower: layer sizes must be positive "
                                        "multiples of " + std::to_string(theta.den()));
        if (i > 0 && layers[i].size <= layers[i - 1].size)
            throw std::invalid_argument("layered_sunflower: layer sizes must increase");
        if (layers[i].count && *layers[i].count <= 0)
            throw std::invalid_argument("layered_sunflower: counts must be positive");
    }

    const int max_size = layers.back().size;
    const std::int64_t top_core = *theta.scale_integral(max_size);
    if (top_core >= n) throw std::invalid_argument("layered_sunflower: ground set too small");
    std::int64_t pool = n - top_core;

    auto petal_size = [&](const LayerSpec& layer) {
        return static_cast<std::int64_t>(layer.size) - *theta.scale_integral(layer.size);
    };

    // Explicit counts claim their petals first; fill-to-max layers resolve in
    // ascending size order, each leaving one petal's room per larger
    // fill-to-max layer.
    std::vector<std::int64_t> counts(layers.size(), 0);
    for (std::size_t j = 0; j < layers.size(); ++j)
        if (layers[j].count) {
            counts[j] = *layers[j].count;
            pool -= counts[j] * petal_size(layers[j]);
        }
    if (pool < 0) throw std::invalid_argument("layered_sunflower: demand exceeds ground set");
    for (std::size_t j = 0; j < layers.size(); ++j) {
        if (layers[j].count) continue;
        std::int64_t reserve = 0;
        for (std::size_t j2 = j + 1; j2 < layers.size(); ++j2)
            if (!layers[j2].count) reserve += petal_size(layers[j2]);
        counts[j] = (pool - reserve) / petal_size(layers[j]);
        if (counts[j] < 1)
            throw std::invalid_argument("layered_sunflower: no room for a fill-to-max layer");
        pool -= counts[j] * petal_size(layers[j]);
    }

    std::vector<ElementSet> sets;
    int next_label = static_cast<int>(top_core) + 1;
    for (std::size_t j = 0; j < layers.size(); ++j) {
        const ElementSet core = range_set(1, static_cast<int>(*theta.scale_integral(layers[j].size)));
        const int petal = static_cast<int>(petal_size(layers[j]));
        for (std::int64_t c = 0; c < counts[j]; ++c) {
            ElementSet member = core;
            for (int e = 0; e < petal; ++e) member.insert(next_label++);
            sets.push_back(std::move(member));
        }
    }
    const int order = family_order(sets.size());
    return Family(n, order, theta, std::move(sets));
}

Family two_layer_shared(int n, const Fraction& theta) {
    const int a = static_cast<int>(theta.num());
    const int b = static_cast<int>(theta.den());
    if (n < 2 * b) throw std::invalid_argument("two_layer_shared: need n >= 2b");

    const int small_petal = b - a;
    const int large_petal = 2 * (b - a);
    const int first_free = 2 * a + 1;
    const int free_count = n - 2 * a;

    // Small petals tile the free pool.
    std::vector<std::vector<int>> smalls;
    int label = first_free;
    while (label + small_petal - 1 <= n) {
        std::vector<int> petal;
        for (int e = 0; e < small_petal; ++e) petal.push_back(label++);
        smalls.push_back(std::move(petal));
    }

    // Large petals reuse the pool in blocks of a, at most one block per small
    // petal (so each small/large overlap is exactly 0 or a); elements in no
    // small petal may be used singly. Leftover elements of a petal when a
    // does not divide b - a stay unshared.
    struct Block { std::vector<int> elems; int source; };
    std::vector<Block> blocks;
    for (std::size_t p = 0; p < smalls.size(); ++p) {
        const auto& petal = smalls[p];
        for (std::size_t j = 0; j + static_cast<std::size_t>(a) <= petal.size();
             j += static_cast<std::size_t>(a)) {
            Block blk;
            blk.source = static_cast<int>(p);
            for (int e = 0; e < a; ++e) blk.elems.push_back(petal[j + static_cast<std::size_t>(e)]);
            blocks.push_back(std::move(blk));
        }
    }
    std::vector<int> loose;
    for (int e = label; e <= n; ++e) loose.push_back(e);

    std::vector<std::vector<int>> larges;
    std::size_t bi = 0, li = 0;
    while (true) {
        std::vector<int> petal;
        std::vector<bool> used_source(smalls.size(), false);
        std::size_t scan = bi;
        while (static_cast<int>(petal.size()) + a <= large_petal && scan < blocks.size()) {
            if (!used_source[static_cast<std::size_t>(blocks[scan].source)]) {
                petal.insert(petal.end(), blocks[scan].elems.begin(), blocks[scan].elems.end());
                used_source[static_cast<std::size_t>(blocks[scan].source)] = true;
                std::swap(blocks[scan], blocks[bi]);
                ++bi;
            }
            ++scan;
        }
        while (static_cast<int>(petal.size()) < large_petal && li < loose.size())
            petal.push_back(loose[li++]);
        if (static_cast<int>(petal.size()) != large_petal) break;
        std::sort(petal.begin(), petal.end());
        larges.push_back(std::move(petal));
    }

    std::vector<ElementSet> sets;
    sets.push_back(range_set(1, 2 * a));  // the doubled core itself
    for (const auto& petal : smalls) {
        ElementSet member = range_set(1, a);
        for (int e : petal) member.insert(e);
        sets.push_back(std::move(member));
    }
    for (const auto& petal : larges) {
        ElementSet member = range_set(1, 2 * a);
        for (int e : petal) member.insert(e);
        sets.push_back(std::move(member));
    }
    const int order = family_order(sets.size());
    return Family(n, order, theta, std::move(sets));
}

Family imin_constrained(int n, int k) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("imin_constrained: k must be even and at least 4");
    const int top_core = k / 2 + 2;
    if (n < k + 4) throw std::invalid_argument("imin_constrained: need n >= k + 4");

    const int p1 = k / 2, p2 = k / 2 + 1, p3 = k / 2 + 2;
    std::vector<int> free_pool;
    for (int e = top_core + 1; e <= n; ++e) free_pool.push_back(e);

    std::vector<int> uses(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> in_small(static_cast<std::size_t>(n) + 1, -1);   // small-petal id
    std::vector<int> in_middle(static_cast<std::size_t>(n) + 1, -1);  // middle-petal id

    // Layer k: disjoint petals tiling the pool.
    std::vector<std::vector<int>> small_petals;
    for (std::size_t at = 0; at + static_cast<std::size_t>(p1) <= free_pool.size();
         at += static_cast<std::size_t>(p1)) {
        std::vector<int> petal(free_pool.begin() + static_cast<std::ptrdiff_t>(at),
                               free_pool.begin() + static_cast<std::ptrdiff_t>(at + static_cast<std::size_t>(p1)));
        for (int e : petal) {
            uses[static_cast<std::size_t>(e)] = 1;
            in_small[static_cast<std::size_t>(e)] = static_cast<int>(small_petals.size());
        }
        small_petals.push_back(std::move(petal));
    }

    // Layer k+2: at most one element per small petal, elements still under
    // the two-use capacity, petals disjoint within the layer.
    std::vector<std::vector<int>> middle_petals;
    while (true) {
        std::vector<int> petal;
        std::vector<bool> small_taken(small_petals.size(), false);
        for (int e : free_pool) {
            if (uses[static_cast<std::size_t>(e)] >= 2) continue;
            if (in_middle[static_cast<std::size_t>(e)] >= 0) continue;  // layer petals stay disjoint
            bool taken_this_petal = false;
            for (int x : petal) taken_this_petal |= (x == e);
            if (taken_this_petal) continue;
            const int sp = in_small[static_cast<std::size_t>(e)];
            if (sp >= 0 && small_taken[static_cast<std::size_t>(sp)]) continue;
            petal.push_back(e);
            if (sp >= 0) small_taken[static_cast<std::size_t>(sp)] = true;
            if (static_cast<int>(petal.size()) == p2) break;
        }
        if (static_cast<int>(petal.size()) < p2) break;
        for (int e : petal) {
            uses[static_cast<std::size_t>(e)] += 1;
            in_middle[static_cast<std::size_t>(e)] = static_cast<int>(middle_petals.size());
        }
        middle_petals.push_back(std::move(petal));
    }

    // Layer k+4: overlap with a small petal must be none or a pair taken
    // together, and at most one element per middle petal.
    std::vector<std::vector<int>> outer_petals;
    std::vector<bool> in_outer(static_cast<std::size_t>(n) + 1, false);
    while (true) {
        std::vector<int> petal;
        std::vector<bool> middle_taken(middle_petals.size(), false);
        for (std::size_t sp = 0; sp < small_petals.size() &&
                                 static_cast<int>(petal.size()) + 2 <= p3; ++sp) {
            std::vector<int> pair;
            std::vector<int> pair_middles;
            for (int e : small_petals[sp]) {
                if (uses[static_cast<std::size_t>(e)] >= 2) continue;
                if (in_outer[static_cast<std::size_t>(e)]) continue;
                const int mp = in_middle[static_cast<std::size_t>(e)];
                if (mp >= 0) {
                    if (middle_taken[static_cast<std::size_t>(mp)]) continue;
                    bool dup = false;
                    for (int seen : pair_middles) dup |= (seen == mp);
                    if (dup) continue;
                }
                pair.push_back(e);
                if (mp >= 0) pair_middles.push_back(mp);
                if (pair.size() == 2) break;
            }
            if (pair.size() == 2) {
                petal.insert(petal.end(), pair.begin(), pair.end());
                for (int mp : pair_middles) middle_taken[static_cast<std::size_t>(mp)] = true;
            }
        }
        for (int e : free_pool) {
            if (static_cast<int>(petal.size()) == p3) break;
            if (uses[static_cast<std::size_t>(e)] >= 2) continue;
            if (in_outer[static_cast<std::size_t>(e)]) continue;
            if (in_small[static_cast<std::size_t>(e)] >= 0) continue;
            bool taken_this_petal = false;
            for (int x : petal) taken_this_petal |= (x == e);
            if (taken_this_petal) continue;
            const int mp = in_middle[static_cast<std::size_t>(e)];
            if (mp >= 0 && middle_taken[static_cast<std::size_t>(mp)]) continue;
            petal.push_back(e);
            if (mp >= 0) middle_taken[static_cast<std::size_t>(mp)] = true;
        }
        if (static_cast<int>(petal.size()) < p3) break;
        std::sort(petal.begin(), petal.end());
        for (int e : petal) {
            uses[static_cast<std::size_t>(e)] += 1;
            in_outer[static_cast<std::size_t>(e)] = true;
        }
        outer_petals.push_back(std::move(petal));
    }

    std::vector<ElementSet> sets;
    for (const auto& petal : small_petals) {
        ElementSet member = range_set(1, k / 2);
        for (int e : petal) member.insert(e);
        sets.push_back(std::move(member));
    }
    for (const auto& petal : middle_petals) {
        ElementSet member = range_set(1, k / 2 + 1);
        for (int e : petal) member.insert(e);
        sets.push_back(std::move(member));
    }
    for (const auto& petal : outer_petals) {
        ElementSet member = range_set(1, k / 2 + 2);
        for (int e : petal) member.insert(e);
        sets.push_back(std::move(member));
    }
    if (sets.empty()) throw std::invalid_argument("imin_constrained: no member fits");
    const int order = family_order(sets.size());
    return Family(n, order, Fraction(1, 2), std::move(sets));
}

Family chain_family(int n, const Fraction& theta) {
    const std::int64_t a = theta.num(), b = theta.den();
    if (n < b) throw std::invalid_argument("chain_family: need n >= b");

    std::int64_t k = 0;
    while (a * (k + 1) + (b - a) * (k + 1) * (k + 2) / 2 <= n) ++k;

    std::vector<ElementSet> sets;
    int next_label = static_cast<int>(a) * static_cast<int>(k) + 1;  // chain takes 1..a*k
    for (std::int64_t i = 1; i <= k; ++i) {
        ElementSet member = range_set(1, static_cast<int>(a * i));
        const std::int64_t petal = (b - a) * i;
        for (std::int64_t e = 0; e < petal; ++e) member.insert(next_label++);
        sets.push_back(std::move(member));
    }
    const int order = family_order(sets.size());
    return Family(n, order, theta, std::move(sets));
}

} // namespace fifam

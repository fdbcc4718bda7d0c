#include "fifam/canonical.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace fifam {

namespace {

// Per-set label vector: [size, elements...]; families compare as sorted
// lists of these, lexicographically.
using SetKey = std::vector<int>;
using FamilyKey = std::vector<SetKey>;

struct Labeler {
    const std::vector<ElementSet>& sets;
    std::vector<int> used;                      // used elements, ascending
    std::vector<std::vector<int>> member_sets;  // used-element -> containing set ids
    std::vector<int> heuristic_rank;            // exploration order among used elements
    std::uint64_t budget;
    std::uint64_t nodes = 0;

    std::vector<int> label_of_used;  // position in `used` -> assigned label (0 = unassigned)
    std::vector<int> assignment;     // depth -> position in `used`
    FamilyKey best_key;
    std::vector<int> best_assignment;
    bool have_best = false;

    explicit Labeler(const std::vector<ElementSet>& sets_, std::uint64_t budget_)
        : sets(sets_), budget(budget_) {
        ElementSet all;
        for (const ElementSet& s : sets) all = set_union(all, s);
        used = all.elements();
        member_sets.resize(used.size());
        for (std::size_t u = 0; u < used.size(); ++u)
            for (std::size_t si = 0; si < sets.size(); ++si)
                if (sets[si].contains(used[u])) member_sets[u].push_back(static_cast<int>(si));
        compute_heuristic();
        label_of_used.assign(used.size(), 0);
    }

    // Orders elements by a membership profile so the first descent lands
    // close to the optimum; correctness never depends on this.
    void compute_heuristic() {
        std::vector<std::vector<int>> profile(used.size());
        for (std::size_t u = 0; u < used.size(); ++u) {
            std::vector<int> p;
            for (int si : member_sets[u]) p.push_back(sets[static_cast<std::size_t>(si)].size());
            std::sort(p.begin(), p.end());
            p.insert(p.begin(), -static_cast<int>(member_sets[u].size()));
            profile[u] = std::move(p);
        }
        // One co-membership refinement round.
        std::vector<std::vector<int>> refined(used.size());
        for (std::size_t u = 0; u < used.size(); ++u) {
            std::vector<int> ext = profile[u];
            std::vector<std::vector<int>> neighbor_profiles;
            for (std::size_t v = 0; v < used.size(); ++v) {
                if (v == u) continue;
                int shared = 0;
                std::size_t a = 0, c = 0;
                while (a < member_sets[u].size() && c < member_sets[v].size()) {
                    if (member_sets[u][a] == member_sets[v][c]) { ++shared; ++a; ++c; }
                    else if (member_sets[u][a] < member_sets[v][c]) ++a;
                    else ++c;
                }
                if (shared) {
                    auto np = profile[v];
                    np.insert(np.begin(), -shared);
                    neighbor_profiles.push_back(std::move(np));
                }
            }
            std::sort(neighbor_profiles.begin(), neighbor_profiles.end());
            for (const auto& np : neighbor_profiles) {
                ext.push_back(std::numeric_limits<int>::min());
                ext.insert(ext.end(), np.begin(), np.end());
            }
            refined[u] = std::move(ext);
        }
        std::vector<int> order(used.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (refined[static_cast<std::size_t>(x)] != refined[static_cast<std::size_t>(y)])
                return refined[static_cast<std::size_t>(x)] < refined[static_cast<std::size_t>(y)];
            return x < y;
        });
        heuristic_rank.assign(used.size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i)
            heuristic_rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    }

    // Optimistic family key given the labels assigned so far: every not yet
    // assigned element of a set is scored as if it received the smallest
    // labels still available, which never overstates the final key.
    FamilyKey lower_bound_key(int depth) const {
        FamilyKey key;
        key.reserve(sets.size());
        for (const ElementSet& s : sets) {
            SetKey sk;
            sk.push_back(s.size());
            key.push_back(std::move(sk));
        }
        std::vector<std::vector<int>> known(sets.size());
        for (std::size_t u = 0; u < used.size(); ++u) {
            if (label_of_used[u] == 0) continue;
            for (int si : member_sets[u])
                known[static_cast<std::size_t>(si)].push_back(label_of_used[u]);
        }
        for (std::size_t si = 0; si < sets.size(); ++si) {
            auto& ks = known[si];
            std::sort(ks.begin(), ks.end());
            key[si].insert(key[si].end(), ks.begin(), ks.end());
            int filler = depth + 1;
            for (int extra = sets[si].size() - static_cast<int>(ks.size()); extra > 0; --extra)
                key[si].push_back(filler++);
        }
        std::sort(key.begin(), key.end());
        return key;
    }

    void dfs(int depth) {
        if (++nodes > budget)
            throw CanonicalizationError("canonicalization incomplete: node budget exhausted");
        if (static_cast<std::size_t>(depth) == used.size()) {
            FamilyKey key = lower_bound_key(depth);  // no fillers left: the exact key
            if (!have_best || key < best_key) {
                best_key = std::move(key);
                best_assignment = label_of_used;
                have_best = true;
            }
            return;
        }
        std::vector<int> candidates;
        for (std::size_t u = 0; u < used.size(); ++u)
            if (label_of_used[u] == 0) candidates.push_back(static_cast<int>(u));
        std::sort(candidates.begin(), candidates.end(), [&](int x, int y) {
            return heuristic_rank[static_cast<std::size_t>(x)] <
                   heuristic_rank[static_cast<std::size_t>(y)];
        });
        // Elements with identical membership are interchangeable: trying one
        // of each membership signature is enough.
        std::vector<const std::vector<int>*> tried;
        for (int u : candidates) {
            bool duplicate = false;
            for (const auto* sig : tried)
                if (*sig == member_sets[static_cast<std::size_t>(u)]) { duplicate = true; break; }
            if (duplicate) continue;
            tried.push_back(&member_sets[static_cast<std::size_t>(u)]);

            label_of_used[static_cast<std::size_t>(u)] = depth + 1;
            if (!have_best || lower_bound_key(depth + 1) < best_key) dfs(depth + 1);
            label_of_used[static_cast<std::size_t>(u)] = 0;
        }
    }

    void run() {
        if (used.empty()) { have_best = true; return; }
        dfs(0);
    }
};

} // namespace

std::vector<int> canonical_permutation(const Family& family, std::uint64_t node_budget) {
    Labeler labeler(family.sets(), node_budget);
    labeler.run();
    std::vector<int> sigma(static_cast<std::size_t>(family.n()), 0);
    for (std::size_t u = 0; u < labeler.used.size(); ++u)
        sigma[static_cast<std::size_t>(labeler.used[u] - 1)] = labeler.best_assignment[u];
    int next = static_cast<int>(labeler.used.size());
    for (std::size_t e = 0; e < sigma.size(); ++e)
        if (sigma[e] == 0) sigma[e] = ++next;
    return sigma;
}

Family apply_permutation(const Family& family, const std::vector<int>& sigma) {
    if (sigma.size() != static_cast<std::size_t>(family.n()))
        throw std::invalid_argument("apply_permutation: table size must equal n");
    std::vector<ElementSet> out;
    out.reserve(family.size());
    for (const ElementSet& s : family.sets()) {
        ElementSet image;
        for (int e : s.elements()) image.insert(sigma[static_cast<std::size_t>(e - 1)]);
        out.push_back(std::move(image));
    }
    return Family(family.n(), family.r(), family.theta(), std::move(out));
}

Family canonical_form(const Family& family, std::uint64_t node_budget) {
    Family image = apply_permutation(family, canonical_permutation(family, node_budget));
    // Present the members in canonical order as well.
    std::vector<ElementSet> ordered;
    ordered.reserve(image.size());
    for (int idx : image.sorted_indices()) ordered.push_back(image.set(static_cast<std::size_t>(idx)));
    return Family(image.n(), image.r(), image.theta(), std::move(ordered));
}

std::pair<bool, std::optional<std::vector<int>>> is_isomorphic(const Family& f, const Family& g) {
    if (f.n() != g.n()) throw std::invalid_argument("is_isomorphic: ground sets differ");
    if (!(f.theta() == g.theta()) || f.size() != g.size()) return {false, std::nullopt};

    const std::vector<int> pf = canonical_permutation(f);
    const std::vector<int> pg = canonical_permutation(g);
    if (!apply_permutation(f, pf).same_family(apply_permutation(g, pg)))
        return {false, std::nullopt};

    // sigma = pg^{-1} . pf maps F onto G.
    std::vector<int> inverse_g(pg.size());
    for (std::size_t e = 0; e < pg.size(); ++e)
        inverse_g[static_cast<std::size_t>(pg[e] - 1)] = static_cast<int>(e) + 1;
    std::vector<int> sigma(pf.size());
    for (std::size_t e = 0; e < pf.size(); ++e)
        sigma[e] = inverse_g[static_cast<std::size_t>(pf[e] - 1)];
    return {true, sigma};
}

} // namespace fifam

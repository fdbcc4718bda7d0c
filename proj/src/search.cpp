#include "fifam/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "fifam/bounds.hpp"
#include "fifam/canonical.hpp"
#include "fifam/verify.hpp"

namespace fifam {

namespace {

struct Candidate {
    std::uint64_t mask = 0;
    int size = 0;
};

std::vector<int> elements_of(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

// All subsets of [n] with size >= min_set_size, as bit masks in
// (cardinality, lexicographic) order.
std::vector<Candidate> candidate_pool(int n, int min_set_size) {
    std::vector<Candidate> pool;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const int size = std::popcount(mask);
        if (size >= min_set_size) pool.push_back({mask, size});
    }
    std::sort(pool.begin(), pool.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.size != b.size) return a.size < b.size;
        return elements_of(a.mask) < elements_of(b.mask);
    });
    return pool;
}

ElementSet mask_to_set(std::uint64_t mask) {
    ElementSet s;
    for (int e : elements_of(mask)) s.insert(e);
    return s;
}

Family masks_to_family(int n, int r, const Fraction& theta, const std::vector<Candidate>& pool,
                       const std::vector<int>& picked) {
    std::vector<ElementSet> sets;
    sets.reserve(picked.size());
    for (int idx : picked) sets.push_back(mask_to_set(pool[static_cast<std::size_t>(idx)].mask));
    return Family(n, r, theta, std::move(sets));
}

// Sorted (size, elements) list: a total order on families used for the
// deterministic merge of canonical representatives.
std::vector<std::vector<int>> family_key(const Family& family) {
    std::vector<std::vector<int>> key;
    key.reserve(family.size());
    for (const ElementSet& s : family.sets()) {
        std::vector<int> sk{s.size()};
        for (int e : s.elements()) sk.push_back(e);
        key.push_back(std::move(sk));
    }
    std::sort(key.begin(), key.end());
    return key;
}

struct SearchContext {
    int n = 0;
    int r = 2;
    Fraction theta{1, 2};
    std::vector<Candidate> pool;
    std::vector<std::vector<std::uint64_t>> compatible;  // pairwise-ok bitsets over pool indices
    int depth_cap = 2;            // tuple depth actually checked
    bool collect_all_max = false;
    bool isomorph_reduction = false;
    std::optional<int> early_stop;  // assume_paper_bounds cutoff

    bool pair_ok_masks(const Candidate& a, const Candidate& b) const {
        const int inter = std::popcount(a.mask & b.mask);
        return theta.matches(inter, a.size) || theta.matches(inter, b.size);
    }

    void build_compatibility() {
        const std::size_t m = pool.size();
        const std::size_t words = (m + 63) / 64;
        compatible.assign(m, std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (pair_ok_masks(pool[i], pool[j])) {
                    compatible[i][j / 64] |= std::uint64_t{1} << (j % 64);
                    compatible[j][i / 64] |= std::uint64_t{1} << (i % 64);
                }
    }

    // Every tuple of depth 3..depth_cap that includes the new member must
    // pass. Pairs are guaranteed by the compatibility mask, so testing each
    // intersection against the two smallest sizes in the tuple is exact.
    bool deeper_tuples_ok(const std::vector<int>& picked, const Candidate& next) const {
        if (depth_cap < 3 || picked.empty()) return true;
        return deeper_rec(picked, 0, next.mask, next.size, std::numeric_limits<int>::max(), 2);
    }

    bool deeper_rec(const std::vector<int>& picked, std::size_t from, std::uint64_t inter, int s1,
                    int s2, int tuple_size) const {
        for (std::size_t i = from; i < picked.size(); ++i) {
            const Candidate& cand = pool[static_cast<std::size_t>(picked[i])];
            const std::uint64_t next_inter = inter & cand.mask;
            int n1 = s1, n2 = s2;
            if (cand.size < n1) { n2 = n1; n1 = cand.size; }
            else if (cand.size < n2) n2 = cand.size;
            if (tuple_size >= 3) {
                const int card = std::popcount(next_inter);
                if (!theta.matches(card, n1) && !theta.matches(card, n2)) return false;
            }
            if (tuple_size < depth_cap &&
                !deeper_rec(picked, i + 1, next_inter, n1, n2, tuple_size + 1))
                return false;
        }
        return true;
    }
};

struct BranchOutcome {
    int max_size = 0;
    std::vector<std::vector<int>> best_families;  // picked index lists at max_size
    std::uint64_t nodes = 0;
    bool budget_hit = false;
};

// Explores every family whose smallest candidate index is `root`.
void explore_branch(const SearchContext& ctx, int root,
                    std::optional<std::uint64_t> node_budget, BranchOutcome& out) {
    const std::size_t m = ctx.pool.size();
    const std::size_t words = (m + 63) / 64;

    std::vector<int> picked{root};
    std::vector<std::vector<std::uint64_t>> live_stack;
    live_stack.push_back(ctx.compatible[static_cast<std::size_t>(root)]);

    auto record = [&]() {
        const int size = static_cast<int>(picked.size());
        if (size > out.max_size) {
            out.max_size = size;
            out.best_families.clear();
        }
        if (size == out.max_size && (ctx.collect_all_max || out.best_families.empty()))
            out.best_families.push_back(picked);
    };

    auto rec = [&](auto&& self) -> void {
        ++out.nodes;
        if (node_budget && out.nodes > *node_budget) {
            out.budget_hit = true;
            return;
        }
        record();
        if (ctx.early_stop && out.max_size >= *ctx.early_stop && !ctx.collect_all_max) return;

        // Index the stack afresh on every access: pushes below may reallocate.
        const std::size_t depth = live_stack.size() - 1;
        for (std::size_t j = static_cast<std::size_t>(picked.back()) + 1; j < m; ++j) {
            if (!((live_stack[depth][j / 64] >> (j % 64)) & 1)) continue;
            if (!ctx.deeper_tuples_ok(picked, ctx.pool[j])) continue;
            picked.push_back(static_cast<int>(j));
            if (ctx.isomorph_reduction) {
                Family partial = masks_to_family(ctx.n, ctx.r, ctx.theta, ctx.pool, picked);
                if (!canonical_form(partial).same_family(partial)) {
                    picked.pop_back();
                    continue;
                }
            }
            std::vector<std::uint64_t> next_live(words);
            const auto& cj = ctx.compatible[j];
            for (std::size_t w = 0; w < words; ++w) next_live[w] = live_stack[depth][w] & cj[w];
            live_stack.push_back(std::move(next_live));
            self(self);
            live_stack.pop_back();
            picked.pop_back();
            if (out.budget_hit) return;
        }
    };
    rec(rec);
}

SearchResult run_search(int n, const Fraction& theta, int r, const SearchOptions& opts,
                        bool collect_all_max) {
    if (n < 1) throw std::invalid_argument("search: need n >= 1");
    if (n > 20) throw std::invalid_argument("search: candidate pool too large beyond n = 20");
    if (r < 2) throw std::invalid_argument("search: closure order must be at least 2");
    if (n > opts.exhaustive_limit && !opts.node_budget)
        throw std::invalid_argument("search: n beyond the exhaustive limit needs a node budget");

    SearchContext ctx;
    ctx.n = n;
    ctx.r = r;
    ctx.theta = theta;
    ctx.pool = candidate_pool(n, opts.min_set_size);
    ctx.depth_cap = opts.max_r_checked ? std::min(r, *opts.max_r_checked) : r;
    ctx.collect_all_max = collect_all_max;
    ctx.isomorph_reduction = opts.isomorph_reduction;
    ctx.build_compatibility();

    if (opts.assume_paper_bounds && opts.min_set_size == 2 && n >= 4) {
        if (theta.num() == 1 && theta.den() == 2) {
            ctx.early_stop = static_cast<int>(bisection_bound(n));
        } else {
            const auto with = main_upper_bound(n, theta, true).floored;
            const auto without = main_upper_bound(n, theta, false).floored;
            ctx.early_stop = static_cast<int>(std::max(with, without));
        }
    }

    const int m = static_cast<int>(ctx.pool.size());
    std::vector<BranchOutcome> outcomes(static_cast<std::size_t>(m));

    // A finite budget forces a sequential scan so the cutoff point is
    // deterministic; unlimited runs may fan root branches out to threads
    // (per-branch outcomes do not depend on the schedule).
    if (opts.node_budget) {
        std::uint64_t remaining = *opts.node_budget;
        for (int root = 0; root < m; ++root) {
            auto& out = outcomes[static_cast<std::size_t>(root)];
            if (remaining == 0) {
                out.budget_hit = true;
                break;
            }
            explore_branch(ctx, root, remaining, out);
            remaining = out.nodes >= remaining ? 0 : remaining - out.nodes;
        }
    } else if (opts.parallel_width <= 1) {
        for (int root = 0; root < m; ++root)
            explore_branch(ctx, root, std::nullopt, outcomes[static_cast<std::size_t>(root)]);
    } else {
        std::atomic<int> next_root{0};
        auto worker = [&]() {
            while (true) {
                const int root = next_root.fetch_add(1);
                if (root >= m) break;
                explore_branch(ctx, root, std::nullopt,
                               outcomes[static_cast<std::size_t>(root)]);
            }
        };
        std::vector<std::thread> threads;
        for (int w = 0; w < opts.parallel_width; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    SearchResult result;
    result.complete = true;
    result.nodes_explored = 1;  // the empty family
    for (const auto& out : outcomes) {
        result.nodes_explored += out.nodes;
        if (out.budget_hit) result.complete = false;
        result.max_size = std::max(result.max_size, out.max_size);
    }
    if (result.max_size == 0) return result;

    // Deterministic merge: canonicalize the winners and keep one per class.
    std::map<std::vector<std::vector<int>>, Family> classes;
    for (const auto& out : outcomes) {
        if (out.max_size != result.max_size) continue;
        for (const auto& picked : out.best_families) {
            Family canon = canonical_form(masks_to_family(n, r, theta, ctx.pool, picked));
            auto key = family_key(canon);
            classes.emplace(std::move(key), std::move(canon));
        }
    }
    if (collect_all_max) {
        for (auto& [key, fam] : classes) result.witnesses.push_back(fam);
    } else {
        result.witnesses.push_back(classes.begin()->second);
    }
    return result;
}

} // namespace

SearchResult max_family_search(int n, const Fraction& theta, int r, const SearchOptions& opts) {
    return run_search(n, theta, r, opts, false);
}

SearchResult enumerate_maximum_families(int n, const Fraction& theta, int r,
                                        const SearchOptions& opts) {
    return run_search(n, theta, r, opts, true);
}

int oracle_max_family(int n, const Fraction& theta, int r, int min_set_size) {
    if (n > 4) throw std::invalid_argument("oracle_max_family: only n <= 4");
    if (n < 1) throw std::invalid_argument("oracle_max_family: need n >= 1");

    // Plain sorted-integer-vector representation, no bit tricks, no pruning
    // beyond feasibility of each extension.
    std::vector<std::vector<int>> pool;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> elems;
        for (int e = 0; e < n; ++e)
            if ((mask >> e) & 1) elems.push_back(e + 1);
        if (static_cast<int>(elems.size()) >= min_set_size) pool.push_back(std::move(elems));
    }
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    auto intersect = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    auto theta_matches = [&](std::size_t inter, std::size_t size) {
        return theta.den() * static_cast<std::int64_t>(inter) ==
               theta.num() * static_cast<std::int64_t>(size);
    };

    std::vector<const std::vector<int>*> current;
    int best = 0;

    // Every tuple containing `next`, up to depth r, must pass.
    auto extension_ok = [&](const std::vector<int>& next) {
        std::vector<const std::vector<int>*> chosen;
        auto rec = [&](auto&& self, std::size_t from) -> bool {
            if (!chosen.empty()) {
                std::vector<int> inter = next;
                for (const auto* s : chosen) inter = intersect(inter, *s);
                bool ok = theta_matches(inter.size(), next.size());
                for (const auto* s : chosen) ok = ok || theta_matches(inter.size(), s->size());
                if (!ok) return false;
            }
            if (static_cast<int>(chosen.size()) + 1 >= r) return true;
            for (std::size_t i = from; i < current.size(); ++i) {
                chosen.push_back(current[i]);
                const bool ok = self(self, i + 1);
                chosen.pop_back();
                if (!ok) return false;
            }
            return true;
        };
        return rec(rec, 0);
    };

    auto rec = [&](auto&& self, std::size_t from) -> void {
        best = std::max(best, static_cast<int>(current.size()));
        for (std::size_t j = from; j < pool.size(); ++j) {
            if (!extension_ok(pool[j])) continue;
            current.push_back(&pool[j]);
            self(self, j + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

SearchResult chain_search(int n, const Fraction& theta, int r, const SearchOptions& opts) {
    if (n < 1) throw std::invalid_argument("chain_search: need n >= 1");
    if (n > 20) throw std::invalid_argument("chain_search: candidate pool too large beyond n = 20");
    if (n > 8 && !opts.node_budget)
        throw std::invalid_argument("chain_search: n beyond 8 needs a node budget");

    SearchContext ctx;
    ctx.n = n;
    ctx.r = r;
    ctx.theta = theta;
    ctx.pool = candidate_pool(n, opts.min_set_size);
    ctx.depth_cap = opts.max_r_checked ? std::min(r, *opts.max_r_checked) : r;
    ctx.build_compatibility();

    SearchResult result;
    result.complete = true;
    std::vector<int> picked;
    std::vector<int> best_picked;

    auto rec = [&](auto&& self) -> void {
        ++result.nodes_explored;
        if (opts.node_budget && result.nodes_explored > *opts.node_budget) {
            result.complete = false;
            return;
        }
        if (static_cast<int>(picked.size()) > result.max_size) {
            result.max_size = static_cast<int>(picked.size());
            best_picked = picked;
        }
        const int last_size =
            picked.empty() ? 0 : ctx.pool[static_cast<std::size_t>(picked.back())].size;
        const std::size_t from = picked.empty() ? 0 : static_cast<std::size_t>(picked.back()) + 1;
        for (std::size_t j = from; j < ctx.pool.size(); ++j) {
            const Candidate& cand = ctx.pool[j];
            if (cand.size <= last_size) continue;
            bool pairs = true;
            for (int i : picked)
                pairs = pairs && ctx.pair_ok_masks(ctx.pool[static_cast<std::size_t>(i)], cand);
            if (!pairs || !ctx.deeper_tuples_ok(picked, cand)) continue;
            picked.push_back(static_cast<int>(j));
            self(self);
            picked.pop_back();
            if (!result.complete) return;
        }
    };
    rec(rec);

    if (!best_picked.empty())
        result.witnesses.push_back(masks_to_family(n, r, theta, ctx.pool, best_picked));
    return result;
}

} // namespace fifam

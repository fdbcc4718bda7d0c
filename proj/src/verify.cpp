#include "fifam/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace fifam {

bool pair_ok(const ElementSet& a, const ElementSet& b, const Fraction& theta) {
    if (a.empty() || b.empty()) throw std::invalid_argument("pair_ok: sets must be nonempty");
    if (a == b) throw std::invalid_argument("pair_ok: sets must be distinct");
    const std::int64_t inter = intersection_size(a, b);
    return theta.matches(inter, a.size()) || theta.matches(inter, b.size());
}

bool tuple_ok(const std::vector<ElementSet>& sets, const Fraction& theta) {
    if (sets.size() < 2) throw std::invalid_argument("tuple_ok: need at least two sets");
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (sets[i] == sets[j]) throw std::invalid_argument("tuple_ok: sets must be distinct");
    ElementSet inter = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) inter = set_intersection(inter, sets[i]);
    const std::int64_t card = inter.size();
    for (const ElementSet& s : sets)
        if (theta.matches(card, s.size())) return true;
    return false;
}

std::pair<bool, std::optional<ElementSet>> is_sunflower(const std::vector<ElementSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("is_sunflower: empty list");
    ElementSet core = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) core = set_intersection(core, sets[i]);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (set_intersection(sets[i], sets[j]) != core) return {false, std::nullopt};
    return {true, core};
}

bool is_intersecting(const Family& family) {
    const auto& sets = family.sets();
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!sets_intersect(sets[i], sets[j])) return false;
    return true;
}

namespace {

// Number of t-subsets of m sets summed over 3 <= t <= r, saturating at `cap`.
std::uint64_t deep_tuple_count(int m, int r, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (int t = 3; t <= r; ++t) {
        std::uint64_t binom = 1;
        for (int i = 0; i < t; ++i) {
            binom = binom * static_cast<std::uint64_t>(m - i) / static_cast<std::uint64_t>(i + 1);
            if (binom > cap) return cap + 1;
        }
        total += binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

// Enumerates t-subsets in lexicographic index order for 3 <= t <= r, testing
// each running intersection against the two smallest member sizes in the
// tuple. Assumes all pairs already passed.
std::optional<Verdict::Violation> scan_deep_tuples_naive(const Family& family, int r) {
    const auto& sets = family.sets();
    const int m = static_cast<int>(sets.size());
    std::vector<int> sizes(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) sizes[i] = sets[i].size();
    const Fraction& theta = family.theta();

    std::vector<int> chosen;
    std::vector<ElementSet> inters;  // running intersections along the chosen prefix
    std::optional<Verdict::Violation> found;

    // Depth-first lexicographic enumeration at exactly depth t.
    auto rec = [&](auto&& self, int t, int next) -> bool {
        if (static_cast<int>(chosen.size()) == t) {
            const ElementSet& inter = inters.back();
            const std::int64_t card = inter.size();
            int s1 = sizes[static_cast<std::size_t>(chosen[0])];
            int s2 = sizes[static_cast<std::size_t>(chosen[1])];
            if (s2 < s1) std::swap(s1, s2);
            for (std::size_t i = 2; i < chosen.size(); ++i) {
                const int s = sizes[static_cast<std::size_t>(chosen[i])];
                if (s < s1) { s2 = s1; s1 = s; }
                else if (s < s2) s2 = s;
            }
            if (!theta.matches(card, s1) && !theta.matches(card, s2)) {
                found = Verdict::Violation{chosen, card};
                return true;
            }
            return false;
        }
        const int remaining = t - static_cast<int>(chosen.size());
        for (int j = next; j + remaining <= m; ++j) {
            chosen.push_back(j);
            if (chosen.size() == 1) inters.push_back(sets[static_cast<std::size_t>(j)]);
            else inters.push_back(set_intersection(inters.back(), sets[static_cast<std::size_t>(j)]));
            if (self(self, t, j + 1)) return true;
            chosen.pop_back();
            inters.pop_back();
        }
        return false;
    };

    for (int t = 3; t <= r; ++t)
        if (rec(rec, t, 0)) return found;
    return std::nullopt;
}

// Verdict-equivalent scan for workloads where tuple enumeration is hopeless.
//
// A t-tuple check depends only on (intersection value, set of member sizes
// present). Breadth-first closure over those states, layered by t, reaches
// every relevant state; adding a set already accounted for leaves the state
// unchanged, so each kept state genuinely corresponds to some tuple of
// distinct members. A new state whose size set contains an earlier state's
// size set at the same intersection is dropped: the earlier state fails
// whenever the new one would (fewer admissible targets), and its extensions
// dominate the new state's extensions at no greater depth, so dropping keeps
// the verdict intact while bounding the state space.
std::optional<Verdict::Violation> scan_deep_tuples_lattice(const Family& family, int r,
                                                           std::size_t state_budget) {
    const auto& sets = family.sets();
    const Fraction& theta = family.theta();

    std::vector<std::int64_t> sorted_sizes;
    std::map<int, int> size_rank;
    for (const ElementSet& s : sets) size_rank[s.size()] = 0;
    {
        int rank = 0;
        for (auto& [sz, rk] : size_rank) { rk = rank++; sorted_sizes.push_back(sz); }
    }
    if (sorted_sizes.size() > 63)
        throw std::runtime_error("is_r_closed: too many distinct sizes for lattice scan");

    struct State {
        ElementSet inter;
        std::uint64_t size_mask;
        int parent;   // index into the state arrays, -1 for a pair seed
        int added;    // set index that produced this state
        int other;    // for pair seeds, the second set index
    };

    auto check = [&](const ElementSet& inter, std::uint64_t size_mask) {
        const std::int64_t card = inter.size();
        for (std::size_t k = 0; k < sorted_sizes.size(); ++k)
            if ((size_mask >> k) & 1 && theta.matches(card, sorted_sizes[k])) return true;
        return false;
    };

    std::vector<State> states;
    // Per intersection value: the size masks kept so far (none a superset of
    // an earlier one at insertion time).
    std::unordered_map<ElementSet, std::vector<std::uint64_t>, ElementSetHash> seen;
    std::vector<int> frontier;

    auto dominated = [&](const ElementSet& inter, std::uint64_t mask) {
        auto it = seen.find(inter);
        if (it == seen.end()) return false;
        for (std::uint64_t kept : it->second)
            if ((kept & mask) == kept) return true;
        return false;
    };

    auto reconstruct = [&](int state_idx, std::int64_t card) {
        std::vector<int> indices;
        int cur = state_idx;
        while (cur >= 0) {
            indices.push_back(states[static_cast<std::size_t>(cur)].added);
            const int parent = states[static_cast<std::size_t>(cur)].parent;
            if (parent < 0) {
                indices.push_back(states[static_cast<std::size_t>(cur)].other);
                break;
            }
            cur = parent;
        }
        std::sort(indices.begin(), indices.end());
        return Verdict::Violation{indices, card};
    };

    // t = 2 layer: all pairs, in lexicographic order.
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            ElementSet inter = set_intersection(sets[i], sets[j]);
            std::uint64_t mask = 0;
            mask |= std::uint64_t{1} << size_rank[sets[i].size()];
            mask |= std::uint64_t{1} << size_rank[sets[j].size()];
            if (!check(inter, mask))
                return Verdict::Violation{{static_cast<int>(i), static_cast<int>(j)},
                                          inter.size()};
            if (dominated(inter, mask)) continue;
            const int id = static_cast<int>(states.size());
            seen[inter].push_back(mask);
            states.push_back(State{std::move(inter), mask, -1, static_cast<int>(j),
                                   static_cast<int>(i)});
            frontier.push_back(id);
        }
    }

    for (int t = 3; t <= r && !frontier.empty(); ++t) {
        std::vector<int> next_frontier;
        for (int sid : frontier) {
            for (std::size_t k = 0; k < sets.size(); ++k) {
                const State& st = states[static_cast<std::size_t>(sid)];
                ElementSet inter = set_intersection(st.inter, sets[k]);
                const std::uint64_t mask = st.size_mask |
                                           (std::uint64_t{1} << size_rank[sets[k].size()]);
                if (mask == st.size_mask && inter == st.inter) continue;  // absorbed
                if (dominated(inter, mask)) continue;
                const std::int64_t card = inter.size();
                const int id = static_cast<int>(states.size());
                seen[inter].push_back(mask);
                states.push_back(State{std::move(inter), mask, sid, static_cast<int>(k), -1});
                if (!check(states.back().inter, mask)) return reconstruct(id, card);
                next_frontier.push_back(id);
                if (states.size() > state_budget)
                    throw std::runtime_error("is_r_closed: lattice scan exceeded state budget");
            }
        }
        frontier = std::move(next_frontier);
    }
    return std::nullopt;
}

} // namespace

Verdict is_r_closed(const Family& family, int r) {
    const auto& sets = family.sets();
    const int m = static_cast<int>(sets.size());
    const Fraction& theta = family.theta();
    const int depth = std::min(r, m);

    // Pairs first, in lexicographic order; deeper scans may assume they pass.
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const std::int64_t inter =
                intersection_size(sets[static_cast<std::size_t>(i)], sets[static_cast<std::size_t>(j)]);
            if (!theta.matches(inter, sets[static_cast<std::size_t>(i)].size()) &&
                !theta.matches(inter, sets[static_cast<std::size_t>(j)].size()))
                return Verdict{false, Verdict::Violation{{i, j}, inter}};
        }
    }
    if (depth < 3) return Verdict{};

    constexpr std::uint64_t kNaiveTupleLimit = 2'000'000;
    std::optional<Verdict::Violation> violation;
    if (deep_tuple_count(m, depth, kNaiveTupleLimit) <= kNaiveTupleLimit)
        violation = scan_deep_tuples_naive(family, depth);
    else
        violation = scan_deep_tuples_lattice(family, depth, 4'000'000);

    if (violation) return Verdict{false, std::move(violation)};
    return Verdict{};
}

Verdict is_r_closed(const Family& family) { return is_r_closed(family, family.r()); }

} // namespace fifam

#ifndef FIFAM_SEARCH_HPP
#define FIFAM_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fifam/family.hpp"

namespace fifam {

struct SearchOptions {
    int min_set_size = 1;                    // smallest admissible member size
    std::optional<int> max_r_checked;        // cap on tuple depth; nullopt = up to r
    bool isomorph_reduction = false;         // orderly pruning to one labeling per orbit
    std::optional<std::uint64_t> node_budget;  // nullopt = unlimited (exhaustive range only)
    int parallel_width = 1;                  // root-level branch fan-out
    bool assume_paper_bounds = false;        // stop once the proven bound is attained
    int exhaustive_limit = 6;                // largest n allowed without a budget
};

struct SearchResult {
    int max_size = 0;
    std::vector<Family> witnesses;   // canonical representatives, sorted
    bool complete = false;           // true iff the whole space was covered
    std::uint64_t nodes_explored = 0;
};

/// Maximum size of a closed family over [n]: depth-first search over the
/// candidate pool (subsets of [n] of admissible size, in (cardinality, lex)
/// order), extending a partial family only when every new tuple up to the
/// closure depth passes. Members are added in increasing candidate order, so
/// each family is visited exactly once; subfamilies of closed families are
/// closed, which is what makes the subset tree complete. Deterministic for
/// any parallel width.
SearchResult max_family_search(int n, const Fraction& theta, int r, const SearchOptions& opts);

/// Same search, collecting every maximum-size family and reducing the
/// collection to canonical representatives, one per isomorphism class.
SearchResult enumerate_maximum_families(int n, const Fraction& theta, int r,
                                        const SearchOptions& opts);

/// Cross-validation oracle: plain enumeration of every admissible family by
/// include/skip recursion with nothing but the closure feasibility test, kept
/// deliberately separate from the search path. Only for n <= 4.
int oracle_max_family(int n, const Fraction& theta, int r, int min_set_size);

/// Maximum size of a closed family whose member sizes strictly increase (at
/// most one member per size). Exhaustive for n <= 8; larger n needs a budget
/// and may come back incomplete.
SearchResult chain_search(int n, const Fraction& theta, int r, const SearchOptions& opts = {});

} // namespace fifam

#endif

#ifndef FIFAM_CONSTRUCTIONS_HPP
#define FIFAM_CONSTRUCTIONS_HPP

#include <optional>
#include <vector>

#include "fifam/family.hpp"

namespace fifam {

/// One layer of a nested-core sunflower construction: member size (a multiple
/// of the fraction's denominator) and how many members to place, where a
/// missing count means "as many as fit".
struct LayerSpec {
    int size = 0;
    std::optional<int> count;  // nullopt = max

    static LayerSpec max_fill(int size) { return LayerSpec{size, std::nullopt}; }
    static LayerSpec exactly(int size, int count) { return LayerSpec{size, count}; }
};

/// The extremal half-intersecting family over [n]: all pairs {1,x}, plus the
/// quadruples {1,2,x,x+1} covering the remaining elements two at a time.
/// Size is exactly floor(3n/2) - 2 and the family is closed at every order.
Family bisection_max(int n);

/// The half-intersecting family read off a Sylvester-Hadamard matrix of order
/// m (m a power of two): stack [H H], [H -H], [H -J], drop the first and
/// (2m+1)th rows, and take each remaining row's +1 positions as a member of a
/// family over [2m]. Yields 3m - 2 members that pass every pairwise check;
/// for m >= 4 some triple fails, so the family is not 3-closed.
Family hadamard_family(int m);

/// Nested-core layered sunflowers: layer j's members share a core made of the
/// first theta*size_j chain elements, and all petals across the whole family
/// are pairwise disjoint, drawn from outside the top core in ascending label
/// order (smaller layers first). Closed at every order by construction.
Family layered_sunflower(int n, const Fraction& theta, const std::vector<LayerSpec>& layers);

/// Two layers of sizes b and 2b with nested cores, where petals of the large
/// layer reuse the small layer's petal elements in blocks of a (so any
/// small/large pair of members meets in a or 2a elements), plus the doubled
/// core itself as a member. Closed at every order.
Family two_layer_shared(int n, const Fraction& theta);

/// Three half-intersecting layers of sizes k, k+2, k+4 (k >= 4 even) with
/// nested cores; free elements are assigned to at most two petals under the
/// overlap rules that keep every pairwise intersection valid (adjacent layers
/// share at most one element per petal pair, outer layers share none or a
/// pair block). Greedy and deterministic; the achieved size is reported by
/// the caller rather than promised.
Family imin_constrained(int n, int k);

/// Tower of members of sizes b, 2b, ..., kb whose cores grow along a fixed
/// chain, with k maximal such that a*k + (b-a)*k(k+1)/2 <= n. Any smaller
/// member meets any larger one in exactly theta times its own size.
Family chain_family(int n, const Fraction& theta);

} // namespace fifam

#endif

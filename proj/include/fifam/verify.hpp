#ifndef FIFAM_VERIFY_HPP
#define FIFAM_VERIFY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fifam/family.hpp"

namespace fifam {

/// True iff |A ∩ B| equals theta|A| or theta|B|, in exact integer arithmetic.
/// A and B must be distinct and nonempty.
bool pair_ok(const ElementSet& a, const ElementSet& b, const Fraction& theta);

/// True iff the intersection of all t >= 2 distinct sets has cardinality
/// theta|A_i| for some member A_i.
bool tuple_ok(const std::vector<ElementSet>& sets, const Fraction& theta);

/// Checks whether every pairwise intersection equals the global intersection;
/// returns the common core on success. A singleton list is a sunflower whose
/// core is the set itself.
std::pair<bool, std::optional<ElementSet>> is_sunflower(const std::vector<ElementSet>& sets);

/// True iff every pair of members meets.
bool is_intersecting(const Family& family);

/// Full closure check: every t-subset with 2 <= t <= min(r, |F|) must satisfy
/// tuple_ok. Small workloads are enumerated in (t ascending, lexicographic
/// index) order, which pins the witness; once all pairs pass, each deeper
/// tuple is tested against the two smallest member sizes only, which provably
/// agrees with testing against every member. Workloads whose tuple count
/// explodes (large r) run through an intersection-lattice scan that reaches
/// the same verdict without enumerating tuples.
Verdict is_r_closed(const Family& family);

/// Same check with an explicit closure order overriding family.r().
Verdict is_r_closed(const Family& family, int r);

} // namespace fifam

#endif

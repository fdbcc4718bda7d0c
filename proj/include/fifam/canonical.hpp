#ifndef FIFAM_CANONICAL_HPP
#define FIFAM_CANONICAL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fifam/family.hpp"

namespace fifam {

/// Raised when the canonical labeling search exceeds its node budget.
class CanonicalizationError : public std::runtime_error {
public:
    explicit CanonicalizationError(const std::string& message) : std::runtime_error(message) {}
};

/// Distinguished representative of the family's orbit under relabelings of
/// [n]: the relabeling minimizing the sorted list of members under the
/// (cardinality, lexicographic) member order. Idempotent; two families are
/// isomorphic exactly when their canonical forms hold the same sets.
///
/// Exact search: labels are assigned to used elements one at a time, ordered
/// by a membership-profile heuristic, pruning any branch whose optimistic
/// completion cannot beat the best complete labeling found so far, and
/// collapsing interchangeable elements (identical membership). Throws
/// CanonicalizationError if the node budget runs out.
Family canonical_form(const Family& family, std::uint64_t node_budget = 2'000'000);

/// The permutation (1-based image table) realizing canonical_form.
std::vector<int> canonical_permutation(const Family& family,
                                       std::uint64_t node_budget = 2'000'000);

/// Isomorphism test through canonical forms; on success the witness sigma
/// satisfies sigma(F) = G as set families. Ground sets must agree.
std::pair<bool, std::optional<std::vector<int>>> is_isomorphic(const Family& f, const Family& g);

/// Applies a relabeling (1-based image table of size n) to every member.
Family apply_permutation(const Family& family, const std::vector<int>& sigma);

} // namespace fifam

#endif

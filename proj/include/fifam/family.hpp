#ifndef FIFAM_FAMILY_HPP
#define FIFAM_FAMILY_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fifam/element_set.hpp"
#include "fifam/fraction.hpp"

namespace fifam {

/// A set family over the ground set [n] together with its intersection
/// fraction theta and the closure order r it is meant to satisfy.
///
/// Members are distinct and nonempty; their stored order carries no meaning
/// (two families are equal when they hold the same sets), but it is preserved
/// through serialization and used to index verification witnesses.
class Family {
public:
    Family(int n, int r, Fraction theta, std::vector<ElementSet> sets)
        : n_(n), r_(r), theta_(theta), sets_(std::move(sets)) {
        if (n_ < 1) throw std::invalid_argument("family: ground-set size must be positive");
        if (r_ < 2) throw std::invalid_argument("family: closure order r must be at least 2");
        std::unordered_set<ElementSet, ElementSetHash> seen;
        for (const ElementSet& s : sets_) {
            if (s.empty()) throw std::invalid_argument("family: empty member set");
            if (s.max_element() > n_)
                throw std::invalid_argument("family: element " + std::to_string(s.max_element()) +
                                            " exceeds ground-set size " + std::to_string(n_));
            if (!seen.insert(s).second)
                throw std::invalid_argument("family: duplicate member set");
        }
    }

    int n() const { return n_; }
    int r() const { return r_; }
    const Fraction& theta() const { return theta_; }
    const std::vector<ElementSet>& sets() const { return sets_; }
    const ElementSet& set(std::size_t i) const { return sets_[i]; }
    std::size_t size() const { return sets_.size(); }

    /// Subfamily holding the members at the given indices, in that order.
    Family subfamily(const std::vector<int>& indices) const {
        std::vector<ElementSet> subset;
        subset.reserve(indices.size());
        for (int i : indices) subset.push_back(sets_.at(static_cast<std::size_t>(i)));
        return Family(n_, r_, theta_, std::move(subset));
    }

    /// Same members, ignoring order; n and theta must also agree.
    bool same_family(const Family& other) const {
        if (n_ != other.n_ || !(theta_ == other.theta_) || sets_.size() != other.sets_.size())
            return false;
        std::unordered_set<ElementSet, ElementSetHash> mine(sets_.begin(), sets_.end());
        for (const ElementSet& s : other.sets_)
            if (!mine.count(s)) return false;
        return true;
    }

    /// Indices sorted by (cardinality, lexicographic) member order.
    std::vector<int> sorted_indices() const {
        std::vector<int> idx(sets_.size());
        for (std::size_t i = 0; i < sets_.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int i, int j) {
            return size_lex_less(sets_[static_cast<std::size_t>(i)], sets_[static_cast<std::size_t>(j)]);
        });
        return idx;
    }

private:
    int n_;
    int r_;
    Fraction theta_;
    std::vector<ElementSet> sets_;
};

/// Outcome of a closure check. On failure, `violation` names the offending
/// tuple (indices into the family's stored order) and its intersection size.
struct Verdict {
    struct Violation {
        std::vector<int> indices;
        std::int64_t intersection_size = 0;
    };

    bool ok = true;
    std::optional<Violation> violation;

    explicit operator bool() const { return ok; }
};

} // namespace fifam

#endif

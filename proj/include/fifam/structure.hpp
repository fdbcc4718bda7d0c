#ifndef FIFAM_STRUCTURE_HPP
#define FIFAM_STRUCTURE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fifam/family.hpp"
#include "fifam/verify.hpp"

namespace fifam {

/// Raised when a structural operation is invoked on a family that fails its
/// entry requirements (closure order below 3, or a failed closure check,
/// whose verdict is attached when available).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& message,
                               std::optional<Verdict> verdict = std::nullopt)
        : std::runtime_error(message), verdict_(std::move(verdict)) {}
    const std::optional<Verdict>& verdict() const { return verdict_; }

private:
    std::optional<Verdict> verdict_;
};

/// Structural decomposition of a closed family: occurring sizes split into
/// normal ones (every member of that size has an intersector at least as
/// large meeting it in exactly theta times its size) and exceptional ones
/// (necessarily singleton size classes), the per-size cores, the at most one
/// removable member matched by the exceptional-member criteria, and the
/// remainder F*.
struct StructureReport {
    std::vector<int> sizes;                   // S, ascending
    std::vector<int> normal_sizes;            // sizes whose members all have intersectors
    std::vector<int> exceptional_sizes;       // the rest; each holds exactly one member
    int i_min = 0;
    std::optional<int> i_max;                 // largest normal size, when any
    std::map<int, ElementSet> core_by_size;   // per normal size
    std::optional<int> e_nor;                 // normal member whose petal meets the top core
    std::optional<int> e_exc;                 // small exceptional member containing the top core
    std::optional<int> e_theta;               // member whose size b does not divide
    std::vector<int> f_star;                  // indices of F*, in stored order

    /// The single removed index, when an exceptional member exists.
    std::optional<int> removed_index() const {
        if (e_nor) return e_nor;
        if (e_exc) return e_exc;
        return e_theta;
    }
};

/// Sizes grouped by powers of 1/theta above the minimum size of F*:
/// level 0 holds exactly i_min, level k the sizes in
/// (i_min (b/a)^{k-1}, i_min (b/a)^k]. Bounds are exact rationals.
struct LevelPartition {
    struct Level {
        int k = 0;
        std::string lower;            // exclusive bound, "num/den" (empty for level 0)
        std::string upper;            // inclusive bound (equals i_min at level 0)
        std::vector<int> sizes;       // sizes of F* falling in this level
        ElementSet y;                 // union of those members, minus the top core
    };

    ElementSet top_core;              // empty when F* has no normal size
    std::vector<Level> levels;
};

/// One executable structural statement with its outcome.
struct AuditReport {
    struct Check {
        std::string name;
        bool pass = true;
        std::string details;
    };

    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Indices of members at least as large as the given one that meet it in
/// exactly theta times its size. Requires a closed family.
std::vector<int> tor(const Family& family, int index);

/// Common intersection of the member with each of its intersectors; defined
/// only when tor() is nonempty. Verifies the common-intersection property
/// directly and throws std::logic_error if it fails (which would mean the
/// closure precondition was violated).
ElementSet core_of(const Family& family, int index);

/// Member minus its core.
ElementSet petal_of(const Family& family, int index);

/// Full decomposition. Verifies the family first: requires r >= 3 and a
/// passing closure check, otherwise throws PreconditionError.
StructureReport classify(const Family& family);

/// Level grouping of F*, built from a classify() report.
LevelPartition partition_levels(const Family& family);
LevelPartition partition_levels(const Family& family, const StructureReport& report);

/// Executes every structural statement as a check; they must all pass on any
/// genuinely closed family, so a failure here points at an implementation bug.
AuditReport audit(const Family& family);

} // namespace fifam

#endif

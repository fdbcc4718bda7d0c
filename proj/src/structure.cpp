#include "fifam/structure.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace fifam {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::string describe_set(const ElementSet& s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int e : s.elements()) {
        if (!first) out << ',';
        out << e;
        first = false;
    }
    out << '}';
    return out.str();
}

std::map<int, std::vector<int>> size_classes(const Family& family) {
    std::map<int, std::vector<int>> classes;
    for (std::size_t i = 0; i < family.size(); ++i)
        classes[family.set(i).size()].push_back(static_cast<int>(i));
    return classes;
}

// Level index of size i relative to i_min: 0 iff i == i_min, else the
// smallest k with i * a^k <= i_min * b^k.
int level_of(int i, int i_min, const Fraction& theta) {
    if (i == i_min) return 0;
    BigInt lhs = i, rhs = i_min;
    int k = 0;
    do {
        ++k;
        lhs *= theta.num();
        rhs *= theta.den();
    } while (lhs > rhs);
    return k;
}

std::string rational_string(const BigInt& num, const BigInt& den) {
    BigInt g = boost::multiprecision::gcd(num, den);
    const BigInt n = num / g, d = den / g;
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

} // namespace

std::vector<int> tor(const Family& family, int index) {
    const ElementSet& a = family.set(static_cast<std::size_t>(index));
    const int asize = a.size();
    std::vector<int> out;
    for (std::size_t j = 0; j < family.size(); ++j) {
        if (static_cast<int>(j) == index) continue;
        const ElementSet& b = family.set(j);
        if (b.size() < asize) continue;
        if (family.theta().matches(intersection_size(a, b), asize))
            out.push_back(static_cast<int>(j));
    }
    return out;
}

ElementSet core_of(const Family& family, int index) {
    const std::vector<int> intersectors = tor(family, index);
    if (intersectors.empty())
        throw std::domain_error("core undefined: member has no intersectors");
    const ElementSet& a = family.set(static_cast<std::size_t>(index));
    ElementSet core = set_intersection(a, family.set(static_cast<std::size_t>(intersectors[0])));
    for (std::size_t i = 1; i < intersectors.size(); ++i) {
        const ElementSet other =
            set_intersection(a, family.set(static_cast<std::size_t>(intersectors[i])));
        if (other != core)
            throw std::logic_error("core ill-defined: intersectors disagree, family cannot be "
                                   "3-closed");
    }
    return core;
}

ElementSet petal_of(const Family& family, int index) {
    return set_difference(family.set(static_cast<std::size_t>(index)), core_of(family, index));
}

StructureReport classify(const Family& family) {
    if (family.r() < 3)
        throw PreconditionError("classification requires closure order r >= 3; cores are not "
                                "defined below it");
    Verdict verdict = is_r_closed(family);
    if (!verdict.ok)
        throw PreconditionError("classification requires a family that passes the closure check",
                                std::move(verdict));

    StructureReport report;
    const auto classes = size_classes(family);
    std::vector<std::vector<int>> tor_cache(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        tor_cache[i] = tor(family, static_cast<int>(i));

    for (const auto& [size, members] : classes) {
        report.sizes.push_back(size);
        const bool normal = std::all_of(members.begin(), members.end(), [&](int idx) {
            return !tor_cache[static_cast<std::size_t>(idx)].empty();
        });
        if (normal) {
            report.normal_sizes.push_back(size);
            ElementSet core = core_of(family, members[0]);
            for (std::size_t i = 1; i < members.size(); ++i)
                if (core_of(family, members[i]) != core)
                    throw std::logic_error("equal-size members disagree on their core");
            report.core_by_size.emplace(size, std::move(core));
        } else {
            if (members.size() != 1)
                throw std::logic_error("exceptional size class with more than one member");
            report.exceptional_sizes.push_back(size);
        }
    }
    if (report.sizes.empty()) return report;  // empty family: nothing else applies
    report.i_min = report.sizes.front();
    if (!report.normal_sizes.empty()) report.i_max = report.normal_sizes.back();

    // The member whose size the denominator does not divide (at most one can
    // survive the pairwise check).
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!family.theta().divides_denominator(family.set(i).size())) {
            if (report.e_theta)
                throw std::logic_error("two members with non-divisible size in a closed family");
            report.e_theta = static_cast<int>(i);
        }
    }

    if (report.i_max) {
        const ElementSet& top_core = report.core_by_size.at(*report.i_max);
        // Normal member whose petal meets the top core.
        for (int size : report.normal_sizes) {
            for (int idx : classes.at(size)) {
                const ElementSet petal = petal_of(family, idx);
                if (sets_intersect(petal, top_core)) {
                    if (report.e_nor)
                        throw std::logic_error("two normal members whose petals meet the top core");
                    report.e_nor = idx;
                }
            }
        }
        // Exceptional member smaller than the top normal size containing the top core.
        for (int size : report.exceptional_sizes) {
            if (size >= *report.i_max) continue;
            const int idx = classes.at(size)[0];
            if (is_subset(top_core, family.set(static_cast<std::size_t>(idx)))) {
                if (report.e_exc)
                    throw std::logic_error("two small exceptional members contain the top core");
                report.e_exc = idx;
            }
        }
    }

    // At most one distinct member may match any of the three criteria; the
    // same member may match several (e.g. a singleton that is both the
    // non-divisible member and the core-containing exceptional one).
    std::vector<int> matched;
    for (const auto& e : {report.e_nor, report.e_exc, report.e_theta})
        if (e) matched.push_back(*e);
    for (std::size_t i = 1; i < matched.size(); ++i)
        if (matched[i] != matched[0])
            throw std::logic_error("distinct exceptional members matched; closed families admit "
                                   "at most one");

    for (std::size_t i = 0; i < family.size(); ++i)
        if (matched.empty() || static_cast<int>(i) != matched[0])
            report.f_star.push_back(static_cast<int>(i));
    return report;
}

LevelPartition partition_levels(const Family& family) {
    return partition_levels(family, classify(family));
}

LevelPartition partition_levels(const Family& family, const StructureReport& report) {
    LevelPartition partition;
    if (report.f_star.empty()) return partition;

    const Family star = family.subfamily(report.f_star);
    const StructureReport star_report = classify(star);
    if (star_report.i_max)
        partition.top_core = star_report.core_by_size.at(*star_report.i_max);

    const Fraction& theta = family.theta();
    const int i_min = star_report.i_min;
    int k_last = 0;
    std::map<int, std::vector<int>> by_level;  // level -> sizes
    for (int size : star_report.sizes) {
        const int k = level_of(size, i_min, theta);
        by_level[k].push_back(size);
        k_last = std::max(k_last, k);
    }

    const auto classes = size_classes(star);
    BigInt lo_num = i_min, lo_den = 1;
    for (int k = 0; k <= k_last; ++k) {
        LevelPartition::Level level;
        level.k = k;
        if (k == 0) {
            level.upper = std::to_string(i_min);
        } else {
            level.lower = rational_string(lo_num, lo_den);
            lo_num *= theta.den();
            lo_den *= theta.num();
            level.upper = rational_string(lo_num, lo_den);
        }
        if (auto it = by_level.find(k); it != by_level.end()) {
            level.sizes = it->second;
            ElementSet sunset;
            for (int size : level.sizes)
                for (int idx : classes.at(size))
                    sunset = set_union(sunset, star.set(static_cast<std::size_t>(idx)));
            level.y = set_difference(sunset, partition.top_core);
        }
        partition.levels.push_back(std::move(level));
    }
    return partition;
}

AuditReport audit(const Family& family) {
    const StructureReport report = classify(family);
    const Family star = family.subfamily(report.f_star);
    const LevelPartition partition = partition_levels(family, report);
    const Fraction& theta = family.theta();
    const auto classes = size_classes(family);

    AuditReport out;
    auto add = [&](std::string name, bool pass, std::string details = "") {
        out.checks.push_back({std::move(name), pass, std::move(details)});
    };

    {
        bool pass = true;
        std::string details;
        for (const auto& [size, members] : classes) {
            std::vector<ElementSet> sets;
            for (int idx : members) sets.push_back(family.set(static_cast<std::size_t>(idx)));
            if (!is_sunflower(sets).first) {
                pass = false;
                details = "size class " + std::to_string(size) + " is not a sunflower";
                break;
            }
        }
        add("size-class-sunflower", pass, details);
    }

    {
        bool pass = true;
        std::string details;
        for (std::size_t i = 0; i + 1 < report.normal_sizes.size() && pass; ++i) {
            for (std::size_t j = i + 1; j < report.normal_sizes.size(); ++j) {
                const ElementSet& small = report.core_by_size.at(report.normal_sizes[i]);
                const ElementSet& large = report.core_by_size.at(report.normal_sizes[j]);
                if (!is_subset(small, large) || small == large) {
                    pass = false;
                    details = "cores of sizes " + std::to_string(report.normal_sizes[i]) + " and " +
                              std::to_string(report.normal_sizes[j]) + " do not nest strictly";
                    break;
                }
            }
        }
        add("core-chain-strict", pass, details);
    }

    {
        // i < theta * j forces every larger member to be an intersector of
        // every smaller one, and makes the small size normal.
        bool pass = true;
        std::string details;
        for (int i : report.sizes) {
            for (int j : report.sizes) {
                if (theta.den() * i >= theta.num() * j) continue;
                for (int ai : classes.at(i)) {
                    for (int bj : classes.at(j)) {
                        const auto inter = intersection_size(family.set(static_cast<std::size_t>(ai)),
                                                             family.set(static_cast<std::size_t>(bj)));
                        if (!theta.matches(inter, i)) {
                            pass = false;
                            details = "member of size " + std::to_string(j) +
                                      " is not an intersector of a member of size " +
                                      std::to_string(i);
                        }
                    }
                }
                if (pass && std::find(report.normal_sizes.begin(), report.normal_sizes.end(), i) ==
                                report.normal_sizes.end()) {
                    pass = false;
                    details = "size " + std::to_string(i) + " should be normal";
                }
            }
        }
        add("small-size-forces-intersector", pass, details);
    }

    {
        // Petal/core disjointness over the normal members of F*.
        bool pass = true;
        std::string details;
        std::vector<int> star_normal;
        for (int idx : report.f_star) {
            const int size = family.set(static_cast<std::size_t>(idx)).size();
            if (std::find(report.normal_sizes.begin(), report.normal_sizes.end(), size) !=
                report.normal_sizes.end())
                star_normal.push_back(idx);
        }
        for (int ai : star_normal) {
            const ElementSet petal = petal_of(family, ai);
            for (int bj : star_normal) {
                const ElementSet& core =
                    report.core_by_size.at(family.set(static_cast<std::size_t>(bj)).size());
                if (sets_intersect(petal, core)) {
                    pass = false;
                    details = "petal of " + describe_set(family.set(static_cast<std::size_t>(ai))) +
                              " meets core " + describe_set(core);
                }
            }
        }
        add("petal-core-disjoint", pass, details);
    }

    {
        // The normal part of F* stays closed at every order up to its size.
        bool pass = true;
        std::string details;
        std::vector<int> star_normal;
        for (int idx : report.f_star) {
            const int size = family.set(static_cast<std::size_t>(idx)).size();
            if (std::find(report.normal_sizes.begin(), report.normal_sizes.end(), size) !=
                report.normal_sizes.end())
                star_normal.push_back(idx);
        }
        if (star_normal.size() >= 2) {
            std::vector<ElementSet> sets;
            for (int idx : star_normal) sets.push_back(family.set(static_cast<std::size_t>(idx)));
            Family star_nor(family.n(), 2, theta, std::move(sets));
            const Verdict v = is_r_closed(star_nor, static_cast<int>(star_normal.size()));
            if (!v.ok) {
                pass = false;
                details = "closure fails at some order up to " +
                          std::to_string(star_normal.size());
            }
        }
        add("normal-star-closed-all-orders", pass, details);
    }

    {
        bool pass = true;
        std::string details;
        for (int idx : report.f_star) {
            const int size = family.set(static_cast<std::size_t>(idx)).size();
            if (!theta.divides_denominator(size)) {
                pass = false;
                details = "size " + std::to_string(size) + " not divisible by " +
                          std::to_string(theta.den());
            }
        }
        add("star-size-divisibility", pass, details);
    }

    add("exception-count", family.size() - report.f_star.size() <= 1,
        family.size() - report.f_star.size() > 1 ? "more than one member removed" : "");

    {
        bool pass = true;
        std::string details;
        const auto& levels = partition.levels;
        for (std::size_t u = 0; u < levels.size() && pass; ++u) {
            for (std::size_t v = u + 2; v < levels.size(); ++v) {
                if (sets_intersect(levels[u].y, levels[v].y)) {
                    pass = false;
                    details = "levels " + std::to_string(u) + " and " + std::to_string(v) +
                              " share elements";
                    break;
                }
            }
        }
        add("level-sunset-disjointness", pass, details);
    }

    {
        // |F*(i)| <= |Y_k| / ((1 - theta) i), cross-multiplied to integers.
        bool pass = true;
        std::string details;
        const auto star_classes = report.f_star.empty() ? std::map<int, std::vector<int>>{}
                                                        : size_classes(star);
        for (const auto& level : partition.levels) {
            for (int size : level.sizes) {
                const auto count =
                    static_cast<std::int64_t>(star_classes.at(size).size());
                const std::int64_t lhs = count * (theta.den() - theta.num()) * size;
                const std::int64_t rhs = static_cast<std::int64_t>(level.y.size()) * theta.den();
                if (lhs > rhs) {
                    pass = false;
                    details = "size " + std::to_string(size) + " violates the level counting bound";
                }
            }
        }
        add("level-counting-bound", pass, details);
    }

    return out;
}

} // namespace fifam

#ifndef FIFAM_BOUNDS_HPP
#define FIFAM_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fifam/fraction.hpp"

namespace fifam {

/// A closed-form size bound: which case of the case split applied, the
/// closed-form expression, its numeric value, and the floor actually compared
/// against integer family sizes. `integral` marks cases whose value is exact.
struct BoundReport {
    std::string case_label;
    std::string expression;
    double value = 0.0;
    std::int64_t floored = 0;
    bool integral = false;
};

/// General size bound for closed families of order at least 3, split on
/// theta and its numerator:
///   theta > 1/2          ->  floor((n-a)/(b-a)) + 2           (exact)
///   theta <= 1/2, a > 1  ->  2 (ln b - ln a + 1)/(b-a) (n-a) + 1
///   theta = 1/2, family holding a 2-element member
///                        ->  (1 + ln 2)(n-1) + 1
///   theta <= 1/2, a = 1  ->  (2 ln b / (b-1))(n-1) + 1
/// `refined_core_size` optionally replaces the n-a (resp. n-1) factor with
/// n-|C| in the non-integral cases, the sharper form the derivation yields.
BoundReport main_upper_bound(int n, const Fraction& theta, bool has_size_two_set,
                             std::optional<int> refined_core_size = std::nullopt);

/// Tight bound for theta = 1/2: floor(3n/2) - 2, for n >= 2.
std::int64_t bisection_bound(int n);

/// Size bound floor((n-a)/(b-a)) for the fully-intersecting layered case.
std::int64_t tor_full_bound(int n, const Fraction& theta);

/// 3/2 - 2 ln 2, the gap separating near-extremal half-intersecting families
/// from the non-extremal regime.
double nonextremal_gap();

enum class LowerBoundVariant { two_layer, b_odd_three_layer, b_even_three_layer, imin_k };

/// Construction-size formulas (floors deliberately omitted):
///   two_layer          : (n-2a) (1/(b-a) + 1/(2(b-a)))
///   b_odd_three_layer  : (n-3) (1/(b-1) + 1/(2(b-1)) + 1/(3(b-1))), theta = 1/b, b odd
///   b_even_three_layer : (n-4) (1/(b-1) + 1/(2(b-1)) + 1/(4(b-1))), theta = 1/b, b even
///   imin_k             : (2n-k-4) (1/k + 1/(k+2) + 1/(k+4)), theta = 1/2, k >= 4 even
double lower_bound_formulas(int n, const Fraction& theta, LowerBoundVariant variant, int k = 0);

/// Exact partial harmonic sum over (floor(m eta^{k-1}), floor(m eta^k)] for
/// eta = eta_num / eta_den > 1. Throws when the range is too large to sum
/// exactly (the certified checks below cover that regime).
boost::multiprecision::cpp_rational harmonic_s(std::int64_t eta_num, std::int64_t eta_den, int m,
                                               int k);

/// Certified comparisons on the same sums, valid for arbitrarily large k:
/// evaluated in 100-digit arithmetic via an Euler-Maclaurin expansion whose
/// remainder is bounded explicitly; each predicate holds only when the
/// comparison clears the total error bound, and throws if the margin is ever
/// too thin to decide.
bool harmonic_upper_bound_strict(std::int64_t eta_num, std::int64_t eta_den, int m, int k);
bool harmonic_monotone_step(std::int64_t eta, int m, int k);
bool harmonic_convergence_improves(std::int64_t eta, int m, int k_near, int k_far);

} // namespace fifam

#endif

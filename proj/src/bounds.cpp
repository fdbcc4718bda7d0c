#include "fifam/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fifam {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

constexpr double kFloorGuard = 1e-9;

std::int64_t guarded_floor(double value) {
    return static_cast<std::int64_t>(std::floor(value + kFloorGuard));
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

} // namespace

BoundReport main_upper_bound(int n, const Fraction& theta, bool has_size_two_set,
                             std::optional<int> refined_core_size) {
    if (n < 1) throw std::invalid_argument("main_upper_bound: need n >= 1");
    const auto a = theta.num();
    const auto b = theta.den();
    BoundReport report;

    if (2 * a > b) {
        report.case_label = "theta>1/2";
        const std::int64_t v = (n - a) / (b - a) + 2;
        report.expression =
            "floor((n-" + std::to_string(a) + ")/" + std::to_string(b - a) + ") + 2";
        report.value = static_cast<double>(v);
        report.floored = v;
        report.integral = true;
        return report;
    }

    const double span = refined_core_size ? static_cast<double>(n - *refined_core_size)
                                          : static_cast<double>(n - (a > 1 ? a : 1));
    if (a > 1) {
        report.case_label = "theta<=1/2, a>1";
        const double coeff = 2.0 * (std::log(static_cast<double>(b)) -
                                    std::log(static_cast<double>(a)) + 1.0) /
                             static_cast<double>(b - a);
        report.value = coeff * span + 1.0;
        report.expression = "2(ln(" + std::to_string(b) + ")-ln(" + std::to_string(a) + ")+1)/" +
                            std::to_string(b - a) + " * " + fmt(span) + " + 1";
    } else if (b == 2 && has_size_two_set) {
        report.case_label = "theta=1/2 with a pair member";
        report.value = (1.0 + std::log(2.0)) * span + 1.0;
        report.expression = "(1+ln(2)) * " + fmt(span) + " + 1";
    } else {
        report.case_label = "theta<=1/2, a=1";
        const double coeff = 2.0 * std::log(static_cast<double>(b)) / static_cast<double>(b - 1);
        report.value = coeff * span + 1.0;
        report.expression =
            "2 ln(" + std::to_string(b) + ")/" + std::to_string(b - 1) + " * " + fmt(span) + " + 1";
    }
    report.floored = guarded_floor(report.value);
    report.integral = false;
    return report;
}

std::int64_t bisection_bound(int n) {
    if (n < 2) throw std::invalid_argument("bisection_bound: need n >= 2");
    return 3LL * n / 2 - 2;
}

std::int64_t tor_full_bound(int n, const Fraction& theta) {
    if (n < theta.num()) throw std::invalid_argument("tor_full_bound: need n >= a");
    return (n - theta.num()) / (theta.den() - theta.num());
}

double nonextremal_gap() { return 1.5 - 2.0 * std::log(2.0); }

double lower_bound_formulas(int n, const Fraction& theta, LowerBoundVariant variant, int k) {
    const auto a = theta.num();
    const auto b = theta.den();
    switch (variant) {
        case LowerBoundVariant::two_layer:
            return static_cast<double>(n - 2 * a) *
                   (1.0 / static_cast<double>(b - a) + 1.0 / static_cast<double>(2 * (b - a)));
        case LowerBoundVariant::b_odd_three_layer:
            if (a != 1 || b % 2 == 0)
                throw std::invalid_argument("lower_bound_formulas: variant needs theta = 1/b, b odd");
            return static_cast<double>(n - 3) *
                   (1.0 / (b - 1.0) + 1.0 / (2.0 * (b - 1.0)) + 1.0 / (3.0 * (b - 1.0)));
        case LowerBoundVariant::b_even_three_layer:
            if (a != 1 || b % 2 == 1)
                throw std::invalid_argument("lower_bound_formulas: variant needs theta = 1/b, b even");
            return static_cast<double>(n - 4) *
                   (1.0 / (b - 1.0) + 1.0 / (2.0 * (b - 1.0)) + 1.0 / (4.0 * (b - 1.0)));
        case LowerBoundVariant::imin_k:
            if (a != 1 || b != 2)
                throw std::invalid_argument("lower_bound_formulas: variant needs theta = 1/2");
            if (k < 4 || k % 2 != 0)
                throw std::invalid_argument("lower_bound_formulas: k must be even, at least 4");
            return static_cast<double>(2 * n - k - 4) *
                   (1.0 / k + 1.0 / (k + 2.0) + 1.0 / (k + 4.0));
    }
    throw std::invalid_argument("lower_bound_formulas: unknown variant");
}

namespace {

void validate_eta(std::int64_t eta_num, std::int64_t eta_den, int m, int k) {
    if (eta_den < 1 || eta_num <= eta_den)
        throw std::invalid_argument("harmonic_s: eta must exceed 1");
    if (m < 1 || k < 1) throw std::invalid_argument("harmonic_s: need m >= 1 and k >= 1");
}

BigInt floor_m_eta_pow(std::int64_t eta_num, std::int64_t eta_den, int m, int k) {
    BigInt num = m, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= eta_num;
        den *= eta_den;
    }
    return num / den;
}

constexpr std::int64_t kExactSumLimit = 50'000;

} // namespace

boost::multiprecision::cpp_rational harmonic_s(std::int64_t eta_num, std::int64_t eta_den, int m,
                                               int k) {
    validate_eta(eta_num, eta_den, m, k);
    const BigInt lo_big = floor_m_eta_pow(eta_num, eta_den, m, k - 1);
    const BigInt hi_big = floor_m_eta_pow(eta_num, eta_den, m, k);
    if (hi_big > kExactSumLimit)
        throw std::overflow_error("harmonic_s: range too large for exact rational summation; "
                                  "use the certified comparisons instead");
    const auto lo = static_cast<std::int64_t>(lo_big);
    const auto hi = static_cast<std::int64_t>(hi_big);
    if (hi <= lo) return 0;

    // Common denominator lcm(1..hi) assembled from prime powers; each term is
    // then a single exact division, and one reduction happens at the end.
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    BigInt den = 1;
    for (std::int64_t p = 2; p <= hi; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (std::int64_t q = p * p; q <= hi; q += p) composite[static_cast<std::size_t>(q)] = true;
        std::int64_t power = p;
        while (power <= hi / p) power *= p;
        den *= power;
    }
    BigInt num = 0;
    for (std::int64_t i = lo + 1; i <= hi; ++i) num += den / i;
    return {num, den};
}

namespace {

struct Certified {
    BigFloat value;
    BigFloat error;
};

// 1/(2n) - 1/(12 n^2) + 1/(120 n^4): the Euler-Maclaurin tail of a harmonic
// number after ln n; the omitted remainder is below 1/(252 n^6).
BigFloat em_tail(const BigInt& n) {
    const BigFloat x(n);
    return 1 / (2 * x) - 1 / (12 * x * x) + 1 / (120 * x * x * x * x);
}

BigFloat em_tail_error(const BigInt& n) {
    const BigFloat x(n);
    return 1 / (252 * x * x * x * x * x * x);
}

// s_k with a rigorous absolute error bound. Small ranges are summed exactly;
// large ones use H_N - H_M = ln(N/M) + tail(N) - tail(M) +- remainders. The
// crossover sits where the expansion remainder (below 1/(252 (N/eta)^6)) is
// already negligible against every margin the comparisons need.
constexpr std::int64_t kCertifiedExactLimit = 2'000;

Certified harmonic_certified(std::int64_t eta_num, std::int64_t eta_den, int m, int k) {
    validate_eta(eta_num, eta_den, m, k);
    const BigInt lo = floor_m_eta_pow(eta_num, eta_den, m, k - 1);
    const BigInt hi = floor_m_eta_pow(eta_num, eta_den, m, k);

    if (hi <= kCertifiedExactLimit) {
        const auto exact = harmonic_s(eta_num, eta_den, m, k);
        return {BigFloat(exact), BigFloat("1e-80")};
    }
    Certified out;
    out.value = boost::multiprecision::log(BigFloat(hi) / BigFloat(lo)) + em_tail(hi) - em_tail(lo);
    out.error = em_tail_error(lo) + em_tail_error(hi) + BigFloat("1e-80");
    return out;
}

bool certified_less(const Certified& lhs, const Certified& rhs) {
    const BigFloat gap = rhs.value - lhs.value;
    const BigFloat err = lhs.error + rhs.error;
    if (gap > err) return true;
    if (gap < -err) return false;
    throw std::runtime_error("harmonic comparison: certified margin too thin to decide");
}

} // namespace

bool harmonic_upper_bound_strict(std::int64_t eta_num, std::int64_t eta_den, int m, int k) {
    const Certified s = harmonic_certified(eta_num, eta_den, m, k);
    Certified bound;
    bound.value = boost::multiprecision::log(BigFloat(eta_num) / BigFloat(eta_den)) +
                  BigFloat(1) / BigFloat(m);
    bound.error = BigFloat("1e-80");
    return certified_less(s, bound);
}

bool harmonic_monotone_step(std::int64_t eta, int m, int k) {
    return certified_less(harmonic_certified(eta, 1, m, k), harmonic_certified(eta, 1, m, k + 1));
}

bool harmonic_convergence_improves(std::int64_t eta, int m, int k_near, int k_far) {
    const BigFloat target = boost::multiprecision::log(BigFloat(eta));
    const Certified near_s = harmonic_certified(eta, 1, m, k_near);
    const Certified far_s = harmonic_certified(eta, 1, m, k_far);
    Certified near_dev{boost::multiprecision::abs(near_s.value - target), near_s.error};
    Certified far_dev{boost::multiprecision::abs(far_s.value - target), far_s.error};
    return certified_less(far_dev, near_dev);
}

} // namespace fifam
